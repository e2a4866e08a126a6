//! Planar kernel: points, squared distances and the sign predicates every
//! other module is built from.
//!
//! Two backends share one predicate surface. [`Exact`] works over arbitrary
//! precision rationals and decides every predicate exactly. [`Float`] carries
//! an absolute tolerance and exists for constructions whose coordinates are
//! irrational (regular polygons, evenly spaced arcs).

use std::cmp::Ordering;
use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Default tolerance of the floating backend.
pub const DEFAULT_EPS: f64 = 1e-9;

/// `n / d` as a rational. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Field operations shared by both coordinate types.
pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + PartialOrd
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn from_i64(v: i64) -> Self;
    fn to_f64(&self) -> f64;
}

impl Scalar for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn from_i64(v: i64) -> Self {
        int(v)
    }
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
}

impl Scalar for f64 {
    fn zero() -> Self {
        0.0
    }
    fn from_i64(v: i64) -> Self {
        v as f64
    }
    fn to_f64(&self) -> f64 {
        *self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point2<S> {
    pub x: S,
    pub y: S,
}

pub type Point = Point2<Rational>;
pub type FloatPoint = Point2<f64>;

impl<S: Scalar> Point2<S> {
    pub fn new(x: S, y: S) -> Self {
        Self { x, y }
    }

    pub fn squared_distance(&self, other: &Self) -> S {
        let dx = self.x.clone() - other.x.clone();
        let dy = self.y.clone() - other.y.clone();
        dx.clone() * dx + dy.clone() * dy
    }

    pub fn midpoint(&self, other: &Self) -> Self {
        let two = S::from_i64(2);
        Self::new((self.x.clone() + other.x.clone()) / two.clone(), (self.y.clone() + other.y.clone()) / two)
    }

    pub fn to_float(&self) -> FloatPoint {
        FloatPoint::new(self.x.to_f64(), self.y.to_f64())
    }
}

impl Point {
    pub fn from_ints(x: i64, y: i64) -> Self {
        Self::new(int(x), int(y))
    }
}

/// `(q - p) x (r - p)`
pub(crate) fn cross<S: Scalar>(p: &Point2<S>, q: &Point2<S>, r: &Point2<S>) -> S {
    let (ux, uy) = (q.x.clone() - p.x.clone(), q.y.clone() - p.y.clone());
    let (vx, vy) = (r.x.clone() - p.x.clone(), r.y.clone() - p.y.clone());
    ux * vy - uy * vx
}

/// `(a - v) . (b - v)`
pub(crate) fn dot_at<S: Scalar>(a: &Point2<S>, v: &Point2<S>, b: &Point2<S>) -> S {
    let (ux, uy) = (a.x.clone() - v.x.clone(), a.y.clone() - v.y.clone());
    let (wx, wy) = (b.x.clone() - v.x.clone(), b.y.clone() - v.y.clone());
    ux * wx + uy * wy
}

/// Exact squared length. Every length comparison in the crate is done on squares.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SquaredDistance(Rational);

impl SquaredDistance {
    pub fn value(&self) -> &Rational {
        &self.0
    }
    pub fn into_inner(self) -> Rational {
        self.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Orientation {
    Clockwise,
    CounterClockwise,
    Collinear,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "backend", rename_all = "lowercase")]
pub enum Backend {
    Exact,
    Float { eps: f64 },
}

impl Backend {
    pub fn name(&self) -> &'static str {
        match self {
            Backend::Exact => "exact",
            Backend::Float { .. } => "float",
        }
    }
    pub fn eps(&self) -> Option<f64> {
        match self {
            Backend::Exact => None,
            Backend::Float { eps } => Some(*eps),
        }
    }
}

/// A coordinate backend: how signs are decided and how equal lengths are grouped.
pub trait Kernel: Clone + Debug + Send + Sync {
    type Scalar: Scalar;

    /// Sign of `v` relative to zero.
    fn sign(&self, v: &Self::Scalar) -> Ordering;

    fn backend(&self) -> Backend;

    /// Groups equal values. Returns one class id per input value, with class
    /// ids ranked by value (class 0 holds the smallest values), together with
    /// one representative value per class.
    fn group_values(&self, values: &[Self::Scalar]) -> (Vec<u32>, Vec<Self::Scalar>);

    fn compare(&self, a: &Self::Scalar, b: &Self::Scalar) -> Ordering {
        self.sign(&(a.clone() - b.clone()))
    }

    fn same_point(&self, p: &Point2<Self::Scalar>, q: &Point2<Self::Scalar>) -> bool {
        self.sign(&p.squared_distance(q)) == Ordering::Equal
    }

    fn orientation(&self, p: &Point2<Self::Scalar>, q: &Point2<Self::Scalar>, r: &Point2<Self::Scalar>) -> Orientation {
        match self.sign(&cross(p, q, r)) {
            Ordering::Greater => Orientation::CounterClockwise,
            Ordering::Less => Orientation::Clockwise,
            Ordering::Equal => Orientation::Collinear,
        }
    }

    /// Whether the angle at `v` subtended by `a` and `b` is at least a right angle.
    fn angle_not_acute(
        &self,
        a: &Point2<Self::Scalar>,
        v: &Point2<Self::Scalar>,
        b: &Point2<Self::Scalar>,
    ) -> Result<bool> {
        if self.same_point(a, v) || self.same_point(b, v) {
            return Err(Error::DegenerateAngle);
        }
        Ok(self.sign(&dot_at(a, v, b)) != Ordering::Greater)
    }

    fn on_bisector(
        &self,
        x: &Point2<Self::Scalar>,
        a: &Point2<Self::Scalar>,
        b: &Point2<Self::Scalar>,
    ) -> Result<bool> {
        if self.same_point(a, b) {
            return Err(Error::CoincidentEndpoints);
        }
        Ok(self.compare(&x.squared_distance(a), &x.squared_distance(b)) == Ordering::Equal)
    }
}

/// Exact rational backend.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Exact;

impl Kernel for Exact {
    type Scalar = Rational;

    fn sign(&self, v: &Rational) -> Ordering {
        if v.is_positive() {
            Ordering::Greater
        } else if v.is_negative() {
            Ordering::Less
        } else {
            Ordering::Equal
        }
    }

    fn backend(&self) -> Backend {
        Backend::Exact
    }

    fn compare(&self, a: &Rational, b: &Rational) -> Ordering {
        a.cmp(b)
    }

    fn same_point(&self, p: &Point, q: &Point) -> bool {
        p == q
    }

    fn group_values(&self, values: &[Rational]) -> (Vec<u32>, Vec<Rational>) {
        let mut order: Vec<usize> = (0..values.len()).collect();
        order.sort_by(|&i, &j| values[i].cmp(&values[j]));
        let mut classes = vec![0u32; values.len()];
        let mut reps: Vec<Rational> = Vec::new();
        for &i in &order {
            if reps.last() != Some(&values[i]) {
                reps.push(values[i].clone());
            }
            classes[i] = (reps.len() - 1) as u32;
        }
        (classes, reps)
    }
}

/// Floating backend with an absolute tolerance on every sign decision.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Float {
    pub eps: f64,
}

impl Default for Float {
    fn default() -> Self {
        Self { eps: DEFAULT_EPS }
    }
}

impl Float {
    pub fn new(eps: f64) -> Result<Self> {
        if !(eps > 0.0 && eps.is_finite()) {
            return Err(Error::ParameterOutOfRange(format!("eps must be positive, got {eps}")));
        }
        Ok(Self { eps })
    }
}

impl Kernel for Float {
    type Scalar = f64;

    fn sign(&self, v: &f64) -> Ordering {
        if v.abs() <= self.eps {
            Ordering::Equal
        } else if *v > 0.0 {
            Ordering::Greater
        } else {
            Ordering::Less
        }
    }

    fn backend(&self) -> Backend {
        Backend::Float { eps: self.eps }
    }

    // Single-linkage pass over the sorted values: a gap larger than eps starts a new class.
    fn group_values(&self, values: &[f64]) -> (Vec<u32>, Vec<f64>) {
        let mut order: Vec<usize> = (0..values.len()).collect();
        order.sort_by(|&i, &j| values[i].total_cmp(&values[j]));
        let mut classes = vec![0u32; values.len()];
        let mut reps: Vec<f64> = Vec::new();
        let mut prev: Option<f64> = None;
        for &i in &order {
            let v = values[i];
            match prev {
                Some(p) if v - p <= self.eps => {}
                _ => reps.push(v),
            }
            prev = Some(v);
            classes[i] = (reps.len() - 1) as u32;
        }
        (classes, reps)
    }
}

pub fn squared_distance(p: &Point, q: &Point) -> SquaredDistance {
    SquaredDistance(p.squared_distance(q))
}

pub fn orientation(p: &Point, q: &Point, r: &Point) -> Orientation {
    Exact.orientation(p, q, r)
}

pub fn angle_not_acute(a: &Point, v: &Point, b: &Point) -> Result<bool> {
    Exact.angle_not_acute(a, v, b)
}

pub fn on_bisector(x: &Point, a: &Point, b: &Point) -> Result<bool> {
    Exact.on_bisector(x, a, b)
}

/// Counter-clockwise hull order of `points`, rotated to start at index 0, or
/// `None` if some point is not a strict vertex of the convex hull.
pub fn hull_order<K: Kernel>(kernel: &K, points: &[Point2<K::Scalar>]) -> Result<Option<Vec<usize>>> {
    if points.len() < 3 {
        return Err(Error::TooFewPoints { need: 3, got: points.len() });
    }
    let mut idx: Vec<usize> = (0..points.len()).collect();
    idx.sort_by(|&i, &j| {
        let (p, q) = (&points[i], &points[j]);
        kernel.compare(&p.x, &q.x).then_with(|| kernel.compare(&p.y, &q.y))
    });
    for w in idx.windows(2) {
        if kernel.same_point(&points[w[0]], &points[w[1]]) {
            return Ok(None);
        }
    }

    // Andrew's monotone chain; collinear points are popped, so any such point
    // ends up missing from the hull.
    let turn_ok = |h: &[usize], r: usize| {
        let (p, q) = (&points[h[h.len() - 2]], &points[h[h.len() - 1]]);
        kernel.orientation(p, q, &points[r]) == Orientation::CounterClockwise
    };
    let mut lower: Vec<usize> = Vec::new();
    for &i in &idx {
        while lower.len() >= 2 && !turn_ok(&lower, i) {
            lower.pop();
        }
        lower.push(i);
    }
    let mut upper: Vec<usize> = Vec::new();
    for &i in idx.iter().rev() {
        while upper.len() >= 2 && !turn_ok(&upper, i) {
            upper.pop();
        }
        upper.push(i);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    if lower.len() != points.len() {
        return Ok(None);
    }
    let start = lower.iter().position(|&i| i == 0).expect("hull contains every point");
    lower.rotate_left(start);
    Ok(Some(lower))
}

pub fn is_convex_position_with<K: Kernel>(kernel: &K, points: &[Point2<K::Scalar>]) -> Result<bool> {
    Ok(hull_order(kernel, points)?.is_some())
}

/// Whether the points are the vertex set of a strictly convex polygon.
pub fn is_convex_position(points: &[Point]) -> Result<bool> {
    is_convex_position_with(&Exact, points)
}

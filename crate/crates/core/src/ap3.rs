//! Bichromatic three-term arithmetic progressions between negative "red" and
//! positive "blue" numbers, exhaustive maximization over small integer sets,
//! and the embedding onto a circular arc that turns progressions into
//! witnessed edges straddling the middle of a cap.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive};
use rand::seq::index::sample;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::caps::Cap;
use crate::constructions::pythagorean_arc;
use crate::error::{Error, Result};
use crate::geom::{int, Exact, Float, FloatPoint, Kernel, Rational};
use crate::instance::ConvexInstance;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ap3Instance {
    red: Vec<Rational>,
    blue: Vec<Rational>,
}

impl Ap3Instance {
    /// `t` distinct negative reds and `t` distinct positive blues, `t >= 1`.
    pub fn new(mut red: Vec<Rational>, mut blue: Vec<Rational>) -> Result<Self> {
        if red.len() != blue.len() || red.is_empty() {
            return Err(Error::InvalidAp3(format!(
                "need equally many reds and blues, at least one each (got {} and {})",
                red.len(),
                blue.len()
            )));
        }
        if red.iter().any(|r| !r.is_negative()) || blue.iter().any(|b| !b.is_positive()) {
            return Err(Error::InvalidAp3("reds must be negative and blues positive".into()));
        }
        red.sort();
        blue.sort();
        if red.windows(2).chain(blue.windows(2)).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidAp3("values must be distinct".into()));
        }
        Ok(Self { red, blue })
    }

    pub fn from_ints(red: &[i64], blue: &[i64]) -> Result<Self> {
        Self::new(red.iter().map(|&v| int(v)).collect(), blue.iter().map(|&v| int(v)).collect())
    }

    pub fn t(&self) -> usize {
        self.red.len()
    }

    pub fn red(&self) -> &[Rational] {
        &self.red
    }

    pub fn blue(&self) -> &[Rational] {
        &self.blue
    }

    /// All values in increasing order: the reds, then the blues.
    pub fn values(&self) -> impl Iterator<Item = &Rational> {
        self.red.iter().chain(&self.blue)
    }

    /// The same instance with every value multiplied by a positive rational.
    pub fn scaled(&self, factor: &Rational) -> Result<Self> {
        if !factor.is_positive() {
            return Err(Error::ParameterOutOfRange("scale factor must be positive".into()));
        }
        Self::new(self.red.iter().map(|v| v * factor).collect(), self.blue.iter().map(|v| v * factor).collect())
    }

    /// `R <-> -B`.
    pub fn mirrored(&self) -> Self {
        Self::new(self.blue.iter().map(|v| -v).collect(), self.red.iter().map(|v| -v).collect())
            .expect("mirror of a valid instance is valid")
    }

    /// Equivalent integer instance: all values times the lcm of the denominators.
    pub fn normalized(&self) -> Self {
        let l = self.values().fold(BigInt::one(), |l, v| l.lcm(v.denom()));
        self.scaled(&Rational::from_integer(l)).expect("positive factor")
    }
}

/// A progression `x < y < z`, `y - x = z - y`, using both colors.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Progression {
    pub x: Rational,
    pub y: Rational,
    pub z: Rational,
}

pub fn bichromatic_progressions(instance: &Ap3Instance) -> Vec<Progression> {
    let values: Vec<&Rational> = instance.values().collect();
    let set: HashSet<&Rational> = values.iter().copied().collect();
    let t = instance.t();
    let mut out = Vec::new();
    for i in 0..values.len() {
        for k in i + 2..values.len() {
            let mid = (values[i] + values[k]) / int(2);
            // Both colors present: endpoints of different colors, or a
            // monochromatic pair whose midpoint has the other color (which
            // cannot happen, since reds and blues are separated by 0).
            let mixed = (i < t) != (k < t);
            if set.contains(&mid) && mixed {
                out.push(Progression { x: values[i].clone(), y: mid, z: values[k].clone() });
            }
        }
    }
    out
}

pub fn count_bichromatic_ap3(instance: &Ap3Instance) -> usize {
    bichromatic_progressions(instance).len()
}

/// `floor((7t^2 + t) / 8)`.
pub fn sequence_upper_bound(t: usize) -> usize {
    (7 * t * t + t) / 8
}

/// Largest number of candidate pairs `C(M, t)^2` the exhaustive search accepts.
pub const MAX_SEARCH_SPACE: u128 = 4_000_000_000;
/// Values are bitmask positions in a `u128`.
pub const MAX_VALUE_BOUND: usize = 127;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Ap3Maximum {
    pub t: usize,
    pub bound: usize,
    pub best: usize,
    pub red: Vec<i64>,
    pub blue: Vec<i64>,
    pub upper_bound: usize,
    pub searched: u128,
}

fn binomial(n: usize, k: usize) -> u128 {
    let k = k.min(n - k.min(n));
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// All `t`-subsets of `1..=m`, as bitmasks, in lexicographic order.
fn subsets(m: usize, t: usize) -> Vec<u128> {
    let mut out = Vec::new();
    let mut pick: Vec<usize> = (1..=t).collect();
    loop {
        out.push(pick.iter().fold(0u128, |mask, &v| mask | 1 << v));
        let Some(k) = (0..t).rev().find(|&k| pick[k] < m - (t - 1 - k)) else {
            return out;
        };
        pick[k] += 1;
        for j in k + 1..t {
            pick[j] = pick[j - 1] + 1;
        }
    }
}

fn members(mask: u128) -> impl DoubleEndedIterator<Item = usize> {
    (0..128).filter(move |&v| mask >> v & 1 == 1)
}

/// Count for reds `-p` (`p` in `reds`) and blues `blues`, both as bitmasks of
/// absolute values. Red-red-blue: `z = p - 2q`; red-blue-blue: `z = 2y + p`.
fn masked_count(reds: u128, rrb_weight: &[usize], blues: u128) -> usize {
    let mut count = 0;
    for y in members(blues) {
        count += rrb_weight[y];
        if 2 * y < 128 {
            count += (reds & (blues >> (2 * y))).count_ones() as usize;
        }
    }
    count
}

/// Exhaustive maximum over `R` in `{-M..-1}`, `B` in `{1..M}`, `|R| = |B| = t`.
/// Ties go to the lexicographically first `(R, B)` in increasing order of
/// absolute values.
pub fn max_bichromatic_ap3(t: usize, bound: usize) -> Result<Ap3Maximum> {
    if t < 1 || bound < t {
        return Err(Error::ParameterOutOfRange(format!("need 1 <= t <= M, got t = {t}, M = {bound}")));
    }
    if bound > MAX_VALUE_BOUND {
        return Err(Error::SearchTooLarge(format!("M = {bound} exceeds {MAX_VALUE_BOUND}")));
    }
    let per_side = binomial(bound, t);
    let searched = per_side * per_side;
    if searched > MAX_SEARCH_SPACE {
        return Err(Error::SearchTooLarge(format!(
            "C({bound}, {t})^2 = {searched} candidate pairs exceeds {MAX_SEARCH_SPACE}"
        )));
    }
    let sides = subsets(bound, t);
    let best_per_red: Vec<(usize, usize)> = sides
        .par_iter()
        .map(|&reds| {
            let mut weight = vec![0usize; bound + 1];
            let rs: Vec<usize> = members(reds).collect();
            for &p in &rs {
                for &q in &rs {
                    if p > 2 * q && p - 2 * q <= bound {
                        weight[p - 2 * q] += 1;
                    }
                }
            }
            sides.iter().enumerate().fold((0, 0), |best, (k, &blues)| {
                let c = masked_count(reds, &weight, blues);
                if c > best.0 {
                    (c, k)
                } else {
                    best
                }
            })
        })
        .collect();
    let (ri, (best, bi)) =
        best_per_red
            .iter()
            .copied()
            .enumerate()
            .fold((0, (0, 0)), |acc, (ri, cur)| if cur.0 > acc.1 .0 { (ri, cur) } else { acc });
    let red: Vec<i64> = members(sides[ri]).map(|p| -(p as i64)).rev().collect();
    let blue: Vec<i64> = members(sides[bi]).map(|v| v as i64).collect();
    Ok(Ap3Maximum { t, bound, best, red, blue, upper_bound: sequence_upper_bound(t), searched })
}

/// How values become angles on the arc.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AngularScale {
    /// Exact: after clearing denominators, the integer value `k` (shifted so
    /// the smallest is 0) goes to the `k`-th power of the rational rotation by
    /// `2 atan(1/m)`.
    Pythagorean(u64),
    /// Floating: value `v` goes to angle `v * radians`.
    Radians(f64),
}

fn integer_exponents(instance: &Ap3Instance) -> Vec<BigInt> {
    let normalized = instance.normalized();
    let ints: Vec<BigInt> = normalized.values().map(|v| v.to_integer()).collect();
    let min = ints[0].clone();
    ints.into_iter().map(|k| k - &min).collect()
}

impl AngularScale {
    /// Smallest `m` whose rotation keeps the whole (integer-normalized)
    /// instance within a semicircle.
    pub fn auto_pythagorean(instance: &Ap3Instance) -> Self {
        let span = integer_exponents(instance).last().and_then(|k| k.to_f64()).unwrap_or(0.0);
        let mut m = 1u64;
        while span * 2.0 * (1.0 / m as f64).atan() > std::f64::consts::PI {
            m += 1;
        }
        AngularScale::Pythagorean(m)
    }
}

/// The image of an instance on the arc: point `k` is the `k`-th smallest value.
#[derive(Debug, Clone)]
pub struct ArcEmbedding<K: Kernel> {
    instance: ConvexInstance<K>,
    t: usize,
}

impl<K: Kernel> ArcEmbedding<K> {
    pub fn instance(&self) -> &ConvexInstance<K> {
        &self.instance
    }

    pub fn t(&self) -> usize {
        self.t
    }

    /// The whole image as one cap, reds first.
    pub fn cap(&self) -> Result<Cap<'_, K>> {
        Cap::whole(&self.instance)
    }
}

fn into_cap_checked<K: Kernel>(instance: Result<ConvexInstance<K>>, t: usize) -> Result<ArcEmbedding<K>> {
    let instance = instance.map_err(|e| match e {
        Error::NotConvex | Error::DuplicatePoint(..) => Error::ScaleTooLarge,
        other => other,
    })?;
    let embedding = ArcEmbedding { instance, t };
    // The cap criterion holds exactly when the image spans at most a semicircle.
    match embedding.cap() {
        Err(Error::NotCap) => Err(Error::ScaleTooLarge),
        Err(e) => Err(e),
        Ok(_) => Ok(embedding),
    }
}

pub fn arc_embedding_exact(instance: &Ap3Instance, m: u64) -> Result<ArcEmbedding<Exact>> {
    let exponents = integer_exponents(instance)
        .into_iter()
        .map(|k| k.to_u64().ok_or(Error::ScaleTooLarge))
        .collect::<Result<Vec<u64>>>()?;
    if exponents.last().copied().unwrap_or(0) > 100_000 {
        return Err(Error::ScaleTooLarge);
    }
    into_cap_checked(pythagorean_arc(&exponents, m), instance.t())
}

pub fn arc_embedding_float(instance: &Ap3Instance, radians: f64, kernel: Float) -> Result<ArcEmbedding<Float>> {
    if !(radians.is_finite() && radians > 0.0) {
        return Err(Error::ParameterOutOfRange(format!("angular scale {radians}")));
    }
    let points = instance
        .values()
        .map(|v| {
            let theta = v.to_f64().unwrap_or(f64::NAN) * radians;
            FloatPoint::new(theta.cos(), theta.sin())
        })
        .collect();
    into_cap_checked(ConvexInstance::new(kernel, points), instance.t())
}

/// Random instance: `t` uniform in `1..=max_t`, values distinct integers of
/// absolute value at most `bound`.
pub fn random_ap3_instance(seed: u64, max_t: usize, bound: usize) -> Result<Ap3Instance> {
    if max_t < 1 || bound < max_t {
        return Err(Error::ParameterOutOfRange(format!("need 1 <= t <= M, got t = {max_t}, M = {bound}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let t = rng.gen_range(1..=max_t);
    let mut side =
        |sign: i64| -> Vec<i64> { sample(&mut rng, bound, t).into_iter().map(|v| sign * (v as i64 + 1)).collect() };
    let red = side(-1);
    let blue = side(1);
    Ap3Instance::from_ints(&red, &blue)
}

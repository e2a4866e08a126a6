//! Smallest enclosing circle and its support points.
//!
//! The support points of the minimal circle split a convex instance into at
//! most three caps. When more than three input points lie on the circle the
//! support set is not unique; the one returned is the lexicographically
//! smallest ascending index sequence that is valid (a proper prefix sorts
//! before its extensions), so a diameter pair `[i, j]` wins over `[i, j, k]`
//! but loses to `[i, j', k]` with `j' < j`.

use std::cmp::Ordering;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::geom::{cross, Kernel, Orientation, Point2, Scalar};
use crate::instance::ConvexInstance;

#[derive(Debug, Clone, PartialEq)]
pub struct Circle<S> {
    pub center: Point2<S>,
    pub squared_radius: S,
}

impl<S: Scalar> Circle<S> {
    fn through_one(p: &Point2<S>) -> Self {
        Self { center: p.clone(), squared_radius: S::zero() }
    }

    fn through_two(p: &Point2<S>, q: &Point2<S>) -> Self {
        let center = p.midpoint(q);
        let squared_radius = center.squared_distance(p);
        Self { center, squared_radius }
    }

    /// Circumcircle, or `None` for collinear points.
    fn through_three<K: Kernel<Scalar = S>>(kernel: &K, a: &Point2<S>, b: &Point2<S>, c: &Point2<S>) -> Option<Self> {
        let det = cross(a, b, c);
        if kernel.sign(&det) == Ordering::Equal {
            return None;
        }
        let (bx, by) = (b.x.clone() - a.x.clone(), b.y.clone() - a.y.clone());
        let (cx, cy) = (c.x.clone() - a.x.clone(), c.y.clone() - a.y.clone());
        let b2 = bx.clone() * bx.clone() + by.clone() * by.clone();
        let c2 = cx.clone() * cx.clone() + cy.clone() * cy.clone();
        let d = S::from_i64(2) * det;
        let ux = (cy * b2.clone() - by * c2.clone()) / d.clone();
        let uy = (bx * c2 - cx * b2) / d;
        let squared_radius = ux.clone() * ux.clone() + uy.clone() * uy.clone();
        let center = Point2::new(a.x.clone() + ux, a.y.clone() + uy);
        Some(Self { center, squared_radius })
    }

    /// Sign of `|center p|^2 - r^2`: `Less` inside, `Equal` on the circle.
    pub fn locate<K: Kernel<Scalar = S>>(&self, kernel: &K, p: &Point2<S>) -> Ordering {
        kernel.compare(&self.center.squared_distance(p), &self.squared_radius)
    }

    pub fn contains<K: Kernel<Scalar = S>>(&self, kernel: &K, p: &Point2<S>) -> bool {
        self.locate(kernel, p) != Ordering::Greater
    }
}

/// One to three input indices on the minimal circle, in ascending (cyclic) order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SupportSet {
    indices: Vec<usize>,
}

impl SupportSet {
    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }
}

// Fixed insertion order for the incremental algorithm. The support rule
// below depends only on the (unique) minimal circle, so the order affects
// running time and nothing else.
const INSERTION_SEED: u64 = 0x5eed_c1dc;

fn minimal_circle<K: Kernel>(kernel: &K, points: &[Point2<K::Scalar>]) -> Circle<K::Scalar> {
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(INSERTION_SEED));
    let pts: Vec<&Point2<K::Scalar>> = order.iter().map(|&i| &points[i]).collect();

    let mut circle = Circle::through_one(pts[0]);
    for i in 1..pts.len() {
        if circle.contains(kernel, pts[i]) {
            continue;
        }
        circle = Circle::through_one(pts[i]);
        for j in 0..i {
            if circle.contains(kernel, pts[j]) {
                continue;
            }
            circle = Circle::through_two(pts[i], pts[j]);
            for k in 0..j {
                if circle.contains(kernel, pts[k]) {
                    continue;
                }
                // Exactly, a point outside the diameter circle is never collinear
                // with its endpoints; within tolerance it can be.
                circle = Circle::through_three(kernel, pts[i], pts[j], pts[k])
                    .unwrap_or_else(|| widest_pair(kernel, pts[i], pts[j], pts[k]));
            }
        }
    }
    circle
}

fn widest_pair<K: Kernel>(
    kernel: &K,
    a: &Point2<K::Scalar>,
    b: &Point2<K::Scalar>,
    c: &Point2<K::Scalar>,
) -> Circle<K::Scalar> {
    [(a, b), (b, c), (a, c)]
        .into_iter()
        .map(|(p, q)| Circle::through_two(p, q))
        .max_by(|x, y| kernel.compare(&x.squared_radius, &y.squared_radius))
        .expect("three candidate pairs")
}

fn center_in_closed_triangle<K: Kernel>(
    kernel: &K,
    c: &Point2<K::Scalar>,
    p: &Point2<K::Scalar>,
    q: &Point2<K::Scalar>,
    r: &Point2<K::Scalar>,
) -> bool {
    let signs = [kernel.orientation(p, q, c), kernel.orientation(q, r, c), kernel.orientation(r, p, c)];
    let cw = signs.contains(&Orientation::Clockwise);
    let ccw = signs.contains(&Orientation::CounterClockwise);
    !(cw && ccw)
}

fn select_support<K: Kernel>(kernel: &K, points: &[Point2<K::Scalar>], circle: &Circle<K::Scalar>) -> Vec<usize> {
    let boundary: Vec<usize> =
        (0..points.len()).filter(|&i| circle.locate(kernel, &points[i]) == Ordering::Equal).collect();
    let center = &circle.center;
    // Depth-first enumeration visits ascending index sequences in
    // lexicographic order, so the first valid one is the smallest.
    for (a, &i) in boundary.iter().enumerate() {
        if kernel.sign(&circle.squared_radius) == Ordering::Equal {
            return vec![i];
        }
        for (b, &j) in boundary.iter().enumerate().skip(a + 1) {
            if kernel.same_point(&points[i].midpoint(&points[j]), center) {
                return vec![i, j];
            }
            for &k in &boundary[b + 1..] {
                if center_in_closed_triangle(kernel, center, &points[i], &points[j], &points[k]) {
                    return vec![i, j, k];
                }
            }
        }
    }
    unreachable!("the minimal circle is always determined by at most three boundary points")
}

/// Minimal enclosing circle with its support set (indices into `points`).
pub fn smallest_enclosing_circle<K: Kernel>(
    kernel: &K,
    points: &[Point2<K::Scalar>],
) -> Result<(Circle<K::Scalar>, SupportSet)> {
    if points.is_empty() {
        return Err(Error::TooFewPoints { need: 1, got: 0 });
    }
    let circle = minimal_circle(kernel, points);
    let indices = select_support(kernel, points, &circle);
    Ok((circle, SupportSet { indices }))
}

/// Support set of the instance's enclosing circle, as instance indices.
pub fn splitting_points<K: Kernel>(instance: &ConvexInstance<K>) -> Result<SupportSet> {
    Ok(smallest_enclosing_circle(instance.kernel(), instance.points())?.1)
}

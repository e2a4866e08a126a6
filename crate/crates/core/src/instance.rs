use crate::error::{Error, Result};
use crate::geom::{hull_order, Backend, Exact, Float, Kernel, Point2};

/// Pairwise squared distances of an instance, grouped into classes of equal
/// length. Class ids are ranked, so comparing ids compares lengths.
#[derive(Debug, Clone)]
pub struct DistanceTable<S> {
    n: usize,
    classes: Vec<u32>,
    reps: Vec<S>,
}

impl<S> DistanceTable<S> {
    /// Class of the pair `{i, j}`; `i != j`.
    #[inline]
    pub fn class(&self, i: usize, j: usize) -> u32 {
        debug_assert!(i != j);
        self.classes[i * self.n + j]
    }

    /// Number of distinct lengths among all pairs.
    pub fn class_count(&self) -> usize {
        self.reps.len()
    }

    /// Representative squared length of a class.
    pub fn value(&self, class: u32) -> &S {
        &self.reps[class as usize]
    }
}

/// Points in convex position, stored in counter-clockwise order. Index
/// arithmetic is modulo `len()`.
#[derive(Debug, Clone)]
pub struct ConvexInstance<K: Kernel> {
    kernel: K,
    points: Vec<Point2<K::Scalar>>,
    table: DistanceTable<K::Scalar>,
}

pub type ExactInstance = ConvexInstance<Exact>;
pub type FloatInstance = ConvexInstance<Float>;

impl<K: Kernel> ConvexInstance<K> {
    /// Validates convex position and reorders the points counter-clockwise,
    /// keeping the first input point at index 0. Sets of one or two distinct
    /// points are accepted as degenerate instances.
    pub fn new(kernel: K, points: Vec<Point2<K::Scalar>>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::TooFewPoints { need: 1, got: 0 });
        }
        for i in 0..points.len() {
            for j in i + 1..points.len() {
                if kernel.same_point(&points[i], &points[j]) {
                    return Err(Error::DuplicatePoint(i, j));
                }
            }
        }
        let points = if points.len() >= 3 {
            let order = hull_order(&kernel, &points)?.ok_or(Error::NotConvex)?;
            order.into_iter().map(|i| points[i].clone()).collect()
        } else {
            points
        };
        let table = build_table(&kernel, &points);
        Ok(Self { kernel, points, table })
    }

    pub fn kernel(&self) -> &K {
        &self.kernel
    }

    pub fn backend(&self) -> Backend {
        self.kernel.backend()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Point2<K::Scalar>] {
        &self.points
    }

    pub fn point(&self, i: usize) -> &Point2<K::Scalar> {
        &self.points[i]
    }

    pub fn table(&self) -> &DistanceTable<K::Scalar> {
        &self.table
    }

    pub fn check_index(&self, index: usize) -> Result<()> {
        if index < self.len() {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange { index, len: self.len() })
        }
    }

    /// Steps from `from` to `to` going counter-clockwise.
    #[inline]
    pub fn ccw_offset(&self, from: usize, to: usize) -> usize {
        (to + self.len() - from) % self.len()
    }

    #[inline]
    pub fn equidistant(&self, x: usize, a: usize, b: usize) -> bool {
        self.table.class(x, a) == self.table.class(x, b)
    }

    /// Instance points other than `i` and `j` on the perpendicular bisector of `p_i p_j`.
    pub fn bisector_points(&self, i: usize, j: usize) -> Vec<usize> {
        (0..self.len()).filter(|&x| x != i && x != j && self.equidistant(x, i, j)).collect()
    }
}

fn build_table<K: Kernel>(kernel: &K, points: &[Point2<K::Scalar>]) -> DistanceTable<K::Scalar> {
    let n = points.len();
    let mut pairs = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    let mut values = Vec::with_capacity(pairs.capacity());
    for i in 0..n {
        for j in i + 1..n {
            pairs.push((i, j));
            values.push(points[i].squared_distance(&points[j]));
        }
    }
    let (ids, reps) = kernel.group_values(&values);
    let mut classes = vec![u32::MAX; n * n];
    for (&(i, j), &c) in pairs.iter().zip(&ids) {
        classes[i * n + j] = c;
        classes[j * n + i] = c;
    }
    DistanceTable { n, classes, reps }
}

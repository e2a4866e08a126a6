//! Caps, witnesses and good/bad edges.
//!
//! A cap is a run of instance points `x_1, ..., x_t` (counter-clockwise from
//! `a = x_1` to `b = x_t`) in which every interior point sees `a` and `b` at a
//! non-acute angle. The witness of an edge `cd` of the cap is the instance
//! point on the perpendicular bisector of `cd` lying on the cap's closed side
//! of the line `ab`; it may or may not belong to the cap itself.

use serde::Serialize;

use crate::enclosing::splitting_points;
use crate::error::{Error, Result};
use crate::geom::{Exact, Kernel, Orientation, Point, Point2};
use crate::instance::ConvexInstance;

pub fn is_cap_with<K: Kernel>(kernel: &K, points: &[Point2<K::Scalar>]) -> Result<bool> {
    if points.len() < 2 {
        return Err(Error::TooFewPoints { need: 2, got: points.len() });
    }
    let (first, last) = (&points[0], &points[points.len() - 1]);
    for v in &points[1..points.len() - 1] {
        if !kernel.angle_not_acute(first, v, last)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Cap criterion on a point sequence given in convex order.
pub fn is_cap(points: &[Point]) -> Result<bool> {
    is_cap_with(&Exact, points)
}

#[derive(Debug, Clone)]
pub struct Cap<'a, K: Kernel> {
    instance: &'a ConvexInstance<K>,
    indices: Vec<usize>,
    // position[x] = Some(k) iff instance point x is the cap's k-th point
    position: Vec<Option<usize>>,
}

impl<'a, K: Kernel> Cap<'a, K> {
    /// Cap made of instance points whose counter-clockwise offsets from
    /// `indices[0]` strictly increase. Non-contiguous runs are allowed.
    pub fn from_indices(instance: &'a ConvexInstance<K>, indices: Vec<usize>) -> Result<Self> {
        if indices.len() < 2 {
            return Err(Error::TooFewPoints { need: 2, got: indices.len() });
        }
        for &i in &indices {
            instance.check_index(i)?;
        }
        let a = indices[0];
        let increasing = indices.windows(2).all(|w| instance.ccw_offset(a, w[0]) < instance.ccw_offset(a, w[1]));
        if !increasing {
            return Err(Error::NotCap);
        }
        let pts: Vec<_> = indices.iter().map(|&i| instance.point(i).clone()).collect();
        if !is_cap_with(instance.kernel(), &pts)? {
            return Err(Error::NotCap);
        }
        let mut position = vec![None; instance.len()];
        for (k, &i) in indices.iter().enumerate() {
            position[i] = Some(k);
        }
        Ok(Self { instance, indices, position })
    }

    /// `len` consecutive points counter-clockwise from `start`.
    pub fn contiguous(instance: &'a ConvexInstance<K>, start: usize, len: usize) -> Result<Self> {
        instance.check_index(start)?;
        if len > instance.len() {
            return Err(Error::ParameterOutOfRange(format!(
                "cap of {len} points in an instance of {}",
                instance.len()
            )));
        }
        let n = instance.len();
        Self::from_indices(instance, (0..len).map(|k| (start + k) % n).collect())
    }

    /// The whole instance, read from index 0, as a single cap.
    pub fn whole(instance: &'a ConvexInstance<K>) -> Result<Self> {
        Self::contiguous(instance, 0, instance.len())
    }

    pub fn instance(&self) -> &'a ConvexInstance<K> {
        self.instance
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn endpoints(&self) -> (usize, usize) {
        (self.indices[0], self.indices[self.indices.len() - 1])
    }

    pub fn contains(&self, x: usize) -> bool {
        self.position.get(x).is_some_and(|p| p.is_some())
    }

    /// Position of instance point `x` within the cap.
    pub fn position(&self, x: usize) -> Option<usize> {
        self.position.get(x).copied().flatten()
    }

    /// Counter-clockwise offset of `x` from the endpoint `a`.
    pub fn rank(&self, x: usize) -> usize {
        self.instance.ccw_offset(self.indices[0], x)
    }

    fn on_closed_side(&self, x: usize) -> bool {
        let (a, b) = self.endpoints();
        let inst = self.instance;
        inst.kernel().orientation(inst.point(a), inst.point(b), inst.point(x)) != Orientation::CounterClockwise
    }

    fn check_edge(&self, i: usize, j: usize) -> Result<()> {
        if i == j || !self.contains(i) || !self.contains(j) {
            return Err(Error::InvalidEdge);
        }
        Ok(())
    }

    /// Witness of the edge `{i, j}` (instance indices of cap points), as an
    /// instance index. The witness always lies strictly between `i` and `j`.
    pub fn find_witness(&self, i: usize, j: usize) -> Result<Option<usize>> {
        self.check_edge(i, j)?;
        let inst = self.instance;
        let (ri, rj) = (self.rank(i), self.rank(j));
        let (lo, hi) = (ri.min(rj), ri.max(rj));
        let a = self.indices[0];
        let mut found = None;
        for r in lo + 1..hi {
            let x = (a + r) % inst.len();
            if inst.equidistant(x, i, j) && self.on_closed_side(x) {
                if found.is_some() {
                    return Err(Error::AmbiguousWitness(i, j));
                }
                found = Some(x);
            }
        }
        #[cfg(debug_assertions)]
        {
            let full: Vec<usize> = (0..inst.len())
                .filter(|&x| x != i && x != j && inst.equidistant(x, i, j) && self.on_closed_side(x))
                .collect();
            debug_assert_eq!(full, found.into_iter().collect::<Vec<_>>(), "witness outside scan range");
        }
        Ok(found)
    }

    /// Witness of `{i, j}` if it exists and is itself a cap point.
    pub fn witness_in_cap(&self, i: usize, j: usize) -> Result<Option<usize>> {
        Ok(self.find_witness(i, j)?.filter(|&x| self.contains(x)))
    }

    /// `result[u][v]` = cap position of the in-cap witness of the edge between
    /// cap positions `u < v`.
    pub fn witness_positions(&self) -> Result<Vec<Vec<Option<usize>>>> {
        let t = self.len();
        let mut out = vec![vec![None; t]; t];
        for u in 0..t {
            for v in u + 1..t {
                let w = self.witness_in_cap(self.indices[u], self.indices[v])?;
                out[u][v] = w.and_then(|x| self.position(x));
            }
        }
        Ok(out)
    }
}

/// Splits the instance at the support points of its enclosing circle.
/// Consecutive caps share a splitting point.
pub fn cap_decomposition<K: Kernel>(instance: &ConvexInstance<K>) -> Result<Vec<Cap<'_, K>>> {
    let support = splitting_points(instance)?;
    let s = support.indices();
    if s.len() < 2 {
        return Ok(Vec::new());
    }
    let n = instance.len();
    let mut caps = Vec::with_capacity(s.len());
    for k in 0..s.len() {
        let (from, to) = (s[k], s[(k + 1) % s.len()]);
        let len = instance.ccw_offset(from, to);
        let len = if len == 0 { n } else { len } + 1;
        caps.push(Cap::contiguous(instance, from, len)?);
    }
    Ok(caps)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EdgeKind {
    Good,
    Bad,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EdgeClass {
    pub edge: (usize, usize),
    pub class: EdgeKind,
    pub bisector_points: Vec<usize>,
}

pub fn classify_edge<K: Kernel>(instance: &ConvexInstance<K>, i: usize, j: usize) -> Result<EdgeClass> {
    instance.check_index(i)?;
    instance.check_index(j)?;
    if i == j {
        return Err(Error::InvalidEdge);
    }
    let bisector_points = instance.bisector_points(i, j);
    if bisector_points.len() > 2 {
        return Err(Error::TooManyBisectorPoints(i, j));
    }
    let class = if bisector_points.len() <= 1 { EdgeKind::Good } else { EdgeKind::Bad };
    Ok(EdgeClass { edge: (i.min(j), i.max(j)), class, bisector_points })
}

pub fn good_edge_count<K: Kernel>(instance: &ConvexInstance<K>) -> usize {
    let n = instance.len();
    let table = instance.table();
    let mut good = 0;
    for i in 0..n {
        for j in i + 1..n {
            let mut hits = 0;
            for x in 0..n {
                if x != i && x != j && table.class(x, i) == table.class(x, j) {
                    hits += 1;
                    if hits > 1 {
                        break;
                    }
                }
            }
            if hits <= 1 {
                good += 1;
            }
        }
    }
    good
}

/// Edges of the cap whose witness exists and belongs to the cap.
pub fn witnessed_edges_in_cap<K: Kernel>(cap: &Cap<'_, K>) -> Result<usize> {
    let count = cap.witness_positions()?.iter().flatten().filter(|w| w.is_some()).count();
    debug_assert!(4 * count <= cap.len() * cap.len());
    Ok(count)
}

/// Edges between the first `split` and the last `split` cap points that have
/// a witness in the cap.
pub fn straddling_witnessed_edges<K: Kernel>(cap: &Cap<'_, K>, split: usize) -> Result<usize> {
    let len = cap.len();
    if !len.is_multiple_of(2) {
        return Err(Error::OddCapSize(len));
    }
    if split * 2 != len {
        return Err(Error::ParameterOutOfRange(format!("split {split} must be half of the cap size {len}")));
    }
    let idx = cap.indices();
    let mut count = 0;
    for u in 0..split {
        for v in split..len {
            if cap.witness_in_cap(idx[u], idx[v])?.is_some() {
                count += 1;
            }
        }
    }
    debug_assert!(8 * count <= 7 * split * split + split);
    Ok(count)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::Point;

    fn p(x: i64, y: i64) -> Point {
        Point::from_ints(x, y)
    }

    fn square() -> ConvexInstance<Exact> {
        ConvexInstance::new(Exact, vec![p(0, 0), p(1, 0), p(1, 1), p(0, 1)]).unwrap()
    }

    #[test]
    fn cap_predicate_examples() {
        assert!(is_cap(&[p(-1, 0), p(0, 1), p(1, 0)]).unwrap());
        assert!(!is_cap(&[p(-1, 0), p(0, 2), p(1, 0)]).unwrap());
        assert!(is_cap(&[p(5, 1), p(-2, 7)]).unwrap());
        assert!(is_cap(&[p(1, 1)]).is_err());
    }

    #[test]
    fn square_decomposes_into_three_caps() {
        let sq = square();
        let caps = cap_decomposition(&sq).unwrap();
        let sizes: Vec<usize> = caps.iter().map(|c| c.len()).collect();
        assert_eq!(sizes, vec![2, 2, 3]);
        assert_eq!(caps[2].indices(), &[2, 3, 0]);
    }

    #[test]
    fn right_triangle_decomposes_into_two_caps() {
        let tri = ConvexInstance::new(Exact, vec![p(-1, 0), p(0, 1), p(1, 0)]).unwrap();
        let caps = cap_decomposition(&tri).unwrap();
        assert_eq!(caps.len(), 2);
        assert_eq!(caps[0].indices(), &[0, 1]);
        assert_eq!(caps[1].indices(), &[1, 2, 0]);
    }

    #[test]
    fn witness_examples() {
        // Counter-clockwise from (1,0) through (0,1) to (-1,0).
        let tri = ConvexInstance::new(Exact, vec![p(1, 0), p(0, 1), p(-1, 0)]).unwrap();
        let cap = Cap::whole(&tri).unwrap();
        assert_eq!(cap.find_witness(0, 2).unwrap(), Some(1));
        assert_eq!(cap.find_witness(2, 1).unwrap(), None);
        assert_eq!(cap.find_witness(0, 0), Err(Error::InvalidEdge));
        assert_eq!(witnessed_edges_in_cap(&cap).unwrap(), 1);
    }

    #[test]
    fn edge_classes_on_square() {
        let sq = square();
        let side = classify_edge(&sq, 0, 1).unwrap();
        assert_eq!(side.class, EdgeKind::Good);
        assert!(side.bisector_points.is_empty());
        let diag = classify_edge(&sq, 0, 2).unwrap();
        assert_eq!(diag.class, EdgeKind::Bad);
        assert_eq!(diag.bisector_points, vec![1, 3]);
        assert_eq!(good_edge_count(&sq), 4);
        assert!(classify_edge(&sq, 0, 4).is_err());
    }

    #[test]
    fn right_triangle_long_edge_is_good() {
        let tri = ConvexInstance::new(Exact, vec![p(-1, 0), p(0, 1), p(1, 0)]).unwrap();
        let e = classify_edge(&tri, 0, 1).unwrap();
        assert_eq!(tri.point(1), &p(1, 0));
        assert_eq!(e.class, EdgeKind::Good);
        assert_eq!(e.bisector_points, vec![2]);
    }

    #[test]
    fn acute_triangle_has_three_good_edges() {
        let tri = ConvexInstance::new(Exact, vec![p(0, 0), p(4, 0), p(2, 3)]).unwrap();
        assert_eq!(good_edge_count(&tri), 3);
    }

    #[test]
    fn two_point_cap_has_no_witnessed_edges() {
        let sq = square();
        let cap = Cap::contiguous(&sq, 0, 2).unwrap();
        assert_eq!(witnessed_edges_in_cap(&cap).unwrap(), 0);
        assert!(straddling_witnessed_edges(&cap, 1).unwrap() <= 1);
        let odd = Cap::contiguous(&sq, 2, 3).unwrap();
        assert_eq!(straddling_witnessed_edges(&odd, 1), Err(Error::OddCapSize(3)));
    }

    #[test]
    fn non_cap_runs_are_rejected() {
        // An acute triangle is not a cap when read as a single run.
        let tri = ConvexInstance::new(Exact, vec![p(0, 0), p(4, 0), p(2, 3)]).unwrap();
        assert_eq!(Cap::whole(&tri).unwrap_err(), Error::NotCap);
        assert_eq!(Cap::from_indices(&tri, vec![0, 2, 1]).unwrap_err(), Error::NotCap);
    }
}

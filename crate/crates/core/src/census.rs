//! Isosceles census `Z(P)` and distinct-distance statistics.
//!
//! `Z(P)` counts apex incidences `(p, {a, b})` with `|pa| = |pb|`, so an
//! equilateral triangle contributes three.

use num_traits::{One, Signed};
use serde::Serialize;

use crate::caps::good_edge_count;
use crate::error::{Error, Result};
use crate::geom::{int, Kernel, Rational};
use crate::instance::ConvexInstance;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CensusReport {
    pub n: usize,
    pub z: u64,
    pub per_point_distinct: Vec<usize>,
    pub max_point_distinct: usize,
    pub total_distinct: usize,
    pub good_edges: usize,
    pub equilateral_triples: usize,
    pub backend: &'static str,
    pub eps: Option<f64>,
}

fn choose2(m: u64) -> u64 {
    m * m.saturating_sub(1) / 2
}

/// Multiplicities of the distance classes seen from `p`.
fn class_sizes<K: Kernel>(instance: &ConvexInstance<K>, p: usize) -> Vec<u64> {
    let table = instance.table();
    let mut classes: Vec<u32> = (0..instance.len()).filter(|&x| x != p).map(|x| table.class(p, x)).collect();
    classes.sort_unstable();
    let mut sizes = Vec::new();
    let mut k = 0;
    while k < classes.len() {
        let start = k;
        while k < classes.len() && classes[k] == classes[start] {
            k += 1;
        }
        sizes.push((k - start) as u64);
    }
    sizes
}

pub fn isosceles_census<K: Kernel>(instance: &ConvexInstance<K>) -> u64 {
    (0..instance.len()).map(|p| class_sizes(instance, p).into_iter().map(choose2).sum::<u64>()).sum()
}

pub fn distinct_distances_from<K: Kernel>(instance: &ConvexInstance<K>, p: usize) -> Result<usize> {
    instance.check_index(p)?;
    Ok(class_sizes(instance, p).len())
}

pub fn max_point_distinct<K: Kernel>(instance: &ConvexInstance<K>) -> usize {
    (0..instance.len()).map(|p| class_sizes(instance, p).len()).max().unwrap_or(0)
}

pub fn total_distinct<K: Kernel>(instance: &ConvexInstance<K>) -> usize {
    instance.table().class_count()
}

pub fn equilateral_triples<K: Kernel>(instance: &ConvexInstance<K>) -> usize {
    let n = instance.len();
    let t = instance.table();
    let mut count = 0;
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                if t.class(a, b) == t.class(b, c) && t.class(a, b) == t.class(a, c) {
                    count += 1;
                }
            }
        }
    }
    count
}

pub fn census<K: Kernel>(instance: &ConvexInstance<K>) -> CensusReport {
    let per_point_distinct: Vec<usize> = (0..instance.len()).map(|p| class_sizes(instance, p).len()).collect();
    let backend = instance.backend();
    CensusReport {
        n: instance.len(),
        z: isosceles_census(instance),
        max_point_distinct: per_point_distinct.iter().copied().max().unwrap_or(0),
        per_point_distinct,
        total_distinct: total_distinct(instance),
        good_edges: good_edge_count(instance),
        equilateral_triples: equilateral_triples(instance),
        backend: backend.name(),
        eps: backend.eps(),
    }
}

/// Fewest equal-distance pairs when `total` points are spread over `parts`
/// concentric circles: the balanced split, computed exactly.
pub fn balanced_pair_count(total: u64, parts: u64) -> u64 {
    if parts == 0 {
        return 0;
    }
    let (q, r) = (total / parts, total % parts);
    r * choose2(q + 1) + (parts - r) * choose2(q)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PointJensen {
    pub distinct: usize,
    pub pairs: u64,
    pub balanced_floor: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SzemerediVerdict {
    pub z: u64,
    pub upper_bound: u64,
    pub upper_margin: i64,
    pub per_point: Vec<PointJensen>,
    pub min_point_margin: i64,
    /// `n` times the balanced floor for the largest per-point distinct count.
    pub lower_bound: u64,
    pub lower_margin: i64,
    pub holds: bool,
}

/// Both sides of the double count `n k C((n-1)/k, 2) <= Z(P) <= 2 C(n, 2)`,
/// with the per-point Jensen step checked on the balanced integer partition.
///
/// The double count needs general position. Instances are in strictly convex
/// position (collinear triples are rejected at construction), which implies it.
pub fn szemeredi_check<K: Kernel>(instance: &ConvexInstance<K>) -> SzemerediVerdict {
    let n = instance.len() as u64;
    let per_point: Vec<PointJensen> = (0..instance.len())
        .map(|p| {
            let sizes = class_sizes(instance, p);
            PointJensen {
                distinct: sizes.len(),
                pairs: sizes.iter().copied().map(choose2).sum(),
                balanced_floor: balanced_pair_count(n.saturating_sub(1), sizes.len() as u64),
            }
        })
        .collect();
    let z: u64 = per_point.iter().map(|p| p.pairs).sum();
    let upper_bound = 2 * choose2(n);
    let min_point_margin = per_point.iter().map(|p| p.pairs as i64 - p.balanced_floor as i64).min().unwrap_or(0);
    let k = per_point.iter().map(|p| p.distinct).max().unwrap_or(0) as u64;
    let lower_bound = n * balanced_pair_count(n.saturating_sub(1), k);
    let upper_margin = upper_bound as i64 - z as i64;
    let lower_margin = z as i64 - lower_bound as i64;
    SzemerediVerdict {
        z,
        upper_bound,
        upper_margin,
        holds: upper_margin >= 0 && lower_margin >= 0 && min_point_margin >= 0,
        per_point,
        min_point_margin,
        lower_bound,
        lower_margin,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DeductionVerdict {
    pub z: u64,
    pub good_edges: usize,
    pub bound: i64,
    pub slack: i64,
    pub holds: bool,
}

/// `Z(P) <= 2 C(n, 2) - #good edges`.
pub fn good_edge_deduction<K: Kernel>(instance: &ConvexInstance<K>) -> DeductionVerdict {
    let z = isosceles_census(instance);
    let good_edges = good_edge_count(instance);
    let bound = 2 * choose2(instance.len() as u64) as i64 - good_edges as i64;
    let slack = bound - z as i64;
    DeductionVerdict { z, good_edges, bound, slack, holds: slack >= 0 }
}

/// Distinct-distance coefficient `(2 - alpha) / 3` obtained from `Z(P) <= alpha n^2`.
pub fn improvement_coefficient(alpha: &Rational) -> Result<Rational> {
    if alpha.is_negative() || *alpha > Rational::one() {
        return Err(Error::ParameterOutOfRange(format!("alpha = {alpha} not in [0, 1]")));
    }
    Ok((int(2) - alpha) / int(3))
}

//! The stripping procedure, its two-case classification, the two lower-bound
//! coefficients and their optimization, and the resulting constant chain.
//!
//! Every coefficient is an exact rational; the optimizer searches over
//! rationals and compares exactly, so its output is directly comparable with
//! `1/11.981 = 1000/11981`.

use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::census::improvement_coefficient;
use crate::enclosing::smallest_enclosing_circle;
use crate::error::{Error, Result};
use crate::geom::{int, rat, Exact, Rational};
use crate::instance::ExactInstance;
use crate::io::ser_rational;

/// `min((j - i) mod n, (i - j) mod n)`.
pub fn circular_distance(i: usize, j: usize, n: usize) -> Result<usize> {
    for index in [i, j] {
        if index >= n {
            return Err(Error::IndexOutOfRange { index, len: n });
        }
    }
    let forward = (j + n - i) % n;
    Ok(forward.min(n - forward))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StripStep {
    pub iteration: usize,
    /// Size of the remaining set before removal.
    pub size: usize,
    /// `x, y, z` as original indices; `x = y` for a two-point support.
    pub support: [usize; 3],
}

impl StripStep {
    pub fn distinct_support(&self) -> Vec<usize> {
        let mut s = self.support.to_vec();
        s.sort_unstable();
        s.dedup();
        s
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "case")]
pub enum StripCase {
    Case1 {
        step: usize,
        far_point: usize,
        /// Good edges of the instance between the `floor(a n)` points just
        /// before the far point and the `floor(a n)` points starting at it.
        straddling_good_edges: usize,
    },
    Case2,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StripTrace {
    pub n: usize,
    #[serde(serialize_with = "ser_rational")]
    pub a: Rational,
    #[serde(serialize_with = "ser_rational")]
    pub d: Rational,
    pub steps: Vec<StripStep>,
    pub case: StripCase,
}

fn check_unit_interval(name: &str, v: &Rational) -> Result<()> {
    if !v.is_positive() || *v >= Rational::one() {
        return Err(Error::ParameterOutOfRange(format!("{name} = {v} not in (0, 1)")));
    }
    Ok(())
}

fn far_from_all(p: usize, first: &StripStep, n: usize, an: &Rational) -> bool {
    first.support.iter().all(|&q| int(circular_distance(p, q, n).expect("valid indices") as i64) >= *an)
}

/// The step and point witnessing the first case, per the definition: some
/// step `i > 1` has a support point at circular distance at least `a n` from
/// each of `x_1, y_1, z_1`. Recomputed from the steps alone.
pub fn first_far_point(steps: &[StripStep], n: usize, a: &Rational) -> Option<(usize, usize)> {
    let an = a * int(n as i64);
    let first = steps.first()?;
    steps.iter().skip(1).find_map(|step| {
        step.distinct_support().into_iter().find(|&p| far_from_all(p, first, n, &an)).map(|p| (step.iteration, p))
    })
}

fn straddling_good_edges(instance: &ExactInstance, center: usize, m: usize) -> usize {
    let n = instance.len();
    let left = (1..=m).map(|k| (center + n - k) % n);
    let right: Vec<usize> = (0..m).map(|k| (center + k) % n).collect();
    let mut count = 0;
    for l in left {
        for &r in &right {
            if l != r && instance.bisector_points(l, r).len() <= 1 {
                count += 1;
            }
        }
    }
    count
}

/// Runs `floor(d n)` rounds of removing the support points of the smallest
/// enclosing circle, stopping early at the first step that witnesses Case 1.
pub fn strip_procedure(instance: &ExactInstance, a: &Rational, d: &Rational) -> Result<StripTrace> {
    check_unit_interval("a", a)?;
    check_unit_interval("d", d)?;
    let n = instance.len();
    let rounds = (d * int(n as i64)).floor().to_integer().to_usize().unwrap_or(0);
    if rounds < 1 {
        return Err(Error::InstanceTooSmall(format!("floor(d n) = 0 for d = {d}, n = {n}")));
    }
    let an = a * int(n as i64);
    let mut remaining: Vec<usize> = (0..n).collect();
    let mut steps: Vec<StripStep> = Vec::with_capacity(rounds);
    for iteration in 1..=rounds {
        if remaining.is_empty() {
            return Err(Error::InstanceTooSmall(format!(
                "all points removed after {} of {rounds} steps",
                iteration - 1
            )));
        }
        let pts: Vec<_> = remaining.iter().map(|&i| instance.point(i).clone()).collect();
        let (_, support) = smallest_enclosing_circle(&Exact, &pts)?;
        let s: Vec<usize> = support.indices().iter().map(|&k| remaining[k]).collect();
        let support = match s.as_slice() {
            [x] => [*x, *x, *x],
            [x, z] => [*x, *x, *z],
            [x, y, z] => [*x, *y, *z],
            _ => unreachable!("support sets have one to three points"),
        };
        let step = StripStep { iteration, size: remaining.len(), support };
        let far = if iteration > 1 {
            step.distinct_support().into_iter().find(|&p| far_from_all(p, &steps[0], n, &an))
        } else {
            None
        };
        remaining.retain(|i| !support.contains(i));
        steps.push(step);
        if let Some(far_point) = far {
            let m = an.floor().to_integer().to_usize().unwrap_or(0);
            let case = StripCase::Case1 {
                step: iteration,
                far_point,
                straddling_good_edges: straddling_good_edges(instance, far_point, m),
            };
            return Ok(StripTrace { n, a: a.clone(), d: d.clone(), steps, case });
        }
    }
    Ok(StripTrace { n, a: a.clone(), d: d.clone(), steps, case: StripCase::Case2 })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Case1Variant {
    /// `(1 - d)^2 / 12 + a^2 / 8 - 3d / 2`, the displayed final count.
    Final,
    /// `(1 - 3d)^2 / 12 + a^2 / 8 - 3d / 2`, the intermediate count.
    Conservative,
}

impl Case1Variant {
    pub fn name(self) -> &'static str {
        match self {
            Case1Variant::Final => "final",
            Case1Variant::Conservative => "conservative",
        }
    }
}

fn twelfth_square(x: Rational) -> Rational {
    &x * &x / int(12)
}

/// `n^2` coefficient of the Case 1 count.
pub fn case1_coefficient(a: &Rational, d: &Rational, variant: Case1Variant) -> Rational {
    let base = match variant {
        Case1Variant::Final => Rational::one() - d,
        Case1Variant::Conservative => Rational::one() - int(3) * d,
    };
    twelfth_square(base) + a * a / int(8) - int(3) * d / int(2)
}

/// `n^2` coefficient of the Case 2 count: `d - 3d^2 + (1 - 3d)^2 / 12 - 3da`.
pub fn case2_coefficient(a: &Rational, d: &Rational) -> Rational {
    d - int(3) * d * d + twelfth_square(Rational::one() - int(3) * d) - int(3) * d * a
}

/// The same coefficient in its expanded form `1/12 + d/2 - 9d^2/4 - 3da`.
pub fn case2_coefficient_expanded(a: &Rational, d: &Rational) -> Rational {
    rat(1, 12) + d / int(2) - int(9) * d * d / int(4) - int(3) * d * a
}

/// `sum_{i=1}^{k} (n - 6i) = k n - 3k(k + 1)` for `k = floor(d n)`.
pub fn strip_sum(n: u64, d: &Rational) -> i128 {
    let k = (d * int(n as i64)).floor().to_integer().to_i128().unwrap_or(0);
    k * n as i128 - 3 * k * (k + 1)
}

/// Finite-`n` counts of both cases (before `O(n)` slack is dropped).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FiniteBounds {
    pub n: u64,
    pub strip_sum: i128,
    #[serde(serialize_with = "ser_rational")]
    pub case1: Rational,
    #[serde(serialize_with = "ser_rational")]
    pub case2: Rational,
}

pub fn finite_bounds(n: u64, a: &Rational, d: &Rational, variant: Case1Variant) -> FiniteBounds {
    let nn = int(n as i64);
    let n2 = &nn * &nn;
    let s = strip_sum(n, d);
    let case1 = case1_coefficient(a, d, variant) * &n2;
    let case2 = Rational::from_integer(s.into()) + twelfth_square(&nn - int(3) * d * &nn) - int(3) * d * a * &n2;
    FiniteBounds { n, strip_sum: s, case1, case2 }
}

/// `1 / 11.981`.
pub fn target_coefficient() -> Rational {
    rat(1000, 11981)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub variant: Case1Variant,
    #[serde(serialize_with = "ser_rational")]
    pub a: Rational,
    #[serde(serialize_with = "ser_rational")]
    pub d: Rational,
    #[serde(serialize_with = "ser_rational")]
    pub case1_coefficient: Rational,
    #[serde(serialize_with = "ser_rational")]
    pub case2_coefficient: Rational,
    #[serde(serialize_with = "ser_rational")]
    pub min_coefficient: Rational,
    pub min_coefficient_approx: f64,
    #[serde(serialize_with = "ser_rational")]
    pub target: Rational,
    pub meets_target: bool,
}

pub fn bound_report(a: &Rational, d: &Rational, variant: Case1Variant) -> BoundReport {
    let c1 = case1_coefficient(a, d, variant);
    let c2 = case2_coefficient(a, d);
    let min = c1.clone().min(c2.clone());
    let target = target_coefficient();
    BoundReport {
        variant,
        a: a.clone(),
        d: d.clone(),
        meets_target: min >= target,
        min_coefficient_approx: min.to_f64().unwrap_or(f64::NAN),
        case1_coefficient: c1,
        case2_coefficient: c2,
        min_coefficient: min,
        target,
    }
}

/// `a = 1/8.8`, `d = 1/1132`.
pub fn published_parameters() -> (Rational, Rational) {
    (rat(5, 44), rat(1, 1132))
}

fn objective(a: &Rational, d: &Rational) -> Rational {
    case1_coefficient(a, d, Case1Variant::Final).min(case2_coefficient(a, d))
}

const BISECTION_STEPS: usize = 48;
const TERNARY_STEPS: usize = 48;

/// For fixed `d` the first coefficient increases in `a` and the second
/// decreases, so the best `a` sits at their crossing; bisect to a dyadic
/// bracket and keep the better end.
fn best_a_for(d: &Rational) -> (Rational, Rational) {
    let gap = |a: &Rational| case1_coefficient(a, d, Case1Variant::Final) - case2_coefficient(a, d);
    let (mut lo, mut hi) = (Rational::zero(), Rational::one());
    if !gap(&hi).is_positive() {
        return (hi.clone(), objective(&hi, d));
    }
    if !gap(&lo).is_negative() {
        return (lo.clone(), objective(&lo, d));
    }
    for _ in 0..BISECTION_STEPS {
        let mid = (&lo + &hi) / int(2);
        if gap(&mid).is_negative() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let (vl, vh) = (objective(&lo, d), objective(&hi, d));
    if vl >= vh {
        (lo, vl)
    } else {
        (hi, vh)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OptimizeReport {
    pub resolution: usize,
    #[serde(serialize_with = "ser_rational")]
    pub a: Rational,
    #[serde(serialize_with = "ser_rational")]
    pub d: Rational,
    #[serde(serialize_with = "ser_rational")]
    pub min_coefficient: Rational,
    pub a_approx: f64,
    pub d_approx: f64,
    pub min_coefficient_approx: f64,
    /// The published parameters, with both variants of the first case.
    pub published_final: BoundReport,
    pub published_conservative: BoundReport,
    /// The optimum is at least the value at the published parameters, and
    /// that value is at least `1/11.981`.
    pub certified: bool,
}

/// Maximizes `min(case1 (final), case2)` over `(a, d)`.
///
/// A coarse grid `d = j / (R + 1)^2`, `j = 1..=R`, is scanned in parallel with
/// the best `a` found by exact bisection; the best cell is refined by ternary
/// search on `d` between its neighbours. The published point is evaluated too,
/// so the result dominates it.
pub fn optimize_parameters(resolution: usize) -> Result<OptimizeReport> {
    if resolution < 1 {
        return Err(Error::ParameterOutOfRange("resolution must be at least 1".into()));
    }
    let denom = ((resolution + 1) * (resolution + 1)) as i64;
    let grid: Vec<(Rational, Rational, Rational)> = (1..=resolution as i64)
        .into_par_iter()
        .map(|j| {
            let d = rat(j, denom);
            let (a, v) = best_a_for(&d);
            (a, d, v)
        })
        .collect();
    // Deterministic choice: highest value, then smallest d.
    let (k, _) = grid
        .iter()
        .enumerate()
        .fold(None::<(usize, &Rational)>, |best, (k, (_, _, v))| match best {
            Some((_, bv)) if bv >= v => best,
            _ => Some((k, v)),
        })
        .expect("non-empty grid");
    let mut lo = if k == 0 { Rational::zero() } else { grid[k - 1].1.clone() };
    let mut hi = grid.get(k + 1).map_or_else(|| rat(resolution as i64 + 1, denom), |g| g.1.clone());
    for _ in 0..TERNARY_STEPS {
        let m1 = (int(2) * &lo + &hi) / int(3);
        let m2 = (&lo + int(2) * &hi) / int(3);
        if best_a_for(&m1).1 < best_a_for(&m2).1 {
            lo = m1;
        } else {
            hi = m2;
        }
    }
    let mid = (&lo + &hi) / int(2);
    let (ra, rv) = best_a_for(&mid);
    let mut candidates = vec![grid[k].clone(), (ra, mid, rv)];
    let (pa, pd) = published_parameters();
    let pv = objective(&pa, &pd);
    candidates.push((pa.clone(), pd.clone(), pv.clone()));
    let (a, d, min) = candidates.into_iter().reduce(|x, y| if y.2 > x.2 { y } else { x }).expect("candidates");
    let published_final = bound_report(&pa, &pd, Case1Variant::Final);
    let published_conservative = bound_report(&pa, &pd, Case1Variant::Conservative);
    Ok(OptimizeReport {
        resolution,
        a_approx: a.to_f64().unwrap_or(f64::NAN),
        d_approx: d.to_f64().unwrap_or(f64::NAN),
        min_coefficient_approx: min.to_f64().unwrap_or(f64::NAN),
        certified: min >= pv && published_final.meets_target,
        a,
        d,
        min_coefficient: min,
        published_final,
        published_conservative,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EpsilonChain {
    #[serde(serialize_with = "ser_rational")]
    pub alpha: Rational,
    #[serde(serialize_with = "ser_rational")]
    pub coefficient: Rational,
    #[serde(serialize_with = "ser_rational")]
    pub excess: Rational,
}

impl std::fmt::Display for EpsilonChain {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        use crate::io::format_rational as r;
        // The coefficient is written as (2q - p) / 3q for alpha = p/q, without
        // cancelling the common factor, so the chain reads off directly.
        let (p, q) = (self.alpha.numer(), self.alpha.denom());
        let coeff = format!("{}/{}", q * 2u32 - p, q * 3u32);
        debug_assert_eq!(crate::io::parse_rational(&coeff).ok().as_ref(), Some(&self.coefficient));
        write!(f, "alpha={}, coeff={}, excess={}", r(&self.alpha), coeff, r(&self.excess))
    }
}

/// `alpha = 1 - 1/11.981`, the distinct-distance coefficient it yields, and
/// its excess over `13/36`.
pub fn epsilon_chain() -> EpsilonChain {
    let alpha = Rational::one() - target_coefficient();
    let coefficient = improvement_coefficient(&alpha).expect("alpha lies in [0, 1]");
    let excess = &coefficient - rat(13, 36);
    assert_eq!(excess, rat(19, 431316));
    assert!(excess >= rat(1, 22702) && excess > rat(1, 23000));
    EpsilonChain { alpha, coefficient, excess }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{rational_concyclic, snapped_regular_ngon};

    #[test]
    fn circular_distances() {
        assert_eq!(circular_distance(1, 5, 6).unwrap(), 2);
        assert_eq!(circular_distance(4, 4, 6).unwrap(), 0);
        assert_eq!(circular_distance(0, 3, 7).unwrap(), 3);
        assert_eq!(circular_distance(0, 0, 1).unwrap(), 0);
        assert!(circular_distance(0, 7, 7).is_err());
    }

    #[test]
    fn coefficients_at_published_parameters() {
        let (a, d) = published_parameters();
        assert_eq!(case1_coefficient(&a, &d, Case1Variant::Final), rat(103544215, 1240418432));
        assert_eq!(case1_coefficient(&a, &d, Case1Variant::Conservative), rat(309538805, 3721255296));
        assert_eq!(case2_coefficient(&a, &d), rat(14119139, 169147968));
        let report = bound_report(&a, &d, Case1Variant::Final);
        assert!(report.meets_target);
        assert!(!bound_report(&a, &d, Case1Variant::Conservative).meets_target);
    }

    #[test]
    fn coefficient_edge_cases() {
        let a = rat(3, 7);
        let zero = Rational::zero();
        let c = &a * &a / int(8) + rat(1, 12);
        assert_eq!(case1_coefficient(&a, &zero, Case1Variant::Final), c);
        assert_eq!(case1_coefficient(&a, &zero, Case1Variant::Conservative), c);
        assert_eq!(case1_coefficient(&zero, &zero, Case1Variant::Final), rat(1, 12));
        assert_eq!(case2_coefficient(&a, &zero), rat(1, 12));
        let one_pct = rat(1, 100);
        let expected = rat(1, 12) + rat(1, 200) - rat(9, 40000) - rat(3, 100);
        assert_eq!(case2_coefficient(&int(1), &one_pct), expected);
        assert_eq!(expected, rat(6973, 120000));
    }

    #[test]
    fn case2_forms_agree() {
        for (a, d) in [(rat(5, 44), rat(1, 1132)), (rat(1, 2), rat(1, 3)), (rat(-2, 9), rat(7, 5))] {
            assert_eq!(case2_coefficient(&a, &d), case2_coefficient_expanded(&a, &d));
        }
    }

    #[test]
    fn strip_sum_matches_direct_sum() {
        for n in [10u64, 57, 300] {
            for d in [rat(1, 12), rat(1, 5), rat(1, 3)] {
                let k = (d.clone() * int(n as i64)).floor().to_integer().to_i128().unwrap();
                let direct: i128 = (1..=k).map(|i| n as i128 - 6 * i).sum();
                assert_eq!(strip_sum(n, &d), direct);
            }
        }
    }

    #[test]
    fn epsilon_chain_values() {
        let chain = epsilon_chain();
        assert_eq!(chain.alpha, rat(10981, 11981));
        assert_eq!(chain.coefficient, rat(12981, 35943));
        assert_eq!(chain.to_string(), "alpha=10981/11981, coeff=12981/35943, excess=19/431316");
        assert!(chain.excess > rat(1, 22701));
    }

    #[test]
    fn optimizer_beats_published_point() {
        let r = optimize_parameters(40).unwrap();
        let (a, d) = published_parameters();
        assert!(r.min_coefficient >= objective(&a, &d));
        assert!(r.certified);
        assert!((r.min_coefficient_approx - 0.0834723).abs() < 1e-6, "{}", r.min_coefficient_approx);
        assert!((r.a_approx - 0.11433).abs() < 1e-3);
        assert!((r.d_approx - 0.000897).abs() < 1e-4);
        assert!(optimize_parameters(0).is_err());
        assert!(optimize_parameters(1).unwrap().min_coefficient >= objective(&a, &d));
    }

    #[test]
    fn strip_on_snapped_sixty_gon() {
        let inst = snapped_regular_ngon(60, 1_000_000).unwrap();
        let trace = strip_procedure(&inst, &rat(5, 44), &rat(1, 12)).unwrap();
        assert!(trace.steps.len() <= 5);
        assert_eq!(trace.steps[0].size, 60);
        let rescan = first_far_point(&trace.steps, 60, &rat(5, 44));
        match &trace.case {
            StripCase::Case1 { step, far_point, .. } => assert_eq!(rescan, Some((*step, *far_point))),
            StripCase::Case2 => {
                assert_eq!(trace.steps.len(), 5);
                assert_eq!(rescan, None);
            }
        }
    }

    #[test]
    fn strip_single_step_and_errors() {
        let params: Vec<Rational> = (0..12).map(|k| rat(k - 6, 3)).collect();
        let inst = rational_concyclic(&params).unwrap();
        let trace = strip_procedure(&inst, &rat(1, 4), &rat(1, 12)).unwrap();
        assert_eq!(trace.steps.len(), 1);
        assert_eq!(trace.case, StripCase::Case2);
        assert!(matches!(strip_procedure(&inst, &rat(1, 4), &rat(1, 13)), Err(Error::InstanceTooSmall(_))));
        assert!(strip_procedure(&inst, &int(1), &rat(1, 2)).is_err());
        assert!(strip_procedure(&inst, &rat(1, 2), &int(0)).is_err());
    }
}

//! Instance-level checkers for the witness lemmas, and a constructive
//! sampler for five-point caps with two prescribed witnesses.

use num_traits::Zero;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::caps::{is_cap, Cap};
use crate::error::{Error, Result};
use crate::geom::{on_bisector, orientation, rat, squared_distance, Kernel, Orientation, Point, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Verdict {
    Holds,
    Violated,
    Skip,
}

impl Verdict {
    fn from_bool(holds: bool) -> Self {
        if holds {
            Verdict::Holds
        } else {
            Verdict::Violated
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MonotoneCheck {
    pub verdict: Verdict,
    /// Witness of `ac` and its offset from `a`.
    pub x: Option<(usize, usize)>,
    /// Witness of `ab` and its offset from `a`.
    pub y: Option<(usize, usize)>,
}

/// For a cap with endpoints `a`, `b` and an interior cap point `c`: if `x`
/// witnesses `ac` and `y` witnesses `ab`, then `x` comes strictly before `y`
/// going from `a` to `b`. Missing witnesses give `Skip`.
pub fn check_monotone<K: Kernel>(cap: &Cap<'_, K>, c: usize) -> Result<MonotoneCheck> {
    let (a, b) = cap.endpoints();
    if !cap.contains(c) || c == a || c == b {
        return Err(Error::InvalidEdge);
    }
    let with_rank = |w: Option<usize>| w.map(|x| (x, cap.rank(x)));
    let x = with_rank(cap.find_witness(a, c)?);
    let y = with_rank(cap.find_witness(a, b)?);
    let verdict = match (x, y) {
        (Some((_, rx)), Some((_, ry))) => Verdict::from_bool(rx < ry),
        _ => Verdict::Skip,
    };
    Ok(MonotoneCheck { verdict, x, y })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HalfEasyCheck {
    pub verdict: Verdict,
    pub t: usize,
    pub endpoint_edges: usize,
    pub unwitnessed: usize,
    pub required: usize,
}

/// Among the `2t - 3` edges at the endpoints of a `t`-point cap, at least
/// `t - 1` have no witness in the cap.
pub fn check_half_easy<K: Kernel>(cap: &Cap<'_, K>) -> Result<HalfEasyCheck> {
    let t = cap.len();
    let idx = cap.indices();
    let edges = (1..t).map(|k| (0, k)).chain((1..t - 1).map(|k| (k, t - 1)));
    let mut endpoint_edges = 0;
    let mut unwitnessed = 0;
    for (u, v) in edges {
        endpoint_edges += 1;
        if cap.witness_in_cap(idx[u], idx[v])?.is_none() {
            unwitnessed += 1;
        }
    }
    debug_assert_eq!(endpoint_edges, 2 * t - 3);
    Ok(HalfEasyCheck {
        verdict: Verdict::from_bool(unwitnessed + 1 >= t),
        t,
        endpoint_edges,
        unwitnessed,
        required: t - 1,
    })
}

/// Five cap points in clockwise order with `c` on the bisector of `ae` and
/// `d` on the bisector of `be`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TechConfig {
    #[serde(serialize_with = "crate::io::ser_point")]
    pub a: Point,
    #[serde(serialize_with = "crate::io::ser_point")]
    pub b: Point,
    #[serde(serialize_with = "crate::io::ser_point")]
    pub c: Point,
    #[serde(serialize_with = "crate::io::ser_point")]
    pub d: Point,
    #[serde(serialize_with = "crate::io::ser_point")]
    pub e: Point,
}

impl TechConfig {
    /// Validates the premises: weakly convex clockwise order, `b`, `c`, `d`
    /// strictly on one side of `ae`, the cap criterion, and both witness
    /// certificates.
    pub fn new(a: Point, b: Point, c: Point, d: Point, e: Point) -> Result<Self> {
        let config = Self { a, b, c, d, e };
        if config.premises_hold()? {
            Ok(config)
        } else {
            Err(Error::ParameterOutOfRange("configuration violates the premises".into()))
        }
    }

    pub fn points(&self) -> [&Point; 5] {
        [&self.a, &self.b, &self.c, &self.d, &self.e]
    }

    fn premises_hold(&self) -> Result<bool> {
        let pts = self.points();
        for i in 0..5 {
            for j in i + 1..5 {
                if pts[i] == pts[j] {
                    return Ok(false);
                }
            }
        }
        let weakly_clockwise =
            (0..5).all(|i| orientation(pts[i], pts[(i + 1) % 5], pts[(i + 2) % 5]) != Orientation::CounterClockwise);
        let strictly_above = [&self.b, &self.c, &self.d]
            .iter()
            .all(|p| orientation(&self.a, &self.e, p) == Orientation::CounterClockwise);
        let owned: Vec<Point> = pts.iter().map(|&p| p.clone()).collect();
        Ok(weakly_clockwise
            && strictly_above
            && is_cap(&owned)?
            && on_bisector(&self.c, &self.a, &self.e)?
            && on_bisector(&self.d, &self.b, &self.e)?)
    }
}

fn rot90(v: (Rational, Rational)) -> (Rational, Rational) {
    (-v.1, v.0)
}

fn sub(p: &Point, q: &Point) -> (Rational, Rational) {
    (&p.x - &q.x, &p.y - &q.y)
}

fn offset(p: &Point, v: &(Rational, Rational), s: &Rational) -> Point {
    Point::new(&p.x + &v.0 * s, &p.y + &v.1 * s)
}

fn cross(u: &(Rational, Rational), v: &(Rational, Rational)) -> Rational {
    &u.0 * &v.1 - &u.1 * &v.0
}

/// Parameters `s` in `(0, 1]` for which `m + s * up` keeps both `b, c, d` and
/// `c, d, e` from turning counter-clockwise. Both conditions are affine in `s`.
fn convex_window(
    b: &Point,
    c: &Point,
    e: &Point,
    m: &Point,
    up: &(Rational, Rational),
) -> Option<(Rational, Rational)> {
    let zero = Rational::zero();
    let (mut lo, mut hi) = (zero.clone(), Rational::from_integer(1.into()));
    let bc = sub(c, b);
    let ec = sub(e, c);
    // f0 + s f1 <= 0
    for (f0, f1) in [(cross(&bc, &sub(m, b)), cross(&bc, up)), (cross(&sub(m, c), &ec), cross(up, &ec))] {
        if f1.is_zero() {
            if f0 > zero {
                return None;
            }
        } else if f1 > zero {
            hi = hi.min(-f0 / f1);
        } else {
            lo = lo.max(-f0 / f1);
        }
    }
    (lo < hi).then_some((lo, hi))
}

const TECH_ATTEMPTS: usize = 10_000;

/// Constructive sampler: `c` is placed on the bisector of `ae`, `b` near the
/// chord `ac` (on it with probability 1/8, the weakly convex case), and `d`
/// on the bisector of `be`. All choices are rational, so both certificates
/// hold exactly; candidates failing the remaining premises are resampled.
pub fn sample_tech_config(seed: u64) -> Result<TechConfig> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let coord = |rng: &mut ChaCha8Rng| rng.gen_range(-20i64..=20);
    for _ in 0..TECH_ATTEMPTS {
        let a = Point::from_ints(coord(&mut rng), coord(&mut rng));
        let e = Point::from_ints(coord(&mut rng), coord(&mut rng));
        if a == e {
            continue;
        }
        let s = rat(rng.gen_range(1..=32), 64);
        let c = offset(&a.midpoint(&e), &rot90(sub(&e, &a)), &s);
        let lambda = rat(rng.gen_range(1..=31), 32);
        let mu = if rng.gen_ratio(1, 8) { Rational::zero() } else { rat(rng.gen_range(1..=32), 64) };
        let ac = sub(&c, &a);
        let b = offset(&offset(&a, &ac, &lambda), &rot90(ac), &mu);
        let (mid_be, up_be) = (b.midpoint(&e), rot90(sub(&e, &b)));
        let Some((lo, hi)) = convex_window(&b, &c, &e, &mid_be, &up_be) else {
            continue;
        };
        let s2 = &lo + (hi - &lo) * rat(rng.gen_range(0..=32), 32);
        let d = offset(&mid_be, &up_be, &s2);
        if let Ok(config) = TechConfig::new(a, b, c, d, e) {
            return Ok(config);
        }
    }
    Err(Error::RejectionBudget(TECH_ATTEMPTS))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TechCheck {
    pub verdict: Verdict,
    #[serde(serialize_with = "crate::io::ser_rational")]
    pub ab: Rational,
    #[serde(serialize_with = "crate::io::ser_rational")]
    pub cd: Rational,
}

/// `|ab| > |cd|`, strictly; a tie is a violation.
pub fn check_tech(config: &TechConfig) -> TechCheck {
    let ab = squared_distance(&config.a, &config.b).into_inner();
    let cd = squared_distance(&config.c, &config.d).into_inner();
    TechCheck { verdict: Verdict::from_bool(ab > cd), ab, cd }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SegmentDegrees {
    /// Cap positions of the segment's endpoints.
    pub u: usize,
    pub v: usize,
    pub degree_sum: usize,
    pub bound: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SequenceCheck {
    pub verdict: Verdict,
    pub t: usize,
    pub edges: usize,
    /// `(7t^2 + t) / 8`, compared as `8 |E| <= 7t^2 + t`.
    pub aggregate_numerator: usize,
    pub segments: Vec<SegmentDegrees>,
    pub segment_violations: usize,
}

/// Checks a cap of `2t` points: the graph of straddling edges with a witness
/// in the cap satisfies `d(u_i) + d(v_i) <= t + min(i, t)` along the
/// consecutive segments sorted by length, and `|E| <= (7t^2 + t) / 8`.
pub fn check_sequence_bound<K: Kernel>(cap: &Cap<'_, K>) -> Result<SequenceCheck> {
    let len = cap.len();
    if !len.is_multiple_of(2) {
        return Err(Error::OddCapSize(len));
    }
    let t = len / 2;
    let idx = cap.indices();
    let mut degree = vec![0usize; len];
    let mut edges = 0;
    for u in 0..t {
        for v in t..len {
            if cap.witness_in_cap(idx[u], idx[v])?.is_some() {
                degree[u] += 1;
                degree[v] += 1;
                edges += 1;
            }
        }
    }
    let table = cap.instance().table();
    let mut order: Vec<usize> = (0..len.saturating_sub(1)).filter(|&j| j + 1 != t).collect();
    order.sort_by_key(|&j| (table.class(idx[j], idx[j + 1]), j));
    let segments: Vec<SegmentDegrees> = order
        .iter()
        .enumerate()
        .map(|(rank, &j)| SegmentDegrees {
            u: j,
            v: j + 1,
            degree_sum: degree[j] + degree[j + 1],
            bound: t + (rank + 1).min(t),
        })
        .collect();
    let segment_violations = segments.iter().filter(|s| s.degree_sum > s.bound).count();
    let aggregate_numerator = 7 * t * t + t;
    let holds = segment_violations == 0 && 8 * edges <= aggregate_numerator;
    Ok(SequenceCheck {
        verdict: Verdict::from_bool(holds),
        t,
        edges,
        aggregate_numerator,
        segments,
        segment_violations,
    })
}

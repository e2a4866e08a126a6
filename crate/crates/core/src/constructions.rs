//! Instance generators.
//!
//! Regular polygons and evenly spaced arcs have irrational coordinates and
//! use the floating backend. Everything else is exact: points on the unit
//! circle from rational tangent-half-angle parameters, arcs of equally spaced
//! points with rational coordinates (powers of a Pythagorean rotation), and
//! random convex lattice polygons.

use std::collections::HashSet;
use std::f64::consts::PI;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::geom::{int, rat, Exact, Float, FloatPoint, Point, Rational};
use crate::instance::{ConvexInstance, ExactInstance, FloatInstance};

/// Vertices of the regular `n`-gon on the unit circle.
pub fn regular_ngon(n: usize, kernel: Float) -> Result<FloatInstance> {
    if n < 3 {
        return Err(Error::TooFewPoints { need: 3, got: n });
    }
    let points = (0..n)
        .map(|k| {
            let t = 2.0 * PI * k as f64 / n as f64;
            FloatPoint::new(t.cos(), t.sin())
        })
        .collect();
    ConvexInstance::new(kernel, points)
}

/// The center of the unit circle followed by `n - 1` points evenly spaced on
/// a quarter of it, both ends of the arc included.
pub fn quarter_arc_with_center(n: usize, kernel: Float) -> Result<FloatInstance> {
    if n < 4 {
        return Err(Error::TooFewPoints { need: 4, got: n });
    }
    let steps = (n - 2) as f64;
    let mut points = vec![FloatPoint::new(0.0, 0.0)];
    points.extend((0..n - 1).map(|k| {
        let t = (PI / 2.0) * k as f64 / steps;
        FloatPoint::new(t.cos(), t.sin())
    }));
    ConvexInstance::new(kernel, points)
}

/// Exact `Z` of `m` evenly spaced points on an arc of `arc * pi` radians,
/// optionally with the circle's center, computed from index gaps alone.
///
/// Chord length depends only on the index gap and is injective for arcs up
/// to a semicircle, so arc apexes see equal legs exactly at index 3-APs. The
/// center sees every arc point at the radius. A base made of an arc point and
/// the center needs a chord equal to the radius, i.e. a gap `g0` spanning
/// exactly a sixth of a turn.
pub fn symbolic_arc_census(m: u64, include_center: bool, arc: &Rational) -> Result<u64> {
    if m < 2 {
        return Err(Error::TooFewPoints { need: 2, got: m as usize });
    }
    if !arc.is_positive() || *arc > Rational::one() {
        return Err(Error::ParameterOutOfRange(format!("arc {arc} not in (0, 1]")));
    }
    let last = m - 1;
    let mut z: u64 = (0..m).map(|k| k.min(last - k)).sum();
    if include_center {
        z += m * (m - 1) / 2;
        let g0 = int(last as i64) / (int(3) * arc);
        if g0.is_integer() {
            let g0 = g0.to_integer().to_u64().unwrap_or(u64::MAX);
            if (1..=last).contains(&g0) {
                z += 2 * (m - g0);
            }
        }
    }
    Ok(z)
}

/// Point `((1 - t^2) / (1 + t^2), 2t / (1 + t^2))` of the unit circle.
pub fn circle_point(t: &Rational) -> Point {
    let t2 = t * t;
    let denom = Rational::one() + &t2;
    Point::new((Rational::one() - t2) / &denom, (int(2) * t) / denom)
}

/// Exactly concyclic rational points from increasing parameters.
pub fn rational_concyclic(params: &[Rational]) -> Result<ExactInstance> {
    if params.len() < 3 {
        return Err(Error::TooFewPoints { need: 3, got: params.len() });
    }
    let mut sorted = params.to_vec();
    sorted.sort();
    if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
        return Err(Error::DuplicateParameter(w[0].to_string()));
    }
    ConvexInstance::new(Exact, sorted.iter().map(circle_point).collect())
}

fn gaussian_mul(a: &(BigInt, BigInt), b: &(BigInt, BigInt)) -> (BigInt, BigInt) {
    (&a.0 * &b.0 - &a.1 * &b.1, &a.0 * &b.1 + &a.1 * &b.0)
}

/// Angle of the rotation `((m^2 - 1) + 2m i) / (m^2 + 1)`, i.e. `2 atan(1/m)`.
pub fn pythagorean_angle(m: u64) -> f64 {
    2.0 * (1.0 / m as f64).atan()
}

/// Points at angles `k * pythagorean_angle(m)` for the given distinct
/// exponents `k`, all on one circle centered at the origin. Coordinates are
/// integers: every point is scaled by `(m^2 + 1)^K`, `K` the largest exponent.
pub fn pythagorean_arc(exponents: &[u64], m: u64) -> Result<ExactInstance> {
    if m < 1 {
        return Err(Error::ParameterOutOfRange("rotation parameter must be at least 1".into()));
    }
    let mut ks = exponents.to_vec();
    ks.sort_unstable();
    if let Some(w) = ks.windows(2).find(|w| w[0] == w[1]) {
        return Err(Error::DuplicateParameter(w[0].to_string()));
    }
    if ks.is_empty() {
        return Err(Error::TooFewPoints { need: 1, got: 0 });
    }
    let top = *ks.last().expect("non-empty");
    let mi = BigInt::from(m);
    let step = gaussian_mul(&(mi.clone(), BigInt::one()), &(mi.clone(), BigInt::one()));
    let norm = &mi * &mi + BigInt::one();
    let mut norm_pows = vec![BigInt::one()];
    for _ in 0..top {
        let next = norm_pows.last().expect("non-empty") * &norm;
        norm_pows.push(next);
    }
    let mut points = Vec::with_capacity(ks.len());
    let mut power = (BigInt::one(), BigInt::zero());
    let mut at = 0u64;
    for &k in &ks {
        while at < k {
            power = gaussian_mul(&power, &step);
            at += 1;
        }
        let scale = &norm_pows[(top - k) as usize];
        points.push(Point::new(Rational::from_integer(&power.0 * scale), Rational::from_integer(&power.1 * scale)));
    }
    ConvexInstance::new(Exact, points)
}

/// Concyclic rational points close to a regular `n`-gon: tangent-half-angle
/// parameters of the angles `2 pi (k + 1/2) / n - pi`, rounded to multiples
/// of `1 / denom`.
pub fn snapped_regular_ngon(n: usize, denom: i64) -> Result<ExactInstance> {
    if denom < 1 {
        return Err(Error::ParameterOutOfRange("denominator must be positive".into()));
    }
    let params: Vec<Rational> = (0..n)
        .map(|k| {
            let theta = 2.0 * PI * (k as f64 + 0.5) / n as f64 - PI;
            let t = (theta / 2.0).tan();
            rat((t * denom as f64).round() as i64, denom)
        })
        .collect();
    rational_concyclic(&params)
}

fn primitive(v: (i64, i64)) -> (i64, i64) {
    let g = v.0.gcd(&v.1);
    (v.0 / g, v.1 / g)
}

fn angle_cmp(a: &(i64, i64), b: &(i64, i64)) -> std::cmp::Ordering {
    let half = |v: &(i64, i64)| u8::from(!(v.1 > 0 || (v.1 == 0 && v.0 > 0)));
    half(a).cmp(&half(b)).then_with(|| 0.cmp(&(a.0 * b.1 - a.1 * b.0)))
}

/// Random convex lattice polygon: edge vectors with pairwise distinct
/// directions and components in `[-range, range]`, closed up and sorted by
/// angle. Deterministic in `seed`.
pub fn random_convex_in_range(n: usize, seed: u64, range: i64) -> Result<ExactInstance> {
    if n < 3 {
        return Err(Error::TooFewPoints { need: 3, got: n });
    }
    // Primitive directions available in the box, with margin for the closing vector.
    let available = 4 * range * (range + 1);
    if range < 1 || (available as usize) < n + 2 {
        return Err(Error::ParameterOutOfRange(format!("range {range} too small for {n} edge directions")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    const ATTEMPTS: usize = 10_000;
    for _ in 0..ATTEMPTS {
        let mut dirs = HashSet::new();
        let mut edges = Vec::with_capacity(n);
        let (mut sx, mut sy) = (0i64, 0i64);
        let mut guard = 0;
        while edges.len() < n - 1 && guard < 100 * n {
            guard += 1;
            let v = (rng.gen_range(-range..=range), rng.gen_range(-range..=range));
            if v == (0, 0) || !dirs.insert(primitive(v)) {
                continue;
            }
            sx += v.0;
            sy += v.1;
            edges.push(v);
        }
        if edges.len() < n - 1 {
            continue;
        }
        let close = (-sx, -sy);
        if close == (0, 0) || dirs.contains(&primitive(close)) {
            continue;
        }
        edges.push(close);
        edges.sort_by(angle_cmp);
        let (mut x, mut y) = (0i64, 0i64);
        let points = edges
            .iter()
            .map(|&(dx, dy)| {
                let p = Point::from_ints(x, y);
                x += dx;
                y += dy;
                p
            })
            .collect();
        return ConvexInstance::new(Exact, points);
    }
    Err(Error::RejectionBudget(ATTEMPTS))
}

/// Smallest box half-width leaving about twice as many primitive directions as edges.
pub fn default_range(n: usize) -> i64 {
    let mut r = 2;
    while ((6.0 / (PI * PI)) * ((2 * r + 1) as f64).powi(2)) < 2.0 * n as f64 + 8.0 {
        r += 1;
    }
    r
}

/// Random convex polygon with integer vertices, deterministic in `seed`.
pub fn random_convex(n: usize, seed: u64) -> Result<ExactInstance> {
    random_convex_in_range(n, seed, default_range(n))
}

/// Random exactly concyclic instance with small-denominator parameters.
pub fn random_concyclic(n: usize, seed: u64) -> Result<ExactInstance> {
    if n < 3 {
        return Err(Error::TooFewPoints { need: 3, got: n });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut params = HashSet::new();
    let spread = 2 * n as i64 + 6;
    while params.len() < n {
        let d = rng.gen_range(1..=8);
        let num = rng.gen_range(-spread * d..=spread * d);
        params.insert(rat(num, d));
    }
    let params: Vec<Rational> = params.into_iter().collect();
    rational_concyclic(&params)
}

//! Cross-checks against independent brute-force computations.

use std::collections::BTreeSet;

use cdl_core::ap3::{count_bichromatic_ap3, max_bichromatic_ap3, Ap3Instance};
use cdl_core::caps::{cap_decomposition, classify_edge, EdgeKind};
use cdl_core::census::{census, isosceles_census};
use cdl_core::constructions::{
    quarter_arc_with_center, random_concyclic, random_convex, regular_ngon, snapped_regular_ngon, symbolic_arc_census,
};
use cdl_core::enclosing::smallest_enclosing_circle;
use cdl_core::geom::{int, rat};
use cdl_core::{Exact, ExactInstance, Float, Point, Rational};
use num_traits::{One, Zero};

fn d2(p: &Point, q: &Point) -> Rational {
    let dx = &p.x - &q.x;
    let dy = &p.y - &q.y;
    &dx * &dx + &dy * &dy
}

fn cross(o: &Point, p: &Point, q: &Point) -> Rational {
    (&p.x - &o.x) * (&q.y - &o.y) - (&p.y - &o.y) * (&q.x - &o.x)
}

/// Ordered apex incidences `(p, {a, b})` with `|pa| = |pb|`, by triple loop.
fn naive_census(points: &[Point]) -> u64 {
    let n = points.len();
    let mut z = 0;
    for p in 0..n {
        for a in 0..n {
            for b in a + 1..n {
                if p != a && p != b && d2(&points[p], &points[a]) == d2(&points[p], &points[b]) {
                    z += 1;
                }
            }
        }
    }
    z
}

fn naive_distinct_from(points: &[Point], p: usize) -> usize {
    let set: BTreeSet<Rational> = (0..points.len()).filter(|&q| q != p).map(|q| d2(&points[p], &points[q])).collect();
    set.len()
}

fn small_instances() -> Vec<ExactInstance> {
    let mut out = Vec::new();
    for n in 3..=8 {
        for seed in 0..6 {
            out.push(random_convex(n, seed).unwrap());
            out.push(random_concyclic(n, seed).unwrap());
        }
        out.push(snapped_regular_ngon(n, 40).unwrap());
    }
    let unit_square = [(0, 0), (1, 0), (1, 1), (0, 1)].map(|(x, y)| Point::from_ints(x, y)).to_vec();
    out.push(ExactInstance::new(Exact, unit_square).unwrap());
    out
}

#[test]
fn census_matches_triple_loop() {
    for instance in small_instances() {
        let pts = instance.points();
        let report = census(&instance);
        assert_eq!(report.z, naive_census(pts), "{pts:?}");
        for p in 0..pts.len() {
            assert_eq!(report.per_point_distinct[p], naive_distinct_from(pts, p));
        }
        let all: BTreeSet<Rational> = (0..pts.len())
            .flat_map(|i| (i + 1..pts.len()).map(move |j| (i, j)))
            .map(|(i, j)| d2(&pts[i], &pts[j]))
            .collect();
        assert_eq!(report.total_distinct, all.len());
        let n = pts.len();
        assert!(report.max_point_distinct <= report.total_distinct);
        assert!(report.total_distinct <= n * (n - 1) / 2);
    }
}

#[test]
fn good_edges_are_bases_of_at_most_one_triangle() {
    for instance in small_instances().into_iter().chain((20..30).map(|s| random_convex(30, s).unwrap())) {
        let pts = instance.points();
        let n = pts.len();
        let mut good = 0;
        for i in 0..n {
            for j in i + 1..n {
                let apexes =
                    (0..n).filter(|&p| p != i && p != j && d2(&pts[p], &pts[i]) == d2(&pts[p], &pts[j])).count();
                let class = classify_edge(&instance, i, j).unwrap();
                assert_eq!(class.bisector_points.len(), apexes);
                if class.class == EdgeKind::Good {
                    good += 1;
                    assert!(apexes <= 1);
                }
            }
        }
        assert_eq!(census(&instance).good_edges, good);
    }
}

#[test]
fn regular_polygon_closed_form() {
    // Around each vertex, the other n-1 vertices pair up by reflection; the
    // pairs are exactly the equidistant ones.
    for n in 3..=100usize {
        let instance = regular_ngon(n, Float::default()).unwrap();
        assert_eq!(isosceles_census(&instance), (n * ((n - 1) / 2)) as u64, "n = {n}");
    }
}

#[test]
fn quarter_arc_census_matches_symbolic_count() {
    let quarter = rat(1, 2);
    for n in 4..=80usize {
        let instance = quarter_arc_with_center(n, Float::default()).unwrap();
        let symbolic = symbolic_arc_census((n - 1) as u64, true, &quarter).unwrap();
        assert_eq!(isosceles_census(&instance), symbolic, "n = {n}");
    }
}

#[test]
fn concyclic_points_lie_on_the_unit_circle() {
    for seed in 0..10 {
        for p in random_concyclic(25, seed).unwrap().points() {
            assert!((&p.x * &p.x + &p.y * &p.y).is_one());
        }
    }
}

#[derive(Debug, PartialEq)]
struct Disk {
    center: Point,
    r2: Rational,
}

fn circumcircle(a: &Point, b: &Point, c: &Point) -> Option<Disk> {
    let det = cross(a, b, c);
    if det.is_zero() {
        return None;
    }
    // Solve |x - a|^2 = |x - b|^2 = |x - c|^2 as a 2x2 linear system.
    let (a1, b1) = (int(2) * (&b.x - &a.x), int(2) * (&b.y - &a.y));
    let c1 = &b.x * &b.x + &b.y * &b.y - &a.x * &a.x - &a.y * &a.y;
    let (a2, b2) = (int(2) * (&c.x - &a.x), int(2) * (&c.y - &a.y));
    let c2 = &c.x * &c.x + &c.y * &c.y - &a.x * &a.x - &a.y * &a.y;
    let den = &a1 * &b2 - &a2 * &b1;
    let center = Point::new((&c1 * &b2 - &c2 * &b1) / &den, (&a1 * &c2 - &a2 * &c1) / &den);
    let r2 = d2(&center, a);
    Some(Disk { center, r2 })
}

fn brute_force_disk(points: &[Point]) -> Disk {
    let n = points.len();
    let mut candidates = vec![Disk { center: points[0].clone(), r2: Rational::zero() }];
    for i in 0..n {
        for j in i + 1..n {
            let center = points[i].midpoint(&points[j]);
            let r2 = d2(&center, &points[i]);
            candidates.push(Disk { center, r2 });
            for k in j + 1..n {
                candidates.extend(circumcircle(&points[i], &points[j], &points[k]));
            }
        }
    }
    candidates
        .into_iter()
        .filter(|c| points.iter().all(|p| d2(&c.center, p) <= c.r2))
        .min_by(|x, y| x.r2.cmp(&y.r2))
        .unwrap()
}

#[test]
fn enclosing_circle_is_the_brute_force_minimum() {
    for n in 1..=9 {
        for seed in 0..8 {
            let pts = if n >= 3 {
                random_convex(n, seed).unwrap().points().to_vec()
            } else {
                (0..n as i64).map(|k| Point::from_ints(k * 3 + seed as i64, 1 - k)).collect()
            };
            let (circle, support) = smallest_enclosing_circle(&Exact, &pts).unwrap();
            let best = brute_force_disk(&pts);
            assert_eq!(circle.center, best.center, "{pts:?}");
            assert_eq!(circle.squared_radius, best.r2);
            assert!(pts.iter().all(|p| d2(&circle.center, p) <= circle.squared_radius));
            for &s in support.indices() {
                assert_eq!(d2(&circle.center, &pts[s]), circle.squared_radius);
            }
            if let [x, y, z] = support.indices() {
                // The center lies in the closed triangle of the support.
                let (a, b, c, o) = (&pts[*x], &pts[*y], &pts[*z], &circle.center);
                let signs = [cross(a, b, o), cross(b, c, o), cross(c, a, o)];
                let zero = Rational::zero();
                assert!(signs.iter().all(|s| *s >= zero) || signs.iter().all(|s| *s <= zero));
            }
        }
    }
}

#[test]
fn witnesses_match_a_full_scan() {
    let instances: Vec<ExactInstance> = (0..15)
        .flat_map(|s| {
            [
                random_convex(12 + s as usize, s).unwrap(),
                random_concyclic(10, s).unwrap(),
                snapped_regular_ngon(8 + s as usize, 60).unwrap(),
            ]
        })
        .collect();
    for instance in &instances {
        let pts = instance.points();
        for cap in cap_decomposition(instance).unwrap() {
            let (a, b) = cap.endpoints();
            // The cap lies to the left of b -> a, i.e. on the far side of a -> b from the rest.
            let inside_side = cap.indices().iter().map(|&x| cross(&pts[a], &pts[b], &pts[x])).find(|s| !s.is_zero());
            for (k, &i) in cap.indices().iter().enumerate() {
                for &j in &cap.indices()[k + 1..] {
                    let expected: Vec<usize> = (0..pts.len())
                        .filter(|&x| x != i && x != j && d2(&pts[x], &pts[i]) == d2(&pts[x], &pts[j]))
                        .filter(|&x| {
                            let s = cross(&pts[a], &pts[b], &pts[x]);
                            s.is_zero()
                                || inside_side
                                    .as_ref()
                                    .is_some_and(|side| (s > Rational::zero()) == (*side > Rational::zero()))
                        })
                        .collect();
                    assert!(expected.len() <= 1);
                    assert_eq!(cap.find_witness(i, j).unwrap(), expected.first().copied(), "{pts:?} edge {i} {j}");
                }
            }
        }
    }
}

fn naive_ap3(red: &[i64], blue: &[i64]) -> usize {
    let all: Vec<(i64, bool)> = red.iter().map(|&v| (v, true)).chain(blue.iter().map(|&v| (v, false))).collect();
    let mut count = 0;
    for &(x, cx) in &all {
        for &(z, cz) in &all {
            if x < z && cx != cz && (x + z) % 2 == 0 && all.iter().any(|&(y, _)| 2 * y == x + z) {
                count += 1;
            }
        }
    }
    count
}

#[test]
fn ap3_count_matches_triple_loop() {
    for seed in 0..300u64 {
        let inst = cdl_core::ap3::random_ap3_instance(seed, 8, 20).unwrap();
        let red: Vec<i64> = inst.red().iter().map(|v| i64::try_from(v.to_integer()).unwrap()).collect();
        let blue: Vec<i64> = inst.blue().iter().map(|v| i64::try_from(v.to_integer()).unwrap()).collect();
        assert_eq!(count_bichromatic_ap3(&inst), naive_ap3(&red, &blue));
    }
}

fn subsets(values: &[i64], t: usize) -> Vec<Vec<i64>> {
    if t == 0 {
        return vec![vec![]];
    }
    if values.len() < t {
        return vec![];
    }
    let mut out: Vec<Vec<i64>> = subsets(&values[1..], t - 1)
        .into_iter()
        .map(|mut s| {
            s.insert(0, values[0]);
            s
        })
        .collect();
    out.extend(subsets(&values[1..], t));
    out
}

#[test]
fn ap3_maximum_matches_exhaustive_recount() {
    for (t, m) in [(1, 3), (2, 5), (2, 9), (3, 6), (3, 8), (4, 7)] {
        let positives: Vec<i64> = (1..=m).collect();
        let negatives: Vec<i64> = positives.iter().map(|v| -v).collect();
        let mut best = 0;
        for r in subsets(&negatives, t) {
            for b in subsets(&positives, t) {
                best = best.max(naive_ap3(&r, &b));
            }
        }
        let found = max_bichromatic_ap3(t, m as usize).unwrap();
        assert_eq!(found.best, best, "t = {t}, M = {m}");
        assert_eq!(naive_ap3(&found.red, &found.blue), best);
        let inst = Ap3Instance::from_ints(&found.red, &found.blue).unwrap();
        assert_eq!(count_bichromatic_ap3(&inst), best);
    }
}

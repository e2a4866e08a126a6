//! Seeded verification campaigns. Each trial derives its own seed from the
//! campaign seed and its index, runs independently, and the results are
//! merged in index order, so reports do not depend on thread count.

use rand::seq::index::sample;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::caps::{cap_decomposition, good_edge_count, witnessed_edges_in_cap, Cap};
use crate::census::{szemeredi_check, total_distinct};
use crate::constructions::{pythagorean_angle, pythagorean_arc, random_concyclic, random_convex, rational_concyclic};
use crate::error::{Error, Result};
use crate::geom::{rat, Exact};
use crate::instance::ExactInstance;
use crate::lemmas::{check_half_easy, check_monotone, check_sequence_bound, check_tech, sample_tech_config, Verdict};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Monotone,
    Tech,
    HalfEasy,
    Sequence,
    Corollaries,
    Altman,
    Szemeredi,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::Monotone,
        Suite::Tech,
        Suite::HalfEasy,
        Suite::Sequence,
        Suite::Corollaries,
        Suite::Altman,
        Suite::Szemeredi,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Monotone => "monotone",
            Suite::Tech => "tech",
            Suite::HalfEasy => "half-easy",
            Suite::Sequence => "sequence",
            Suite::Corollaries => "corollaries",
            Suite::Altman => "altman",
            Suite::Szemeredi => "szemeredi",
        }
    }

    pub fn parse(name: &str) -> Option<Suite> {
        Suite::ALL.into_iter().find(|s| s.name() == name)
    }
}

/// Tally of the individual checks made by one trial.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct TrialOutcome {
    pub holds: usize,
    pub violations: usize,
    pub skips: usize,
}

impl TrialOutcome {
    fn record(&mut self, verdict: Verdict) {
        match verdict {
            Verdict::Holds => self.holds += 1,
            Verdict::Violated => self.violations += 1,
            Verdict::Skip => self.skips += 1,
        }
    }

    fn check(&mut self, holds: bool) {
        self.record(if holds { Verdict::Holds } else { Verdict::Violated });
    }

    fn skipped() -> Self {
        Self { skips: 1, ..Self::default() }
    }

    /// A trial is violated if any check is, holds if any check holds, else skipped.
    pub fn verdict(&self) -> Verdict {
        if self.violations > 0 {
            Verdict::Violated
        } else if self.holds > 0 {
            Verdict::Holds
        } else {
            Verdict::Skip
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CampaignReport {
    pub suite: Suite,
    pub seed: u64,
    pub trials: usize,
    /// Trials by overall verdict.
    pub holds: usize,
    pub skips: usize,
    pub violations: usize,
    /// Individual checks across all trials.
    pub checks: usize,
    pub checks_held: usize,
    pub violation_seeds: Vec<u64>,
    pub skip_seeds: Vec<u64>,
}

/// SplitMix64 step: decorrelates `(seed, index)` into a trial seed.
pub fn trial_seed(seed: u64, index: u64) -> u64 {
    let mut z = seed ^ index.wrapping_add(1).wrapping_mul(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Random subset of `count` exponents from `0..=span`, evenly spaced angles
/// of a rational rotation: witness-rich exact instances.
fn arc_instance(rng: &mut ChaCha8Rng, count: usize, span: usize, m: u64) -> Result<ExactInstance> {
    let ks: Vec<u64> = sample(rng, span + 1, count).into_iter().map(|k| k as u64).collect();
    pythagorean_arc(&ks, m)
}

/// Rotation parameter whose `span` steps stay within `turns` half-turns.
fn rotation_for(span: usize, half_turns: f64) -> u64 {
    let mut m = 1;
    while span as f64 * pythagorean_angle(m) >= half_turns * std::f64::consts::PI {
        m += 1;
    }
    m
}

/// Exact instance with `n` points from one of three families, chosen by the rng.
pub fn sample_instance(rng: &mut ChaCha8Rng, n: usize) -> Result<ExactInstance> {
    match rng.gen_range(0..3) {
        0 => random_convex(n, rng.gen()),
        1 => random_concyclic(n, rng.gen()),
        _ => {
            let span = n + rng.gen_range(0..=n);
            arc_instance(rng, n, span, rotation_for(span, 2.0))
        }
    }
}

fn decomposition_caps(instance: &ExactInstance) -> Result<Vec<Cap<'_, Exact>>> {
    cap_decomposition(instance)
}

/// Arc within a half-turn containing its two ends and their midpoint, so the
/// endpoint edge always has a witness.
fn witnessed_arc(rng: &mut ChaCha8Rng) -> Result<ExactInstance> {
    let half = rng.gen_range(2..=10u64);
    let span = 2 * half;
    let mut ks: Vec<u64> = (0..=span).filter(|&k| k == 0 || k == half || k == span || rng.gen_ratio(4, 5)).collect();
    ks.sort_unstable();
    pythagorean_arc(&ks, rotation_for(span as usize, 1.0))
}

fn monotone_trial(rng: &mut ChaCha8Rng) -> Result<TrialOutcome> {
    let (instance, caps) = if rng.gen_ratio(1, 2) {
        let instance = witnessed_arc(rng)?;
        let all = (0..instance.len()).collect();
        (instance, vec![all])
    } else {
        let n = rng.gen_range(5..=16);
        let instance = sample_instance(rng, n)?;
        let caps =
            decomposition_caps(&instance)?.into_iter().filter(|c| c.len() >= 3).map(|c| c.indices().to_vec()).collect();
        (instance, caps)
    };
    if caps.is_empty() {
        return Ok(TrialOutcome::skipped());
    }
    let whole = &caps[rng.gen_range(0..caps.len())];
    // A random sub-cap with the same ends: left-out points still count as witnesses.
    let last = whole.len() - 1;
    let mut picks: Vec<usize> =
        (0..whole.len()).filter(|&k| k == 0 || k == last || rng.gen_ratio(3, 4)).map(|k| whole[k]).collect();
    if picks.len() < 3 {
        picks = whole.clone();
    }
    let cap = Cap::from_indices(&instance, picks)?;
    let mut out = TrialOutcome::default();
    for &c in &cap.indices()[1..cap.len() - 1] {
        out.record(check_monotone(&cap, c)?.verdict);
    }
    Ok(out)
}

fn tech_trial(seed: u64) -> Result<TrialOutcome> {
    let mut out = TrialOutcome::default();
    match sample_tech_config(seed) {
        Ok(config) => out.record(check_tech(&config).verdict),
        Err(Error::RejectionBudget(_)) => out.record(Verdict::Skip),
        Err(e) => return Err(e),
    }
    Ok(out)
}

fn half_easy_trial(rng: &mut ChaCha8Rng) -> Result<TrialOutcome> {
    let n = rng.gen_range(5..=24);
    let instance = sample_instance(rng, n)?;
    let mut out = TrialOutcome::default();
    for cap in decomposition_caps(&instance)? {
        // Every contiguous run of a cap is a cap.
        for start in 0..cap.len() {
            for end in start + 2..=cap.len() {
                let sub = Cap::from_indices(&instance, cap.indices()[start..end].to_vec())?;
                out.record(check_half_easy(&sub)?.verdict);
            }
        }
    }
    Ok(out)
}

fn sequence_trial(rng: &mut ChaCha8Rng) -> Result<TrialOutcome> {
    let t = rng.gen_range(1..=30);
    let size = 2 * t;
    let instance = if size < 3 || rng.gen_ratio(3, 4) {
        let span = size + rng.gen_range(0..=size);
        arc_instance(rng, size, span, rotation_for(span, 1.0))?
    } else {
        // Parameters in [0, 1] keep the points within a quarter turn.
        let params: Vec<_> = sample(rng, 4 * size, size).into_iter().map(|k| rat(k as i64, 4 * size as i64)).collect();
        rational_concyclic(&params)?
    };
    let cap = Cap::whole(&instance)?;
    let mut out = TrialOutcome::default();
    out.record(check_sequence_bound(&cap)?.verdict);
    Ok(out)
}

fn corollaries_trial(rng: &mut ChaCha8Rng) -> Result<TrialOutcome> {
    let n = rng.gen_range(10..=100);
    let instance = random_convex(n, rng.gen())?;
    corollary_checks(&instance)
}

/// At most `t^2/4` in-cap witnessed edges per cap, and at least `n^2/12` good edges.
pub fn corollary_checks(instance: &ExactInstance) -> Result<TrialOutcome> {
    let mut out = TrialOutcome::default();
    for cap in decomposition_caps(instance)? {
        let t = cap.len();
        out.check(4 * witnessed_edges_in_cap(&cap)? <= t * t);
    }
    let n = instance.len();
    out.check(12 * good_edge_count(instance) >= n * n);
    Ok(out)
}

fn altman_trial(rng: &mut ChaCha8Rng) -> Result<TrialOutcome> {
    let n = rng.gen_range(3..=60);
    let instance = sample_instance(rng, n)?;
    let mut out = TrialOutcome::default();
    out.check(total_distinct(&instance) >= n / 2);
    Ok(out)
}

fn szemeredi_trial(rng: &mut ChaCha8Rng) -> Result<TrialOutcome> {
    let n = rng.gen_range(3..=100);
    let instance = sample_instance(rng, n)?;
    let mut out = TrialOutcome::default();
    out.check(szemeredi_check(&instance).holds);
    Ok(out)
}

/// One trial of a suite.
pub fn run_trial(suite: Suite, seed: u64) -> Result<TrialOutcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match suite {
        Suite::Monotone => monotone_trial(&mut rng),
        Suite::Tech => tech_trial(seed),
        Suite::HalfEasy => half_easy_trial(&mut rng),
        Suite::Sequence => sequence_trial(&mut rng),
        Suite::Corollaries => corollaries_trial(&mut rng),
        Suite::Altman => altman_trial(&mut rng),
        Suite::Szemeredi => szemeredi_trial(&mut rng),
    }
}

pub fn run_campaign(suite: Suite, trials: usize, seed: u64) -> Result<CampaignReport> {
    let outcomes: Vec<(u64, TrialOutcome)> = (0..trials as u64)
        .into_par_iter()
        .map(|i| {
            let s = trial_seed(seed, i);
            run_trial(suite, s).map(|o| (s, o))
        })
        .collect::<Result<_>>()?;
    let mut report = CampaignReport {
        suite,
        seed,
        trials,
        holds: 0,
        skips: 0,
        violations: 0,
        checks: 0,
        checks_held: 0,
        violation_seeds: Vec::new(),
        skip_seeds: Vec::new(),
    };
    for (s, o) in outcomes {
        report.checks += o.holds + o.violations + o.skips;
        report.checks_held += o.holds;
        match o.verdict() {
            Verdict::Holds => report.holds += 1,
            Verdict::Violated => {
                report.violations += 1;
                report.violation_seeds.push(s);
            }
            Verdict::Skip => {
                report.skips += 1;
                report.skip_seeds.push(s);
            }
        }
    }
    Ok(report)
}

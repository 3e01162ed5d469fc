//! Randomized verification of the common-zero characterization, the
//! common-zero multiplicity count and the ML-degree formula, all in exact
//! arithmetic.
//!
//! Each trial draws a shift multiset with a chosen repetition pattern and
//! checks, for that multiset:
//!
//! * `formula`: `n + l - m - 1` equals `deg h - deg gcd(h, k)`;
//! * `common-zero`: `gcd(h, k)` is non-constant iff some value repeats;
//! * `multiplicity`: `-c` divides `h` exactly `n_c - 1` times for every
//!   distinct value `c` of multiplicity `n_c`;
//! * `profile`: the profile recovers the pattern the trial was built from.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::mldegree::{
    exact_root_multiplicity, ml_degree_algebraic, ml_degree_formula, profile, EqualityPolicy,
};
use crate::polynomials::{build_h, build_k, format_rational, CShiftList, Rational};

/// Largest numerator and denominator of a random shift.
pub const MAX_LITERAL: i64 = 20;

/// Repetition shape of a trial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Pattern {
    /// Up to three repeated groups with random sizes.
    Random,
    /// The given repeated-group sizes (each ≥ 2); remaining slots are
    /// distinct singletons.
    Groups(Vec<usize>),
    /// Every shift equal; excluded from the formula, so the trial is skipped.
    AllEqual,
}

impl std::str::FromStr for Pattern {
    type Err = Error;

    /// `random`, `n` (all equal) or comma-separated sizes like `2,3`.
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "random" => Ok(Pattern::Random),
            "n" | "all" => Ok(Pattern::AllEqual),
            "" | "none" => Ok(Pattern::Groups(Vec::new())),
            list => {
                let sizes = list
                    .split(',')
                    .map(|t| t.trim().parse::<usize>())
                    .collect::<std::result::Result<Vec<_>, _>>()
                    .map_err(|_| Error::Parse(format!("bad pattern `{s}`")))?;
                if sizes.iter().any(|&k| k < 2) {
                    return Err(Error::Parse(format!(
                        "pattern `{s}`: repeated groups need size at least 2"
                    )));
                }
                Ok(Pattern::Groups(sizes))
            }
        }
    }
}

#[derive(Debug, Clone)]
pub struct CampaignConfig {
    pub trials: usize,
    pub n_max: usize,
    pub seed: u64,
    pub pattern: Pattern,
}

impl Default for CampaignConfig {
    fn default() -> Self {
        Self {
            trials: 500,
            n_max: 10,
            seed: 7,
            pattern: Pattern::Random,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct TrialFailure {
    pub trial: usize,
    pub check: &'static str,
    pub expected: String,
    pub found: String,
    /// The full shift list, as `p/q` literals, for reproduction.
    pub c: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SkippedTrial {
    pub trial: usize,
    pub n: usize,
    pub note: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CampaignReport {
    pub trials: usize,
    pub n_max: usize,
    pub seed: u64,
    pub executed: usize,
    pub skipped: Vec<SkippedTrial>,
    /// Executed trials per number of repeated groups `l`.
    pub coverage_by_l: BTreeMap<usize, usize>,
    /// Largest `m` seen together with the `n` of that trial.
    pub max_m: usize,
    pub failures: Vec<TrialFailure>,
    pub passed: bool,
}

/// One generated trial input.
#[derive(Debug, Clone)]
pub struct TrialInput {
    pub shifts: CShiftList<Rational>,
    /// Sizes of repeated groups the input was built with.
    pub repeated: Vec<usize>,
    pub all_equal: bool,
}

fn trial_rng(seed: u64, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial as u64);
    rng
}

fn random_rational<R: Rng>(rng: &mut R) -> Rational {
    let p = rng.random_range(1..=MAX_LITERAL);
    let q = rng.random_range(1..=MAX_LITERAL);
    let sign = if rng.random_bool(0.5) { 1 } else { -1 };
    Rational::new(BigInt::from(sign * p), BigInt::from(q))
}

fn distinct_rationals<R: Rng>(rng: &mut R, count: usize) -> Vec<Rational> {
    let mut out: Vec<Rational> = Vec::with_capacity(count);
    while out.len() < count {
        let r = random_rational(rng);
        if !out.contains(&r) {
            out.push(r);
        }
    }
    out
}

/// Random repeated-group sizes for a list of length `n`, never all-equal.
fn random_groups<R: Rng>(rng: &mut R, n: usize) -> Vec<usize> {
    let mut l = rng.random_range(0..=3usize).min(n / 2);
    if l == 1 && n < 3 {
        l = 0;
    }
    if l == 0 {
        return Vec::new();
    }
    let mut sizes = vec![2usize; l];
    // a single group must leave a singleton behind
    let budget = n - 2 * l - usize::from(l == 1);
    let extra = rng.random_range(0..=budget);
    for _ in 0..extra {
        let g = rng.random_range(0..l);
        sizes[g] += 1;
    }
    sizes
}

/// Builds the input for trial `trial` of a campaign.
pub fn generate_trial(config: &CampaignConfig, trial: usize) -> TrialInput {
    let mut rng = trial_rng(config.seed, trial);
    let (n, repeated, all_equal) = match &config.pattern {
        Pattern::Random => {
            let n = rng.random_range(2..=config.n_max);
            (n, random_groups(&mut rng, n), false)
        }
        Pattern::Groups(sizes) => {
            let m: usize = sizes.iter().sum();
            let lo = m.max(2);
            let n = if config.n_max > lo {
                rng.random_range(lo..=config.n_max)
            } else {
                lo
            };
            // a lone group filling the list would be the all-equal case
            let n = if sizes.len() == 1 && n == m { n + 1 } else { n };
            (n, sizes.clone(), false)
        }
        Pattern::AllEqual => {
            let n = rng.random_range(2..=config.n_max);
            (n, vec![n], true)
        }
    };

    let m: usize = repeated.iter().sum();
    let singletons = n - m;
    let values = distinct_rationals(&mut rng, repeated.len() + singletons);
    let mut list = Vec::with_capacity(n);
    for (v, &k) in values.iter().zip(&repeated) {
        list.extend(std::iter::repeat_n(v.clone(), k));
    }
    list.extend(values[repeated.len()..].iter().cloned());
    list.shuffle(&mut rng);

    TrialInput {
        shifts: CShiftList::new(list).expect("random shifts are nonzero"),
        repeated,
        all_equal,
    }
}

/// Runs every check on one shift list; returns the failures.
pub fn check_shifts(trial: usize, input: &TrialInput) -> Vec<TrialFailure> {
    let c = &input.shifts;
    let literals: Vec<String> = c.values().iter().map(format_rational).collect();
    let mut failures = Vec::new();
    let mut fail = |check: &'static str, expected: String, found: String| {
        failures.push(TrialFailure {
            trial,
            check,
            expected,
            found,
            c: literals.clone(),
        });
    };

    let prof = profile(c, EqualityPolicy::Exact);
    let mut got_sizes: Vec<usize> = prof.repeated().map(|g| g.multiplicity).collect();
    let mut want_sizes = input.repeated.clone();
    got_sizes.sort_unstable();
    want_sizes.sort_unstable();
    if got_sizes != want_sizes {
        fail(
            "profile",
            format!("{want_sizes:?}"),
            format!("{got_sizes:?}"),
        );
    }

    match (ml_degree_formula(&prof), ml_degree_algebraic(c)) {
        (Ok(f), Ok(a)) if f == a => {}
        (f, a) => fail("formula", format!("{f:?}"), format!("{a:?}")),
    }

    let h = build_h(c);
    let k = build_k(c);
    match h.gcd(&k) {
        Ok(g) => {
            let has_repeat = prof.l > 0;
            if g.is_constant() == has_repeat {
                fail(
                    "common-zero",
                    format!("gcd non-constant = {has_repeat}"),
                    format!("gcd = {g}"),
                );
            }
        }
        Err(e) => fail("common-zero", "gcd".into(), e.to_string()),
    }

    for group in &prof.groups {
        let got = exact_root_multiplicity(&h, &(-group.value.clone()));
        let want = group.multiplicity - 1;
        if got != want {
            fail(
                "multiplicity",
                format!(
                    "-({}) has multiplicity {want}",
                    format_rational(&group.value)
                ),
                got.to_string(),
            );
        }
    }
    failures
}

pub fn run_campaign(config: &CampaignConfig) -> Result<CampaignReport> {
    if config.trials == 0 {
        return Err(Error::InvalidArgument("trials must be at least 1".into()));
    }
    if config.n_max < 2 {
        return Err(Error::InvalidArgument("n_max must be at least 2".into()));
    }
    if let Pattern::Groups(sizes) = &config.pattern {
        let m: usize = sizes.iter().sum();
        let need = if sizes.len() == 1 { m + 1 } else { m };
        if need > config.n_max {
            return Err(Error::InvalidArgument(format!(
                "pattern {sizes:?} needs n = {need} > n_max = {}",
                config.n_max
            )));
        }
    }

    let mut executed = 0;
    let mut skipped = Vec::new();
    let mut coverage_by_l = BTreeMap::new();
    let mut max_m = 0;
    let mut failures = Vec::new();
    for trial in 0..config.trials {
        let input = generate_trial(config, trial);
        if input.all_equal {
            skipped.push(SkippedTrial {
                trial,
                n: input.shifts.n(),
                note: "all shifts equal: excluded case, the MLE is a boundary point".into(),
            });
            continue;
        }
        executed += 1;
        *coverage_by_l.entry(input.repeated.len()).or_insert(0) += 1;
        max_m = max_m.max(input.repeated.iter().sum());
        failures.extend(check_shifts(trial, &input));
    }
    failures.sort();

    Ok(CampaignReport {
        trials: config.trials,
        n_max: config.n_max,
        seed: config.seed,
        executed,
        skipped,
        coverage_by_l,
        max_m,
        passed: failures.is_empty(),
        failures,
    })
}

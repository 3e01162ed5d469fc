//! The FGM bivariate exponential distribution.
//!
//! Density `f(x, y) = e^{-(x+y)} [1 + θ (2e^{-x} - 1)(2e^{-y} - 1)]` on the
//! first quadrant, with `θ ∈ [-1, 1]` and standard exponential marginals.
//! Every observation enters the likelihood only through its weight
//! `w = (2e^{-x} - 1)(2e^{-y} - 1) ∈ [-1, 1]`, so most functions here have a
//! slice-of-weights form next to the [`Dataset`] form.

use rand::distr::Open01;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Below this magnitude of `θ(1 - 2u)` the conditional inverse uses `v = t`.
const SAMPLER_LINEAR_LIMIT: f64 = 1e-12;

/// One bivariate data point in the first quadrant.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Observation {
    x: f64,
    y: f64,
}

impl Observation {
    pub fn new(x: f64, y: f64) -> Result<Self> {
        if !x.is_finite() || !y.is_finite() {
            return Err(Error::Domain(format!(
                "observation ({x}, {y}) is not finite"
            )));
        }
        if x < 0.0 || y < 0.0 {
            return Err(Error::Domain(format!(
                "observation ({x}, {y}) is outside the first quadrant"
            )));
        }
        Ok(Self { x, y })
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    pub fn y(&self) -> f64 {
        self.y
    }

    /// `(2e^{-x} - 1)(2e^{-y} - 1)`, always in `[-1, 1]`.
    pub fn weight(&self) -> f64 {
        marginal_factor(self.x) * marginal_factor(self.y)
    }
}

#[inline]
fn marginal_factor(t: f64) -> f64 {
    2.0 * (-t).exp() - 1.0
}

/// The association parameter, constrained to `[-1, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct Theta(f64);

impl Theta {
    pub const MIN: Theta = Theta(-1.0);
    pub const MAX: Theta = Theta(1.0);
    pub const ZERO: Theta = Theta(0.0);

    pub fn new(value: f64) -> Result<Self> {
        if !(-1.0..=1.0).contains(&value) {
            return Err(Error::Domain(format!("theta = {value} is outside [-1, 1]")));
        }
        Ok(Self(value))
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

impl TryFrom<f64> for Theta {
    type Error = Error;

    fn try_from(value: f64) -> Result<Self> {
        Theta::new(value)
    }
}

impl From<Theta> for f64 {
    fn from(t: Theta) -> f64 {
        t.0
    }
}

/// An ordered sample together with its derived weights.
///
/// Weights are computed once at construction and cannot be mutated
/// independently of the observations.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    observations: Vec<Observation>,
    weights: Vec<f64>,
    degenerate: Vec<usize>,
}

impl Dataset {
    pub fn new(observations: Vec<Observation>) -> Result<Self> {
        if observations.is_empty() {
            return Err(Error::InvalidArgument(
                "a dataset needs at least one observation".into(),
            ));
        }
        let weights: Vec<f64> = observations.iter().map(Observation::weight).collect();
        let degenerate = weights
            .iter()
            .enumerate()
            .filter(|(_, w)| **w == 0.0)
            .map(|(i, _)| i)
            .collect();
        Ok(Self {
            observations,
            weights,
            degenerate,
        })
    }

    pub fn from_pairs(pairs: &[(f64, f64)]) -> Result<Self> {
        let obs = pairs
            .iter()
            .map(|&(x, y)| Observation::new(x, y))
            .collect::<Result<Vec<_>>>()?;
        Self::new(obs)
    }

    pub fn n(&self) -> usize {
        self.observations.len()
    }

    pub fn observations(&self) -> &[Observation] {
        &self.observations
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Indices of observations with zero weight (`x = ln 2` or `y = ln 2`).
    pub fn degenerate_indices(&self) -> &[usize] {
        &self.degenerate
    }

    /// Weights with the degenerate ones removed, order preserved.
    pub fn effective_weights(&self) -> Vec<f64> {
        self.weights.iter().copied().filter(|w| *w != 0.0).collect()
    }

    pub fn log_likelihood(&self, theta: Theta, form: LogLikForm) -> f64 {
        let ll = log_likelihood(&self.weights, theta);
        match form {
            LogLikForm::ConstantFree => ll,
            LogLikForm::Full => {
                let shift: f64 = self.observations.iter().map(|o| o.x + o.y).sum();
                ll - shift
            }
        }
    }

    pub fn score(&self, theta: Theta) -> Result<f64> {
        score(&self.weights, theta.value())
    }

    pub fn c_shift(&self) -> CShift {
        c_shift(&self.weights)
    }
}

/// Evaluates the density at one point.
pub fn density(obs: &Observation, theta: Theta) -> f64 {
    let bracket = 1.0 + theta.value() * obs.weight();
    // |θ w| ≤ 1 up to rounding
    (-(obs.x + obs.y)).exp() * bracket.max(0.0)
}

/// Which log-likelihood to report.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LogLikForm {
    /// `Σ log(1 + θ w_i)`; same argmax as the full form.
    #[default]
    ConstantFree,
    /// Includes the additive constant `-Σ (x_i + y_i)`.
    Full,
}

/// `Σ log(1 + θ w_i)`, or `-∞` if any term is non-positive.
pub fn log_likelihood(weights: &[f64], theta: Theta) -> f64 {
    let t = theta.value();
    let mut acc = 0.0;
    for &w in weights {
        let term = 1.0 + t * w;
        if term <= 0.0 {
            return f64::NEG_INFINITY;
        }
        acc += term.ln();
    }
    acc
}

/// The score `Σ w_i / (1 + θ w_i)`.
///
/// `theta` is a plain `f64` because root finding probes points just inside
/// the interval; callers with a [`Theta`] pass `theta.value()`.
pub fn score(weights: &[f64], theta: f64) -> Result<f64> {
    let mut acc = 0.0;
    for (index, &w) in weights.iter().enumerate() {
        if w == 0.0 {
            continue;
        }
        let denom = 1.0 + theta * w;
        if denom == 0.0 {
            return Err(Error::Pole { index, theta });
        }
        acc += w / denom;
    }
    Ok(acc)
}

/// Derivative of the score, `-Σ w_i² / (1 + θ w_i)²`.
pub fn score_derivative(weights: &[f64], theta: f64) -> Result<f64> {
    let mut acc = 0.0;
    for (index, &w) in weights.iter().enumerate() {
        if w == 0.0 {
            continue;
        }
        let denom = 1.0 + theta * w;
        if denom == 0.0 {
            return Err(Error::Pole { index, theta });
        }
        let r = w / denom;
        acc -= r * r;
    }
    Ok(acc)
}

/// Shifts `c_i = 1 / w_i` of the non-degenerate observations.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CShift {
    pub values: Vec<f64>,
    /// Positions (in the original weight list) of zero weights.
    pub degenerate: Vec<usize>,
}

pub fn c_shift(weights: &[f64]) -> CShift {
    let mut values = Vec::with_capacity(weights.len());
    let mut degenerate = Vec::new();
    for (i, &w) in weights.iter().enumerate() {
        if w == 0.0 {
            degenerate.push(i);
        } else {
            values.push(1.0 / w);
        }
    }
    CShift { values, degenerate }
}

/// Draws `n` pairs by conditional inversion.
///
/// With `u, t ~ U(0, 1)` and `A = θ(1 - 2u)`, `v` solves
/// `v [1 + A (1 - v)] = t`, the conditional copula CDF of `v` given `u`.
/// The output depends only on `(n, theta, seed)`.
pub fn sample(n: usize, theta: Theta, seed: u64) -> Result<Dataset> {
    if n == 0 {
        return Err(Error::InvalidArgument(
            "sample size must be positive".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut obs = Vec::with_capacity(n);
    for _ in 0..n {
        let u: f64 = rng.sample(Open01);
        let t: f64 = rng.sample(Open01);
        let v = conditional_inverse(theta.value(), u, t);
        let x = -(-u).ln_1p();
        let y = -(-v).ln_1p();
        obs.push(Observation::new(x, y)?);
    }
    Dataset::new(obs)
}

/// Root in `(0, 1)` of `A v² - (1 + A) v + t = 0`.
pub(crate) fn conditional_inverse(theta: f64, u: f64, t: f64) -> f64 {
    let a = theta * (1.0 - 2.0 * u);
    let v = if a.abs() < SAMPLER_LINEAR_LIMIT {
        t
    } else {
        // [(1+A) - sqrt((1+A)^2 - 4At)] / (2A), rationalized so that small A
        // does not cancel.
        let b = 1.0 + a;
        let disc = (b * b - 4.0 * a * t).max(0.0);
        2.0 * t / (b + disc.sqrt())
    };
    v.clamp(f64::MIN_POSITIVE, 1.0 - f64::EPSILON / 2.0)
}

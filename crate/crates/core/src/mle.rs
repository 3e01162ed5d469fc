//! Maximum-likelihood estimation of θ on `[-1, 1]`.
//!
//! `ℓ(θ) = Σ log(1 + θ w_i)` is strictly concave on `[-1, 1]` whenever some
//! weight is nonzero, so the maximizer is either the unique interior score
//! root or an endpoint.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::mldegree::{profile, EqualityPolicy};
use crate::model::{self, Dataset, Theta};
use crate::polynomials::CShiftList;
use crate::roots::{self, ENDPOINT_OFFSET};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FitResult {
    pub theta_hat: f64,
    /// Constant-free log-likelihood at `theta_hat`.
    pub loglik: f64,
    pub at_boundary: bool,
    #[serde(skip)]
    pub interior_root: Option<f64>,
    pub n_effective: usize,
    pub dropped: usize,
    /// Set when both endpoints had the same log-likelihood and `+1` was
    /// chosen.
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub endpoint_tie: bool,
}

/// Options for [`fit_with`].
#[derive(Debug, Clone, Copy, Default)]
pub struct FitOptions {
    /// How effective shifts are compared when detecting the all-equal case.
    pub equality: EqualityPolicy,
}

pub fn fit(data: &Dataset) -> Result<FitResult> {
    fit_weights(data.weights(), FitOptions::default())
}

pub fn fit_with(data: &Dataset, options: FitOptions) -> Result<FitResult> {
    fit_weights(data.weights(), options)
}

/// Fits directly from observation weights; zero weights are dropped.
pub fn fit_weights(weights: &[f64], options: FitOptions) -> Result<FitResult> {
    let effective: Vec<f64> = weights.iter().copied().filter(|w| *w != 0.0).collect();
    let dropped = weights.len() - effective.len();
    if effective.is_empty() {
        return Err(Error::NoData {
            n: weights.len(),
            dropped,
        });
    }
    let n_effective = effective.len();

    let shifts = CShiftList::new(effective.iter().map(|w| 1.0 / w).collect())?;
    let prof = profile(&shifts, options.equality);
    if prof.all_equal() || prof.n == 1 {
        // monotone likelihood, increasing iff c_1 > 0
        let theta_hat = if prof.groups[0].value > 0.0 {
            1.0
        } else {
            -1.0
        };
        return Ok(FitResult {
            theta_hat,
            loglik: loglik_at(&effective, theta_hat),
            at_boundary: true,
            interior_root: None,
            n_effective,
            dropped,
            endpoint_tie: false,
        });
    }

    if let Some(root) = roots::score_root_in_open_interval(&effective)? {
        return Ok(FitResult {
            theta_hat: root,
            loglik: loglik_at(&effective, root),
            at_boundary: false,
            interior_root: Some(root),
            n_effective,
            dropped,
            endpoint_tie: false,
        });
    }

    let lo = endpoint_loglik(&effective, -1.0);
    let hi = endpoint_loglik(&effective, 1.0);
    let (theta_hat, endpoint_tie) = if lo > hi {
        (-1.0, false)
    } else {
        (1.0, lo == hi)
    };
    Ok(FitResult {
        theta_hat,
        loglik: loglik_at(&effective, theta_hat),
        at_boundary: true,
        interior_root: None,
        n_effective,
        dropped,
        endpoint_tie,
    })
}

fn loglik_at(weights: &[f64], theta: f64) -> f64 {
    model::log_likelihood(weights, Theta::new(theta).expect("theta in [-1, 1]"))
}

/// `ℓ` at an endpoint, moved inward by [`ENDPOINT_OFFSET`] if some weight
/// equals `∓1` there.
fn endpoint_loglik(weights: &[f64], endpoint: f64) -> f64 {
    let singular = weights.iter().any(|w| 1.0 + endpoint * w == 0.0);
    let theta = if singular {
        endpoint - endpoint.signum() * ENDPOINT_OFFSET
    } else {
        endpoint
    };
    loglik_at(weights, theta)
}

/// `ℓ` at each grid point, `-∞` where undefined.
pub fn profile_loglik(data: &Dataset, grid: &[Theta]) -> Vec<(f64, f64)> {
    grid.iter()
        .map(|&t| (t.value(), model::log_likelihood(data.weights(), t)))
        .collect()
}

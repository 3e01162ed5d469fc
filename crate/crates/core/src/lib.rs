//! Maximum-likelihood machinery for the Farlie–Gumbel–Morgenstern bivariate
//! exponential distribution.
//!
//! * [`model`]: density, log-likelihood, score, shifts `c_i = 1/w_i`, sampling.
//! * [`polynomials`]: the cleared score numerator `h` and denominator `k`
//!   over exact rationals or `f64`, with exact gcd.
//! * [`roots`]: all complex zeros of `h` and the interior score root.
//! * [`mldegree`]: multiplicity profile, common zeros of `h` and `k`, and the
//!   ML-degree by formula and by gcd.
//! * [`mle`]: the estimator of θ on `[-1, 1]`.
//! * [`campaign`]: randomized exact checks of the ML-degree results.

pub mod campaign;
pub mod error;
pub mod io;
pub mod mldegree;
pub mod mle;
pub mod model;
pub mod polynomials;
pub mod roots;

pub use error::{Error, Result};
pub use mldegree::{EqualityPolicy, MlDegreeReport, MultiplicityProfile};
pub use mle::{fit, FitResult};
pub use model::{Dataset, Observation, Theta};
pub use polynomials::{build_h, build_k, CShiftList, Poly, Rational};
pub use roots::{complex_roots, RootSet};

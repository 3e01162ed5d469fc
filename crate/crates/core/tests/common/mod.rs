//! Oracles shared by the integration tests. Nothing here calls into the
//! algorithm it is used to check.

#![allow(dead_code)]

use fgm_core::polynomials::{Poly, Rational, Scalar};
use num_bigint::BigInt;
use rand::Rng;

/// `h(θ) = Σ_i ∏_{j≠i} (θ + c_j)` by explicit cofactor products.
pub fn h_by_cofactor_sum<S: Scalar>(c: &[S]) -> Poly<S> {
    let mut total = Poly::zero();
    for i in 0..c.len() {
        let mut prod = Poly::constant(S::one());
        for (j, cj) in c.iter().enumerate() {
            if j != i {
                prod = prod.mul(&Poly::linear_factor(cj.clone()));
            }
        }
        total = total.add(&prod);
    }
    total
}

/// Nonzero rational with numerator and denominator in `[1, 20]`.
pub fn random_rational<R: Rng>(rng: &mut R) -> Rational {
    let p: i64 = rng.random_range(1..=20);
    let q: i64 = rng.random_range(1..=20);
    let s = if rng.random_bool(0.5) { 1 } else { -1 };
    Rational::new(BigInt::from(s * p), BigInt::from(q))
}

pub fn distinct_rationals<R: Rng>(rng: &mut R, count: usize) -> Vec<Rational> {
    let mut out: Vec<Rational> = Vec::new();
    while out.len() < count {
        let r = random_rational(rng);
        if !out.contains(&r) {
            out.push(r);
        }
    }
    out
}

/// Builds a multiset from repeated-group sizes plus distinct singletons.
pub fn multiset<R: Rng>(rng: &mut R, n: usize, sizes: &[usize]) -> Vec<Rational> {
    use rand::seq::SliceRandom;
    let m: usize = sizes.iter().sum();
    assert!(m <= n);
    let values = distinct_rationals(rng, sizes.len() + n - m);
    let mut out = Vec::with_capacity(n);
    for (v, &k) in values.iter().zip(sizes) {
        out.extend(std::iter::repeat_n(v.clone(), k));
    }
    out.extend(values[sizes.len()..].iter().cloned());
    out.shuffle(rng);
    out
}

/// One-sample Kolmogorov–Smirnov statistic against Exp(1).
pub fn ks_exp1(xs: &[f64]) -> f64 {
    let mut v = xs.to_vec();
    v.sort_by(f64::total_cmp);
    let n = v.len() as f64;
    v.iter()
        .enumerate()
        .map(|(i, &x)| {
            let f = 1.0 - (-x).exp();
            let lo = i as f64 / n;
            let hi = (i + 1) as f64 / n;
            (hi - f).max(f - lo)
        })
        .fold(0.0, f64::max)
}

pub fn pearson(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (x, y) in xs.iter().zip(ys) {
        sxy += (x - mx) * (y - my);
        sxx += (x - mx) * (x - mx);
        syy += (y - my) * (y - my);
    }
    sxy / (sxx * syy).sqrt()
}

/// Composite Simpson weights on `[0, upper]` with `intervals` (even) panels.
pub fn simpson_nodes(upper: f64, intervals: usize) -> Vec<(f64, f64)> {
    assert!(intervals.is_multiple_of(2));
    let h = upper / intervals as f64;
    (0..=intervals)
        .map(|i| {
            let w = if i == 0 || i == intervals {
                1.0
            } else if i % 2 == 1 {
                4.0
            } else {
                2.0
            };
            (i as f64 * h, w * h / 3.0)
        })
        .collect()
}

/// `∫∫_{[0,upper]²} g(x, y) dx dy` by tensor Simpson.
pub fn simpson_2d(upper: f64, intervals: usize, g: impl Fn(f64, f64) -> f64) -> f64 {
    let nodes = simpson_nodes(upper, intervals);
    let mut total = 0.0;
    for &(x, wx) in &nodes {
        let mut row = 0.0;
        for &(y, wy) in &nodes {
            row += wy * g(x, y);
        }
        total += wx * row;
    }
    total
}

/// FGM exponential density written out directly.
pub fn fgm_density(x: f64, y: f64, theta: f64) -> f64 {
    (-(x + y)).exp() * (1.0 + theta * (2.0 * (-x).exp() - 1.0) * (2.0 * (-y).exp() - 1.0))
}

/// Pearson correlation of the FGM exponential law by 2-D quadrature.
pub fn fgm_correlation_by_quadrature(theta: f64) -> f64 {
    let (upper, panels) = (40.0, 1600);
    let f = |x: f64, y: f64| fgm_density(x, y, theta);
    let mass = simpson_2d(upper, panels, f);
    let ex = simpson_2d(upper, panels, |x, y| x * f(x, y)) / mass;
    let ey = simpson_2d(upper, panels, |x, y| y * f(x, y)) / mass;
    let exx = simpson_2d(upper, panels, |x, y| x * x * f(x, y)) / mass;
    let eyy = simpson_2d(upper, panels, |x, y| y * y * f(x, y)) / mass;
    let exy = simpson_2d(upper, panels, |x, y| x * y * f(x, y)) / mass;
    (exy - ex * ey) / ((exx - ex * ex) * (eyy - ey * ey)).sqrt()
}

/// Grid point in `[-1, 1]` with the largest constant-free log-likelihood, and
/// that value.
pub fn grid_argmax(weights: &[f64], points: usize) -> (f64, f64) {
    let mut best = (f64::NAN, f64::NEG_INFINITY);
    for i in 0..points {
        let t = -1.0 + 2.0 * i as f64 / (points - 1) as f64;
        let ll: f64 = weights
            .iter()
            .map(|w| {
                let term = 1.0 + t * w;
                if term > 0.0 {
                    term.ln()
                } else {
                    f64::NEG_INFINITY
                }
            })
            .sum();
        if ll > best.1 {
            best = (t, ll);
        }
    }
    best
}

mod common;

use fgm_core::mle::fit;
use fgm_core::model::{density, sample, Observation, Theta};
use fgm_core::roots::complex_roots;
use fgm_core::{build_h, CShiftList};

use common::*;

#[test]
fn density_integrates_to_one() {
    for theta in [-1.0, 0.0, 1.0] {
        let th = Theta::new(theta).unwrap();
        let mass = simpson_2d(20.0, 800, |x, y| {
            density(&Observation::new(x, y).unwrap(), th)
        });
        assert!((mass - 1.0).abs() < 1e-4, "theta {theta}: mass {mass}");
    }
}

#[test]
fn sampler_marginals_are_exponential() {
    for (theta, seed) in [(0.8, 1), (-1.0, 2), (0.0, 3)] {
        let d = sample(20_000, Theta::new(theta).unwrap(), seed).unwrap();
        let xs: Vec<f64> = d.observations().iter().map(|o| o.x()).collect();
        let ys: Vec<f64> = d.observations().iter().map(|o| o.y()).collect();
        assert!(ks_exp1(&xs) < 0.02, "theta {theta}");
        assert!(ks_exp1(&ys) < 0.02, "theta {theta}");
    }
}

#[test]
fn correlation_constant_from_quadrature() {
    for theta in [-1.0, -0.3, 0.0, 0.8] {
        let rho = fgm_correlation_by_quadrature(theta);
        assert!((rho - theta / 4.0).abs() < 1e-6, "theta {theta}: {rho}");
    }
}

#[test]
fn independent_when_theta_zero() {
    let d = sample(20_000, Theta::ZERO, 17).unwrap();
    let xs: Vec<f64> = d.observations().iter().map(|o| o.x()).collect();
    let ys: Vec<f64> = d.observations().iter().map(|o| o.y()).collect();
    assert!(pearson(&xs, &ys).abs() < 0.02);
}

#[test]
fn estimator_recovers_theta() {
    let d = sample(10_000, Theta::new(0.5).unwrap(), 2718).unwrap();
    let f = fit(&d).unwrap();
    assert!(
        (f.theta_hat - 0.5).abs() < 0.1,
        "theta_hat = {}",
        f.theta_hat
    );
    assert!(!f.at_boundary);
}

#[test]
fn fit_beats_grid_on_simulated_data() {
    for seed in 0..20 {
        let theta = Theta::new(-0.9 + 0.09 * seed as f64).unwrap();
        let d = sample(150, theta, seed).unwrap();
        let f = fit(&d).unwrap();
        let (_, best) = grid_argmax(d.weights(), 20_001);
        assert!(f.loglik >= best - 1e-9);
    }
}

#[test]
fn simulated_h_has_full_real_root_count() {
    let d = sample(12, Theta::new(0.3).unwrap(), 99).unwrap();
    let c = CShiftList::new(d.c_shift().values).unwrap();
    let set = complex_roots(&build_h(&c)).unwrap();
    assert_eq!(set.total_multiplicity(), 11);
    assert_eq!(set.max_imag(), 0.0);
}

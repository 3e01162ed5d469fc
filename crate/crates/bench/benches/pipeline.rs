use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use fgm_core::campaign::{generate_trial, CampaignConfig};
use fgm_core::mldegree::ml_degree_algebraic;
use fgm_core::model::{sample, Theta};
use fgm_core::{build_h, build_k, complex_roots, fit, CShiftList};

fn polynomials(c: &mut Criterion) {
    let mut group = c.benchmark_group("build_h_exact");
    for n in [5usize, 10, 20] {
        let cfg = CampaignConfig {
            n_max: n,
            ..Default::default()
        };
        let shifts = generate_trial(&cfg, 0).shifts;
        group.bench_with_input(BenchmarkId::from_parameter(shifts.n()), &shifts, |b, s| {
            b.iter(|| build_h(black_box(s)))
        });
    }
    group.finish();

    let shifts = generate_trial(&CampaignConfig::default(), 1).shifts;
    c.bench_function("gcd_h_k", |b| {
        let h = build_h(&shifts);
        let k = build_k(&shifts);
        b.iter(|| black_box(&h).gcd(black_box(&k)).unwrap())
    });
    c.bench_function("ml_degree_algebraic", |b| {
        b.iter(|| ml_degree_algebraic(black_box(&shifts)))
    });
}

fn roots(c: &mut Criterion) {
    let mut group = c.benchmark_group("complex_roots");
    for n in [5usize, 10, 20] {
        let shifts = CShiftList::new((1..=n).map(|i| 1.0 + 0.37 * i as f64).collect()).unwrap();
        let h = build_h(&shifts);
        group.bench_with_input(BenchmarkId::from_parameter(n), &h, |b, h| {
            b.iter(|| complex_roots(black_box(h)).unwrap())
        });
    }
    group.finish();
}

fn estimation(c: &mut Criterion) {
    let data = sample(10_000, Theta::new(0.5).unwrap(), 11).unwrap();
    c.bench_function("fit_n10000", |b| b.iter(|| fit(black_box(&data)).unwrap()));
    c.bench_function("sample_n10000", |b| {
        b.iter(|| sample(10_000, Theta::new(0.5).unwrap(), black_box(11)).unwrap())
    });
}

criterion_group!(benches, polynomials, roots, estimation);
criterion_main!(benches);

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use geodesy_core::catalog::{self, Params};
use geodesy_core::constructions::{auto_construct, construct_abelian_nilradical};
use geodesy_core::generators;
use geodesy_core::geodesic::{defect, sample_geodesics, verify_basis, zero_diagonal_rotate};
use geodesy_core::{ConstructOptions, InnerProduct};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn exact_verification(c: &mut Criterion) {
    let none = Params::new();
    let mut group = c.benchmark_group("verify_witness");
    for name in ["g35", "g28", "sl2_semidirect_r2", "M8"] {
        let g = catalog::instantiate(name, &none).unwrap();
        let w = catalog::witness(name, &none).unwrap().unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(name), &(g, w), |b, (g, w)| {
            b.iter(|| verify_basis(black_box(g), &w.metric, &w.basis, w.orthonormal))
        });
    }
    group.finish();
}

fn float_defect(c: &mut Criterion) {
    let g = catalog::instantiate("g19", &catalog::parse_params("alpha=1").unwrap()).unwrap().to_f64();
    let metric = InnerProduct::identity(5);
    let x = vec![0.3, -1.0, 0.7, 0.2, 1.5];
    c.bench_function("defect_f64_dim5", |b| b.iter(|| defect(&g, &metric, black_box(&x))));
}

fn constructors(c: &mut Criterion) {
    let none = Params::new();
    let mut group = c.benchmark_group("auto_construct");
    for name in ["M8", "g35", "oscillator", "M4", "M13"] {
        let g = catalog::instantiate(name, &none).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(name), &g, |b, g| {
            b.iter(|| auto_construct(black_box(g), ConstructOptions::default()))
        });
    }
    group.finish();

    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mats = generators::commuting_trace_zero(5, 2, &mut rng);
    let g = generators::commuting_suspension(&mats).unwrap();
    c.bench_function("abelian_nilradical_dim7", |b| b.iter(|| construct_abelian_nilradical(black_box(&g))));
}

fn sampling(c: &mut Criterion) {
    let g = catalog::instantiate("sl2", &Params::new()).unwrap().to_f64();
    let metric = InnerProduct::identity(3);
    c.bench_function("sample_geodesics_sl2_100", |b| b.iter(|| sample_geodesics(black_box(&g), &metric, 100, 7)));
}

fn zero_diagonal(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut group = c.benchmark_group("zero_diagonal_rotate");
    for n in [4usize, 8, 16] {
        let s = generators::trace_zero_symmetric(n, &mut rng);
        group.bench_with_input(BenchmarkId::from_parameter(n), &s, |b, s| b.iter(|| zero_diagonal_rotate(black_box(s), 1e-12)));
    }
    group.finish();
}

fn invariants(c: &mut Criterion) {
    let g = catalog::instantiate("clnn", &Params::new()).unwrap();
    c.bench_function("nilradical_clnn", |b| b.iter(|| black_box(&g).nilradical_solvable()));
    c.bench_function("validate_clnn", |b| b.iter(|| black_box(&g).validate()));
}

criterion_group!(benches, exact_verification, float_defect, constructors, sampling, zero_diagonal, invariants);
criterion_main!(benches);

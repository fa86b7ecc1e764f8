mod common;

use geodesy_core::catalog;
use geodesy_core::generators;
use geodesy_core::geodesic::{
    defect, indefinite_zero_span, is_geodesic, orbit_derivative_check, sample_geodesics, span_rank, verify_basis,
    zero_diagonal_rotate,
};
use geodesy_core::{InnerProduct, LieAlgebra, Surd};
use nalgebra::{DMatrix, DVector};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn small_catalog() -> Vec<(String, LieAlgebra<f64>)> {
    let mut out = Vec::new();
    for e in catalog::list() {
        for p in catalog::sample_params(e.name) {
            let g = catalog::instantiate(e.name, &p).unwrap();
            if g.dim() <= 5 {
                out.push((format!("{} {}", e.name, catalog::render_params(&p)), g.to_f64()));
            }
        }
    }
    out
}

fn unit(metric: &InnerProduct<f64>, v: DVector<f64>) -> Vec<f64> {
    let v: Vec<f64> = v.iter().copied().collect();
    let n = metric.norm(&v);
    v.iter().map(|x| x / n).collect()
}

#[test]
fn zero_diagonal_rotation_on_random_matrices() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for case in 0..100 {
        let n = 1 + case % 8;
        let s = generators::trace_zero_symmetric(n, &mut rng);
        let q = zero_diagonal_rotate(&s, 1e-12).unwrap();
        let orth = (q.transpose() * &q - DMatrix::identity(n, n)).amax();
        assert!(orth <= 1e-12, "case {case}: orthogonality {orth:e}");
        let rotated = q.transpose() * &s * &q;
        let diag = rotated.diagonal().amax();
        assert!(diag <= 1e-10, "case {case}: diagonal {diag:e}");
    }
}

#[test]
fn zero_diagonal_rotation_rejects_nonzero_trace() {
    let s = DMatrix::from_diagonal(&DVector::from_vec(vec![1.0, 2.0]));
    assert!(zero_diagonal_rotate(&s, 1e-12).is_err());
}

#[test]
fn indefinite_forms_have_spanning_zero_sets() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for case in 0..50 {
        let n = 2 + case % 6;
        let mut phi = generators::trace_zero_symmetric(n, &mut rng);
        if case % 3 == 0 {
            // a kernel direction, a trace-zero remainder and a skew part
            for k in 0..n {
                phi[(k, 0)] = 0.0;
                phi[(0, k)] = 0.0;
            }
            let shift = phi.trace() / (n - 1) as f64;
            for k in 1..n {
                phi[(k, k)] -= shift;
            }
            if n >= 3 {
                phi[(1, 2)] += 1.5;
                phi[(2, 1)] -= 1.5;
            }
        }
        let zeros = indefinite_zero_span(&phi).unwrap();
        assert_eq!(zeros.len(), n);
        let m = DMatrix::from_columns(&zeros);
        assert_eq!(m.rank(1e-9), n, "case {case}");
        for z in &zeros {
            let value = z.dot(&(&phi * z));
            assert!(value.abs() <= 1e-10 * (1.0 + z.norm_squared()), "case {case}: {value:e}");
        }
    }
}

#[test]
fn definite_forms_have_no_zero_span() {
    let phi = DMatrix::from_diagonal(&DVector::from_vec(vec![1.0, 2.0, 0.5]));
    assert!(indefinite_zero_span(&phi).is_err());
    assert!(indefinite_zero_span(&(-phi)).is_err());
}

#[test]
fn orbit_derivative_matches_bracket_pairing() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for (name, g) in small_catalog() {
        let n = g.dim();
        let metric = InnerProduct::random(n, 0.5, 2.0, &mut rng);
        for _ in 0..10 {
            let x = unit(&metric, DVector::from_fn(n, |_, _| rand::Rng::random_range(&mut rng, -1.0..1.0)));
            let z = unit(&metric, DVector::from_fn(n, |_, _| rand::Rng::random_range(&mut rng, -1.0..1.0)));
            let err = orbit_derivative_check(&g, &metric, &x, &z, 1e-4).unwrap();
            assert!(err <= 1e-6, "{name}: {err:e}");
        }
    }
}

#[test]
fn library_defect_agrees_with_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for (name, g) in small_catalog() {
        let n = g.dim();
        let metric = InnerProduct::random(n, 0.5, 2.0, &mut rng);
        let gram = common::gram_rows(&metric);
        let x: Vec<f64> = (0..n).map(|_| rand::Rng::random_range(&mut rng, -2.0..2.0)).collect();
        let mine = defect(&g, &metric, &x).unwrap();
        let theirs = common::defect(&g, &gram, &x);
        for (a, b) in mine.iter().zip(&theirs) {
            assert!((a - b).abs() <= 1e-10, "{name}: {a} vs {b}");
        }
    }
}

#[test]
fn central_elements_are_geodesic() {
    for name in ["H3", "H5", "m0_4", "oscillator"] {
        let g = catalog::instantiate(name, &catalog::Params::new()).unwrap();
        let metric = InnerProduct::identity(g.dim());
        for z in g.center().basis() {
            assert!(is_geodesic(&g, &metric, z, 0.0).unwrap(), "{name}");
        }
    }
}

#[test]
fn vectors_orthogonal_to_the_derived_algebra_are_geodesic() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for (name, g) in small_catalog() {
        let n = g.dim();
        let metric = InnerProduct::random(n, 0.5, 2.0, &mut rng);
        let perp = g.derived_subalgebra().to_f64().perp(metric.gram());
        for v in perp.basis() {
            assert!(is_geodesic(&g, &metric, v, 1e-9).unwrap(), "{name}");
        }
    }
}

#[test]
fn verify_basis_reports_failures() {
    let g = catalog::instantiate("e2", &catalog::Params::new()).unwrap();
    let metric = InnerProduct::identity(3);
    let e = |i: usize| (0..3).map(|k| Surd::from_i64((k == i) as i64)).collect::<Vec<_>>();
    let good = verify_basis(&g, &metric, &[e(0), e(1), e(2)], true);
    assert!(good.passed());
    let dependent = verify_basis(&g, &metric, &[e(0), e(1), e(1)], false);
    assert!(!dependent.passed());
    let mixed: Vec<Surd> = vec![Surd::from_i64(1), Surd::from_i64(1), Surd::zero()];
    let not_geodesic = verify_basis(&g, &metric, &[mixed, e(1), e(2)], false);
    assert!(!not_geodesic.passed());
    assert!(not_geodesic.max_defect() > 0.0);
    let short = verify_basis(&g, &metric, &[e(0), e(1)], false);
    assert!(!short.passed());
}

#[test]
fn sampled_elements_are_geodesic_unit_vectors() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for (name, g) in small_catalog() {
        let metric = InnerProduct::random(g.dim(), 0.5, 2.0, &mut rng);
        let gram = common::gram_rows(&metric);
        for s in sample_geodesics(&g, &metric, 10, 1) {
            assert!((metric.norm(&s) - 1.0).abs() <= 1e-9, "{name}");
            assert!(common::max_abs(&common::defect(&g, &gram, &s)) <= 1e-9, "{name}");
        }
    }
}

#[test]
fn sampling_is_reproducible() {
    let g = catalog::instantiate("sl2", &catalog::Params::new()).unwrap().to_f64();
    let metric = InnerProduct::identity(3);
    assert_eq!(sample_geodesics(&g, &metric, 20, 5), sample_geodesics(&g, &metric, 20, 5));
}

#[test]
fn abelian_samples_span_everything() {
    let g = LieAlgebra::<f64>::abelian(4);
    let samples = sample_geodesics(&g, &InnerProduct::identity(4), 20, 1);
    assert_eq!(span_rank(&samples), 4);
}

#[test]
fn a_n_samples_span_a_line() {
    for n in 1..=6 {
        let g = catalog::instantiate("A_n", &catalog::parse_params(&format!("n={n}")).unwrap()).unwrap().to_f64();
        let samples = sample_geodesics(&g, &InnerProduct::identity(n + 1), 30, 2);
        assert_eq!(span_rank(&samples), 1, "A_{n}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn defect_is_antisymmetric_pairing(seed in 0u64..10_000) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = generators::codim1_abelian(3, false, &mut rng).unwrap();
        let x: Vec<Surd> = (0..4).map(|_| Surd::from_i64(rand::Rng::random_range(&mut rng, -3..=3))).collect();
        let metric = InnerProduct::<Surd>::identity(4);
        let d = defect(&g, &metric, &x).unwrap();
        // Σ x_i ⟨X, [X, e_i]⟩ = ⟨X, [X, X]⟩ = 0
        let total = d.iter().zip(&x).fold(Surd::zero(), |acc, (a, b)| acc + a.clone() * b.clone());
        prop_assert!(total.is_zero());
    }

    #[test]
    fn defect_is_homogeneous_of_degree_two(seed in 0u64..10_000, scale in -4i64..=4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = generators::unimodular_heisenberg_suspension(1, &mut rng).unwrap();
        let x: Vec<Surd> = (0..4).map(|_| Surd::from_i64(rand::Rng::random_range(&mut rng, -3..=3))).collect();
        let metric = InnerProduct::<Surd>::identity(4);
        let c = Surd::from_i64(scale);
        let scaled: Vec<Surd> = x.iter().map(|v| v.clone() * c.clone()).collect();
        let d1 = defect(&g, &metric, &x).unwrap();
        let d2 = defect(&g, &metric, &scaled).unwrap();
        for (a, b) in d1.iter().zip(&d2) {
            prop_assert_eq!(a.clone() * c.clone() * c.clone(), b.clone());
        }
    }

    #[test]
    fn zero_diagonal_rotation_preserves_spectrum(seed in 0u64..10_000, n in 1usize..=8) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = generators::trace_zero_symmetric(n, &mut rng);
        let q = zero_diagonal_rotate(&s, 1e-12).unwrap();
        let r = q.transpose() * &s * &q;
        prop_assert!((r.norm() - s.norm()).abs() <= 1e-10 * (1.0 + s.norm()));
        prop_assert!(r.diagonal().amax() <= 1e-10);
    }
}

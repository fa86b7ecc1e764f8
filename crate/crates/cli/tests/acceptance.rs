//! Acceptance suite: one line per criterion, non-zero exit if any fails.

#![allow(clippy::needless_range_loop, clippy::type_complexity)]

use std::process::Command;
use std::time::Instant;

use geodesy_core::catalog::{self, Answer, Params};
use geodesy_core::constructions::{
    auto_construct, construct_abelian_nilradical, construct_unimodular_codim1, construct_with, find_codim1_abelian_ideal,
    search_basis,
};
use geodesy_core::generators;
use geodesy_core::geodesic::{
    obstruction_certificate, orbit_derivative_check, sample_geodesics, verify_basis, zero_diagonal_rotate,
};
use geodesy_core::{
    ConstructOptions, ConstructionResult, InnerProduct, LieAlgebra, ObstructionKind, Outcome, Scalar, SearchConfig,
    Surd, TheoremChoice,
};
use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Verdict = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn named(name: &str, params: &str) -> LieAlgebra<Surd> {
    catalog::instantiate(name, &catalog::parse_params(params).unwrap()).unwrap()
}

fn params(text: &str) -> Params {
    catalog::parse_params(text).unwrap()
}

// Reference computations, written directly from the structure constants.

fn oracle_defect<S: Scalar>(g: &LieAlgebra<S>, gram: &dyn Fn(usize, usize) -> S, x: &[S]) -> Vec<S> {
    let n = g.dim();
    (0..n)
        .map(|i| {
            let mut acc = S::zero();
            for j in 0..n {
                for k in 0..n {
                    let c = g.structure_constant(j, i, k);
                    if S::EXACT && (c.is_zero() || x[j].is_zero()) {
                        continue;
                    }
                    for l in 0..n {
                        acc = acc + x[j].clone() * c.clone() * gram(k, l) * x[l].clone();
                    }
                }
            }
            acc
        })
        .collect()
}

fn oracle_bracket(g: &LieAlgebra<f64>, x: &[f64], y: &[f64]) -> Vec<f64> {
    let n = g.dim();
    (0..n)
        .map(|k| {
            let mut s = 0.0;
            for i in 0..n {
                for j in 0..n {
                    s += x[i] * y[j] * g.structure_constant(i, j, k);
                }
            }
            s
        })
        .collect()
}

fn gram_of(m: &InnerProduct<f64>) -> DMatrix<f64> {
    DMatrix::from_fn(m.dim(), m.dim(), |i, j| m.gram()[(i, j)])
}

fn ip(gram: &DMatrix<f64>, u: &[f64], v: &[f64]) -> f64 {
    DVector::from_column_slice(u).dot(&(gram * DVector::from_column_slice(v)))
}

/// Recomputes defects, rank and positivity of a float construction.
fn recheck(g: &LieAlgebra<Surd>, r: &ConstructionResult, orthonormal: bool) -> Result<f64, String> {
    let gf = g.to_f64();
    let n = g.dim();
    let gram = gram_of(&r.metric);
    ensure(gram.clone().cholesky().is_some(), || "metric is not positive definite".into())?;
    ensure(r.basis.len() == n, || format!("{} vectors for dimension {n}", r.basis.len()))?;
    let cols: Vec<DVector<f64>> = r.basis.iter().map(|v| DVector::from_column_slice(v).normalize()).collect();
    let det = DMatrix::from_columns(&cols).determinant().abs();
    ensure(det > 1e-8, || format!("basis is degenerate (normalized det {det:e})"))?;
    let mut worst = 0.0f64;
    for v in &r.basis {
        let d = oracle_defect(&gf, &|k, l| gram[(k, l)], v);
        worst = d.iter().fold(worst, |m, x| m.max(x.abs()));
    }
    ensure(worst <= 1e-9, || format!("max defect {worst:e}"))?;
    if orthonormal {
        let b = DMatrix::from_columns(&r.basis.iter().map(|v| DVector::from_column_slice(v)).collect::<Vec<_>>());
        let off = (b.transpose() * &gram * &b - DMatrix::identity(n, n)).amax();
        ensure(off <= 1e-9, || format!("basis is not orthonormal ({off:e})"))?;
    }
    Ok(worst)
}

fn expect_construction(label: &str, g: &LieAlgebra<Surd>, outcome: Outcome, orthonormal: bool) -> Result<f64, String> {
    match outcome {
        Outcome::Construction(r) => {
            ensure(r.certificate.passed(), || format!("{label}: {:?}", r.certificate.failures))?;
            recheck(g, &r, orthonormal).map_err(|e| format!("{label}: {e}"))
        }
        other => Err(format!("{label}: expected a construction, got {other:?}")),
    }
}

fn criterion_1() -> Verdict {
    let mut cases: Vec<(&str, String)> = vec![("g23", String::new()), ("g28", String::new()), ("g35", String::new())];
    cases.extend(["1/2", "-1/2", "1", "-1", "2"].iter().map(|p| ("g25", format!("p={p}"))));
    cases.extend(["-2", "-1/2", "0", "1", "3"].iter().map(|a| ("g19", format!("alpha={a}"))));
    cases.push(("M8", String::new()));
    cases.push(("sl2_semidirect_r2", String::new()));
    for (name, p) in &cases {
        let g = named(name, p);
        let w = catalog::witness(name, &params(p)).unwrap().ok_or_else(|| format!("{name} {p}: no witness"))?;
        let cert = verify_basis(&g, &w.metric, &w.basis, false);
        ensure(cert.passed() && cert.exact, || format!("{name} {p}: {:?}", cert.failures))?;
        for v in &w.basis {
            let d = oracle_defect(&g, &|k, l| w.metric.gram()[(k, l)].clone(), v);
            ensure(d.iter().all(Surd::is_zero), || format!("{name} {p}: oracle defect {d:?}"))?;
        }
    }
    Ok(format!("{} witnesses, exact defect 0", cases.len()))
}

fn trace_identity(g: &LieAlgebra<Surd>, r: &ConstructionResult) -> f64 {
    let gf = g.to_f64();
    let n = g.dim();
    let nil = g.nilradical_solvable().unwrap().to_f64();
    let gram = gram_of(&r.metric);
    let mut worst = 0.0f64;
    for z in r.basis.iter().filter(|z| nil.contains(z)) {
        for i in nil.complement_indices() {
            let y: Vec<f64> = (0..n).map(|k| (k == i) as u8 as f64).collect();
            let trace: f64 = (0..n).map(|k| oracle_bracket(&gf, &y, &(0..n).map(|m| (m == k) as u8 as f64).collect::<Vec<_>>())[k]).sum();
            let az = oracle_bracket(&gf, &y, z);
            worst = worst.max((ip(&gram, &az, z) - trace).abs());
        }
    }
    worst
}

fn criterion_2() -> Verdict {
    let mut algebras: Vec<(String, LieAlgebra<Surd>)> = vec![("g33".into(), named("g33", "")), ("g35".into(), named("g35", ""))];
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for case in 0..30 {
        let mats = generators::commuting_trace_zero(3 + case % 3, 1 + case % 2, &mut rng);
        algebras.push((format!("random {case}"), generators::commuting_suspension(&mats).unwrap()));
    }
    let mut worst = 0.0f64;
    let mut worst_identity = 0.0f64;
    for (label, g) in &algebras {
        let r = construct_abelian_nilradical(g).map_err(|e| format!("{label}: {e}"))?;
        worst = worst.max(expect_construction(label, g, Outcome::Construction(Box::new(r.clone())), false)?);
        let t = trace_identity(g, &r);
        ensure(t <= 1e-9, || format!("{label}: trace identity residual {t:e}"))?;
        worst_identity = worst_identity.max(t);
    }
    Ok(format!("{} algebras, max defect {worst:.1e}, trace identity residual {worst_identity:.1e}", algebras.len()))
}

fn criterion_3() -> Verdict {
    let mut cases: Vec<(String, LieAlgebra<Surd>)> = vec![("M4".into(), named("M4", ""))];
    for a in [-1, 0, 2] {
        cases.push((format!("M3 a={a}"), named("M3", &format!("a={a}"))));
    }
    for a in -1..=1 {
        for b in -1..=1 {
            cases.push((format!("M6 a={a},b={b}"), named("M6", &format!("a={a},b={b}"))));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for case in 0..30 {
        cases.push((format!("random {case}"), generators::codim1_abelian(2 + case % 4, false, &mut rng).unwrap()));
    }
    let mut worst = 0.0f64;
    for (label, g) in &cases {
        let outcome = construct_with(g, TheoremChoice::Codim1, ConstructOptions::default());
        worst = worst.max(expect_construction(label, g, outcome, false)?);
    }
    for n in 2..=6 {
        let g = named("A_n", &format!("n={n}"));
        let outcome = construct_with(&g, TheoremChoice::Codim1, ConstructOptions::default());
        let cert = outcome.obstruction().ok_or_else(|| format!("A_{n}: no obstruction"))?;
        ensure(cert.kind == ObstructionKind::An && cert.holds(n + 1), || format!("A_{n}: {cert:?}"))?;
        let config = SearchConfig { metrics: 20, trials: 25, seed: 3 };
        let sampled = obstruction_certificate(&g, &InnerProduct::identity(n + 1), ObstructionKind::An, config)
            .map_err(|e| e.to_string())?;
        ensure(sampled.max_span_rank == 1, || format!("A_{n}: span rank {}", sampled.max_span_rank))?;
    }
    Ok(format!("{} constructions (max defect {worst:.1e}), A_2..A_6 obstructed with span rank 1", cases.len()))
}

fn criterion_4() -> Verdict {
    let mut worst_pairing = 0.0f64;
    for (name, p) in [("M12", ""), ("M13", "a=0"), ("M13", "a=1"), ("M13", "a=-2")] {
        let g = named(name, p);
        let outcome = construct_with(&g, TheoremChoice::Heisenberg, ConstructOptions::default());
        let cert = outcome.obstruction().ok_or_else(|| format!("{name} {p}: no obstruction"))?;
        ensure(cert.kind == ObstructionKind::HeisenbergNonunimodular && cert.holds(4), || format!("{name} {p}: {cert:?}"))?;
        // X3 spans the center of the Heisenberg ideal, so ⟨sample, X3⟩ is the third coordinate.
        let samples = sample_geodesics(&g.to_f64(), &InnerProduct::identity(4), 500, 4);
        ensure(!samples.is_empty(), || format!("{name} {p}: no converged samples"))?;
        for s in &samples {
            worst_pairing = worst_pairing.max(s[2].abs());
            ensure(s[2].abs() <= 1e-8, || format!("{name} {p}: ⟨sample, X3⟩ = {:e}", s[2]))?;
        }
    }
    let mut algebras = vec![("oscillator".to_string(), named("oscillator", ""))];
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for case in 0..10 {
        algebras.push((format!("random {case}"), generators::unimodular_heisenberg_suspension(1 + case % 2, &mut rng).unwrap()));
    }
    for (label, g) in &algebras {
        let outcome = construct_with(g, TheoremChoice::Heisenberg, ConstructOptions::default());
        expect_construction(label, g, outcome, true)?;
    }
    Ok(format!(
        "4 obstructions (max pairing with X3 {worst_pairing:.1e}), {} orthonormal constructions",
        algebras.len()
    ))
}

/// Largest finite-difference error over 50 random unit pairs under a random metric.
fn orbit_error(g: &LieAlgebra<f64>, rng: &mut ChaCha8Rng) -> Result<f64, String> {
    let n = g.dim();
    let metric = InnerProduct::random(n, 0.5, 2.0, rng);
    let gram = gram_of(&metric);
    let mut worst = 0.0f64;
    for _ in 0..50 {
        let mut draw = || {
            let v: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();
            let norm = ip(&gram, &v, &v).sqrt();
            v.iter().map(|x| x / norm).collect::<Vec<_>>()
        };
        let (x, z) = (draw(), draw());
        let lib = orbit_derivative_check(g, &metric, &x, &z, 1e-4).map_err(|e| e.to_string())?;
        // Same quantity with nalgebra's matrix exponential and the reference bracket.
        let ad = DMatrix::from_fn(n, n, |k, j| {
            oracle_bracket(g, &x, &(0..n).map(|m| (m == j) as u8 as f64).collect::<Vec<_>>())[k]
        });
        let zv = DVector::from_column_slice(&z);
        let f = |t: f64| {
            let w = (&ad * t).exp() * &zv;
            w.dot(&(&gram * &w))
        };
        let fd = (f(1e-4) - f(-1e-4)) / 2e-4;
        let reference = (fd - 2.0 * ip(&gram, &oracle_bracket(g, &x, &z), &z)).abs();
        worst = worst.max(lib).max(reference);
    }
    Ok(worst)
}

fn criterion_5() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut worst = 0.0f64;
    let mut count = 0;
    for e in catalog::list() {
        let g = catalog::instantiate(e.name, &Params::new()).unwrap().to_f64();
        if g.dim() > 5 {
            continue;
        }
        count += 1;
        let err = orbit_error(&g, &mut rng)?;
        ensure(err <= 1e-6, || format!("{}: error {err:e}", e.name))?;
        worst = worst.max(err);
    }
    // Not gated: the parameter sweeps include large weights where the O(h²) truncation term grows.
    let mut sweep = (0.0f64, String::new());
    for e in catalog::list() {
        for p in catalog::sample_params(e.name) {
            let g = catalog::instantiate(e.name, &p).unwrap().to_f64();
            if g.dim() <= 5 {
                let err = orbit_error(&g, &mut rng)?;
                if err > sweep.0 {
                    sweep = (err, format!("{} {}", e.name, catalog::render_params(&p)));
                }
            }
        }
    }
    Ok(format!(
        "{count} entries × 50 pairs, max error {worst:.1e}; parameter sweep max {:.1e} at {}",
        sweep.0, sweep.1
    ))
}

fn criterion_6() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let (mut orth, mut diag) = (0.0f64, 0.0f64);
    for case in 0..100 {
        let n = 1 + case % 8;
        let s = generators::trace_zero_symmetric(n, &mut rng);
        let q = zero_diagonal_rotate(&s, 1e-12).map_err(|e| e.to_string())?;
        orth = orth.max((q.transpose() * &q - DMatrix::identity(n, n)).amax());
        diag = diag.max((q.transpose() * &s * &q).diagonal().amax());
    }
    ensure(orth <= 1e-12 && diag <= 1e-10, || format!("orthogonality {orth:e}, diagonal {diag:e}"))?;
    let mut algebras = vec![named("e2", "")];
    for case in 0..20 {
        algebras.push(generators::codim1_abelian(2 + case % 4, true, &mut rng).unwrap());
    }
    for (idx, g) in algebras.iter().enumerate() {
        let h = find_codim1_abelian_ideal(g).ok_or_else(|| format!("case {idx}: no abelian ideal"))?;
        for _ in 0..5 {
            let metric = InnerProduct::random(g.dim(), 0.25, 4.0, &mut rng);
            let r = construct_unimodular_codim1(g, &h, &metric).map_err(|e| format!("case {idx}: {e}"))?;
            ensure(r.metric == metric, || format!("case {idx}: metric was changed"))?;
            recheck(g, &r, true).map_err(|e| format!("case {idx}: {e}"))?;
        }
    }
    Ok(format!("orthogonality {orth:.1e}, diagonal {diag:.1e}; {} algebras × 5 metrics orthonormal", algebras.len()))
}

/// `yes` if a construction or a search finds a basis; `no` for an obstruction or a failed search.
fn found_answer(g: &LieAlgebra<Surd>) -> Result<(Answer, String), String> {
    Ok(match auto_construct(g, ConstructOptions::default()) {
        Outcome::Construction(r) => {
            recheck(g, &r, false)?;
            (Answer::Yes, r.theorem.to_string())
        }
        Outcome::Obstruction(c) => {
            ensure(c.holds(g.dim()), || format!("obstruction {} does not hold", c.kind.as_str()))?;
            (Answer::No, c.kind.as_str().to_string())
        }
        Outcome::Undetermined(_) => match search_basis(&g.to_f64(), SearchConfig::default()) {
            Ok(r) => {
                recheck(g, &r, false)?;
                (Answer::Yes, "search".into())
            }
            Err(_) => (Answer::No, "evidence only".into()),
        },
    })
}

fn criterion_7() -> Verdict {
    let mut checked = 0;
    for (name, p) in [("M3", "a=-1"), ("M3", "a=0"), ("M3", "a=2"), ("M4", ""), ("M8", "")]
        .into_iter()
        .map(|(a, b)| (a, b.to_string()))
        .chain((-1..=1).flat_map(|a| (-1..=1).map(move |b| ("M6", format!("a={a},b={b}")))))
    {
        let g = named(name, &p);
        let outcome = auto_construct(&g, ConstructOptions::default());
        ensure(outcome.construction().is_some(), || format!("{name} {p}: no construction"))?;
        checked += 1;
    }
    for (name, p) in [("M2", ""), ("M9", ""), ("M12", ""), ("M13", "a=0"), ("M13", "a=1"), ("M13", "a=-2")] {
        let g = named(name, p);
        let (answer, how) = found_answer(&g).map_err(|e| format!("{name} {p}: {e}"))?;
        ensure(answer == Answer::No, || format!("{name} {p}: found a basis via {how}"))?;
        checked += 1;
    }
    for e in catalog::list() {
        for p in catalog::sample_params(e.name) {
            let g = catalog::instantiate(e.name, &p).unwrap();
            if g.dim() != 5 {
                continue;
            }
            let expected = catalog::verdict(e.name, &p).unwrap().geodesic_basis;
            let (answer, how) = found_answer(&g).map_err(|err| format!("{} {}: {err}", e.name, catalog::render_params(&p)))?;
            ensure(answer == expected, || {
                format!("{} {}: catalog says {expected}, found {answer} ({how})", e.name, catalog::render_params(&p))
            })?;
            checked += 1;
        }
    }
    Ok(format!("{checked} verdicts reproduced"))
}

fn criterion_8() -> Verdict {
    let mut count = 0;
    for e in catalog::list() {
        for p in catalog::sample_params(e.name) {
            let g = catalog::instantiate(e.name, &p).unwrap();
            let v = g.validate();
            ensure(v.is_empty(), || format!("{}: {}", e.name, v[0]))?;
            count += 1;
        }
    }
    let g = named("clnn", "");
    let ad = g.ad_basis(0);
    let block = geodesy_core::Matrix::from_fn(4, 4, |i, j| ad[(i + 1, j + 1)].clone());
    // (t − 3)(t + 4)(t + 1)(t − 2) = t⁴ − 15t² + 10t + 24
    let mut want = vec![Surd::from_i64(1)];
    for root in [3, -4, -1, 2] {
        let mut next = vec![Surd::zero(); want.len() + 1];
        for (i, c) in want.iter().enumerate() {
            next[i] = next[i].clone() - Surd::from_i64(root) * c.clone();
            next[i + 1] = next[i + 1].clone() + c.clone();
        }
        want = next;
    }
    let got = block.charpoly();
    ensure(got == want, || format!("charpoly {got:?}"))?;
    ensure(
        want == [24, 10, -15, 0, 1].map(Surd::from_i64).to_vec(),
        || "expansion of (t-3)(t+4)(t+1)(t-2) disagrees with t^4 - 15t^2 + 10t + 24".into(),
    )?;
    Ok(format!("{count} catalog instances valid; ad(X0) charpoly = t^4 - 15t^2 + 10t + 24"))
}

fn criterion_9() -> Verdict {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_geodesy"))
            .args(["--json", "verify-paper", "--seed", "42"])
            .output()
            .map_err(|e| e.to_string())
    };
    let (a, b) = (run()?, run()?);
    ensure(a.status.code() == Some(0), || format!("verify-paper exited with {:?}", a.status.code()))?;
    ensure(a.stdout == b.stdout, || "machine reports differ".into())?;
    let report = geodesy_cli::Report::parse(&String::from_utf8_lossy(&a.stdout)).map_err(|e| e.to_string())?;
    let total = report.body["total"].as_u64().unwrap_or(0);
    ensure(total >= 40, || format!("only {total} checks"))?;
    Ok(format!("{} identical bytes, {total} checks passed", a.stdout.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Verdict); 9] = [
        ("printed witnesses are exact geodesic bases", criterion_1),
        ("abelian nilradical constructor", criterion_2),
        ("codimension-one abelian constructor and A_n obstruction", criterion_3),
        ("Heisenberg ideal branches", criterion_4),
        ("orbit derivative identity", criterion_5),
        ("zero-diagonal rotation and unimodular codim-1 bases", criterion_6),
        ("verdict concordance in dimensions 4 and 5", criterion_7),
        ("catalog validity and CLNN weights", criterion_8),
        ("verify-paper determinism", criterion_9),
    ];
    let mut failed = 0;
    for (idx, (title, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("criterion {}: PASS ({title}; {detail}; {secs:.2}s)", idx + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {}: FAIL ({title}; {detail}; {secs:.2}s)", idx + 1);
            }
        }
    }
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
    println!("all 9 acceptance criteria passed");
}

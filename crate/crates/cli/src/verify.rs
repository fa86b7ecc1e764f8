//! `verify-paper`: every printed witness, verdict cross-checks, the constructor suites and the
//! orbit-derivative check, as one deterministic batch.

use geodesy_core::catalog::{self, Answer, Params};
use geodesy_core::constructions::{
    auto_construct, construct_abelian_nilradical, construct_unimodular_codim1, construct_with, find_codim1_abelian_ideal,
    search_basis,
};
use geodesy_core::generators;
use geodesy_core::geodesic::{orbit_derivative_check, verify_basis};
use geodesy_core::{
    ConstructOptions, GeodesyError, InnerProduct, LieAlgebra, ObstructionKind, Outcome, SearchConfig, Surd, TheoremChoice,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::json;

use crate::report::{Report, Status};

pub const ORBIT_PAIRS: usize = 50;
pub const ORBIT_STEP: f64 = 1e-4;
pub const ORBIT_TOL: f64 = 1e-6;
pub const RANDOM_CASES: usize = 5;

type CheckFn = Box<dyn Fn() -> Result<String, String> + Send + Sync>;

struct Check {
    name: String,
    run: CheckFn,
}

fn check(name: String, run: impl Fn() -> Result<String, String> + Send + Sync + 'static) -> Check {
    Check { name, run: Box::new(run) }
}

fn instances() -> Vec<(String, &'static str, Params)> {
    let mut out = Vec::new();
    for e in catalog::list() {
        for p in catalog::sample_params(e.name) {
            let label = if p.is_empty() { e.name.to_string() } else { format!("{} {}", e.name, catalog::render_params(&p)) };
            out.push((label, e.name, p));
        }
    }
    out
}

fn err(e: GeodesyError) -> String {
    e.to_string()
}

fn witness_check(name: &'static str, params: &Params) -> Result<String, String> {
    let g = catalog::instantiate(name, params).map_err(err)?;
    let w = catalog::witness(name, params).map_err(err)?.ok_or("no witness")?;
    let cert = verify_basis(&g, &w.metric, &w.basis, w.orthonormal);
    if cert.passed() {
        Ok(format!("{} vectors, exact defect 0, orthonormal {}", w.basis.len(), yes_no(cert.orthonormal)))
    } else {
        Err(cert.failures.join("; "))
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// What the constructors and the sampler find, compared with the catalog verdict.
fn verdict_check(name: &'static str, params: &Params, seed: u64) -> Result<String, String> {
    let g = catalog::instantiate(name, params).map_err(err)?;
    let verdict = catalog::verdict(name, params).map_err(err)?;
    let (found, how) = match auto_construct(&g, ConstructOptions::with_seed(seed)) {
        Outcome::Construction(r) => (Answer::Yes, format!("construction ({})", r.theorem)),
        Outcome::Obstruction(c) if c.holds(g.dim()) => (Answer::No, format!("obstruction ({})", c.kind.as_str())),
        Outcome::Obstruction(c) => return Err(format!("obstruction {} does not hold", c.kind.as_str())),
        Outcome::Undetermined(_) => {
            let config = SearchConfig { seed, ..SearchConfig::default() };
            match search_basis(&g.to_f64(), config) {
                Ok(_) => (Answer::Yes, "search found a basis".to_string()),
                Err(e) => (Answer::No, format!("evidence only: {e}")),
            }
        }
    };
    if verdict.geodesic_basis != Answer::Unknown && found != verdict.geodesic_basis {
        return Err(format!("catalog says {}, found {how}", verdict.geodesic_basis));
    }
    let unimodular = g.is_unimodular();
    if verdict.orthonormal == Answer::Yes && !unimodular {
        return Err("orthonormal verdict on a nonunimodular algebra".into());
    }
    if !unimodular && verdict.orthonormal != Answer::No {
        return Err("nonunimodular algebra must have orthonormal verdict no".into());
    }
    Ok(format!("geodesic basis {}, orthonormal {}: {how}", verdict.geodesic_basis, verdict.orthonormal))
}

fn construction_summary(g: &LieAlgebra<Surd>, outcome: Outcome, orthonormal: bool) -> Result<String, String> {
    match outcome {
        Outcome::Construction(r) => {
            if !r.certificate.passed() {
                return Err(r.certificate.failures.join("; "));
            }
            if orthonormal && !r.certificate.orthonormal {
                return Err("basis is not orthonormal".into());
            }
            Ok(format!("{} on dim {}, max defect {:.1e}", r.theorem, g.dim(), r.certificate.max_defect()))
        }
        Outcome::Obstruction(c) => Err(format!("unexpected obstruction {}", c.kind.as_str())),
        Outcome::Undetermined(why) => Err(why.join("; ")),
    }
}

fn obstruction_summary(g: &LieAlgebra<Surd>, outcome: Outcome, kind: ObstructionKind) -> Result<String, String> {
    match outcome {
        Outcome::Obstruction(c) if c.kind == kind && c.holds(g.dim()) => Ok(format!(
            "{} over {} samples, span rank {}, witness pairing {:.1e}",
            c.kind.as_str(),
            c.samples,
            c.max_span_rank,
            c.max_witness_pairing
        )),
        Outcome::Obstruction(c) => Err(format!(
            "{} obstruction: span rank {}, pairing {:.1e}",
            c.kind.as_str(),
            c.max_span_rank,
            c.max_witness_pairing
        )),
        other => Err(format!("expected an obstruction, got {}", outcome_name(&other))),
    }
}

fn outcome_name(o: &Outcome) -> &'static str {
    match o {
        Outcome::Construction(_) => "a construction",
        Outcome::Obstruction(_) => "an obstruction",
        Outcome::Undetermined(_) => "no decision",
    }
}

fn named(name: &str, params: &str) -> Result<LieAlgebra<Surd>, String> {
    catalog::instantiate(name, &catalog::parse_params(params).map_err(err)?).map_err(err)
}

fn with_choice(name: &'static str, params: &'static str, choice: TheoremChoice, seed: u64) -> Result<String, String> {
    let g = named(name, params)?;
    construction_summary(&g, construct_with(&g, choice, ConstructOptions::with_seed(seed)), false)
}

fn orbit_check(name: &'static str, params: &Params, seed: u64) -> Result<String, String> {
    let g = catalog::instantiate(name, params).map_err(err)?.to_f64();
    let n = g.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let metric = InnerProduct::random(n, 0.5, 2.0, &mut rng);
    let unit = |rng: &mut ChaCha8Rng| {
        let v: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();
        let norm = metric.norm(&v);
        v.iter().map(|x| x / norm).collect::<Vec<f64>>()
    };
    let mut worst = 0.0f64;
    for _ in 0..ORBIT_PAIRS {
        let x = unit(&mut rng);
        let z = unit(&mut rng);
        worst = worst.max(orbit_derivative_check(&g, &metric, &x, &z, ORBIT_STEP).map_err(err)?);
    }
    if worst <= ORBIT_TOL {
        Ok(format!("{ORBIT_PAIRS} pairs, max error {worst:.1e}"))
    } else {
        Err(format!("max error {worst:.1e} exceeds {ORBIT_TOL:e}"))
    }
}

fn build(seed: u64) -> Vec<Check> {
    let mut checks = Vec::new();
    let all = instances();

    for (label, name, p) in &all {
        if catalog::witness(name, p).ok().flatten().is_some() {
            let (name, p) = (*name, p.clone());
            checks.push(check(format!("witness/{label}"), move || witness_check(name, &p)));
        }
    }
    for (label, name, p) in &all {
        let (name, p) = (*name, p.clone());
        checks.push(check(format!("verdict/{label}"), move || verdict_check(name, &p, seed)));
    }

    for name in ["g33", "g35"] {
        checks.push(check(format!("abelian_nilradical/{name}"), move || {
            let g = named(name, "")?;
            construction_summary(&g, Outcome::Construction(Box::new(construct_abelian_nilradical(&g).map_err(err)?)), false)
        }));
    }
    for case in 0..RANDOM_CASES {
        checks.push(check(format!("abelian_nilradical/random-{case}"), move || {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(case as u64));
            let mats = generators::commuting_trace_zero(3 + case % 3, 1 + case % 2, &mut rng);
            let g = generators::commuting_suspension(&mats).map_err(err)?;
            construction_summary(&g, Outcome::Construction(Box::new(construct_abelian_nilradical(&g).map_err(err)?)), false)
        }));
    }

    checks.push(check("rdiag/M8".into(), move || with_choice("M8", "", TheoremChoice::RDiag, seed)));
    for case in 0..RANDOM_CASES {
        checks.push(check(format!("rdiag/random-{case}"), move || {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(100 + case as u64));
            let mats = generators::commuting_real_diagonalizable(2 + case % 3, 2, &mut rng);
            let g = generators::commuting_suspension(&mats).map_err(err)?;
            construction_summary(&g, construct_with(&g, TheoremChoice::RDiag, ConstructOptions::with_seed(seed)), false)
        }));
    }

    let mut codim1: Vec<(&'static str, &'static str)> = vec![("M3", "a=-1"), ("M3", "a=0"), ("M3", "a=2"), ("M4", "")];
    for p in ["a=-1,b=-1", "a=-1,b=0", "a=-1,b=1", "a=0,b=-1", "a=0,b=0", "a=0,b=1", "a=1,b=-1", "a=1,b=0", "a=1,b=1"] {
        codim1.push(("M6", p));
    }
    for (name, p) in codim1 {
        let label = if p.is_empty() { name.to_string() } else { format!("{name} {p}") };
        checks.push(check(format!("codim1_abelian/{label}"), move || with_choice(name, p, TheoremChoice::Codim1, seed)));
    }
    for case in 0..RANDOM_CASES {
        checks.push(check(format!("codim1_abelian/random-{case}"), move || {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(200 + case as u64));
            let g = generators::codim1_abelian(2 + case % 4, false, &mut rng).map_err(err)?;
            construction_summary(&g, construct_with(&g, TheoremChoice::Codim1, ConstructOptions::with_seed(seed)), false)
        }));
    }
    for n in 2..=6 {
        checks.push(check(format!("codim1_abelian/A_{n}"), move || {
            let g = named("A_n", &format!("n={n}"))?;
            let outcome = construct_with(&g, TheoremChoice::Codim1, ConstructOptions::with_seed(seed));
            if let Outcome::Obstruction(c) = &outcome {
                if c.max_span_rank != 1 {
                    return Err(format!("geodesic span rank {}", c.max_span_rank));
                }
            }
            obstruction_summary(&g, outcome, ObstructionKind::An)
        }));
    }

    for (name, p) in [("M12", ""), ("M13", "a=0"), ("M13", "a=1"), ("M13", "a=-2")] {
        let label = if p.is_empty() { name.to_string() } else { format!("{name} {p}") };
        checks.push(check(format!("heisenberg_codim1/{label}"), move || {
            let g = named(name, p)?;
            let outcome = construct_with(&g, TheoremChoice::Heisenberg, ConstructOptions::with_seed(seed));
            obstruction_summary(&g, outcome, ObstructionKind::HeisenbergNonunimodular)
        }));
    }
    checks.push(check("heisenberg_codim1/oscillator".into(), move || {
        let g = named("oscillator", "")?;
        construction_summary(&g, construct_with(&g, TheoremChoice::Heisenberg, ConstructOptions::with_seed(seed)), true)
    }));
    for case in 0..RANDOM_CASES {
        checks.push(check(format!("heisenberg_codim1/random-{case}"), move || {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(300 + case as u64));
            let g = generators::unimodular_heisenberg_suspension(1 + case % 2, &mut rng).map_err(err)?;
            construction_summary(&g, construct_with(&g, TheoremChoice::Heisenberg, ConstructOptions::with_seed(seed)), true)
        }));
    }

    for case in 0..=RANDOM_CASES {
        let label = if case == 0 { "e2".to_string() } else { format!("random-{}", case - 1) };
        checks.push(check(format!("unimodular_codim1/{label}"), move || {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(400 + case as u64));
            let g = if case == 0 { named("e2", "")? } else { generators::codim1_abelian(2 + case % 4, true, &mut rng).map_err(err)? };
            let h = find_codim1_abelian_ideal(&g).ok_or("no codimension-one abelian ideal")?;
            for _ in 0..5 {
                let metric = InnerProduct::random(g.dim(), 0.25, 4.0, &mut rng);
                let r = construct_unimodular_codim1(&g, &h, &metric).map_err(err)?;
                if !r.certificate.passed() || !r.certificate.orthonormal {
                    return Err(r.certificate.failures.join("; "));
                }
            }
            Ok(format!("orthonormal geodesic bases for 5 random metrics on dim {}", g.dim()))
        }));
    }

    for (idx, e) in catalog::list().iter().enumerate() {
        let g = catalog::instantiate(e.name, &Params::new());
        if g.map(|g| g.dim() <= 5).unwrap_or(false) {
            let name = e.name;
            let s = seed.wrapping_add(500 + idx as u64);
            checks.push(check(format!("orbit_derivative/{name}"), move || orbit_check(name, &Params::new(), s)));
        }
    }
    checks
}

/// Runs the checks whose name contains `filter`, in parallel, reporting in a fixed order.
pub fn verify_paper(seed: u64, filter: Option<&str>) -> Report {
    let checks: Vec<Check> = build(seed).into_iter().filter(|c| filter.is_none_or(|f| c.name.contains(f))).collect();
    let results: Vec<(String, bool, String)> = checks
        .par_iter()
        .map(|c| match (c.run)() {
            Ok(detail) => (c.name.clone(), true, detail),
            Err(detail) => (c.name.clone(), false, detail),
        })
        .collect();
    let passed = results.iter().filter(|r| r.1).count();
    let failed = results.len() - passed;
    let status = if failed == 0 && !results.is_empty() { Status::Pass } else { Status::CheckFailed };
    let body = json!({
        "seed": seed,
        "filter": filter,
        "total": results.len(),
        "passed": passed,
        "failed": failed,
        "checks": results.iter().map(|(name, ok, detail)| json!({
            "name": name,
            "passed": ok,
            "detail": detail,
        })).collect::<Vec<_>>(),
    });
    let Some(body) = body.as_object().cloned() else { unreachable!("json! object literal") };
    Report::new("verify-paper", status, body)
}

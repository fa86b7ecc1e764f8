//! The subcommands, as functions from inputs to reports.

use geodesy_core::catalog;
use geodesy_core::constructions::construct_with;
use geodesy_core::geodesic::{sample_geodesics, span_rank, verify_basis_with_tol, FLOAT_DEFECT_TOL};
use geodesy_core::{
    ConstructOptions, ConstructionResult, InnerProduct, LieAlgebra, ObstructionCertificate, Outcome, Subspace, Surd,
    TheoremChoice,
};
use serde_json::{json, Map, Value};

use crate::document::{parse_metric, parse_vectors, render_float, render_vectors, AlgebraDocument, AnyAlgebra, DocScalar};
use crate::error::CliError;
use crate::input::{read_text, Input};
use crate::report::{Report, Status};

fn object(v: Value) -> Map<String, Value> {
    match v {
        Value::Object(m) => m,
        _ => unreachable!("json! object literal"),
    }
}

fn subspace<S: DocScalar>(s: &Subspace<S>) -> Value {
    json!({ "dim": s.dim(), "basis": render_vectors(s.basis()) })
}

fn mode<S: DocScalar>() -> &'static str {
    S::MODE.unwrap_or("exact")
}

pub fn info(input: &Input) -> Result<Report, CliError> {
    match input.doc.algebra()? {
        AnyAlgebra::Exact(g) => Ok(info_typed(&input.doc.name, &g)),
        AnyAlgebra::Float(g) => Ok(info_typed(&input.doc.name, &g)),
    }
}

fn info_typed<S: DocScalar>(name: &str, g: &LieAlgebra<S>) -> Report {
    let violations: Vec<String> = g.validate().iter().map(ToString::to_string).collect();
    let mut body = object(json!({
        "name": name,
        "mode": mode::<S>(),
        "dim": g.dim(),
        "labels": g.labels(),
        "valid": violations.is_empty(),
    }));
    if !violations.is_empty() {
        body.insert("violations".into(), json!(violations));
        return Report::new("info", Status::CheckFailed, body);
    }
    let solvable = g.is_solvable();
    body.insert("abelian".into(), json!(g.is_abelian()));
    body.insert("nilpotent".into(), json!(g.is_nilpotent()));
    body.insert("solvable".into(), json!(solvable));
    body.insert("derived_series".into(), json!(g.derived_series().iter().map(Subspace::dim).collect::<Vec<_>>()));
    body.insert(
        "lower_central_series".into(),
        json!(g.lower_central_series().iter().map(Subspace::dim).collect::<Vec<_>>()),
    );
    body.insert("derived_algebra".into(), subspace(&g.derived_subalgebra()));
    body.insert("center".into(), subspace(&g.center()));
    let nil = if solvable {
        match g.nilradical_solvable() {
            Ok(n) => {
                let abelian = g.subalgebra(&n).map(|s| s.is_abelian()).unwrap_or(false);
                let mut v = subspace(&n);
                v["abelian"] = json!(abelian);
                v
            }
            Err(e) => json!({ "error": e.to_string() }),
        }
    } else {
        Value::Null
    };
    body.insert("nilradical".into(), nil);
    body.insert("unimodular".into(), json!(g.is_unimodular()));
    body.insert("trace_character".into(), json!(g.trace_character().iter().map(DocScalar::render).collect::<Vec<_>>()));
    let kernel = g.unimodular_kernel();
    let mut k = subspace(&kernel);
    if let Ok(sub) = g.subalgebra(&kernel) {
        k["center_dim"] = json!(sub.center().dim());
    }
    body.insert("unimodular_kernel".into(), k);
    Report::new("info", Status::Pass, body)
}

/// Where `check` and `sample` take their metric and basis from.
#[derive(Clone, Debug, Default)]
pub struct CheckOptions {
    /// `identity`, `witness`, or a JSON file (a matrix of scalar strings or a document with a metric).
    pub metric: Option<String>,
    /// `standard`, `witness`, or a JSON file (a list of vectors or a document with a basis).
    pub basis: Option<String>,
    pub orthonormal: bool,
    pub tol: Option<f64>,
}

fn witness_for(input: &Input) -> Result<Option<catalog::Witness>, CliError> {
    match &input.catalog {
        Some((name, params)) => Ok(catalog::witness(name, params)?),
        None => Ok(None),
    }
}

/// A JSON file holding either a bare array or a document; `pick` extracts the array from a document.
fn rows_from_file(path: &str, pick: fn(AlgebraDocument) -> Option<Vec<Vec<String>>>) -> Result<Vec<Vec<String>>, CliError> {
    let text = read_text(path)?;
    if let Ok(rows) = serde_json::from_str::<Vec<Vec<String>>>(&text) {
        return Ok(rows);
    }
    let doc = AlgebraDocument::parse(&text)?;
    pick(doc).ok_or_else(|| CliError::Usage(format!("{path} does not contain the requested field")))
}

/// Converts an exact witness into the document's arithmetic.
fn convert<S: DocScalar>(v: &Surd) -> Result<S, CliError> {
    S::parse_scalar(&v.render()).or_else(|_| S::from_f64(v.to_f64()).ok_or_else(|| CliError::Parse(v.render())))
}

fn resolve_metric<S: DocScalar>(input: &Input, arg: Option<&str>, n: usize) -> Result<(InnerProduct<S>, String), CliError> {
    let from_witness = |w: catalog::Witness| -> Result<InnerProduct<S>, CliError> {
        let rows: Vec<Vec<S>> = (0..n)
            .map(|i| (0..n).map(|j| convert(&w.metric.gram()[(i, j)])).collect::<Result<_, _>>())
            .collect::<Result<_, _>>()?;
        Ok(InnerProduct::new(geodesy_core::Matrix::from_rows(&rows))?)
    };
    match arg {
        Some("identity") => Ok((InnerProduct::identity(n), "identity".into())),
        Some("witness") => {
            let w = witness_for(input)?.ok_or_else(|| CliError::Usage("no catalog witness for this algebra".into()))?;
            Ok((from_witness(w)?, "witness".into()))
        }
        Some(path) => Ok((parse_metric(&rows_from_file(path, |d| d.metric)?)?, path.to_string())),
        None => {
            if let Some(m) = input.doc.typed_metric::<S>()? {
                Ok((m, "document".into()))
            } else if let Some(w) = witness_for(input)? {
                Ok((from_witness(w)?, "witness".into()))
            } else {
                Ok((InnerProduct::identity(n), "identity".into()))
            }
        }
    }
}

fn standard<S: DocScalar>(n: usize) -> Vec<Vec<S>> {
    (0..n).map(|i| (0..n).map(|k| if k == i { S::one() } else { S::zero() }).collect()).collect()
}

fn resolve_basis<S: DocScalar>(input: &Input, arg: Option<&str>, n: usize) -> Result<(Vec<Vec<S>>, String), CliError> {
    let from_witness = |w: catalog::Witness| -> Result<Vec<Vec<S>>, CliError> {
        w.basis.iter().map(|v| v.iter().map(convert).collect()).collect()
    };
    match arg {
        Some("standard") => Ok((standard(n), "standard".into())),
        Some("witness") => {
            let w = witness_for(input)?.ok_or_else(|| CliError::Usage("no catalog witness for this algebra".into()))?;
            Ok((from_witness(w)?, "witness".into()))
        }
        Some(path) => Ok((parse_vectors(&rows_from_file(path, |d| d.basis)?)?, path.to_string())),
        None => {
            if let Some(b) = input.doc.typed_basis::<S>()? {
                Ok((b, "document".into()))
            } else if let Some(w) = witness_for(input)? {
                Ok((from_witness(w)?, "witness".into()))
            } else {
                Ok((standard(n), "standard".into()))
            }
        }
    }
}

pub fn check(input: &Input, options: &CheckOptions) -> Result<Report, CliError> {
    match input.doc.algebra()? {
        AnyAlgebra::Exact(g) => check_typed(input, &g, options),
        AnyAlgebra::Float(g) => check_typed(input, &g, options),
    }
}

fn check_typed<S: DocScalar>(input: &Input, g: &LieAlgebra<S>, options: &CheckOptions) -> Result<Report, CliError> {
    let n = g.dim();
    let violations: Vec<String> = g.validate().iter().map(ToString::to_string).collect();
    if !violations.is_empty() {
        let body = object(json!({ "name": input.doc.name, "valid": false, "violations": violations }));
        return Ok(Report::new("check", Status::CheckFailed, body));
    }
    let (metric, metric_source) = resolve_metric::<S>(input, options.metric.as_deref(), n)?;
    let (basis, basis_source) = resolve_basis::<S>(input, options.basis.as_deref(), n)?;
    if basis.iter().any(|v| v.len() != n) {
        return Err(CliError::Parse(format!("basis vectors must have {n} coordinates")));
    }
    let tol = if S::EXACT { 0.0 } else { options.tol.unwrap_or(FLOAT_DEFECT_TOL) };
    let cert = verify_basis_with_tol(g, &metric, &basis, options.orthonormal, tol);
    let status = if cert.passed() { Status::Pass } else { Status::CheckFailed };
    let body = object(json!({
        "name": input.doc.name,
        "mode": mode::<S>(),
        "valid": true,
        "metric_source": metric_source,
        "basis_source": basis_source,
        "tolerance": render_float(tol),
        "require_orthonormal": options.orthonormal,
        "orthonormal": cert.orthonormal,
        "rank_witness": cert.gram_rank_witness.render(),
        "max_defect": render_float(cert.max_defect()),
        "vectors": render_vectors(&basis),
        "defects": cert.defects.iter().map(|d| render_float(*d)).collect::<Vec<_>>(),
        "failures": cert.failures,
    }));
    Ok(Report::new("check", status, body))
}

pub fn construction_json(r: &ConstructionResult) -> Value {
    json!({
        "theorem": r.theorem.to_string(),
        "orthonormal": r.certificate.orthonormal,
        "max_defect": render_float(r.certificate.max_defect()),
        "rank_witness": render_float(r.certificate.gram_rank_witness),
        "tolerance": render_float(r.certificate.tol),
        "checks": r.checks.iter().map(|c| json!({ "name": c.name, "residual": render_float(c.residual) })).collect::<Vec<_>>(),
        "metric": render_vectors(&gram_rows(&r.metric)),
        "basis": render_vectors(&r.basis),
        "defects": r.certificate.defects.iter().map(|d| render_float(*d)).collect::<Vec<_>>(),
    })
}

pub fn obstruction_json(c: &ObstructionCertificate, dim: usize) -> Value {
    json!({
        "kind": c.kind.as_str(),
        "holds": c.holds(dim),
        "detail": c.detail,
        "witnesses": render_vectors(&c.witnesses),
        "metrics": c.metrics,
        "trials_per_metric": c.trials,
        "converged_samples": c.samples,
        "max_span_rank": c.max_span_rank,
        "max_witness_pairing": render_float(c.max_witness_pairing),
        "pairing_tolerance": render_float(ObstructionCertificate::PAIRING_TOL),
    })
}

fn gram_rows(m: &InnerProduct<f64>) -> Vec<Vec<f64>> {
    let n = m.dim();
    (0..n).map(|i| (0..n).map(|j| m.gram()[(i, j)]).collect()).collect()
}

#[derive(Clone, Debug)]
pub struct ConstructRequest {
    pub theorem: TheoremChoice,
    pub theorem_name: String,
    pub seed: u64,
    pub out: Option<String>,
}

pub fn construct(input: &Input, request: &ConstructRequest) -> Result<Report, CliError> {
    match input.doc.algebra()? {
        AnyAlgebra::Exact(g) => construct_typed(input, &g, request),
        AnyAlgebra::Float(g) => construct_typed(input, &g, request),
    }
}

fn require_valid<S: DocScalar>(g: &LieAlgebra<S>) -> Result<(), CliError> {
    let violations = g.validate();
    if violations.is_empty() {
        Ok(())
    } else {
        let list: Vec<String> = violations.iter().take(5).map(ToString::to_string).collect();
        Err(CliError::Parse(format!("not a Lie algebra: {}", list.join("; "))))
    }
}

fn construct_typed<S: DocScalar>(input: &Input, g: &LieAlgebra<S>, request: &ConstructRequest) -> Result<Report, CliError> {
    require_valid(g)?;
    let outcome = construct_with(g, request.theorem, ConstructOptions::with_seed(request.seed));
    let mut body = object(json!({
        "name": input.doc.name,
        "seed": request.seed,
        "requested": request.theorem_name,
    }));
    let status = match &outcome {
        Outcome::Construction(r) => {
            body.insert("outcome".into(), json!("construction"));
            body.insert("construction".into(), construction_json(r));
            if let Some(path) = &request.out {
                let doc = AlgebraDocument::from_algebra(&input.doc.name, &g.to_f64(), Some(&r.metric), Some(&r.basis));
                std::fs::write(path, doc.render()).map_err(|e| CliError::Io { path: path.clone(), source: e })?;
                body.insert("written".into(), json!(path));
            }
            Status::Pass
        }
        Outcome::Obstruction(c) => {
            body.insert("outcome".into(), json!("obstruction"));
            body.insert("obstruction".into(), obstruction_json(c, g.dim()));
            Status::Obstruction
        }
        Outcome::Undetermined(why) => {
            body.insert("outcome".into(), json!("undetermined"));
            body.insert("reasons".into(), json!(why));
            Status::Undetermined
        }
    };
    Ok(Report::new("construct", status, body))
}

pub fn sample(input: &Input, metric: Option<&str>, trials: usize, seed: u64) -> Result<Report, CliError> {
    match input.doc.algebra()? {
        AnyAlgebra::Exact(g) => sample_typed(input, &g, metric, trials, seed),
        AnyAlgebra::Float(g) => sample_typed(input, &g, metric, trials, seed),
    }
}

fn sample_typed<S: DocScalar>(
    input: &Input,
    g: &LieAlgebra<S>,
    metric: Option<&str>,
    trials: usize,
    seed: u64,
) -> Result<Report, CliError> {
    require_valid(g)?;
    let n = g.dim();
    let arg = metric.or(if input.doc.metric.is_some() { None } else { Some("identity") });
    let (m, source) = resolve_metric::<S>(input, arg, n)?;
    let samples = sample_geodesics(&g.to_f64(), &m.to_f64(), trials, seed);
    let body = object(json!({
        "name": input.doc.name,
        "seed": seed,
        "trials": trials,
        "metric_source": source,
        "converged": samples.len(),
        "span_rank": span_rank(&samples),
        "dim": n,
        "samples": render_vectors(&samples),
    }));
    Ok(Report::new("sample", Status::Pass, body))
}

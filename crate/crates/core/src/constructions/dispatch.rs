use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::heisenberg::heisenberg_candidate;
use super::{
    construct_abelian_nilradical, construct_codim1_abelian, construct_heisenberg_codim1, construct_rdiag,
    find_codim1_abelian_ideal, finish, lift_through_center, select_independent, trivial, ConstructOptions,
    ConstructionResult, Outcome, TheoremTag,
};
use crate::algebra::LieAlgebra;
use crate::error::{GeodesyError, Result};
use crate::geodesic::{obstruction_certificate, sample_geodesics, ObstructionKind, SearchConfig};
use crate::metric::InnerProduct;
use crate::scalar::Scalar;

/// Which constructor to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TheoremChoice {
    Auto,
    NilAbelian,
    RDiag,
    Codim1,
    Heisenberg,
    Search,
}

impl TheoremChoice {
    pub fn parse(name: &str) -> Option<Self> {
        Some(match name {
            "auto" => TheoremChoice::Auto,
            "nil-abelian" | "nilabelian" | "abelian_nilradical" => TheoremChoice::NilAbelian,
            "rdiag" => TheoremChoice::RDiag,
            "codim1" | "codim1_abelian" => TheoremChoice::Codim1,
            "heisenberg" | "heisenberg_codim1" => TheoremChoice::Heisenberg,
            "search" => TheoremChoice::Search,
            _ => return None,
        })
    }
}

fn wrap(result: Result<ConstructionResult>) -> Result<Outcome> {
    result.map(|r| Outcome::Construction(Box::new(r)))
}

fn an_obstruction<S: Scalar>(g: &LieAlgebra<S>, options: ConstructOptions) -> Result<Outcome> {
    let cert = obstruction_certificate(g, &InnerProduct::identity(g.dim()), ObstructionKind::An, options.search)?;
    Ok(Outcome::Obstruction(Box::new(cert)))
}

fn heisenberg<S: Scalar>(g: &LieAlgebra<S>, options: ConstructOptions) -> Result<Outcome> {
    let h = heisenberg_candidate(g)
        .ok_or_else(|| GeodesyError::NotHeisenbergIdeal("no codimension-one Heisenberg ideal found".into()))?;
    construct_heisenberg_codim1(g, &h, options)
}

fn codim1<S: Scalar>(g: &LieAlgebra<S>, options: ConstructOptions) -> Result<Outcome> {
    let h = find_codim1_abelian_ideal(g)
        .ok_or_else(|| GeodesyError::NotCodim1Abelian("no codimension-one abelian ideal".into()))?;
    construct_codim1_abelian(g, &h, options)
}

fn rdiag<S: Scalar>(g: &LieAlgebra<S>, options: ConstructOptions) -> Result<Outcome> {
    match construct_rdiag(g, options) {
        Err(GeodesyError::IsomorphicToAn(_)) => an_obstruction(g, options),
        other => wrap(other),
    }
}

/// Abelian, then the quotient by the center, then the constructors from most to least specific
/// hypothesis. The first construction or obstruction wins.
pub fn auto_construct<S: Scalar>(g: &LieAlgebra<S>, options: ConstructOptions) -> Outcome {
    if g.is_abelian() {
        return match trivial(&g.to_f64(), TheoremTag::Abelian) {
            Ok(r) => Outcome::Construction(Box::new(r)),
            Err(e) => Outcome::Undetermined(vec![e.to_string()]),
        };
    }
    let mut failures = Vec::new();
    if g.center().dim() > 0 {
        match lift_through_center(g, |q| auto_construct(q, options)) {
            Ok(Outcome::Construction(r)) => return Outcome::Construction(r),
            Ok(Outcome::Obstruction(o)) => failures.push(format!("center quotient: obstructed ({})", o.kind.as_str())),
            Ok(Outcome::Undetermined(why)) => failures.push(format!("center quotient: {}", why.join("; "))),
            Err(e) => failures.push(format!("center quotient: {e}")),
        }
    }
    let steps: [(&str, fn(&LieAlgebra<S>, ConstructOptions) -> Result<Outcome>); 4] = [
        ("heisenberg_codim1", heisenberg),
        ("codim1_abelian", codim1),
        ("abelian_nilradical", |g, _| wrap(construct_abelian_nilradical(g))),
        ("rdiag", rdiag),
    ];
    for (name, step) in steps {
        match step(g, options) {
            Ok(outcome @ (Outcome::Construction(_) | Outcome::Obstruction(_))) => return outcome,
            Ok(Outcome::Undetermined(why)) => failures.push(format!("{name}: {}", why.join("; "))),
            Err(e) => failures.push(format!("{name}: {e}")),
        }
    }
    Outcome::Undetermined(failures)
}

/// Runs one constructor; hypothesis failures become `Undetermined`.
pub fn construct_with<S: Scalar>(g: &LieAlgebra<S>, choice: TheoremChoice, options: ConstructOptions) -> Outcome {
    let result = match choice {
        TheoremChoice::Auto => return auto_construct(g, options),
        TheoremChoice::NilAbelian => wrap(construct_abelian_nilradical(g)),
        TheoremChoice::RDiag => rdiag(g, options),
        TheoremChoice::Codim1 => codim1(g, options),
        TheoremChoice::Heisenberg => heisenberg(g, options),
        TheoremChoice::Search => wrap(search_basis(&g.to_f64(), options.search)),
    };
    result.unwrap_or_else(|e| Outcome::Undetermined(vec![e.to_string()]))
}

/// Samples geodesic elements under the identity and then random metrics until some metric has
/// `n` independent ones.
pub fn search_basis(g: &LieAlgebra<f64>, config: SearchConfig) -> Result<ConstructionResult> {
    let n = g.dim();
    if g.is_abelian() {
        return trivial(g, TheoremTag::Abelian);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut best = 0;
    for k in 0..config.metrics.max(1) {
        let metric = if k == 0 { InnerProduct::identity(n) } else { InnerProduct::random(n, 0.25, 4.0, &mut rng) };
        let samples = sample_geodesics(g, &metric, config.trials, config.seed.wrapping_add(k as u64));
        let basis = select_independent(Vec::new(), &samples, n);
        best = best.max(basis.len());
        if basis.len() == n {
            if let Ok(r) = finish(g, metric, basis, TheoremTag::Search, false, Vec::new()) {
                return Ok(r);
            }
        }
    }
    Err(GeodesyError::NumericalFailure(format!(
        "sampled geodesics span at most {best} of {n} dimensions"
    )))
}

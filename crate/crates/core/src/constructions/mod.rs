//! Inner products admitting geodesic bases, built constructively, each with a verified certificate.

mod codim1;
mod commuting;
mod dispatch;
mod heisenberg;
mod lift;
mod nilradical_abelian;
mod rdiag;

pub use codim1::{construct_codim1_abelian, construct_unimodular_codim1, find_codim1_abelian_ideal};
pub use commuting::{decompose_commuting_family, Block, BlockKind, CommutingBlockDecomposition, CLUSTER_TOL};
pub use dispatch::{auto_construct, construct_with, search_basis, TheoremChoice};
pub use heisenberg::{construct_heisenberg_codim1, find_heisenberg_ideal, heisenberg_ideal, HeisenbergIdeal};
pub use lift::{lift_center_quotient, lift_through_center};
pub use nilradical_abelian::construct_abelian_nilradical;
pub use rdiag::{construct_rdiag, flatten_complement, root_space_decomposition, Root, RootDecomposition};

use std::fmt;

use nalgebra::{DMatrix, DVector};

use crate::algebra::LieAlgebra;
use crate::error::{GeodesyError, Result};
use crate::geodesic::{verify_basis, BasisCertificate, ObstructionCertificate, SearchConfig};
use crate::metric::InnerProduct;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TheoremTag {
    Abelian,
    AbelianNilradical,
    RDiagonal,
    Codim1Abelian,
    HeisenbergCodim1,
    UnimodularCodim1,
    CenterLift(Box<TheoremTag>),
    Search,
}

impl fmt::Display for TheoremTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TheoremTag::Abelian => f.write_str("abelian"),
            TheoremTag::AbelianNilradical => f.write_str("abelian_nilradical"),
            TheoremTag::RDiagonal => f.write_str("rdiag"),
            TheoremTag::Codim1Abelian => f.write_str("codim1_abelian"),
            TheoremTag::HeisenbergCodim1 => f.write_str("heisenberg_codim1"),
            TheoremTag::UnimodularCodim1 => f.write_str("unimodular_codim1"),
            TheoremTag::CenterLift(inner) => write!(f, "center_lift({inner})"),
            TheoremTag::Search => f.write_str("search"),
        }
    }
}

/// A named numeric self-check performed while constructing.
#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub name: String,
    pub residual: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConstructionResult {
    pub metric: InnerProduct<f64>,
    pub basis: Vec<Vec<f64>>,
    pub certificate: BasisCertificate<f64>,
    pub theorem: TheoremTag,
    pub checks: Vec<Check>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Outcome {
    Construction(Box<ConstructionResult>),
    Obstruction(Box<ObstructionCertificate>),
    Undetermined(Vec<String>),
}

impl Outcome {
    pub fn construction(&self) -> Option<&ConstructionResult> {
        match self {
            Outcome::Construction(r) => Some(r),
            _ => None,
        }
    }

    pub fn obstruction(&self) -> Option<&ObstructionCertificate> {
        match self {
            Outcome::Obstruction(o) => Some(o),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ConstructOptions {
    /// Seeds the random choices inside constructions.
    pub seed: u64,
    /// Sampling effort behind obstruction certificates.
    pub search: SearchConfig,
}

impl Default for ConstructOptions {
    fn default() -> Self {
        Self { seed: 42, search: SearchConfig::default() }
    }
}

impl ConstructOptions {
    pub fn with_seed(seed: u64) -> Self {
        Self { seed, search: SearchConfig { seed, ..SearchConfig::default() } }
    }
}

pub(crate) fn dvec(v: &[f64]) -> DVector<f64> {
    DVector::from_column_slice(v)
}

pub(crate) fn to_vec(v: &DVector<f64>) -> Vec<f64> {
    v.iter().copied().collect()
}

/// Gram matrix in standard coordinates for which `⟨E_a, E_b⟩ = inner[a][b]`, `E` given by columns.
pub(crate) fn gram_from_frame(frame: &[Vec<f64>], inner: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    let cols: Vec<DVector<f64>> = frame.iter().map(|v| dvec(v)).collect();
    let e = DMatrix::from_columns(&cols);
    let inv = e
        .try_inverse()
        .ok_or_else(|| GeodesyError::NumericalFailure("frame vectors are dependent".into()))?;
    Ok(inv.transpose() * inner * inv)
}

/// Greedily keeps candidates that enlarge the span of `chosen`, until `target` vectors.
pub(crate) fn select_independent(mut chosen: Vec<Vec<f64>>, candidates: &[Vec<f64>], target: usize) -> Vec<Vec<f64>> {
    let mut ortho: Vec<DVector<f64>> = Vec::new();
    let push = |ortho: &mut Vec<DVector<f64>>, v: &[f64]| -> bool {
        let mut r = dvec(v);
        let norm = r.norm();
        if norm == 0.0 {
            return false;
        }
        for _ in 0..2 {
            for b in ortho.iter() {
                let p = b.dot(&r);
                r -= b * p;
            }
        }
        if r.norm() > 1e-8 * norm {
            ortho.push(r.normalize());
            true
        } else {
            false
        }
    };
    chosen.retain(|v| push(&mut ortho, v));
    for c in candidates {
        if chosen.len() >= target {
            break;
        }
        if push(&mut ortho, c) {
            chosen.push(c.clone());
        }
    }
    chosen
}

/// Normalizes to unit length, verifies, and packages.
pub(crate) fn finish(
    g: &LieAlgebra<f64>,
    metric: InnerProduct<f64>,
    vectors: Vec<Vec<f64>>,
    theorem: TheoremTag,
    require_orthonormal: bool,
    checks: Vec<Check>,
) -> Result<ConstructionResult> {
    let basis: Vec<Vec<f64>> = vectors
        .into_iter()
        .map(|v| {
            let norm = metric.norm(&v);
            if norm > 0.0 {
                v.iter().map(|x| x / norm).collect()
            } else {
                v
            }
        })
        .collect();
    let certificate = verify_basis(g, &metric, &basis, require_orthonormal);
    if !certificate.passed() {
        return Err(GeodesyError::NumericalFailure(format!(
            "{theorem} certificate failed: {}",
            certificate.failures.join("; ")
        )));
    }
    Ok(ConstructionResult { metric, basis, certificate, theorem, checks })
}

pub(crate) fn trivial(g: &LieAlgebra<f64>, theorem: TheoremTag) -> Result<ConstructionResult> {
    let n = g.dim();
    let basis = (0..n).map(|i| crate::linalg::unit(n, i)).collect();
    finish(g, InnerProduct::identity(n), basis, theorem, true, Vec::new())
}

//! The geodesic-element condition `⟨X, [X, Y]⟩ = 0` and everything built around it.

mod expm;
mod forms;
mod sampling;

pub use expm::{expm, orbit_derivative_check};
pub use forms::{indefinite_zero_span, zero_diagonal_rotate};
pub use sampling::{
    obstruction_certificate, sample_geodesics, span_rank, ObstructionCertificate, ObstructionKind, SearchConfig,
};

use crate::algebra::LieAlgebra;
use crate::error::{GeodesyError, Result};
use crate::linalg::{dot, Matrix};
use crate::metric::InnerProduct;
use crate::scalar::Scalar;

/// Default defect tolerance for float-mode certificates.
pub const FLOAT_DEFECT_TOL: f64 = 1e-9;
/// Float-mode threshold on the (column-normalized) coordinate determinant.
pub const FLOAT_RANK_TOL: f64 = 1e-8;

/// `entry_i = ⟨X, [X, e_i]⟩`.
pub fn defect<S: Scalar>(g: &LieAlgebra<S>, metric: &InnerProduct<S>, x: &[S]) -> Result<Vec<S>> {
    if metric.dim() != g.dim() {
        return Err(GeodesyError::DimensionMismatch { expected: g.dim(), actual: metric.dim() });
    }
    let ad = g.ad_matrix(x)?;
    let gx = metric.gram().transpose().mul_vec(x);
    Ok((0..g.dim()).map(|i| dot(&gx, &ad.column(i))).collect())
}

/// Exact zero test in exact mode, `max |entry| <= tol` otherwise.
pub fn is_geodesic<S: Scalar>(g: &LieAlgebra<S>, metric: &InnerProduct<S>, x: &[S], tol: f64) -> Result<bool> {
    let d = defect(g, metric, x)?;
    Ok(if S::EXACT { d.iter().all(Scalar::is_zero) } else { max_abs(&d) <= tol })
}

fn max_abs<S: Scalar>(v: &[S]) -> f64 {
    v.iter().map(Scalar::abs_f64).fold(0.0, f64::max)
}

/// Machine-checkable evidence that a set of vectors is a geodesic basis for a metric.
#[derive(Clone, Debug, PartialEq)]
pub struct BasisCertificate<S> {
    pub metric: InnerProduct<S>,
    pub vectors: Vec<Vec<S>>,
    /// Max absolute defect entry per vector.
    pub defects: Vec<f64>,
    /// Determinant of the matrix whose columns are `vectors`.
    pub gram_rank_witness: S,
    pub orthonormal: bool,
    pub require_orthonormal: bool,
    pub exact: bool,
    pub tol: f64,
    pub failures: Vec<String>,
}

impl<S: Scalar> BasisCertificate<S> {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn max_defect(&self) -> f64 {
        self.defects.iter().copied().fold(0.0, f64::max)
    }

    pub fn to_f64(&self) -> BasisCertificate<f64> {
        BasisCertificate {
            metric: self.metric.to_f64(),
            vectors: self.vectors.iter().map(|v| v.iter().map(S::to_f64).collect()).collect(),
            defects: self.defects.clone(),
            gram_rank_witness: self.gram_rank_witness.to_f64(),
            orthonormal: self.orthonormal,
            require_orthonormal: self.require_orthonormal,
            exact: self.exact,
            tol: self.tol,
            failures: self.failures.clone(),
        }
    }
}

pub fn verify_basis<S: Scalar>(
    g: &LieAlgebra<S>,
    metric: &InnerProduct<S>,
    vectors: &[Vec<S>],
    require_orthonormal: bool,
) -> BasisCertificate<S> {
    verify_basis_with_tol(g, metric, vectors, require_orthonormal, if S::EXACT { 0.0 } else { FLOAT_DEFECT_TOL })
}

/// Like [`verify_basis`]; `tol` only matters in float mode.
pub fn verify_basis_with_tol<S: Scalar>(
    g: &LieAlgebra<S>,
    metric: &InnerProduct<S>,
    vectors: &[Vec<S>],
    require_orthonormal: bool,
    tol: f64,
) -> BasisCertificate<S> {
    let n = g.dim();
    let mut failures = Vec::new();
    if metric.dim() != n {
        failures.push(format!("metric has dimension {}, algebra {}", metric.dim(), n));
    }
    if vectors.len() != n {
        failures.push(format!("expected {n} vectors, got {}", vectors.len()));
    }
    let mut defects = Vec::with_capacity(vectors.len());
    for (idx, v) in vectors.iter().enumerate() {
        if v.len() != n {
            failures.push(format!("vector {} has length {}", idx + 1, v.len()));
            defects.push(f64::INFINITY);
            continue;
        }
        if metric.dim() != n {
            defects.push(f64::INFINITY);
            continue;
        }
        let d = defect(g, metric, v).expect("dimensions checked");
        let m = max_abs(&d);
        let ok = if S::EXACT { d.iter().all(Scalar::is_zero) } else { m <= tol };
        if !ok {
            failures.push(format!("vector {} is not geodesic (max defect {m:e})", idx + 1));
        }
        defects.push(m);
    }
    let square = vectors.len() == n && vectors.iter().all(|v| v.len() == n);
    let (witness, orthonormal) = if square && n > 0 {
        let p = Matrix::from_columns(vectors);
        let det = p.determinant();
        let independent = if S::EXACT {
            !det.is_zero()
        } else {
            let norms: f64 = vectors.iter().map(|v| dot(v, v).to_f64().sqrt()).product();
            norms > 0.0 && (det.to_f64() / norms).abs() > FLOAT_RANK_TOL
        };
        if !independent {
            failures.push(format!("vectors are linearly dependent (determinant {:e})", det.to_f64()));
        }
        let orthonormal = metric.dim() == n && {
            let gram = p.transpose().mul(metric.gram()).mul(&p);
            let diff = gram.sub(&Matrix::identity(n));
            if S::EXACT {
                diff.is_zero()
            } else {
                diff.max_abs() <= tol.max(FLOAT_DEFECT_TOL)
            }
        };
        (det, orthonormal)
    } else {
        (if n == 0 && square { S::one() } else { S::zero() }, n == 0 && square)
    };
    if require_orthonormal && !orthonormal {
        failures.push("vectors are not orthonormal".into());
    }
    BasisCertificate {
        metric: metric.clone(),
        vectors: vectors.to_vec(),
        defects,
        gram_rank_witness: witness,
        orthonormal,
        require_orthonormal,
        exact: S::EXACT,
        tol: if S::EXACT { 0.0 } else { tol },
        failures,
    }
}

use nalgebra::DMatrix;

use super::{finish, gram_from_frame, ConstructionResult, Outcome, TheoremTag};
use crate::algebra::{LieAlgebra, Quotient};
use crate::error::{GeodesyError, Result};
use crate::linalg::{to_dmatrix, unit};
use crate::metric::InnerProduct;
use crate::scalar::Scalar;

/// Pulls a geodesic basis of `g/z` back to `g` for a central ideal `z`.
///
/// The coordinate section `W` of the quotient is made isometric to `g/z` and orthogonal to `z`,
/// with the echelon basis of `z` orthonormal. For `X ∈ W` the `W`-part of `[X, T]` is the section
/// of the quotient bracket, so geodesity carries over; central vectors are always geodesic.
pub fn lift_center_quotient(
    g: &LieAlgebra<f64>,
    quotient: &Quotient<f64>,
    result: &ConstructionResult,
) -> Result<ConstructionResult> {
    let n = g.dim();
    let z = &quotient.ideal;
    if z.dim() == 0 {
        return Err(GeodesyError::TrivialCenter);
    }
    for c in z.basis() {
        for i in 0..n {
            if !g.bracket_unchecked(&unit(n, i), c).iter().all(Scalar::is_zero) {
                return Err(GeodesyError::hypothesis("ideal is central", format!("[{}, z] ≠ 0", g.labels()[i])));
            }
        }
    }
    let k = quotient.kept.len();
    let mut frame: Vec<Vec<f64>> = quotient.kept.iter().map(|&i| unit(n, i)).collect();
    frame.extend(z.basis().iter().cloned());
    let mut inner = DMatrix::<f64>::identity(n, n);
    inner.view_mut((0, 0), (k, k)).copy_from(&to_dmatrix(result.metric.gram()));
    let metric = InnerProduct::from_dmatrix(&gram_from_frame(&frame, &inner)?)?;
    let mut basis: Vec<Vec<f64>> = result.basis.iter().map(|q| quotient.section(q)).collect();
    basis.extend(z.basis().iter().cloned());
    let theorem = TheoremTag::CenterLift(Box::new(result.theorem.clone()));
    finish(g, metric, basis, theorem, result.certificate.orthonormal, result.checks.clone())
}

/// Quotients by the center, runs `inner` there, and lifts a construction back.
pub fn lift_through_center<S: Scalar>(
    g: &LieAlgebra<S>,
    inner: impl FnOnce(&LieAlgebra<S>) -> Outcome,
) -> Result<Outcome> {
    let z = g.center();
    if z.dim() == 0 {
        return Err(GeodesyError::TrivialCenter);
    }
    let q = g.quotient_by_ideal(&z)?;
    let qf = Quotient { algebra: q.algebra.to_f64(), ideal: q.ideal.to_f64(), kept: q.kept.clone() };
    match inner(&q.algebra) {
        Outcome::Construction(r) => Ok(Outcome::Construction(Box::new(lift_center_quotient(&g.to_f64(), &qf, &r)?))),
        other => Ok(other),
    }
}

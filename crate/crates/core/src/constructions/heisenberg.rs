use nalgebra::DMatrix;

use super::{construct_unimodular_codim1, lift_center_quotient, ConstructOptions, Outcome, TheoremTag};
use crate::algebra::LieAlgebra;
use crate::error::{GeodesyError, Result};
use crate::geodesic::{obstruction_certificate, ObstructionKind};
use crate::linalg::unit;
use crate::metric::InnerProduct;
use crate::scalar::{Scalar, FLOAT_ZERO_TOL};
use crate::subspace::Subspace;

/// Nondegeneracy threshold for the induced skew form.
const SKEW_DET_TOL: f64 = 1e-10;

/// A codimension-one ideal `h ≅ H_{2m+1}` with center `z` and `[Y, z] = λz`.
#[derive(Clone, Debug, PartialEq)]
pub struct HeisenbergIdeal {
    pub ideal: Subspace<f64>,
    pub center: Vec<f64>,
    pub complement: Vec<f64>,
    pub lambda: f64,
}

/// Checks that `h` is a codimension-one ideal isomorphic to a Heisenberg algebra.
pub fn heisenberg_ideal(g: &LieAlgebra<f64>, h: &Subspace<f64>) -> Result<HeisenbergIdeal> {
    let n = g.dim();
    let bad = |why: &str| GeodesyError::NotHeisenbergIdeal(why.to_string());
    if h.ambient() != n || h.codim() != 1 {
        return Err(bad("subspace must have codimension one"));
    }
    if !g.is_ideal(h) {
        return Err(bad("subspace is not an ideal"));
    }
    let sub = g.subalgebra(h)?;
    let r = sub.dim();
    if r < 3 || r % 2 == 0 {
        return Err(bad("dimension is not odd and at least 3"));
    }
    let center = sub.center();
    if center.dim() != 1 {
        return Err(bad("center is not one-dimensional"));
    }
    let derived = sub.derived_subalgebra();
    if derived.dim() != 1 || !center.contains_subspace(&derived) {
        return Err(bad("derived algebra is not the center"));
    }
    let zc = center.basis()[0].clone();
    let p = center.pivots()[0];
    let rest = center.complement_indices();
    let form = DMatrix::from_fn(rest.len(), rest.len(), |a, b| sub.bracket_basis(rest[a], rest[b])[p] / zc[p]);
    let scale = form.amax().max(1.0);
    if (form.clone() / scale).determinant().abs() <= SKEW_DET_TOL {
        return Err(bad("induced skew form is degenerate"));
    }
    let mut z = vec![0.0; n];
    for (coef, row) in zc.iter().zip(h.basis()) {
        for (o, x) in z.iter_mut().zip(row) {
            *o += coef * x;
        }
    }
    let y = unit(n, h.complement_indices()[0]);
    let yz = g.bracket_unchecked(&y, &z);
    let zp = z.iter().enumerate().max_by(|a, b| a.1.abs().total_cmp(&b.1.abs())).map(|(i, _)| i).unwrap_or(0);
    let lambda = yz[zp] / z[zp];
    if yz.iter().zip(&z).any(|(a, b)| (a - lambda * b).abs() > FLOAT_ZERO_TOL) {
        return Err(bad("center of the ideal is not invariant"));
    }
    Ok(HeisenbergIdeal { ideal: h.clone(), center: z, complement: y, lambda })
}

/// Tries the unimodular kernel, `g′`, the nilradical and coordinate hyperplanes containing `g′`.
pub fn find_heisenberg_ideal(g: &LieAlgebra<f64>) -> Option<HeisenbergIdeal> {
    heisenberg_candidate(g).and_then(|h| heisenberg_ideal(g, &h).ok())
}

pub(crate) fn heisenberg_candidate<S: Scalar>(g: &LieAlgebra<S>) -> Option<Subspace<S>> {
    let n = g.dim();
    if n < 4 {
        return None;
    }
    let gf = g.to_f64();
    let derived = g.derived_subalgebra();
    let mut candidates = vec![g.unimodular_kernel(), derived.clone()];
    if g.is_solvable() {
        if let Ok(nil) = g.nilradical_solvable() {
            candidates.push(nil);
        }
    }
    for f in derived.annihilator().basis() {
        candidates.push(Subspace::span(n, std::slice::from_ref(f)).annihilator());
    }
    let mut seen: Vec<Subspace<S>> = Vec::new();
    for h in candidates {
        if h.codim() != 1 || seen.contains(&h) {
            continue;
        }
        if heisenberg_ideal(&gf, &h.to_f64()).is_ok() {
            return Some(h);
        }
        seen.push(h);
    }
    None
}

/// `g` with a codimension-one Heisenberg ideal: obstruction if `λ ≠ 0`; otherwise quotient by the
/// (now central) `z`, build an orthonormal basis there, and lift it.
pub fn construct_heisenberg_codim1<S: Scalar>(g: &LieAlgebra<S>, h: &Subspace<S>, options: ConstructOptions) -> Result<Outcome> {
    let gf = g.to_f64();
    let n = g.dim();
    let found = heisenberg_ideal(&gf, &h.to_f64())?;
    if found.lambda.abs() > FLOAT_ZERO_TOL {
        let cert = obstruction_certificate(g, &InnerProduct::identity(n), ObstructionKind::HeisenbergNonunimodular, options.search)?;
        return Ok(Outcome::Obstruction(Box::new(cert)));
    }
    let zspan = Subspace::span(n, std::slice::from_ref(&found.center));
    let q = gf.quotient_by_ideal(&zspan)?;
    let hq = Subspace::span(q.algebra.dim(), &found.ideal.basis().iter().map(|v| q.project(v)).collect::<Vec<_>>());
    let inner = construct_unimodular_codim1(&q.algebra, &hq, &InnerProduct::identity(q.algebra.dim()))?;
    let mut lifted = lift_center_quotient(&gf, &q, &inner)?;
    lifted.theorem = TheoremTag::HeisenbergCodim1;
    if !lifted.certificate.orthonormal {
        return Err(GeodesyError::NumericalFailure("lifted basis is not orthonormal".into()));
    }
    Ok(Outcome::Construction(Box::new(lifted)))
}

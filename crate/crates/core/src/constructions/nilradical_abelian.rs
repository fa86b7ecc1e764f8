use nalgebra::DMatrix;

use super::{decompose_commuting_family, dvec, finish, gram_from_frame, select_independent, trivial, Check};
use super::{ConstructionResult, TheoremTag};
use crate::algebra::LieAlgebra;
use crate::error::{GeodesyError, Result};
use crate::linalg::unit;
use crate::metric::InnerProduct;
use crate::scalar::Scalar;

const IDENTITY_TOL: f64 = 1e-9;

/// Unimodular solvable `g` with abelian nilradical `n`.
///
/// The complement `t` is spanned by coordinate vectors `Y_j`, with `A_j = ad(Y_j)|n`. In a basis
/// of each joint primary component `n_α` where every `A_j` is triangular with constant diagonal,
/// `Z = Σ_α ±√n_α e_α^{i_α}` satisfies `⟨A_j Z, Z⟩ = Tr A_j = 0` once the component bases are
/// orthonormal, the components mutually orthogonal and `t ⊥ n`; such `Z` span `n`.
pub fn construct_abelian_nilradical<S: Scalar>(g: &LieAlgebra<S>) -> Result<ConstructionResult> {
    let gf = g.to_f64();
    let n = g.dim();
    if g.is_abelian() {
        return trivial(&gf, TheoremTag::AbelianNilradical);
    }
    if !g.is_solvable() {
        let series = g.derived_series();
        return Err(GeodesyError::hypothesis(
            "solvable",
            format!("derived series stabilizes at dimension {}", series.last().map_or(0, |s| s.dim())),
        ));
    }
    let chi = g.trace_character();
    if let Some(i) = chi.iter().position(|c| !c.is_zero()) {
        return Err(GeodesyError::hypothesis(
            "unimodular",
            format!("Tr ad({}) = {}", g.labels()[i], chi[i].to_f64()),
        ));
    }
    let nil_exact = g.nilradical_solvable()?;
    let sub = g.subalgebra(&nil_exact)?;
    if !sub.is_abelian() {
        return Err(GeodesyError::hypothesis(
            "abelian nilradical",
            format!("nilradical of dimension {} is not abelian", nil_exact.dim()),
        ));
    }
    let nil = nil_exact.to_f64();
    let r = nil.dim();
    let ys: Vec<Vec<f64>> = nil.complement_indices().into_iter().map(|i| unit(n, i)).collect();
    let coords = |v: &[f64]| -> Vec<f64> { nil.pivots().iter().map(|&p| v[p]).collect() };
    let to_global = |c: &[f64]| -> Vec<f64> {
        let mut out = vec![0.0; n];
        for (coef, row) in c.iter().zip(nil.basis()) {
            for (o, x) in out.iter_mut().zip(row) {
                *o += coef * x;
            }
        }
        out
    };
    let ops: Vec<DMatrix<f64>> = ys
        .iter()
        .map(|y| {
            let cols: Vec<_> = nil.basis().iter().map(|b| dvec(&coords(&gf.bracket_unchecked(y, b)))).collect();
            DMatrix::from_columns(&cols)
        })
        .collect();
    let decomposition = decompose_commuting_family(&ops)?;

    let blocks: Vec<Vec<Vec<f64>>> =
        decomposition.blocks.iter().map(|b| b.basis.iter().map(|v| to_global(v)).collect()).collect();
    let mut frame = ys.clone();
    frame.extend(blocks.iter().flatten().cloned());
    let gram = gram_from_frame(&frame, &DMatrix::identity(n, n))?;
    let metric = InnerProduct::from_dmatrix(&gram)?;

    let mut cross = 0.0f64;
    for (a, ba) in blocks.iter().enumerate() {
        for bb in &blocks[a + 1..] {
            for u in ba {
                for v in bb {
                    cross = cross.max(metric.inner(u, v).abs());
                }
            }
        }
        for u in ba {
            for y in &ys {
                cross = cross.max(metric.inner(u, y).abs());
            }
        }
    }

    // Z = ε √n_α e_α^i + Σ_{β≠α} √n_β e_β^1
    let mut candidates = Vec::new();
    for (alpha, ba) in blocks.iter().enumerate() {
        for i in 0..ba.len() {
            for sign in [1.0, -1.0] {
                let mut z = vec![0.0; n];
                for (beta, bb) in blocks.iter().enumerate() {
                    let (vec, coef) = if beta == alpha {
                        (&bb[i], sign * (bb.len() as f64).sqrt())
                    } else {
                        (&bb[0], (bb.len() as f64).sqrt())
                    };
                    for (zk, vk) in z.iter_mut().zip(vec) {
                        *zk += coef * vk;
                    }
                }
                candidates.push(z);
            }
        }
    }
    let mut identity_residual = 0.0f64;
    for z in &candidates {
        for (y, a) in ys.iter().zip(&ops) {
            let az = gf.bracket_unchecked(y, z);
            identity_residual = identity_residual.max((metric.inner(&az, z) - a.trace()).abs());
        }
    }
    if identity_residual > IDENTITY_TOL || cross > IDENTITY_TOL {
        return Err(GeodesyError::NumericalFailure(format!(
            "trace identity residual {identity_residual:e}, block orthogonality residual {cross:e}"
        )));
    }
    let basis = select_independent(ys, &candidates, n);
    if basis.len() != n {
        return Err(GeodesyError::NumericalFailure(format!(
            "candidates span dimension {} of the nilradical (expected {r})",
            basis.len() + r - n
        )));
    }
    let checks = vec![
        Check { name: "trace identity ⟨A_j Z, Z⟩ = Tr A_j".into(), residual: identity_residual },
        Check { name: "block orthogonality".into(), residual: cross },
    ];
    finish(&gf, metric, basis, TheoremTag::AbelianNilradical, false, checks)
}

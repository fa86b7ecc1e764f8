use nalgebra::{DMatrix, DVector, SymmetricEigen};

use crate::error::{GeodesyError, Result};

/// Orthogonal `Q` such that `QᵀSQ` has zero diagonal, for symmetric trace-zero `S`.
///
/// Each step takes the most positive and most negative diagonal entries and rotates in their
/// plane so that the positive one becomes zero; the trace moves to the other index.
pub fn zero_diagonal_rotate(s: &DMatrix<f64>, tol: f64) -> Result<DMatrix<f64>> {
    let n = s.nrows();
    let scale = s.amax().max(1.0);
    let trace = s.trace();
    if trace.abs() > tol * scale {
        return Err(GeodesyError::NonzeroTrace(trace));
    }
    let mut m = (s + s.transpose()) * 0.5;
    let mut q = DMatrix::<f64>::identity(n, n);
    for _ in 0..(2 * n).max(1) {
        let (mut i, mut j) = (0, 0);
        for k in 0..n {
            if m[(k, k)] > m[(i, i)] {
                i = k;
            }
            if m[(k, k)] < m[(j, j)] {
                j = k;
            }
        }
        if n == 0 || (m[(i, i)] <= f64::EPSILON * scale && m[(j, j)] >= -f64::EPSILON * scale) {
            break;
        }
        let (sii, sjj, sij) = (m[(i, i)], m[(j, j)], m[(i, j)]);
        let sign = if sij >= 0.0 { 1.0 } else { -1.0 };
        let t = -sii / (sij + sign * (sij * sij - sii * sjj).sqrt());
        let c = 1.0 / (1.0 + t * t).sqrt();
        let sn = t * c;
        let mut r = DMatrix::<f64>::identity(n, n);
        r[(i, i)] = c;
        r[(j, i)] = sn;
        r[(i, j)] = -sn;
        r[(j, j)] = c;
        m = r.transpose() * &m * &r;
        m[(i, i)] = 0.0;
        q = &q * &r;
    }
    Ok(q)
}

/// `m` independent zeros of the quadratic form `x ↦ xᵀφx`, which must be indefinite or zero.
///
/// With `e₋` the most negative eigenvector and `e₊` the most positive, each positive eigenvector
/// `e_i` yields `√(−μ₋)e_i ± √μ_i e₋`, each other negative `e_k` yields `√μ₊e_k ± √(−μ_k)e₊`,
/// and `e₊` contributes both signs. Kernel eigenvectors pass through.
pub fn indefinite_zero_span(phi: &DMatrix<f64>) -> Result<Vec<DVector<f64>>> {
    let m = phi.nrows();
    let sym = (phi + phi.transpose()) * 0.5;
    let scale = sym.amax();
    if scale == 0.0 {
        return Ok((0..m).map(|i| DVector::from_fn(m, |r, _| if r == i { 1.0 } else { 0.0 })).collect());
    }
    let eig = SymmetricEigen::new(sym.clone());
    let tol = 1e-10 * scale;
    let mu = &eig.eigenvalues;
    let vec_of = |i: usize| eig.eigenvectors.column(i).into_owned();
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by(|&a, &b| mu[b].total_cmp(&mu[a]));
    let pos: Vec<usize> = order.iter().copied().filter(|&i| mu[i] > tol).collect();
    let neg: Vec<usize> = order.iter().rev().copied().filter(|&i| mu[i] < -tol).collect();
    if pos.is_empty() || neg.is_empty() {
        if pos.is_empty() && neg.is_empty() {
            return Ok((0..m).map(vec_of).collect());
        }
        return Err(GeodesyError::DefiniteForm);
    }
    let (top, bottom) = (pos[0], neg[0]);
    let mut out: Vec<DVector<f64>> = Vec::with_capacity(m);
    let mut sign = 1.0;
    for &i in &pos {
        let v = vec_of(i) * (-mu[bottom]).sqrt();
        let w = vec_of(bottom) * mu[i].sqrt();
        if i == top {
            out.push(&v + &w);
            out.push(&v - &w);
        } else {
            out.push(&v + &w * sign);
        }
        sign = -sign;
    }
    for &k in &neg[1..] {
        let v = vec_of(k) * mu[top].sqrt();
        let w = vec_of(top) * (-mu[k]).sqrt();
        out.push(&v + &w * sign);
        sign = -sign;
    }
    for i in 0..m {
        if mu[i].abs() <= tol {
            out.push(vec_of(i));
        }
    }
    let out: Vec<DVector<f64>> = out.into_iter().map(|v| v.normalize()).collect();
    let mat = DMatrix::from_columns(&out);
    if out.len() != m || mat.determinant().abs() <= 1e-8 {
        return Err(GeodesyError::NumericalFailure("zeros of the form are dependent".into()));
    }
    Ok(out)
}

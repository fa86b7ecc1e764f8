use nalgebra::{DMatrix, DVector, SymmetricEigen};

use super::{dvec, finish, gram_from_frame, to_vec, trivial, Check, ConstructOptions, ConstructionResult, Outcome};
use super::TheoremTag;
use crate::algebra::LieAlgebra;
use crate::error::{GeodesyError, Result};
use crate::geodesic::{indefinite_zero_span, obstruction_certificate, zero_diagonal_rotate, ObstructionKind};
use crate::linalg::{unit, Matrix};
use crate::metric::InnerProduct;
use crate::scalar::Scalar;
use crate::subspace::Subspace;

/// A codimension-one abelian ideal `ker f`, if one exists.
///
/// `ker f` is an ideal iff `f` kills `g′`, and it is abelian iff every component form
/// `ω_k(x, y) = [x, y]_k` is divisible by `f`, i.e. `f` lies in the (rank-two) row space of `ω_k`.
pub fn find_codim1_abelian_ideal<S: Scalar>(g: &LieAlgebra<S>) -> Option<Subspace<S>> {
    let n = g.dim();
    if n == 0 {
        return None;
    }
    let mut allowed = g.derived_subalgebra().annihilator();
    for k in 0..n {
        let omega = Matrix::from_fn(n, n, |i, j| g.structure_constant(i, j, k).clone());
        if omega.is_zero() {
            continue;
        }
        let rows = Subspace::span(n, &omega.row_vectors());
        if rows.dim() != 2 {
            return None;
        }
        allowed = allowed.intersection(&rows);
        if allowed.dim() == 0 {
            return None;
        }
    }
    let f = allowed.basis().first()?.clone();
    Some(Subspace::span(n, &[f]).annihilator())
}

fn check_codim1_abelian<S: Scalar>(g: &LieAlgebra<S>, h: &Subspace<S>) -> Result<()> {
    if h.ambient() != g.dim() || h.codim() != 1 {
        return Err(GeodesyError::NotCodim1Abelian(format!("subspace has codimension {}", h.codim())));
    }
    if !g.is_ideal(h) {
        return Err(GeodesyError::NotCodim1Abelian("subspace is not an ideal".into()));
    }
    for a in h.basis() {
        for b in h.basis() {
            if !g.bracket_unchecked(a, b).iter().all(Scalar::is_zero) {
                return Err(GeodesyError::NotCodim1Abelian("ideal is not abelian".into()));
            }
        }
    }
    Ok(())
}

/// `ad(Y)|h` in the echelon basis of `h`, `Y` the coordinate vector off the pivots.
fn restricted_action<S: Scalar>(g: &LieAlgebra<S>, h: &Subspace<S>) -> (Vec<S>, Matrix<S>) {
    let n = g.dim();
    let y = unit(n, h.complement_indices()[0]);
    let cols: Vec<Vec<S>> = h
        .basis()
        .iter()
        .map(|b| {
            let img = g.bracket_unchecked(&y, b);
            h.pivots().iter().map(|&p| img[p].clone()).collect()
        })
        .collect();
    (y, Matrix::from_columns(&cols))
}

fn sym_signature(m: &DMatrix<f64>) -> (bool, bool) {
    let sym = (m + m.transpose()) * 0.5;
    let scale = sym.amax();
    if scale == 0.0 {
        return (false, false);
    }
    let eig = SymmetricEigen::new(sym).eigenvalues;
    let tol = 1e-10 * scale;
    (eig.iter().any(|&e| e > tol), eig.iter().any(|&e| e < -tol))
}

fn usable(m: &DMatrix<f64>) -> bool {
    let (pos, neg) = sym_signature(m);
    pos == neg
}

/// `g = span(Y) ⊕ h` with `h` an abelian ideal of codimension one and `A = ad(Y)|h`.
///
/// `A = 0` is abelian, `A = c·id` is `A_n` (obstruction); otherwise a positive `G` on `h` is found
/// making `X ↦ ⟨GAX, X⟩₀` indefinite (or zero), and its zeros together with `Y ⊥ h` form the basis.
pub fn construct_codim1_abelian<S: Scalar>(g: &LieAlgebra<S>, h: &Subspace<S>, options: ConstructOptions) -> Result<Outcome> {
    check_codim1_abelian(g, h)?;
    let gf = g.to_f64();
    let n = g.dim();
    let (y, a_exact) = restricted_action(g, h);
    if a_exact.is_zero() {
        return Ok(Outcome::Construction(Box::new(trivial(&gf, TheoremTag::Codim1Abelian)?)));
    }
    let r = h.dim();
    let c = a_exact[(0, 0)].clone();
    if a_exact.sub(&Matrix::identity(r).scale(&c)).is_zero() {
        let cert = obstruction_certificate(g, &InnerProduct::identity(n), ObstructionKind::An, options.search)?;
        return Ok(Outcome::Obstruction(Box::new(cert)));
    }
    let a = crate::linalg::to_dmatrix(&a_exact.to_f64());
    let id = DMatrix::<f64>::identity(r, r);
    let mut checks = Vec::new();
    let gmat = if usable(&a) {
        id.clone()
    } else {
        let (pos, _) = sym_signature(&a);
        let sign = if pos { 1.0 } else { -1.0 };
        let xp = independent_pair(&a).ok_or_else(|| {
            GeodesyError::NumericalFailure("no X′ with X′, AX′ independent".into())
        })?;
        let ax = &a * &xp;
        // T = |AX′|X′ ∓ |X′|AX′ makes ⟨TTᵀAX′, X′⟩ have the sign opposite to the form.
        let t = &xp * ax.norm() - &ax * (sign * xp.norm());
        let mut eps = 1.0;
        let mut found = None;
        for _ in 0..=60 {
            let gm = &t * t.transpose() + &id * eps;
            if sign * (&gm * &ax).dot(&xp) < 0.0 {
                found = Some(gm);
                break;
            }
            eps /= 2.0;
        }
        let gm = found.ok_or_else(|| GeodesyError::NumericalFailure("ε schedule exhausted".into()))?;
        checks.push(Check { name: "ε".into(), residual: eps });
        if usable(&(&gm * &a)) {
            gm
        } else {
            path_search(&a, &gm).ok_or_else(|| {
                GeodesyError::NumericalFailure("no indefinite form along the segment of metrics".into())
            })?
        }
    };
    let zeros = indefinite_zero_span(&(&gmat * &a))?;
    let hf = h.to_f64();
    let mut frame = vec![y.iter().map(S::to_f64).collect::<Vec<f64>>()];
    frame.extend(hf.basis().iter().cloned());
    let mut inner = DMatrix::<f64>::identity(n, n);
    inner.view_mut((1, 1), (r, r)).copy_from(&gmat);
    let metric = InnerProduct::from_dmatrix(&gram_from_frame(&frame, &inner)?)?;
    let mut basis = vec![frame[0].clone()];
    for z in &zeros {
        let mut v = vec![0.0; n];
        for (coef, row) in z.iter().zip(hf.basis()) {
            for (o, x) in v.iter_mut().zip(row) {
                *o += coef * x;
            }
        }
        basis.push(v);
    }
    let form = &gmat * &a;
    let worst = zeros.iter().map(|z| z.dot(&(&form * z)).abs()).fold(0.0, f64::max);
    checks.push(Check { name: "zeros of ⟨GAX, X⟩₀".into(), residual: worst });
    Ok(Outcome::Construction(Box::new(finish(&gf, metric, basis, TheoremTag::Codim1Abelian, false, checks)?)))
}

/// First of `e_i`, then `e_i + e_j`, `e_i − e_j`, with `X′` and `AX′` independent.
fn independent_pair(a: &DMatrix<f64>) -> Option<DVector<f64>> {
    let r = a.nrows();
    let e = |i: usize| DVector::from_fn(r, |k, _| if k == i { 1.0 } else { 0.0 });
    let mut cands: Vec<DVector<f64>> = (0..r).map(e).collect();
    for i in 0..r {
        for j in i + 1..r {
            cands.push(e(i) + e(j));
            cands.push(e(i) - e(j));
        }
    }
    cands.into_iter().find(|x| {
        let ax = a * x;
        let wedge = ax.norm_squared() * x.norm_squared() - ax.dot(x).powi(2);
        wedge > 1e-9 * ax.norm_squared().max(1e-300) * x.norm_squared()
    })
}

/// Walks `G_t = (1 − t)·I + t·G` looking for a metric where `⟨G_t A X, X⟩₀` is indefinite.
fn path_search(a: &DMatrix<f64>, target: &DMatrix<f64>) -> Option<DMatrix<f64>> {
    let r = a.nrows();
    let id = DMatrix::<f64>::identity(r, r);
    let at = |t: f64| &id * (1.0 - t) + target * t;
    let steps = 256;
    for k in 0..=steps {
        let gm = at(k as f64 / steps as f64);
        if usable(&(&gm * a)) {
            return Some(gm);
        }
    }
    // Bisect on the sign of the smallest eigenvalue of the symmetrized form.
    let lowest = |t: f64| {
        let f = at(t) * a;
        SymmetricEigen::new((&f + f.transpose()) * 0.5).eigenvalues.min()
    };
    let (mut lo, mut hi) = (0.0, 1.0);
    if lowest(lo).signum() == lowest(hi).signum() {
        return None;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if lowest(mid).signum() == lowest(lo).signum() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    for t in [lo, hi, 0.5 * (lo + hi)] {
        let gm = at(t);
        if usable(&(&gm * a)) {
            return Some(gm);
        }
    }
    None
}

/// Unimodular `g` with abelian ideal `h` of codimension one: an orthonormal geodesic basis for
/// the given metric. With `Y` the unit normal to `h` and `u` orthonormal in `h`, the symmetric
/// part `S` of `⟨[Y, u_l], u_k⟩` has trace `Tr ad Y = 0`, and rotating `u` so that `S` has zero
/// diagonal makes every rotated vector geodesic.
pub fn construct_unimodular_codim1<S: Scalar>(
    g: &LieAlgebra<S>,
    h: &Subspace<S>,
    metric: &InnerProduct<f64>,
) -> Result<ConstructionResult> {
    check_codim1_abelian(g, h).map_err(|e| GeodesyError::hypothesis("abelian ideal of codimension one", e.to_string()))?;
    let chi = g.trace_character();
    if let Some(i) = chi.iter().position(|c| !c.is_zero()) {
        return Err(GeodesyError::hypothesis("unimodular", format!("Tr ad({}) = {}", g.labels()[i], chi[i].to_f64())));
    }
    let gf = g.to_f64();
    let n = g.dim();
    if metric.dim() != n {
        return Err(GeodesyError::DimensionMismatch { expected: n, actual: metric.dim() });
    }
    let hf = h.to_f64();
    let gram = metric.to_dmatrix();
    let f = dvec(&hf.annihilator().basis()[0]);
    let y = gram
        .clone()
        .lu()
        .solve(&f)
        .ok_or_else(|| GeodesyError::NotPositiveDefinite("singular Gram matrix".into()))?;
    let y = to_vec(&(&y / y.dot(&(&gram * &y)).sqrt()));
    let mut u: Vec<Vec<f64>> = Vec::new();
    for b in hf.basis() {
        let mut v = b.clone();
        for _ in 0..2 {
            for w in &u {
                let p = metric.inner(w, &v);
                for (vi, wi) in v.iter_mut().zip(w) {
                    *vi -= p * wi;
                }
            }
        }
        let norm = metric.norm(&v);
        u.push(v.iter().map(|x| x / norm).collect());
    }
    let r = u.len();
    let m = DMatrix::from_fn(r, r, |k, l| metric.inner(&gf.bracket_unchecked(&y, &u[l]), &u[k]));
    let s = (&m + m.transpose()) * 0.5;
    let q = zero_diagonal_rotate(&s, 1e-9)?;
    let rotated = q.transpose() * &s * &q;
    let diag = (0..r).map(|i| rotated[(i, i)].abs()).fold(0.0, f64::max);
    let mut basis = vec![y];
    for k in 0..r {
        let mut v = vec![0.0; n];
        for (l, ul) in u.iter().enumerate() {
            for (o, x) in v.iter_mut().zip(ul) {
                *o += q[(l, k)] * x;
            }
        }
        basis.push(v);
    }
    let checks = vec![Check { name: "zero diagonal of QᵀSQ".into(), residual: diag }];
    finish(&gf, metric.clone(), basis, TheoremTag::UnimodularCodim1, true, checks)
}

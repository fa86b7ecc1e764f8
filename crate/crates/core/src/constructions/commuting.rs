//! Simultaneous block-triangular form of a commuting family of real operators.

use nalgebra::{ComplexField, DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{GeodesyError, Result};
use crate::linalg::{orthonormal_columns, svd_null_space};

/// Eigenvalues closer than this (times the operator scale) are treated as equal.
pub const CLUSTER_TOL: f64 = 1e-5;
/// Null-space and canonical-form tolerance inside a primary component.
const FLAG_TOL: f64 = 1e-6;

#[derive(Clone, Debug, PartialEq)]
pub enum BlockKind {
    /// Every operator acts as `c_j · id + nilpotent`.
    Real { c: Vec<f64> },
    /// Every operator acts through `[[a_j, −b_j], [b_j, a_j]]` diagonal blocks.
    Complex { a: Vec<f64>, b: Vec<f64> },
}

#[derive(Clone, Debug, PartialEq)]
pub struct Block {
    /// Adapted basis: each operator is block upper triangular in it, with constant diagonal
    /// (scalar `c_j` for real blocks, the rotation block for complex ones, in pairs `Re w, Im w`).
    pub basis: Vec<Vec<f64>>,
    pub kind: BlockKind,
    /// Largest entry of `(operator − canonical diagonal part)` in the adapted basis.
    pub off_diagonal: f64,
}

impl Block {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Whether each operator is the scalar `c_j` here (real kind and no nilpotent part).
    pub fn is_real_scalar(&self, tol: f64) -> bool {
        matches!(self.kind, BlockKind::Real { .. }) && self.off_diagonal <= tol
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CommutingBlockDecomposition {
    pub blocks: Vec<Block>,
}

impl CommutingBlockDecomposition {
    pub fn dim(&self) -> usize {
        self.blocks.iter().map(Block::dim).sum()
    }
}

fn scale_of(ops: &[DMatrix<f64>]) -> f64 {
    ops.iter().map(|a| a.amax()).fold(1.0, f64::max)
}

/// Splits the space into joint primary components of `ops`, then triangularizes each.
pub fn decompose_commuting_family(ops: &[DMatrix<f64>]) -> Result<CommutingBlockDecomposition> {
    let n = ops.first().map_or(0, |a| a.nrows());
    for a in ops {
        if a.nrows() != n || a.ncols() != n {
            return Err(GeodesyError::DimensionMismatch { expected: n, actual: a.nrows().max(a.ncols()) });
        }
    }
    let scale = scale_of(ops);
    for (i, a) in ops.iter().enumerate() {
        for b in &ops[i + 1..] {
            let r = (a * b - b * a).amax();
            if r > 1e-8 * scale * scale {
                return Err(GeodesyError::NotCommuting(r));
            }
        }
    }
    if n == 0 {
        return Ok(CommutingBlockDecomposition { blocks: Vec::new() });
    }
    let mut pieces = vec![DMatrix::<f64>::identity(n, n)];
    for a in ops {
        let mut next = Vec::new();
        for q in &pieces {
            next.extend(split(q, a, scale)?);
        }
        pieces = next;
    }
    let blocks = pieces.iter().map(|q| leaf(q, ops, scale)).collect::<Result<Vec<_>>>()?;
    let all: Vec<DVector<f64>> =
        blocks.iter().flat_map(|b| b.basis.iter().map(|v| DVector::from_column_slice(v))).collect();
    if crate::linalg::svd_rank(&DMatrix::from_columns(&all), 1e-9) != n {
        return Err(GeodesyError::NumericalFailure("primary components do not span the space".into()));
    }
    Ok(CommutingBlockDecomposition { blocks })
}

struct Cluster {
    re: f64,
    im: f64,
    count: usize,
}

/// Single-linkage clusters of `(Re λ, |Im λ|)`, so conjugate pairs land together.
fn clusters(eigs: &[Complex64], tol: f64) -> Vec<Cluster> {
    let pts: Vec<(f64, f64)> = eigs.iter().map(|z| (z.re, z.im.abs())).collect();
    let k = pts.len();
    let mut label: Vec<usize> = (0..k).collect();
    loop {
        let mut changed = false;
        for i in 0..k {
            for j in 0..k {
                let d = ((pts[i].0 - pts[j].0).powi(2) + (pts[i].1 - pts[j].1).powi(2)).sqrt();
                if d <= tol && label[j] > label[i] {
                    label[j] = label[i];
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    let mut ids: Vec<usize> = label.clone();
    ids.sort_unstable();
    ids.dedup();
    let mut out: Vec<Cluster> = ids
        .into_iter()
        .map(|id| {
            let members: Vec<usize> = (0..k).filter(|&i| label[i] == id).collect();
            let c = members.len() as f64;
            Cluster {
                re: members.iter().map(|&i| pts[i].0).sum::<f64>() / c,
                im: members.iter().map(|&i| pts[i].1).sum::<f64>() / c,
                count: members.len(),
            }
        })
        .collect();
    out.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    out
}

/// The `k` right singular vectors of `m` with the smallest singular values.
fn smallest_singular_vectors<T: ComplexField>(m: &DMatrix<T>, k: usize) -> DMatrix<T>
where
    T::RealField: Into<f64>,
{
    let cols = m.ncols();
    let padded = if m.nrows() < cols {
        let mut p = DMatrix::<T>::zeros(cols, cols);
        p.view_mut((0, 0), (m.nrows(), cols)).copy_from(m);
        p
    } else {
        m.clone()
    };
    let svd = padded.svd(false, true);
    let v_t = svd.v_t.expect("requested V^T");
    let sv: Vec<f64> = svd.singular_values.iter().map(|s| s.clone().into()).collect();
    let mut order: Vec<usize> = (0..sv.len()).collect();
    order.sort_by(|&a, &b| sv[a].total_cmp(&sv[b]));
    DMatrix::from_fn(cols, k, |r, c| v_t[(order[c], r)].clone().conjugate())
}

fn split(q: &DMatrix<f64>, a: &DMatrix<f64>, scale: f64) -> Result<Vec<DMatrix<f64>>> {
    let d = q.ncols();
    let r = q.transpose() * a * q;
    let eigs: Vec<Complex64> = r.complex_eigenvalues().iter().copied().collect();
    let cs = clusters(&eigs, CLUSTER_TOL * scale);
    if cs.len() <= 1 {
        return Ok(vec![q.clone()]);
    }
    let tol = CLUSTER_TOL * scale;
    let id = DMatrix::<f64>::identity(d, d);
    let mut out = Vec::new();
    for c in &cs {
        let (base, power, dim) = if c.im <= tol {
            (&r - &id * c.re, c.count, c.count)
        } else {
            if c.count % 2 != 0 {
                return Err(GeodesyError::NumericalFailure("unpaired complex eigenvalue".into()));
            }
            let shifted = &r - &id * c.re;
            (&shifted * &shifted + &id * (c.im * c.im), c.count / 2, c.count)
        };
        let mut m = DMatrix::<f64>::identity(d, d);
        for _ in 0..power {
            m = &m * &base;
        }
        let v = smallest_singular_vectors(&(&m / m.amax().max(1e-300)), dim);
        let piece = q * v;
        let residual = (&piece * (piece.transpose() * a * &piece) - a * &piece).amax();
        if residual > FLAG_TOL * scale {
            return Err(GeodesyError::NumericalFailure(format!(
                "generalized eigenspace is not invariant (residual {residual:e})"
            )));
        }
        out.push(piece);
    }
    Ok(out)
}

/// Orthonormal basis adapted to `K_1 ⊂ K_2 ⊂ …`, `K_1 = ∩ ker N_j`, `K_{i+1} = {x : N_j x ∈ K_i}`.
fn flag<T: ComplexField>(nils: &[DMatrix<T>], dim: usize) -> Result<DMatrix<T>>
where
    T::RealField: Into<f64>,
{
    let mut basis = DMatrix::<T>::zeros(dim, 0);
    while basis.ncols() < dim {
        let proj = DMatrix::<T>::identity(dim, dim) - &basis * basis.adjoint();
        let mut stacked = DMatrix::<T>::zeros(nils.len().max(1) * dim, dim);
        for (j, nj) in nils.iter().enumerate() {
            stacked.view_mut((j * dim, 0), (dim, dim)).copy_from(&(&proj * nj));
        }
        let null = svd_null_space(&stacked, FLAG_TOL);
        let add = orthonormal_columns(&(&proj * null), FLAG_TOL);
        if add.ncols() == 0 {
            return Err(GeodesyError::NumericalFailure("common flag does not grow".into()));
        }
        let mut cols: Vec<DVector<T>> = basis.column_iter().map(|c| c.into_owned()).collect();
        cols.extend(add.column_iter().map(|c| c.into_owned()));
        basis = DMatrix::from_columns(&cols);
        if basis.ncols() > dim {
            return Err(GeodesyError::NumericalFailure("common flag overshoots".into()));
        }
    }
    Ok(basis)
}

fn leaf(q: &DMatrix<f64>, ops: &[DMatrix<f64>], scale: f64) -> Result<Block> {
    let d = q.ncols();
    let restricted: Vec<DMatrix<f64>> = ops.iter().map(|a| q.transpose() * a * q).collect();
    let imag: Vec<f64> = restricted
        .iter()
        .map(|r| r.complex_eigenvalues().iter().map(|z| z.im.abs()).sum::<f64>() / d as f64)
        .collect();
    let reference = (0..ops.len()).max_by(|&a, &b| imag[a].total_cmp(&imag[b]));
    match reference {
        Some(r) if imag[r] > CLUSTER_TOL * scale => complex_leaf(q, &restricted, r, scale),
        _ => real_leaf(q, &restricted, scale),
    }
}

fn real_leaf(q: &DMatrix<f64>, restricted: &[DMatrix<f64>], scale: f64) -> Result<Block> {
    let d = q.ncols();
    let id = DMatrix::<f64>::identity(d, d);
    let c: Vec<f64> = restricted.iter().map(|r| r.trace() / d as f64).collect();
    let nils: Vec<DMatrix<f64>> = restricted.iter().zip(&c).map(|(r, cj)| r - &id * *cj).collect();
    let b = flag(&nils, d)?;
    let mut off = 0.0f64;
    for nj in &nils {
        let m = b.transpose() * nj * &b;
        for i in 0..d {
            for j in 0..d {
                if i >= j && m[(i, j)].abs() > FLAG_TOL * scale {
                    return Err(GeodesyError::NumericalFailure("restriction is not triangular in the flag".into()));
                }
                off = off.max(m[(i, j)].abs());
            }
        }
    }
    let global = q * b;
    Ok(Block {
        basis: global.column_iter().map(|col| col.iter().copied().collect()).collect(),
        kind: BlockKind::Real { c },
        off_diagonal: off,
    })
}

fn complex_leaf(q: &DMatrix<f64>, restricted: &[DMatrix<f64>], reference: usize, scale: f64) -> Result<Block> {
    let d = q.ncols();
    if !d.is_multiple_of(2) {
        return Err(GeodesyError::NumericalFailure("odd-dimensional complex component".into()));
    }
    let k = d / 2;
    let to_c = |m: &DMatrix<f64>| m.map(|x| Complex64::new(x, 0.0));
    let rc: Vec<DMatrix<Complex64>> = restricted.iter().map(to_c).collect();
    let eigs = restricted[reference].complex_eigenvalues();
    let upper: Vec<Complex64> = eigs.iter().copied().filter(|z| z.im > 0.0).collect();
    if upper.len() != k {
        return Err(GeodesyError::NumericalFailure("complex component is not a conjugate-pair block".into()));
    }
    let mu = upper.iter().sum::<Complex64>() / k as f64;
    let idc = DMatrix::<Complex64>::identity(d, d);
    let shifted = &rc[reference] - &idc * mu;
    let mut m = idc.clone();
    for _ in 0..k {
        m = &m * &shifted;
    }
    let w = smallest_singular_vectors(&m, k);
    let s: Vec<DMatrix<Complex64>> = rc.iter().map(|r| w.adjoint() * r * &w).collect();
    let mus: Vec<Complex64> = s.iter().map(|sj| sj.trace() / k as f64).collect();
    let idk = DMatrix::<Complex64>::identity(k, k);
    let nils: Vec<DMatrix<Complex64>> = s.iter().zip(&mus).map(|(sj, mj)| sj - &idk * *mj).collect();
    let fl = flag(&nils, k)?;
    let ws = &w * fl;
    let mut cols: Vec<DVector<f64>> = Vec::with_capacity(d);
    for col in ws.column_iter() {
        cols.push(col.map(|z| z.re));
        cols.push(col.map(|z| z.im));
    }
    let b = DMatrix::from_columns(&cols);
    let b_inv = b
        .clone()
        .try_inverse()
        .ok_or_else(|| GeodesyError::NumericalFailure("real and imaginary parts are dependent".into()))?;
    let a: Vec<f64> = mus.iter().map(|z| z.re).collect();
    let bb: Vec<f64> = mus.iter().map(|z| -z.im).collect();
    let mut off = 0.0f64;
    for (j, r) in restricted.iter().enumerate() {
        let mj = &b_inv * r * &b;
        for row in 0..d {
            for col in 0..d {
                let (br, bc) = (row / 2, col / 2);
                let expected = if br == bc {
                    match (row % 2, col % 2) {
                        (0, 0) | (1, 1) => a[j],
                        (1, 0) => bb[j],
                        _ => -bb[j],
                    }
                } else {
                    0.0
                };
                let dev = (mj[(row, col)] - expected).abs();
                if br >= bc && dev > FLAG_TOL * scale * b_inv.amax().max(1.0) {
                    return Err(GeodesyError::NumericalFailure("restriction is not block triangular".into()));
                }
                if br >= bc {
                    off = off.max(dev);
                } else {
                    off = off.max(mj[(row, col)].abs());
                }
            }
        }
    }
    let global = q * b;
    Ok(Block {
        basis: global.column_iter().map(|col| col.iter().copied().collect()).collect(),
        kind: BlockKind::Complex { a, b: bb },
        off_diagonal: off,
    })
}

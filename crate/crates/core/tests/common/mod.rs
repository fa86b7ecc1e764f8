//! Independent reference computations used to re-check library results.

#![allow(dead_code)]
#![allow(clippy::needless_range_loop)]

use geodesy_core::{LieAlgebra, Scalar};

/// `⟨X, [X, e_i]⟩ = Σ x_j c_{ji}^k G_{kl} x_l`, straight from the structure constants.
pub fn defect<S: Scalar>(g: &LieAlgebra<S>, gram: &[Vec<S>], x: &[S]) -> Vec<S> {
    let n = g.dim();
    (0..n)
        .map(|i| {
            let mut acc = S::zero();
            for j in 0..n {
                if x[j].is_zero() && S::EXACT {
                    continue;
                }
                for k in 0..n {
                    let c = g.structure_constant(j, i, k).clone();
                    if S::EXACT && c.is_zero() {
                        continue;
                    }
                    for l in 0..n {
                        acc = acc + x[j].clone() * c.clone() * gram[k][l].clone() * x[l].clone();
                    }
                }
            }
            acc
        })
        .collect()
}

pub fn max_abs<S: Scalar>(v: &[S]) -> f64 {
    v.iter().map(|x| x.to_f64().abs()).fold(0.0, f64::max)
}

/// Determinant by permutation expansion (rows of `m`).
pub fn det<S: Scalar>(m: &[Vec<S>]) -> S {
    let n = m.len();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut total = S::zero();
    permute(&mut perm, 0, m, &mut total);
    total
}

fn permute<S: Scalar>(perm: &mut Vec<usize>, k: usize, m: &[Vec<S>], total: &mut S) {
    let n = perm.len();
    if k == n {
        let mut inversions = 0;
        for a in 0..n {
            for b in a + 1..n {
                if perm[a] > perm[b] {
                    inversions += 1;
                }
            }
        }
        let mut p = S::one();
        for (r, &c) in perm.iter().enumerate() {
            p = p * m[r][c].clone();
        }
        *total = if inversions % 2 == 0 { total.clone() + p } else { total.clone() - p };
        return;
    }
    for i in k..n {
        perm.swap(k, i);
        permute(perm, k + 1, m, total);
        perm.swap(k, i);
    }
}

/// Column-normalized determinant of the vectors, in floats.
pub fn normalized_det(vectors: &[Vec<f64>]) -> f64 {
    let rows: Vec<Vec<f64>> = vectors
        .iter()
        .map(|v| {
            let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            v.iter().map(|x| x / norm).collect()
        })
        .collect();
    det(&rows)
}

/// Gram matrix as nested rows.
pub fn gram_rows<S: Scalar>(g: &geodesy_core::InnerProduct<S>) -> Vec<Vec<S>> {
    let n = g.dim();
    (0..n).map(|i| (0..n).map(|j| g.gram()[(i, j)].clone()).collect()).collect()
}

/// `⟨u, v⟩_G` in floats.
pub fn inner(gram: &[Vec<f64>], u: &[f64], v: &[f64]) -> f64 {
    let mut s = 0.0;
    for i in 0..u.len() {
        for j in 0..v.len() {
            s += u[i] * gram[i][j] * v[j];
        }
    }
    s
}

/// Checks a float construction from scratch: defect, independence, positive definiteness.
pub fn recheck_float(g: &LieAlgebra<f64>, gram: &[Vec<f64>], basis: &[Vec<f64>], tol: f64) -> Result<(), String> {
    let n = g.dim();
    if basis.len() != n {
        return Err(format!("{} vectors for dimension {n}", basis.len()));
    }
    for (i, v) in basis.iter().enumerate() {
        let d = max_abs(&defect(g, gram, v)) / (1.0 + inner(gram, v, v));
        if d > tol {
            return Err(format!("vector {i} has defect {d:e}"));
        }
    }
    let nd = normalized_det(basis).abs();
    if nd <= 1e-8 {
        return Err(format!("basis is degenerate, normalized det {nd:e}"));
    }
    for k in 1..=n {
        let minor: Vec<Vec<f64>> = gram[..k].iter().map(|r| r[..k].to_vec()).collect();
        if det(&minor) <= 0.0 {
            return Err(format!("leading minor {k} of the metric is not positive"));
        }
    }
    Ok(())
}

/// `max |G − I|`.
pub fn orthonormality_residual(gram: &[Vec<f64>], basis: &[Vec<f64>]) -> f64 {
    let mut worst = 0.0f64;
    for (i, u) in basis.iter().enumerate() {
        for (j, v) in basis.iter().enumerate() {
            let target = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((inner(gram, u, v) - target).abs());
        }
    }
    worst
}

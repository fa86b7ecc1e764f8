//! Seeded random families of algebras that satisfy the hypotheses of the constructors.

use nalgebra::DMatrix;
use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::algebra::{default_labels, LieAlgebra};
use crate::error::Result;
use crate::linalg::Matrix;
use crate::scalar::Surd;
use crate::subspace::Subspace;

fn int(v: i64) -> Surd {
    Surd::from_i64(v)
}

/// A random integer matrix with determinant ±1, and its inverse.
pub fn unimodular_pair<R: Rng + ?Sized>(k: usize, rng: &mut R) -> (Matrix<Surd>, Matrix<Surd>) {
    let mut p = Matrix::<Surd>::identity(k);
    let mut q = Matrix::<Surd>::identity(k);
    if k < 2 {
        return (p, q);
    }
    for _ in 0..2 * k {
        let i = rng.random_range(0..k);
        let mut j = rng.random_range(0..k - 1);
        if j >= i {
            j += 1;
        }
        let s: i64 = if rng.random_bool(0.5) { 1 } else { -1 };
        // p ← p·(I + s e_i e_jᵀ), q ← (I − s e_i e_jᵀ)·q
        for r in 0..k {
            let v = p[(r, j)].clone() + int(s) * p[(r, i)].clone();
            p[(r, j)] = v;
        }
        for c in 0..k {
            let v = q[(i, c)].clone() - int(s) * q[(j, c)].clone();
            q[(i, c)] = v;
        }
    }
    (p, q)
}

/// `m` commuting, linearly independent, trace-zero integer matrices of size `k`: a shared
/// block-diagonal shape (1×1 blocks and at most one rotation–dilation block) conjugated by a
/// unimodular integer matrix.
pub fn commuting_trace_zero<R: Rng + ?Sized>(k: usize, m: usize, rng: &mut R) -> Vec<Matrix<Surd>> {
    assert!(k >= 2, "need at least two dimensions");
    let rotation = k >= 3 && rng.random_bool(0.5);
    commuting(k, m, rotation, true, rng)
}

/// `m` commuting, linearly independent integer matrices of size `k`, diagonalizable over `R`.
pub fn commuting_real_diagonalizable<R: Rng + ?Sized>(k: usize, m: usize, rng: &mut R) -> Vec<Matrix<Surd>> {
    commuting(k, m, false, false, rng)
}

fn commuting<R: Rng + ?Sized>(k: usize, m: usize, rotation: bool, trace_zero: bool, rng: &mut R) -> Vec<Matrix<Surd>> {
    loop {
        let mut out = Vec::with_capacity(m);
        for _ in 0..m {
            let mut d = Matrix::<Surd>::zeros(k, k);
            let mut trace = 0i64;
            let mut start = 0;
            if rotation {
                let a = rng.random_range(-2..=2i64);
                let b = rng.random_range(1..=3i64);
                d[(0, 0)] = int(a);
                d[(1, 1)] = int(a);
                d[(0, 1)] = int(-b);
                d[(1, 0)] = int(b);
                trace += 2 * a;
                start = 2;
            }
            let last = if trace_zero { k - 1 } else { k };
            for i in start..last {
                let v = rng.random_range(-3..=3i64);
                d[(i, i)] = int(v);
                trace += v;
            }
            if trace_zero {
                d[(k - 1, k - 1)] = int(-trace);
            }
            out.push(d);
        }
        let flat: Vec<Vec<Surd>> = out.iter().map(|a| (0..k * k).map(|e| a[(e / k, e % k)].clone()).collect()).collect();
        if Subspace::span(k * k, &flat).dim() == m {
            let (p, q) = unimodular_pair(k, rng);
            return out.iter().map(|d| p.mul(d).mul(&q)).collect();
        }
    }
}

/// `t ⊕ R^k` with `t = span(Y_1..Y_m)` abelian and `[Y_a, X_j] = A_a X_j` (columns are images).
pub fn commuting_suspension(mats: &[Matrix<Surd>]) -> Result<LieAlgebra<Surd>> {
    let m = mats.len();
    let k = mats.first().map_or(0, |a| a.nrows());
    let mut labels: Vec<String> = (1..=m).map(|a| format!("Y{a}")).collect();
    labels.extend(default_labels(k, 1));
    let mut rels = Vec::new();
    for (a, mat) in mats.iter().enumerate() {
        for j in 0..k {
            let terms: Vec<(usize, Surd)> =
                (0..k).filter(|&i| !mat[(i, j)].is_zero()).map(|i| (m + i, mat[(i, j)].clone())).collect();
            if !terms.is_empty() {
                rels.push((a, m + j, terms));
            }
        }
    }
    LieAlgebra::from_brackets(labels, &rels)
}

/// A non-scalar integer `k×k` matrix with entries in `[-2, 2]`, optionally of trace zero.
pub fn non_scalar_matrix<R: Rng + ?Sized>(k: usize, trace_zero: bool, rng: &mut R) -> Matrix<Surd> {
    loop {
        let mut a = Matrix::from_fn(k, k, |_, _| int(rng.random_range(-2..=2i64)));
        if trace_zero {
            let t = a.trace() - a[(k - 1, k - 1)].clone();
            a[(k - 1, k - 1)] = -t;
        }
        let c = a[(0, 0)].clone();
        if !a.sub(&Matrix::identity(k).scale(&c)).is_zero() {
            return a;
        }
    }
}

/// `R^k` suspended by a random non-scalar matrix: an algebra with a codimension-one abelian ideal.
pub fn codim1_abelian<R: Rng + ?Sized>(k: usize, trace_zero: bool, rng: &mut R) -> Result<LieAlgebra<Surd>> {
    let a = non_scalar_matrix(k, trace_zero, rng);
    LieAlgebra::suspension(&LieAlgebra::abelian(k), &a, "X0")
}

/// `H_{2m+1}` with `[X_i, X_{i+m}] = X_{2m+1}`.
pub fn heisenberg(m: usize) -> Result<LieAlgebra<Surd>> {
    let n = 2 * m + 1;
    let rels: Vec<_> = (0..m).map(|i| (i, i + m, vec![(n - 1, int(1))])).collect();
    LieAlgebra::from_brackets(default_labels(n, 1), &rels)
}

/// `H_{2m+1}` suspended by a random derivation with `φ(z) = 0`: `φ = [[JS, 0], [v, 0]]` with `S`
/// symmetric, so the extension is unimodular.
pub fn unimodular_heisenberg_suspension<R: Rng + ?Sized>(m: usize, rng: &mut R) -> Result<LieAlgebra<Surd>> {
    let n = 2 * m + 1;
    let h = heisenberg(m)?;
    loop {
        let mut s = Matrix::<Surd>::zeros(2 * m, 2 * m);
        for i in 0..2 * m {
            for j in i..2 * m {
                let v = int(rng.random_range(-2..=2i64));
                s[(i, j)] = v.clone();
                s[(j, i)] = v;
            }
        }
        if s.is_zero() {
            continue;
        }
        // J = [[0, I], [−I, 0]] is the Gram matrix of the bracket form.
        let j = Matrix::from_fn(2 * m, 2 * m, |r, c| {
            if c == r + m {
                int(1)
            } else if r == c + m {
                int(-1)
            } else {
                Surd::zero()
            }
        });
        let b = j.mul(&s);
        let mut phi = Matrix::<Surd>::zeros(n, n);
        for r in 0..2 * m {
            for c in 0..2 * m {
                phi[(r, c)] = b[(r, c)].clone();
            }
        }
        for c in 0..2 * m {
            phi[(n - 1, c)] = int(rng.random_range(-2..=2i64));
        }
        if let Ok(g) = LieAlgebra::suspension(&h, &phi, "X0") {
            return Ok(g);
        }
    }
}

/// A random symmetric `n×n` matrix with zero trace.
pub fn trace_zero_symmetric<R: Rng + ?Sized>(n: usize, rng: &mut R) -> DMatrix<f64> {
    let a = DMatrix::<f64>::from_fn(n, n, |_, _| StandardNormal.sample(rng));
    let mut s = (&a + a.transpose()) * 0.5;
    let shift = s.trace() / n as f64;
    for i in 0..n {
        s[(i, i)] -= shift;
    }
    s
}

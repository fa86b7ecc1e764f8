//! Lie algebras given by structure constants, and their structural invariants.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{GeodesyError, Result};
use crate::linalg::{unit, Matrix};
use crate::scalar::Scalar;
use crate::subspace::Subspace;

/// Coordinates of an element in the algebra's basis.
pub type Vector<S> = Vec<S>;

/// A finite-dimensional real Lie algebra: `[e_i, e_j] = Σ_k c_{ij}^k e_k`.
#[derive(Clone, Debug, PartialEq)]
pub struct LieAlgebra<S> {
    labels: Vec<String>,
    /// `c[(i * n + j) * n + k] = c_{ij}^k`
    c: Vec<S>,
}

/// A failed structural identity, with 0-based indices.
#[derive(Clone, Debug, PartialEq)]
pub enum Violation {
    Antisymmetry { i: usize, j: usize, k: usize, residual: f64 },
    Jacobi { i: usize, j: usize, k: usize, l: usize, residual: f64 },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Antisymmetry { i, j, k, residual } => write!(
                f,
                "antisymmetry fails at (i,j,k)=({},{},{}): c_ij^k + c_ji^k = {residual:e}",
                i + 1,
                j + 1,
                k + 1
            ),
            Violation::Jacobi { i, j, k, l, residual } => write!(
                f,
                "Jacobi fails at (i,j,k)=({},{},{}) component {}: residual {residual:e}",
                i + 1,
                j + 1,
                k + 1,
                l + 1
            ),
        }
    }
}

/// `g/h` together with the data needed to move between `g` and the quotient.
#[derive(Clone, Debug)]
pub struct Quotient<S> {
    pub algebra: LieAlgebra<S>,
    pub ideal: Subspace<S>,
    /// Coordinates of `g` that survive in the quotient, in order.
    pub kept: Vec<usize>,
}

impl<S: Scalar> Quotient<S> {
    /// The projection `g → g/h`.
    pub fn project(&self, v: &[S]) -> Vec<S> {
        let r = self.ideal.reduce(v);
        self.kept.iter().map(|&i| r[i].clone()).collect()
    }

    /// The linear section `g/h → g` whose image is spanned by the kept unit vectors.
    pub fn section(&self, q: &[S]) -> Vec<S> {
        let mut v = vec![S::zero(); self.ideal.ambient()];
        for (x, &i) in q.iter().zip(&self.kept) {
            v[i] = x.clone();
        }
        v
    }
}

pub fn default_labels(n: usize, first: usize) -> Vec<String> {
    (0..n).map(|i| format!("X{}", i + first)).collect()
}

impl<S: Scalar> LieAlgebra<S> {
    /// The abelian algebra with the given basis labels.
    pub fn abelian_with_labels(labels: Vec<String>) -> Self {
        let n = labels.len();
        Self { labels, c: vec![S::zero(); n * n * n] }
    }

    pub fn abelian(n: usize) -> Self {
        Self::abelian_with_labels(default_labels(n, 1))
    }

    /// Raw tensor constructor; nothing is checked (see [`LieAlgebra::validate`]).
    pub fn from_tensor(labels: Vec<String>, c: Vec<S>) -> Result<Self> {
        let n = labels.len();
        if c.len() != n * n * n {
            return Err(GeodesyError::DimensionMismatch { expected: n * n * n, actual: c.len() });
        }
        Ok(Self { labels, c })
    }

    /// Build from brackets `[e_i, e_j] = Σ v e_k` (0-based), filling in antisymmetry.
    pub fn from_brackets(labels: Vec<String>, brackets: &[(usize, usize, Vec<(usize, S)>)]) -> Result<Self> {
        let mut g = Self::abelian_with_labels(labels);
        for (i, j, terms) in brackets {
            g.add_bracket(*i, *j, terms)?;
        }
        Ok(g)
    }

    fn add_bracket(&mut self, i: usize, j: usize, terms: &[(usize, S)]) -> Result<()> {
        let n = self.dim();
        for &(k, _) in terms {
            if i >= n || j >= n || k >= n {
                return Err(GeodesyError::DimensionMismatch { expected: n, actual: i.max(j).max(k) + 1 });
            }
        }
        if i == j {
            return Err(GeodesyError::Parse(format!("bracket [e{i}, e{i}] must vanish")));
        }
        for (k, v) in terms {
            let a = (i * n + j) * n + k;
            let b = (j * n + i) * n + k;
            self.c[a] = self.c[a].clone() + v.clone();
            self.c[b] = self.c[b].clone() - v.clone();
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.dim());
        self.labels = labels;
        self
    }

    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> &S {
        let n = self.dim();
        &self.c[(i * n + j) * n + k]
    }

    /// `[e_i, e_j]` as a coordinate vector.
    pub fn bracket_basis(&self, i: usize, j: usize) -> Vector<S> {
        let n = self.dim();
        self.c[(i * n + j) * n..(i * n + j + 1) * n].to_vec()
    }

    pub fn to_f64(&self) -> LieAlgebra<f64> {
        LieAlgebra { labels: self.labels.clone(), c: self.c.iter().map(S::to_f64).collect() }
    }

    fn check_len(&self, v: &[S]) -> Result<()> {
        if v.len() != self.dim() {
            return Err(GeodesyError::DimensionMismatch { expected: self.dim(), actual: v.len() });
        }
        Ok(())
    }

    /// All antisymmetry and Jacobi violations; empty for a genuine Lie algebra.
    pub fn validate(&self) -> Vec<Violation> {
        let n = self.dim();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i..n {
                for k in 0..n {
                    let s = self.structure_constant(i, j, k).clone() + self.structure_constant(j, i, k).clone();
                    if !s.is_zero() {
                        out.push(Violation::Antisymmetry { i, j, k, residual: s.to_f64() });
                    }
                }
            }
        }
        let basis: Vec<Vec<Vec<S>>> = (0..n).map(|i| (0..n).map(|j| self.bracket_basis(i, j)).collect()).collect();
        // [[e_i,e_j],e_k] = Σ_m c_ij^m [e_m, e_k]
        let nested = |i: usize, j: usize, k: usize| -> Vec<S> {
            let mut acc = vec![S::zero(); n];
            for (m, cm) in basis[i][j].iter().enumerate() {
                if cm.is_zero() {
                    continue;
                }
                for (a, x) in acc.iter_mut().zip(&basis[m][k]) {
                    *a = a.clone() + cm.clone() * x.clone();
                }
            }
            acc
        };
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let a = nested(i, j, k);
                    let b = nested(j, k, i);
                    let c = nested(k, i, j);
                    for l in 0..n {
                        let s = a[l].clone() + b[l].clone() + c[l].clone();
                        if !s.is_zero() {
                            out.push(Violation::Jacobi { i, j, k, l, residual: s.to_f64() });
                        }
                    }
                }
            }
        }
        out
    }

    pub fn bracket(&self, x: &[S], y: &[S]) -> Result<Vector<S>> {
        self.check_len(x)?;
        self.check_len(y)?;
        Ok(self.bracket_unchecked(x, y))
    }

    pub(crate) fn bracket_unchecked(&self, x: &[S], y: &[S]) -> Vector<S> {
        let n = self.dim();
        let mut out = vec![S::zero(); n];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() && S::EXACT {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if i == j {
                    continue;
                }
                let w = xi.clone() * yj.clone();
                if w == S::zero() {
                    continue;
                }
                let base = (i * n + j) * n;
                for (k, o) in out.iter_mut().enumerate() {
                    let c = &self.c[base + k];
                    if *c != S::zero() {
                        *o = o.clone() + w.clone() * c.clone();
                    }
                }
            }
        }
        out
    }

    /// Matrix of `ad(X)`: column `j` is `[X, e_j]`.
    pub fn ad_matrix(&self, x: &[S]) -> Result<Matrix<S>> {
        self.check_len(x)?;
        let n = self.dim();
        let cols: Vec<Vec<S>> = (0..n).map(|j| self.bracket_unchecked(x, &unit(n, j))).collect();
        Ok(Matrix::from_columns(&cols))
    }

    pub fn ad_basis(&self, i: usize) -> Matrix<S> {
        let n = self.dim();
        let cols: Vec<Vec<S>> = (0..n).map(|j| self.bracket_basis(i, j)).collect();
        Matrix::from_columns(&cols)
    }

    /// `[A, B]` for subspaces `A`, `B`.
    pub fn bracket_span(&self, a: &Subspace<S>, b: &Subspace<S>) -> Subspace<S> {
        let mut vs = Vec::new();
        for x in a.basis() {
            for y in b.basis() {
                vs.push(self.bracket_unchecked(x, y));
            }
        }
        Subspace::span(self.dim(), &vs)
    }

    pub fn derived_subalgebra(&self) -> Subspace<S> {
        let full = Subspace::full(self.dim());
        self.bracket_span(&full, &full)
    }

    /// `g ⊇ g' ⊇ g'' ⊇ …` until it stabilizes.
    pub fn derived_series(&self) -> Vec<Subspace<S>> {
        let mut series = vec![Subspace::full(self.dim())];
        loop {
            let last = series.last().unwrap();
            let next = self.bracket_span(last, last);
            if next.dim() == last.dim() {
                return series;
            }
            series.push(next);
        }
    }

    /// `g ⊇ [g,g] ⊇ [g,[g,g]] ⊇ …` until it stabilizes.
    pub fn lower_central_series(&self) -> Vec<Subspace<S>> {
        let full = Subspace::full(self.dim());
        let mut series = vec![full.clone()];
        loop {
            let last = series.last().unwrap();
            let next = self.bracket_span(&full, last);
            if next.dim() == last.dim() {
                return series;
            }
            series.push(next);
        }
    }

    pub fn is_abelian(&self) -> bool {
        self.c.iter().all(Scalar::is_zero)
    }

    pub fn is_solvable(&self) -> bool {
        self.derived_series().last().is_some_and(|s| s.dim() == 0)
    }

    pub fn is_nilpotent(&self) -> bool {
        self.lower_central_series().last().is_some_and(|s| s.dim() == 0)
    }

    /// Null space of `X ↦ ad(X)` flattened to an `n²`-vector.
    pub fn center(&self) -> Subspace<S> {
        let n = self.dim();
        // row (j, k): Σ_i X_i c_ij^k = 0
        let rows: Vec<Vec<S>> = (0..n)
            .flat_map(|j| (0..n).map(move |k| (j, k)))
            .map(|(j, k)| (0..n).map(|i| self.structure_constant(i, j, k).clone()).collect())
            .collect();
        if n == 0 {
            return Subspace::zero(0);
        }
        Subspace::span(n, &Matrix::from_rows(&rows).nullspace())
    }

    /// The covector `χ(X) = Tr ad(X)`.
    pub fn trace_character(&self) -> Vector<S> {
        (0..self.dim()).map(|i| self.ad_basis(i).trace()).collect()
    }

    pub fn is_unimodular(&self) -> bool {
        self.trace_character().iter().all(Scalar::is_zero)
    }

    pub fn unimodular_kernel(&self) -> Subspace<S> {
        let chi = self.trace_character();
        if chi.iter().all(Scalar::is_zero) {
            return Subspace::full(self.dim());
        }
        Subspace::span(self.dim(), Subspace::span(self.dim(), &[chi]).annihilator().basis())
    }

    /// `B(X, Y) = Tr(ad X ad Y)` in the coordinate basis.
    pub fn killing_form(&self) -> Matrix<S> {
        let n = self.dim();
        let ads: Vec<Matrix<S>> = (0..n).map(|i| self.ad_basis(i)).collect();
        Matrix::from_fn(n, n, |i, j| ads[i].mul(&ads[j]).trace())
    }

    pub fn is_subalgebra(&self, h: &Subspace<S>) -> bool {
        h.contains_subspace(&self.bracket_span(h, h))
    }

    pub fn is_ideal(&self, h: &Subspace<S>) -> bool {
        h.contains_subspace(&self.bracket_span(&Subspace::full(self.dim()), h))
    }

    /// Structure of a subalgebra in its echelon basis.
    pub fn subalgebra(&self, h: &Subspace<S>) -> Result<LieAlgebra<S>> {
        let r = h.dim();
        let labels = (0..r).map(|i| format!("h{}", i + 1)).collect();
        let mut sub = LieAlgebra::abelian_with_labels(labels);
        for a in 0..r {
            for b in a + 1..r {
                let br = self.bracket_unchecked(&h.basis()[a], &h.basis()[b]);
                let coords = h.coordinates(&br).ok_or_else(|| {
                    GeodesyError::hypothesis("subspace is a subalgebra", "bracket leaves the subspace")
                })?;
                let terms: Vec<(usize, S)> =
                    coords.into_iter().enumerate().filter(|(_, v)| !v.is_zero()).collect();
                sub.add_bracket(a, b, &terms)?;
            }
        }
        Ok(sub)
    }

    pub fn quotient_by_ideal(&self, h: &Subspace<S>) -> Result<Quotient<S>> {
        if h.ambient() != self.dim() {
            return Err(GeodesyError::DimensionMismatch { expected: self.dim(), actual: h.ambient() });
        }
        if !self.is_ideal(h) {
            return Err(GeodesyError::NotAnIdeal);
        }
        let kept = h.complement_indices();
        let labels = kept.iter().map(|&i| self.labels[i].clone()).collect();
        let mut q = Quotient { algebra: LieAlgebra::abelian_with_labels(labels), ideal: h.clone(), kept };
        let n = self.dim();
        for (a, &i) in q.kept.clone().iter().enumerate() {
            for (b, &j) in q.kept.clone().iter().enumerate().skip(a + 1) {
                let br = self.bracket_unchecked(&unit(n, i), &unit(n, j));
                let terms: Vec<(usize, S)> =
                    q.project(&br).into_iter().enumerate().filter(|(_, v)| !v.is_zero()).collect();
                q.algebra.add_bracket(a, b, &terms)?;
            }
        }
        Ok(q)
    }

    /// Whether `phi` (acting on column vectors) is a derivation.
    pub fn is_derivation(&self, phi: &Matrix<S>) -> bool {
        let n = self.dim();
        if phi.nrows() != n || phi.ncols() != n {
            return false;
        }
        for i in 0..n {
            for j in i + 1..n {
                let (ei, ej) = (unit(n, i), unit(n, j));
                let lhs = phi.mul_vec(&self.bracket_unchecked(&ei, &ej));
                let r1 = self.bracket_unchecked(&phi.column(i), &ej);
                let r2 = self.bracket_unchecked(&ei, &phi.column(j));
                if lhs.iter().zip(r1.iter().zip(&r2)).any(|(l, (a, b))| !(l.clone() - a.clone() - b.clone()).is_zero()) {
                    return false;
                }
            }
        }
        true
    }

    /// `h_φ`: a new first generator `X` with `[X, Y] = φ(Y)` for `Y ∈ h`.
    pub fn suspension(h: &LieAlgebra<S>, phi: &Matrix<S>, label: &str) -> Result<LieAlgebra<S>> {
        if !h.is_derivation(phi) {
            return Err(GeodesyError::NotADerivation("φ[X,Y] ≠ [φX,Y] + [X,φY]".into()));
        }
        let r = h.dim();
        let mut labels = vec![label.to_string()];
        labels.extend(h.labels.iter().cloned());
        let mut g = LieAlgebra::abelian_with_labels(labels);
        for j in 0..r {
            let terms: Vec<(usize, S)> = phi
                .column(j)
                .into_iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(k, v)| (k + 1, v))
                .collect();
            g.add_bracket(0, j + 1, &terms)?;
        }
        for a in 0..r {
            for b in a + 1..r {
                let terms: Vec<(usize, S)> = h
                    .bracket_basis(a, b)
                    .into_iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .map(|(k, v)| (k + 1, v))
                    .collect();
                g.add_bracket(a + 1, b + 1, &terms)?;
            }
        }
        Ok(g)
    }

    pub fn direct_sum(a: &LieAlgebra<S>, b: &LieAlgebra<S>) -> LieAlgebra<S> {
        let (na, nb) = (a.dim(), b.dim());
        let mut labels = a.labels.clone();
        labels.extend(b.labels.iter().cloned());
        let mut g = LieAlgebra::abelian_with_labels(labels);
        let n = na + nb;
        for i in 0..na {
            for j in 0..na {
                for k in 0..na {
                    g.c[(i * n + j) * n + k] = a.structure_constant(i, j, k).clone();
                }
            }
        }
        for i in 0..nb {
            for j in 0..nb {
                for k in 0..nb {
                    g.c[((i + na) * n + j + na) * n + k + na] = b.structure_constant(i, j, k).clone();
                }
            }
        }
        g
    }

    /// The nilradical of a solvable algebra.
    ///
    /// Over `ℂ` the adjoint representation is triangularizable with diagonal weights
    /// `λ_1, …, λ_n`, and the nilradical is `∩ ker λ_i`. Since
    /// `Tr(ad X · ad(Y)^k) = Σ λ_i(X) λ_i(Y)^k`, every row `X ↦ Tr(ad X · ad(Y)^k)` is a linear
    /// constraint satisfied by the nilradical, and for generic `Y` (`k < n`) the constraints cut
    /// out exactly `∩ ker λ_i`. The candidate is accepted once it is a nilpotent ideal, which
    /// forces equality.
    pub fn nilradical_solvable(&self) -> Result<Subspace<S>> {
        if !self.is_solvable() {
            return Err(GeodesyError::NotSolvable);
        }
        let n = self.dim();
        if n == 0 || self.is_nilpotent() {
            return Ok(Subspace::full(n));
        }
        let ads: Vec<Matrix<S>> = (0..n).map(|i| self.ad_basis(i)).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(0x6e69_6c72);
        let mut rows: Vec<Vec<S>> = Vec::new();
        for attempt in 0..(2 * n + 6) {
            let y: Vec<S> = (0..n).map(|_| S::from_i64(rng.random_range(-3..=3))).collect();
            let ad_y = self.ad_matrix(&y)?;
            let mut power = Matrix::identity(n);
            for _ in 0..n {
                let row: Vec<S> = ads.iter().map(|a| trace_of_product(a, &power)).collect();
                let scale = row.iter().map(Scalar::abs_f64).fold(0.0, f64::max);
                if scale > 0.0 {
                    rows.push(match S::from_f64(scale) {
                        Some(s) => row.iter().map(|v| v.clone() / s.clone()).collect(),
                        None => row,
                    });
                }
                power = power.mul(&ad_y);
            }
            if attempt == 0 {
                continue;
            }
            let candidate = Subspace::span(n, &Matrix::from_rows(&rows).nullspace());
            if self.is_ideal(&candidate)
                && self.subalgebra(&candidate).is_ok_and(|s| s.is_nilpotent())
                && candidate.contains_subspace(&self.derived_subalgebra())
            {
                return Ok(candidate);
            }
        }
        Err(GeodesyError::NumericalFailure("nilradical constraints did not converge to a nilpotent ideal".into()))
    }
}

fn trace_of_product<S: Scalar>(a: &Matrix<S>, b: &Matrix<S>) -> S {
    let n = a.nrows();
    let mut acc = S::zero();
    for i in 0..n {
        for k in 0..n {
            let x = &a[(i, k)];
            if *x == S::zero() {
                continue;
            }
            acc = acc + x.clone() * b[(k, i)].clone();
        }
    }
    acc
}

use crate::linalg::{dot, Matrix};
use crate::scalar::Scalar;

/// Linear subspace of `S^n` stored as the nonzero rows of its reduced row echelon form.
///
/// The echelon form is canonical, so two spans of the same space compare equal.
#[derive(Clone, Debug)]
pub struct Subspace<S> {
    ambient: usize,
    rows: Vec<Vec<S>>,
    pivots: Vec<usize>,
}

impl<S: Scalar> Subspace<S> {
    pub fn span(ambient: usize, vectors: &[Vec<S>]) -> Self {
        if vectors.is_empty() {
            return Self::zero(ambient);
        }
        let (r, pivots) = Matrix::from_rows(vectors).rref();
        let rows = (0..pivots.len()).map(|i| r.row(i)).collect();
        Self { ambient, rows, pivots }
    }

    pub fn zero(ambient: usize) -> Self {
        Self { ambient, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        let rows = (0..ambient).map(|i| crate::linalg::unit(ambient, i)).collect();
        Self { ambient, rows, pivots: (0..ambient).collect() }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn codim(&self) -> usize {
        self.ambient - self.dim()
    }

    pub fn basis(&self) -> &[Vec<S>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Coordinates not used as pivots; the matching unit vectors span a complement.
    pub fn complement_indices(&self) -> Vec<usize> {
        (0..self.ambient).filter(|c| !self.pivots.contains(c)).collect()
    }

    /// `v − Σ v[p_k] row_k`; zero exactly when `v` lies in the subspace.
    pub fn reduce(&self, v: &[S]) -> Vec<S> {
        let mut out = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let f = out[p].clone();
            if f == S::zero() {
                continue;
            }
            for (o, x) in out.iter_mut().zip(row) {
                *o = o.clone() - f.clone() * x.clone();
            }
        }
        out
    }

    pub fn contains(&self, v: &[S]) -> bool {
        self.reduce(v).iter().all(Scalar::is_zero)
    }

    /// Coefficients of `v` in the echelon basis, if `v` lies in the subspace.
    pub fn coordinates(&self, v: &[S]) -> Option<Vec<S>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    pub fn contains_subspace(&self, other: &Self) -> bool {
        other.rows.iter().all(|r| self.contains(r))
    }

    pub fn sum(&self, other: &Self) -> Self {
        let mut all = self.rows.clone();
        all.extend(other.rows.iter().cloned());
        Self::span(self.ambient, &all)
    }

    /// Euclidean annihilator `{x : ⟨x, r⟩ = 0 for every row r}`.
    pub fn annihilator(&self) -> Self {
        if self.rows.is_empty() {
            return Self::full(self.ambient);
        }
        let ns = Matrix::from_rows(&self.rows).nullspace();
        Self::span(self.ambient, &ns)
    }

    pub fn intersection(&self, other: &Self) -> Self {
        self.annihilator().sum(&other.annihilator()).annihilator()
    }

    /// Orthogonal complement with respect to the Gram matrix `gram`.
    pub fn perp(&self, gram: &Matrix<S>) -> Self {
        if self.rows.is_empty() {
            return Self::full(self.ambient);
        }
        let constraints: Vec<Vec<S>> = self
            .rows
            .iter()
            .map(|r| gram.transpose().mul_vec(r))
            .collect();
        Self::span(self.ambient, &Matrix::from_rows(&constraints).nullspace())
    }

    pub fn to_f64(&self) -> Subspace<f64> {
        Subspace {
            ambient: self.ambient,
            rows: self.rows.iter().map(|r| r.iter().map(S::to_f64).collect()).collect(),
            pivots: self.pivots.clone(),
        }
    }

    /// Whether the Euclidean inner product of `v` with the subspace vanishes.
    pub fn is_orthogonal_to(&self, v: &[S]) -> bool {
        self.rows.iter().all(|r| dot(r, v).is_zero())
    }
}

impl<S: Scalar> PartialEq for Subspace<S> {
    fn eq(&self, other: &Self) -> bool {
        self.ambient == other.ambient
            && self.pivots == other.pivots
            && self
                .rows
                .iter()
                .zip(&other.rows)
                .all(|(a, b)| a.iter().zip(b).all(|(x, y)| (x.clone() - y.clone()).is_zero()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Surd;
    use proptest::prelude::*;

    fn v(xs: &[i64]) -> Vec<Surd> {
        xs.iter().map(|&x| Surd::from_i64(x)).collect()
    }

    #[test]
    fn sum_and_intersection() {
        let a = Subspace::span(3, &[v(&[1, 0, 0]), v(&[0, 1, 0])]);
        let b = Subspace::span(3, &[v(&[0, 1, 0]), v(&[0, 0, 1])]);
        assert_eq!(a.intersection(&b), Subspace::span(3, &[v(&[0, 5, 0])]));
        assert_eq!(a.sum(&b), Subspace::full(3));
        assert!(a.contains(&v(&[3, -2, 0])));
        assert!(!a.contains(&v(&[0, 0, 1])));
        assert_eq!(a.complement_indices(), vec![2]);
    }

    #[test]
    fn perp_with_gram() {
        let gram = Matrix::from_rows(&[v(&[2, 1]), v(&[1, 1])]);
        let line = Subspace::span(2, &[v(&[1, 0])]);
        let p = line.perp(&gram);
        // (1,0) G x = 2x1 + x2 = 0
        assert_eq!(p, Subspace::span(2, &[v(&[1, -2])]));
    }

    proptest! {
        #[test]
        fn echelon_form_is_canonical(
            vecs in prop::collection::vec(prop::collection::vec(-4i64..5, 4), 1..5),
            mix in prop::collection::vec(-3i64..4, 16),
        ) {
            let vs: Vec<Vec<Surd>> = vecs.iter().map(|x| v(x)).collect();
            let a = Subspace::span(4, &vs);
            // Reverse the order and add random combinations of the originals.
            let mut shuffled: Vec<Vec<Surd>> = vs.iter().rev().cloned().collect();
            let combo = vs.iter().zip(mix.iter()).fold(vec![Surd::zero(); 4], |acc, (x, &c)| {
                crate::linalg::add(&acc, &crate::linalg::scale(&Surd::from_i64(c), x))
            });
            shuffled.push(combo);
            let b = Subspace::span(4, &shuffled);
            prop_assert!(a == b);
            prop_assert!(b == a);
            prop_assert!(a == a.clone());
        }
    }
}

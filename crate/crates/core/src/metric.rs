use nalgebra::DMatrix;
use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{GeodesyError, Result};
use crate::linalg::{dot, to_dmatrix, Matrix};
use crate::scalar::Scalar;

/// Leading principal minors must exceed this in float mode.
pub const FLOAT_MINOR_TOL: f64 = 1e-12;

/// A symmetric positive-definite Gram matrix over the algebra's basis.
#[derive(Clone, Debug, PartialEq)]
pub struct InnerProduct<S> {
    gram: Matrix<S>,
}

impl<S: Scalar> InnerProduct<S> {
    pub fn new(gram: Matrix<S>) -> Result<Self> {
        let n = gram.nrows();
        if gram.ncols() != n {
            return Err(GeodesyError::DimensionMismatch { expected: n, actual: gram.ncols() });
        }
        for i in 0..n {
            for j in i + 1..n {
                if !(gram[(i, j)].clone() - gram[(j, i)].clone()).is_zero() {
                    return Err(GeodesyError::NotPositiveDefinite(format!("not symmetric at ({}, {})", i + 1, j + 1)));
                }
            }
        }
        for k in 1..=n {
            let minor = Matrix::from_fn(k, k, |i, j| gram[(i, j)].clone()).determinant();
            let ok = if S::EXACT { !minor.is_zero() && minor.to_f64() > 0.0 } else { minor.to_f64() > FLOAT_MINOR_TOL };
            if !ok {
                return Err(GeodesyError::NotPositiveDefinite(format!("leading minor {k} is {:e}", minor.to_f64())));
            }
        }
        Ok(Self { gram })
    }

    pub fn identity(n: usize) -> Self {
        Self { gram: Matrix::identity(n) }
    }

    /// The inner product for which the columns of `vectors` are orthonormal: `P⁻ᵀ P⁻¹`.
    pub fn orthonormalizing(vectors: &[Vec<S>]) -> Result<Self> {
        let p = Matrix::from_columns(vectors);
        let inv = p
            .inverse()
            .ok_or_else(|| GeodesyError::NotPositiveDefinite("vectors are linearly dependent".into()))?;
        Self::new(inv.transpose().mul(&inv))
    }

    pub fn gram(&self) -> &Matrix<S> {
        &self.gram
    }

    pub fn dim(&self) -> usize {
        self.gram.nrows()
    }

    pub fn inner(&self, x: &[S], y: &[S]) -> S {
        dot(x, &self.gram.mul_vec(y))
    }

    pub fn to_f64(&self) -> InnerProduct<f64> {
        InnerProduct { gram: self.gram.to_f64() }
    }
}

impl InnerProduct<f64> {
    /// Accepts a float Gram matrix after symmetrizing away rounding noise.
    pub fn from_dmatrix(g: &DMatrix<f64>) -> Result<Self> {
        let sym = (g + g.transpose()) * 0.5;
        Self::new(crate::linalg::from_dmatrix(&sym))
    }

    pub fn to_dmatrix(&self) -> DMatrix<f64> {
        to_dmatrix(&self.gram)
    }

    pub fn norm(&self, x: &[f64]) -> f64 {
        self.inner(x, x).max(0.0).sqrt()
    }

    /// `Qᵀ diag(d) Q` with Haar-ish random orthogonal `Q` and eigenvalues uniform in `[lo, hi]`.
    pub fn random<R: Rng + ?Sized>(n: usize, lo: f64, hi: f64, rng: &mut R) -> Self {
        let a = DMatrix::<f64>::from_fn(n, n, |_, _| StandardNormal.sample(rng));
        let q = a.qr().q();
        let d = DMatrix::from_diagonal(&nalgebra::DVector::from_fn(n, |_, _| rng.random_range(lo..=hi)));
        let g = q.transpose() * d * q;
        Self::from_dmatrix(&g).expect("random SPD matrix")
    }
}

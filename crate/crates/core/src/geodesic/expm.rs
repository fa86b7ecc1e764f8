use nalgebra::{DMatrix, DVector};

use crate::algebra::LieAlgebra;
use crate::error::Result;
use crate::linalg::to_dmatrix;
use crate::metric::InnerProduct;

/// Matrix exponential by scaling and squaring with a truncated Taylor series.
pub fn expm(a: &DMatrix<f64>) -> DMatrix<f64> {
    let n = a.nrows();
    let norm = a.iter().map(|x| x.abs()).sum::<f64>().max(0.0);
    let mut s = 0u32;
    while norm / f64::from(1u32 << s.min(31)) > 0.5 && s < 60 {
        s += 1;
    }
    let scaled = a / 2f64.powi(s as i32);
    let mut term = DMatrix::<f64>::identity(n, n);
    let mut sum = term.clone();
    for k in 1..=20 {
        term = &term * &scaled / k as f64;
        sum += &term;
        if term.amax() < 1e-18 * sum.amax() {
            break;
        }
    }
    for _ in 0..s {
        sum = &sum * &sum;
    }
    sum
}

/// `|(f(h) − f(−h)) / 2h − 2⟨[X, Z], Z⟩|` where `f(t) = ‖exp(t·ad X) Z‖²`.
pub fn orbit_derivative_check(
    g: &LieAlgebra<f64>,
    metric: &InnerProduct<f64>,
    x: &[f64],
    z: &[f64],
    h: f64,
) -> Result<f64> {
    let ad = to_dmatrix(&g.ad_matrix(x)?);
    let zv = DVector::from_column_slice(z);
    let gram = metric.to_dmatrix();
    let f = |t: f64| {
        let w = expm(&(&ad * t)) * &zv;
        w.dot(&(&gram * &w))
    };
    let fd = (f(h) - f(-h)) / (2.0 * h);
    let analytic = 2.0 * metric.inner(&g.bracket(x, z)?, z);
    Ok((fd - analytic).abs())
}

use nalgebra::{DMatrix, DVector};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::algebra::LieAlgebra;
use crate::error::{GeodesyError, Result};
use crate::linalg::{svd_rank, to_dmatrix};
use crate::metric::InnerProduct;
use crate::scalar::Scalar;

const NEWTON_ITERS: usize = 50;
const POLISH_ITERS: usize = 80;
const STEP_TOL: f64 = 1e-15;
const CONVERGED: f64 = 1e-10;
const DEDUP: f64 = 1e-6;
/// Singular-value cutoff (relative) for [`span_rank`].
pub const SPAN_RANK_TOL: f64 = 1e-6;

/// Random geodesic elements of unit length, found by Gauss–Newton on
/// `F(X) = (⟨X,[X,e_1]⟩, …, ⟨X,[X,e_n]⟩, ‖X‖² − 1)` from Gaussian starts.
pub fn sample_geodesics(g: &LieAlgebra<f64>, metric: &InnerProduct<f64>, trials: usize, seed: u64) -> Vec<Vec<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    sample_with_rng(g, metric, trials, &mut rng)
}

fn sample_with_rng(g: &LieAlgebra<f64>, metric: &InnerProduct<f64>, trials: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<f64>> {
    let n = g.dim();
    let gram = metric.to_dmatrix();
    // defect_i(X) = Xᵀ G ad(X) e_i = −Xᵀ G ad(e_i) X
    let ads: Vec<DMatrix<f64>> = (0..n).map(|i| to_dmatrix(&g.ad_basis(i))).collect();
    let quads: Vec<DMatrix<f64>> = ads.iter().map(|a| -(&gram * a)).collect();
    let mut out: Vec<DVector<f64>> = Vec::new();
    for _ in 0..trials {
        let start = DVector::<f64>::from_fn(n, |_, _| StandardNormal.sample(rng));
        let norm = start.dot(&(&gram * &start)).sqrt();
        if norm == 0.0 {
            continue;
        }
        let Some(x) = newton(&ads, &quads, &gram, start / norm) else { continue };
        let unit = &x / x.dot(&(&gram * &x)).sqrt();
        let dup = out.iter().any(|y| (y - &unit).norm() <= DEDUP || (y + &unit).norm() <= DEDUP);
        if !dup {
            out.push(unit);
        }
    }
    out.into_iter().map(|v| v.iter().copied().collect()).collect()
}

/// Double-double accumulator: `hi + lo` carries about 32 significant digits.
#[derive(Clone, Copy, Default)]
struct Dd {
    hi: f64,
    lo: f64,
}

impl Dd {
    fn two_sum(a: f64, b: f64) -> (f64, f64) {
        let s = a + b;
        let bb = s - a;
        (s, (a - (s - bb)) + (b - bb))
    }

    fn normalize(hi: f64, lo: f64) -> Dd {
        let s = hi + lo;
        Dd { hi: s, lo: lo - (s - hi) }
    }

    fn add(self, o: Dd) -> Dd {
        let (s, e) = Self::two_sum(self.hi, o.hi);
        Self::normalize(s, e + self.lo + o.lo)
    }

    fn mul_f64(self, b: f64) -> Dd {
        let p = self.hi * b;
        let e = self.hi.mul_add(b, -p);
        Self::normalize(p, e + self.lo * b)
    }

    fn dot(a: &[f64], b: &[Dd]) -> Dd {
        a.iter().zip(b).fold(Dd::default(), |acc, (x, y)| acc.add(y.mul_f64(*x)))
    }
}

/// `F(X)` with every product accumulated in double-double, so that roots where `F` vanishes to
/// second order can still be located to near machine precision.
fn residual(ads: &[DMatrix<f64>], gram: &DMatrix<f64>, x: &DVector<f64>) -> DVector<f64> {
    let n = x.len();
    let xs: Vec<f64> = x.iter().copied().collect();
    let xd: Vec<Dd> = xs.iter().map(|&v| Dd { hi: v, lo: 0.0 }).collect();
    let rows: Vec<Vec<f64>> = (0..n).map(|r| gram.row(r).iter().copied().collect()).collect();
    let metric_apply = |y: &[Dd]| -> Vec<Dd> { rows.iter().map(|r| Dd::dot(r, y)).collect() };
    let gx = metric_apply(&xd);
    DVector::from_fn(n + 1, |i, _| {
        if i < n {
            let ad = &ads[i];
            let y: Vec<Dd> =
                (0..n).map(|r| Dd::dot(&ad.row(r).iter().copied().collect::<Vec<_>>(), &xd)).collect();
            // −Xᵀ G ad(e_i) X = −(G X)ᵀ (ad(e_i) X)
            let v = gx.iter().zip(&y).fold(Dd::default(), |acc, (a, b)| {
                let p = b.mul_f64(a.hi).add(Dd { hi: b.hi * a.lo, lo: 0.0 });
                acc.add(p)
            });
            -(v.hi + v.lo)
        } else {
            let v = Dd::dot(&xs, &gx).add(Dd { hi: -1.0, lo: 0.0 });
            v.hi + v.lo
        }
    })
}

/// Gauss–Newton to `CONVERGED`, then polishing until the step vanishes. Where the Jacobian drops
/// rank the iteration converges only linearly while the residual already sits at rounding level,
/// so the stopping rule looks at the step, not the residual.
fn newton(ads: &[DMatrix<f64>], quads: &[DMatrix<f64>], gram: &DMatrix<f64>, mut x: DVector<f64>) -> Option<DVector<f64>> {
    let n = x.len();
    let mut converged_at = None;
    for it in 0..NEWTON_ITERS + POLISH_ITERS {
        let f = residual(ads, gram, &x);
        let fnorm = f.norm();
        if fnorm <= CONVERGED && converged_at.is_none() {
            converged_at = Some(it);
        }
        if converged_at.is_none() && it >= NEWTON_ITERS {
            return None;
        }
        if fnorm == 0.0 {
            break;
        }
        let mut jac = DMatrix::<f64>::zeros(n + 1, n);
        for i in 0..n {
            let grad = (&quads[i] + quads[i].transpose()) * &x;
            jac.set_row(i, &grad.transpose());
        }
        jac.set_row(n, &((gram * &x) * 2.0).transpose());
        let svd = jac.svd(true, true);
        let Ok(step) = svd.solve(&f, 1e-12 * svd.singular_values.max().max(1e-300)) else { break };
        let next = &x - &step;
        if !next.iter().all(|v| v.is_finite()) {
            break;
        }
        x = next;
        if converged_at.is_some() && step.norm() <= STEP_TOL * x.norm() {
            break;
        }
    }
    (residual(ads, gram, &x).norm() <= CONVERGED).then_some(x)
}

/// Numerical rank of the span of `samples` (relative singular-value cutoff `SPAN_RANK_TOL`).
pub fn span_rank(samples: &[Vec<f64>]) -> usize {
    if samples.is_empty() {
        return 0;
    }
    let n = samples[0].len();
    let m = DMatrix::from_fn(samples.len(), n, |i, j| samples[i][j]);
    svd_rank(&m, SPAN_RANK_TOL)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ObstructionKind {
    /// `g ≅ A_n`: every geodesic element is orthogonal to `g′`.
    An,
    /// Codimension-one Heisenberg ideal with `[Y, z] = λz`, `λ ≠ 0`: geodesics are orthogonal to `z`.
    HeisenbergNonunimodular,
    /// Sampling only.
    SearchEvidence,
}

impl ObstructionKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ObstructionKind::An => "A_n",
            ObstructionKind::HeisenbergNonunimodular => "heisenberg_nonunimodular",
            ObstructionKind::SearchEvidence => "search_evidence",
        }
    }
}

/// How much random search backs an obstruction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    pub metrics: usize,
    pub trials: usize,
    pub seed: u64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self { metrics: 20, trials: 25, seed: 42 }
    }
}

/// Evidence that geodesic elements live in a proper subspace.
#[derive(Clone, Debug, PartialEq)]
pub struct ObstructionCertificate {
    pub kind: ObstructionKind,
    /// Every geodesic element is orthogonal to each of these (empty for search evidence).
    pub witnesses: Vec<Vec<f64>>,
    pub metrics: usize,
    pub trials: usize,
    pub samples: usize,
    pub max_span_rank: usize,
    /// Largest `|⟨sample, w⟩| / ‖w‖` over samples and witnesses.
    pub max_witness_pairing: f64,
    pub detail: String,
}

impl ObstructionCertificate {
    /// Tolerance on witness pairings.
    pub const PAIRING_TOL: f64 = 1e-8;

    pub fn holds(&self, dim: usize) -> bool {
        self.max_span_rank < dim.max(1) && self.max_witness_pairing <= Self::PAIRING_TOL
    }
}

/// Checks the shape hypotheses of `kind`, then samples geodesics under `metric` and
/// `config.metrics − 1` further random metrics.
pub fn obstruction_certificate<S: Scalar>(
    g: &LieAlgebra<S>,
    metric: &InnerProduct<f64>,
    kind: ObstructionKind,
    config: SearchConfig,
) -> Result<ObstructionCertificate> {
    let n = g.dim();
    let (witnesses, detail) = match kind {
        ObstructionKind::An => an_shape(g)?,
        ObstructionKind::HeisenbergNonunimodular => heisenberg_shape(g)?,
        ObstructionKind::SearchEvidence => (Vec::new(), "random search".to_string()),
    };
    let gf = g.to_f64();
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut max_rank = 0;
    let mut total = 0;
    let mut worst = 0.0f64;
    for k in 0..config.metrics.max(1) {
        let m = if k == 0 { metric.clone() } else { InnerProduct::random(n, 0.25, 4.0, &mut rng) };
        let samples = sample_with_rng(&gf, &m, config.trials, &mut rng);
        total += samples.len();
        max_rank = max_rank.max(span_rank(&samples));
        for s in &samples {
            for w in &witnesses {
                worst = worst.max(m.inner(s, w).abs() / m.norm(w));
            }
        }
    }
    Ok(ObstructionCertificate {
        kind,
        witnesses,
        metrics: config.metrics.max(1),
        trials: config.trials,
        samples: total,
        max_span_rank: max_rank,
        max_witness_pairing: worst,
        detail,
    })
}

/// `g′` abelian of codimension one with `ad(Y)|g′ = c·id`, `c ≠ 0`.
fn an_shape<S: Scalar>(g: &LieAlgebra<S>) -> Result<(Vec<Vec<f64>>, String)> {
    let n = g.dim();
    let d = g.derived_subalgebra();
    if n < 2 || d.dim() != n - 1 {
        return Err(GeodesyError::WrongShape("derived algebra must have codimension one".into()));
    }
    let y_idx = d.complement_indices()[0];
    let y = crate::linalg::unit(n, y_idx);
    for a in d.basis() {
        for b in d.basis() {
            if !g.bracket_unchecked(a, b).iter().all(Scalar::is_zero) {
                return Err(GeodesyError::WrongShape("derived algebra is not abelian".into()));
            }
        }
    }
    let first = g.bracket_unchecked(&y, &d.basis()[0]);
    let p = d.pivots()[0];
    let c = first[p].clone() / d.basis()[0][p].clone();
    if c.is_zero() {
        return Err(GeodesyError::WrongShape("ad(Y) vanishes on the derived algebra".into()));
    }
    for b in d.basis() {
        let img = g.bracket_unchecked(&y, b);
        if img.iter().zip(b).any(|(u, v)| !(u.clone() - c.clone() * v.clone()).is_zero()) {
            return Err(GeodesyError::WrongShape("ad(Y) is not scalar on the derived algebra".into()));
        }
    }
    // For X = tY + W (W ∈ g′) and Z ∈ g′: ⟨X,[X,Z]⟩ = tc⟨X,Z⟩, and [X,Y] = −cW, so geodesity
    // with t ≠ 0 forces X ⊥ g′, while t = 0 gives ⟨W,[W,Y]⟩ = c⟨W,W⟩ = 0, i.e. W = 0.
    let witnesses = d.basis().iter().map(|v| v.iter().map(S::to_f64).collect()).collect();
    Ok((witnesses, format!("ad(Y) acts on the derived algebra as {} times the identity", c.to_f64())))
}

/// Codimension-one ideal `h ≅ H_{2m+1}` with center `z` and `[Y, z] = λz`, `λ ≠ 0`.
fn heisenberg_shape<S: Scalar>(g: &LieAlgebra<S>) -> Result<(Vec<Vec<f64>>, String)> {
    let gf = g.to_f64();
    let found = crate::constructions::find_heisenberg_ideal(&gf)
        .ok_or_else(|| GeodesyError::WrongShape("no codimension-one Heisenberg ideal".into()))?;
    if found.lambda.abs() <= crate::scalar::FLOAT_ZERO_TOL {
        return Err(GeodesyError::WrongShape("the Heisenberg extension is unimodular".into()));
    }
    Ok((vec![found.center.clone()], format!("[Y, z] = {} z", found.lambda)))
}


use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{
    construct_codim1_abelian, decompose_commuting_family, dvec, finish, gram_from_frame, lift_through_center,
    select_independent, to_vec, trivial, BlockKind, Check, ConstructOptions, ConstructionResult, Outcome, TheoremTag,
};
use crate::algebra::LieAlgebra;
use crate::error::{GeodesyError, Result};
use crate::linalg::unit;
use crate::metric::InnerProduct;
use crate::scalar::Scalar;
use crate::subspace::Subspace;

const ROOT_TOL: f64 = 1e-6;
const FLAT_TOL: f64 = 1e-9;
const MAX_DRAWS: usize = 100;

/// A root `λ_α` (on the complement basis) and a basis of its root space `n_α`.
#[derive(Clone, Debug, PartialEq)]
pub struct Root {
    pub lambda: Vec<f64>,
    pub basis: Vec<Vec<f64>>,
}

/// `g = t ⊕ (n_1 ⊕ … ⊕ n_p)` with `g′ = ⊕ n_α` and `[Y, X] = λ_α(Y) X` for `Y ∈ t`, `X ∈ n_α`.
#[derive(Clone, Debug, PartialEq)]
pub struct RootDecomposition {
    pub complement: Vec<Vec<f64>>,
    pub roots: Vec<Root>,
}

impl RootDecomposition {
    fn derived_frame(&self) -> Vec<Vec<f64>> {
        self.roots.iter().flat_map(|r| r.basis.iter().cloned()).collect()
    }
}

/// Requires `g′` abelian and every `ad(Y)|g′` diagonalizable over `ℝ`.
pub fn root_space_decomposition<S: Scalar>(g: &LieAlgebra<S>) -> Result<RootDecomposition> {
    let n = g.dim();
    let derived_exact = g.derived_subalgebra();
    for a in derived_exact.basis() {
        for b in derived_exact.basis() {
            if !g.bracket_unchecked(a, b).iter().all(Scalar::is_zero) {
                return Err(GeodesyError::hypothesis("abelian derived algebra", "derived algebra is not abelian"));
            }
        }
    }
    let gf = g.to_f64();
    let derived = derived_exact.to_f64();
    let complement: Vec<Vec<f64>> = derived.complement_indices().into_iter().map(|i| unit(n, i)).collect();
    if derived.dim() == 0 {
        return Ok(RootDecomposition { complement, roots: Vec::new() });
    }
    let coords = |v: &[f64]| -> DVector<f64> { DVector::from_iterator(derived.dim(), derived.pivots().iter().map(|&p| v[p])) };
    let ops: Vec<DMatrix<f64>> = complement
        .iter()
        .map(|y| {
            let cols: Vec<_> = derived.basis().iter().map(|b| coords(&gf.bracket_unchecked(y, b))).collect();
            DMatrix::from_columns(&cols)
        })
        .collect();
    let scale = ops.iter().map(|a| a.amax()).fold(1.0, f64::max);
    let decomposition = decompose_commuting_family(&ops)?;
    let mut roots: Vec<Root> = Vec::new();
    for block in &decomposition.blocks {
        let c = match &block.kind {
            BlockKind::Real { c } if block.off_diagonal <= ROOT_TOL * scale => c.clone(),
            BlockKind::Real { .. } => {
                return Err(GeodesyError::NotRDiagonal(witness(g, &derived, &ops, "is not diagonalizable")));
            }
            BlockKind::Complex { .. } => {
                return Err(GeodesyError::NotRDiagonal(witness(g, &derived, &ops, "has non-real eigenvalues")));
            }
        };
        let basis: Vec<Vec<f64>> = block
            .basis
            .iter()
            .map(|v| {
                let mut out = vec![0.0; n];
                for (coef, row) in v.iter().zip(derived.basis()) {
                    for (o, x) in out.iter_mut().zip(row) {
                        *o += coef * x;
                    }
                }
                out
            })
            .collect();
        match roots.iter_mut().find(|r| r.lambda.iter().zip(&c).all(|(a, b)| (a - b).abs() <= ROOT_TOL * scale)) {
            Some(r) => r.basis.extend(basis),
            None => roots.push(Root { lambda: c, basis }),
        }
    }
    Ok(RootDecomposition { complement, roots })
}

fn witness<S: Scalar>(g: &LieAlgebra<S>, derived: &Subspace<f64>, ops: &[DMatrix<f64>], what: &str) -> String {
    let labels = g.labels();
    let idx = derived.complement_indices();
    for (k, a) in ops.iter().enumerate() {
        let single = decompose_commuting_family(std::slice::from_ref(a));
        let bad = match single {
            Ok(d) => d.blocks.iter().any(|b| !b.is_real_scalar(ROOT_TOL * a.amax().max(1.0))),
            Err(_) => true,
        };
        if bad {
            return format!("ad({}) restricted to the derived algebra {what}", labels[idx[k]]);
        }
    }
    format!("the restricted adjoint action {what}")
}

/// Replaces `Y_a` by `Ȳ_a = Y_a − Σ ψ_αi(Y_a) X_αi` where `ω_αi = ψ_αi ∧ λ_α`, so that `[t, t] = 0`.
pub fn flatten_complement(g: &LieAlgebra<f64>, rd: &RootDecomposition) -> Result<RootDecomposition> {
    let n = g.dim();
    let m = rd.complement.len();
    let frame = rd.derived_frame();
    if frame.is_empty() || m < 2 {
        return Ok(rd.clone());
    }
    let fm = DMatrix::from_columns(&frame.iter().map(|v| dvec(v)).collect::<Vec<_>>());
    let fm_svd = fm.clone().svd(true, true);
    let mut omega: Vec<Vec<DVector<f64>>> = vec![vec![DVector::zeros(frame.len()); m]; m];
    for a in 0..m {
        for b in 0..m {
            let br = dvec(&g.bracket_unchecked(&rd.complement[a], &rd.complement[b]));
            omega[a][b] = fm_svd.solve(&br, 1e-12).map_err(|e| GeodesyError::NumericalFailure(e.to_string()))?;
        }
    }
    let mut shifted: Vec<Vec<f64>> = rd.complement.clone();
    let mut offset = 0;
    for root in &rd.roots {
        let d = root.basis.len();
        let rows = m * (m - 1) / 2 * d;
        let mut sys = DMatrix::<f64>::zeros(rows, m * d);
        let mut rhs = DVector::<f64>::zeros(rows);
        let mut row = 0;
        for a in 0..m {
            for b in a + 1..m {
                for i in 0..d {
                    // ω(a,b)_i = λ(a) ψ(b)_i − λ(b) ψ(a)_i
                    sys[(row, b * d + i)] += root.lambda[a];
                    sys[(row, a * d + i)] -= root.lambda[b];
                    rhs[row] = omega[a][b][offset + i];
                    row += 1;
                }
            }
        }
        let psi = sys
            .clone()
            .svd(true, true)
            .solve(&rhs, 1e-12)
            .map_err(|e| GeodesyError::NumericalFailure(e.to_string()))?;
        let resid = (&sys * &psi - &rhs).amax();
        if resid > FLAT_TOL * rhs.amax().max(1.0) {
            return Err(GeodesyError::hypothesis(
                "[t, t] can be flattened",
                format!("no ψ with ω = ψ ∧ λ (residual {resid:e}); the root space is central"),
            ));
        }
        for (a, y) in shifted.iter_mut().enumerate() {
            for i in 0..d {
                let coef = psi[a * d + i];
                for (yk, xk) in y.iter_mut().zip(&root.basis[i]) {
                    *yk -= coef * xk;
                }
            }
        }
        offset += d;
    }
    let mut worst = 0.0f64;
    for a in 0..m {
        for b in a + 1..m {
            let br = g.bracket_unchecked(&shifted[a], &shifted[b]);
            worst = worst.max(br.iter().map(|x| x.abs()).fold(0.0, f64::max));
        }
    }
    if worst > FLAT_TOL * 10.0 {
        return Err(GeodesyError::NumericalFailure(format!("flattened complement is not abelian ({worst:e})")));
    }
    let _ = n;
    Ok(RootDecomposition { complement: shifted, roots: rd.roots.clone() })
}

/// Abelian `g′` with `ℝ`-diagonalizable action of the complement.
///
/// After flattening, `g′^⊥ = span(Y_a + X′_a)` with the root spaces orthonormal and mutually
/// orthogonal. For `μ ∈ ker λ_α` and `W = Σ μ_a(Y_a + X′_a)`, `W + X̂` is geodesic for every
/// `X̂ ∈ n_α` on the sphere `‖X̂ + v/2‖ = ‖v/2‖`, `v = π_α(Σ μ_a X′_a)`.
pub fn construct_rdiag<S: Scalar>(g: &LieAlgebra<S>, options: ConstructOptions) -> Result<ConstructionResult> {
    let gf = g.to_f64();
    let n = g.dim();
    if g.is_abelian() {
        return trivial(&gf, TheoremTag::RDiagonal);
    }
    let rd = root_space_decomposition(g)?;
    let mut notes = Vec::new();
    if g.center().dim() > 0 {
        match lift_through_center(g, |q| match construct_rdiag(q, options) {
            Ok(r) => Outcome::Construction(Box::new(r)),
            Err(e) => Outcome::Undetermined(vec![e.to_string()]),
        }) {
            Ok(Outcome::Construction(r)) => return Ok(*r),
            Ok(Outcome::Undetermined(why)) => notes.extend(why),
            Ok(Outcome::Obstruction(_)) => notes.push("quotient by the center is obstructed".into()),
            Err(e) => notes.push(e.to_string()),
        }
    }
    let m = rd.complement.len();
    if m == 1 {
        if rd.roots.len() == 1 && rd.roots[0].lambda[0].abs() > ROOT_TOL {
            return Err(GeodesyError::IsomorphicToAn(n - 1));
        }
        let h = g.derived_subalgebra();
        return match construct_codim1_abelian(g, &h, options)? {
            Outcome::Construction(r) => Ok(ConstructionResult { theorem: TheoremTag::RDiagonal, ..*r }),
            _ => Err(GeodesyError::IsomorphicToAn(n - 1)),
        };
    }
    let flat = flatten_complement(&gf, &rd).map_err(|e| {
        if notes.is_empty() {
            e
        } else {
            GeodesyError::hypothesis("trivial center or flat complement", format!("{e}; {}", notes.join("; ")))
        }
    })?;
    let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
    let kernels: Vec<Vec<f64>> = flat
        .roots
        .iter()
        .map(|r| {
            if r.lambda.iter().all(|x| x.abs() <= ROOT_TOL) {
                unit(m, 0)
            } else {
                Subspace::span(m, std::slice::from_ref(&r.lambda)).annihilator().basis()[0].clone()
            }
        })
        .collect();
    let dims: Vec<usize> = flat.roots.iter().map(|r| r.basis.len()).collect();
    let total: usize = dims.iter().sum();
    let mut draw = None;
    for _ in 0..MAX_DRAWS {
        // X′_a in root-space coordinates.
        let xp: Vec<Vec<f64>> =
            (0..m).map(|_| (0..total).map(|_| f64::from(rng.random_range(-3i32..=3)) / 2.0).collect()).collect();
        let mut vs = Vec::new();
        let mut offset = 0;
        let mut ok = true;
        for (alpha, &d) in dims.iter().enumerate() {
            let v: Vec<f64> = (0..d).map(|i| (0..m).map(|a| kernels[alpha][a] * xp[a][offset + i]).sum()).collect();
            if v.iter().map(|x| x * x).sum::<f64>().sqrt() <= 1e-6 {
                ok = false;
            }
            vs.push(v);
            offset += d;
        }
        if ok {
            draw = Some((xp, vs));
            break;
        }
    }
    let (xp, vs) = draw.ok_or_else(|| GeodesyError::NumericalFailure("no admissible X′ after 100 draws".into()))?;
    let root_frame = flat.derived_frame();
    let lift = |coords: &[f64]| -> Vec<f64> {
        let mut out = vec![0.0; n];
        for (c, v) in coords.iter().zip(&root_frame) {
            for (o, x) in out.iter_mut().zip(v) {
                *o += c * x;
            }
        }
        out
    };
    let perp: Vec<Vec<f64>> = (0..m)
        .map(|a| flat.complement[a].iter().zip(lift(&xp[a])).map(|(y, x)| y + x).collect())
        .collect();
    let mut frame = perp.clone();
    frame.extend(root_frame.iter().cloned());
    let metric = InnerProduct::from_dmatrix(&gram_from_frame(&frame, &DMatrix::identity(n, n))?)?;

    let mut candidates = perp.clone();
    let mut offset = 0;
    let mut sphere = 0.0f64;
    for (alpha, &d) in dims.iter().enumerate() {
        let w: Vec<f64> = (0..n).map(|k| (0..m).map(|a| kernels[alpha][a] * perp[a][k]).sum()).collect();
        let v = dvec(&vs[alpha]);
        let half = v.norm() / 2.0;
        let mut points = vec![-&v];
        for i in 0..d {
            let u = DVector::from_fn(d, |r, _| if r == i { 1.0 } else { 0.0 });
            points.push(-&v / 2.0 + &u * half);
            points.push(-&v / 2.0 - &u * half);
        }
        for p in points {
            sphere = sphere.max((p.dot(&p) + p.dot(&v)).abs());
            let mut coords = vec![0.0; total];
            coords[offset..offset + d].copy_from_slice(&to_vec(&p));
            let xhat = lift(&coords);
            candidates.push(w.iter().zip(&xhat).map(|(a, b)| a + b).collect());
        }
        offset += d;
    }
    let basis = select_independent(Vec::new(), &candidates, n);
    if basis.len() != n {
        return Err(GeodesyError::NumericalFailure(format!("geodesic candidates span only {} dimensions", basis.len())));
    }
    let checks = vec![Check { name: "sphere equation ⟨X̂, v + X̂⟩".into(), residual: sphere }];
    finish(&gf, metric, basis, TheoremTag::RDiagonal, false, checks)
}

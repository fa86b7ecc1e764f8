//! Named Lie algebras with their known verdicts and explicit geodesic bases.
//!
//! Relations use the labels shown by [`LieAlgebra::labels`]; parameters are exact rationals.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::algebra::{default_labels, LieAlgebra};
use crate::error::{GeodesyError, Result};
use crate::linalg::Matrix;
use crate::metric::InnerProduct;
use crate::scalar::Surd;

pub type Params = BTreeMap<String, BigRational>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Answer {
    Yes,
    No,
    Unknown,
}

impl Answer {
    pub fn as_str(self) -> &'static str {
        match self {
            Answer::Yes => "yes",
            Answer::No => "no",
            Answer::Unknown => "unknown",
        }
    }
}

impl fmt::Display for Answer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Whether some inner product admits a geodesic basis, and an orthonormal one.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub geodesic_basis: Answer,
    pub orthonormal: Answer,
}

const YES_YES: Verdict = Verdict { geodesic_basis: Answer::Yes, orthonormal: Answer::Yes };
const YES_NO: Verdict = Verdict { geodesic_basis: Answer::Yes, orthonormal: Answer::No };
const NO_NO: Verdict = Verdict { geodesic_basis: Answer::No, orthonormal: Answer::No };

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ParamSpec {
    pub name: &'static str,
    /// Default as `(numerator, denominator)`.
    pub default: Option<(i64, i64)>,
    pub constraint: &'static str,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub summary: &'static str,
    pub params: &'static [ParamSpec],
    pub source: &'static str,
}

/// A metric and a basis that is geodesic for it.
#[derive(Clone, Debug, PartialEq)]
pub struct Witness {
    pub metric: InnerProduct<Surd>,
    pub basis: Vec<Vec<Surd>>,
    pub orthonormal: bool,
}

const N: ParamSpec = ParamSpec { name: "n", default: Some((2, 1)), constraint: "integer, 1 <= n <= 6" };
const RN: ParamSpec = ParamSpec { name: "n", default: Some((1, 1)), constraint: "integer, 1 <= n <= 8" };
const A_ANY: ParamSpec = ParamSpec { name: "a", default: Some((0, 1)), constraint: "any rational" };
const A_M3: ParamSpec = ParamSpec { name: "a", default: Some((0, 1)), constraint: "a != -2" };
const B_ANY: ParamSpec = ParamSpec { name: "b", default: Some((0, 1)), constraint: "any rational" };
const ALPHA: ParamSpec = ParamSpec { name: "alpha", default: Some((0, 1)), constraint: "alpha != -1" };
const P: ParamSpec = ParamSpec { name: "p", default: Some((1, 1)), constraint: "p != 0" };

const ENTRIES: &[CatalogEntry] = &[
    CatalogEntry { name: "R", summary: "abelian R^n", params: &[RN], source: "abelian" },
    CatalogEntry { name: "A_n", summary: "[X0, Xi] = Xi for i = 1..n", params: &[N], source: "definition" },
    CatalogEntry { name: "H3", summary: "Heisenberg [X1, X2] = X3", params: &[], source: "definition" },
    CatalogEntry { name: "H5", summary: "Heisenberg [X1, X3] = [X2, X4] = X5", params: &[], source: "definition" },
    CatalogEntry { name: "e2", summary: "[X1, X2] = -X3, [X1, X3] = X2", params: &[], source: "relations" },
    CatalogEntry { name: "sl2", summary: "[X1, X2] = 2X2, [X1, X3] = -2X3, [X2, X3] = X1", params: &[], source: "matrix basis" },
    CatalogEntry { name: "so3", summary: "[X1, X2] = X3, [X2, X3] = X1, [X3, X1] = X2", params: &[], source: "cross product" },
    CatalogEntry {
        name: "sl2_semidirect_r2",
        summary: "sl(2, R) acting on R^2 by matrices",
        params: &[],
        source: "relations and explicit geodesic basis",
    },
    CatalogEntry { name: "m0_4", summary: "filiform [X1, X2] = X3, [X1, X3] = X4", params: &[], source: "relations" },
    CatalogEntry {
        name: "clnn",
        summary: "m0(4) extended by X0 with weights 3, -4, -1, 2",
        params: &[],
        source: "relations",
    },
    CatalogEntry { name: "M2", summary: "[X1, Xi] = Xi, i = 2, 3, 4", params: &[], source: "relations" },
    CatalogEntry {
        name: "M3",
        summary: "[X1, X2] = X2, [X1, X3] = X4, [X1, X4] = -aX3 + (a+1)X4",
        params: &[A_M3],
        source: "relations",
    },
    CatalogEntry { name: "M4", summary: "[X1, X2] = X3, [X1, X3] = X3", params: &[], source: "relations" },
    CatalogEntry {
        name: "M6",
        summary: "[X1, X2] = X3, [X1, X3] = X4, [X1, X4] = aX2 + bX3 + X4",
        params: &[A_ANY, B_ANY],
        source: "relations",
    },
    CatalogEntry {
        name: "M8",
        summary: "[X1, X2] = X2, [X3, X4] = X4",
        params: &[],
        source: "relations and explicit geodesic basis",
    },
    CatalogEntry {
        name: "M9",
        summary: "[X1, X2] = X2 - X3, [X1, X3] = X2, [X4, X2] = X2, [X4, X3] = X3",
        params: &[],
        source: "relations",
    },
    CatalogEntry {
        name: "M12",
        summary: "[X1, X2] = X2, [X1, X3] = 2X3, [X1, X4] = X4, [X4, X2] = X3",
        params: &[],
        source: "relations",
    },
    CatalogEntry {
        name: "M13",
        summary: "[X1, X2] = X2 + aX4, [X1, X3] = X3, [X1, X4] = X2, [X4, X2] = X3",
        params: &[A_ANY],
        source: "relations",
    },
    CatalogEntry {
        name: "g19",
        summary: "H3+R extended by diag(1, alpha, 1+alpha, -2(1+alpha))",
        params: &[ALPHA],
        source: "derivation matrix and explicit geodesic basis",
    },
    CatalogEntry {
        name: "g23",
        summary: "H3+R extended by a Jordan block with eigenvalue 1",
        params: &[],
        source: "derivation matrix and explicit geodesic basis",
    },
    CatalogEntry {
        name: "g25",
        summary: "H3+R extended by a rotation-dilation with real part p",
        params: &[P],
        source: "derivation matrix and explicit geodesic basis",
    },
    CatalogEntry {
        name: "g28",
        summary: "H3+R extended by the derivation with parameter -3/2",
        params: &[],
        source: "derivation matrix and explicit geodesic basis",
    },
    CatalogEntry {
        name: "g33",
        summary: "R^2 acting diagonally on R^3 with weights (1, 0, -1), (0, 1, -1)",
        params: &[],
        source: "adjoint matrices",
    },
    CatalogEntry {
        name: "g35",
        summary: "R^2 acting on R^3 by diag(-2, 1, 1) and a rotation",
        params: &[],
        source: "adjoint matrices and explicit orthonormal geodesic basis",
    },
    CatalogEntry { name: "sl2_plus_r2", summary: "sl(2, R) + R^2", params: &[], source: "direct sum" },
    CatalogEntry { name: "so3_plus_r2", summary: "so(3) + R^2", params: &[], source: "direct sum" },
    CatalogEntry {
        name: "oscillator",
        summary: "H3 extended by the rotation X1 -> X2, X2 -> -X1",
        params: &[],
        source: "suspension",
    },
];

pub fn list() -> &'static [CatalogEntry] {
    ENTRIES
}

/// Looks up an entry; `A_3` is shorthand for `A_n` with `n = 3`.
pub fn entry(name: &str) -> Result<(&'static CatalogEntry, Params)> {
    if let Some(e) = ENTRIES.iter().find(|e| e.name == name) {
        return Ok((e, Params::new()));
    }
    if let Some(k) = name.strip_prefix("A_").and_then(|s| s.parse::<i64>().ok()) {
        let e = ENTRIES.iter().find(|e| e.name == "A_n").expect("A_n is listed");
        return Ok((e, Params::from([("n".to_string(), rational(k, 1))])));
    }
    Err(GeodesyError::UnknownName(name.to_string()))
}

/// Parses `a=1/2,b=-3` (also accepts whitespace separators).
pub fn parse_params(text: &str) -> Result<Params> {
    let mut out = Params::new();
    for item in text.split(|c: char| c == ',' || c.is_whitespace()).filter(|s| !s.is_empty()) {
        let (k, v) = item
            .split_once('=')
            .ok_or_else(|| GeodesyError::Parse(format!("parameter {item:?} is not of the form name=value")))?;
        let value: BigRational =
            v.trim().parse().map_err(|_| GeodesyError::Parse(format!("parameter {k} = {v:?} is not a rational")))?;
        out.insert(k.trim().to_string(), value);
    }
    Ok(out)
}

fn rational(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

fn resolve(entry: &CatalogEntry, given: &Params) -> Result<Params> {
    for k in given.keys() {
        if !entry.params.iter().any(|p| p.name == k) {
            return Err(GeodesyError::ParamOutOfRange(format!("{} has no parameter {k}", entry.name)));
        }
    }
    let mut out = Params::new();
    for p in entry.params {
        let v = match (given.get(p.name), p.default) {
            (Some(v), _) => v.clone(),
            (None, Some((a, b))) => rational(a, b),
            (None, None) => return Err(GeodesyError::ParamOutOfRange(format!("{} needs {}", entry.name, p.name))),
        };
        out.insert(p.name.to_string(), v);
    }
    let bad = |why: String| Err(GeodesyError::ParamOutOfRange(format!("{}: {why}", entry.name)));
    let get = |k: &str| out[k].clone();
    match entry.name {
        "A_n" | "R" => {
            let n = get("n");
            let hi = if entry.name == "R" { 8 } else { 6 };
            if !n.is_integer() || n < rational(1, 1) || n > rational(hi, 1) {
                return bad(format!("n = {n} must be an integer in 1..={hi}"));
            }
        }
        "M3" if get("a") == rational(-2, 1) => return bad("a = -2 gives a unimodular algebra".into()),
        "g19" if get("alpha") == rational(-1, 1) => return bad("alpha = -1 is excluded".into()),
        "g25" if get("p").is_zero() => return bad("p = 0 is excluded".into()),
        _ => {}
    }
    Ok(out)
}

fn surd(r: &BigRational) -> Surd {
    Surd::from_rational(r.clone())
}

fn int(v: i64) -> Surd {
    Surd::from_i64(v)
}

/// Relations `[X_i, X_j] = Σ v X_k` in label numbering starting at `first`.
fn relations(n: usize, first: usize, rels: &[(usize, usize, Vec<(usize, Surd)>)]) -> Result<LieAlgebra<Surd>> {
    let shifted: Vec<_> = rels
        .iter()
        .map(|(i, j, t)| (i - first, j - first, t.iter().map(|(k, v)| (k - first, v.clone())).collect()))
        .collect();
    LieAlgebra::from_brackets(default_labels(n, first), &shifted)
}

fn one(k: usize) -> Vec<(usize, Surd)> {
    vec![(k, int(1))]
}

/// `H3 ⊕ R` (labels X1..X4, `[X1, X2] = X3`) extended by `X0` acting through `a` (columns are images).
fn h3_plus_r(a: [[Surd; 4]; 4]) -> Result<LieAlgebra<Surd>> {
    let h = relations(4, 1, &[(1, 2, one(3))])?;
    let phi = Matrix::from_fn(4, 4, |i, j| a[i][j].clone());
    LieAlgebra::suspension(&h, &phi, "X0")
}

/// `R^2` (X1, X2) acting on `R^3` (X3, X4, X5) by the given matrices.
fn r2_on_r3(a1: [[i64; 3]; 3], a2: [[i64; 3]; 3]) -> Result<LieAlgebra<Surd>> {
    let mut rels = Vec::new();
    for (x, a) in [(1, a1), (2, a2)] {
        for j in 0..3 {
            let terms: Vec<(usize, Surd)> = (0..3).filter(|&i| a[i][j] != 0).map(|i| (i + 3, int(a[i][j]))).collect();
            if !terms.is_empty() {
                rels.push((x, j + 3, terms));
            }
        }
    }
    relations(5, 1, &rels)
}

fn sl2() -> Result<LieAlgebra<Surd>> {
    relations(3, 1, &[(1, 2, vec![(2, int(2))]), (1, 3, vec![(3, int(-2))]), (2, 3, one(1))])
}

fn so3() -> Result<LieAlgebra<Surd>> {
    relations(3, 1, &[(1, 2, one(3)), (2, 3, one(1)), (3, 1, one(2))])
}

fn with_plane(g: LieAlgebra<Surd>) -> LieAlgebra<Surd> {
    let r2 = LieAlgebra::abelian_with_labels(default_labels(2, 4));
    LieAlgebra::direct_sum(&g, &r2)
}

fn diag4(d: [Surd; 4]) -> [[Surd; 4]; 4] {
    let mut a: [[Surd; 4]; 4] = Default::default();
    for (i, v) in d.into_iter().enumerate() {
        a[i][i] = v;
    }
    a
}

/// Builds the named algebra.
pub fn instantiate(name: &str, params: &Params) -> Result<LieAlgebra<Surd>> {
    let (entry, implied) = entry(name)?;
    let mut given = implied;
    given.extend(params.iter().map(|(k, v)| (k.clone(), v.clone())));
    let p = resolve(entry, &given)?;
    let get = |k: &str| surd(&p[k]);
    match entry.name {
        "R" => Ok(LieAlgebra::abelian(p["n"].to_integer().to_usize().unwrap_or(1))),
        "A_n" => {
            let n = p["n"].to_integer().to_usize().unwrap_or(1);
            let rels: Vec<_> = (1..=n).map(|i| (0, i, one(i))).collect();
            relations(n + 1, 0, &rels)
        }
        "H3" => relations(3, 1, &[(1, 2, one(3))]),
        "H5" => relations(5, 1, &[(1, 3, one(5)), (2, 4, one(5))]),
        "e2" => relations(3, 1, &[(1, 2, vec![(3, int(-1))]), (1, 3, one(2))]),
        "sl2" => sl2(),
        "so3" => so3(),
        "sl2_semidirect_r2" => relations(
            5,
            1,
            &[
                (1, 2, vec![(2, int(2))]),
                (1, 3, vec![(3, int(-2))]),
                (1, 4, one(4)),
                (1, 5, vec![(5, int(-1))]),
                (2, 3, one(1)),
                (3, 4, one(5)),
                (2, 5, one(4)),
            ],
        ),
        "m0_4" => relations(4, 1, &[(1, 2, one(3)), (1, 3, one(4))]),
        "clnn" => relations(
            5,
            0,
            &[
                (0, 1, vec![(1, int(3))]),
                (0, 2, vec![(2, int(-4))]),
                (0, 3, vec![(3, int(-1))]),
                (0, 4, vec![(4, int(2))]),
                (1, 2, one(3)),
                (1, 3, one(4)),
            ],
        ),
        "M2" => relations(4, 1, &[(1, 2, one(2)), (1, 3, one(3)), (1, 4, one(4))]),
        "M3" => {
            let a = get("a");
            relations(4, 1, &[(1, 2, one(2)), (1, 3, one(4)), (1, 4, vec![(3, -a.clone()), (4, a + int(1))])])
        }
        "M4" => relations(4, 1, &[(1, 2, one(3)), (1, 3, one(3))]),
        "M6" => relations(4, 1, &[(1, 2, one(3)), (1, 3, one(4)), (1, 4, vec![(2, get("a")), (3, get("b")), (4, int(1))])]),
        "M8" => relations(4, 1, &[(1, 2, one(2)), (3, 4, one(4))]),
        "M9" => relations(
            4,
            1,
            &[(1, 2, vec![(2, int(1)), (3, int(-1))]), (1, 3, one(2)), (4, 2, one(2)), (4, 3, one(3))],
        ),
        "M12" => relations(4, 1, &[(1, 2, one(2)), (1, 3, vec![(3, int(2))]), (1, 4, one(4)), (4, 2, one(3))]),
        "M13" => relations(
            4,
            1,
            &[(1, 2, vec![(2, int(1)), (4, get("a"))]), (1, 3, one(3)), (1, 4, one(2)), (4, 2, one(3))],
        ),
        "g19" => {
            let a = get("alpha");
            let s = a.clone() + int(1);
            h3_plus_r(diag4([int(1), a, s.clone(), int(-2) * s]))
        }
        "g23" => {
            let mut m = diag4([int(1), int(1), int(2), int(-4)]);
            m[1][0] = int(1);
            h3_plus_r(m)
        }
        "g25" => {
            let p = get("p");
            let mut m = diag4([p.clone(), p.clone(), int(2) * p.clone(), int(-4) * p]);
            m[0][1] = int(-1);
            m[1][0] = int(1);
            h3_plus_r(m)
        }
        "g28" => {
            let mut m = diag4([Surd::ratio(-3, 2), int(1), Surd::ratio(-1, 2), int(1)]);
            m[3][1] = int(1);
            h3_plus_r(m)
        }
        "g33" => r2_on_r3([[1, 0, 0], [0, 0, 0], [0, 0, -1]], [[0, 0, 0], [0, 1, 0], [0, 0, -1]]),
        "g35" => r2_on_r3([[-2, 0, 0], [0, 1, 0], [0, 0, 1]], [[0, 0, 0], [0, 0, 1], [0, -1, 0]]),
        "sl2_plus_r2" => Ok(with_plane(sl2()?)),
        "so3_plus_r2" => Ok(with_plane(so3()?)),
        "oscillator" => {
            let h = relations(3, 1, &[(1, 2, one(3))])?;
            let mut phi = Matrix::zeros(3, 3);
            phi[(1, 0)] = int(1);
            phi[(0, 1)] = int(-1);
            LieAlgebra::suspension(&h, &phi, "X0")
        }
        other => Err(GeodesyError::UnknownName(other.to_string())),
    }
}

/// Known answers; parameter constraints are checked first.
pub fn verdict(name: &str, params: &Params) -> Result<Verdict> {
    let (entry, implied) = entry(name)?;
    let mut given = implied;
    given.extend(params.iter().map(|(k, v)| (k.clone(), v.clone())));
    resolve(entry, &given)?;
    Ok(match entry.name {
        "A_n" | "M2" | "M9" | "M12" | "M13" => NO_NO,
        // Nonunimodular, so never orthonormal.
        "M3" | "M4" | "M6" | "M8" => YES_NO,
        "g19" | "g23" | "g25" | "g28" | "g33" | "clnn" | "sl2_semidirect_r2" => YES_NO,
        _ => YES_YES,
    })
}

fn vector(n: usize, terms: &[(usize, Surd)]) -> Vec<Surd> {
    let mut v = vec![Surd::zero(); n];
    for (k, c) in terms {
        v[*k] = v[*k].clone() + c.clone();
    }
    v
}

fn standard(n: usize) -> Vec<Vec<Surd>> {
    (0..n).map(|i| vector(n, &[(i, int(1))])).collect()
}

fn sqrt_of(r: &BigRational) -> Result<Surd> {
    Surd::sqrt_rational(r)
}

/// An explicit inner product and geodesic basis, where one is known in closed form.
pub fn witness(name: &str, params: &Params) -> Result<Option<Witness>> {
    let (entry, implied) = entry(name)?;
    let mut given = implied;
    given.extend(params.iter().map(|(k, v)| (k.clone(), v.clone())));
    let p = resolve(entry, &given)?;
    let g = instantiate(name, params)?;
    let n = g.dim();
    let orthonormal_identity = |basis: Vec<Vec<Surd>>, orthonormal: bool| {
        Ok(Some(Witness { metric: InnerProduct::identity(n), basis, orthonormal }))
    };
    let s2 = Surd::sqrt_int(2);
    // ±√2 X3 + X4 in the H3 + R family (indices shifted by X0).
    let pm_sqrt2 = || vec![vector(n, &[(3, s2.clone()), (4, int(1))]), vector(n, &[(3, -s2.clone()), (4, int(1))])];
    match entry.name {
        "R" | "H3" | "H5" | "e2" | "so3" | "m0_4" | "oscillator" => orthonormal_identity(standard(n), true),
        "sl2_semidirect_r2" => orthonormal_identity(
            vec![
                vector(n, &[(0, int(1))]),
                vector(n, &[(1, int(1)), (4, s2.clone())]),
                vector(n, &[(1, int(1)), (4, -s2.clone())]),
                vector(n, &[(2, int(1)), (3, s2.clone())]),
                vector(n, &[(2, int(1)), (3, -s2.clone())]),
            ],
            false,
        ),
        "g23" | "g25" => {
            let mut b = vec![
                vector(n, &[(0, int(1))]),
                vector(n, &[(1, int(2)), (4, int(1))]),
                vector(n, &[(2, int(2)), (4, int(1))]),
            ];
            b.extend(pm_sqrt2());
            orthonormal_identity(b, false)
        }
        "g28" => {
            let r = sqrt_of(&rational(3, 2))?;
            let mut b = vec![
                vector(n, &[(0, int(1))]),
                vector(n, &[(1, int(1)), (2, r.clone())]),
                vector(n, &[(1, int(1)), (2, -r)]),
            ];
            b.extend(pm_sqrt2());
            orthonormal_identity(b, false)
        }
        "g19" => {
            let alpha = &p["alpha"];
            let mut b = vec![vector(n, &[(0, int(1))])];
            if !alpha.is_negative() {
                let r = sqrt_of(&((alpha + BigRational::one()) * rational(2, 1)))?;
                b.push(vector(n, &[(1, r.clone()), (4, int(1))]));
                b.push(vector(n, &[(2, r), (4, sqrt_of(alpha)?)]));
            } else {
                let r = sqrt_of(&-alpha.clone())?;
                b.push(vector(n, &[(1, r.clone()), (2, int(1))]));
                b.push(vector(n, &[(1, -r), (2, int(1))]));
            }
            b.extend(pm_sqrt2());
            orthonormal_identity(b, false)
        }
        "g35" => {
            let h = Surd::ratio(-1, 2);
            let r3 = Surd::sqrt_int(3) * Surd::ratio(1, 2);
            let frame = vec![
                vector(n, &[(0, int(1))]),
                vector(n, &[(1, int(1))]),
                vector(n, &[(2, int(1)), (3, int(1))]),
                vector(n, &[(2, int(1)), (3, h.clone()), (4, r3.clone())]),
                vector(n, &[(2, int(1)), (3, h), (4, -r3)]),
            ];
            Ok(Some(Witness { metric: InnerProduct::orthonormalizing(&frame)?, basis: frame, orthonormal: true }))
        }
        "M8" => {
            let frame = vec![
                vector(n, &[(0, int(1)), (3, int(1))]),
                vector(n, &[(1, int(1))]),
                vector(n, &[(1, int(1)), (2, int(1))]),
                vector(n, &[(3, int(1))]),
            ];
            let basis = vec![
                vector(n, &[(0, int(1))]),
                vector(n, &[(0, int(1)), (3, int(1))]),
                vector(n, &[(2, int(1))]),
                vector(n, &[(1, int(1)), (2, int(1))]),
            ];
            Ok(Some(Witness { metric: InnerProduct::orthonormalizing(&frame)?, basis, orthonormal: false }))
        }
        _ => Ok(None),
    }
}

/// Admissible parameter values used for sweeps over parameterized entries.
pub fn sample_params(name: &str) -> Vec<Params> {
    let one = |k: &str, vals: &[(i64, i64)]| -> Vec<Params> {
        vals.iter().map(|&(a, b)| Params::from([(k.to_string(), rational(a, b))])).collect()
    };
    match name {
        "R" => one("n", &[(1, 1), (3, 1)]),
        "A_n" => one("n", &[(1, 1), (2, 1), (3, 1), (4, 1), (5, 1), (6, 1)]),
        "M3" => one("a", &[(-1, 1), (0, 1), (2, 1)]),
        "M6" => {
            let mut out = Vec::new();
            for a in -1..=1 {
                for b in -1..=1 {
                    out.push(Params::from([("a".to_string(), rational(a, 1)), ("b".to_string(), rational(b, 1))]));
                }
            }
            out
        }
        "M13" => one("a", &[(0, 1), (1, 1), (-2, 1)]),
        "g19" => one("alpha", &[(-2, 1), (-1, 2), (0, 1), (1, 1), (3, 1)]),
        "g25" => one("p", &[(1, 2), (-1, 2), (1, 1), (-1, 1), (2, 1)]),
        _ => vec![Params::new()],
    }
}

/// Renders parameters as `a=1/2,b=0`.
pub fn render_params(params: &Params) -> String {
    params.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(",")
}

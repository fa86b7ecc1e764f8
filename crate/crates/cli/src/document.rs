//! The JSON algebra document.

use geodesy_core::{InnerProduct, LieAlgebra, Matrix, Scalar, Surd};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

pub const FLOAT_MODE: &str = "float";

/// Scalars that can appear in a document.
pub trait DocScalar: Scalar {
    const MODE: Option<&'static str>;
    fn render(&self) -> String;
    fn parse_scalar(text: &str) -> Result<Self, CliError>;
}

impl DocScalar for Surd {
    const MODE: Option<&'static str> = None;

    fn render(&self) -> String {
        Surd::render(self)
    }

    fn parse_scalar(text: &str) -> Result<Self, CliError> {
        Surd::parse(text).map_err(|e| CliError::Parse(format!("scalar {text:?}: {e}")))
    }
}

impl DocScalar for f64 {
    const MODE: Option<&'static str> = Some(FLOAT_MODE);

    fn render(&self) -> String {
        render_float(*self)
    }

    fn parse_scalar(text: &str) -> Result<Self, CliError> {
        let v: f64 = text.trim().parse().map_err(|_| CliError::Parse(format!("scalar {text:?} is not a decimal number")))?;
        if !v.is_finite() {
            return Err(CliError::Parse(format!("scalar {text:?} is not finite")));
        }
        Ok(v)
    }
}

/// 17 significant digits; parses back to the same `f64`.
pub fn render_float(v: f64) -> String {
    format!("{v:.16e}")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Term {
    pub k: usize,
    pub v: String,
}

/// `[X_i, X_j] = Σ v X_k` with 1-based `i < j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Bracket {
    pub i: usize,
    pub j: usize,
    pub terms: Vec<Term>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraDocument {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mode: Option<String>,
    pub dim: usize,
    pub labels: Vec<String>,
    pub brackets: Vec<Bracket>,
    /// Gram matrix, row by row.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metric: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<Vec<Vec<String>>>,
}

/// An algebra in whichever arithmetic its document uses.
#[derive(Clone, Debug)]
pub enum AnyAlgebra {
    Exact(LieAlgebra<Surd>),
    Float(LieAlgebra<f64>),
}

impl AlgebraDocument {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let doc: Self = serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string()))?;
        doc.check_shape()?;
        Ok(doc)
    }

    pub fn render(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("documents serialize");
        s.push('\n');
        s
    }

    pub fn is_float(&self) -> bool {
        self.mode.as_deref() == Some(FLOAT_MODE)
    }

    fn check_shape(&self) -> Result<(), CliError> {
        let n = self.dim;
        match self.mode.as_deref() {
            None | Some(FLOAT_MODE) => {}
            Some(other) => return Err(CliError::Parse(format!("unknown mode {other:?}"))),
        }
        if self.labels.len() != n {
            return Err(CliError::Parse(format!("{} labels for dimension {n}", self.labels.len())));
        }
        let mut seen = std::collections::BTreeSet::new();
        for b in &self.brackets {
            if !(1 <= b.i && b.i < b.j && b.j <= n) {
                return Err(CliError::Parse(format!("bracket ({}, {}) needs 1 <= i < j <= {n}", b.i, b.j)));
            }
            if !seen.insert((b.i, b.j)) {
                return Err(CliError::Parse(format!("bracket ({}, {}) given twice", b.i, b.j)));
            }
            for t in &b.terms {
                if !(1 <= t.k && t.k <= n) {
                    return Err(CliError::Parse(format!("term index {} outside 1..={n}", t.k)));
                }
            }
        }
        if let Some(m) = &self.metric {
            if m.len() != n || m.iter().any(|r| r.len() != n) {
                return Err(CliError::Parse(format!("metric must be {n}×{n}")));
            }
        }
        if let Some(b) = &self.basis {
            if b.iter().any(|v| v.len() != n) {
                return Err(CliError::Parse(format!("basis vectors must have {n} coordinates")));
            }
        }
        Ok(())
    }

    pub fn from_algebra<S: DocScalar>(
        name: &str,
        g: &LieAlgebra<S>,
        metric: Option<&InnerProduct<S>>,
        basis: Option<&[Vec<S>]>,
    ) -> Self {
        let n = g.dim();
        let mut brackets = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let terms: Vec<Term> = (0..n)
                    .filter(|&k| !is_exact_zero(g.structure_constant(i, j, k)))
                    .map(|k| Term { k: k + 1, v: g.structure_constant(i, j, k).render() })
                    .collect();
                if !terms.is_empty() {
                    brackets.push(Bracket { i: i + 1, j: j + 1, terms });
                }
            }
        }
        Self {
            name: name.to_string(),
            mode: S::MODE.map(str::to_string),
            dim: n,
            labels: g.labels().to_vec(),
            brackets,
            metric: metric.map(|m| (0..n).map(|i| (0..n).map(|j| m.gram()[(i, j)].render()).collect()).collect()),
            basis: basis.map(|b| render_vectors(b)),
        }
    }

    pub fn algebra(&self) -> Result<AnyAlgebra, CliError> {
        Ok(if self.is_float() { AnyAlgebra::Float(self.typed()?) } else { AnyAlgebra::Exact(self.typed()?) })
    }

    pub fn typed<S: DocScalar>(&self) -> Result<LieAlgebra<S>, CliError> {
        let mut rels = Vec::with_capacity(self.brackets.len());
        for b in &self.brackets {
            let terms = b
                .terms
                .iter()
                .map(|t| Ok((t.k - 1, S::parse_scalar(&t.v)?)))
                .collect::<Result<Vec<_>, CliError>>()?;
            rels.push((b.i - 1, b.j - 1, terms));
        }
        Ok(LieAlgebra::from_brackets(self.labels.clone(), &rels)?)
    }

    pub fn typed_metric<S: DocScalar>(&self) -> Result<Option<InnerProduct<S>>, CliError> {
        self.metric.as_ref().map(|rows| parse_metric(rows)).transpose()
    }

    pub fn typed_basis<S: DocScalar>(&self) -> Result<Option<Vec<Vec<S>>>, CliError> {
        self.basis.as_ref().map(|rows| parse_vectors(rows)).transpose()
    }
}

fn is_exact_zero<S: Scalar>(v: &S) -> bool {
    if S::EXACT {
        v.is_zero()
    } else {
        v.to_f64() == 0.0
    }
}

pub fn render_vectors<S: DocScalar>(vectors: &[Vec<S>]) -> Vec<Vec<String>> {
    vectors.iter().map(|v| v.iter().map(DocScalar::render).collect()).collect()
}

pub fn parse_vectors<S: DocScalar>(rows: &[Vec<String>]) -> Result<Vec<Vec<S>>, CliError> {
    rows.iter().map(|r| r.iter().map(|s| S::parse_scalar(s)).collect()).collect()
}

pub fn parse_metric<S: DocScalar>(rows: &[Vec<String>]) -> Result<InnerProduct<S>, CliError> {
    let parsed: Vec<Vec<S>> = parse_vectors(rows)?;
    Ok(InnerProduct::new(Matrix::from_rows(&parsed))?)
}

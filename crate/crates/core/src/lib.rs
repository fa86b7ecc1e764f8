//! Lie algebras from structure constants, geodesic elements of left-invariant metrics, and
//! constructions of bases made of geodesic elements.
#![allow(clippy::needless_range_loop, clippy::type_complexity)]

pub mod algebra;
pub mod catalog;
pub mod constructions;
pub mod error;
pub mod generators;
pub mod geodesic;
pub mod linalg;
pub mod metric;
pub mod scalar;
pub mod subspace;

pub use num_rational::BigRational;
pub use algebra::{LieAlgebra, Quotient, Vector, Violation};
pub use constructions::{ConstructOptions, ConstructionResult, Outcome, TheoremChoice, TheoremTag};
pub use error::{GeodesyError, Result};
pub use geodesic::{BasisCertificate, ObstructionCertificate, ObstructionKind, SearchConfig};
pub use linalg::Matrix;
pub use metric::InnerProduct;
pub use scalar::{Scalar, Surd};
pub use subspace::Subspace;

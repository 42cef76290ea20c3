//! Chain complexes and mixed complexes over ℚ, split into weight pieces.
//!
//! Grading is homological: `b` lowers degree by one and Connes' `B` raises it by one. Pieces
//! produced by a degree truncation are marked as not `bounded`; their top degree is an edge
//! artifact and every consumer reads them only below it.

mod bar;
mod chain;
mod complex;
mod derham;

pub use bar::{bar_mixed, induced_between, induced_mixed_map, BarComplex};
pub use chain::{cone, ChainComplex, ChainMap, ChainPiece, Weight};
pub use complex::{suspend, tensor_mixed, MixedComplex, MixedComplexMap, MixedPiece};
pub use derham::{de_rham_model, DeRham};

use crate::algebra::AlgebraError;
use crate::qlinalg::LinalgError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MixedError {
  #[error(transparent)]
  Algebra(#[from] AlgebraError),
  #[error(transparent)]
  Linalg(#[from] LinalgError),
  #[error("{relation} ≠ 0 in weight {weight}, degree {degree}")]
  Relation { relation: &'static str, weight: Weight, degree: i64 },
  #[error("not a chain map in weight {weight}, degree {degree}")]
  NotChainMap { weight: Weight, degree: i64 },
}

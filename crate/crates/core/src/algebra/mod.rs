//! Graded algebras given by structure constants, the standard constructions on them and the
//! algebra morphisms used by the experiments.

pub mod catalog;
mod graded;
mod morphism;
mod simplicial;

pub use graded::{
  lc_add, lc_basis, lc_scale, tensor_algebra, AlgebraBuilder, BasisElement, GradedAlgebra, LinComb,
  ValidationReport, Violation,
};
pub use morphism::{
  grading_homotopy, grading_inclusion, grading_projection, kt_morphisms, polynomial_extension, AlgebraMorphism,
  KtMorphisms, PolynomialExtension,
};
pub use simplicial::{
  check_simplicial_identities, degeneracy, face, simplicial_algebra, simplicial_identity_report, substitution,
  LinearForm, SimplicialReport,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
  #[error("malformed algebra: {0}")]
  Structure(String),
  #[error("unknown basis label `{0}`")]
  UnknownLabel(String),
  #[error("weight window exceeded: {0}")]
  WindowOverflow(String),
  #[error("{0} does not send 1 to 1")]
  NotUnital(String),
  #[error("{map} is not multiplicative on `{left}`·`{right}`")]
  NotMultiplicative { map: String, left: String, right: String },
  #[error("index {index} out of range 0..={max}")]
  IndexOutOfRange { index: usize, max: usize },
  #[error("substitution image exceeds total degree {0}; raise the degree bound")]
  DegreeOverflow(u32),
}

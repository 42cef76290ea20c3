//! Exact sparse linear algebra over ℚ and ℚ[t].
//!
//! Everything here is exact; there is no floating point anywhere in the engine. Ranks are
//! computed by sparse elimination over [`Q`], invariant factors over [`Poly`] by a PID Smith
//! reduction.

mod poly;
mod rational;
mod smith;
mod sparse;

pub use poly::Poly;
pub use rational::{ParseQError, Q};
pub use smith::smith_normal_form_poly;
pub use sparse::{
  axpy, block_matrix, collect_sparse, homology_dim, induced_homology_rank, Ring, SparseMatrix, SparseVec,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinalgError {
  #[error("shape mismatch in {op}: {left:?} vs {right:?}")]
  ShapeMismatch { op: &'static str, left: (usize, usize), right: (usize, usize) },
  /// `d_out ∘ d_in ≠ 0`; upstream sign conventions are inconsistent.
  #[error("composition of consecutive differentials is nonzero")]
  CompositionNonzero,
}

/// Rank over the fraction field of the entries.
pub fn rank(m: &SparseMatrix<Q>) -> usize { m.rank() }

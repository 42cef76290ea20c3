//! Exact computation of Hochschild, cyclic and periodic cyclic homology for small
//! weight-graded algebras over ℚ, together with the verification experiments built on top of it.
//!
//! The crate is organised bottom-up:
//!
//! - [`qlinalg`]: exact sparse linear algebra over ℚ and ℚ[t] (ranks, homology dimensions, Smith
//!   normal form).
//! - [`algebra`]: graded algebras given by structure constants, standard constructions and the
//!   algebra morphisms used by the experiments, including the simplicial algebra `Δ•`.
//! - [`mixed`]: chain and mixed complexes, the normalized bar model, de Rham models, tensor
//!   products, suspension and cones.
//! - [`homology`]: HH, HC and HP engines with truncation and stabilization bookkeeping.
//! - [`ktheory0`]: Euler classes and localization checks for free complexes over ℚ and ℚ[t].
//! - [`harness`]: algebra files, named experiments and machine-readable reports.

pub mod algebra;
pub mod harness;
pub mod homology;
pub mod ktheory0;
pub mod mixed;
pub mod qlinalg;

pub use qlinalg::{Poly, SparseMatrix, Q};

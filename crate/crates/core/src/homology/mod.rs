//! Hochschild, cyclic and periodic cyclic homology of mixed complexes.
//!
//! Everything is computed weight piece by weight piece, and inside a piece component by
//! component (see [`split`]). Dimensions come from ranks only; no kernels are formed.
//!
//! Periodic cyclic homology of a piece is computed in one of two ways:
//!
//! - a *bounded* piece (zero above its top degree) is finite, so the two-periodic complex
//!   `⊕ even Mₙ ⇄ ⊕ odd Mₙ` with `b + B` is finite as well and its homology is exact;
//! - a *truncated* piece is read through Connes' periodicity map: `HP_ε` is the rank of
//!   `S: HC_m → HC_{m−2}` for the largest `m` of parity `ε` in the safe band, computed on the
//!   column-truncated `(b, B)`-bicomplex. The same rank one level lower (`m − 2`, one column
//!   fewer) is the stabilization certificate.

mod maps;
mod split;
mod tot;

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;
use serde::Serialize;

use crate::mixed::{MixedComplex, MixedError, MixedPiece, Weight};
use crate::qlinalg::{induced_homology_rank, LinalgError, SparseMatrix, Q};

pub use maps::{hp_of_map, HpMapReport};

use tot::{tot_d, tot_fs, z2_d, Layout};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HomologyError {
  #[error("degree {degree} lies outside the safe band (top {top}) of weight {weight}")]
  OutsideSafeBand { weight: Weight, degree: i64, top: i64 },
  #[error("{got} columns are too few for total degree {degree}; need {needed}")]
  InsufficientColumns { degree: i64, needed: usize, got: usize },
  #[error("periodic homology did not stabilize: {0}")]
  NotStabilized(String),
  #[error("weights {0} mix bounded and truncated pieces")]
  MixedBoundedness(String),
  #[error(transparent)]
  Mixed(#[from] MixedError),
  #[error(transparent)]
  Linalg(#[from] LinalgError),
}

/// Dimension in one degree, with the contribution of every weight that has one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeReport {
  pub degree:     i64,
  pub total:      usize,
  pub per_weight: BTreeMap<Weight, usize>,
}

/// Even/odd dimensions of periodic cyclic homology.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HPReport {
  pub even_dim:   usize,
  pub odd_dim:    usize,
  pub stabilized: bool,
  /// Top stored degree of the truncated pieces, if any.
  pub n_max:      Option<i64>,
  pub w_max:      Option<u32>,
  pub columns:    usize,
  /// Degrees read by the computation on truncated pieces; `None` when all pieces are bounded.
  pub safe_band:  Option<(i64, i64)>,
  /// Weights whose contribution is nonzero.
  pub per_weight: BTreeMap<Weight, (usize, usize)>,
  /// Weights where the two truncation levels disagreed.
  pub unstable:   Vec<Weight>,
}

impl HPReport {
  pub fn dims(&self) -> (usize, usize) { (self.even_dim, self.odd_dim) }
}

fn sign_of(parity: i64) -> usize { parity as usize }

/// `HHₙ` of the underlying `b`-complex.
pub fn hochschild(m: &MixedComplex, n: i64) -> Result<DegreeReport, HomologyError> {
  let jobs: Vec<(&Weight, &MixedPiece)> = m.pieces.iter().collect();
  for (w, p) in &jobs {
    if !p.bounded() && n > p.top() - 2 {
      return Err(HomologyError::OutsideSafeBand { weight: (*w).clone(), degree: n, top: p.top() });
    }
  }
  let dims: Vec<usize> = jobs
    .par_iter()
    .map(|(_, p)| p.dim(n) - p.b(n).rank() - p.b(n + 1).rank())
    .collect();
  Ok(collect_degree(n, jobs.iter().map(|x| x.0), dims))
}

fn collect_degree<'a>(n: i64, ws: impl Iterator<Item = &'a Weight>, dims: Vec<usize>) -> DegreeReport {
  let per_weight: BTreeMap<Weight, usize> = ws.cloned().zip(dims).filter(|(_, d)| *d > 0).collect();
  DegreeReport { degree: n, total: per_weight.values().sum(), per_weight }
}

/// Columns needed for `HCₙ` to be computed exactly.
pub fn columns_needed(n: i64, low: i64) -> usize { ((n + 1 - low).max(0) / 2) as usize + 1 }

/// `HCₙ` from the `(b, B)`-bicomplex with `columns` columns.
pub fn cyclic(m: &MixedComplex, n: i64, columns: usize) -> Result<DegreeReport, HomologyError> {
  let low = m.pieces.values().map(MixedPiece::low).min().unwrap_or(0);
  let needed = columns_needed(n, low);
  if columns < needed {
    return Err(HomologyError::InsufficientColumns { degree: n, needed, got: columns });
  }
  let jobs: Vec<(&Weight, &MixedPiece)> = m.pieces.iter().collect();
  for (w, p) in &jobs {
    if !p.bounded() && n > p.top() - 2 {
      return Err(HomologyError::OutsideSafeBand { weight: (*w).clone(), degree: n, top: p.top() });
    }
  }
  let dims: Vec<usize> = jobs
    .par_iter()
    .map(|(_, p)| {
      let dim = Layout::new(p, n, columns).dim;
      dim - tot_d(p, n, columns).rank() - tot_d(p, n + 1, columns).rank()
    })
    .collect();
  Ok(collect_degree(n, jobs.iter().map(|x| x.0), dims))
}

/// Checks that the total differential of the column-truncated bicomplex squares to zero in
/// every degree where it is determined.
pub fn check_total_square_zero(m: &MixedComplex, columns: usize) -> Result<(), HomologyError> {
  for (w, p) in &m.pieces {
    let top = if p.bounded() { p.top() + 2 * columns as i64 } else { p.top() };
    for n in p.low() + 1..=top {
      if !tot_d(p, n - 1, columns).mul(&tot_d(p, n, columns))?.is_zero() {
        return Err(MixedError::Relation { relation: "(b+B)²", weight: w.clone(), degree: n }.into());
      }
    }
  }
  Ok(())
}

/// Result of one piece (or component): `(even, odd)` and whether it is certified.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct PieceHp {
  pub dims:       [usize; 2],
  pub stabilized: bool,
}

/// Top total degree of parity `parity` read for a truncated piece: inside the safe band and
/// low enough for `columns` columns to compute `HC_m` exactly.
pub(crate) fn truncated_top(piece: &MixedPiece, parity: i64, columns: usize) -> i64 {
  let mut m = (piece.top() - 2).min(piece.low() + 2 * columns as i64 - 3);
  if m.rem_euclid(2) != parity {
    m -= 1;
  }
  m
}

/// Rank of `S: HC_m → HC_{m−2}` with the given columns.
pub(crate) fn s_rank(piece: &MixedPiece, m: i64, cols: usize, cache: &mut HashMap<(i64, usize), usize>) -> usize {
  if m - 2 < piece.low() {
    return 0;
  }
  let mut rank_d = |k: i64| *cache.entry((k, cols)).or_insert_with(|| tot_d(piece, k, cols).rank());
  let (r_top, r_below) = (rank_d(m), rank_d(m - 1));
  let d_top = tot_d(piece, m, cols);
  let d_below = tot_d(piece, m - 1, cols);
  let s = tot_fs(piece, piece, &|n| SparseMatrix::identity(piece.dim(n)), m, cols);
  stacked_rank(&d_top, &s, &d_below) - r_top - r_below
}

/// `rank [[a, 0], [f, c]]` for `a: X → X'`, `f: X → Y`, `c: W → Y`.
pub(crate) fn stacked_rank(a: &SparseMatrix<Q>, f: &SparseMatrix<Q>, c: &SparseMatrix<Q>) -> usize {
  let zero = SparseMatrix::zero(a.rows(), c.cols());
  let m = crate::qlinalg::block_matrix(
    &[a.rows(), f.rows()],
    &[a.cols(), c.cols()],
    &[vec![Some(a), Some(&zero)], vec![Some(f), Some(c)]],
  )
  .expect("block shapes agree by construction");
  m.rank()
}

/// HP of a single piece or component.
pub(crate) fn piece_hp(piece: &MixedPiece, columns: usize) -> PieceHp {
  if piece.bounded() {
    let (r_even, r_odd) = (z2_d(piece, 0).rank(), z2_d(piece, 1).rank());
    let dim = |parity: i64| (piece.low()..=piece.top()).filter(|n| n.rem_euclid(2) == parity).map(|n| piece.dim(n)).sum::<usize>();
    return PieceHp { dims: [dim(0) - r_even - r_odd, dim(1) - r_even - r_odd], stabilized: true };
  }
  let mut cache = HashMap::new();
  let mut dims = [0, 0];
  let mut stabilized = true;
  for parity in 0..2 {
    let m = truncated_top(piece, parity, columns);
    let hi = s_rank(piece, m, columns, &mut cache);
    let lo = if m - 4 >= piece.low() && columns >= 2 { Some(s_rank(piece, m - 2, columns - 1, &mut cache)) } else { None };
    dims[sign_of(parity)] = hi;
    if lo != Some(hi) {
      stabilized = false;
    }
  }
  PieceHp { dims, stabilized }
}

/// Periodic cyclic homology with `columns` bicomplex columns.
pub fn periodic(m: &MixedComplex, columns: usize) -> Result<HPReport, HomologyError> {
  m.check_relations()?;
  let jobs: Vec<(usize, MixedPiece)> = m
    .pieces
    .values()
    .enumerate()
    .flat_map(|(k, p)| split::components(p).into_iter().map(move |c| (k, c)))
    .collect();
  let results: Vec<(usize, PieceHp)> = jobs.par_iter().map(|(k, c)| (*k, piece_hp(c, columns))).collect();
  let weights: Vec<&Weight> = m.pieces.keys().collect();
  let mut per_weight: BTreeMap<Weight, (usize, usize)> = BTreeMap::new();
  let mut unstable = Vec::new();
  for (k, r) in results {
    let w = weights[k];
    let e = per_weight.entry(w.clone()).or_insert((0, 0));
    e.0 += r.dims[0];
    e.1 += r.dims[1];
    if !r.stabilized && unstable.last() != Some(w) {
      unstable.push(w.clone());
    }
  }
  per_weight.retain(|_, v| *v != (0, 0));
  let n_max = m.truncation_top();
  let safe_band = n_max.map(|top| (m.pieces.values().map(MixedPiece::low).min().unwrap_or(0), top - 2));
  Ok(HPReport {
    even_dim: per_weight.values().map(|v| v.0).sum(),
    odd_dim: per_weight.values().map(|v| v.1).sum(),
    stabilized: unstable.is_empty(),
    n_max,
    w_max: None,
    columns,
    safe_band,
    per_weight,
    unstable,
  })
}

/// Rank of the map induced on homology by the chain-level `f`, exposed for tests.
pub fn induced_rank(cycle_test: &SparseMatrix<Q>, f: &SparseMatrix<Q>, boundaries: &SparseMatrix<Q>) -> usize {
  induced_homology_rank(cycle_test, f, boundaries).expect("shapes agree")
}

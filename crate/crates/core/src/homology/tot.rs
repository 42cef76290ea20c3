//! Column-truncated totalization of the `(b, B)`-bicomplex.
//!
//! Column `p` of total degree `m` holds `M_{m−2p}`; `b` stays in its column and `B` moves one
//! column to the left, so keeping columns `0..cols` gives a subcomplex.

use crate::mixed::MixedPiece;
use crate::qlinalg::{SparseMatrix, Q};

/// Summands `(column, degree, offset)` of `Tot_m` and its dimension.
pub(crate) struct Layout {
  pub parts: Vec<(usize, i64, usize)>,
  pub dim:   usize,
}

impl Layout {
  pub fn new(piece: &MixedPiece, m: i64, cols: usize) -> Layout {
    let mut parts = Vec::new();
    let mut dim = 0;
    for p in 0..cols {
      let deg = m - 2 * p as i64;
      if deg < piece.low() {
        break;
      }
      let k = piece.dim(deg);
      parts.push((p, deg, dim));
      dim += k;
    }
    Layout { parts, dim }
  }

  fn offset_of_column(&self, p: usize) -> Option<usize> { self.parts.iter().find(|x| x.0 == p).map(|x| x.2) }
}

fn place(columns: &mut [Vec<(usize, Q)>], m: &SparseMatrix<Q>, row_off: usize, col_off: usize) {
  for (j, col) in m.columns().iter().enumerate() {
    columns[col_off + j].extend(col.iter().map(|(r, v)| (row_off + r, v.clone())));
  }
}

/// `d = b + B: Tot_m → Tot_{m−1}`.
pub(crate) fn tot_d(piece: &MixedPiece, m: i64, cols: usize) -> SparseMatrix<Q> {
  let src = Layout::new(piece, m, cols);
  let tgt = Layout::new(piece, m - 1, cols);
  let mut columns = vec![Vec::new(); src.dim];
  for &(p, deg, off) in &src.parts {
    if let (Some(b), Some(roff)) = (piece.b_ref(deg), tgt.offset_of_column(p)) {
      place(&mut columns, b, roff, off);
    }
    if p > 0 {
      if let (Some(bb), Some(roff)) = (piece.big_b_ref(deg), tgt.offset_of_column(p - 1)) {
        place(&mut columns, bb, roff, off);
      }
    }
  }
  SparseMatrix::from_columns(tgt.dim, columns)
}

/// `F∘S: Tot_m(source) → Tot_{m−2}(target)`: drop column 0, shift the others left and apply
/// `f(deg)` degreewise. Passing the identity gives Connes' periodicity map `S`.
pub(crate) fn tot_fs(
  source: &MixedPiece,
  target: &MixedPiece,
  f: &dyn Fn(i64) -> SparseMatrix<Q>,
  m: i64,
  cols: usize,
) -> SparseMatrix<Q> {
  let src = Layout::new(source, m, cols);
  let tgt = Layout::new(target, m - 2, cols);
  let mut columns = vec![Vec::new(); src.dim];
  for &(p, deg, off) in &src.parts {
    if p == 0 {
      continue;
    }
    if let Some(roff) = tgt.offset_of_column(p - 1) {
      place(&mut columns, &f(deg), roff, off);
    }
  }
  SparseMatrix::from_columns(tgt.dim, columns)
}

/// Degrees of parity `parity` in `low ..= top`, with offsets, for the ℤ/2-graded complex.
pub(crate) fn parity_layout(piece: &MixedPiece, parity: i64) -> (Vec<(i64, usize)>, usize) {
  let mut out = Vec::new();
  let mut dim = 0;
  for n in piece.low()..=piece.top() {
    if n.rem_euclid(2) == parity {
      out.push((n, dim));
      dim += piece.dim(n);
    }
  }
  (out, dim)
}

/// `b + B` from the parity-`parity` part to the other one, for a bounded piece.
pub(crate) fn z2_d(piece: &MixedPiece, parity: i64) -> SparseMatrix<Q> {
  let (src, sdim) = parity_layout(piece, parity);
  let (tgt, tdim) = parity_layout(piece, 1 - parity);
  let off = |n: i64| tgt.iter().find(|x| x.0 == n).map(|x| x.1);
  let mut columns = vec![Vec::new(); sdim];
  for &(n, o) in &src {
    if let (Some(b), Some(r)) = (piece.b_ref(n), off(n - 1)) {
      place(&mut columns, b, r, o);
    }
    if let (Some(bb), Some(r)) = (piece.big_b_ref(n), off(n + 1)) {
      place(&mut columns, bb, r, o);
    }
  }
  SparseMatrix::from_columns(tdim, columns)
}

/// Degreewise map on the parity-`parity` part of the ℤ/2-graded complexes.
pub(crate) fn z2_f(
  source: &MixedPiece,
  target: &MixedPiece,
  f: &dyn Fn(i64) -> SparseMatrix<Q>,
  parity: i64,
) -> SparseMatrix<Q> {
  let (src, sdim) = parity_layout(source, parity);
  let (tgt, tdim) = parity_layout(target, parity);
  let mut columns = vec![Vec::new(); sdim];
  for &(n, o) in &src {
    if let Some(&(_, r)) = tgt.iter().find(|x| x.0 == n) {
      place(&mut columns, &f(n), r, o);
    }
  }
  SparseMatrix::from_columns(tdim, columns)
}

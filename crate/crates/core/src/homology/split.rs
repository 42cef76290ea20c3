//! Splitting a weight piece into the connected components of its operators.
//!
//! Basis vectors linked by a nonzero entry of `b` or `B` are put in the same component; the
//! piece is the direct sum of the resulting subcomplexes, which are much smaller for algebras
//! with a hidden grading (matrix algebras, for example).

use crate::mixed::{ChainPiece, MixedPiece};
use crate::qlinalg::{SparseMatrix, Q};

struct UnionFind {
  parent: Vec<usize>,
}

impl UnionFind {
  fn new(n: usize) -> Self { UnionFind { parent: (0..n).collect() } }

  fn find(&mut self, mut x: usize) -> usize {
    while self.parent[x] != x {
      self.parent[x] = self.parent[self.parent[x]];
      x = self.parent[x];
    }
    x
  }

  fn union(&mut self, a: usize, b: usize) {
    let (ra, rb) = (self.find(a), self.find(b));
    if ra != rb {
      self.parent[ra.max(rb)] = ra.min(rb);
    }
  }
}

/// Components in a fixed order (by smallest node), each as a standalone piece with the same
/// degree range and boundedness.
pub(crate) fn components(piece: &MixedPiece) -> Vec<MixedPiece> {
  let low = piece.low();
  let top = piece.top();
  let degrees: Vec<i64> = (low..=top).collect();
  let mut offsets = Vec::with_capacity(degrees.len());
  let mut total = 0;
  for &n in &degrees {
    offsets.push(total);
    total += piece.dim(n);
  }
  if total == 0 {
    return vec![piece.clone()];
  }
  let node = |n: i64, i: usize| offsets[(n - low) as usize] + i;
  let mut uf = UnionFind::new(total);
  for &n in &degrees {
    if let Some(b) = piece.b_ref(n) {
      for (j, col) in b.columns().iter().enumerate() {
        for (r, _) in col {
          uf.union(node(n, j), node(n - 1, *r));
        }
      }
    }
    if let Some(bb) = piece.big_b_ref(n) {
      for (j, col) in bb.columns().iter().enumerate() {
        for (r, _) in col {
          uf.union(node(n, j), node(n + 1, *r));
        }
      }
    }
  }
  // component ids in order of first appearance
  let mut comp_of_root = std::collections::HashMap::new();
  let mut comp = vec![0usize; total];
  for x in 0..total {
    let r = uf.find(x);
    let next = comp_of_root.len();
    comp[x] = *comp_of_root.entry(r).or_insert(next);
  }
  let ncomp = comp_of_root.len();
  if ncomp == 1 {
    return vec![piece.clone()];
  }
  // local index of every node inside its component, per degree
  let mut local = vec![0usize; total];
  let mut sizes = vec![vec![0usize; degrees.len()]; ncomp];
  let mut labels: Vec<Vec<Vec<String>>> = vec![vec![Vec::new(); degrees.len()]; ncomp];
  for (k, &n) in degrees.iter().enumerate() {
    for i in 0..piece.dim(n) {
      let x = node(n, i);
      let c = comp[x];
      local[x] = sizes[c][k];
      sizes[c][k] += 1;
      labels[c][k].push(piece.labels(n)[i].clone());
    }
  }
  let split = |m: Option<&SparseMatrix<Q>>, n: i64, target: i64, c_rows: &dyn Fn(usize) -> usize| {
    let mut cols: Vec<Vec<Vec<(usize, Q)>>> = (0..ncomp).map(|c| vec![Vec::new(); sizes[c][(n - low) as usize]]).collect();
    if let Some(m) = m {
      for (j, col) in m.columns().iter().enumerate() {
        let x = node(n, j);
        let c = comp[x];
        cols[c][local[x]] = col.iter().map(|(r, v)| (local[node(target, *r)], v.clone())).collect();
      }
    }
    cols.into_iter().enumerate().map(|(c, cs)| SparseMatrix::from_columns(c_rows(c), cs)).collect::<Vec<_>>()
  };
  let size_at = |c: usize, n: i64| if n < low || n > top { 0 } else { sizes[c][(n - low) as usize] };
  let mut ds: Vec<Vec<SparseMatrix<Q>>> = vec![Vec::new(); ncomp];
  let mut bbs: Vec<Vec<SparseMatrix<Q>>> = vec![Vec::new(); ncomp];
  for &n in &degrees {
    let d = split(piece.b_ref(n), n, n - 1, &|c| size_at(c, n - 1));
    let bb_rows = |c: usize| if n == top { 0 } else { size_at(c, n + 1) };
    let bb = split(piece.big_b_ref(n), n, n + 1, &bb_rows);
    for (c, (d, bb)) in d.into_iter().zip(bb).enumerate() {
      ds[c].push(d);
      bbs[c].push(bb);
    }
  }
  (0..ncomp)
    .map(|c| MixedPiece {
      chain: ChainPiece {
        low,
        labels: std::mem::take(&mut labels[c]),
        d: std::mem::take(&mut ds[c]),
        bounded: piece.bounded(),
      },
      big_b: std::mem::take(&mut bbs[c]),
    })
    .collect()
}

/// Block-diagonal sum of pieces over a common degree range. Truncated summands cap the range
/// at their smallest top.
pub(crate) fn direct_sum(pieces: &[&MixedPiece]) -> MixedPiece {
  let low = pieces.iter().map(|p| p.low()).min().unwrap_or(0);
  let bounded = pieces.iter().all(|p| p.bounded());
  let top = if bounded {
    pieces.iter().map(|p| p.top()).max().unwrap_or(low)
  } else {
    pieces.iter().filter(|p| !p.bounded()).map(|p| p.top()).min().unwrap()
  };
  let dim = |n: i64| pieces.iter().map(|p| p.dim(n)).sum::<usize>();
  let mut labels = Vec::new();
  let mut d = Vec::new();
  let mut big_b = Vec::new();
  for n in low..=top {
    labels.push(pieces.iter().flat_map(|p| p.labels(n).iter().cloned()).collect());
    let mut dcols = Vec::new();
    let mut bcols = Vec::new();
    let (mut roff_d, mut roff_b) = (0, 0);
    for p in pieces {
      let b = p.b(n);
      dcols.extend(b.columns().iter().map(|c| c.iter().map(|(r, v)| (roff_d + r, v.clone())).collect::<Vec<_>>()));
      roff_d += p.dim(n - 1);
      let bb = if n < top { p.big_b(n).unwrap_or_else(|| SparseMatrix::zero(p.dim(n + 1), p.dim(n))) } else { SparseMatrix::zero(0, p.dim(n)) };
      bcols.extend(bb.columns().iter().map(|c| c.iter().map(|(r, v)| (roff_b + r, v.clone())).collect::<Vec<_>>()));
      roff_b += if n < top { p.dim(n + 1) } else { 0 };
    }
    d.push(SparseMatrix::from_columns(if n == low { 0 } else { dim(n - 1) }, dcols));
    big_b.push(SparseMatrix::from_columns(if n < top { dim(n + 1) } else { 0 }, bcols));
  }
  MixedPiece { chain: ChainPiece { low, labels, d, bounded }, big_b }
}

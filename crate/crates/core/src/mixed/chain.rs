use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::qlinalg::{block_matrix, homology_dim, SparseMatrix, Q};

use super::MixedError;

/// Multi-coordinate weight. Pieces of every complex in this module are keyed by it; all
/// operators preserve it.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Weight(pub Vec<i64>);

impl Weight {
  pub fn concat(&self, other: &Weight) -> Weight { Weight(self.0.iter().chain(&other.0).copied().collect()) }

  pub fn is_zero(&self) -> bool { self.0.iter().all(|&w| w == 0) }
}

impl From<Vec<i64>> for Weight {
  fn from(v: Vec<i64>) -> Self { Weight(v) }
}

impl fmt::Display for Weight {
  fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    match self.0.as_slice() {
      [w] => write!(f, "{w}"),
      ws => write!(f, "({})", ws.iter().map(i64::to_string).collect::<Vec<_>>().join(",")),
    }
  }
}

impl Serialize for Weight {
  fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> { s.serialize_str(&self.to_string()) }
}

/// One weight piece of a chain complex: degrees `low ..= top`, `d` of degree −1.
///
/// A `bounded` piece is genuinely zero above `top`. Otherwise it is the truncation of an
/// infinite complex and only degrees well inside the range carry meaning.
#[derive(Clone, Debug, PartialEq)]
pub struct ChainPiece {
  pub low:     i64,
  pub labels:  Vec<Vec<String>>,
  /// `d[k]` maps degree `low + k` to degree `low + k − 1`.
  pub d:       Vec<SparseMatrix<Q>>,
  pub bounded: bool,
}

impl ChainPiece {
  /// Piece with the given bases and zero differential.
  pub fn zero(low: i64, labels: Vec<Vec<String>>, bounded: bool) -> Self {
    let dims: Vec<usize> = labels.iter().map(Vec::len).collect();
    let d = (0..dims.len()).map(|k| SparseMatrix::zero(if k == 0 { 0 } else { dims[k - 1] }, dims[k])).collect();
    ChainPiece { low, labels, d, bounded }
  }

  pub fn top(&self) -> i64 { self.low + self.labels.len() as i64 - 1 }

  pub fn dim(&self, n: i64) -> usize { self.slot(n).map_or(0, |k| self.labels[k].len()) }

  pub fn labels(&self, n: i64) -> &[String] { self.slot(n).map_or(&[], |k| &self.labels[k]) }

  pub(crate) fn slot(&self, n: i64) -> Option<usize> {
    (n >= self.low && n <= self.top()).then(|| (n - self.low) as usize)
  }

  /// `d: Cₙ → Cₙ₋₁`, the zero map of the right shape outside the stored range.
  pub fn d(&self, n: i64) -> SparseMatrix<Q> {
    match self.slot(n) {
      Some(k) if k > 0 => self.d[k].clone(),
      _ => SparseMatrix::zero(self.dim(n - 1), self.dim(n)),
    }
  }

  pub(crate) fn d_ref(&self, n: i64) -> Option<&SparseMatrix<Q>> { self.slot(n).filter(|&k| k > 0).map(|k| &self.d[k]) }

  /// Highest degree whose homology is determined by the stored data.
  pub fn reliable_top(&self) -> Option<i64> { if self.bounded { None } else { Some(self.top() - 1) } }

  pub fn homology(&self, n: i64) -> Result<usize, MixedError> {
    Ok(homology_dim(&self.d(n + 1), &self.d(n))?)
  }
}

/// Weight-graded chain complex over ℚ.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct ChainComplex {
  pub pieces: BTreeMap<Weight, ChainPiece>,
}

impl ChainComplex {
  pub fn new(pieces: BTreeMap<Weight, ChainPiece>) -> Result<Self, MixedError> {
    let c = ChainComplex { pieces };
    c.check_square_zero()?;
    Ok(c)
  }

  pub fn piece(&self, w: &Weight) -> Option<&ChainPiece> { self.pieces.get(w) }

  pub fn check_square_zero(&self) -> Result<(), MixedError> {
    for (w, p) in &self.pieces {
      for n in p.low..=p.top() {
        if !p.d(n - 1).mul(&p.d(n))?.is_zero() {
          return Err(MixedError::Relation { relation: "d∘d", weight: w.clone(), degree: n });
        }
      }
    }
    Ok(())
  }

  /// Homology dimension in degree `n`, summed over weights.
  pub fn homology(&self, n: i64) -> Result<usize, MixedError> {
    self.pieces.values().map(|p| p.homology(n)).sum()
  }

  /// Nonzero homology dimensions as `(weight, degree, dim)`.
  pub fn homology_table(&self) -> Result<Vec<(Weight, i64, usize)>, MixedError> {
    let mut out = Vec::new();
    for (w, p) in &self.pieces {
      for n in p.low..=p.reliable_top().unwrap_or(p.top()) {
        let h = p.homology(n)?;
        if h > 0 {
          out.push((w.clone(), n, h));
        }
      }
    }
    Ok(out)
  }
}

/// Weight-preserving degree-0 map between chain complexes: `blocks[w][n]: sourceₙ → targetₙ`.
#[derive(Clone, Debug, PartialEq)]
pub struct ChainMap {
  pub source: ChainComplex,
  pub target: ChainComplex,
  pub blocks: BTreeMap<Weight, BTreeMap<i64, SparseMatrix<Q>>>,
}

impl ChainMap {
  /// Block `sourceₙ → targetₙ` in weight `w`, zero when absent.
  pub fn block(&self, w: &Weight, n: i64) -> SparseMatrix<Q> {
    let rows = self.target.piece(w).map_or(0, |p| p.dim(n));
    let cols = self.source.piece(w).map_or(0, |p| p.dim(n));
    match self.blocks.get(w).and_then(|b| b.get(&n)) {
      Some(m) => m.clone(),
      None => SparseMatrix::zero(rows, cols),
    }
  }

  pub fn identity(c: &ChainComplex) -> Self {
    let blocks = c
      .pieces
      .iter()
      .map(|(w, p)| (w.clone(), (p.low..=p.top()).map(|n| (n, SparseMatrix::identity(p.dim(n)))).collect()))
      .collect();
    ChainMap { source: c.clone(), target: c.clone(), blocks }
  }

  /// Zero map between the given complexes.
  pub fn zero(source: ChainComplex, target: ChainComplex) -> Self { ChainMap { source, target, blocks: BTreeMap::new() } }

  fn weights(&self) -> Vec<Weight> {
    let mut ws: Vec<Weight> = self.source.pieces.keys().chain(self.target.pieces.keys()).cloned().collect();
    ws.sort();
    ws.dedup();
    ws
  }

  fn range(&self, w: &Weight) -> (i64, i64) {
    let s = self.source.piece(w);
    let t = self.target.piece(w);
    let low = s.map(|p| p.low).into_iter().chain(t.map(|p| p.low)).min().unwrap_or(0);
    let top = s.map(|p| p.top()).into_iter().chain(t.map(|p| p.top())).max().unwrap_or(-1);
    (low, top)
  }

  fn piece_or_empty(c: &ChainComplex, w: &Weight) -> ChainPiece {
    c.piece(w).cloned().unwrap_or_else(|| ChainPiece::zero(0, Vec::new(), true))
  }

  /// Checks `d∘f = f∘d` in every weight and degree.
  pub fn check(&self) -> Result<(), MixedError> {
    for w in self.weights() {
      let (s, t) = (Self::piece_or_empty(&self.source, &w), Self::piece_or_empty(&self.target, &w));
      let (low, top) = self.range(&w);
      for n in low..=top {
        let lhs = t.d(n).mul(&self.block(&w, n))?;
        let rhs = self.block(&w, n - 1).mul(&s.d(n))?;
        if lhs != rhs {
          return Err(MixedError::NotChainMap { weight: w, degree: n });
        }
      }
    }
    Ok(())
  }
}

/// Mapping cone: `cone(f)ₙ = sourceₙ₋₁ ⊕ targetₙ`, `d(x, y) = (−dx, f(x) + dy)`.
pub fn cone(f: &ChainMap) -> Result<ChainComplex, MixedError> {
  f.check()?;
  let mut pieces = BTreeMap::new();
  for w in f.weights() {
    let (s, t) = (ChainMap::piece_or_empty(&f.source, &w), ChainMap::piece_or_empty(&f.target, &w));
    let (low, top) = f.range(&w);
    let (low, top) = (low, top + 1);
    let mut labels = Vec::new();
    let mut d = Vec::new();
    for n in low..=top {
      let mut l: Vec<String> = s.labels(n - 1).iter().map(|x| format!("s·{x}")).collect();
      l.extend(t.labels(n).iter().cloned());
      labels.push(l);
      let src_d = s.d(n - 1).neg();
      let fx = f.block(&w, n - 1);
      let dy = t.d(n);
      let m = block_matrix(
        &[s.dim(n - 2), t.dim(n - 1)],
        &[s.dim(n - 1), t.dim(n)],
        &[vec![Some(&src_d), None], vec![Some(&fx), Some(&dy)]],
      )?;
      d.push(if n == low { SparseMatrix::zero(0, m.cols()) } else { m });
    }
    pieces.insert(w, ChainPiece { low, labels, d, bounded: s.bounded && t.bounded });
  }
  ChainComplex::new(pieces)
}

#[cfg(test)]
mod tests {
  use super::*;

  fn single(dims: &[usize], ds: Vec<SparseMatrix<Q>>) -> ChainComplex {
    let labels = dims.iter().enumerate().map(|(n, &k)| (0..k).map(|i| format!("c{n}_{i}")).collect()).collect();
    let mut p = ChainPiece::zero(0, labels, true);
    for (k, m) in ds.into_iter().enumerate() {
      p.d[k + 1] = m;
    }
    ChainComplex::new([(Weight(vec![0]), p)].into()).unwrap()
  }

  fn q(rows: &[&[i64]]) -> SparseMatrix<Q> {
    SparseMatrix::from_dense(&rows.iter().map(|r| r.iter().map(|&x| Q::from_int(x)).collect()).collect::<Vec<_>>())
  }

  #[test]
  fn cone_of_identity_is_acyclic() {
    let c = single(&[2, 1], vec![q(&[&[1], &[0]])]);
    let k = cone(&ChainMap::identity(&c)).unwrap();
    for n in -1..4 {
      assert_eq!(k.homology(n).unwrap(), 0, "degree {n}");
    }
  }

  #[test]
  fn cone_of_zero_from_empty_is_target() {
    let c = single(&[1, 2, 1], vec![q(&[&[0, 0]]), q(&[&[1], &[-1]])]);
    let k = cone(&ChainMap::zero(ChainComplex::default(), c.clone())).unwrap();
    for n in 0..3 {
      assert_eq!(k.homology(n).unwrap(), c.homology(n).unwrap());
    }
  }

  #[test]
  fn non_chain_map_rejected() {
    let c = single(&[1, 1], vec![q(&[&[1]])]);
    let mut f = ChainMap::identity(&c);
    f.blocks.get_mut(&Weight(vec![0])).unwrap().insert(1, SparseMatrix::zero(1, 1));
    assert!(matches!(cone(&f), Err(MixedError::NotChainMap { .. })));
  }

  #[test]
  fn weight_display() {
    assert_eq!(Weight(vec![3]).to_string(), "3");
    assert_eq!(Weight(vec![0, -1]).to_string(), "(0,-1)");
  }
}

use std::collections::BTreeMap;

use crate::qlinalg::{SparseMatrix, Q};

use super::chain::{ChainComplex, ChainPiece, Weight};
use super::MixedError;

/// One weight piece of a mixed complex: a chain piece with `b` plus Connes' operator `B` of
/// degree +1.
#[derive(Clone, Debug, PartialEq)]
pub struct MixedPiece {
  pub chain: ChainPiece,
  /// `big_b[k]` maps degree `low + k` to degree `low + k + 1`. At the top degree it has zero
  /// rows; for a truncated piece that entry is unknown rather than zero.
  pub big_b: Vec<SparseMatrix<Q>>,
}

impl MixedPiece {
  pub fn low(&self) -> i64 { self.chain.low }

  pub fn top(&self) -> i64 { self.chain.top() }

  pub fn bounded(&self) -> bool { self.chain.bounded }

  pub fn dim(&self, n: i64) -> usize { self.chain.dim(n) }

  pub fn labels(&self, n: i64) -> &[String] { self.chain.labels(n) }

  /// `b: Mₙ → Mₙ₋₁` (zero of the right shape outside the stored range).
  pub fn b(&self, n: i64) -> SparseMatrix<Q> { self.chain.d(n) }

  pub fn b_ref(&self, n: i64) -> Option<&SparseMatrix<Q>> { self.chain.d_ref(n) }

  /// `B: Mₙ → Mₙ₊₁`. `None` above the reliable range of a truncated piece.
  pub fn big_b(&self, n: i64) -> Option<SparseMatrix<Q>> {
    if !self.bounded() && n >= self.top() {
      return None;
    }
    Some(match self.chain.slot(n) {
      Some(k) if n < self.top() => self.big_b[k].clone(),
      _ => SparseMatrix::zero(self.dim(n + 1), self.dim(n)),
    })
  }

  pub fn big_b_ref(&self, n: i64) -> Option<&SparseMatrix<Q>> {
    self.chain.slot(n).filter(|_| n < self.top()).map(|k| &self.big_b[k])
  }

  /// Total dimension over the stored degrees.
  pub fn total_dim(&self) -> usize { self.chain.labels.iter().map(Vec::len).sum() }

  /// Highest degree for which every relation can be checked.
  fn checkable_top(&self, shift: i64) -> i64 { if self.bounded() { self.top() } else { self.top() - shift } }

  /// Checks `b² = 0`, `B² = 0` and `bB + Bb = 0` wherever the stored data determines them.
  pub fn check_relations(&self, w: &Weight) -> Result<(), MixedError> {
    let fail = |relation, degree| MixedError::Relation { relation, weight: w.clone(), degree };
    for n in self.low()..=self.top() {
      if !self.b(n - 1).mul(&self.b(n))?.is_zero() {
        return Err(fail("b∘b", n));
      }
    }
    for n in self.low()..=self.checkable_top(2) {
      let (b1, b2) = (self.big_b(n).unwrap(), self.big_b(n + 1).unwrap());
      if !b2.mul(&b1)?.is_zero() {
        return Err(fail("B∘B", n));
      }
    }
    for n in self.low()..=self.checkable_top(1) {
      let bb = self.b(n + 1).mul(&self.big_b(n).unwrap())?;
      let bb2 = match self.big_b(n - 1) {
        Some(m) => m.mul(&self.b(n))?,
        None => unreachable!("B below the top is always known"),
      };
      if !bb.add(&bb2)?.is_zero() {
        return Err(fail("bB+Bb", n));
      }
    }
    Ok(())
  }
}

/// Weight-graded mixed complex over ℚ.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct MixedComplex {
  pub name:   String,
  pub pieces: BTreeMap<Weight, MixedPiece>,
}

impl MixedComplex {
  pub fn piece(&self, w: &Weight) -> Option<&MixedPiece> { self.pieces.get(w) }

  pub fn weights(&self) -> impl Iterator<Item = &Weight> { self.pieces.keys() }

  /// Dimension in degree `n`, summed over weights.
  pub fn dim(&self, n: i64) -> usize { self.pieces.values().map(|p| p.dim(n)).sum() }

  pub fn check_relations(&self) -> Result<(), MixedError> {
    self.pieces.iter().try_for_each(|(w, p)| p.check_relations(w))
  }

  /// Lowest `top` over truncated pieces; `None` when every piece is bounded.
  pub fn truncation_top(&self) -> Option<i64> {
    self.pieces.values().filter(|p| !p.bounded()).map(MixedPiece::top).min()
  }

  /// The underlying chain complex `(M, b)`.
  pub fn underlying(&self) -> ChainComplex {
    ChainComplex { pieces: self.pieces.iter().map(|(w, p)| (w.clone(), p.chain.clone())).collect() }
  }

  pub fn with_name(mut self, name: impl Into<String>) -> Self {
    self.name = name.into();
    self
  }
}

/// Degree shift by +1 with both operators negated.
pub fn suspend(m: &MixedComplex) -> MixedComplex {
  let pieces = m
    .pieces
    .iter()
    .map(|(w, p)| {
      let chain = ChainPiece {
        low:     p.low() + 1,
        labels:  p.chain.labels.iter().map(|ls| ls.iter().map(|l| format!("Σ{l}")).collect()).collect(),
        d:       p.chain.d.iter().map(SparseMatrix::neg).collect(),
        bounded: p.bounded(),
      };
      (w.clone(), MixedPiece { chain, big_b: p.big_b.iter().map(SparseMatrix::neg).collect() })
    })
    .collect();
  MixedComplex { name: format!("Σ{}", m.name), pieces }
}

/// Graded tensor product with Koszul signs: `op(x⊗y) = op(x)⊗y + (−1)^{|x|} x⊗op(y)` for both
/// `b` and `B`. Weight keys are concatenated.
pub fn tensor_mixed(m1: &MixedComplex, m2: &MixedComplex) -> Result<MixedComplex, MixedError> {
  let mut pieces = BTreeMap::new();
  for (w1, p1) in &m1.pieces {
    for (w2, p2) in &m2.pieces {
      let piece = tensor_pieces(p1, p2);
      if piece.total_dim() > 0 {
        pieces.insert(w1.concat(w2), piece);
      }
    }
  }
  let out = MixedComplex { name: format!("{}⊗{}", m1.name, m2.name), pieces };
  out.check_relations()?;
  Ok(out)
}

fn tensor_pieces(p1: &MixedPiece, p2: &MixedPiece) -> MixedPiece {
  let low = p1.low() + p2.low();
  let bounded = p1.bounded() && p2.bounded();
  let top = match (p1.bounded(), p2.bounded()) {
    (true, true) => p1.top() + p2.top(),
    (false, true) => p1.top() + p2.low(),
    (true, false) => p2.top() + p1.low(),
    (false, false) => (p1.top() + p2.low()).min(p2.top() + p1.low()),
  };
  // summands of degree n: (i, offset) for M1_i ⊗ M2_{n−i}
  let layout = |n: i64| -> Vec<(i64, usize)> {
    let mut off = 0;
    let mut out = Vec::new();
    for i in p1.low()..=p1.top() {
      let j = n - i;
      let k = p1.dim(i) * p2.dim(j);
      if k > 0 {
        out.push((i, off));
        off += k;
      }
    }
    out
  };
  let dim = |n: i64| -> usize { (p1.low()..=p1.top()).map(|i| p1.dim(i) * p2.dim(n - i)).sum() };
  let mut labels = Vec::new();
  let mut d = Vec::new();
  let mut big_b = Vec::new();
  for n in low..=top {
    let mut ls = Vec::new();
    for (i, _) in layout(n) {
      for x in p1.labels(i) {
        for y in p2.labels(n - i) {
          ls.push(format!("{x}⊗{y}"));
        }
      }
    }
    labels.push(ls);
    // op1 of degree δ on the first factor, op2 on the second: x⊗y ↦ op1(x)⊗y + (−1)^{|x|} x⊗op2(y)
    let build = |delta: i64, op1: &dyn Fn(i64) -> Option<SparseMatrix<Q>>, op2: &dyn Fn(i64) -> Option<SparseMatrix<Q>>| {
      let target = n + delta;
      let rows = if target < low || target > top { 0 } else { dim(target) };
      let tlayout: BTreeMap<i64, usize> = if rows == 0 { BTreeMap::new() } else { layout(target).into_iter().collect() };
      let mut entries = Vec::new();
      for (i, off) in layout(n) {
        let j = n - i;
        let (d1, d2) = (p1.dim(i), p2.dim(j));
        let sign = if i.rem_euclid(2) == 0 { Q::one() } else { Q::from_int(-1) };
        if let (Some(m), Some(&toff)) = (op1(i), tlayout.get(&(i + delta))) {
          for (x, col) in m.columns().iter().enumerate() {
            for (r, c) in col {
              for y in 0..d2 {
                entries.push((toff + r * d2 + y, off + x * d2 + y, c.clone()));
              }
            }
          }
        }
        if let (Some(m), Some(&toff)) = (op2(j), tlayout.get(&i)) {
          let td2 = p2.dim(j + delta);
          for (y, col) in m.columns().iter().enumerate() {
            for (r, c) in col {
              for x in 0..d1 {
                entries.push((toff + x * td2 + r, off + x * d2 + y, c.mul(&sign)));
              }
            }
          }
        }
      }
      SparseMatrix::from_triplets(rows, dim(n), entries)
    };
    d.push(build(-1, &|i| Some(p1.b(i)), &|j| Some(p2.b(j))));
    big_b.push(build(1, &|i| p1.big_b(i), &|j| p2.big_b(j)));
  }
  MixedPiece { chain: ChainPiece { low, labels, d, bounded }, big_b }
}

/// Weight-preserving map of mixed complexes, given by blocks
/// `blocks[(source weight, target weight)][n]: sourceₙ → targetₙ`.
#[derive(Clone, Debug, PartialEq)]
pub struct MixedComplexMap {
  pub name:   String,
  pub source: MixedComplex,
  pub target: MixedComplex,
  pub blocks: BTreeMap<(Weight, Weight), BTreeMap<i64, SparseMatrix<Q>>>,
}

impl MixedComplexMap {
  pub fn identity(m: &MixedComplex) -> Self {
    let blocks = m
      .pieces
      .iter()
      .map(|(w, p)| ((w.clone(), w.clone()), (p.low()..=p.top()).map(|n| (n, SparseMatrix::identity(p.dim(n)))).collect()))
      .collect();
    MixedComplexMap { name: format!("id_{}", m.name), source: m.clone(), target: m.clone(), blocks }
  }

  pub fn block(&self, ws: &Weight, wt: &Weight, n: i64) -> SparseMatrix<Q> {
    let rows = self.target.piece(wt).map_or(0, |p| p.dim(n));
    let cols = self.source.piece(ws).map_or(0, |p| p.dim(n));
    self.blocks.get(&(ws.clone(), wt.clone())).and_then(|b| b.get(&n)).cloned().unwrap_or(SparseMatrix::zero(rows, cols))
  }

  /// Checks `f∘b = b∘f` and `f∘B = B∘f` blockwise wherever both sides are determined.
  pub fn check_commutes(&self) -> Result<(), MixedError> {
    for (ws, wt) in self.blocks.keys() {
      let (s, t) = (&self.source.pieces[ws], &self.target.pieces[wt]);
      let top = s.top().min(t.top());
      for n in s.low().min(t.low())..=top {
        if t.b(n).mul(&self.block(ws, wt, n))? != self.block(ws, wt, n - 1).mul(&s.b(n))? {
          return Err(MixedError::NotChainMap { weight: ws.clone(), degree: n });
        }
        if n < top {
          if let (Some(bt), Some(bs)) = (t.big_b(n), s.big_b(n)) {
            if bt.mul(&self.block(ws, wt, n))? != self.block(ws, wt, n + 1).mul(&bs)? {
              return Err(MixedError::NotChainMap { weight: ws.clone(), degree: n });
            }
          }
        }
      }
    }
    Ok(())
  }
}

#[cfg(test)]
mod tests {
  use super::*;
  use crate::mixed::{bar_mixed, de_rham_model, DeRham};
  use crate::algebra::catalog;

  #[test]
  fn suspension_shifts_and_negates() {
    let m = de_rham_model(DeRham::Poly, 2);
    let s = suspend(&m);
    let w = Weight(vec![1]);
    assert_eq!(s.piece(&w).unwrap().low(), 1);
    assert_eq!(s.piece(&w).unwrap().big_b(1).unwrap(), m.piece(&w).unwrap().big_b(0).unwrap().neg());
    s.check_relations().unwrap();
  }

  #[test]
  fn tensor_with_ground_field_is_identity() {
    let k = bar_mixed(&catalog::ground_field(), 4, 4).unwrap();
    let m = bar_mixed(&catalog::truncated_polynomial(3), 4, 4).unwrap();
    let t = tensor_mixed(&k, &m).unwrap();
    assert_eq!(t.pieces.len(), m.pieces.len());
    for (w, p) in &m.pieces {
      let q = &t.pieces[&Weight(vec![0]).concat(w)];
      assert_eq!((q.low(), q.top()), (p.low(), p.top()));
      for n in p.low()..=p.top() {
        assert_eq!(q.b(n), p.b(n));
        assert_eq!(q.big_b(n), p.big_b(n));
      }
    }
  }

  #[test]
  fn tensor_of_truncated_and_bounded() {
    let m = bar_mixed(&catalog::dual_numbers(), 5, 5).unwrap();
    let l = de_rham_model(DeRham::Laurent, 2);
    let t = tensor_mixed(&m, &l).unwrap();
    let p = t.piece(&Weight(vec![0, 1])).unwrap();
    assert!(!p.bounded());
    assert_eq!(p.top(), 5);
    // degree n: M_n ⊗ Ω⁰ ⊕ M_{n−1} ⊗ Ω¹
    for n in 0..=5 {
      let mdim = |k: i64| if k < 0 { 0 } else { 2usize.pow(1) * 1usize.pow(k as u32) };
      assert_eq!(p.dim(n), mdim(n) + mdim(n - 1));
    }
  }
}

use std::collections::BTreeMap;

use crate::qlinalg::{SparseMatrix, Q};

use super::chain::{ChainPiece, Weight};
use super::complex::{MixedComplex, MixedPiece};

/// Which de Rham complex to model.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DeRham {
  /// `k[t]`: `tⁿ` for `0 ≤ n ≤ w_max`.
  Poly,
  /// `k[t, t⁻¹]`: `tⁿ` for `|n| ≤ w_max`.
  Laurent,
}

/// Two-row mixed complex `Ω⁰ → Ω¹` with `b = 0` and `B = d`, split by `t`-weight: weight `n`
/// holds `tⁿ` in degree 0 and `tⁿ⁻¹dt` in degree 1, and `B(tⁿ) = n·tⁿ⁻¹dt`.
pub fn de_rham_model(kind: DeRham, w_max: u32) -> MixedComplex {
  let w = w_max as i64;
  let range = match kind {
    DeRham::Poly => 0..=w,
    DeRham::Laurent => -w..=w,
  };
  let mono = |n: i64| match n {
    0 => "1".to_string(),
    1 => "t".to_string(),
    n => format!("t^{n}"),
  };
  let mut pieces = BTreeMap::new();
  for n in range {
    let zero_form = vec![mono(n)];
    let has_one_form = !(kind == DeRham::Poly && n == 0);
    let one_form: Vec<String> = match (has_one_form, n - 1) {
      (false, _) => Vec::new(),
      (true, 0) => vec!["dt".into()],
      (true, e) => vec![format!("{}dt", mono(e))],
    };
    let k = one_form.len();
    let chain = ChainPiece {
      low:     0,
      labels:  vec![zero_form, one_form],
      d:       vec![SparseMatrix::zero(0, 1), SparseMatrix::zero(1, k)],
      bounded: true,
    };
    let d0 = if k == 1 { SparseMatrix::from_triplets(1, 1, [(0, 0, Q::from_int(n))]) } else { SparseMatrix::zero(0, 1) };
    let big_b = vec![d0, SparseMatrix::zero(0, k)];
    pieces.insert(Weight(vec![n]), MixedPiece { chain, big_b });
  }
  let name = match kind {
    DeRham::Poly => "Ω(k[t])",
    DeRham::Laurent => "Ω(k[t,t⁻¹])",
  };
  MixedComplex { name: name.into(), pieces }
}

#[cfg(test)]
mod tests {
  use super::*;

  #[test]
  fn labels_and_operator() {
    let m = de_rham_model(DeRham::Laurent, 2);
    let p = m.piece(&Weight(vec![0])).unwrap();
    assert_eq!(p.labels(0), ["1"]);
    assert_eq!(p.labels(1), ["t^-1dt"]);
    assert!(p.big_b(0).unwrap().is_zero());
    let p = m.piece(&Weight(vec![2])).unwrap();
    assert_eq!(p.labels(1), ["tdt"]);
    assert_eq!(p.big_b(0).unwrap().get(0, 0), Q::from_int(2));
    let p = m.piece(&Weight(vec![1])).unwrap();
    assert_eq!(p.labels(1), ["dt"]);
    m.check_relations().unwrap();
    let poly = de_rham_model(DeRham::Poly, 3);
    assert_eq!(poly.piece(&Weight(vec![0])).unwrap().dim(1), 0);
    assert_eq!(poly.pieces.len(), 4);
  }
}

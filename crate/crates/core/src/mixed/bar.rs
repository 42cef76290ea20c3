use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use crate::algebra::{AlgebraError, AlgebraMorphism, GradedAlgebra, LinComb};
use crate::qlinalg::{SparseMatrix, Q};

use super::chain::{ChainPiece, Weight};
use super::complex::{MixedComplex, MixedComplexMap, MixedPiece};
use super::MixedError;

/// Basis tuple `(a₀, a₁, …, aₙ)` of the normalized bar complex, as algebra basis indices.
type Tuple = Vec<usize>;

/// Normalized Hochschild complex `A ⊗ Ā^{⊗n}` with its tuple bookkeeping.
#[derive(Clone, Debug)]
pub struct BarComplex {
  pub algebra: Arc<GradedAlgebra>,
  pub n_max:   usize,
  pub w_max:   u32,
  pub mixed:   MixedComplex,
  tuples:      BTreeMap<Weight, Vec<Vec<Tuple>>>,
  index:       BTreeMap<Weight, Vec<HashMap<Tuple, usize>>>,
}

impl BarComplex {
  /// Builds degrees `0 ..= n_max`, keeping tuples of total weight `≤ w_max`.
  pub fn new(a: Arc<GradedAlgebra>, n_max: usize, w_max: u32) -> Result<Self, MixedError> {
    if let Some(win) = a.weight_window() {
      if w_max > win {
        return Err(MixedError::Algebra(AlgebraError::WindowOverflow(format!(
          "bar complex up to weight {w_max} needs products beyond the window {win} of {}",
          a.name()
        ))));
      }
    }
    let non_unit: Vec<usize> = (0..a.dim()).filter(|&i| i != a.unit()).collect();
    let total = |w: &[u32]| w.iter().sum::<u32>();
    // all tuples by degree, then grouped by weight
    let mut layers: Vec<Vec<(Tuple, Vec<u32>)>> = Vec::with_capacity(n_max + 1);
    layers.push(
      (0..a.dim()).map(|x| (vec![x], a.weights(x).to_vec())).filter(|(_, w)| total(w) <= w_max).collect(),
    );
    for n in 1..=n_max {
      let mut next = Vec::new();
      for (t, w) in &layers[n - 1] {
        for &x in &non_unit {
          let w2: Vec<u32> = w.iter().zip(a.weights(x)).map(|(p, q)| p + q).collect();
          if total(&w2) <= w_max {
            let mut t2 = t.clone();
            t2.push(x);
            next.push((t2, w2));
          }
        }
      }
      layers.push(next);
    }
    let has_weight_zero_non_unit = non_unit.iter().any(|&x| a.total_weight(x) == 0);
    let mut tuples: BTreeMap<Weight, Vec<Vec<Tuple>>> = BTreeMap::new();
    for (n, layer) in layers.into_iter().enumerate() {
      for (t, w) in layer {
        let key = Weight(w.iter().map(|&v| v as i64).collect());
        let slots = tuples.entry(key).or_insert_with(|| vec![Vec::new(); n_max + 1]);
        slots[n].push(t);
      }
    }
    let mut index = BTreeMap::new();
    let mut pieces = BTreeMap::new();
    for (w, by_degree) in &tuples {
      let idx: Vec<HashMap<Tuple, usize>> =
        by_degree.iter().map(|ts| ts.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect()).collect();
      let total_w: i64 = w.0.iter().sum();
      // without weight-zero letters a tuple of weight w has at most w letters after a₀
      let bounded = !has_weight_zero_non_unit && total_w <= n_max as i64;
      let piece = build_piece(&a, by_degree, &idx, bounded)?;
      pieces.insert(w.clone(), piece);
      index.insert(w.clone(), idx);
    }
    let mixed = MixedComplex { name: format!("bar({})", a.name()), pieces };
    Ok(BarComplex { algebra: a, n_max, w_max, mixed, tuples, index })
  }

  pub fn tuples(&self, w: &Weight, n: usize) -> &[Tuple] { &self.tuples[w][n] }

  fn locate(&self, t: &Tuple) -> Option<(Weight, usize)> {
    let a = &self.algebra;
    let mut w = vec![0i64; a.arity()];
    for &x in t {
      for (acc, v) in w.iter_mut().zip(a.weights(x)) {
        *acc += *v as i64;
      }
    }
    let w = Weight(w);
    let i = *self.index.get(&w)?.get(t.len() - 1)?.get(t)?;
    Some((w, i))
  }
}

/// Trims a truncated piece's stored degrees to what the bar construction produced: bounded
/// pieces drop empty top degrees.
fn trim_bounded(by_degree: &[Vec<Tuple>], bounded: bool) -> usize {
  if !bounded {
    return by_degree.len();
  }
  by_degree.iter().rposition(|ts| !ts.is_empty()).map_or(1, |k| k + 1)
}

fn build_piece(
  a: &GradedAlgebra,
  by_degree: &[Vec<Tuple>],
  idx: &[HashMap<Tuple, usize>],
  bounded: bool,
) -> Result<MixedPiece, MixedError> {
  let len = trim_bounded(by_degree, bounded);
  let unit = a.unit();
  let mut d = Vec::with_capacity(len);
  let mut big_b = Vec::with_capacity(len);
  let labels: Vec<Vec<String>> = by_degree[..len]
    .iter()
    .map(|ts| ts.iter().map(|t| t.iter().map(|&x| a.label(x)).collect::<Vec<_>>().join("⊗")).collect())
    .collect();
  for n in 0..len {
    let ts = &by_degree[n];
    // b
    if n == 0 {
      d.push(SparseMatrix::zero(0, ts.len()));
    } else {
      let mut cols = Vec::with_capacity(ts.len());
      for t in ts {
        let mut col: Vec<(usize, Q)> = Vec::new();
        let mut push = |head: &[usize], prod: &LinComb, tail: &[usize], pos: usize, sign: &Q, reduce: bool| {
          for (k, c) in prod {
            if reduce && *k == unit {
              continue;
            }
            let mut t2 = Vec::with_capacity(n);
            t2.extend_from_slice(head);
            t2.insert(pos.min(t2.len()), *k);
            t2.extend_from_slice(tail);
            let row = idx[n - 1].get(&t2).copied();
            if let Some(r) = row {
              col.push((r, c.mul(sign)));
            }
          }
        };
        for i in 0..n {
          let sign = if i % 2 == 0 { Q::one() } else { Q::from_int(-1) };
          let prod = a.mul_basis(t[i], t[i + 1])?;
          push(&t[..i], &prod, &t[i + 2..], i, &sign, i > 0);
        }
        let sign = if n % 2 == 0 { Q::one() } else { Q::from_int(-1) };
        let prod = a.mul_basis(t[n], t[0])?;
        push(&[], &prod, &t[1..n], 0, &sign, false);
        cols.push(col);
      }
      d.push(SparseMatrix::from_columns(by_degree[n - 1].len(), cols));
    }
    // B
    if n + 1 < len {
      let mut cols = Vec::with_capacity(ts.len());
      for t in ts {
        let mut col = Vec::new();
        if t[0] != unit {
          for i in 0..=n {
            let sign = if (n * i) % 2 == 0 { Q::one() } else { Q::from_int(-1) };
            let mut t2 = Vec::with_capacity(n + 2);
            t2.push(unit);
            t2.extend_from_slice(&t[i..]);
            t2.extend_from_slice(&t[..i]);
            if let Some(&r) = idx[n + 1].get(&t2) {
              col.push((r, sign));
            }
          }
        }
        cols.push(col);
      }
      big_b.push(SparseMatrix::from_columns(by_degree[n + 1].len(), cols));
    } else {
      big_b.push(SparseMatrix::zero(0, ts.len()));
    }
  }
  Ok(MixedPiece { chain: ChainPiece { low: 0, labels, d, bounded }, big_b })
}

/// Normalized bar mixed complex of `a` in degrees `≤ n_max` and total weight `≤ w_max`.
pub fn bar_mixed(a: &GradedAlgebra, n_max: usize, w_max: u32) -> Result<MixedComplex, MixedError> {
  Ok(BarComplex::new(Arc::new(a.clone()), n_max, w_max)?.mixed)
}

/// Map of bar complexes induced by `f`: `a₀⊗a₁⊗… ↦ f(a₀)⊗f̄(a₁)⊗…`, where `f̄` drops the unit
/// component. Image tuples outside the target's weight range are an error.
pub fn induced_mixed_map(f: &AlgebraMorphism, n_max: usize, w_max: u32) -> Result<(BarComplex, BarComplex, MixedComplexMap), MixedError> {
  let src = BarComplex::new(f.source().clone(), n_max, w_max)?;
  let tgt = BarComplex::new(f.target().clone(), n_max, w_max)?;
  let map = induced_between(f, &src, &tgt)?;
  Ok((src, tgt, map))
}

/// Induced map between already-built bar complexes.
pub fn induced_between(f: &AlgebraMorphism, src: &BarComplex, tgt: &BarComplex) -> Result<MixedComplexMap, MixedError> {
  let tunit = tgt.algebra.unit();
  let mut entries: BTreeMap<(Weight, Weight), BTreeMap<i64, Vec<(usize, usize, Q)>>> = BTreeMap::new();
  for (ws, piece) in &src.mixed.pieces {
    for n in 0..=piece.top().max(0) as usize {
      if n >= src.tuples[ws].len() {
        break;
      }
      for (col, t) in src.tuples[ws][n].iter().enumerate() {
        // expand the tensor product of images
        let mut partial: Vec<(Tuple, Q)> = vec![(Vec::with_capacity(n + 1), Q::one())];
        for (pos, &x) in t.iter().enumerate() {
          let img = f.image(x);
          let mut next = Vec::new();
          for (tt, c) in &partial {
            for (k, d) in img {
              if pos > 0 && *k == tunit {
                continue;
              }
              let mut t2 = tt.clone();
              t2.push(*k);
              next.push((t2, c.mul(d)));
            }
          }
          partial = next;
        }
        for (tt, c) in partial {
          let (wt, row) = tgt.locate(&tt).ok_or_else(|| {
            MixedError::Algebra(AlgebraError::WindowOverflow(format!(
              "{} sends a bar tuple outside the target's weight range",
              f.name()
            )))
          })?;
          if tgt.mixed.pieces[&wt].dim(n as i64) == 0 {
            continue;
          }
          entries.entry((ws.clone(), wt)).or_default().entry(n as i64).or_default().push((row, col, c));
        }
      }
    }
  }
  let mut blocks = BTreeMap::new();
  for ((ws, wt), by_n) in entries {
    let (sp, tp) = (&src.mixed.pieces[&ws], &tgt.mixed.pieces[&wt]);
    let mats = by_n
      .into_iter()
      .map(|(n, es)| (n, SparseMatrix::from_triplets(tp.dim(n), sp.dim(n), es)))
      .filter(|(_, m)| !m.is_zero())
      .collect::<BTreeMap<_, _>>();
    if !mats.is_empty() {
      blocks.insert((ws, wt), mats);
    }
  }
  Ok(MixedComplexMap {
    name: format!("bar({})", f.name()),
    source: src.mixed.clone(),
    target: tgt.mixed.clone(),
    blocks,
  })
}

#[cfg(test)]
mod tests {
  use super::*;
  use crate::algebra::{catalog, grading_inclusion, AlgebraMorphism};

  fn dims(m: &MixedComplex, n: i64) -> usize { m.dim(n) }

  #[test]
  fn ground_field_is_one_dimensional() {
    let m = bar_mixed(&catalog::ground_field(), 6, 6).unwrap();
    assert_eq!(dims(&m, 0), 1);
    for n in 1..=6 {
      assert_eq!(dims(&m, n), 0);
    }
    let p = m.piece(&Weight(vec![0])).unwrap();
    assert!(p.b(0).is_zero() && p.big_b(0).unwrap().is_zero());
  }

  #[test]
  fn graded_dual_numbers_dimensions() {
    // with w_max = 4 the tuple ξ⊗ξ⊗ξ⊗ξ⊗ξ (weight 5) is cut, so degree 4 keeps only 1⊗ξ⊗ξ⊗ξ⊗ξ
    let a = catalog::dual_numbers_graded();
    let m = bar_mixed(&a, 4, 4).unwrap();
    assert_eq!((0..=4).map(|n| dims(&m, n)).collect::<Vec<_>>(), [2, 2, 2, 2, 1]);
    let m = bar_mixed(&a.clone().with_name("d"), 4, 5).unwrap();
    assert_eq!((0..=4).map(|n| dims(&m, n)).collect::<Vec<_>>(), [2, 2, 2, 2, 2]);
    m.check_relations().unwrap();
  }

  #[test]
  fn ungraded_dimension_formula() {
    for e in catalog::standard_library() {
      let a = &e.algebra;
      if !a.is_ungraded() {
        continue;
      }
      let m = bar_mixed(a, 5, 0).unwrap();
      for n in 0..=5u32 {
        assert_eq!(dims(&m, n as i64), a.dim() * (a.dim() - 1).pow(n), "{} degree {n}", e.name);
      }
    }
  }

  #[test]
  fn relations_hold_for_catalog() {
    for e in catalog::standard_library() {
      let w = e.algebra.weight_window().unwrap_or(0).min(6);
      let m = bar_mixed(&e.algebra, 6, w).unwrap();
      m.check_relations().unwrap_or_else(|err| panic!("{}: {err}", e.name));
    }
  }

  #[test]
  fn window_overflow() {
    let kt = catalog::polynomial_kt(3);
    assert!(matches!(bar_mixed(&kt, 4, 4), Err(MixedError::Algebra(AlgebraError::WindowOverflow(_)))));
  }

  #[test]
  fn hochschild_boundary_of_commutator() {
    // b(x⊗y) = xy − yx
    let a = catalog::matrix_algebra();
    let bar = BarComplex::new(Arc::new(a.clone()), 1, 0).unwrap();
    let w = Weight(vec![0]);
    let p = bar.mixed.piece(&w).unwrap();
    let e12 = a.index_of("e12").unwrap();
    let e21 = a.index_of("e21").unwrap();
    let col = bar.index[&w][1][&vec![e12, e21]];
    let b = p.b(1);
    // e12·e21 = e11, e21·e12 = e22 = 1 − e11
    let mut got: Vec<(String, Q)> =
      b.column(col).iter().map(|(r, c)| (a.label(bar.tuples[&w][0][*r][0]).to_string(), c.clone())).collect();
    got.sort_by(|x, y| x.0.cmp(&y.0));
    assert_eq!(got, vec![("1".to_string(), Q::from_int(-1)), ("e11".to_string(), Q::from_int(2))]);
  }

  #[test]
  fn identity_induces_identity() {
    let a = Arc::new(catalog::truncated_polynomial(3));
    let (_, _, f) = induced_mixed_map(&AlgebraMorphism::identity(a), 4, 0).unwrap();
    for ((ws, wt), by_n) in &f.blocks {
      assert_eq!(ws, wt);
      for m in by_n.values() {
        assert_eq!(m, &SparseMatrix::identity(m.rows()));
      }
    }
    f.check_commutes().unwrap();
  }

  #[test]
  fn inclusion_of_weight_zero_part_is_injective() {
    let a = Arc::new(catalog::dual_numbers_graded());
    let i = grading_inclusion(&a).unwrap();
    let (src, _, f) = induced_mixed_map(&i, 4, 4).unwrap();
    f.check_commutes().unwrap();
    for (w, p) in &src.mixed.pieces {
      for n in p.low()..=p.top() {
        let blocks: Vec<_> = f.blocks.iter().filter(|((ws, _), _)| ws == w).filter_map(|(_, b)| b.get(&n)).collect();
        let rank: usize = blocks.iter().map(|m| m.rank()).sum();
        assert_eq!(rank, p.dim(n));
      }
    }
  }

  #[test]
  fn catalog_morphisms_commute_with_b_and_big_b() {
    use crate::algebra::{grading_projection, kt_morphisms};
    let kt = kt_morphisms(3);
    for f in [kt.iota, kt.ev0, kt.ev1] {
      let (_, _, m) = induced_mixed_map(&f, 4, 3).unwrap();
      m.check_commutes().unwrap();
    }
    for e in catalog::standard_library() {
      let a = Arc::new(e.algebra);
      let w = a.weight_window().unwrap_or(0).min(3);
      for f in [grading_projection(&a).unwrap(), grading_inclusion(&a).unwrap()] {
        let (_, _, m) = induced_mixed_map(&f, 4, w).unwrap();
        m.check_commutes().unwrap_or_else(|err| panic!("{} {}: {err}", e.name, f.name()));
      }
    }
  }
}

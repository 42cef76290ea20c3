//! Euler classes and `t`-localization of bounded complexes of free modules over ℚ or ℚ[t].
//!
//! For free complexes over a field or over ℚ[t], `K₀` is ℤ via the alternating sum of ranks.
//! Homology over ℚ[t] is read off Smith forms: the free rank of `Hₙ` is
//! `rₙ − rank Dₙ − rank Dₙ₊₁` and its torsion is `⊕ ℚ[t]/(dᵢ)` over the non-unit invariant
//! factors `dᵢ` of `Dₙ₊₁` (the kernel of `Dₙ` is a saturated free submodule).

use std::fmt;

use serde::Serialize;

use crate::qlinalg::{block_matrix, smith_normal_form_poly, LinalgError, Poly, SparseMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BaseRing {
  Field,
  Poly,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum K0Error {
  #[error("differential in degree {degree} has shape {got:?}, expected {expected:?}")]
  Shape { degree: i64, got: (usize, usize), expected: (usize, usize) },
  #[error("d∘d ≠ 0 at degree {0}")]
  NotComplex(i64),
  #[error("non-constant entry in a complex over the field")]
  NonConstantEntry,
  #[error("not a chain map in degree {0}")]
  NotChainMap(i64),
  #[error(transparent)]
  Linalg(#[from] LinalgError),
}

/// Bounded complex of finite free modules, degrees `low ..= low + ranks.len() − 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct FreeComplex {
  ring:  BaseRing,
  low:   i64,
  ranks: Vec<usize>,
  /// `d[k]: F_{low+k} → F_{low+k−1}`; `d[0]` has zero rows.
  d:     Vec<SparseMatrix<Poly>>,
}

impl FreeComplex {
  /// Validates shapes, ring and `d∘d = 0`. `differentials[k]` is `D_{low+k+1}`.
  pub fn new(ring: BaseRing, low: i64, ranks: Vec<usize>, differentials: Vec<SparseMatrix<Poly>>) -> Result<Self, K0Error> {
    assert_eq!(differentials.len() + 1, ranks.len().max(1), "one differential between consecutive degrees");
    let mut d = vec![SparseMatrix::zero(0, ranks.first().copied().unwrap_or(0))];
    for (k, m) in differentials.into_iter().enumerate() {
      let expected = (ranks[k], ranks[k + 1]);
      if (m.rows(), m.cols()) != expected {
        return Err(K0Error::Shape { degree: low + k as i64 + 1, got: (m.rows(), m.cols()), expected });
      }
      if ring == BaseRing::Field && m.columns().iter().flatten().any(|(_, p)| !p.is_constant()) {
        return Err(K0Error::NonConstantEntry);
      }
      d.push(m);
    }
    let c = FreeComplex { ring, low, ranks, d };
    for n in c.low..=c.top() {
      if !c.differential(n - 1).mul(&c.differential(n))?.is_zero() {
        return Err(K0Error::NotComplex(n));
      }
    }
    Ok(c)
  }

  pub fn ring(&self) -> BaseRing { self.ring }

  pub fn low(&self) -> i64 { self.low }

  pub fn top(&self) -> i64 { self.low + self.ranks.len() as i64 - 1 }

  pub fn rank(&self, n: i64) -> usize {
    if n < self.low || n > self.top() {
      0
    } else {
      self.ranks[(n - self.low) as usize]
    }
  }

  /// `Dₙ: Fₙ → Fₙ₋₁`.
  pub fn differential(&self, n: i64) -> SparseMatrix<Poly> {
    if n <= self.low || n > self.top() {
      SparseMatrix::zero(self.rank(n - 1), self.rank(n))
    } else {
      self.d[(n - self.low) as usize].clone()
    }
  }
}

/// `Σ (−1)ⁿ rank Fₙ`, the class in `K₀ ≅ ℤ`.
pub fn euler_class(c: &FreeComplex) -> i64 {
  (c.low()..=c.top()).map(|n| if n.rem_euclid(2) == 0 { c.rank(n) as i64 } else { -(c.rank(n) as i64) }).sum()
}

/// `P = (0 → ℚ[t] ·t→ ℚ[t] → 0)` in degrees 1 and 0.
pub fn bimodule_p() -> FreeComplex { multiplication_complex(Poly::t()) }

/// `0 → ℚ[t] ·p→ ℚ[t] → 0` in degrees 1 and 0.
pub fn multiplication_complex(p: Poly) -> FreeComplex {
  let d = SparseMatrix::from_triplets(1, 1, [(0, 0, p)]);
  FreeComplex::new(BaseRing::Poly, 0, vec![1, 1], vec![d]).expect("two-term complex")
}

/// Homology module in one degree: `ℚ[t]^free ⊕ ⊕ ℚ[t]/(torsionᵢ)` (over a field, no torsion).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ModuleHomology {
  pub degree:    i64,
  pub free_rank: usize,
  #[serde(serialize_with = "display_list")]
  pub torsion:   Vec<Poly>,
}

fn display_list<S: serde::Serializer>(ps: &[Poly], s: S) -> Result<S::Ok, S::Error> {
  s.collect_seq(ps.iter().map(|p| p.to_string()))
}

impl ModuleHomology {
  pub fn is_zero(&self) -> bool { self.free_rank == 0 && self.torsion.is_empty() }
}

impl fmt::Display for ModuleHomology {
  fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    let mut parts = Vec::new();
    if self.free_rank > 0 {
      parts.push(format!("R^{}", self.free_rank));
    }
    parts.extend(self.torsion.iter().map(|p| format!("R/({p})")));
    write!(f, "H{} = {}", self.degree, if parts.is_empty() { "0".into() } else { parts.join(" ⊕ ") })
  }
}

/// Homology in every degree of the complex.
pub fn homology(c: &FreeComplex) -> Vec<ModuleHomology> {
  let factors: Vec<Vec<Poly>> = (c.low()..=c.top() + 1).map(|n| smith_normal_form_poly(&c.differential(n))).collect();
  (c.low()..=c.top())
    .map(|n| {
      let k = (n - c.low()) as usize;
      let (out, inc) = (&factors[k], &factors[k + 1]);
      ModuleHomology {
        degree:    n,
        free_rank: c.rank(n) - out.len() - inc.len(),
        torsion:   inc.iter().filter(|p| !p.is_constant()).cloned().collect(),
      }
    })
    .collect()
}

/// Whether every homology module is `t`-power torsion, i.e. dies once `t` is inverted.
pub fn localization_acyclic(c: &FreeComplex) -> bool {
  homology(c).iter().all(|h| h.free_rank == 0 && h.torsion.iter().all(Poly::is_unit_times_t_power))
}

/// Whether the homology is the trivial module `ℚ[t]/(t)` in degree 0 and zero elsewhere.
pub fn resolves_trivial_module(c: &FreeComplex) -> bool {
  homology(c).iter().all(|h| {
    if h.degree == 0 {
      h.free_rank == 0 && h.torsion == [Poly::t()]
    } else {
      h.is_zero()
    }
  })
}

/// Chain map of free complexes: `blocks[k]: source_{low+k} → target_{low+k}` over the
/// union of the degree ranges starting at `low`.
#[derive(Clone, Debug, PartialEq)]
pub struct FreeChainMap {
  pub source: FreeComplex,
  pub target: FreeComplex,
  pub low:    i64,
  pub blocks: Vec<SparseMatrix<Poly>>,
}

impl FreeChainMap {
  pub fn identity(c: &FreeComplex) -> Self {
    let blocks = (c.low()..=c.top()).map(|n| SparseMatrix::identity(c.rank(n))).collect();
    FreeChainMap { source: c.clone(), target: c.clone(), low: c.low(), blocks }
  }

  pub fn block(&self, n: i64) -> SparseMatrix<Poly> {
    let k = n - self.low;
    if k < 0 || k as usize >= self.blocks.len() {
      SparseMatrix::zero(self.target.rank(n), self.source.rank(n))
    } else {
      self.blocks[k as usize].clone()
    }
  }

  fn range(&self) -> (i64, i64) {
    (self.source.low().min(self.target.low()), self.source.top().max(self.target.top()))
  }

  pub fn check(&self) -> Result<(), K0Error> {
    let (low, top) = self.range();
    for n in low..=top + 1 {
      let lhs = self.target.differential(n).mul(&self.block(n))?;
      let rhs = self.block(n - 1).mul(&self.source.differential(n))?;
      if lhs != rhs {
        return Err(K0Error::NotChainMap(n));
      }
    }
    Ok(())
  }
}

/// `cone(f)ₙ = sourceₙ₋₁ ⊕ targetₙ`, `D(x, y) = (−Dx, f(x) + Dy)`.
pub fn cone(f: &FreeChainMap) -> Result<FreeComplex, K0Error> {
  f.check()?;
  let (s, t) = (&f.source, &f.target);
  let (low, top) = f.range();
  let (low, top) = (low, top + 1);
  let ranks: Vec<usize> = (low..=top).map(|n| s.rank(n - 1) + t.rank(n)).collect();
  let mut ds = Vec::new();
  for n in low + 1..=top {
    let neg = s.differential(n - 1).neg();
    let fx = f.block(n - 1);
    let dy = t.differential(n);
    ds.push(block_matrix(
      &[s.rank(n - 2), t.rank(n - 1)],
      &[s.rank(n - 1), t.rank(n)],
      &[vec![Some(&neg), None], vec![Some(&fx), Some(&dy)]],
    )?);
  }
  let ring = if s.ring() == BaseRing::Poly || t.ring() == BaseRing::Poly { BaseRing::Poly } else { BaseRing::Field };
  FreeComplex::new(ring, low, ranks, ds)
}

/// `a ⊕ b` over the union of the degree ranges.
pub fn direct_sum(a: &FreeComplex, b: &FreeComplex) -> FreeComplex {
  let low = a.low().min(b.low());
  let top = a.top().max(b.top());
  let ranks: Vec<usize> = (low..=top).map(|n| a.rank(n) + b.rank(n)).collect();
  let ds = (low + 1..=top)
    .map(|n| {
      let (da, db) = (a.differential(n), b.differential(n));
      block_matrix(&[a.rank(n - 1), b.rank(n - 1)], &[a.rank(n), b.rank(n)], &[vec![Some(&da), None], vec![None, Some(&db)]])
        .expect("shapes agree")
    })
    .collect();
  FreeComplex::new(a.ring(), low, ranks, ds).expect("sum of complexes is a complex")
}

/// Adds the contractible summand `id: R → R` in degrees `n + 1 → n`.
pub fn with_trivial_summand(c: &FreeComplex, n: i64) -> FreeComplex {
  let id = SparseMatrix::from_triplets(1, 1, [(0, 0, Poly::one())]);
  let t = FreeComplex::new(c.ring(), n, vec![1, 1], vec![id]).expect("identity complex");
  direct_sum(c, &t)
}

#[cfg(test)]
mod tests {
  use super::*;

  fn pm(rows: &[&[&[i64]]]) -> SparseMatrix<Poly> {
    SparseMatrix::from_dense(&rows.iter().map(|r| r.iter().map(|c| Poly::from_ints(c)).collect()).collect::<Vec<_>>())
  }

  #[test]
  fn p_is_a_resolution_of_the_trivial_module() {
    let p = bimodule_p();
    assert_eq!(euler_class(&p), 0);
    let h = homology(&p);
    assert_eq!(h[0].to_string(), "H0 = R/(t)");
    assert!(h[1].is_zero());
    assert!(resolves_trivial_module(&p));
    assert!(localization_acyclic(&p));
  }

  #[test]
  fn shifted_multiplication_survives_localization() {
    let c = multiplication_complex(Poly::from_ints(&[-1, 1]));
    assert_eq!(euler_class(&c), 0);
    assert!(!localization_acyclic(&c));
    assert!(!resolves_trivial_module(&c));
    assert_eq!(homology(&c)[0].torsion, vec![Poly::from_ints(&[-1, 1])]);
  }

  #[test]
  fn single_free_module() {
    let c = FreeComplex::new(BaseRing::Poly, 0, vec![1], vec![]).unwrap();
    assert_eq!(euler_class(&c), 1);
    assert!(!localization_acyclic(&c));
  }

  #[test]
  fn cone_of_identity_is_acyclic() {
    let p = bimodule_p();
    let c = cone(&FreeChainMap::identity(&p)).unwrap();
    assert_eq!(euler_class(&c), 0);
    assert!(homology(&c).iter().all(ModuleHomology::is_zero));
    assert!(localization_acyclic(&c));
  }

  #[test]
  fn p_is_the_cone_of_multiplication_by_t() {
    let r = FreeComplex::new(BaseRing::Poly, 0, vec![1], vec![]).unwrap();
    let f = FreeChainMap { source: r.clone(), target: r, low: 0, blocks: vec![pm(&[&[&[0, 1]]])] };
    let c = cone(&f).unwrap();
    assert_eq!(c.differential(1).get(0, 0), Poly::t());
    assert!(resolves_trivial_module(&c));
  }

  #[test]
  fn rejects_non_complexes() {
    let d1 = pm(&[&[&[0, 1]]]);
    let d2 = pm(&[&[&[1]]]);
    assert!(matches!(FreeComplex::new(BaseRing::Poly, 0, vec![1, 1, 1], vec![d1, d2]), Err(K0Error::NotComplex(2))));
    let d = pm(&[&[&[0, 1]]]);
    assert!(matches!(FreeComplex::new(BaseRing::Field, 0, vec![1, 1], vec![d]), Err(K0Error::NonConstantEntry)));
  }

  #[test]
  fn field_complexes_use_plain_ranks() {
    let d = pm(&[&[&[2]], &[&[0]]]);
    let c = FreeComplex::new(BaseRing::Field, 0, vec![2, 1], vec![d]).unwrap();
    let h = homology(&c);
    assert_eq!((h[0].free_rank, h[1].free_rank), (1, 0));
    assert!(!localization_acyclic(&c));
  }
}

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::qlinalg::{axpy, collect_sparse, Q};

use super::AlgebraError;

/// Linear combination of basis elements: sorted `(basis index, coefficient)` pairs, no zeros.
pub type LinComb = Vec<(usize, Q)>;

pub fn lc_basis(i: usize) -> LinComb { vec![(i, Q::one())] }

pub fn lc_add(a: &LinComb, b: &LinComb) -> LinComb { axpy(a, &Q::one(), b) }

pub fn lc_scale(a: &LinComb, c: &Q) -> LinComb {
  if c.is_zero() {
    return Vec::new();
  }
  a.iter().map(|(i, x)| (*i, x.mul(c))).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisElement {
  pub label:   String,
  /// One entry per weight coordinate; the total weight is the sum.
  pub weights: Vec<u32>,
}

impl BasisElement {
  pub fn total_weight(&self) -> u32 { self.weights.iter().sum() }
}

/// Finite-basis unital algebra over ℚ, graded by non-negative (possibly multi-coordinate)
/// weights and given by structure constants.
///
/// Each weight coordinate carries an optional window `W`. The product of two basis elements is
/// only *defined* when, in every coordinate, the weights add up to at most the window; `None`
/// means every product is defined. Products missing from the table are zero.
#[derive(Clone, Debug, PartialEq)]
pub struct GradedAlgebra {
  name:    String,
  basis:   Vec<BasisElement>,
  unit:    usize,
  windows: Vec<Option<u32>>,
  table:   BTreeMap<(usize, usize), LinComb>,
  index:   HashMap<String, usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
  UnitWeight { unit: String },
  UnitLaw { element: String, side: &'static str },
  Grading { left: String, right: String, term: String },
  Associativity { x: String, y: String, z: String },
}

impl fmt::Display for Violation {
  fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    match self {
      Violation::UnitWeight { unit } => write!(f, "unit `{unit}` has nonzero weight"),
      Violation::UnitLaw { element, side } => write!(f, "unit law fails on the {side} for `{element}`"),
      Violation::Grading { left, right, term } =>
        write!(f, "`{left}`·`{right}` contains `{term}` of the wrong weight"),
      Violation::Associativity { x, y, z } => write!(f, "(`{x}`·`{y}`)·`{z}` ≠ `{x}`·(`{y}`·`{z}`)"),
    }
  }
}

/// Outcome of [`GradedAlgebra::validate`]; empty means valid.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
  pub violations: Vec<Violation>,
}

impl ValidationReport {
  pub fn is_valid(&self) -> bool { self.violations.is_empty() }
}

impl GradedAlgebra {
  /// Structural constructor: checks indices, label uniqueness and weight arity. Algebraic
  /// axioms are checked separately by [`validate`](Self::validate).
  pub fn new(
    name: impl Into<String>,
    basis: Vec<BasisElement>,
    unit: usize,
    windows: Vec<Option<u32>>,
    products: impl IntoIterator<Item = ((usize, usize), LinComb)>,
  ) -> Result<Self, AlgebraError> {
    let name = name.into();
    if unit >= basis.len() {
      return Err(AlgebraError::Structure(format!("unit index {unit} out of range")));
    }
    let mut index = HashMap::new();
    for (i, e) in basis.iter().enumerate() {
      if e.weights.len() != windows.len() {
        return Err(AlgebraError::Structure(format!(
          "`{}` has {} weight coordinates, expected {}",
          e.label,
          e.weights.len(),
          windows.len()
        )));
      }
      if index.insert(e.label.clone(), i).is_some() {
        return Err(AlgebraError::Structure(format!("duplicate basis label `{}`", e.label)));
      }
    }
    let mut table = BTreeMap::new();
    for ((i, j), lc) in products {
      if i >= basis.len() || j >= basis.len() || lc.iter().any(|(k, _)| *k >= basis.len()) {
        return Err(AlgebraError::Structure(format!("product ({i}, {j}) references an unknown basis element")));
      }
      let lc = collect_sparse(lc);
      if !lc.is_empty() {
        table.insert((i, j), lc);
      }
    }
    Ok(GradedAlgebra { name, basis, unit, windows, table, index })
  }

  pub fn name(&self) -> &str { &self.name }

  pub fn with_name(mut self, name: impl Into<String>) -> Self {
    self.name = name.into();
    self
  }

  pub fn dim(&self) -> usize { self.basis.len() }

  pub fn basis(&self) -> &[BasisElement] { &self.basis }

  pub fn label(&self, i: usize) -> &str { &self.basis[i].label }

  pub fn index_of(&self, label: &str) -> Option<usize> { self.index.get(label).copied() }

  pub fn unit(&self) -> usize { self.unit }

  pub fn arity(&self) -> usize { self.windows.len() }

  pub fn windows(&self) -> &[Option<u32>] { &self.windows }

  pub fn weights(&self, i: usize) -> &[u32] { &self.basis[i].weights }

  pub fn total_weight(&self, i: usize) -> u32 { self.basis[i].total_weight() }

  /// Smallest finite window over all coordinates; `None` when every product is defined.
  pub fn weight_window(&self) -> Option<u32> { self.windows.iter().flatten().min().copied() }

  /// True when every basis element has weight zero.
  pub fn is_ungraded(&self) -> bool { self.basis.iter().all(|e| e.total_weight() == 0) }

  pub fn products(&self) -> impl Iterator<Item = (&(usize, usize), &LinComb)> { self.table.iter() }

  fn within_window(&self, w: impl Iterator<Item = u32>) -> bool {
    w.zip(&self.windows).all(|(s, win)| win.is_none_or(|m| s <= m))
  }

  /// Whether `eᵢ·eⱼ` is defined.
  pub fn is_defined(&self, i: usize, j: usize) -> bool {
    self.within_window(self.basis[i].weights.iter().zip(&self.basis[j].weights).map(|(a, b)| a + b))
  }

  fn triple_defined(&self, i: usize, j: usize, k: usize) -> bool {
    let (a, b, c) = (&self.basis[i].weights, &self.basis[j].weights, &self.basis[k].weights);
    self.within_window((0..self.arity()).map(|t| a[t] + b[t] + c[t]))
  }

  pub fn mul_basis(&self, i: usize, j: usize) -> Result<LinComb, AlgebraError> {
    if !self.is_defined(i, j) {
      return Err(AlgebraError::WindowOverflow(format!(
        "`{}`·`{}` lies outside the weight window of {}",
        self.label(i),
        self.label(j),
        self.name
      )));
    }
    Ok(self.table.get(&(i, j)).cloned().unwrap_or_default())
  }

  pub fn mul(&self, x: &LinComb, y: &LinComb) -> Result<LinComb, AlgebraError> {
    let mut acc = Vec::new();
    for (i, a) in x {
      for (j, b) in y {
        let ab = a.mul(b);
        for (k, c) in self.mul_basis(*i, *j)? {
          acc.push((k, c.mul(&ab)));
        }
      }
    }
    Ok(collect_sparse(acc))
  }

  /// Largest total weight `|x| + |y|` over pairs of basis elements whose product is defined.
  pub fn max_defined_product_weight(&self) -> u32 {
    let mut best = 0;
    for i in 0..self.dim() {
      for j in 0..self.dim() {
        if self.is_defined(i, j) {
          best = best.max(self.total_weight(i) + self.total_weight(j));
        }
      }
    }
    best
  }

  /// Checks unit, grading additivity and associativity on every defined configuration.
  pub fn validate(&self) -> ValidationReport {
    let mut violations = Vec::new();
    let unit = self.unit;
    if self.total_weight(unit) != 0 {
      violations.push(Violation::UnitWeight { unit: self.label(unit).to_string() });
    }
    for x in 0..self.dim() {
      let lx = lc_basis(x);
      if self.mul_basis(unit, x).ok().as_ref() != Some(&lx) {
        violations.push(Violation::UnitLaw { element: self.label(x).to_string(), side: "left" });
      }
      if self.mul_basis(x, unit).ok().as_ref() != Some(&lx) {
        violations.push(Violation::UnitLaw { element: self.label(x).to_string(), side: "right" });
      }
    }
    for (&(i, j), lc) in &self.table {
      for (k, _) in lc {
        let expect = self.basis[i].weights.iter().zip(&self.basis[j].weights).map(|(a, b)| a + b);
        if !expect.eq(self.basis[*k].weights.iter().copied()) {
          violations.push(Violation::Grading {
            left:  self.label(i).to_string(),
            right: self.label(j).to_string(),
            term:  self.label(*k).to_string(),
          });
        }
      }
    }
    if violations.iter().any(|v| matches!(v, Violation::Grading { .. })) {
      // associativity is not meaningful once products can leave the window
      return ValidationReport { violations };
    }
    for x in 0..self.dim() {
      for y in 0..self.dim() {
        for z in 0..self.dim() {
          if !self.triple_defined(x, y, z) {
            continue;
          }
          let left = self.mul_basis(x, y).and_then(|xy| self.mul(&xy, &lc_basis(z)));
          let right = self.mul_basis(y, z).and_then(|yz| self.mul(&lc_basis(x), &yz));
          if left != right {
            violations.push(Violation::Associativity {
              x: self.label(x).to_string(),
              y: self.label(y).to_string(),
              z: self.label(z).to_string(),
            });
          }
        }
      }
    }
    ValidationReport { violations }
  }

  /// The weight-zero part `A₀` (all coordinates zero) as an algebra, together with the indices
  /// of its basis inside `self`.
  pub fn weight_zero_part(&self) -> (GradedAlgebra, Vec<usize>) {
    let keep: Vec<usize> = (0..self.dim()).filter(|&i| self.total_weight(i) == 0).collect();
    let pos: HashMap<usize, usize> = keep.iter().enumerate().map(|(k, &i)| (i, k)).collect();
    let basis = keep.iter().map(|&i| self.basis[i].clone()).collect();
    let products = self
      .table
      .iter()
      .filter(|((i, j), _)| pos.contains_key(i) && pos.contains_key(j))
      .map(|(&(i, j), lc)| {
        let lc = lc.iter().filter_map(|(k, c)| pos.get(k).map(|&p| (p, c.clone()))).collect();
        ((pos[&i], pos[&j]), lc)
      })
      .collect::<Vec<_>>();
    let a0 = GradedAlgebra::new(format!("{}_0", self.name), basis, pos[&self.unit], self.windows.clone(), products)
      .expect("weight-zero part inherits a consistent structure");
    (a0, keep)
  }

  /// Writes `x` as `Σ c·label`.
  pub fn format_lc(&self, x: &LinComb) -> String {
    if x.is_empty() {
      return "0".into();
    }
    x.iter()
      .map(|(i, c)| if c.is_one() { self.label(*i).to_string() } else { format!("{c}·{}", self.label(*i)) })
      .collect::<Vec<_>>()
      .join(" + ")
  }
}

/// Incremental construction by label.
#[derive(Clone, Debug, Default)]
pub struct AlgebraBuilder {
  name:     String,
  basis:    Vec<BasisElement>,
  unit:     Option<String>,
  window:   Option<u32>,
  products: Vec<(String, String, Vec<(Q, String)>)>,
}

impl AlgebraBuilder {
  pub fn new(name: impl Into<String>) -> Self { AlgebraBuilder { name: name.into(), ..Default::default() } }

  pub fn element(mut self, label: &str, weight: u32) -> Self {
    self.basis.push(BasisElement { label: label.to_string(), weights: vec![weight] });
    self
  }

  pub fn unit(mut self, label: &str) -> Self {
    self.unit = Some(label.to_string());
    self
  }

  pub fn window(mut self, w: Option<u32>) -> Self {
    self.window = w;
    self
  }

  pub fn product(mut self, left: &str, right: &str, result: &[(i64, &str)]) -> Self {
    self.products.push((
      left.to_string(),
      right.to_string(),
      result.iter().map(|(c, l)| (Q::from_int(*c), l.to_string())).collect(),
    ));
    self
  }

  pub fn product_q(mut self, left: &str, right: &str, result: Vec<(Q, String)>) -> Self {
    self.products.push((left.to_string(), right.to_string(), result));
    self
  }

  /// Resolves labels; the unit's products with every element are filled in automatically.
  pub fn build(self) -> Result<GradedAlgebra, AlgebraError> {
    let lookup: HashMap<&str, usize> = self.basis.iter().enumerate().map(|(i, e)| (e.label.as_str(), i)).collect();
    let find = |l: &str| lookup.get(l).copied().ok_or_else(|| AlgebraError::UnknownLabel(l.to_string()));
    let unit = find(self.unit.as_deref().ok_or_else(|| AlgebraError::Structure("no unit given".into()))?)?;
    let mut products = BTreeMap::new();
    for i in 0..self.basis.len() {
      products.insert((unit, i), lc_basis(i));
      products.insert((i, unit), lc_basis(i));
    }
    for (l, r, res) in &self.products {
      let lc = res.iter().map(|(c, lab)| Ok((find(lab)?, c.clone()))).collect::<Result<Vec<_>, AlgebraError>>()?;
      products.insert((find(l)?, find(r)?), lc);
    }
    GradedAlgebra::new(self.name, self.basis, unit, vec![self.window], products)
  }
}

/// Tensor product `A ⊗ B` with basis `aᵢ⊗bⱼ` (row-major in `(i, j)`), concatenated weight
/// coordinates and componentwise products. No Koszul signs: everything sits in degree 0.
pub fn tensor_algebra(a: &GradedAlgebra, b: &GradedAlgebra) -> GradedAlgebra {
  tensor_with_labels(a, b, format!("{}⊗{}", a.name, b.name), |x, y| format!("{x}⊗{y}"))
    .expect("tensor of well-formed algebras is well-formed")
}

pub(crate) fn tensor_with_labels(
  a: &GradedAlgebra,
  b: &GradedAlgebra,
  name: String,
  label: impl Fn(&str, &str) -> String,
) -> Result<GradedAlgebra, AlgebraError> {
  let nb = b.dim();
  let idx = |i: usize, j: usize| i * nb + j;
  let basis = (0..a.dim())
    .flat_map(|i| {
      (0..nb).map(move |j| (i, j))
    })
    .map(|(i, j)| BasisElement {
      label:   label(a.label(i), b.label(j)),
      weights: a.weights(i).iter().chain(b.weights(j)).copied().collect(),
    })
    .collect();
  let windows = a.windows.iter().chain(&b.windows).copied().collect();
  let mut products = Vec::new();
  for i in 0..a.dim() {
    for k in 0..a.dim() {
      if !a.is_defined(i, k) {
        continue;
      }
      let ik = a.table.get(&(i, k));
      for j in 0..nb {
        for l in 0..nb {
          if !b.is_defined(j, l) {
            continue;
          }
          let (Some(ik), Some(jl)) = (ik, b.table.get(&(j, l))) else { continue };
          let lc = ik
            .iter()
            .flat_map(|(p, c)| jl.iter().map(move |(q, d)| (idx(*p, *q), c.mul(d))))
            .collect::<Vec<_>>();
          products.push(((idx(i, j), idx(k, l)), lc));
        }
      }
    }
  }
  GradedAlgebra::new(name, basis, idx(a.unit, b.unit), windows, products)
}

#[cfg(test)]
mod tests {
  use super::*;
  use crate::algebra::catalog;

  #[test]
  fn ground_field_is_valid() {
    assert!(catalog::ground_field().validate().is_valid());
  }

  #[test]
  fn injected_associativity_failure_is_reported_once() {
    // x·x = y, x·y = y, y·x = 0: (x·x)·x = y·x = 0 but x·(x·x) = x·y = y
    let a = AlgebraBuilder::new("broken")
      .element("1", 0)
      .element("x", 0)
      .element("y", 0)
      .unit("1")
      .product("x", "x", &[(1, "y")])
      .product("x", "y", &[(1, "y")])
      .build()
      .unwrap();
    let report = a.validate();
    let assoc: Vec<_> = report.violations.iter().filter(|v| matches!(v, Violation::Associativity { .. })).collect();
    assert!(assoc.contains(&&Violation::Associativity { x: "x".into(), y: "x".into(), z: "x".into() }));
    assert!(!report.is_valid());
  }

  #[test]
  fn single_bad_structure_constant() {
    // k[x]/x^3 with x·x² deliberately set to x: exactly one triple breaks
    let a = AlgebraBuilder::new("bad")
      .element("1", 0)
      .element("x", 0)
      .element("x2", 0)
      .unit("1")
      .product("x", "x", &[(1, "x2")])
      .product("x", "x2", &[(1, "x")])
      .product("x2", "x", &[(1, "x")])
      .build()
      .unwrap();
    assert!(!a.validate().is_valid());
  }

  #[test]
  fn grading_violation_detected() {
    let a = AlgebraBuilder::new("g")
      .element("1", 0)
      .element("x", 1)
      .unit("1")
      .window(None)
      .product("x", "x", &[(1, "x")])
      .build()
      .unwrap();
    assert!(matches!(a.validate().violations[0], Violation::Grading { .. }));
  }

  #[test]
  fn window_blocks_undefined_products() {
    let kt = catalog::polynomial_kt(2);
    let t = kt.index_of("t").unwrap();
    let t2 = kt.index_of("t^2").unwrap();
    assert!(kt.mul_basis(t, t).is_ok());
    assert!(matches!(kt.mul_basis(t, t2), Err(AlgebraError::WindowOverflow(_))));
  }

  #[test]
  fn unit_law_of_tensor() {
    let k = catalog::ground_field();
    let a = catalog::truncated_polynomial(3);
    let ka = tensor_algebra(&k, &a);
    assert!(ka.validate().is_valid());
    assert_eq!(ka.dim(), a.dim());
    // relabel 1⊗x ↦ x and compare structure constants
    for i in 0..a.dim() {
      for j in 0..a.dim() {
        let li = ka.index_of(&format!("1⊗{}", a.label(i))).unwrap();
        let lj = ka.index_of(&format!("1⊗{}", a.label(j))).unwrap();
        let p = ka.mul_basis(li, lj).unwrap();
        let relabeled: LinComb = collect_sparse(
          p.iter().map(|(k, c)| (a.index_of(ka.label(*k).trim_start_matches("1⊗")).unwrap(), c.clone())).collect(),
        );
        assert_eq!(relabeled, a.mul_basis(i, j).unwrap());
      }
    }
  }

  #[test]
  fn product_of_split_algebras_has_four_orthogonal_idempotents() {
    let kk = catalog::split_product();
    let t = tensor_algebra(&kk, &kk);
    assert!(t.validate().is_valid());
    assert_eq!(t.dim(), 4);
    // idempotents of k×k: e and 1 - e; products of them in the tensor
    let one = kk.unit();
    let e = kk.index_of("e").unwrap();
    let e_lc = lc_basis(e);
    let f_lc = collect_sparse(vec![(one, Q::one()), (e, Q::from_int(-1))]);
    let tensor_lc = |x: &LinComb, y: &LinComb| -> LinComb {
      collect_sparse(x.iter().flat_map(|(i, a)| y.iter().map(move |(j, b)| (i * 2 + j, a.mul(b)))).collect())
    };
    let idem = [tensor_lc(&e_lc, &e_lc), tensor_lc(&e_lc, &f_lc), tensor_lc(&f_lc, &e_lc), tensor_lc(&f_lc, &f_lc)];
    let mut sum = Vec::new();
    for (p, x) in idem.iter().enumerate() {
      sum = lc_add(&sum, x);
      for (q, y) in idem.iter().enumerate() {
        let xy = t.mul(x, y).unwrap();
        if p == q {
          assert_eq!(&xy, x);
        } else {
          assert!(xy.is_empty());
        }
      }
    }
    assert_eq!(sum, lc_basis(t.unit()));
  }

  #[test]
  fn square_zero_generators_in_tensor_of_dual_numbers() {
    let d = catalog::dual_numbers_graded();
    let t = tensor_algebra(&d, &d);
    assert!(t.validate().is_valid());
    let x1 = t.index_of("ξ⊗1").unwrap();
    let x2 = t.index_of("1⊗ξ").unwrap();
    let xx = t.index_of("ξ⊗ξ").unwrap();
    assert!(t.mul_basis(x1, x1).unwrap().is_empty());
    assert!(t.mul_basis(x2, x2).unwrap().is_empty());
    assert_eq!(t.mul_basis(x1, x2).unwrap(), lc_basis(xx));
    assert!(t.mul_basis(xx, xx).unwrap().is_empty());
    assert_eq!(t.weights(xx), &[1, 1]);
  }
}

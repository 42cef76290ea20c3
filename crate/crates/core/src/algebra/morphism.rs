use std::sync::Arc;

use crate::qlinalg::collect_sparse;

use super::catalog::{ground_field, polynomial_kt};
use super::graded::{lc_basis, tensor_with_labels, GradedAlgebra, LinComb};
use super::AlgebraError;

/// Unital multiplicative linear map between graded algebras, given on the source basis.
///
/// Multiplicativity is checked at construction on every pair of source basis elements whose
/// product is defined. Weight preservation is not required; individual constructors document
/// how they shift weights.
#[derive(Clone, Debug)]
pub struct AlgebraMorphism {
  name:   String,
  source: Arc<GradedAlgebra>,
  target: Arc<GradedAlgebra>,
  images: Vec<LinComb>,
}

impl AlgebraMorphism {
  pub fn new(
    name: impl Into<String>,
    source: Arc<GradedAlgebra>,
    target: Arc<GradedAlgebra>,
    images: Vec<LinComb>,
  ) -> Result<Self, AlgebraError> {
    let name = name.into();
    if images.len() != source.dim() {
      return Err(AlgebraError::Structure(format!(
        "{name}: {} images for a source of dimension {}",
        images.len(),
        source.dim()
      )));
    }
    let images: Vec<LinComb> = images.into_iter().map(collect_sparse).collect();
    if images.iter().flatten().any(|(k, _)| *k >= target.dim()) {
      return Err(AlgebraError::Structure(format!("{name}: image outside the target basis")));
    }
    if images[source.unit()] != lc_basis(target.unit()) {
      return Err(AlgebraError::NotUnital(name));
    }
    for x in 0..source.dim() {
      for y in 0..source.dim() {
        if !source.is_defined(x, y) {
          continue;
        }
        let lhs = apply_lc(&images, &source.mul_basis(x, y)?);
        let rhs = target.mul(&images[x], &images[y])?;
        if lhs != rhs {
          return Err(AlgebraError::NotMultiplicative {
            map:   name,
            left:  source.label(x).to_string(),
            right: source.label(y).to_string(),
          });
        }
      }
    }
    Ok(AlgebraMorphism { name, source, target, images })
  }

  pub fn identity(a: Arc<GradedAlgebra>) -> Self {
    let images = (0..a.dim()).map(lc_basis).collect();
    AlgebraMorphism { name: format!("id_{}", a.name()), source: a.clone(), target: a, images }
  }

  pub fn name(&self) -> &str { &self.name }

  pub fn source(&self) -> &Arc<GradedAlgebra> { &self.source }

  pub fn target(&self) -> &Arc<GradedAlgebra> { &self.target }

  pub fn image(&self, i: usize) -> &LinComb { &self.images[i] }

  pub fn images(&self) -> &[LinComb] { &self.images }

  pub fn apply(&self, x: &LinComb) -> LinComb { apply_lc(&self.images, x) }

  /// `self ∘ inner` (apply `inner` first).
  pub fn compose(&self, inner: &AlgebraMorphism) -> Result<AlgebraMorphism, AlgebraError> {
    if *inner.target != *self.source {
      return Err(AlgebraError::Structure(format!(
        "cannot compose {} after {}: target/source differ",
        self.name, inner.name
      )));
    }
    let images = inner.images.iter().map(|x| self.apply(x)).collect();
    Ok(AlgebraMorphism {
      name: format!("{}∘{}", self.name, inner.name),
      source: inner.source.clone(),
      target: self.target.clone(),
      images,
    })
  }

  /// Exact equality of basis images (same source and target required).
  pub fn agrees_with(&self, other: &AlgebraMorphism) -> bool {
    *self.source == *other.source && *self.target == *other.target && self.images == other.images
  }
}

fn apply_lc(images: &[LinComb], x: &LinComb) -> LinComb {
  collect_sparse(x.iter().flat_map(|(i, c)| images[*i].iter().map(move |(k, d)| (*k, d.mul(c)))).collect())
}

/// Projection `p: A → A₀` killing positive weights. Weight preserving.
pub fn grading_projection(a: &Arc<GradedAlgebra>) -> Result<AlgebraMorphism, AlgebraError> {
  let (a0, keep) = a.weight_zero_part();
  let mut images = vec![Vec::new(); a.dim()];
  for (k, &i) in keep.iter().enumerate() {
    images[i] = lc_basis(k);
  }
  AlgebraMorphism::new(format!("p_{}", a.name()), a.clone(), Arc::new(a0), images)
}

/// Inclusion `i: A₀ → A` of the weight-zero subalgebra. Weight preserving.
pub fn grading_inclusion(a: &Arc<GradedAlgebra>) -> Result<AlgebraMorphism, AlgebraError> {
  let (a0, keep) = a.weight_zero_part();
  let images = keep.iter().map(|&i| lc_basis(i)).collect();
  AlgebraMorphism::new(format!("i_{}", a.name()), Arc::new(a0), a.clone(), images)
}

/// `A[t]` truncated at `tʷ`, remembering how it was built.
///
/// Basis element `a⊗tᵏ` sits at index `a·(w+1) + k`; its weight coordinates are those of `a`
/// followed by `k`.
#[derive(Clone, Debug)]
pub struct PolynomialExtension {
  pub base:     Arc<GradedAlgebra>,
  pub t_window: u32,
  pub algebra:  Arc<GradedAlgebra>,
}

impl PolynomialExtension {
  pub fn new(base: Arc<GradedAlgebra>, t_window: u32) -> Self {
    let kt = polynomial_kt(t_window);
    let label = |a: &str, t: &str| match (a, t) {
      (a, "1") => a.to_string(),
      ("1", t) => t.to_string(),
      (a, t) => format!("{a}·{t}"),
    };
    let name = format!("{}[t]", base.name());
    // short labels collide when A itself has an element called `t`
    let algebra = tensor_with_labels(&base, &kt, name.clone(), label)
      .or_else(|_| tensor_with_labels(&base, &kt, name, |a, t| format!("{a}⊗{t}")))
      .expect("tensor labels are distinct");
    PolynomialExtension { base, t_window, algebra: Arc::new(algebra) }
  }

  pub fn index(&self, a: usize, k: u32) -> usize { a * (self.t_window as usize + 1) + k as usize }

  /// `A → A[t]`, `x ↦ x⊗1`.
  pub fn inclusion(&self) -> Result<AlgebraMorphism, AlgebraError> {
    let images = (0..self.base.dim()).map(|a| lc_basis(self.index(a, 0))).collect();
    AlgebraMorphism::new(format!("ι_{}", self.base.name()), self.base.clone(), self.algebra.clone(), images)
  }

  /// Evaluation of the `t`-factor at `value ∈ {0, 1}`: `x⊗tᵏ ↦ value^k·x`.
  pub fn evaluation(&self, value: u32) -> Result<AlgebraMorphism, AlgebraError> {
    assert!(value <= 1, "only evaluations at 0 and 1 are provided");
    let mut images = Vec::with_capacity(self.algebra.dim());
    for a in 0..self.base.dim() {
      for k in 0..=self.t_window {
        images.push(if k == 0 || value == 1 { lc_basis(a) } else { Vec::new() });
      }
    }
    AlgebraMorphism::new(format!("ev{value}_t"), self.algebra.clone(), self.base.clone(), images)
  }

  /// `H: A → A[t]`, sending a homogeneous `x` of total weight `n` to `x⊗tⁿ`. Doubles weights.
  pub fn grading_homotopy(&self) -> Result<AlgebraMorphism, AlgebraError> {
    let needed = self.base.max_defined_product_weight();
    if needed > self.t_window {
      return Err(AlgebraError::WindowOverflow(format!(
        "H needs t-window ≥ {needed}, extension has {}",
        self.t_window
      )));
    }
    let images = (0..self.base.dim()).map(|a| lc_basis(self.index(a, self.base.total_weight(a)))).collect();
    AlgebraMorphism::new(format!("H_{}", self.base.name()), self.base.clone(), self.algebra.clone(), images)
  }
}

/// `A[t]` truncated at `tʷ`.
pub fn polynomial_extension(a: &GradedAlgebra, w: u32) -> GradedAlgebra {
  (*PolynomialExtension::new(Arc::new(a.clone()), w).algebra).clone()
}

/// `H: A → A[t]` for the given `t`-window.
pub fn grading_homotopy(a: &Arc<GradedAlgebra>, w: u32) -> Result<AlgebraMorphism, AlgebraError> {
  PolynomialExtension::new(a.clone(), w).grading_homotopy()
}

/// `ι: k → k[t]`, `ev₀, ev₁: k[t] → k` for `k[t]` truncated at `t^window`.
#[derive(Clone, Debug)]
pub struct KtMorphisms {
  pub iota: AlgebraMorphism,
  pub ev0:  AlgebraMorphism,
  pub ev1:  AlgebraMorphism,
}

pub fn kt_morphisms(window: u32) -> KtMorphisms {
  let k = Arc::new(ground_field());
  let kt = Arc::new(polynomial_kt(window));
  let iota = AlgebraMorphism::new("ι", k.clone(), kt.clone(), vec![lc_basis(kt.unit())]).unwrap();
  let ev = |name: &str, at_one: bool| {
    let images = (0..kt.dim()).map(|n| if n == 0 || at_one { lc_basis(0) } else { Vec::new() }).collect();
    AlgebraMorphism::new(name, kt.clone(), k.clone(), images).unwrap()
  };
  KtMorphisms { iota, ev0: ev("ev0", false), ev1: ev("ev1", true) }
}

#[cfg(test)]
mod tests {
  use super::*;
  use crate::algebra::catalog::{self, standard_library};

  #[test]
  fn projection_and_inclusion_on_dual_numbers() {
    let a = Arc::new(catalog::dual_numbers_graded());
    let p = grading_projection(&a).unwrap();
    let xi = a.index_of("ξ").unwrap();
    assert!(p.image(xi).is_empty());
    assert_eq!(p.image(a.unit()), &lc_basis(p.target().unit()));
    let i = grading_inclusion(&a).unwrap();
    assert!(p.compose(&i).unwrap().agrees_with(&AlgebraMorphism::identity(i.source().clone())));
  }

  #[test]
  fn projection_kills_t() {
    let a = Arc::new(catalog::polynomial_kt(4));
    let p = grading_projection(&a).unwrap();
    assert!(p.image(a.index_of("t").unwrap()).is_empty());
    assert_eq!(p.target().dim(), 1);
  }

  #[test]
  fn section_property_on_catalog() {
    for e in standard_library() {
      let a = Arc::new(e.algebra);
      let p = grading_projection(&a).unwrap();
      let i = grading_inclusion(&a).unwrap();
      let id = AlgebraMorphism::identity(i.source().clone());
      assert!(p.compose(&i).unwrap().agrees_with(&id), "{}", e.name);
    }
  }

  #[test]
  fn homotopy_on_dual_numbers() {
    let a = Arc::new(catalog::dual_numbers_graded());
    let ext = PolynomialExtension::new(a.clone(), 2);
    let h = ext.grading_homotopy().unwrap();
    let xi = a.index_of("ξ").unwrap();
    assert_eq!(ext.algebra.label(h.image(xi)[0].0), "ξ·t");
    assert_eq!(h.image(a.unit()), &lc_basis(ext.algebra.unit()));
    let ev1 = ext.evaluation(1).unwrap();
    let ev0 = ext.evaluation(0).unwrap();
    assert!(ev1.compose(&h).unwrap().agrees_with(&AlgebraMorphism::identity(a.clone())));
    let ip = grading_inclusion(&a).unwrap().compose(&grading_projection(&a).unwrap()).unwrap();
    assert!(ev0.compose(&h).unwrap().agrees_with(&ip));
  }

  #[test]
  fn homotopy_needs_wide_enough_window() {
    let a = Arc::new(catalog::dual_numbers_graded());
    assert!(matches!(grading_homotopy(&a, 1), Err(AlgebraError::WindowOverflow(_))));
  }

  #[test]
  fn kt_relations() {
    let m = kt_morphisms(3);
    let t = m.ev0.source().index_of("t").unwrap();
    let t2 = m.ev0.source().index_of("t^2").unwrap();
    assert!(m.ev0.image(t).is_empty());
    assert_eq!(m.ev1.image(t2), &lc_basis(0));
    let id = AlgebraMorphism::identity(m.iota.source().clone());
    assert!(m.ev0.compose(&m.iota).unwrap().agrees_with(&id));
    assert!(m.ev1.compose(&m.iota).unwrap().agrees_with(&id));
  }

  #[test]
  fn extension_basis_and_validity() {
    let k = catalog::ground_field();
    let kt = polynomial_extension(&k, 2);
    let labels: Vec<&str> = kt.basis().iter().map(|b| b.label.as_str()).collect();
    assert_eq!(labels, ["1", "t", "t^2"]);
    let d = polynomial_extension(&catalog::dual_numbers_graded(), 1);
    let labels: Vec<&str> = d.basis().iter().map(|b| b.label.as_str()).collect();
    assert_eq!(labels, ["1", "t", "ξ", "ξ·t"]);
    for e in standard_library() {
      for w in 0..3 {
        let r = polynomial_extension(&e.algebra, w).validate();
        assert!(r.is_valid(), "{}[t] w={w}: {:?}", e.name, r.violations);
      }
    }
  }

  #[test]
  fn rejects_non_multiplicative_map() {
    let d = Arc::new(catalog::dual_numbers());
    let eps = d.index_of("ε").unwrap();
    // ε ↦ 1 is not multiplicative (ε² = 0 but 1² = 1)
    let images = vec![lc_basis(d.unit()), lc_basis(d.unit())];
    assert!(matches!(
      AlgebraMorphism::new("bad", d.clone(), d.clone(), images),
      Err(AlgebraError::NotMultiplicative { .. })
    ));
    let images = vec![Vec::new(), lc_basis(eps)];
    assert!(matches!(AlgebraMorphism::new("bad", d.clone(), d, images), Err(AlgebraError::NotUnital(_))));
  }
}

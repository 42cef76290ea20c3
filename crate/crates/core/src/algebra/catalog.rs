//! Built-in algebras.

use std::collections::HashMap;


use super::graded::{lc_basis, AlgebraBuilder, BasisElement, GradedAlgebra, LinComb};

/// The ground field ℚ.
pub fn ground_field() -> GradedAlgebra { AlgebraBuilder::new("Q").element("1", 0).unit("1").build().unwrap() }

/// `k[ξ]/ξ²` with `ξ` of weight 1.
pub fn dual_numbers_graded() -> GradedAlgebra {
  AlgebraBuilder::new("dual-graded").element("1", 0).element("ξ", 1).unit("1").build().unwrap()
}

/// `k[ε]/ε²` with everything in weight 0.
pub fn dual_numbers() -> GradedAlgebra {
  AlgebraBuilder::new("dual").element("1", 0).element("ε", 0).unit("1").build().unwrap()
}

/// `k[x]/xᵐ`, ungraded.
pub fn truncated_polynomial(m: u32) -> GradedAlgebra {
  assert!(m >= 1);
  let label = |i: u32| match i {
    0 => "1".to_string(),
    1 => "x".to_string(),
    _ => format!("x^{i}"),
  };
  let mut b = AlgebraBuilder::new(format!("trunc{m}"));
  for i in 0..m {
    b = b.element(&label(i), 0);
  }
  b = b.unit("1");
  for i in 1..m {
    for j in 1..m {
      if i + j < m {
        b = b.product(&label(i), &label(j), &[(1, &label(i + j))]);
      }
    }
  }
  b.build().unwrap()
}

/// `k × k` presented on `{1, e}` with `e² = e`; the idempotents are `e` and `1 − e`.
pub fn split_product() -> GradedAlgebra {
  AlgebraBuilder::new("kxk").element("1", 0).element("e", 0).unit("1").product("e", "e", &[(1, "e")]).build().unwrap()
}

/// `M₂(k)` presented on `{1, e11, e12, e21}`; `e22 = 1 − e11`.
pub fn matrix_algebra() -> GradedAlgebra {
  type M = [[i64; 2]; 2];
  let mats: [(&str, M); 4] =
    [("1", [[1, 0], [0, 1]]), ("e11", [[1, 0], [0, 0]]), ("e12", [[0, 1], [0, 0]]), ("e21", [[0, 0], [1, 0]])];
  let mul = |a: &M, b: &M| -> M {
    let mut c = [[0; 2]; 2];
    for i in 0..2 {
      for j in 0..2 {
        c[i][j] = (0..2).map(|k| a[i][k] * b[k][j]).sum();
      }
    }
    c
  };
  // coordinates in the basis: [[a, b], [c, d]] = d·1 + (a − d)·e11 + b·e12 + c·e21
  let decompose = |m: &M| -> Vec<(i64, &str)> {
    [(m[1][1], "1"), (m[0][0] - m[1][1], "e11"), (m[0][1], "e12"), (m[1][0], "e21")]
      .into_iter()
      .filter(|(c, _)| *c != 0)
      .collect()
  };
  let mut b = AlgebraBuilder::new("m2");
  for (l, _) in &mats {
    b = b.element(l, 0);
  }
  b = b.unit("1");
  for (la, ma) in &mats[1..] {
    for (lb, mb) in &mats[1..] {
      b = b.product(la, lb, &decompose(&mul(ma, mb)));
    }
  }
  b.build().unwrap()
}

/// Polynomial algebra on `vars`, truncated to total degree `≤ degree`, weight = total degree and
/// window = `degree`. Monomials are ordered by degree, then lexicographically by exponent
/// vector (descending), so `1` comes first and the variables follow in order.
pub fn polynomial_algebra(name: &str, vars: &[String], degree: u32) -> GradedAlgebra {
  let exps = monomials(vars.len(), degree);
  let pos: HashMap<Vec<u32>, usize> = exps.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect();
  let basis = exps
    .iter()
    .map(|e| BasisElement { label: monomial_label(vars, e), weights: vec![e.iter().sum()] })
    .collect();
  let mut products: Vec<((usize, usize), LinComb)> = Vec::new();
  for (i, a) in exps.iter().enumerate() {
    for (j, b) in exps.iter().enumerate() {
      let s: Vec<u32> = a.iter().zip(b).map(|(x, y)| x + y).collect();
      if let Some(&k) = pos.get(&s) {
        products.push(((i, j), lc_basis(k)));
      }
    }
  }
  GradedAlgebra::new(name, basis, 0, vec![Some(degree)], products).expect("monomial table is well-formed")
}

/// Exponent vectors of total degree `≤ degree` in the documented order.
pub fn monomials(nvars: usize, degree: u32) -> Vec<Vec<u32>> {
  fn rec(nvars: usize, remaining: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if prefix.len() == nvars {
      if remaining == 0 {
        out.push(prefix.clone());
      }
      return;
    }
    for e in (0..=remaining).rev() {
      prefix.push(e);
      rec(nvars, remaining - e, prefix, out);
      prefix.pop();
    }
  }
  let mut out = Vec::new();
  for d in 0..=degree {
    rec(nvars, d, &mut Vec::new(), &mut out);
  }
  out
}

fn monomial_label(vars: &[String], e: &[u32]) -> String {
  let parts: Vec<String> = vars
    .iter()
    .zip(e)
    .filter(|(_, &k)| k > 0)
    .map(|(v, &k)| if k == 1 { v.clone() } else { format!("{v}^{k}") })
    .collect();
  if parts.is_empty() {
    "1".into()
  } else {
    parts.join("*")
  }
}

/// `k[t]` truncated at `t^window`, with `t` of weight 1.
pub fn polynomial_kt(window: u32) -> GradedAlgebra { polynomial_algebra("kt", &["t".to_string()], window) }

/// Window used for the catalog copy of `k[t]`.
pub const KT_CATALOG_WINDOW: u32 = 6;

#[derive(Clone, Debug)]
pub struct CatalogEntry {
  pub name:        &'static str,
  pub description: &'static str,
  pub algebra:     GradedAlgebra,
}

/// All built-in algebras, in a fixed order.
pub fn standard_library() -> Vec<CatalogEntry> {
  let e = |name, description, algebra: GradedAlgebra| CatalogEntry { name, description, algebra: algebra.with_name(name) };
  vec![
    e("Q", "ground field", ground_field()),
    e("dual-graded", "k[ξ]/ξ², ξ of weight 1", dual_numbers_graded()),
    e("dual", "k[ε]/ε², ungraded", dual_numbers()),
    e("trunc2", "k[x]/x², ungraded", truncated_polynomial(2)),
    e("trunc3", "k[x]/x³, ungraded", truncated_polynomial(3)),
    e("kxk", "k × k, idempotents e and 1−e", split_product()),
    e("m2", "2×2 matrices M₂(k)", matrix_algebra()),
    e("kt", "k[t] truncated at t^6, t of weight 1", polynomial_kt(KT_CATALOG_WINDOW)),
  ]
}

pub fn lookup(name: &str) -> Option<GradedAlgebra> {
  standard_library().into_iter().find(|e| e.name == name).map(|e| e.algebra)
}

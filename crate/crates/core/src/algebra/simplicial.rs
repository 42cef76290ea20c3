use std::collections::HashMap;
use std::sync::Arc;

use crate::qlinalg::Q;

use super::catalog::polynomial_algebra;
use super::graded::{lc_add, lc_basis, lc_scale, GradedAlgebra, LinComb};
use super::morphism::{kt_morphisms, AlgebraMorphism};
use super::AlgebraError;

/// Linear form in the coordinates `t₀, …, tₘ` of some `Δₘ`: `(j, c)` stands for `c·tⱼ`. The
/// coordinate `t₀` is re-expanded as `1 − Σ tᵢ` when the form is evaluated.
pub type LinearForm = Vec<(usize, Q)>;

/// `Δₙ = k[t₀, …, tₙ]/(Σ tᵢ − 1)`, presented as the polynomial algebra on `t₁, …, tₙ` truncated
/// at total degree `≤ d`.
pub fn simplicial_algebra(n: usize, d: u32) -> GradedAlgebra {
  let vars: Vec<String> = (1..=n).map(|i| format!("t{i}")).collect();
  polynomial_algebra(&format!("Δ{n}"), &vars, d)
}

/// Element of `Δₘ` represented by the coordinate `tⱼ`.
fn coordinate(target: &GradedAlgebra, m: usize, j: usize) -> LinComb {
  if j == 0 {
    let mut lc = lc_basis(target.unit());
    for i in 1..=m {
      lc = lc_add(&lc, &lc_scale(&lc_basis(i), &Q::from_int(-1)));
    }
    lc
  } else {
    // variables follow the unit in the monomial order
    lc_basis(j)
  }
}

/// Substitution morphism `Δₙ → Δₘ` sending `tⱼ` to `forms[j]` for `j = 0, …, n`.
///
/// The source is generated by `t₁, …, tₙ`, so `forms[0]` is only used to check that the
/// substitution respects `Σ tᵢ = 1`.
pub fn substitution(
  name: impl Into<String>,
  n: usize,
  m: usize,
  d: u32,
  forms: &[LinearForm],
) -> Result<AlgebraMorphism, AlgebraError> {
  let name = name.into();
  assert_eq!(forms.len(), n + 1, "one linear form per coordinate t0..tn");
  let source = Arc::new(simplicial_algebra(n, d));
  let target = Arc::new(simplicial_algebra(m, d));
  let eval = |form: &LinearForm| -> Result<LinComb, AlgebraError> {
    let mut acc = Vec::new();
    for (j, c) in form {
      if *j > m {
        return Err(AlgebraError::IndexOutOfRange { index: *j, max: m });
      }
      acc = lc_add(&acc, &lc_scale(&coordinate(&target, m, *j), c));
    }
    Ok(acc)
  };
  let gens: Vec<LinComb> = forms.iter().map(eval).collect::<Result<_, _>>()?;
  let total = gens.iter().fold(Vec::new(), |acc, g| lc_add(&acc, g));
  if total != lc_basis(target.unit()) {
    return Err(AlgebraError::Structure(format!("{name} does not preserve t0 + … + tn = 1")));
  }
  // image of each monomial, built by multiplying one variable onto a lower-degree monomial
  let mut images: Vec<LinComb> = Vec::with_capacity(source.dim());
  let index: HashMap<&str, usize> = source.basis().iter().enumerate().map(|(i, b)| (b.label.as_str(), i)).collect();
  for (k, b) in source.basis().iter().enumerate() {
    if k == source.unit() {
      images.push(lc_basis(target.unit()));
      continue;
    }
    let (var, rest) = split_first_variable(&b.label);
    let rest_img = &images[index[rest.as_str()]];
    let var_idx: usize = var.trim_start_matches('t').parse().expect("variable label");
    let img = target.mul(rest_img, &gens[var_idx]).map_err(|_| AlgebraError::DegreeOverflow(d))?;
    images.push(img);
  }
  AlgebraMorphism::new(name, source, target, images)
}

/// Splits a monomial label such as `t1^2*t3` into its first variable `t1` and the remaining
/// monomial `t1*t3`.
fn split_first_variable(label: &str) -> (String, String) {
  let mut factors: Vec<(String, u32)> = label
    .split('*')
    .map(|f| match f.split_once('^') {
      Some((v, e)) => (v.to_string(), e.parse().expect("exponent")),
      None => (f.to_string(), 1),
    })
    .collect();
  let var = factors[0].0.clone();
  factors[0].1 -= 1;
  let rest: Vec<String> = factors
    .into_iter()
    .filter(|(_, e)| *e > 0)
    .map(|(v, e)| if e == 1 { v } else { format!("{v}^{e}") })
    .collect();
  (var, if rest.is_empty() { "1".into() } else { rest.join("*") })
}

fn coord(j: usize) -> LinearForm { vec![(j, Q::one())] }

/// Face `∂ᵣ: Δₙ → Δₙ₋₁`: `tⱼ ↦ tⱼ (j < r), 0 (j = r), tⱼ₋₁ (j > r)`.
pub fn face(n: usize, r: usize, d: u32) -> Result<AlgebraMorphism, AlgebraError> {
  if n == 0 || r > n {
    return Err(AlgebraError::IndexOutOfRange { index: r, max: n });
  }
  let forms: Vec<LinearForm> = (0..=n)
    .map(|j| match j.cmp(&r) {
      std::cmp::Ordering::Less => coord(j),
      std::cmp::Ordering::Equal => Vec::new(),
      std::cmp::Ordering::Greater => coord(j - 1),
    })
    .collect();
  substitution(format!("∂{r}"), n, n - 1, d, &forms)
}

/// Degeneracy `δᵣ: Δₙ → Δₙ₊₁`: `tⱼ ↦ tⱼ (j < r), tⱼ + tⱼ₊₁ (j = r), tⱼ₊₁ (j > r)`.
pub fn degeneracy(n: usize, r: usize, d: u32) -> Result<AlgebraMorphism, AlgebraError> {
  if r > n {
    return Err(AlgebraError::IndexOutOfRange { index: r, max: n });
  }
  let forms: Vec<LinearForm> = (0..=n)
    .map(|j| match j.cmp(&r) {
      std::cmp::Ordering::Less => coord(j),
      std::cmp::Ordering::Equal => vec![(j, Q::one()), (j + 1, Q::one())],
      std::cmp::Ordering::Greater => coord(j + 1),
    })
    .collect();
  substitution(format!("δ{r}"), n, n + 1, d, &forms)
}

/// Outcome of checking the simplicial identities and the `ι`/`ev` relations.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SimplicialReport {
  pub checked:  usize,
  pub failures: Vec<String>,
}

impl SimplicialReport {
  pub fn passed(&self) -> bool { self.failures.is_empty() }
}

/// Checks the five families of simplicial identities on every basis element of `Δₙ` for
/// `n ≤ n_max`, using the supplied faces and degeneracies.
pub fn check_simplicial_identities<F, S>(n_max: usize, d: u32, face: F, degeneracy: S) -> Result<SimplicialReport, AlgebraError>
where
  F: Fn(usize, usize, u32) -> Result<AlgebraMorphism, AlgebraError>,
  S: Fn(usize, usize, u32) -> Result<AlgebraMorphism, AlgebraError>,
{
  let mut faces: HashMap<(usize, usize), AlgebraMorphism> = HashMap::new();
  let mut degens: HashMap<(usize, usize), AlgebraMorphism> = HashMap::new();
  let mut fget = |n: usize, r: usize| -> Result<AlgebraMorphism, AlgebraError> {
    if let Some(m) = faces.get(&(n, r)) {
      return Ok(m.clone());
    }
    let m = face(n, r, d)?;
    faces.insert((n, r), m.clone());
    Ok(m)
  };
  let mut sget = |n: usize, r: usize| -> Result<AlgebraMorphism, AlgebraError> {
    if let Some(m) = degens.get(&(n, r)) {
      return Ok(m.clone());
    }
    let m = degeneracy(n, r, d)?;
    degens.insert((n, r), m.clone());
    Ok(m)
  };
  let mut report = SimplicialReport::default();
  let expect = |report: &mut SimplicialReport, what: String, lhs: AlgebraMorphism, rhs: AlgebraMorphism| {
    report.checked += 1;
    if !lhs.agrees_with(&rhs) {
      report.failures.push(format!("{what} fails"));
    }
  };
  for n in 0..=n_max {
    // d_i d_j = d_{j−1} d_i, i < j, on Δn (n ≥ 2)
    if n >= 2 {
      for j in 0..=n {
        for i in 0..j {
          let lhs = fget(n - 1, i)?.compose(&fget(n, j)?)?;
          let rhs = fget(n - 1, j - 1)?.compose(&fget(n, i)?)?;
          expect(&mut report, format!("∂{i}∂{j} = ∂{}∂{i} on Δ{n}", j - 1), lhs, rhs);
        }
      }
    }
    for j in 0..=n {
      // d_i s_j = s_{j−1} d_i, i < j
      for i in 0..j {
        let lhs = fget(n + 1, i)?.compose(&sget(n, j)?)?;
        let rhs = sget(n - 1, j - 1)?.compose(&fget(n, i)?)?;
        expect(&mut report, format!("∂{i}δ{j} = δ{}∂{i} on Δ{n}", j - 1), lhs, rhs);
      }
      // d_j s_j = d_{j+1} s_j = id
      let id = AlgebraMorphism::identity(sget(n, j)?.source().clone());
      for i in [j, j + 1] {
        let lhs = fget(n + 1, i)?.compose(&sget(n, j)?)?;
        expect(&mut report, format!("∂{i}δ{j} = id on Δ{n}"), lhs, id.clone());
      }
      // d_i s_j = s_j d_{i−1}, i > j + 1
      for i in (j + 2)..=(n + 1) {
        let lhs = fget(n + 1, i)?.compose(&sget(n, j)?)?;
        let rhs = sget(n - 1, j)?.compose(&fget(n, i - 1)?)?;
        expect(&mut report, format!("∂{i}δ{j} = δ{j}∂{} on Δ{n}", i - 1), lhs, rhs);
      }
      // s_i s_j = s_{j+1} s_i, i ≤ j
      for i in 0..=j {
        let lhs = sget(n + 1, i)?.compose(&sget(n, j)?)?;
        let rhs = sget(n + 1, j + 1)?.compose(&sget(n, i)?)?;
        expect(&mut report, format!("δ{i}δ{j} = δ{}δ{i} on Δ{n}", j + 1), lhs, rhs);
      }
    }
  }
  Ok(report)
}

/// The simplicial identities for the actual faces and degeneracies, plus
/// `ev₀∘ι = ev₁∘ι = id` for `k[t]` truncated at degree `d`.
pub fn simplicial_identity_report(n_max: usize, d: u32) -> Result<SimplicialReport, AlgebraError> {
  let mut report = check_simplicial_identities(n_max, d, face, degeneracy)?;
  let kt = kt_morphisms(d);
  let id = AlgebraMorphism::identity(kt.iota.source().clone());
  for (name, ev) in [("ev0∘ι = id", &kt.ev0), ("ev1∘ι = id", &kt.ev1)] {
    report.checked += 1;
    if !ev.compose(&kt.iota)?.agrees_with(&id) {
      report.failures.push(format!("{name} fails"));
    }
  }
  Ok(report)
}

/// Dimension of `Δₙ` truncated at degree `d`: monomials of degree `≤ d` in `n` variables.
#[cfg(test)]
fn simplicial_dim(n: usize, d: u32) -> usize {
  // C(n + d, n)
  (1..=n).fold(1usize, |acc, i| acc * (d as usize + i) / i)
}

#[cfg(test)]
mod tests {
  use super::*;

  #[test]
  fn algebra_dimensions_and_validity() {
    for n in 0..=3 {
      for d in 0..=3 {
        let a = simplicial_algebra(n, d);
        assert_eq!(a.dim(), simplicial_dim(n, d));
        assert!(a.validate().is_valid());
      }
    }
  }

  #[test]
  fn first_face_of_interval_kills_t1() {
    let f = face(1, 1, 2).unwrap();
    let t1 = f.source().index_of("t1").unwrap();
    assert!(f.image(t1).is_empty());
    // ∂0 sends t1 to t0 = 1 in Δ0
    let f0 = face(1, 0, 2).unwrap();
    assert_eq!(f0.image(t1), &lc_basis(0));
  }

  #[test]
  fn degeneracy_shifts_higher_coordinates() {
    let s = degeneracy(1, 0, 2).unwrap();
    let t1 = s.source().index_of("t1").unwrap();
    let t2 = s.target().index_of("t2").unwrap();
    assert_eq!(s.image(t1), &lc_basis(t2));
    // δ1 on Δ1 sends t1 to t1 + t2
    let s1 = degeneracy(1, 1, 2).unwrap();
    let t1t = s1.target().index_of("t1").unwrap();
    assert_eq!(s1.image(t1), &vec![(t1t, Q::one()), (t2, Q::one())]);
  }

  #[test]
  fn face_identity_on_delta3_brute_force() {
    // every ∂r∂s = ∂(s−1)∂r with r < s on Δ3, compared on the full basis at d = 4
    for s in 0..=3 {
      for r in 0..s {
        let lhs = face(2, r, 4).unwrap().compose(&face(3, s, 4).unwrap()).unwrap();
        let rhs = face(2, s - 1, 4).unwrap().compose(&face(3, r, 4).unwrap()).unwrap();
        assert!(lhs.agrees_with(&rhs), "r={r} s={s}");
      }
    }
  }

  #[test]
  fn all_identities_up_to_delta3() {
    let report = simplicial_identity_report(3, 4).unwrap();
    assert!(report.passed(), "{:?}", report.failures);
    assert!(report.checked > 50);
  }

  #[test]
  fn vacuous_faces_at_level_zero() {
    let report = simplicial_identity_report(0, 2).unwrap();
    assert!(report.passed());
    // δ0: Δ0 → Δ1 and the two identities ∂0δ0 = ∂1δ0 = id, δ0δ0 = δ1δ0, and two ev relations
    assert_eq!(report.checked, 5);
  }

  #[test]
  fn sign_error_in_degeneracy_is_caught() {
    // tr ↦ tr − t(r+1) for r ≥ 1, with t0 ↦ t0 + 2·t(r+1) keeping the coordinate sum at 1
    let bad = |n: usize, r: usize, d: u32| {
      if r == 0 {
        return degeneracy(n, r, d);
      }
      let forms: Vec<LinearForm> = (0..=n)
        .map(|j| match j {
          0 => vec![(0, Q::one()), (r + 1, Q::from_int(2))],
          j if j == r => vec![(j, Q::one()), (j + 1, Q::from_int(-1))],
          j if j < r => coord(j),
          j => coord(j + 1),
        })
        .collect();
      substitution(format!("bad δ{r}"), n, n + 1, d, &forms)
    };
    let report = check_simplicial_identities(2, 3, face, bad).unwrap();
    assert!(!report.passed());
  }

  #[test]
  fn out_of_range_indices() {
    assert!(matches!(face(2, 3, 2), Err(AlgebraError::IndexOutOfRange { .. })));
    assert!(matches!(face(0, 0, 2), Err(AlgebraError::IndexOutOfRange { .. })));
    assert!(matches!(degeneracy(1, 2, 2), Err(AlgebraError::IndexOutOfRange { .. })));
  }
}

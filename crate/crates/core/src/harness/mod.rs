//! Named verification experiments, algebra files and machine-readable reports.
//!
//! Every experiment returns an [`ExperimentResult`]. Its JSON rendering is deterministic for
//! fixed inputs; wall time is only included when asked for.

mod file;

use std::collections::BTreeMap;
use std::sync::Arc;
use std::time::Instant;

use itertools::Itertools;
use serde::Serialize;

pub use file::{load_algebra, parse_algebra, FileError, Format, Issue, Location};

use crate::algebra::{grading_inclusion, simplicial_identity_report, AlgebraError, GradedAlgebra, PolynomialExtension};
use crate::homology::{hp_of_map, periodic, HPReport, HomologyError};
use crate::ktheory0::{bimodule_p, direct_sum, euler_class, homology, localization_acyclic, resolves_trivial_module, FreeComplex};
use crate::mixed::{bar_mixed, de_rham_model, induced_mixed_map, tensor_mixed, DeRham, MixedComplex, MixedError};

/// Truncation parameters shared by the experiments.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Params {
  pub n_max:    usize,
  pub w_max:    u32,
  pub columns:  usize,
  /// `t`-window of the directly presented `A[t]` in the `a1` experiment.
  pub t_window: u32,
  #[serde(skip)]
  pub timing:   bool,
}

/// The single fallback level tried when a computation does not stabilize.
pub const BUMPED_N_MAX: usize = 12;

impl Default for Params {
  fn default() -> Self { Params { n_max: 8, w_max: 6, columns: 6, t_window: 1, timing: false } }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
  Pass,
  Fail,
  Inconclusive,
}

impl Status {
  /// `0` pass, `1` fail, `2` inconclusive.
  pub fn exit_code(self) -> u8 {
    match self {
      Status::Pass => 0,
      Status::Fail => 1,
      Status::Inconclusive => 2,
    }
  }

  /// Inconclusive dominates fail, which dominates pass.
  pub fn combine(self, other: Status) -> Status {
    match (self, other) {
      (Status::Inconclusive, _) | (_, Status::Inconclusive) => Status::Inconclusive,
      (Status::Fail, _) | (_, Status::Fail) => Status::Fail,
      _ => Status::Pass,
    }
  }
}

/// Outcome of one experiment. Dimension pairs are `[even, odd]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExperimentResult {
  pub name:         String,
  pub algebra:      Option<String>,
  pub status:       Status,
  pub expected:     BTreeMap<String, [usize; 2]>,
  pub computed:     BTreeMap<String, [usize; 2]>,
  pub parameters:   Params,
  /// Largest `n_max` actually used, after a possible bump.
  pub n_max_used:   usize,
  pub details:      Vec<String>,
  #[serde(skip_serializing_if = "Option::is_none")]
  pub wall_time_ms: Option<u64>,
}

impl ExperimentResult {
  fn new(name: &str, algebra: Option<&str>, params: &Params) -> Self {
    ExperimentResult {
      name:         name.to_string(),
      algebra:      algebra.map(str::to_string),
      status:       Status::Pass,
      expected:     BTreeMap::new(),
      computed:     BTreeMap::new(),
      parameters:   params.clone(),
      n_max_used:   params.n_max,
      details:      Vec::new(),
      wall_time_ms: None,
    }
  }

  fn demand(&mut self, ok: bool, what: impl Into<String>) {
    let what = what.into();
    if !ok {
      self.status = self.status.combine(Status::Fail);
      self.details.push(format!("FAILED: {what}"));
    } else {
      self.details.push(what);
    }
  }

  fn inconclusive(&mut self, why: impl Into<String>) {
    self.status = Status::Inconclusive;
    self.details.push(format!("inconclusive: {}", why.into()));
  }

  fn record(&mut self, key: &str, r: &HPReport) {
    self.computed.insert(key.to_string(), [r.even_dim, r.odd_dim]);
    if !r.stabilized {
      self.inconclusive(format!("{key} not stabilized in weights {}", r.unstable.iter().join(", ")));
    }
  }

  /// Pretty JSON with a trailing newline.
  pub fn to_json(&self) -> String { serde_json::to_string_pretty(self).expect("serializable") + "\n" }

  /// Human-readable summary.
  pub fn to_text(&self) -> String {
    let mut out = format!("{}{}: {:?}\n", self.name, self.algebra.as_ref().map_or(String::new(), |a| format!(" [{a}]")), self.status);
    out = out.replace("Pass", "pass").replace("Fail", "fail").replace("Inconclusive", "inconclusive");
    for (k, v) in &self.computed {
      let exp = self.expected.get(k).map_or(String::new(), |e| format!("  (expected {e:?})"));
      out += &format!("  {k} = {v:?}{exp}\n");
    }
    for d in &self.details {
      out += &format!("  {d}\n");
    }
    if let Some(ms) = self.wall_time_ms {
      out += &format!("  wall time {ms} ms\n");
    }
    out
  }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HarnessError {
  #[error(transparent)]
  File(#[from] FileError),
  #[error(transparent)]
  Algebra(#[from] AlgebraError),
  #[error(transparent)]
  Mixed(#[from] MixedError),
  #[error(transparent)]
  Homology(#[from] HomologyError),
  #[error("unknown built-in algebra `{0}`")]
  UnknownBuiltin(String),
}

impl HarnessError {
  /// `3` for input problems, `1` otherwise.
  pub fn exit_code(&self) -> u8 {
    match self {
      HarnessError::File(_) | HarnessError::UnknownBuiltin(_) => 3,
      _ => 1,
    }
  }
}

/// Weight bound usable with `a`: `w_max` capped at the algebra's window.
pub fn effective_w_max(a: &GradedAlgebra, w_max: u32) -> u32 { a.weight_window().map_or(w_max, |w| w.min(w_max)) }

/// Periodic homology of `build(n_max)`, retried once at [`BUMPED_N_MAX`] if unstable.
fn hp_bumped(
  build: impl Fn(usize) -> Result<MixedComplex, MixedError>,
  params: &Params,
  used: &mut usize,
) -> Result<HPReport, HarnessError> {
  let mut report = periodic(&build(params.n_max)?, params.columns)?;
  *used = (*used).max(params.n_max);
  if !report.stabilized && params.n_max < BUMPED_N_MAX {
    report = periodic(&build(BUMPED_N_MAX)?, params.columns)?;
    *used = BUMPED_N_MAX;
  }
  Ok(report)
}

/// `HP(A)` through the bar model.
pub fn cmd_hp(a: &GradedAlgebra, params: &Params) -> Result<HPReport, HarnessError> {
  let w = effective_w_max(a, params.w_max);
  let mut used = 0;
  let mut r = hp_bumped(|n| bar_mixed(a, n, w), params, &mut used)?;
  r.w_max = Some(w);
  Ok(r)
}

fn timed(params: &Params, f: impl FnOnce() -> Result<ExperimentResult, HarnessError>) -> Result<ExperimentResult, HarnessError> {
  let start = Instant::now();
  let mut r = f()?;
  if params.timing {
    r.wall_time_ms = Some(start.elapsed().as_millis() as u64);
  }
  Ok(r)
}

/// `HP(A[t, t⁻¹]) = HP(A) ⊕ ΣHP(A)`, with the Laurent side modelled as
/// `bar(A) ⊗ Ω(k[t, t⁻¹])`.
pub fn cmd_verify_ft(a: &GradedAlgebra, params: &Params) -> Result<ExperimentResult, HarnessError> {
  timed(params, || {
    let mut res = ExperimentResult::new("ft", Some(a.name()), params);
    let w = effective_w_max(a, params.w_max);
    let mut used = 0;
    let base = hp_bumped(|n| bar_mixed(a, n, w), params, &mut used)?;
    let laurent = de_rham_model(DeRham::Laurent, params.w_max);
    let ext = hp_bumped(|n| tensor_mixed(&bar_mixed(a, n, w)?, &laurent), params, &mut used)?;
    res.n_max_used = used;
    res.record("HP(A)", &base);
    res.record("HP(A[t,t^-1])", &ext);
    let (e, o) = base.dims();
    res.expected.insert("HP(A[t,t^-1])".into(), [e + o, o + e]);
    if res.status != Status::Inconclusive {
      res.demand(ext.dims() == (e + o, o + e), "HP(A[t,t^-1]) = HP(A) ⊕ ΣHP(A)");
    }
    Ok(res)
  })
}

/// The inclusion `A₀ → A` of the weight-zero part induces an isomorphism on `HP`.
pub fn cmd_verify_graded(a: &GradedAlgebra, params: &Params) -> Result<ExperimentResult, HarnessError> {
  timed(params, || {
    let mut res = ExperimentResult::new("graded", Some(a.name()), params);
    let a = Arc::new(a.clone());
    let w = effective_w_max(&a, params.w_max);
    let incl = grading_inclusion(&a)?;
    res.details.push(format!("A₀ has dimension {} of {}", incl.source().dim(), a.dim()));
    let run = |n: usize| -> Result<_, HarnessError> {
      let (_, _, f) = induced_mixed_map(&incl, n, w)?;
      match hp_of_map(&f, params.columns) {
        Err(HomologyError::NotStabilized(s)) => Ok(Err(s)),
        other => Ok(Ok(other?)),
      }
    };
    let mut outcome = run(params.n_max)?;
    res.n_max_used = params.n_max;
    if outcome.is_err() && params.n_max < BUMPED_N_MAX {
      outcome = run(BUMPED_N_MAX)?;
      res.n_max_used = BUMPED_N_MAX;
    }
    match outcome {
      Err(s) => res.inconclusive(s),
      Ok(m) => {
        res.record("HP(A0)", &m.source);
        res.record("HP(A)", &m.target);
        res.computed.insert("rank HP(i)".into(), [m.rank_even, m.rank_odd]);
        res.expected.insert("rank HP(i)".into(), [m.target.even_dim, m.target.odd_dim]);
        res.demand(m.is_iso, "HP(A₀) → HP(A) is an isomorphism");
      }
    }
    Ok(res)
  })
}

/// `HP(A) = HP(A[t])`, with `A[t]` both presented directly (truncated at `t_window`) and
/// modelled as `bar(A) ⊗ Ω(k[t])`.
pub fn cmd_verify_a1(a: &GradedAlgebra, params: &Params) -> Result<ExperimentResult, HarnessError> {
  timed(params, || {
    let mut res = ExperimentResult::new("a1", Some(a.name()), params);
    let w = effective_w_max(a, params.w_max);
    let mut used = 0;
    let base = hp_bumped(|n| bar_mixed(a, n, w), params, &mut used)?;
    let ext = PolynomialExtension::new(Arc::new(a.clone()), params.t_window);
    let tw = effective_w_max(&ext.algebra, params.w_max.max(params.t_window));
    let direct = hp_bumped(|n| bar_mixed(&ext.algebra, n, tw), params, &mut used)?;
    let poly = de_rham_model(DeRham::Poly, params.w_max);
    let kunneth = hp_bumped(|n| tensor_mixed(&bar_mixed(a, n, w)?, &poly), params, &mut used)?;
    res.n_max_used = used;
    res.record("HP(A)", &base);
    res.record("HP(A[t]) direct", &direct);
    res.record("HP(A[t]) tensor", &kunneth);
    let d = [base.even_dim, base.odd_dim];
    res.expected.insert("HP(A[t]) direct".into(), d);
    res.expected.insert("HP(A[t]) tensor".into(), d);
    if res.status != Status::Inconclusive {
      res.demand(direct.dims() == base.dims(), "direct A[t] model agrees with HP(A)");
      res.demand(kunneth.dims() == base.dims(), "tensor model of A[t] agrees with HP(A)");
    }
    Ok(res)
  })
}

/// Euler class and `t`-localization of a free complex that should resolve `k = ℚ[t]/(t)`.
pub fn cmd_k0_complex(name: &str, c: &FreeComplex, params: &Params) -> ExperimentResult {
  let start = Instant::now();
  let mut res = ExperimentResult::new("k0", Some(name), params);
  let euler = euler_class(c);
  res.details.extend(homology(c).iter().map(ToString::to_string));
  res.demand(euler == 0, format!("[{name}] = {euler} in K₀ ≅ ℤ"));
  res.demand(euler_class(&direct_sum(c, c)) == 2 * euler, format!("[{name} ⊕ {name}] = 2·[{name}]"));
  res.demand(resolves_trivial_module(c), "homology is the trivial module k in degree 0");
  res.demand(localization_acyclic(c), "acyclic after inverting t");
  if params.timing {
    res.wall_time_ms = Some(start.elapsed().as_millis() as u64);
  }
  res
}

/// [`cmd_k0_complex`] on `P = (ℚ[t] ·t→ ℚ[t])`.
pub fn cmd_k0(params: &Params) -> ExperimentResult { cmd_k0_complex("P", &bimodule_p(), params) }

/// Simplicial identities of `Δ•` up to `Δ_{n_max}` on polynomials of degree `≤ d`.
pub fn cmd_simplicial(n_max: usize, d: u32, params: &Params) -> Result<ExperimentResult, HarnessError> {
  timed(params, || {
    let mut res = ExperimentResult::new("simplicial", None, params);
    res.n_max_used = n_max;
    res.details.push(format!("Δ0 … Δ{n_max}, degree ≤ {d}"));
    let report = simplicial_identity_report(n_max, d)?;
    for f in &report.failures {
      res.details.push(format!("FAILED: {f}"));
    }
    res.demand(report.passed(), format!("{} identities checked, {} failed", report.checked, report.failures.len()));
    Ok(res)
  })
}

/// One line per experiment for `--list`.
pub fn experiment_list() -> Vec<(&'static str, &'static str)> {
  vec![
    ("hp", "periodic cyclic homology HP(A) = (even, odd) through the normalized bar model"),
    ("ft", "fundamental theorem for HP: HP(A[t,t^-1]) = HP(A) ⊕ ΣHP(A)"),
    ("graded", "for A graded in non-negative weights, HP(A₀) → HP(A) is an isomorphism"),
    ("a1", "A¹-invariance: HP(A) = HP(A[t]) via the direct and the tensor model"),
    ("k0", "the resolution P of k over k[t] has [P] = 0 in K₀ and is acyclic after inverting t"),
    ("simplicial", "face and degeneracy maps of Δ• satisfy the simplicial identities; ev₀∘ι = ev₁∘ι = id"),
    ("KH", "out of scope: the fundamental theorem for homotopy K-theory needs spectra, not implemented"),
  ]
}

#[cfg(test)]
mod tests {
  use super::*;
  use crate::algebra::catalog;
  use crate::qlinalg::Poly;

  fn quick() -> Params { Params { n_max: 6, w_max: 3, columns: 4, ..Params::default() } }

  #[test]
  fn ft_for_ground_field_and_product() {
    let r = cmd_verify_ft(&catalog::ground_field(), &quick()).unwrap();
    assert_eq!(r.status, Status::Pass, "{}", r.to_text());
    assert_eq!(r.computed["HP(A[t,t^-1])"], [1, 1]);
    let r = cmd_verify_ft(&catalog::split_product(), &quick()).unwrap();
    assert_eq!(r.computed["HP(A[t,t^-1])"], [2, 2]);
  }

  #[test]
  fn graded_inclusion() {
    let r = cmd_verify_graded(&catalog::dual_numbers_graded(), &quick()).unwrap();
    assert_eq!(r.status, Status::Pass, "{}", r.to_text());
    let r = cmd_verify_graded(&catalog::dual_numbers(), &quick()).unwrap();
    assert_eq!(r.status, Status::Pass, "{}", r.to_text());
  }

  #[test]
  fn a1_for_ground_field() {
    let r = cmd_verify_a1(&catalog::ground_field(), &quick()).unwrap();
    assert_eq!(r.status, Status::Pass, "{}", r.to_text());
    assert_eq!(r.computed.len(), 3);
  }

  #[test]
  fn k0_and_control() {
    assert_eq!(cmd_k0(&Params::default()).status, Status::Pass);
    let c = crate::ktheory0::multiplication_complex(Poly::from_ints(&[-1, 1]));
    let r = cmd_k0_complex("P'", &c, &Params::default());
    assert_eq!(r.status, Status::Fail);
    assert!(r.details.iter().any(|d| d == "[P'] = 0 in K₀ ≅ ℤ"));
  }

  #[test]
  fn simplicial_default_and_json_is_stable() {
    let r = cmd_simplicial(2, 3, &Params::default()).unwrap();
    assert_eq!(r.status, Status::Pass);
    assert_eq!(r.to_json(), cmd_simplicial(2, 3, &Params::default()).unwrap().to_json());
    assert!(!r.to_json().contains("wall_time"));
  }

  #[test]
  fn status_combination() {
    assert_eq!(Status::Pass.combine(Status::Fail), Status::Fail);
    assert_eq!(Status::Fail.combine(Status::Inconclusive), Status::Inconclusive);
    assert_eq!(Status::Inconclusive.exit_code(), 2);
  }
}

//! Acceptance criteria AC-1 … AC-10, one line each. Runs without the libtest harness so the
//! lines are always printed; exits nonzero if any criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;

use cyclo_core::algebra::{catalog, simplicial_identity_report, GradedAlgebra};
use cyclo_core::harness::{
  cmd_hp, cmd_k0, cmd_k0_complex, cmd_simplicial, cmd_verify_a1, cmd_verify_ft, cmd_verify_graded, effective_w_max,
  ExperimentResult, Params, Status,
};
use cyclo_core::homology::periodic;
use cyclo_core::ktheory0::{bimodule_p, euler_class, homology, localization_acyclic, multiplication_complex};
use cyclo_core::mixed::{bar_mixed, de_rham_model, suspend, DeRham, Weight};
use cyclo_core::Poly;

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> { if ok { Ok(()) } else { Err(msg.into()) } }

fn passed(r: &ExperimentResult) -> Result<(), String> {
  ensure(r.status == Status::Pass, format!("{} [{}] is {:?}: {:?}", r.name, r.algebra.as_deref().unwrap_or("-"), r.status, r.details))
}

fn by_name(name: &str) -> GradedAlgebra { catalog::lookup(name).expect("catalog entry") }

fn ac1() -> Outcome {
  let params = Params::default();
  let mut names = Vec::new();
  for e in catalog::standard_library() {
    let m = bar_mixed(&e.algebra, params.n_max, effective_w_max(&e.algebra, params.w_max)).map_err(|e| e.to_string())?;
    m.check_relations().map_err(|err| format!("{}: {err}", e.name))?;
    names.push(e.name);
  }
  Ok(format!("b² = B² = bB + Bb = 0 at n_max 8 for {}", names.join(", ")))
}

fn ac2() -> Outcome {
  let m = bar_mixed(&catalog::ground_field(), 8, 0).map_err(|e| e.to_string())?;
  let hp = periodic(&m, 6).map_err(|e| e.to_string())?;
  let shifted = periodic(&suspend(&m), 6).map_err(|e| e.to_string())?;
  ensure(hp.dims() == (1, 0) && hp.stabilized, format!("HP(Q) = {:?}", hp.dims()))?;
  ensure(shifted.dims() == (0, 1), format!("HP(ΣQ) = {:?}", shifted.dims()))?;
  Ok("HP(Q) = (1, 0), HP(ΣQ) = (0, 1)".into())
}

fn ac3() -> Outcome {
  for w in 1..=6 {
    let m = de_rham_model(DeRham::Laurent, w);
    let hp = periodic(&m, 6).map_err(|e| e.to_string())?;
    // weight n: B(tⁿ) = n·tⁿ⁻¹dt, so only n = 0 leaves a class in each parity
    let oracle: Vec<(Weight, (usize, usize))> = (-(w as i64)..=w as i64).filter(|&n| n == 0).map(|n| (Weight(vec![n]), (1, 1))).collect();
    let got: Vec<(Weight, (usize, usize))> = hp.per_weight.clone().into_iter().collect();
    ensure(hp.dims() == (1, 1), format!("w_max {w}: {:?}", hp.dims()))?;
    ensure(got == oracle, format!("w_max {w}: per weight {got:?}"))?;
  }
  Ok("HP(Ω(k[t,t⁻¹])) = (1, 1) from weight 0 only, w_max 1..=6".into())
}

fn ac4() -> Outcome {
  let p = Params::default();
  let mut out = Vec::new();
  for name in ["Q", "kxk", "m2", "dual", "trunc3"] {
    let r = cmd_verify_ft(&by_name(name), &p).map_err(|e| e.to_string())?;
    passed(&r)?;
    out.push(format!("{name} {:?}", r.computed["HP(A[t,t^-1])"]));
  }
  Ok(format!("HP(A[t,t⁻¹]) = HP(A) ⊕ ΣHP(A): {}", out.join(", ")))
}

fn ac5() -> Outcome {
  let p = Params::default();
  let mut out = Vec::new();
  for name in ["Q", "kxk", "m2"] {
    let r = cmd_verify_a1(&by_name(name), &p).map_err(|e| e.to_string())?;
    passed(&r)?;
    let dims: Vec<[usize; 2]> = r.computed.values().copied().collect();
    ensure(dims.windows(2).all(|w| w[0] == w[1]), format!("{name}: {:?}", r.computed))?;
    out.push(format!("{name} {:?}", dims[0]));
  }
  Ok(format!("direct and tensor models of A[t] agree with HP(A): {}", out.join(", ")))
}

fn ac6() -> Outcome {
  let p = Params::default();
  let mut out = Vec::new();
  for name in ["dual-graded", "kt"] {
    let r = cmd_verify_graded(&by_name(name), &p).map_err(|e| e.to_string())?;
    passed(&r)?;
    let (rank, src, tgt) = (r.computed["rank HP(i)"], r.computed["HP(A0)"], r.computed["HP(A)"]);
    ensure(rank == src && rank == tgt, format!("{name}: rank {rank:?}, HP(A₀) {src:?}, HP(A) {tgt:?}"))?;
    out.push(format!("{name} rank {rank:?}"));
  }
  Ok(format!("HP(A₀) → HP(A) full-rank square: {}", out.join(", ")))
}

fn ac7() -> Outcome {
  let p = bimodule_p();
  ensure(euler_class(&p) == 0, "[P] ≠ 0")?;
  let h = homology(&p);
  ensure(h[0].free_rank == 0 && h[0].torsion == [Poly::t()] && h[1].is_zero(), format!("H(P) = {h:?}"))?;
  ensure(localization_acyclic(&p), "P[t⁻¹] not acyclic")?;
  passed(&cmd_k0(&Params::default()))?;
  let control = cmd_k0_complex("P'", &multiplication_complex(Poly::from_ints(&[-1, 1])), &Params::default());
  ensure(control.status == Status::Fail, "·(t−1) control did not fail")?;
  ensure(
    control.details.iter().any(|d| d == "FAILED: homology is the trivial module k in degree 0"),
    format!("control failed for another reason: {:?}", control.details),
  )?;
  Ok("[P] = 0, H(P) = k in degree 0, P[t⁻¹] acyclic; ·(t−1) fails the trivial-module check".into())
}

fn ac8() -> Outcome {
  let r = simplicial_identity_report(3, 4).map_err(|e| e.to_string())?;
  ensure(r.passed(), format!("{:?}", r.failures))?;
  passed(&cmd_simplicial(3, 4, &Params::default()).map_err(|e| e.to_string())?)?;
  Ok(format!("{} simplicial identities on Δ0 … Δ3, degree ≤ 4, including ev₀∘ι = ev₁∘ι = id", r.checked))
}

fn ac9() -> Outcome {
  let p = Params::default();
  let hp = |name: &str| cmd_hp(&by_name(name), &p).map_err(|e| e.to_string());
  let (q, m2, kxk) = (hp("Q")?, hp("m2")?, hp("kxk")?);
  ensure(q.stabilized && m2.stabilized && kxk.stabilized, "unstabilized")?;
  ensure(m2.dims() == q.dims(), format!("HP(M₂) = {:?}, HP(Q) = {:?}", m2.dims(), q.dims()))?;
  ensure(kxk.dims() == (2 * q.even_dim, 2 * q.odd_dim), format!("HP(k×k) = {:?}", kxk.dims()))?;
  Ok(format!("HP(M₂(k)) = HP(Q) = {:?}, HP(k×k) = 2·HP(Q) = {:?}", q.dims(), kxk.dims()))
}

fn ac10() -> Outcome {
  let p = Params::default();
  let runs: Vec<(&str, Box<dyn Fn() -> String>)> = vec![
    ("hp", Box::new(|| serde_json::to_string(&cmd_hp(&by_name("trunc3"), &p).unwrap()).unwrap())),
    ("ft", Box::new(|| cmd_verify_ft(&by_name("kxk"), &p).unwrap().to_json())),
    ("graded", Box::new(|| cmd_verify_graded(&by_name("kt"), &p).unwrap().to_json())),
    ("a1", Box::new(|| cmd_verify_a1(&by_name("dual"), &p).unwrap().to_json())),
    ("k0", Box::new(|| cmd_k0(&p).to_json())),
    ("simplicial", Box::new(|| cmd_simplicial(3, 4, &p).unwrap().to_json())),
  ];
  for (name, run) in &runs {
    let (a, b) = (run(), run());
    ensure(a == b, format!("{name} reports differ"))?;
  }
  Ok(format!("byte-identical reports on repeated runs of {}", runs.iter().map(|r| r.0).collect::<Vec<_>>().join(", ")))
}

fn main() -> ExitCode {
  let criteria: [(&str, fn() -> Outcome); 10] = [
    ("AC-1", ac1),
    ("AC-2", ac2),
    ("AC-3", ac3),
    ("AC-4", ac4),
    ("AC-5", ac5),
    ("AC-6", ac6),
    ("AC-7", ac7),
    ("AC-8", ac8),
    ("AC-9", ac9),
    ("AC-10", ac10),
  ];
  let mut failed = 0;
  for (id, check) in criteria {
    let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
    match outcome {
      Ok(msg) => println!("{id} PASS {msg}"),
      Err(msg) => {
        failed += 1;
        println!("{id} FAIL {msg}");
      }
    }
  }
  println!("acceptance: {} passed, {failed} failed", 10 - failed);
  if failed == 0 { ExitCode::SUCCESS } else { ExitCode::FAILURE }
}

//! `cyclo`: periodic cyclic homology of small algebras and the verification experiments.
//!
//! Exit codes: 0 pass, 1 fail, 2 inconclusive, 3 bad input.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use cyclo_core::algebra::{catalog, GradedAlgebra};
use cyclo_core::harness::{
  cmd_hp, cmd_k0, cmd_k0_complex, cmd_simplicial, cmd_verify_a1, cmd_verify_ft, cmd_verify_graded, experiment_list,
  load_algebra, ExperimentResult, HarnessError, Params,
};
use cyclo_core::ktheory0::multiplication_complex;
use cyclo_core::Poly;

#[derive(Parser)]
#[command(name = "cyclo", version, about = "Exact periodic cyclic homology of small graded algebras")]
struct Cli {
  /// List the available experiments and exit.
  #[arg(long)]
  list: bool,
  #[command(subcommand)]
  command: Option<Command>,
}

#[derive(Subcommand)]
enum Command {
  /// HP(A) = (even, odd) of an algebra file or built-in algebra.
  Hp {
    #[command(flatten)]
    input:  Input,
    #[command(flatten)]
    params: ParamArgs,
  },
  /// Run one verification experiment.
  Verify {
    experiment: Experiment,
    #[command(flatten)]
    input:      Input,
    #[command(flatten)]
    params:     ParamArgs,
    /// Top simplex for `simplicial`.
    #[arg(long, default_value_t = 3)]
    simplex:    usize,
    /// Polynomial degree bound for `simplicial`.
    #[arg(long, default_value_t = 4)]
    degree:     u32,
    /// Run `k0` on the complex ·(t−1) instead of P; expected to fail.
    #[arg(long)]
    perturbed:  bool,
  },
  /// List the built-in algebras.
  Catalog {
    #[arg(long)]
    json: bool,
  },
}

#[derive(Clone, Copy, ValueEnum)]
enum Experiment {
  Ft,
  Graded,
  A1,
  K0,
  Simplicial,
}

#[derive(Args)]
struct Input {
  /// Algebra presentation (TOML, or JSON with `--json-in` or a `.json` extension).
  file:    Option<PathBuf>,
  /// Use a built-in algebra instead of a file (see `cyclo catalog`).
  #[arg(long, conflicts_with = "file")]
  builtin: Option<String>,
  /// Read the file as JSON.
  #[arg(long)]
  json_in: bool,
}

#[derive(Args)]
struct ParamArgs {
  #[arg(long = "nmax", default_value_t = 8)]
  n_max:    usize,
  #[arg(long = "wmax", default_value_t = 6)]
  w_max:    u32,
  #[arg(long = "cols", default_value_t = 6)]
  columns:  usize,
  /// t-window of the direct A[t] model in `a1`.
  #[arg(long = "twindow", default_value_t = 1)]
  t_window: u32,
  /// Machine-readable output.
  #[arg(long)]
  json:     bool,
  /// Include wall time in the report.
  #[arg(long)]
  timing:   bool,
}

impl ParamArgs {
  fn params(&self) -> Params {
    Params { n_max: self.n_max, w_max: self.w_max, columns: self.columns, t_window: self.t_window, timing: self.timing }
  }
}

impl Input {
  fn algebra(&self) -> Result<GradedAlgebra, HarnessError> {
    match (&self.file, &self.builtin) {
      (_, Some(name)) => catalog::lookup(name).ok_or_else(|| HarnessError::UnknownBuiltin(name.clone())),
      (Some(path), None) => Ok(load_algebra(path, self.json_in)?),
      (None, None) => Err(HarnessError::UnknownBuiltin("(no file or --builtin given)".into())),
    }
  }
}

fn emit(r: &ExperimentResult, json: bool) -> ExitCode {
  if json {
    print!("{}", r.to_json());
  } else {
    print!("{}", r.to_text());
  }
  ExitCode::from(r.status.exit_code())
}

fn run(command: Command) -> Result<ExitCode, HarnessError> {
  match command {
    Command::Hp { input, params } => {
      let a = input.algebra()?;
      let r = cmd_hp(&a, &params.params())?;
      if params.json {
        let mut v = serde_json::to_value(&r).expect("serializable");
        v["algebra"] = a.name().into();
        println!("{}", serde_json::to_string_pretty(&v).expect("serializable"));
      } else {
        println!("HP({}) = (even {}, odd {})", a.name(), r.even_dim, r.odd_dim);
        let band = r.safe_band.map_or("exact".to_string(), |(lo, hi)| format!("safe band {lo}..={hi}"));
        println!("  stabilized: {}, {band}, columns {}", r.stabilized, r.columns);
        for (w, (e, o)) in &r.per_weight {
          println!("  weight {w}: ({e}, {o})");
        }
      }
      Ok(ExitCode::from(if r.stabilized { 0 } else { 2 }))
    }
    Command::Verify { experiment, input, params, simplex, degree, perturbed } => {
      let p = params.params();
      let r = match experiment {
        Experiment::Ft => cmd_verify_ft(&input.algebra()?, &p)?,
        Experiment::Graded => cmd_verify_graded(&input.algebra()?, &p)?,
        Experiment::A1 => cmd_verify_a1(&input.algebra()?, &p)?,
        Experiment::K0 if perturbed => cmd_k0_complex("P'", &multiplication_complex(Poly::from_ints(&[-1, 1])), &p),
        Experiment::K0 => cmd_k0(&p),
        Experiment::Simplicial => cmd_simplicial(simplex, degree, &p)?,
      };
      Ok(emit(&r, params.json))
    }
    Command::Catalog { json } => {
      let lib = catalog::standard_library();
      if json {
        let v: Vec<_> = lib
          .iter()
          .map(|e| serde_json::json!({"name": e.name, "dim": e.algebra.dim(), "description": e.description}))
          .collect();
        println!("{}", serde_json::to_string_pretty(&v).expect("serializable"));
      } else {
        for e in &lib {
          println!("{:<12} dim {:<3} {}", e.name, e.algebra.dim(), e.description);
        }
      }
      Ok(ExitCode::SUCCESS)
    }
  }
}

fn main() -> ExitCode {
  let cli = match Cli::try_parse() {
    Ok(c) => c,
    Err(e) => {
      let code = if e.use_stderr() { 3 } else { 0 };
      let _ = e.print();
      return ExitCode::from(code);
    }
  };
  if cli.list {
    for (name, what) in experiment_list() {
      println!("{name:<11} {what}");
    }
    return ExitCode::SUCCESS;
  }
  let Some(command) = cli.command else {
    eprintln!("no command given; see `cyclo --help`");
    return ExitCode::from(3);
  };
  match run(command) {
    Ok(code) => code,
    Err(e) => {
      eprintln!("error: {e}");
      ExitCode::from(e.exit_code())
    }
  }
}

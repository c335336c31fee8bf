//! The `cohere` command-line front end.
//!
//! ```text
//! cohere catalog
//! cohere realize --model su2 --j 1
//! cohere kernel --model heisenberg --trunc 8 --eval 0.3,0 0.5,0
//! cohere check --model su3 --p 1 --q 1 --suite homomorphism,degree --json
//! ```
//!
//! Exit codes: 0 when everything passes, 1 when a check fails, 2 on usage
//! or model errors.

mod report;
mod suite;

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;

pub use report::{CheckResult, KernelRecord, RealizationRecord, RunReport, Status};
pub use suite::{
    random_block_vector, random_group_element, random_point, run_checks, Check, SuiteConfig, COCYCLE_PAIRS,
    CONVERGENCE_FLOOR, DEFAULT_SEED, FLOW_POINTS, FLOW_STEP, SAMPLE_RADIUS,
};

use crate::algebra::{catalog_entries, load_model, CatalogParams, ModelSource, OrbitModel};
use crate::error::{Error, Result};
use crate::realize::{realize_all, SolverConfig};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "cohere",
    version,
    about = "Coherent-state realizations of Lie algebras by first-order differential operators"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List built-in models and their parameters.
    Catalog {
        /// Emit JSON
        #[arg(long)]
        json: bool,
    },
    /// Solve the realization table of every basis element.
    Realize {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        solver: SolverArgs,
        /// Emit JSON
        #[arg(long)]
        json: bool,
    },
    /// Print the reproducing kernel K(z, w̄), optionally evaluated.
    Kernel {
        #[command(flatten)]
        model: ModelArgs,
        /// z then w, as `re,im` pairs.
        #[arg(long, num_args = 1.., value_parser = parse_complex)]
        eval: Option<Vec<Complex64>>,
        /// Emit JSON
        #[arg(long)]
        json: bool,
    },
    /// Run a validation suite.
    Check {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        solver: SolverArgs,
        /// Comma-separated checks; all of them when omitted.
        #[arg(long, value_delimiter = ',')]
        suite: Option<Vec<Check>>,
        /// Quadrature node counts `RADIAL,ANGULAR`.
        #[arg(long, value_parser = parse_quad)]
        quad: Option<(usize, usize)>,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Overrides every check tolerance.
        #[arg(long = "check-tol")]
        check_tol: Option<f64>,
        /// Emit JSON
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args, Debug)]
struct ModelArgs {
    /// Catalog model name.
    #[arg(long, conflicts_with = "model_file", required_unless_present = "model_file")]
    model: Option<String>,
    /// JSON model file.
    #[arg(long)]
    model_file: Option<PathBuf>,
    /// Spin, e.g. `1`, `3/2` or `1.5`.
    #[arg(long, value_parser = parse_fraction)]
    j: Option<f64>,
    /// Bergman weight, e.g. `3/2`.
    #[arg(long, value_parser = parse_fraction)]
    k: Option<f64>,
    /// su3 highest weight, first label
    #[arg(long)]
    p: Option<u32>,
    /// su3 highest weight, second label
    #[arg(long)]
    q: Option<u32>,
    /// Basis truncation of infinite-dimensional models
    #[arg(long)]
    trunc: Option<usize>,
    /// Top basis levels excluded from checks
    #[arg(long)]
    margin: Option<usize>,
}

#[derive(Args, Debug)]
struct SolverArgs {
    /// Realization solve tolerance.
    #[arg(long)]
    tol: Option<f64>,
    /// Highest polynomial degree tried before giving up
    #[arg(long)]
    degree_cap: Option<u32>,
}

impl SolverArgs {
    fn config(&self) -> SolverConfig {
        let mut c = SolverConfig::default();
        if let Some(t) = self.tol {
            c.tol = t;
        }
        if let Some(d) = self.degree_cap {
            c.degree_cap = d;
        }
        c
    }
}

fn parse_fraction(s: &str) -> std::result::Result<f64, String> {
    let bad = || format!("expected a number or fraction, got `{s}`");
    match s.split_once('/') {
        Some((a, b)) => {
            let a: f64 = a.trim().parse().map_err(|_| bad())?;
            let b: f64 = b.trim().parse().map_err(|_| bad())?;
            if b == 0.0 {
                return Err(bad());
            }
            Ok(a / b)
        }
        None => s.trim().parse().map_err(|_| bad()),
    }
}

fn parse_complex(s: &str) -> std::result::Result<Complex64, String> {
    let bad = || format!("expected `re,im`, got `{s}`");
    let (re, im) = s.split_once(',').unwrap_or((s, "0"));
    Ok(Complex64::new(re.trim().parse().map_err(|_| bad())?, im.trim().parse().map_err(|_| bad())?))
}

fn parse_quad(s: &str) -> std::result::Result<(usize, usize), String> {
    let bad = || format!("expected `RADIAL,ANGULAR`, got `{s}`");
    let (r, a) = s.split_once(',').ok_or_else(bad)?;
    Ok((r.trim().parse().map_err(|_| bad())?, a.trim().parse().map_err(|_| bad())?))
}

fn load(args: &ModelArgs) -> Result<OrbitModel<f64>> {
    match (&args.model, &args.model_file) {
        (Some(name), _) => load_model(ModelSource::Catalog {
            name,
            params: CatalogParams {
                j: args.j,
                k: args.k,
                p: args.p,
                q: args.q,
                trunc: args.trunc,
                margin: args.margin,
            },
        }),
        (None, Some(path)) => load_model(ModelSource::File(path)),
        (None, None) => Err(Error::InvalidParameter("one of --model or --model-file is required".into())),
    }
}

/// Exit code and report of one invocation.
#[derive(Clone, Debug)]
pub struct RunOutcome {
    pub code: i32,
    pub report: Option<RunReport>,
}

/// Parses `argv` (program name first), runs the command and writes its
/// output to `out` and diagnostics to `err`.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> RunOutcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_PASS,
                _ => EXIT_USAGE,
            };
            let _ = if code == EXIT_PASS { write!(out, "{e}") } else { write!(err, "{e}") };
            return RunOutcome { code, report: None };
        }
    };
    match execute(cli.command, out) {
        Ok(outcome) => outcome,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            RunOutcome { code: EXIT_USAGE, report: None }
        }
    }
}

fn fmt_value(x: f64) -> String {
    format!("{x:.3e}")
}

fn params_text(params: &BTreeMap<String, f64>) -> String {
    params.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(", ")
}

fn execute(command: Command, out: &mut dyn Write) -> Result<RunOutcome> {
    match command {
        Command::Catalog { json } => {
            let entries = catalog_entries();
            if json {
                let doc: Vec<_> = entries
                    .iter()
                    .map(|e| serde_json::json!({"name": e.name, "params": e.params, "description": e.description}))
                    .collect();
                writeln!(out, "{}", serde_json::to_string_pretty(&doc)?)?;
            } else {
                for e in &entries {
                    writeln!(out, "{:<11} {}\n{:<11} {}", e.name, e.description, "", e.params)?;
                }
            }
            Ok(RunOutcome { code: EXIT_PASS, report: None })
        }
        Command::Realize { model, solver, json } => {
            let model = load(&model)?;
            let table = realize_all(&model, &solver.config());
            let mut report = RunReport::new(model.name(), model.params());
            report.realization = report::realization_records(&table);
            report.failures = table.failures.iter().map(|(i, e)| format!("{}: {e}", model.spec().label(*i))).collect();
            report.finish();
            if json {
                writeln!(out, "{}", report.to_json())?;
            } else {
                writeln!(out, "model {} ({})", model.name(), params_text(model.params()))?;
                for r in table.entries.values() {
                    writeln!(out, "{} : {}", r.label, r.op)?;
                }
                for f in &report.failures {
                    writeln!(out, "FAILED {f}")?;
                }
                writeln!(out, "max residual {}", fmt_value(table.max_residual()))?;
            }
            Ok(finish(report))
        }
        Command::Kernel { model, eval, json } => {
            let model = load(&model)?;
            let kernel = crate::orbit::kernel(&model);
            let value = match eval {
                Some(values) => {
                    let n = model.n();
                    if values.len() != 2 * n {
                        return Err(Error::DimensionMismatch { expected: 2 * n, found: values.len() });
                    }
                    let wbar: Vec<Complex64> = values[n..].iter().map(|w| w.conj()).collect();
                    Some(kernel.eval(&values[..n], &wbar)?)
                }
                None => None,
            };
            let mut report = RunReport::new(model.name(), model.params());
            report.kernel = Some(KernelRecord { polynomial: kernel.render(), value: value.map(|v| [v.re, v.im]) });
            report.finish();
            if json {
                writeln!(out, "{}", report.to_json())?;
            } else {
                writeln!(out, "K(z, w) = {}", kernel.render())?;
                if let Some(v) = value {
                    writeln!(out, "value {}", crate::scalar::Coeff::render(&v))?;
                }
            }
            Ok(finish(report))
        }
        Command::Check { model, solver, suite, quad, seed, check_tol, json } => {
            let model = load(&model)?;
            let checks = suite.unwrap_or_else(|| Check::ALL.to_vec());
            let table = checks.iter().any(|c| c.needs_table()).then(|| realize_all(&model, &solver.config()));
            let config = SuiteConfig { seed, quad: quad.unwrap_or(crate::analysis::DEFAULT_NODES), tol: check_tol };
            let mut report = RunReport::new(model.name(), model.params());
            if let Some(t) = &table {
                report.realization = report::realization_records(t);
                report.failures = t.failures.iter().map(|(i, e)| format!("{}: {e}", model.spec().label(*i))).collect();
            }
            report.checks = run_checks(&model, table.as_ref(), &checks, &config);
            report.finish();
            if json {
                writeln!(out, "{}", report.to_json())?;
            } else {
                writeln!(out, "model {} ({})", model.name(), params_text(model.params()))?;
                for c in &report.checks {
                    let nums = match (c.residual, c.tolerance) {
                        (Some(r), Some(t)) => format!("residual {} tol {}", fmt_value(r), fmt_value(t)),
                        _ => String::new(),
                    };
                    let note = c.note.as_deref().map(|n| format!("  [{n}]")).unwrap_or_default();
                    writeln!(out, "{:<7} {:<14} {nums}{note}", c.status.as_str().to_uppercase(), c.check)?;
                }
                writeln!(out, "status {}", report.status.as_str())?;
            }
            Ok(finish(report))
        }
    }
}

fn finish(report: RunReport) -> RunOutcome {
    let code = if report.status == Status::Pass { EXIT_PASS } else { EXIT_FAIL };
    RunOutcome { code, report: Some(report) }
}

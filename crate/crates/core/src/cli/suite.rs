use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::report::{CheckResult, Status};
use crate::algebra::{validate_representation, validate_structure, AlgebraElement, CMatrix, OrbitModel};
use crate::analysis::{
    adjoint_residual, converges, parseval_residual, parseval_sequence, quadrature_rule, reproducing_residual,
    QuadratureRule,
};
use crate::error::{Error, Result};
use crate::realize::{
    cocycle_residual, degree_report, flow_crosscheck_op, homomorphism_residual, intertwining_residual, RealizationTable,
};

type Model = OrbitModel<f64>;

pub const DEFAULT_SEED: u64 = 0x5eed;
pub const FLOW_POINTS: usize = 20;
pub const FLOW_STEP: f64 = 1e-4;
pub const COCYCLE_PAIRS: usize = 50;
pub const CONVERGENCE_FLOOR: f64 = 1e-10;
/// Chart samples stay inside the unit disk, so Bergman charts are covered.
pub const SAMPLE_RADIUS: f64 = 0.5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Check {
    Structure,
    Representation,
    Intertwining,
    Homomorphism,
    Flow,
    Cocycle,
    Degree,
    Parseval,
    Convergence,
    Reproducing,
    Adjoint,
}

impl Check {
    pub const ALL: [Check; 11] = [
        Check::Structure,
        Check::Representation,
        Check::Intertwining,
        Check::Homomorphism,
        Check::Flow,
        Check::Cocycle,
        Check::Degree,
        Check::Parseval,
        Check::Convergence,
        Check::Reproducing,
        Check::Adjoint,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::Structure => "structure",
            Check::Representation => "representation",
            Check::Intertwining => "intertwining",
            Check::Homomorphism => "homomorphism",
            Check::Flow => "flow",
            Check::Cocycle => "cocycle",
            Check::Degree => "degree",
            Check::Parseval => "parseval",
            Check::Convergence => "convergence",
            Check::Reproducing => "reproducing",
            Check::Adjoint => "adjoint",
        }
    }

    pub fn needs_table(self) -> bool {
        matches!(self, Check::Intertwining | Check::Homomorphism | Check::Flow | Check::Degree)
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Check {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Check::ALL.into_iter().find(|c| c.name() == s).ok_or_else(|| format!("unknown check `{s}`"))
    }
}

/// Settings shared by every check of a run.
#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub seed: u64,
    pub quad: (usize, usize),
    /// Overrides every check tolerance when set.
    pub tol: Option<f64>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self { seed: DEFAULT_SEED, quad: crate::analysis::DEFAULT_NODES, tol: None }
    }
}

struct Outcome {
    residual: f64,
    tolerance: f64,
    note: Option<String>,
}

impl Outcome {
    fn new(residual: f64, tolerance: f64) -> Self {
        Self { residual, tolerance, note: None }
    }
}

/// Random chart point with every coordinate in a disk of radius `r`.
pub fn random_point(rng: &mut impl Rng, n: usize, r: f64) -> Vec<Complex64> {
    (0..n)
        .map(|_| Complex64::from_polar(r * rng.gen::<f64>().sqrt(), std::f64::consts::TAU * rng.gen::<f64>()))
        .collect()
}

fn random_complex(rng: &mut impl Rng, scale: f64) -> Complex64 {
    Complex64::new(rng.gen_range(-scale..scale), rng.gen_range(-scale..scale))
}

/// `exp(Σ cᵢ dT(Xᵢ))` with complex coefficients of size ≤ `scale`.
pub fn random_group_element(model: &Model, rng: &mut impl Rng, scale: f64) -> Result<CMatrix<f64>> {
    let dim = model.spec().dim();
    let x = AlgebraElement::new((0..dim).map(|_| random_complex(rng, scale)).collect());
    model.group_element(&x, Complex64::new(1.0, 0.0))
}

/// Random vector supported on the interior block, unit max-norm scale.
pub fn random_block_vector(model: &Model, rng: &mut impl Rng) -> Vec<Complex64> {
    let block = model.rep().block_dim();
    (0..model.d()).map(|k| if k < block { random_complex(rng, 1.0) } else { Complex64::new(0.0, 0.0) }).collect()
}

fn quadrature_tol(model: &Model) -> f64 {
    if model.rep().truncated() {
        1e-6
    } else {
        1e-8
    }
}

/// Runs `checks` in order. `table` is required by the checks that read
/// solved operators.
pub fn run_checks(
    model: &Model,
    table: Option<&RealizationTable<f64>>,
    checks: &[Check],
    config: &SuiteConfig,
) -> Vec<CheckResult> {
    checks
        .iter()
        .map(|&check| {
            let outcome = match (check.needs_table(), table) {
                (true, None) => Err(Error::PartialTable("no realization table".into())),
                (_, t) => run_one(model, t, check, config),
            };
            let base = CheckResult {
                check: check.name().to_string(),
                model: model.name().to_string(),
                params: model.params().clone(),
                residual: None,
                tolerance: None,
                pass: false,
                status: Status::Fail,
                note: None,
            };
            match outcome {
                Ok(o) => {
                    let tolerance = config.tol.unwrap_or(o.tolerance);
                    let pass = o.residual <= tolerance;
                    CheckResult {
                        residual: Some(o.residual),
                        tolerance: Some(tolerance),
                        pass,
                        status: if pass { Status::Pass } else { Status::Fail },
                        note: o.note,
                        ..base
                    }
                }
                Err(e @ (Error::UnsupportedCheck(_) | Error::MissingAdjoint(_))) => {
                    CheckResult { status: Status::Skipped, note: Some(e.to_string()), ..base }
                }
                Err(e) => CheckResult { note: Some(e.to_string()), ..base },
            }
        })
        .collect()
}

fn run_one(
    model: &Model,
    table: Option<&RealizationTable<f64>>,
    check: Check,
    config: &SuiteConfig,
) -> Result<Outcome> {
    // per-check stream, so selecting a subset does not change the samples
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed ^ (check as u64 + 1).wrapping_mul(0x9e37_79b9_7f4a_7c15));
    let rule = |m: &Model| -> Result<QuadratureRule<f64>> { quadrature_rule(m, config.quad.0, config.quad.1) };
    match check {
        Check::Structure => {
            let r = validate_structure(model.spec(), 1e-10);
            Ok(Outcome::new(r.metrics.iter().map(|m| m.1).fold(0.0, f64::max), 1e-10))
        }
        Check::Representation => {
            let r = validate_representation(model, 1e-10)?;
            let mut o = Outcome::new(r.metric("block").unwrap_or(0.0), 1e-10);
            if model.rep().truncated() {
                o.note = Some(format!("global defect {:e}", r.metric("global").unwrap_or(0.0)));
            }
            Ok(o)
        }
        Check::Intertwining => {
            let table = table.expect("checked by caller");
            let mut worst = 0.0f64;
            for (&i, r) in &table.entries {
                let x = AlgebraElement::basis(model.spec().dim(), i);
                worst = worst.max(intertwining_residual(model, &x, &r.op)?);
            }
            incomplete(table)?;
            Ok(Outcome::new(worst, 1e-9))
        }
        Check::Homomorphism => Ok(Outcome::new(homomorphism_residual(model, table.expect("checked by caller"))?, 1e-9)),
        Check::Flow => {
            let table = table.expect("checked by caller");
            incomplete(table)?;
            let mut worst = 0.0f64;
            for _ in 0..FLOW_POINTS {
                let z = random_point(&mut rng, model.n(), SAMPLE_RADIUS);
                for (&i, r) in &table.entries {
                    let x = AlgebraElement::basis(model.spec().dim(), i);
                    worst = worst.max(flow_crosscheck_op(model, &x, &r.op, &z, FLOW_STEP)?);
                }
            }
            let mut o = Outcome::new(worst, 1e-5);
            o.note = Some(format!("{FLOW_POINTS} points, h = {FLOW_STEP:e}, P = d/dt J, Q = d/dt z"));
            Ok(o)
        }
        Check::Cocycle => {
            let mut worst = 0.0f64;
            for _ in 0..COCYCLE_PAIRS {
                let g1 = random_group_element(model, &mut rng, 0.1)?;
                let g2 = random_group_element(model, &mut rng, 0.1)?;
                let z = random_point(&mut rng, model.n(), SAMPLE_RADIUS);
                worst = worst.max(cocycle_residual(model, &g1, &g2, &z)?);
            }
            Ok(Outcome::new(worst, 1e-8))
        }
        Check::Degree => {
            let report = degree_report(table.expect("checked by caller"))?;
            let bound =
                model.degree_bound().ok_or_else(|| Error::UnsupportedCheck("model declares no degree bound".into()))?;
            let global = report.global();
            let mut o = Outcome::new(if bound.holds(global) { 0.0 } else { 1.0 }, 0.0);
            o.note =
                Some(format!("global max degree {global} (P {}, Q {}), expected {bound}", report.max_p, report.max_q));
            Ok(o)
        }
        Check::Parseval => Ok(Outcome::new(parseval_residual(model, &rule(model)?)?, quadrature_tol(model))),
        Check::Convergence => {
            let nodes = config.quad.0.min(config.quad.1).max(2);
            let seq = parseval_sequence(model, nodes / 2, nodes * 2)?;
            let ok = converges(&seq, CONVERGENCE_FLOOR);
            let mut o = Outcome::new(if ok { 0.0 } else { 1.0 }, 0.0);
            o.note = Some(seq.iter().map(|(n, r)| format!("{n}: {r:.3e}")).collect::<Vec<_>>().join(", "));
            Ok(o)
        }
        Check::Reproducing => {
            let rule = rule(model)?;
            let psi = random_block_vector(model, &mut rng);
            let w = random_point(&mut rng, model.n(), SAMPLE_RADIUS);
            Ok(Outcome::new(reproducing_residual(model, &rule, &psi, &w)?, quadrature_tol(model)))
        }
        Check::Adjoint => {
            let rule = rule(model)?;
            let mut worst = 0.0f64;
            for i in 0..model.spec().dim() {
                let x = AlgebraElement::basis(model.spec().dim(), i);
                let f = random_block_vector(model, &mut rng);
                let g = random_block_vector(model, &mut rng);
                worst = worst.max(adjoint_residual(model, &rule, &x, &f, &g)?);
            }
            Ok(Outcome::new(worst, 1e-7))
        }
    }
}

fn incomplete(table: &RealizationTable<f64>) -> Result<()> {
    if table.is_complete() {
        Ok(())
    } else {
        Err(Error::PartialTable(table.failures.keys().map(|k| k.to_string()).collect::<Vec<_>>().join(", ")))
    }
}

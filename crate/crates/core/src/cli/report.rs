use std::collections::BTreeMap;

use serde::Serialize;

use crate::realize::RealizationTable;
use crate::scalar::Real;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RealizationRecord {
    pub label: String,
    #[serde(rename = "P")]
    pub p: String,
    #[serde(rename = "Q")]
    pub q: Vec<String>,
    pub residual: f64,
    #[serde(rename = "degP")]
    pub deg_p: Option<u32>,
    #[serde(rename = "degQ")]
    pub deg_q: Option<u32>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckResult {
    pub check: String,
    pub model: String,
    pub params: BTreeMap<String, f64>,
    pub residual: Option<f64>,
    pub tolerance: Option<f64>,
    pub pass: bool,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct KernelRecord {
    pub polynomial: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<[f64; 2]>,
}

/// Machine-readable result of one invocation.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunReport {
    pub model: String,
    pub params: BTreeMap<String, f64>,
    pub realization: Vec<RealizationRecord>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub failures: Vec<String>,
    pub checks: Vec<CheckResult>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kernel: Option<KernelRecord>,
    pub status: Status,
}

impl RunReport {
    pub fn new(model: &str, params: &BTreeMap<String, f64>) -> Self {
        Self {
            model: model.to_string(),
            params: params.clone(),
            realization: Vec::new(),
            failures: Vec::new(),
            checks: Vec::new(),
            kernel: None,
            status: Status::Pass,
        }
    }

    /// Pass iff nothing failed; skipped checks never count as passing but
    /// do not fail the run either.
    pub fn finish(&mut self) {
        let failed = !self.failures.is_empty() || self.checks.iter().any(|c| c.status == Status::Fail);
        self.status = if failed { Status::Fail } else { Status::Pass };
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

pub fn realization_records<R: Real>(table: &RealizationTable<R>) -> Vec<RealizationRecord> {
    table
        .entries
        .values()
        .map(|r| RealizationRecord {
            label: r.label.clone(),
            p: r.op.p().render(),
            q: r.op.q().iter().map(|q| q.render()).collect(),
            residual: r.residual,
            deg_p: r.op.degree_p(),
            deg_q: r.op.degree_q(),
        })
        .collect()
}

//! Machine-readable output records.
//!
//! Every big integer is a decimal string. Small counters (indices, period
//! lengths, strides) are JSON numbers. See `docs/output-schema.md`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub schema_version: u32,
    pub command: String,
    pub inputs: BTreeMap<String, String>,
    pub result: Payload,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Payload {
    Expansion(ExpansionOut),
    Pell(PellOut),
    PellGeneral(PellGeneralOut),
    Ab(AbOut),
    Report(ReportOut),
    Error(ErrorOut),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Pair {
    pub x: String,
    pub y: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientRow {
    pub n: u64,
    pub a: String,
    pub u: String,
    pub v: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConvergentRow {
    pub n: u64,
    pub p: String,
    pub q: String,
    /// `p² − d·q²`
    pub norm: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpansionOut {
    pub d: String,
    pub a0: String,
    pub period_length: u64,
    pub period: Vec<String>,
    pub quotients: Vec<QuotientRow>,
    pub convergents: Vec<ConvergentRow>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PellOut {
    pub d: String,
    pub period_length: u64,
    /// Convergent index holding the fundamental solution.
    pub fundamental_index: u64,
    pub fundamental: Pair,
    pub solutions: Vec<Pair>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BranchOut {
    pub start: u64,
    pub stride: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PellGeneralOut {
    pub d: String,
    pub m: String,
    pub period_length: u64,
    pub e_m: Vec<u64>,
    pub e_neg_m: Vec<u64>,
    pub branches: Vec<BranchOut>,
    pub trivial: Option<Pair>,
    /// Odd modulus proving there are no solutions when `m² ≥ d`.
    pub obstruction: Option<String>,
    pub solvable: bool,
    pub solutions: Vec<Pair>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MidpointOut {
    pub n: u64,
    pub u: String,
    pub v: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbOut {
    pub a: String,
    pub b: String,
    pub equation: String,
    /// `Solvable`, `NoSolution` or `PellCase`.
    pub verdict: String,
    pub reason: Option<String>,
    pub period_length: Option<u64>,
    pub midpoint: Option<MidpointOut>,
    pub branch: Option<BranchOut>,
    pub solutions: Vec<Pair>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportOut {
    pub equation: String,
    pub bound: u64,
    pub iterations: u64,
    pub hits: Vec<Pair>,
    /// Present for `x² − d·y² = m` searches.
    pub coprime_nontrivial: Option<Vec<Pair>>,
    /// Present for `a·xⁿ − b·yⁿ = 1` searches.
    pub off_axis: Option<Vec<Pair>>,
    /// Present for Legendre searches: hits that are not convergents.
    pub anomalies: Option<Vec<Pair>>,
    pub note: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorOut {
    pub error: String,
    pub message: String,
}

impl OutputRecord {
    pub fn new(command: &str, inputs: &[(&str, String)], result: Payload) -> Self {
        OutputRecord {
            schema_version: SCHEMA_VERSION,
            command: command.to_string(),
            inputs: inputs
                .iter()
                .map(|(k, v)| (k.to_string(), v.clone()))
                .collect(),
            result,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("records serialize");
        s.push('\n');
        s
    }
}

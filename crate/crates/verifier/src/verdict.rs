use std::collections::BTreeSet;

use ramsey_core::session::TraceEntry;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exhaustive,
    Stochastic,
    Oracle,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Safe,
    Violated,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Params {
    pub game: String,
    pub n: u8,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub depth: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub budget: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub playouts: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub disabled_branch: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub prefix: Vec<String>,
}

/// A failed invariant or a finding, with the line of play that produced it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub invariant: String,
    pub trace: Vec<TraceEntry>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Stats {
    pub states_explored: u64,
    pub transposition_hits: u64,
    pub stop_lines: u64,
    pub end_case_entries: u64,
    pub ledger_checks: u64,
    pub p2_wins: u64,
    pub max_completion_moves: usize,
    /// Positions where the three-of-five alternative was confirmed.
    #[serde(default)]
    pub alt_finish_positions: u64,
    pub branches: BTreeSet<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub mode: Mode,
    pub params: Params,
    pub stats: Stats,
    pub violation_count: u64,
    pub violations: Vec<Report>,
    pub finding_count: u64,
    pub findings: Vec<Report>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace_hash: Option<String>,
    pub result: Outcome,
}

const KEEP: usize = 20;

impl Verdict {
    pub fn new(mode: Mode, params: Params) -> Verdict {
        Verdict {
            mode,
            params,
            stats: Stats::default(),
            violation_count: 0,
            violations: Vec::new(),
            finding_count: 0,
            findings: Vec::new(),
            trace_hash: None,
            result: Outcome::Safe,
        }
    }

    pub fn violation(&mut self, invariant: impl Into<String>, trace: &[TraceEntry]) {
        self.violation_count += 1;
        self.result = Outcome::Violated;
        if self.violations.len() < KEEP {
            self.violations.push(Report { invariant: invariant.into(), trace: trace.to_vec() });
        }
    }

    pub fn finding(&mut self, invariant: impl Into<String>, trace: &[TraceEntry]) {
        self.finding_count += 1;
        if self.findings.len() < KEEP {
            self.findings.push(Report { invariant: invariant.into(), trace: trace.to_vec() });
        }
    }

    pub fn is_safe(&self) -> bool {
        self.result == Outcome::Safe
    }

    /// Safe and free of findings.
    pub fn is_clean(&self) -> bool {
        self.is_safe() && self.finding_count == 0
    }
}

//! Mutation sensitivity: with any one case-tree branch removed, a short
//! exhaustive search from the branch's parent must report a violation.

use ramsey_core::board::BoardKind;
use ramsey_core::strategy::tree::BRANCHES;
use ramsey_core::strategy::StrategyConfig;
use serde::{Deserialize, Serialize};

use crate::exhaustive::{exhaustive_verify, ExhaustiveOptions};

pub const MUTATION_N: u8 = 14;

/// Forced P1 line reaching the parent of `branch`, and the search depth
/// needed from there.
pub fn plan(branch: &str) -> Option<(Vec<&'static str>, usize)> {
    const B1: [&str; 3] = ["k", "f", "AE"];
    const B11: [&str; 4] = ["k", "f", "AE", "BC"];
    const B11A: [&str; 6] = ["k", "f", "AE", "BC", "DF", "CF"];
    let p = |v: &[&'static str], d: usize| Some((v.to_vec(), d));
    match branch {
        "open" | "root" => p(&[], 1),
        "A" | "B" => p(&["k"], 1),
        "A.1" | "A.2" => p(&["k"], 2),
        "A.1.1" | "A.1.2" => p(&["k", "k", "AC", "k"], 1),
        "A.2.1" | "A.2.2" => p(&["k", "k", "k", "k"], 1),
        "B.1" | "B.2" => p(&["k"], 2),
        "B.1.1" | "B.1.2" => p(&B1, 1),
        "B.1.1.1" | "B.1.1.2" => p(&B11, 1),
        "B.1.1.1.1" | "B.1.1.1.2" | "B.1.1.1.2.2" => p(&["k", "f", "AE", "BC", "EF"], 1),
        "B.1.1.1.1.1" | "B.1.1.1.1.2" => p(&["k", "f", "AE", "BC", "EF", "BD"], 1),
        "B.1.1.1.2.1" => p(&["k", "f", "AE", "BC", "EF"], 1),
        "B.1.1.1.2.1.1" | "B.1.1.1.2.1.2" => p(&["k", "f", "AE", "BC", "EF", "AD"], 1),
        "B.1.1.2.1" | "B.1.1.2.2" | "B.1.1.2.1.2" => p(&["k", "f", "AE", "BC", "k"], 1),
        "B.1.1.2.1.1" => p(&["k", "f", "AE", "BC", "AF"], 1),
        "B.1.1.2.1.1.1" | "B.1.1.2.1.1.2" => p(&["k", "f", "AE", "BC", "AF", "CF"], 1),
        "B.1.1.2.1.2.1" | "B.1.1.2.1.2.2" => p(&B11A, 1),
        "B.1.1.2.1.2.1.2" => p(&["k", "f", "AE", "BC", "DF", "CF", "BD"], 1),
        "B.1.1.2.1.2.1.1" => p(&["k", "f", "AE", "BC", "DF", "CF", "BD", "BI", "BJ"], 1),
        "B.1.2.1" | "B.1.2.2" | "B.1.2.1.2" => p(&["k", "f", "AE", "k"], 1),
        "B.1.2.1.1" => p(&["k", "f", "AE", "DE"], 1),
        "B.1.2.1.1.1" | "B.1.2.1.1.2" => p(&["k", "f", "AE", "DE", "AC", "k"], 1),
        "B.1.2.1.2.1" | "B.1.2.1.2.2" => p(&["k", "f", "AE", "k", "AC"], 1),
        "B.1.2.1.2.1.1" | "B.1.2.1.2.1.2" => p(&["k", "f", "AE", "k", "AC", "BD"], 1),
        "B.2.1" | "B.2.2" => p(&["k", "f", "k", "k"], 1),
        _ => None,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MutationResult {
    pub branch: String,
    pub prefix: Vec<String>,
    pub depth: usize,
    pub detected: bool,
    /// The same search without the mutation is safe.
    pub baseline_safe: bool,
    pub states: u64,
    pub note: Option<String>,
}

pub fn mutation_check(branch: &str) -> MutationResult {
    let Some((prefix, depth)) = plan(branch) else {
        return MutationResult {
            branch: branch.into(),
            prefix: vec![],
            depth: 0,
            detected: false,
            baseline_safe: false,
            states: 0,
            note: Some("no plan for branch".into()),
        };
    };
    let mut opts = ExhaustiveOptions::new(BoardKind::TwoCliques, MUTATION_N, depth);
    opts.prefix = prefix.iter().map(|s| s.to_string()).collect();
    opts.config = StrategyConfig { disabled_branch: Some(branch.into()) };
    let v = exhaustive_verify(&opts);
    opts.config = StrategyConfig::default();
    let baseline_safe = exhaustive_verify(&opts).is_safe();
    let hit = format!("branch {branch} is disabled");
    let detected = v.violations.iter().any(|r| r.invariant.contains(&hit));
    MutationResult {
        branch: branch.into(),
        prefix: opts.prefix,
        depth,
        detected,
        baseline_safe,
        states: v.stats.states_explored,
        note: v.violations.first().filter(|_| !detected).map(|r| r.invariant.clone()),
    }
}

pub fn mutation_all() -> Vec<MutationResult> {
    BRANCHES.iter().map(|b| mutation_check(b)).collect()
}

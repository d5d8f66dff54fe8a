//! P2's drawing strategy on two disjoint cliques: the case tree, the
//! three-stage endgame and the two special end-cases.
//!
//! The automaton keeps every vertex it cares about in a role map, so that a
//! position together with its role colouring determines all future replies.

mod endgame;
pub mod tree;

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::board::{Action, BoardError, Edge, GameState, Player, VertexId};
use crate::lemma::LostEdgeLedger;

pub use endgame::{EndStage, SpecialStage};
pub use tree::{Step, BRANCHES};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum StrategyError {
    #[error(transparent)]
    Board(#[from] BoardError),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
    #[error("branch {0} is disabled")]
    BranchDisabled(String),
    #[error("strategy precondition: {0}")]
    Precondition(String),
}

impl StrategyError {
    pub fn is_board_too_small(&self) -> bool {
        matches!(self, StrategyError::Board(BoardError::BoardTooSmall { .. }))
    }
}

/// A predicate evaluated while playing, kept for the verifier and traces.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub kind: String,
    pub case: String,
    pub ok: bool,
    pub detail: serde_json::Value,
}

/// One P2 move with its annotations.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Reply {
    pub edge: Edge,
    pub case: String,
    pub ledger: Option<LostEdgeLedger>,
    pub checks: Vec<CheckRecord>,
    /// P2 owns a target copy after this move.
    pub finished: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stage: Option<u8>,
}

/// Anything that can answer P1 on P2's behalf.
pub trait Responder {
    fn respond(&mut self, state: &GameState) -> Result<Reply, StrategyError>;
    /// Role colouring of the vertices the responder tracks.
    fn role_colors(&self) -> Vec<(VertexId, u32)>;
    /// Everything besides roles that influences future replies.
    fn phase_key(&self) -> String;
    /// Clique copy that P1 opened in, when known.
    fn first_copy(&self) -> Option<u8> {
        None
    }
    fn potential_base(&self) -> Option<[VertexId; 2]> {
        None
    }
    /// Role names currently bound, for annotations.
    fn labels(&self) -> Vec<(String, VertexId)> {
        Vec::new()
    }
    /// Roles of the base chosen by the last end-case.
    fn base_roles(&self) -> Option<[String; 2]> {
        None
    }
    fn finished(&self) -> bool;
    /// Upper bound on the P2 moves needed to finish if P1 stops now.
    fn completion_bound(&self, state: &GameState) -> usize;
    fn clone_box(&self) -> Box<dyn Responder + Send>;
}

impl Clone for Box<dyn Responder + Send> {
    fn clone(&self) -> Self {
        self.clone_box()
    }
}

/// Longest scripted P2 line from the opening to a finished copy when P1
/// stops inside the case tree.
const SCRIPT_BOUND: usize = 12;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct StrategyConfig {
    /// Case label whose branch is removed, for mutation testing.
    pub disabled_branch: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Phase {
    Open,
    Root,
    Tree(Step),
    /// The end-case is complete; the endgame starts at this turn.
    EndEntry,
    Endgame(EndStage),
    Special1(SpecialStage),
    Special2(SpecialStage),
    Done,
}

/// P1's action since P2's previous move.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum P1Input {
    Claim(Edge),
    Stop,
    /// P1 stopped earlier; P2 is moving alone.
    Passed,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StrategyState {
    pub phase: Phase,
    /// Case label of the deepest node reached.
    pub path: String,
    pub k1: u8,
    pub labels: BTreeMap<String, VertexId>,
    pub base_roles: Option<[String; 2]>,
    pub specified: BTreeSet<Edge>,
    pub ledgers: BTreeMap<String, Vec<Edge>>,
    pub conceded: BTreeSet<Edge>,
    pub granted: BTreeSet<Edge>,
    /// Granted edges that P1 never actually took.
    pub virtual_granted: u32,
    pub lost: Option<LostEdgeLedger>,
    pub star1: u32,
    pub star2: u32,
    pub mirror: u32,
    pub lstar: u32,
    pub seen: usize,
    pub config: StrategyConfig,
}

impl StrategyState {
    pub fn new(config: StrategyConfig) -> StrategyState {
        StrategyState {
            phase: Phase::Open,
            path: String::new(),
            k1: 1,
            labels: BTreeMap::new(),
            base_roles: None,
            specified: BTreeSet::new(),
            ledgers: BTreeMap::new(),
            conceded: BTreeSet::new(),
            granted: BTreeSet::new(),
            virtual_granted: 0,
            lost: None,
            star1: 0,
            star2: 0,
            mirror: 0,
            lstar: 0,
            seen: 0,
            config,
        }
    }

    pub fn k2(&self) -> u8 {
        3 - self.k1
    }

    /// P1 edges not pinned down by a positive probe, excluding the first.
    pub fn additional_count(&self, state: &GameState) -> usize {
        let p1 = state.edge_count(Player::P1);
        p1.saturating_sub(1 + self.specified.len())
    }

    pub fn label(&self, role: &str) -> Option<VertexId> {
        self.labels.get(role).copied()
    }

    fn input(&self, state: &GameState) -> Result<P1Input, StrategyError> {
        let new = &state.history()[self.seen.min(state.history().len())..];
        match new {
            [] if state.p1_stopped() => Ok(P1Input::Passed),
            [Action::Claim { player: Player::P1, edge }] => Ok(P1Input::Claim(*edge)),
            [Action::Stop] => Ok(P1Input::Stop),
            _ => Err(StrategyError::Precondition(format!(
                "expected exactly one P1 action since ply {}, found {}",
                self.seen,
                new.len()
            ))),
        }
    }

    /// Role colours used by canonical keys: a stable index per role name.
    pub fn colors(&self) -> Vec<(VertexId, u32)> {
        let mut by_vertex: BTreeMap<VertexId, u32> = BTreeMap::new();
        for (name, &v) in &self.labels {
            let c = role_color(name);
            let e = by_vertex.entry(v).or_insert(0);
            *e = e.wrapping_mul(257).wrapping_add(c);
        }
        by_vertex.into_iter().collect()
    }
}

fn role_color(name: &str) -> u32 {
    const FIXED: [&str; 18] = [
        "A", "B", "C", "D", "E", "F", "I", "J", "K", "A0", "A1", "B1", "B2", "C0", "C1", "D1", "X", "Y",
    ];
    if let Some(i) = FIXED.iter().position(|&f| f == name) {
        return i as u32 + 1;
    }
    let split = name.find(|c: char| c.is_ascii_digit()).unwrap_or(name.len());
    let (prefix, idx) = name.split_at(split);
    let p = prefix.bytes().fold(0u32, |h, b| h * 31 + b as u32) % 97;
    100 + p * 1000 + idx.parse::<u32>().unwrap_or(0)
}

/// The graph-game strategy as a [`Responder`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GraphStrategy {
    pub state: StrategyState,
}

impl GraphStrategy {
    pub fn new(config: StrategyConfig) -> GraphStrategy {
        GraphStrategy { state: StrategyState::new(config) }
    }
}

impl Responder for GraphStrategy {
    fn respond(&mut self, state: &GameState) -> Result<Reply, StrategyError> {
        if state.to_move() != Player::P2 {
            return Err(StrategyError::Precondition("not P2's turn".into()));
        }
        if state.history().is_empty() {
            return Err(StrategyError::Precondition("no move played yet".into()));
        }
        let input = self.state.input(state)?;
        let mut turn = Turn { st: state, s: &mut self.state, input, checks: Vec::new(), ledger: None };
        let (edge, case) = turn.dispatch()?;
        let (checks, ledger) = (turn.checks, turn.ledger);
        if !state.is_unclaimed(&edge) {
            return Err(StrategyError::Invariant(format!("strategy chose claimed edge {edge}")));
        }
        self.state.seen = state.history().len() + 1;
        let finished = self.state.phase == Phase::Done;
        Ok(Reply { edge, case, ledger, checks, finished, stage: None })
    }

    fn role_colors(&self) -> Vec<(VertexId, u32)> {
        self.state.colors()
    }

    fn phase_key(&self) -> String {
        let s = &self.state;
        format!("{:?}|{}|{:?}|{}", s.phase, s.path, s.base_roles, s.virtual_granted)
    }

    fn first_copy(&self) -> Option<u8> {
        (self.state.phase != Phase::Open).then_some(self.state.k1)
    }

    fn potential_base(&self) -> Option<[VertexId; 2]> {
        Some([self.state.label("A0")?, self.state.label("A1")?])
    }

    fn labels(&self) -> Vec<(String, VertexId)> {
        self.state.labels.iter().map(|(k, &v)| (k.clone(), v)).collect()
    }

    fn base_roles(&self) -> Option<[String; 2]> {
        self.state.base_roles.clone()
    }

    fn finished(&self) -> bool {
        self.state.phase == Phase::Done
    }

    fn completion_bound(&self, state: &GameState) -> usize {
        match &self.state.phase {
            Phase::Open | Phase::Root | Phase::Tree(_) => {
                SCRIPT_BOUND.saturating_sub(state.edge_count(Player::P2))
            }
            Phase::EndEntry => 4,
            Phase::Endgame(EndStage::Star1) => 3,
            Phase::Endgame(EndStage::Star2) => 1,
            Phase::Endgame(_) => 2,
            Phase::Special1(SpecialStage::Entry) => 3,
            Phase::Special1(SpecialStage::AfterEj) | Phase::Special2(SpecialStage::Entry) => 2,
            Phase::Special1(_) | Phase::Special2(_) => 1,
            Phase::Done => 0,
        }
    }

    fn clone_box(&self) -> Box<dyn Responder + Send> {
        Box::new(self.clone())
    }
}

/// Working context for one P2 turn.
pub(crate) struct Turn<'a> {
    pub st: &'a GameState,
    pub s: &'a mut StrategyState,
    pub input: P1Input,
    pub checks: Vec<CheckRecord>,
    pub ledger: Option<LostEdgeLedger>,
}

impl Turn<'_> {
    fn dispatch(&mut self) -> Result<(Edge, String), StrategyError> {
        match self.s.phase.clone() {
            Phase::Open => self.open(),
            Phase::Root => self.root(),
            Phase::Tree(step) => self.tree(step),
            Phase::EndEntry => self.end_entry(),
            Phase::Endgame(stage) => self.endgame(stage),
            Phase::Special1(stage) => self.special1(stage),
            Phase::Special2(stage) => self.special2(stage),
            Phase::Done => Err(StrategyError::Precondition("game already finished".into())),
        }
    }

    pub fn v(&self, role: &str) -> Result<VertexId, StrategyError> {
        self.s
            .label(role)
            .ok_or_else(|| StrategyError::Invariant(format!("role {role} unbound")))
    }

    pub fn e(&self, r1: &str, r2: &str) -> Result<Edge, StrategyError> {
        Ok(Edge::pair(self.v(r1)?, self.v(r2)?)?)
    }

    /// P1 owns the edge, counting granted and ignoring conceded edges.
    pub fn p1_has(&self, r1: &str, r2: &str) -> Result<bool, StrategyError> {
        let e = self.e(r1, r2)?;
        Ok(self.s.granted.contains(&e) || self.st.owned_by(&e, Player::P1))
    }

    /// Probe that also records a positive answer as a specified edge.
    pub fn probe(&mut self, r1: &str, r2: &str) -> Result<bool, StrategyError> {
        let has = self.p1_has(r1, r2)?;
        if has {
            let e = self.e(r1, r2)?;
            self.s.specified.insert(e);
        }
        Ok(has)
    }

    pub fn unclaimed(&self, r1: &str, r2: &str) -> Result<bool, StrategyError> {
        Ok(self.st.is_unclaimed(&self.e(r1, r2)?))
    }

    /// The P1 edge played this turn, if any.
    pub fn last_p1_edge(&self) -> Option<Edge> {
        match self.input {
            P1Input::Claim(e) => Some(e),
            _ => None,
        }
    }

    pub fn last_is(&self, r1: &str, r2: &str) -> Result<bool, StrategyError> {
        Ok(self.last_p1_edge() == Some(self.e(r1, r2)?))
    }

    /// Binds `role` to the lowest free vertex of `copy`.
    pub fn fresh(&mut self, role: &str, copy: u8) -> Result<VertexId, StrategyError> {
        let v = self.st.lowest_free_vertex(copy, &[])?;
        self.s.labels.insert(role.to_string(), v);
        Ok(v)
    }

    pub fn bind(&mut self, role: &str, v: VertexId) {
        self.s.labels.insert(role.to_string(), v);
    }

    pub fn swap(&mut self, r1: &str, r2: &str) -> Result<(), StrategyError> {
        let (a, b) = (self.v(r1)?, self.v(r2)?);
        self.bind(r1, b);
        self.bind(r2, a);
        Ok(())
    }

    /// The edge P2 claims now; it must be unclaimed.
    pub fn take(&self, r1: &str, r2: &str) -> Result<Edge, StrategyError> {
        let e = self.e(r1, r2)?;
        if !self.st.is_unclaimed(&e) {
            return Err(StrategyError::Invariant(format!("{r1}{r2} = {e} is already claimed")));
        }
        Ok(e)
    }

    /// Moves to `label`, failing if that branch is disabled.
    pub fn enter(&mut self, label: &str) -> Result<(), StrategyError> {
        if self.s.config.disabled_branch.as_deref() == Some(label) {
            return Err(StrategyError::BranchDisabled(label.to_string()));
        }
        self.s.path = label.to_string();
        Ok(())
    }

    pub fn check(&mut self, kind: &str, ok: bool, detail: serde_json::Value) {
        self.checks.push(CheckRecord { kind: kind.to_string(), case: self.s.path.clone(), ok, detail });
    }

    /// Lost-edge ledger at a marked split-case, on the second copy.
    pub fn record_ledger(&mut self, l: u32) {
        let mut plane = self.st.plane(self.s.k2());
        for e in &self.s.conceded {
            if let Edge::Graph { a, b, .. } = *e {
                plane.unclaim(a, b);
            }
        }
        for e in &self.s.granted {
            if let Edge::Graph { a, b, .. } = *e {
                plane.claim(a, b, Player::P1);
            }
        }
        let mut ledger = LostEdgeLedger::at(self.st, l);
        ledger.k += self.s.virtual_granted;
        let bound = ledger.bound(&plane);
        let ok = ledger.holds(&plane);
        self.check(
            "ledger",
            ok,
            serde_json::json!({ "k": ledger.k, "l": l, "bound": bound }),
        );
        self.s.lost = Some(ledger);
        self.ledger = Some(ledger);
    }
}

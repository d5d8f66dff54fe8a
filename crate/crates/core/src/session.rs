//! A game between a P1 input source and a [`Responder`], with its trace.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::board::{Action, BoardError, BoardKind, Edge, GameState, Player, VertexId};
use crate::hyper::HyperStrategy;
use crate::lemma::LostEdgeLedger;
use crate::patterns::completes_copy;
use crate::strategy::{CheckRecord, GraphStrategy, Reply, Responder, StrategyConfig, StrategyError};

#[derive(Debug, Clone, Error, PartialEq)]
pub enum SessionError {
    #[error(transparent)]
    Board(#[from] BoardError),
    #[error(transparent)]
    Strategy(#[from] StrategyError),
    #[error("game is over")]
    GameOver,
    #[error("trace line {line}: {msg}")]
    Trace { line: usize, msg: String },
}

/// One line of a trace file.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TraceEntry {
    pub ply: usize,
    pub player: Player,
    /// Edge text encoding, or `stop`.
    pub edge: String,
    pub case: Option<String>,
    pub ledger: Option<LostEdgeLedger>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub checks: Vec<CheckRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stage: Option<u8>,
}

impl TraceEntry {
    pub fn action(&self) -> Result<Action, BoardError> {
        if self.edge == "stop" {
            return Ok(Action::Stop);
        }
        Ok(Action::Claim { player: self.player, edge: Edge::from_str(&self.edge)? })
    }
}

pub fn trace_to_jsonl(trace: &[TraceEntry]) -> String {
    let mut out = String::new();
    for t in trace {
        out.push_str(&serde_json::to_string(t).expect("trace entry serializes"));
        out.push('\n');
    }
    out
}

pub fn parse_trace(text: &str) -> Result<Vec<TraceEntry>, SessionError> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| {
            serde_json::from_str(l).map_err(|e| SessionError::Trace { line: i + 1, msg: e.to_string() })
        })
        .collect()
}

/// A P1 action as typed by a user: an edge or `stop`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum P1Move {
    Claim(Edge),
    Stop,
}

impl FromStr for P1Move {
    type Err = BoardError;

    fn from_str(s: &str) -> Result<P1Move, BoardError> {
        match s.trim() {
            "stop" => Ok(P1Move::Stop),
            t => Ok(P1Move::Claim(t.parse()?)),
        }
    }
}

impl fmt::Display for P1Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            P1Move::Claim(e) => e.fmt(f),
            P1Move::Stop => f.write_str("stop"),
        }
    }
}

/// The strategy for a board kind.
pub fn responder_for(kind: BoardKind, config: StrategyConfig) -> Box<dyn Responder + Send> {
    match kind {
        BoardKind::TwoCliques => Box::new(GraphStrategy::new(config)),
        BoardKind::Hyper4 => Box::new(HyperStrategy::new(config)),
    }
}

#[derive(Clone)]
pub struct Session {
    pub state: GameState,
    pub responder: Box<dyn Responder + Send>,
    pub trace: Vec<TraceEntry>,
    pub winner: Option<Player>,
    /// P2 moves allowed after P1 stops, as a guard against non-termination.
    pub solo_limit: usize,
}

impl Session {
    pub fn new(kind: BoardKind, n: u8) -> Result<Session, SessionError> {
        Session::with_config(kind, n, StrategyConfig::default())
    }

    pub fn with_config(kind: BoardKind, n: u8, config: StrategyConfig) -> Result<Session, SessionError> {
        let state = GameState::new(kind, n)?;
        Ok(Session::from_parts(state, responder_for(kind, config)))
    }

    pub fn from_parts(state: GameState, responder: Box<dyn Responder + Send>) -> Session {
        let solo_limit = 4 * state.n() as usize + 8;
        Session { state, responder, trace: Vec::new(), winner: None, solo_limit }
    }

    pub fn finished(&self) -> bool {
        self.winner.is_some()
    }

    /// Plays P1's move and P2's answers. After a stop P2 keeps moving until
    /// it owns a target copy.
    pub fn play(&mut self, mv: P1Move) -> Result<Vec<Reply>, SessionError> {
        if self.winner.is_some() {
            return Err(SessionError::GameOver);
        }
        match mv {
            P1Move::Claim(e) => {
                self.state = self.state.apply_move(Player::P1, e)?;
                self.push(Player::P1, e.to_string(), None);
                if completes_copy(&self.state, Player::P1, &e) {
                    self.winner = Some(Player::P1);
                    return Ok(Vec::new());
                }
            }
            P1Move::Stop => {
                self.state = self.state.stop()?;
                self.push(Player::P1, "stop".into(), None);
            }
        }
        let mut replies = vec![self.p2_turn()?];
        while self.state.p1_stopped() && self.winner.is_none() {
            if replies.len() >= self.solo_limit {
                return Err(StrategyError::Invariant("P2 did not finish after P1 stopped".into()).into());
            }
            replies.push(self.p2_turn()?);
        }
        Ok(replies)
    }

    fn p2_turn(&mut self) -> Result<Reply, SessionError> {
        let reply = self.responder.respond(&self.state)?;
        self.state = self.state.apply_move(Player::P2, reply.edge)?;
        self.push(Player::P2, reply.edge.to_string(), Some(&reply));
        if completes_copy(&self.state, Player::P2, &reply.edge) {
            self.winner = Some(Player::P2);
        }
        Ok(reply)
    }

    fn push(&mut self, player: Player, edge: String, reply: Option<&Reply>) {
        self.trace.push(TraceEntry {
            ply: self.trace.len() + 1,
            player,
            edge,
            case: reply.map(|r| r.case.clone()),
            ledger: reply.and_then(|r| r.ledger),
            checks: reply.map(|r| r.checks.clone()).unwrap_or_default(),
            stage: reply.and_then(|r| r.stage),
        });
    }

    /// Role names of the endpoints of `e`, when all are bound.
    pub fn role_name(&self, e: &Edge) -> Option<String> {
        role_name(&self.responder.labels(), e)
    }
}

fn role_name(labels: &[(String, VertexId)], e: &Edge) -> Option<String> {
    let name = |v: VertexId| {
        labels
            .iter()
            .filter(|(_, w)| *w == v)
            .map(|(n, _)| n.as_str())
            .min_by_key(|n| (n.len(), *n))
            .map(str::to_string)
    };
    e.vertices().into_iter().map(name).collect::<Option<Vec<_>>>().map(|v| v.concat())
}

/// Replays the P1 moves of a trace against a fresh strategy and annotates
/// every P2 move with its case and role names.
pub fn explain(kind: BoardKind, n: u8, trace: &[TraceEntry]) -> Result<Vec<String>, SessionError> {
    let mut session = Session::new(kind, n)?;
    let mut out = Vec::new();
    let mut i = 0;
    while i < trace.len() {
        let t = &trace[i];
        if t.player != Player::P1 {
            return Err(SessionError::Trace { line: i + 1, msg: "expected a P1 move".into() });
        }
        let mv = match t.action()? {
            Action::Stop => P1Move::Stop,
            Action::Claim { edge, .. } => P1Move::Claim(edge),
        };
        out.push(format!("P1 {mv}"));
        i += 1;
        let before = session.responder.base_roles();
        let replies = session.play(mv)?;
        let base = session.responder.base_roles();
        // replies after a stop arrive together; the base belongs to the
        // reply just before the endgame starts
        let base_at = (base.is_some() && base != before).then(|| {
            let first_end = replies.iter().position(|r| r.case.starts_with("endgame") || r.case.starts_with("special"));
            first_end.unwrap_or(replies.len()).saturating_sub(1)
        });
        for (j, r) in replies.into_iter().enumerate() {
            if let Some(t) = trace.get(i) {
                if t.player != Player::P2 || t.edge != r.edge.to_string() {
                    return Err(SessionError::Trace {
                        line: i + 1,
                        msg: format!("trace has {} where the strategy plays {}", t.edge, r.edge),
                    });
                }
                i += 1;
            }
            let name = session.role_name(&r.edge).unwrap_or_else(|| r.edge.to_string());
            let mut line = format!("{}→{}", r.case, name);
            if let Some(l) = r.ledger {
                line.push_str(&format!(" ledger k={} l={}", l.k, l.l));
            }
            if let (Some([a, b]), Some(at)) = (&base, base_at) {
                if at == j {
                    line.push_str(&format!(" potential base {a}{b}"));
                }
            }
            for c in r.checks.iter().filter(|c| !c.ok) {
                line.push_str(&format!(" FAILED {}", c.kind));
            }
            out.push(line);
        }
        if session.finished() {
            break;
        }
    }
    if let Some(w) = session.winner {
        out.push(format!("winner {w}"));
    }
    Ok(out)
}

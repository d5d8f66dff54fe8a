//! JSON-facing game wrapper shared by the command line, the HTTP bridge and
//! the browser demo.

use serde::{Deserialize, Serialize};

use crate::board::{BoardKind, Edge, Player, VertexId};
use crate::lemma::LostEdgeLedger;
use crate::patterns::threats;
use crate::session::{P1Move, Session, SessionError, TraceEntry};

/// An edge one move away from completing a target copy for `player`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ThreatMark {
    pub player: Player,
    pub edge: Edge,
}

/// Answer to one P1 move.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MoveOutcome {
    pub p2_moves: Vec<Edge>,
    pub case: Option<String>,
    pub ledger: Option<LostEdgeLedger>,
    pub threats: Vec<ThreatMark>,
    pub potential_base: Option<[VertexId; 2]>,
    pub finished: bool,
    pub winner: Option<Player>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Claim {
    pub edge: Edge,
    pub owner: Player,
}

/// Full board and trace.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StateView {
    pub game: String,
    pub n: u8,
    pub to_move: Option<Player>,
    pub claims: Vec<Claim>,
    pub trace: Vec<TraceEntry>,
    pub case: Option<String>,
    pub ledger: Option<LostEdgeLedger>,
    pub threats: Vec<ThreatMark>,
    pub potential_base: Option<[VertexId; 2]>,
    /// Role name to vertex.
    pub labels: Vec<(String, VertexId)>,
    pub p1_stopped: bool,
    pub finished: bool,
    pub winner: Option<Player>,
}

pub fn game_name(kind: BoardKind) -> &'static str {
    match kind {
        BoardKind::TwoCliques => "graph",
        BoardKind::Hyper4 => "hyper",
    }
}

#[derive(Clone)]
pub struct Game {
    pub session: Session,
}

impl Game {
    pub fn new(kind: BoardKind, n: u8) -> Result<Game, SessionError> {
        Ok(Game { session: Session::new(kind, n)? })
    }

    /// Plays one P1 move. On any error the game is left as it was.
    pub fn play(&mut self, mv: P1Move) -> Result<MoveOutcome, SessionError> {
        let saved = self.session.clone();
        match self.session.play(mv) {
            Ok(replies) => {
                let last = replies.last();
                Ok(MoveOutcome {
                    p2_moves: replies.iter().map(|r| r.edge).collect(),
                    case: last.map(|r| r.case.clone()),
                    ledger: replies.iter().rev().find_map(|r| r.ledger),
                    threats: self.threats(),
                    potential_base: self.session.responder.potential_base(),
                    finished: self.session.finished(),
                    winner: self.session.winner,
                })
            }
            Err(e) => {
                self.session = saved;
                Err(e)
            }
        }
    }

    pub fn threats(&self) -> Vec<ThreatMark> {
        let st = &self.session.state;
        let mut out: Vec<ThreatMark> = [Player::P1, Player::P2]
            .into_iter()
            .flat_map(|p| {
                threats(st, p)
                    .into_iter()
                    .filter(|t| st.is_unclaimed(&t.edge))
                    .map(move |t| ThreatMark { player: p, edge: t.edge })
            })
            .collect();
        out.sort();
        out.dedup();
        out
    }

    /// Edges P1 may claim now; empty when it is not P1's turn.
    pub fn hints(&self) -> Vec<Edge> {
        let st = &self.session.state;
        if self.session.finished() || st.p1_stopped() || st.to_move() != Player::P1 {
            return Vec::new();
        }
        st.unclaimed_edges()
    }

    pub fn view(&self) -> StateView {
        let s = &self.session;
        let last_p2 = s.trace.iter().rev().find(|t| t.player == Player::P2);
        let to_move = (!s.finished()).then(|| s.state.to_move());
        StateView {
            game: game_name(s.state.kind()).into(),
            n: s.state.n(),
            to_move,
            claims: s.state.claims().iter().map(|(&edge, &owner)| Claim { edge, owner }).collect(),
            trace: s.trace.clone(),
            case: last_p2.and_then(|t| t.case.clone()),
            ledger: s.trace.iter().rev().find_map(|t| t.ledger),
            threats: self.threats(),
            potential_base: s.responder.potential_base(),
            labels: s.responder.labels(),
            p1_stopped: s.state.p1_stopped(),
            finished: s.finished(),
            winner: s.winner,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn illegal_move_leaves_state() {
        let mut g = Game::new(BoardKind::TwoCliques, 8).unwrap();
        g.play("g:1:0-1".parse().unwrap()).unwrap();
        let before = g.view();
        assert!(g.play("g:2:0-1".parse().unwrap()).is_err());
        assert_eq!(g.view(), before);
    }

    #[test]
    fn hints_empty_after_finish() {
        let mut g = Game::new(BoardKind::TwoCliques, 8).unwrap();
        assert_eq!(g.hints().len(), 56);
        let out = g.play(P1Move::Stop).unwrap();
        assert_eq!(out.winner, Some(Player::P2));
        assert!(g.hints().is_empty());
        assert_eq!(g.view().to_move, None);
    }
}

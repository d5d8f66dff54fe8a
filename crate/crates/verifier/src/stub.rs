use ramsey_core::board::{Action, Edge, GameState, VertexId};
use ramsey_core::strategy::{Reply, Responder, StrategyError};

/// A P2 that copies P1: the same edge in the other clique, or the mirrored
/// hyperedge, falling back to the first unclaimed edge.
#[derive(Clone, Debug, Default)]
pub struct MirrorStub;

impl MirrorStub {
    fn image(state: &GameState, e: &Edge) -> Option<Edge> {
        match *e {
            Edge::Graph { copy, a, b } => Edge::graph(3 - copy, a, b).ok(),
            Edge::Hyper(vs) => {
                let n = state.n();
                Edge::hyper(vs.map(|v| n - 1 - v)).ok()
            }
        }
    }
}

impl Responder for MirrorStub {
    fn respond(&mut self, state: &GameState) -> Result<Reply, StrategyError> {
        let mirrored = match state.last_p1_action() {
            Some(Action::Claim { edge, .. }) => Self::image(state, &edge).filter(|m| state.is_unclaimed(m)),
            _ => None,
        };
        let edge = match mirrored {
            Some(e) => e,
            None => *state
                .unclaimed_edges()
                .first()
                .ok_or_else(|| StrategyError::Invariant("board is full".into()))?,
        };
        Ok(Reply { edge, case: "mirror".into(), ledger: None, checks: Vec::new(), finished: false, stage: None })
    }

    fn role_colors(&self) -> Vec<(VertexId, u32)> {
        Vec::new()
    }

    fn phase_key(&self) -> String {
        "mirror".into()
    }

    fn finished(&self) -> bool {
        false
    }

    fn completion_bound(&self, _state: &GameState) -> usize {
        0
    }

    fn clone_box(&self) -> Box<dyn Responder + Send> {
        Box::new(self.clone())
    }
}


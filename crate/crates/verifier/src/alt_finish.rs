//! The alternative first-star win: once P1 has answered five star edges
//! A0Fi, P2 holding the triangle A0A1B1 can finish in three moves with
//! three of the five B1Fi. Observed in play, never used by the strategy.

use std::collections::BTreeSet;

use ramsey_core::board::{Edge, GameState, Player, VertexId};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AltFinish {
    /// The position does not have the required shape.
    NotApplicable,
    /// P2 to move gets three B1Fi and with them a copy of G.
    Holds,
    Fails(String),
}

fn owner(state: &GameState, u: VertexId, v: VertexId) -> Option<Player> {
    Edge::pair(u, v).ok().and_then(|e| state.claims().get(&e).copied())
}

/// Naive check for a P2 copy of G with base `u`-`v` in a set of P2 pairs.
fn has_g_on_base(p2: &BTreeSet<(VertexId, VertexId)>, u: VertexId, v: VertexId, verts: &[VertexId]) -> bool {
    let has = |a: VertexId, b: VertexId| p2.contains(&(a.min(b), a.max(b)));
    has(u, v) && verts.iter().filter(|&&w| w != u && w != v && has(u, w) && has(v, w)).count() >= 4
}

/// Evaluates the claim on `state` (P2 to move) with the strategy's role
/// labels.
pub fn three_of_five(state: &GameState, labels: &[(String, VertexId)]) -> AltFinish {
    let get = |r: &str| labels.iter().find(|(n, _)| n == r).map(|(_, v)| *v);
    let (Some(a0), Some(a1), Some(b1)) = (get("A0"), get("A1"), get("B1")) else {
        return AltFinish::NotApplicable;
    };
    let fs: Option<Vec<VertexId>> = (1..=5).map(|i| get(&format!("F{i}"))).collect();
    let Some(fs) = fs else { return AltFinish::NotApplicable };
    let p2 = |u, v| owner(state, u, v) == Some(Player::P2);
    let p1 = |u, v| owner(state, u, v) == Some(Player::P1);
    let shape = state.to_move() == Player::P2
        && p2(a0, a1)
        && p2(a1, b1)
        && p2(a0, b1)
        && fs.iter().all(|&f| p2(a1, f) && p1(a0, f) && owner(state, b1, f).is_none());
    if !shape {
        return AltFinish::NotApplicable;
    }
    // P2 moves first on five free edges, so it gets three whatever P1 blocks.
    let pairs: BTreeSet<(VertexId, VertexId)> = state
        .edges_of(Player::P2)
        .map(|e| {
            let vs = e.vertices();
            (vs[0].min(vs[1]), vs[0].max(vs[1]))
        })
        .collect();
    let verts: Vec<VertexId> = state.vertices(a1.copy).collect();
    let n = fs.len();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let mut with = pairs.clone();
                for &f in [fs[i], fs[j], fs[k]].iter() {
                    with.insert((b1.min(f), b1.max(f)));
                }
                if !has_g_on_base(&with, a1, b1, &verts) {
                    return AltFinish::Fails(format!("F{} F{} F{} give no G on A1B1", i + 1, j + 1, k + 1));
                }
            }
        }
    }
    AltFinish::Holds
}

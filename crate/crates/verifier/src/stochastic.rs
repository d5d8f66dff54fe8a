//! Seeded random P1 opponents for deep lines.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use ramsey_core::board::{BoardKind, Edge, GameState, Player, VertexId};
use ramsey_core::session::{trace_to_jsonl, P1Move, Session};
use ramsey_core::strategy::StrategyConfig;
use sha2::{Digest, Sha256};

use crate::check::{play_checked, Step};
use crate::exhaustive::{kind_name, new_session, ExhaustiveOptions};
use crate::verdict::{Mode, Params, Verdict};

#[derive(Clone, Debug)]
pub struct StochasticOptions {
    pub kind: BoardKind,
    pub n: u8,
    pub playouts: u64,
    pub max_p1_moves: usize,
    pub seed: u64,
    pub config: StrategyConfig,
}

#[derive(Clone, Copy, Debug)]
enum Policy {
    Uniform,
    /// Grow P1's densest spots.
    Greedy,
    /// Play on the vertices the strategy has named.
    RoleAdjacent,
}

fn p1_degree_sum(state: &GameState, e: &Edge) -> u32 {
    e.vertices().iter().map(|&v| state.degree(Player::P1, v)).sum()
}

fn greedy_score(state: &GameState, e: &Edge) -> u32 {
    let mut s = p1_degree_sum(state, e);
    if let Edge::Graph { .. } = e {
        let vs = e.vertices();
        let common = state.neighbours(Player::P1, vs[0]) & state.neighbours(Player::P1, vs[1]);
        s += 2 * common.count_ones();
    }
    s
}

fn pick(rng: &mut ChaCha8Rng, policy: Policy, sess: &Session) -> Option<Edge> {
    let free = sess.state.unclaimed_edges();
    if free.is_empty() {
        return None;
    }
    let uniform = |rng: &mut ChaCha8Rng| free.choose(rng).copied();
    match policy {
        Policy::Uniform => uniform(rng),
        _ if rng.gen_bool(0.2) => uniform(rng),
        Policy::Greedy => {
            let best = free.iter().map(|e| greedy_score(&sess.state, e)).max()?;
            let top: Vec<Edge> = free.iter().copied().filter(|e| greedy_score(&sess.state, e) == best).collect();
            top.choose(rng).copied()
        }
        Policy::RoleAdjacent => {
            let named: Vec<VertexId> = sess.responder.labels().into_iter().map(|(_, v)| v).collect();
            let hits = |e: &Edge| e.vertices().iter().filter(|v| named.contains(v)).count();
            let max = free.iter().map(hits).max()?;
            let top: Vec<Edge> = free.iter().copied().filter(|e| hits(e) == max).collect();
            top.choose(rng).copied()
        }
    }
}

/// One playout; returns the finished session for hashing.
pub fn playout(v: &mut Verdict, rng: &mut ChaCha8Rng, opts: &StochasticOptions) -> Session {
    let mut eo = ExhaustiveOptions::new(opts.kind, opts.n, 0);
    eo.config = opts.config.clone();
    let mut sess = new_session(&eo);
    let policy = match rng.gen_range(0..3) {
        0 => Policy::Uniform,
        1 => Policy::Greedy,
        _ => Policy::RoleAdjacent,
    };
    let stop_at = rng.gen_bool(0.5).then(|| rng.gen_range(0..opts.max_p1_moves.max(1)));
    for ply in 0..opts.max_p1_moves {
        let mv = if stop_at == Some(ply) {
            P1Move::Stop
        } else {
            match pick(rng, policy, &sess) {
                Some(e) => P1Move::Claim(e),
                None => break,
            }
        };
        if play_checked(v, &mut sess, mv) == Step::Terminal {
            break;
        }
    }
    sess
}

pub fn stochastic_verify(opts: &StochasticOptions) -> Verdict {
    let params = Params {
        game: kind_name(opts.kind).into(),
        n: opts.n,
        budget: Some(opts.max_p1_moves),
        playouts: Some(opts.playouts),
        seed: Some(opts.seed),
        disabled_branch: opts.config.disabled_branch.clone(),
        ..Params::default()
    };
    let mut v = Verdict::new(Mode::Stochastic, params);
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut hasher = Sha256::new();
    for _ in 0..opts.playouts {
        let sess = playout(&mut v, &mut rng, opts);
        hasher.update(trace_to_jsonl(&sess.trace).as_bytes());
    }
    let digest = hasher.finalize();
    v.trace_hash = Some(digest.iter().map(|b| format!("{b:02x}")).collect());
    v
}

//! Depth-bounded enumeration of every P1 line up to isomorphism.

use std::collections::{BTreeSet, HashSet};

use ramsey_core::board::{canonicalize_with_roles, BoardKind, CanonicalKey, Edge, GameState, Player, VertexId};
use ramsey_core::session::{responder_for, P1Move, Session};
use ramsey_core::strategy::{Responder, StrategyConfig};
use sha2::{Digest, Sha256};

use crate::check::{play_checked, Step};
use crate::stub::MirrorStub;
use crate::verdict::{Mode, Params, Verdict};

#[derive(Clone, Debug)]
pub struct ExhaustiveOptions {
    pub kind: BoardKind,
    pub n: u8,
    /// P1 moves explored after the prefix.
    pub depth: usize,
    pub config: StrategyConfig,
    /// Canonical child reduction and transposition table.
    pub reduce: bool,
    /// Forced P1 moves played first; see [`resolve_token`].
    pub prefix: Vec<String>,
    /// Replace the strategy by [`MirrorStub`].
    pub stub: bool,
}

impl ExhaustiveOptions {
    pub fn new(kind: BoardKind, n: u8, depth: usize) -> ExhaustiveOptions {
        ExhaustiveOptions {
            kind,
            n,
            depth,
            config: StrategyConfig::default(),
            reduce: true,
            prefix: Vec::new(),
            stub: false,
        }
    }
}

pub fn kind_name(kind: BoardKind) -> &'static str {
    match kind {
        BoardKind::TwoCliques => "graph",
        BoardKind::Hyper4 => "hyper",
    }
}

/// A prefix token: `stop`, an edge in text form, `k` for a fresh edge in
/// P1's first copy, `f` for a fresh edge in the other copy, or two role names (`AE`, or `A0-F1` for longer names)
/// resolved in P2's copy against the strategy's current labels.
pub fn resolve_token(sess: &Session, tok: &str) -> Result<P1Move, String> {
    if tok == "stop" {
        return Ok(P1Move::Stop);
    }
    if tok.contains(':') {
        return tok.parse().map_err(|e| format!("{e}"));
    }
    if tok == "k" || tok == "f" {
        let first = sess.responder.first_copy().unwrap_or(1);
        let copy = if tok == "k" { first } else { 3 - first };
        let a = sess.state.lowest_free_vertex(copy, &[]).map_err(|e| e.to_string())?;
        let b = sess.state.lowest_free_vertex(copy, &[a]).map_err(|e| e.to_string())?;
        return Ok(P1Move::Claim(Edge::pair(a, b).map_err(|e| e.to_string())?));
    }
    let roles: Vec<String> = if tok.contains('-') {
        tok.split('-').map(str::to_string).collect()
    } else {
        tok.chars().map(String::from).collect()
    };
    let labels = sess.responder.labels();
    let find = |r: &str| -> Result<VertexId, String> {
        labels.iter().find(|(n, _)| n == r).map(|(_, v)| *v).ok_or(format!("role {r} unbound"))
    };
    match roles.as_slice() {
        [a, b] => Ok(P1Move::Claim(Edge::pair(find(a)?, find(b)?).map_err(|e| e.to_string())?)),
        _ => Err(format!("bad prefix token {tok}")),
    }
}

pub fn new_session(opts: &ExhaustiveOptions) -> Session {
    let state = GameState::new(opts.kind, opts.n).expect("board size checked by caller");
    let responder: Box<dyn Responder + Send> =
        if opts.stub { Box::new(MirrorStub) } else { responder_for(opts.kind, opts.config.clone()) };
    Session::from_parts(state, responder)
}

/// Candidate P1 edges. With `reduce`, free vertices are interchangeable, so
/// one representative is kept per pattern of touched endpoints.
pub fn candidate_moves(state: &GameState, reduce: bool) -> Vec<Edge> {
    if !reduce {
        return state.unclaimed_edges();
    }
    let mut out = Vec::new();
    match state.kind() {
        BoardKind::TwoCliques => {
            for copy in 1..=2 {
                let (touched, free): (Vec<VertexId>, Vec<VertexId>) =
                    state.vertices(copy).partition(|v| !state.is_free_vertex(*v));
                for (i, &a) in touched.iter().enumerate() {
                    for &b in &touched[i + 1..] {
                        out.push(Edge::pair(a, b).expect("same copy"));
                    }
                    if let Some(&f) = free.first() {
                        out.push(Edge::pair(a, f).expect("same copy"));
                    }
                }
                if free.len() >= 2 {
                    out.push(Edge::pair(free[0], free[1]).expect("same copy"));
                }
            }
        }
        BoardKind::Hyper4 => {
            let (touched, free): (Vec<u8>, Vec<u8>) =
                (0..state.n()).partition(|&o| !state.is_free_vertex(VertexId::hyper(o)));
            for j in 0..=4usize {
                if free.len() < j {
                    break;
                }
                subsets(&touched, 4 - j, &mut |comb| {
                    let mut vs = [0u8; 4];
                    for (i, &v) in comb.iter().chain(free[..j].iter()).enumerate() {
                        vs[i] = v;
                    }
                    out.push(Edge::hyper(vs).expect("distinct"));
                });
            }
        }
    }
    out.retain(|e| state.is_unclaimed(e));
    out
}

fn subsets(items: &[u8], k: usize, f: &mut impl FnMut(&[u8])) {
    fn go(items: &[u8], k: usize, start: usize, cur: &mut Vec<u8>, f: &mut impl FnMut(&[u8])) {
        if cur.len() == k {
            f(cur);
            return;
        }
        for i in start..items.len() {
            cur.push(items[i]);
            go(items, k, i + 1, cur, f);
            cur.pop();
        }
    }
    go(items, k, 0, &mut Vec::new(), f)
}

/// Key of the position after P1 claims `e`, coloured by P2's roles and by
/// which copy P1 opened in.
pub fn child_key(sess: &Session, e: Edge) -> CanonicalKey {
    let next = sess.state.apply_move(Player::P1, e).expect("candidate is legal");
    let k1 = sess.responder.first_copy();
    let cc = move |c: u8| match k1 {
        Some(k) if c == k => 1,
        Some(_) => 2,
        None => 0,
    };
    canonicalize_with_roles(&next, cc, &sess.responder.role_colors())
}

/// Canonical classes of P1's replies at a node.
pub fn reply_classes(sess: &Session, reduce: bool) -> BTreeSet<CanonicalKey> {
    candidate_moves(&sess.state, reduce).into_iter().map(|e| child_key(sess, e)).collect()
}

fn tt_hash(key: &CanonicalKey, phase: &str, left: usize) -> [u8; 16] {
    let mut h = Sha256::new();
    for x in &key.0 {
        h.update(x.to_le_bytes());
    }
    h.update(phase.as_bytes());
    h.update((left as u64).to_le_bytes());
    let d = h.finalize();
    let mut out = [0u8; 16];
    out.copy_from_slice(&d[..16]);
    out
}

pub fn exhaustive_verify(opts: &ExhaustiveOptions) -> Verdict {
    let params = Params {
        game: kind_name(opts.kind).into(),
        n: opts.n,
        depth: Some(opts.depth),
        disabled_branch: opts.config.disabled_branch.clone(),
        prefix: opts.prefix.clone(),
        ..Params::default()
    };
    let mut v = Verdict::new(Mode::Exhaustive, params);
    let mut sess = new_session(opts);
    for tok in &opts.prefix {
        let mv = match resolve_token(&sess, tok) {
            Ok(mv) => mv,
            Err(e) => {
                v.violation(format!("prefix token {tok}: {e}"), &sess.trace);
                return v;
            }
        };
        if play_checked(&mut v, &mut sess, mv) == Step::Terminal {
            return v;
        }
    }
    let mut tt = HashSet::new();
    dfs(&mut v, &sess, opts.depth, opts.reduce, &mut tt);
    v
}

fn dfs(v: &mut Verdict, node: &Session, left: usize, reduce: bool, tt: &mut HashSet<[u8; 16]>) {
    // stopping is tried at every node, including after the last explored claim
    let mut stopped = node.clone();
    play_checked(v, &mut stopped, P1Move::Stop);
    if left == 0 {
        return;
    }
    let phase = node.responder.phase_key();
    for e in candidate_moves(&node.state, reduce) {
        if reduce && !tt.insert(tt_hash(&child_key(node, e), &phase, left)) {
            v.stats.transposition_hits += 1;
            continue;
        }
        let mut child = node.clone();
        if play_checked(v, &mut child, P1Move::Claim(e)) == Step::Continue {
            dfs(v, &child, left - 1, reduce, tt);
        }
    }
}

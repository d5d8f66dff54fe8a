//! Game-state substrate shared by the graph game on two disjoint cliques and
//! the game on the complete 4-uniform hypergraph.
//!
//! Vertices carry a copy index (1 or 2) on the two-clique board and copy 0 on
//! the hypergraph board. Ownership is kept in a sparse map of claimed edges
//! together with per-vertex neighbour bitmasks for the graph board, so every
//! vertex ordinal must fit in a `u64` mask.

mod canon;
mod plane;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use canon::{canonicalize, canonicalize_with_roles, CanonicalKey};
pub use plane::{bits, Plane};

/// Largest supported vertex count per clique / hypergraph.
pub const MAX_N: u8 = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum BoardKind {
    /// Two disjoint copies of `K_n`.
    TwoCliques,
    /// The complete 4-uniform hypergraph on `n` vertices.
    Hyper4,
}

impl BoardKind {
    pub fn min_n(self) -> u8 {
        match self {
            BoardKind::TwoCliques => 6,
            BoardKind::Hyper4 => 8,
        }
    }
}

impl FromStr for BoardKind {
    type Err = BoardError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "graph" | "two-cliques" => Ok(BoardKind::TwoCliques),
            "hyper" | "hyper4" => Ok(BoardKind::Hyper4),
            other => Err(BoardError::Parse(format!("unknown board kind {other:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Player {
    P1,
    P2,
}

impl Player {
    pub fn other(self) -> Player {
        match self {
            Player::P1 => Player::P2,
            Player::P2 => Player::P1,
        }
    }

    fn idx(self) -> usize {
        match self {
            Player::P1 => 0,
            Player::P2 => 1,
        }
    }
}

impl fmt::Display for Player {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Player::P1 => f.write_str("P1"),
            Player::P2 => f.write_str("P2"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Ownership {
    Unclaimed,
    P1,
    P2,
}

impl From<Player> for Ownership {
    fn from(p: Player) -> Self {
        match p {
            Player::P1 => Ownership::P1,
            Player::P2 => Ownership::P2,
        }
    }
}

/// A board vertex. `copy` is 1 or 2 on the two-clique board and 0 on the
/// hypergraph board. Text form is `<copy>:<ordinal>` or the bare ordinal.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexId {
    pub copy: u8,
    pub ordinal: u8,
}

impl VertexId {
    pub fn new(copy: u8, ordinal: u8) -> Self {
        VertexId { copy, ordinal }
    }

    pub fn hyper(ordinal: u8) -> Self {
        VertexId { copy: 0, ordinal }
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.copy == 0 {
            write!(f, "{}", self.ordinal)
        } else {
            write!(f, "{}:{}", self.copy, self.ordinal)
        }
    }
}

impl FromStr for VertexId {
    type Err = BoardError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || BoardError::Parse(format!("malformed vertex {s:?}"));
        let num = |t: &str| t.parse::<u8>().map_err(|_| bad());
        match s.split_once(':') {
            Some((c, o)) => Ok(VertexId::new(num(c)?, num(o)?)),
            None => Ok(VertexId::hyper(num(s)?)),
        }
    }
}

impl Serialize for VertexId {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for VertexId {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// An edge of the two-clique board or a hyperedge of the 4-uniform board.
/// Endpoints are stored sorted so equal edges compare equal.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Edge {
    Graph { copy: u8, a: u8, b: u8 },
    Hyper([u8; 4]),
}

impl Edge {
    /// Graph edge between two vertices of the same copy.
    pub fn pair(u: VertexId, v: VertexId) -> Result<Edge, BoardError> {
        if u.copy != v.copy {
            return Err(BoardError::CrossCopy(u, v));
        }
        if u.copy == 0 || u.copy > 2 {
            return Err(BoardError::BadVertex(u));
        }
        if u.ordinal == v.ordinal {
            return Err(BoardError::Degenerate(format!("loop at {u}")));
        }
        let (a, b) = if u.ordinal < v.ordinal {
            (u.ordinal, v.ordinal)
        } else {
            (v.ordinal, u.ordinal)
        };
        Ok(Edge::Graph { copy: u.copy, a, b })
    }

    pub fn graph(copy: u8, a: u8, b: u8) -> Result<Edge, BoardError> {
        Edge::pair(VertexId::new(copy, a), VertexId::new(copy, b))
    }

    pub fn hyper(mut vs: [u8; 4]) -> Result<Edge, BoardError> {
        vs.sort_unstable();
        if vs.windows(2).any(|w| w[0] == w[1]) {
            return Err(BoardError::Degenerate(format!("repeated vertex in {vs:?}")));
        }
        Ok(Edge::Hyper(vs))
    }

    pub fn vertices(&self) -> Vec<VertexId> {
        match *self {
            Edge::Graph { copy, a, b } => vec![VertexId::new(copy, a), VertexId::new(copy, b)],
            Edge::Hyper(vs) => vs.iter().map(|&v| VertexId::hyper(v)).collect(),
        }
    }

    pub fn contains(&self, v: VertexId) -> bool {
        match *self {
            Edge::Graph { copy, a, b } => v.copy == copy && (v.ordinal == a || v.ordinal == b),
            Edge::Hyper(vs) => v.copy == 0 && vs.contains(&v.ordinal),
        }
    }

    pub fn copy(&self) -> u8 {
        match *self {
            Edge::Graph { copy, .. } => copy,
            Edge::Hyper(_) => 0,
        }
    }

    /// The endpoint other than `v` of a graph edge.
    pub fn other(&self, v: VertexId) -> Option<VertexId> {
        match *self {
            Edge::Graph { copy, a, b } if v.copy == copy => {
                if v.ordinal == a {
                    Some(VertexId::new(copy, b))
                } else if v.ordinal == b {
                    Some(VertexId::new(copy, a))
                } else {
                    None
                }
            }
            _ => None,
        }
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Edge::Graph { copy, a, b } => write!(f, "g:{copy}:{a}-{b}"),
            Edge::Hyper([a, b, c, d]) => write!(f, "h:{a}-{b}-{c}-{d}"),
        }
    }
}

impl FromStr for Edge {
    type Err = BoardError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || BoardError::Parse(format!("malformed edge {s:?}"));
        let num = |t: &str| t.parse::<u8>().map_err(|_| bad());
        if let Some(rest) = s.strip_prefix("g:") {
            let (copy, pair) = rest.split_once(':').ok_or_else(bad)?;
            let (a, b) = pair.split_once('-').ok_or_else(bad)?;
            let (copy, a, b) = (num(copy)?, num(a)?, num(b)?);
            if a >= b {
                return Err(bad());
            }
            Edge::graph(copy, a, b)
        } else if let Some(rest) = s.strip_prefix("h:") {
            let parts: Vec<u8> = rest.split('-').map(num).collect::<Result<_, _>>()?;
            let vs: [u8; 4] = parts.try_into().map_err(|_| bad())?;
            if vs.windows(2).any(|w| w[0] >= w[1]) {
                return Err(bad());
            }
            Edge::hyper(vs)
        } else {
            Err(bad())
        }
    }
}

impl Serialize for Edge {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Edge {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Action {
    Claim { player: Player, edge: Edge },
    /// P1 leaves the game; P2 keeps moving alone.
    Stop,
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum BoardError {
    #[error("board too small: n = {n}, need at least {min}")]
    Config { n: u8, min: u8 },
    #[error("edge {0} is already claimed")]
    IllegalMove(Edge),
    #[error("it is not {0}'s turn")]
    TurnError(Player),
    #[error("edge {0} does not belong to this board")]
    OffBoard(Edge),
    #[error("vertices {0} and {1} lie in different copies")]
    CrossCopy(VertexId, VertexId),
    #[error("bad vertex {0}")]
    BadVertex(VertexId),
    #[error("degenerate edge: {0}")]
    Degenerate(String),
    #[error("no free vertex left in copy {copy}")]
    BoardTooSmall { copy: u8 },
    #[error("parse error: {0}")]
    Parse(String),
}

/// An immutable game position. `apply_move` and `stop` return new values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GameState {
    kind: BoardKind,
    n: u8,
    claims: BTreeMap<Edge, Player>,
    // graph board: neighbour masks indexed by (copy - 1) * n + ordinal
    nbr: Vec<[u64; 2]>,
    deg: Vec<[u16; 2]>,
    history: Vec<Action>,
    to_move: Player,
    p1_stopped: bool,
}

impl GameState {
    pub fn new(kind: BoardKind, n: u8) -> Result<GameState, BoardError> {
        if n < kind.min_n() || n > MAX_N {
            return Err(BoardError::Config { n, min: kind.min_n() });
        }
        let slots = match kind {
            BoardKind::TwoCliques => 2 * n as usize,
            BoardKind::Hyper4 => n as usize,
        };
        Ok(GameState {
            kind,
            n,
            claims: BTreeMap::new(),
            nbr: if kind == BoardKind::TwoCliques { vec![[0; 2]; slots] } else { Vec::new() },
            deg: vec![[0; 2]; slots],
            history: Vec::new(),
            to_move: Player::P1,
            p1_stopped: false,
        })
    }

    pub fn kind(&self) -> BoardKind {
        self.kind
    }

    pub fn n(&self) -> u8 {
        self.n
    }

    pub fn to_move(&self) -> Player {
        self.to_move
    }

    pub fn p1_stopped(&self) -> bool {
        self.p1_stopped
    }

    pub fn history(&self) -> &[Action] {
        &self.history
    }

    pub fn claims(&self) -> &BTreeMap<Edge, Player> {
        &self.claims
    }

    pub fn last_action(&self) -> Option<Action> {
        self.history.last().copied()
    }

    /// Most recent action taken by P1 (a claim or the stop).
    pub fn last_p1_action(&self) -> Option<Action> {
        self.history.iter().rev().copied().find(|a| match a {
            Action::Claim { player, .. } => *player == Player::P1,
            Action::Stop => true,
        })
    }

    pub fn edge_count(&self, player: Player) -> usize {
        self.claims.values().filter(|&&p| p == player).count()
    }

    pub fn edges_of(&self, player: Player) -> impl Iterator<Item = Edge> + '_ {
        self.claims.iter().filter(move |(_, &p)| p == player).map(|(&e, _)| e)
    }

    pub fn owner(&self, e: &Edge) -> Ownership {
        self.claims.get(e).map_or(Ownership::Unclaimed, |&p| p.into())
    }

    pub fn owned_by(&self, e: &Edge, player: Player) -> bool {
        self.claims.get(e) == Some(&player)
    }

    pub fn is_unclaimed(&self, e: &Edge) -> bool {
        !self.claims.contains_key(e)
    }

    pub fn on_board(&self, e: &Edge) -> bool {
        match (self.kind, e) {
            (BoardKind::TwoCliques, Edge::Graph { copy, b, .. }) => {
                (*copy == 1 || *copy == 2) && *b < self.n
            }
            (BoardKind::Hyper4, Edge::Hyper(vs)) => vs[3] < self.n,
            _ => false,
        }
    }

    pub fn contains_vertex(&self, v: VertexId) -> bool {
        match self.kind {
            BoardKind::TwoCliques => (v.copy == 1 || v.copy == 2) && v.ordinal < self.n,
            BoardKind::Hyper4 => v.copy == 0 && v.ordinal < self.n,
        }
    }

    fn slot(&self, v: VertexId) -> usize {
        match self.kind {
            BoardKind::TwoCliques => (v.copy as usize - 1) * self.n as usize + v.ordinal as usize,
            BoardKind::Hyper4 => v.ordinal as usize,
        }
    }

    pub fn apply_move(&self, player: Player, edge: Edge) -> Result<GameState, BoardError> {
        if !self.on_board(&edge) {
            return Err(BoardError::OffBoard(edge));
        }
        if player != self.to_move || (player == Player::P1 && self.p1_stopped) {
            return Err(BoardError::TurnError(player));
        }
        if self.claims.contains_key(&edge) {
            return Err(BoardError::IllegalMove(edge));
        }
        let mut next = self.clone();
        next.claims.insert(edge, player);
        let pi = player.idx();
        match edge {
            Edge::Graph { copy, a, b } => {
                let (sa, sb) = (next.slot(VertexId::new(copy, a)), next.slot(VertexId::new(copy, b)));
                next.nbr[sa][pi] |= 1u64 << b;
                next.nbr[sb][pi] |= 1u64 << a;
                next.deg[sa][pi] += 1;
                next.deg[sb][pi] += 1;
            }
            Edge::Hyper(vs) => {
                for v in vs {
                    next.deg[v as usize][pi] += 1;
                }
            }
        }
        next.history.push(Action::Claim { player, edge });
        next.to_move = if next.p1_stopped { Player::P2 } else { player.other() };
        Ok(next)
    }

    /// P1 declares that it stops playing. Only legal on P1's turn.
    pub fn stop(&self) -> Result<GameState, BoardError> {
        if self.to_move != Player::P1 || self.p1_stopped {
            return Err(BoardError::TurnError(Player::P1));
        }
        let mut next = self.clone();
        next.p1_stopped = true;
        next.to_move = Player::P2;
        next.history.push(Action::Stop);
        Ok(next)
    }

    pub fn apply(&self, action: Action) -> Result<GameState, BoardError> {
        match action {
            Action::Claim { player, edge } => self.apply_move(player, edge),
            Action::Stop => self.stop(),
        }
    }

    /// Rebuilds a state by folding `history` over a fresh board.
    pub fn replay(kind: BoardKind, n: u8, history: &[Action]) -> Result<GameState, BoardError> {
        history.iter().try_fold(GameState::new(kind, n)?, |s, &a| s.apply(a))
    }

    pub fn degree(&self, player: Player, v: VertexId) -> u32 {
        self.deg[self.slot(v)][player.idx()] as u32
    }

    pub fn is_free_vertex(&self, v: VertexId) -> bool {
        self.deg[self.slot(v)] == [0, 0]
    }

    pub fn is_p1_free_vertex(&self, v: VertexId) -> bool {
        self.deg[self.slot(v)][0] == 0
    }

    /// Neighbour bitmask of `v` among `player`'s edges (graph board only).
    pub fn neighbours(&self, player: Player, v: VertexId) -> u64 {
        match self.kind {
            BoardKind::TwoCliques => self.nbr[self.slot(v)][player.idx()],
            BoardKind::Hyper4 => 0,
        }
    }

    pub fn vertices(&self, copy: u8) -> impl Iterator<Item = VertexId> {
        (0..self.n).map(move |o| VertexId::new(copy, o))
    }

    pub fn all_vertices(&self) -> Vec<VertexId> {
        match self.kind {
            BoardKind::TwoCliques => self.vertices(1).chain(self.vertices(2)).collect(),
            BoardKind::Hyper4 => self.vertices(0).collect(),
        }
    }

    /// Vertices with nonzero degree for either player.
    pub fn touched_vertices(&self) -> Vec<VertexId> {
        self.all_vertices().into_iter().filter(|&v| !self.is_free_vertex(v)).collect()
    }

    /// Lowest-ordinal free vertex of `copy`, skipping `exclude`.
    pub fn lowest_free_vertex(&self, copy: u8, exclude: &[VertexId]) -> Result<VertexId, BoardError> {
        self.vertices(copy)
            .find(|v| self.is_free_vertex(*v) && !exclude.contains(v))
            .ok_or(BoardError::BoardTooSmall { copy })
    }

    /// Every unclaimed edge (or hyperedge), in encoding order.
    pub fn unclaimed_edges(&self) -> Vec<Edge> {
        let n = self.n;
        let mut out = Vec::new();
        match self.kind {
            BoardKind::TwoCliques => {
                for copy in 1..=2 {
                    for a in 0..n {
                        for b in a + 1..n {
                            let e = Edge::Graph { copy, a, b };
                            if !self.claims.contains_key(&e) {
                                out.push(e);
                            }
                        }
                    }
                }
            }
            BoardKind::Hyper4 => {
                for a in 0..n {
                    for b in a + 1..n {
                        for c in b + 1..n {
                            for d in c + 1..n {
                                let e = Edge::Hyper([a, b, c, d]);
                                if !self.claims.contains_key(&e) {
                                    out.push(e);
                                }
                            }
                        }
                    }
                }
            }
        }
        out
    }

    pub fn total_edges(&self) -> usize {
        let n = self.n as usize;
        match self.kind {
            BoardKind::TwoCliques => n * (n - 1),
            BoardKind::Hyper4 => n * (n - 1) * (n - 2) * (n - 3) / 24,
        }
    }

    /// 2-uniform ownership view of one clique copy.
    pub fn plane(&self, copy: u8) -> Plane {
        let n = self.n;
        let mut plane = Plane::empty(n);
        for o in 0..n {
            let s = self.slot(VertexId::new(copy, o));
            plane.set_row(o, self.nbr[s][0], self.nbr[s][1]);
        }
        plane
    }

    /// The XY board: hyperedges containing both centres, viewed as edges on
    /// the remaining vertices.
    pub fn xy_plane(&self, x: u8, y: u8) -> Plane {
        let mut plane = Plane::empty(self.n);
        plane.deactivate(x);
        plane.deactivate(y);
        for (e, &p) in &self.claims {
            if let Edge::Hyper(vs) = e {
                if vs.contains(&x) && vs.contains(&y) {
                    let rest: Vec<u8> = vs.iter().copied().filter(|&v| v != x && v != y).collect();
                    plane.claim(rest[0], rest[1], p);
                }
            }
        }
        plane
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> Edge {
        s.parse().unwrap()
    }

    #[test]
    fn new_board_counts() {
        let s = GameState::new(BoardKind::TwoCliques, 6).unwrap();
        assert_eq!(s.unclaimed_edges().len(), 30);
        assert_eq!(s.total_edges(), 30);
        assert_eq!(s.to_move(), Player::P1);
        let h = GameState::new(BoardKind::Hyper4, 8).unwrap();
        assert_eq!(h.unclaimed_edges().len(), 70);
        assert!(matches!(
            GameState::new(BoardKind::TwoCliques, 3),
            Err(BoardError::Config { n: 3, min: 6 })
        ));
        assert!(GameState::new(BoardKind::Hyper4, 7).is_err());
    }

    #[test]
    fn claims_and_turns() {
        let s = GameState::new(BoardKind::TwoCliques, 6).unwrap();
        let s1 = s.apply_move(Player::P1, g("g:1:0-1")).unwrap();
        assert_eq!(s1.owner(&g("g:1:0-1")), Ownership::P1);
        assert_eq!(s1.to_move(), Player::P2);
        assert_eq!(
            s1.apply_move(Player::P2, g("g:1:0-1")),
            Err(BoardError::IllegalMove(g("g:1:0-1")))
        );
        assert_eq!(
            s1.apply_move(Player::P1, g("g:1:2-3")),
            Err(BoardError::TurnError(Player::P1))
        );
        let s2 = s1.apply_move(Player::P2, g("g:2:0-1")).unwrap();
        let s3 = s2.stop().unwrap();
        assert_eq!(s3.to_move(), Player::P2);
        let s4 = s3.apply_move(Player::P2, g("g:2:1-2")).unwrap();
        assert_eq!(s4.to_move(), Player::P2);
        assert_eq!(
            s4.apply_move(Player::P1, g("g:1:3-4")),
            Err(BoardError::TurnError(Player::P1))
        );
        assert!(s4.stop().is_err());
    }

    #[test]
    fn degrees_and_free_vertices() {
        let s = GameState::new(BoardKind::TwoCliques, 6).unwrap();
        let v = VertexId::new(2, 3);
        assert!(s.is_free_vertex(v));
        let s = s.apply_move(Player::P1, g("g:2:3-4")).unwrap();
        assert_eq!(s.degree(Player::P1, v), 1);
        assert!(!s.is_free_vertex(v));
        assert!(!s.is_p1_free_vertex(v));
        assert!(s.is_free_vertex(VertexId::new(1, 3)));
        assert_eq!(s.lowest_free_vertex(2, &[]).unwrap(), VertexId::new(2, 0));
    }

    #[test]
    fn cross_copy_edges_rejected() {
        assert!(matches!(
            Edge::pair(VertexId::new(1, 0), VertexId::new(2, 1)),
            Err(BoardError::CrossCopy(..))
        ));
        assert!(Edge::hyper([1, 2, 2, 3]).is_err());
    }

    #[test]
    fn edge_encoding() {
        assert_eq!(g("g:2:0-1").to_string(), "g:2:0-1");
        assert_eq!("h:0-1-2-3".parse::<Edge>().unwrap(), Edge::Hyper([0, 1, 2, 3]));
        for bad in ["g:2:1-0", "g:3:0-1", "h:3-2-1-0", "h:0-1-2", "x", "g:1:0-0"] {
            assert!(bad.parse::<Edge>().is_err(), "{bad}");
        }
        assert_eq!(Edge::hyper([3, 1, 2, 0]).unwrap().to_string(), "h:0-1-2-3");
    }

    #[test]
    fn replay_reproduces_state() {
        let mut s = GameState::new(BoardKind::Hyper4, 8).unwrap();
        for (i, e) in ["h:0-1-2-3", "h:4-5-6-7", "h:0-2-4-6"].iter().enumerate() {
            let p = if i % 2 == 0 { Player::P1 } else { Player::P2 };
            s = s.apply_move(p, g(e)).unwrap();
        }
        let r = GameState::replay(BoardKind::Hyper4, 8, s.history()).unwrap();
        assert_eq!(r, s);
        assert_eq!(s.degree(Player::P1, VertexId::hyper(0)), 2);
    }

    #[test]
    fn xy_plane_projects_hyperedges() {
        let s = GameState::new(BoardKind::Hyper4, 9)
            .unwrap()
            .apply_move(Player::P1, g("h:0-1-4-5"))
            .unwrap()
            .apply_move(Player::P2, g("h:0-1-2-3"))
            .unwrap();
        let p = s.xy_plane(0, 1);
        assert_eq!(p.owner(4, 5), Ownership::P1);
        assert_eq!(p.owner(2, 3), Ownership::P2);
        assert_eq!(p.owner(2, 4), Ownership::Unclaimed);
        assert!(!p.is_active(0));
    }
}

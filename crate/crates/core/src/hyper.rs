//! P2's strategy for the 4-uniform game: a scripted core on the XY board,
//! a star, blocking on the boards through P1's first hyperedge, and a second
//! star that completes G′.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::board::{Action, BoardError, Edge, GameState, Plane, Player, VertexId};
use crate::lemma::special_violation;
use crate::patterns::near_copies;
use crate::strategy::{CheckRecord, Reply, Responder, StrategyConfig, StrategyError};

/// Hyperedges through both centres, seen as edges on the other vertices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct XYBoardView {
    pub x: u8,
    pub y: u8,
}

impl XYBoardView {
    pub fn new(x: u8, y: u8) -> Result<XYBoardView, BoardError> {
        if x == y {
            return Err(BoardError::Degenerate(format!("centres {x} and {y}")));
        }
        Ok(XYBoardView { x: x.min(y), y: x.max(y) })
    }

    pub fn lift(&self, a: u8, b: u8) -> Result<Edge, BoardError> {
        Edge::hyper([self.x, self.y, a, b])
    }

    /// The pair a hyperedge projects to, if it contains both centres.
    pub fn project(&self, e: &Edge) -> Option<(u8, u8)> {
        let Edge::Hyper(vs) = e else { return None };
        if !vs.contains(&self.x) || !vs.contains(&self.y) {
            return None;
        }
        let mut rest = vs.iter().copied().filter(|&v| v != self.x && v != self.y);
        Some((rest.next()?, rest.next()?))
    }

    pub fn plane(&self, state: &GameState) -> Plane {
        state.xy_plane(self.x, self.y)
    }

    /// Number of hyperedges on the board: C(n−2, 2).
    pub fn size(n: u8) -> usize {
        let m = n as usize - 2;
        m * (m - 1) / 2
    }
}

/// Hyperedges shared by the boards of two distinct centre pairs.
pub fn board_intersection(c1: [u8; 2], c2: [u8; 2], n: u8) -> Result<usize, StrategyError> {
    let (p, q) = (sorted(c1), sorted(c2));
    if p == q || p[0] == p[1] || q[0] == q[1] {
        return Err(StrategyError::Precondition("centre pairs must be distinct pairs".into()));
    }
    let mut union: Vec<u8> = p.iter().chain(q.iter()).copied().collect();
    union.sort_unstable();
    union.dedup();
    Ok(match union.len() {
        4 => 1,
        _ => n as usize - 3,
    })
}

fn sorted(mut c: [u8; 2]) -> [u8; 2] {
    c.sort_unstable();
    c
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum HyperPhase {
    Open,
    AfterXYAB,
    AfterXYBC,
    AfterXAYC,
    AfterXYCD,
    /// Stage 1 is over; choose A0 and start the first star.
    Stage2Entry,
    Star1,
    /// P1 has answered the end of the first star; look at the boards through
    /// its first hyperedge.
    Stage3,
    Mirror,
    AfterBlock,
    Star2,
    Done,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HyperStrategyState {
    pub phase: HyperPhase,
    pub labels: BTreeMap<String, VertexId>,
    /// Centres of the blocked board in Case I or II.
    pub block_centres: Option<[u8; 2]>,
    pub case: Option<String>,
    pub star1: u32,
    pub star2: u32,
    pub mirror: u32,
    pub ledgers: BTreeMap<String, Vec<Edge>>,
    pub seen: usize,
    pub config: StrategyConfig,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HyperStrategy {
    pub state: HyperStrategyState,
}

impl HyperStrategy {
    pub fn new(config: StrategyConfig) -> HyperStrategy {
        HyperStrategy {
            state: HyperStrategyState {
                phase: HyperPhase::Open,
                labels: BTreeMap::new(),
                block_centres: None,
                case: None,
                star1: 0,
                star2: 0,
                mirror: 0,
                ledgers: BTreeMap::new(),
                seen: 0,
                config,
            },
        }
    }

    pub fn stage(&self) -> u8 {
        stage_of(self.state.phase)
    }
}

fn stage_of(p: HyperPhase) -> u8 {
    use HyperPhase::*;
    match p {
        Open | AfterXYAB | AfterXYBC | AfterXAYC | AfterXYCD => 1,
        Stage2Entry | Star1 => 2,
        Stage3 | Mirror | AfterBlock => 3,
        Star2 | Done => 4,
    }
}

struct HTurn<'a> {
    st: &'a GameState,
    s: &'a mut HyperStrategyState,
    last: Option<Edge>,
    checks: Vec<CheckRecord>,
}

type HMove = Result<(Edge, String), StrategyError>;

impl HTurn<'_> {
    fn v(&self, r: &str) -> Result<u8, StrategyError> {
        self.s
            .labels
            .get(r)
            .map(|v| v.ordinal)
            .ok_or_else(|| StrategyError::Invariant(format!("role {r} unbound")))
    }

    fn bind(&mut self, r: &str, o: u8) {
        self.s.labels.insert(r.to_string(), VertexId::hyper(o));
    }

    fn swap(&mut self, r1: &str, r2: &str) -> Result<(), StrategyError> {
        let (a, b) = (self.v(r1)?, self.v(r2)?);
        self.bind(r1, b);
        self.bind(r2, a);
        Ok(())
    }

    fn he(&self, roles: [&str; 4]) -> Result<Edge, StrategyError> {
        let mut vs = [0u8; 4];
        for (i, r) in roles.iter().enumerate() {
            vs[i] = self.v(r)?;
        }
        Ok(Edge::hyper(vs)?)
    }

    fn fresh(&mut self, r: &str) -> Result<u8, StrategyError> {
        let v = self.st.lowest_free_vertex(0, &[])?;
        self.bind(r, v.ordinal);
        Ok(v.ordinal)
    }

    fn take(&self, roles: [&str; 4]) -> Result<Edge, StrategyError> {
        let e = self.he(roles)?;
        if !self.st.is_unclaimed(&e) {
            return Err(StrategyError::Invariant(format!("{} = {e} is already claimed", roles.concat())));
        }
        Ok(e)
    }

    fn go(&mut self, next: HyperPhase, roles: [&str; 4], case: &str) -> HMove {
        let e = self.take(roles)?;
        self.s.phase = next;
        Ok((e, case.to_string()))
    }

    fn check(&mut self, kind: &str, ok: bool, detail: serde_json::Value) {
        let case = self.s.case.clone().unwrap_or_else(|| format!("stage{}", stage_of(self.s.phase)));
        self.checks.push(CheckRecord { kind: kind.to_string(), case, ok, detail });
    }

    fn push_ledger(&mut self, name: &str, e: Edge) {
        self.s.ledgers.entry(name.to_string()).or_default().push(e);
    }

    fn xy(&self) -> Result<XYBoardView, StrategyError> {
        Ok(XYBoardView::new(self.v("X")?, self.v("Y")?)?)
    }

    fn dispatch(&mut self) -> HMove {
        use HyperPhase::*;
        match self.s.phase {
            Open => {
                let first = match self.last {
                    Some(Edge::Hyper(vs)) => Some(vs),
                    _ => None,
                };
                if let Some(vs) = first {
                    for (r, v) in ["T", "U", "V", "W"].iter().zip(vs) {
                        self.bind(r, v);
                    }
                }
                let mut picked = Vec::new();
                for _ in 0..4 {
                    let v = self.st.lowest_free_vertex(0, &picked)?;
                    picked.push(v);
                }
                for (r, v) in ["P0", "P1", "P2", "P3"].iter().zip(&picked) {
                    self.bind(r, v.ordinal);
                }
                self.go(AfterXYAB, ["P0", "P1", "P2", "P3"], "open")
            }
            AfterXYAB => {
                let ps: Vec<u8> = ["P0", "P1", "P2", "P3"].iter().map(|r| self.v(r)).collect::<Result<_, _>>()?;
                for r in ["P0", "P1", "P2", "P3"] {
                    self.s.labels.remove(r);
                }
                let x = match self.last {
                    Some(e) => ps.iter().copied().find(|&p| !e.contains(VertexId::hyper(p))),
                    None => Some(ps[0]),
                }
                .ok_or_else(|| StrategyError::Invariant("P1 hyperedge contains all of XYAB".into()))?;
                let rest: Vec<u8> = ps.into_iter().filter(|&p| p != x).collect();
                self.bind("X", x);
                for (r, v) in ["Y", "A", "B"].iter().zip(rest) {
                    self.bind(r, v);
                }
                self.fresh("C")?;
                self.go(AfterXYBC, ["X", "Y", "B", "C"], "stage1")
            }
            AfterXYBC => {
                if !self.st.is_unclaimed(&self.he(["X", "A", "Y", "C"])?) {
                    self.swap("Y", "B")?;
                }
                self.go(AfterXAYC, ["X", "A", "Y", "C"], "stage1")
            }
            AfterXAYC => {
                self.fresh("D")?;
                self.go(AfterXYCD, ["X", "Y", "C", "D"], "stage1")
            }
            AfterXYCD => {
                if !self.st.is_unclaimed(&self.he(["X", "Y", "D", "A"])?) {
                    self.swap("A", "B")?;
                }
                self.go(Stage2Entry, ["X", "Y", "D", "A"], "stage1")
            }
            Stage2Entry => self.stage2_entry(),
            Star1 => {
                let f = format!("F{}", self.s.star1);
                if self.last == Some(self.he(["X", "Y", "A0", &f])?) {
                    let e = self.last.expect("claim");
                    self.push_ledger("E1", e);
                    self.s.star1 += 1;
                    let next = format!("F{}", self.s.star1);
                    self.fresh(&next)?;
                    return self.go(Star1, ["X", "Y", "A1", &next], "stage2");
                }
                if let Some(e) = self.last {
                    self.push_ledger("E2", e);
                }
                self.go(Stage3, ["X", "Y", "A0", &f], "stage2")
            }
            Stage3 => self.stage3(),
            Mirror => self.mirror(),
            AfterBlock => self.start_star2(),
            Star2 => {
                let f = format!("F{}", self.s.star1 + self.s.star2);
                if self.last == Some(self.he(["X", "Y", "A0", &f])?) {
                    let e = self.last.expect("claim");
                    self.push_ledger("E5", e);
                    self.s.star2 += 1;
                    let next = format!("F{}", self.s.star1 + self.s.star2);
                    self.fresh(&next)?;
                    return self.go(Star2, ["X", "Y", "A1", &next], "stage4");
                }
                if let Some(e) = self.last {
                    self.push_ledger("E6", e);
                }
                self.go(Done, ["X", "Y", "A0", &f], "stage4")
            }
            Done => Err(StrategyError::Precondition("game already finished".into())),
        }
    }

    fn stage2_entry(&mut self) -> HMove {
        let xy = self.xy()?;
        let plane = xy.plane(self.st);
        let p1_total = self.st.edge_count(Player::P1);
        let p1_on_xy = plane.edges(Player::P1).len();
        let mut owned = true;
        for (a, b) in [("A", "B"), ("B", "C"), ("A", "C"), ("C", "D"), ("D", "A")] {
            owned &= plane.p2(self.v(a)?, self.v(b)?);
        }
        let ok = (p1_total == 6 || self.st.p1_stopped()) && p1_on_xy <= 4 && owned;
        self.check(
            "stage1_post",
            ok,
            serde_json::json!({ "p1_hyperedges": p1_total, "p1_on_xy": p1_on_xy, "p2_core": owned }),
        );
        let (a, c) = (self.v("A")?, self.v("C")?);
        let count = |x: u8, other: u8| {
            self.st
                .edges_of(Player::P1)
                .filter(|e| e.contains(VertexId::hyper(x)) && !e.contains(VertexId::hyper(other)))
                .count()
        };
        let mut choice = None;
        for (x, other) in [(a, c), (c, a)] {
            if special_violation(&plane, x).is_none() && count(x, other) <= 2 {
                choice = Some((x, other));
                break;
            }
        }
        self.check(
            "special_vertex",
            choice.is_some(),
            serde_json::json!({ "a_only": count(a, c), "c_only": count(c, a) }),
        );
        let (a0, a1) = choice.unwrap_or((a, c));
        self.bind("A0", a0);
        self.bind("A1", a1);
        self.s.ledgers.insert("E0".into(), self.st.edges_of(Player::P1).collect());
        self.s.star1 = 1;
        self.fresh("F1")?;
        self.go(HyperPhase::Star1, ["X", "Y", "A1", "F1"], "stage2")
    }

    fn stage3(&mut self) -> HMove {
        if let Some(e) = self.last {
            self.push_ledger("E2", e);
        }
        let first = ["T", "U", "V", "W"].iter().map(|r| self.v(r)).collect::<Result<Vec<u8>, _>>();
        let Ok(tuvw) = first else {
            self.s.case = Some("III".into());
            return self.start_star2();
        };
        let mut found = None;
        'outer: for i in 0..4 {
            for j in i + 1..4 {
                let (h, k) = (tuvw[i], tuvw[j]);
                let rest: Vec<u8> = tuvw.iter().copied().filter(|&v| v != h && v != k).collect();
                let plane = self.st.xy_plane(h, k);
                for pc in near_copies(&plane, Player::P1, 1) {
                    if pc.pairs().iter().any(|&(a, b)| (a.min(b), a.max(b)) == (rest[0], rest[1])) {
                        found = Some(([h, k], pc, plane));
                        break 'outer;
                    }
                }
            }
        }
        let Some((centres, pc, plane)) = found else {
            self.s.case = Some("III".into());
            return self.start_star2();
        };
        self.bind("H0", centres[0]);
        self.bind("H1", centres[1]);
        self.s.block_centres = Some(centres);
        let (c0, c1) = pc.base;
        if !plane.p1(c0, c1) {
            self.s.case = Some("II".into());
            self.bind("C0", c0);
            self.bind("C1", c1);
            return self.go(HyperPhase::AfterBlock, ["H0", "H1", "C0", "C1"], "stage3:II");
        }
        let mut pick = None;
        for &y in &pc.pendants {
            if !plane.p1(c0, y) {
                pick = Some((c0, c1, y));
                break;
            }
            if !plane.p1(c1, y) {
                pick = Some((c1, c0, y));
                break;
            }
        }
        let (ce, co, d) = pick.ok_or_else(|| StrategyError::Invariant("near copy misses no pendant".into()))?;
        self.s.case = Some("I".into());
        self.bind("C0", ce);
        self.bind("C1", co);
        self.bind("D1", d);
        self.s.mirror = 1;
        self.go(HyperPhase::Mirror, ["H0", "H1", "C0", "D1"], "stage3:I")
    }

    fn mirror(&mut self) -> HMove {
        let view = XYBoardView::new(self.v("H0")?, self.v("H1")?)?;
        let (c0, c1) = (self.v("C0")?, self.v("C1")?);
        if let Some((a, b)) = self.last.and_then(|e| view.project(&e)) {
            let hit = if a == c0 || a == c1 { Some((a, b)) } else if b == c0 || b == c1 { Some((b, a)) } else { None };
            if let Some((c, d)) = hit.filter(|&(_, d)| d != c0 && d != c1) {
                let other = if c == c0 { c1 } else { c0 };
                let counter = view.lift(other, d)?;
                if self.st.is_unclaimed(&counter) {
                    self.s.mirror += 1;
                    let role = format!("D{}", self.s.mirror);
                    self.bind(&role, d);
                    self.push_ledger("E3", self.last.expect("claim"));
                    let r_other = if c == c0 { "C1" } else { "C0" };
                    return self.go(HyperPhase::Mirror, ["H0", "H1", r_other, &role], "stage3:I");
                }
                let p1_owns = self.st.owned_by(&counter, Player::P1);
                self.check("mirror_counterpart", !p1_owns, serde_json::json!({ "edge": counter.to_string() }));
            }
        }
        self.start_star2()
    }

    fn start_star2(&mut self) -> HMove {
        self.s.star2 = 1;
        let f = format!("F{}", self.s.star1 + 1);
        self.fresh(&f)?;
        self.go(HyperPhase::Star2, ["X", "Y", "A1", &f], "stage4")
    }
}

impl Responder for HyperStrategy {
    fn respond(&mut self, state: &GameState) -> Result<Reply, StrategyError> {
        if state.to_move() != Player::P2 {
            return Err(StrategyError::Precondition("not P2's turn".into()));
        }
        if state.history().is_empty() {
            return Err(StrategyError::Precondition("no move played yet".into()));
        }
        let new = &state.history()[self.state.seen.min(state.history().len())..];
        let last = match new {
            [] if state.p1_stopped() => None,
            [Action::Claim { player: Player::P1, edge }] => Some(*edge),
            [Action::Stop] => None,
            _ => return Err(StrategyError::Precondition("expected exactly one P1 action".into())),
        };
        let mut turn = HTurn { st: state, s: &mut self.state, last, checks: Vec::new() };
        let stage = stage_of(turn.s.phase);
        let (edge, case) = turn.dispatch()?;
        let checks = turn.checks;
        if !state.is_unclaimed(&edge) {
            return Err(StrategyError::Invariant(format!("strategy chose claimed hyperedge {edge}")));
        }
        self.state.seen = state.history().len() + 1;
        let finished = self.state.phase == HyperPhase::Done;
        Ok(Reply { edge, case, ledger: None, checks, finished, stage: Some(stage) })
    }

    fn role_colors(&self) -> Vec<(VertexId, u32)> {
        let mut by_vertex: BTreeMap<VertexId, u32> = BTreeMap::new();
        for (name, &v) in &self.state.labels {
            let c = name.bytes().fold(7u32, |h, b| h.wrapping_mul(131).wrapping_add(b as u32));
            let e = by_vertex.entry(v).or_insert(0);
            *e = e.wrapping_mul(257).wrapping_add(c);
        }
        by_vertex.into_iter().collect()
    }

    fn phase_key(&self) -> String {
        format!("{:?}|{:?}", self.state.phase, self.state.case)
    }

    fn potential_base(&self) -> Option<[VertexId; 2]> {
        Some([*self.state.labels.get("A0")?, *self.state.labels.get("A1")?])
    }

    fn labels(&self) -> Vec<(String, VertexId)> {
        self.state.labels.iter().map(|(k, &v)| (k.clone(), v)).collect()
    }

    fn finished(&self) -> bool {
        self.state.phase == HyperPhase::Done
    }

    fn completion_bound(&self, _state: &GameState) -> usize {
        use HyperPhase::*;
        match self.state.phase {
            Open => 9,
            AfterXYAB => 8,
            AfterXYBC => 7,
            AfterXAYC => 6,
            AfterXYCD => 5,
            Stage2Entry => 4,
            Star1 => 3,
            Stage3 | Mirror | AfterBlock => 2,
            Star2 => 1,
            Done => 0,
        }
    }

    fn clone_box(&self) -> Box<dyn Responder + Send> {
        Box::new(self.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::board::BoardKind;

    fn brute_intersection(c1: [u8; 2], c2: [u8; 2], n: u8) -> usize {
        let mut count = 0;
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    for d in c + 1..n {
                        let vs = [a, b, c, d];
                        if c1.iter().chain(c2.iter()).all(|v| vs.contains(v)) {
                            count += 1;
                        }
                    }
                }
            }
        }
        count
    }

    #[test]
    fn intersections_match_scan() {
        for n in 8..=11 {
            assert_eq!(board_intersection([0, 1], [2, 3], n).unwrap(), brute_intersection([0, 1], [2, 3], n));
            assert_eq!(board_intersection([0, 1], [1, 5], n).unwrap(), brute_intersection([0, 1], [1, 5], n));
        }
        assert_eq!(board_intersection([0, 1], [2, 3], 8).unwrap(), 1);
        assert_eq!(board_intersection([0, 1], [0, 2], 10).unwrap(), 7);
        assert!(board_intersection([0, 1], [1, 0], 10).is_err());
    }

    #[test]
    fn view_round_trips() {
        let v = XYBoardView::new(5, 2).unwrap();
        let e = v.lift(0, 7).unwrap();
        assert_eq!(e.to_string(), "h:0-2-5-7");
        assert_eq!(v.project(&e), Some((0, 7)));
        assert_eq!(v.project(&Edge::hyper([0, 1, 2, 3]).unwrap()), None);
        assert_eq!(XYBoardView::size(10), 28);
    }

    #[test]
    fn opening_takes_four_fresh_vertices() {
        let s = GameState::new(BoardKind::Hyper4, 12).unwrap();
        let s = s.apply_move(Player::P1, "h:0-1-2-3".parse().unwrap()).unwrap();
        let mut h = HyperStrategy::new(StrategyConfig::default());
        let r = h.respond(&s).unwrap();
        assert_eq!(r.edge.to_string(), "h:4-5-6-7");
        assert_eq!(r.stage, Some(1));
    }
}

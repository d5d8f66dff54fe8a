//! Copies of G (the base edge plus four cherries) and of its 4-uniform lift.
//!
//! A copy is identified by its base pair and its pendant 4-set, so the 48
//! automorphic images of one embedding collapse to a single record.

use serde::{Deserialize, Serialize};

use crate::board::{bits, BoardKind, Edge, GameState, Ownership, Plane, Player, VertexId};

/// A copy of G inside one plane, by vertex index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PlaneCopy {
    pub base: (u8, u8),
    pub pendants: [u8; 4],
}

impl PlaneCopy {
    pub fn pairs(&self) -> [(u8, u8); 9] {
        let (a0, a1) = self.base;
        let mut out = [(a0, a1); 9];
        for (i, &b) in self.pendants.iter().enumerate() {
            out[1 + 2 * i] = (a0, b);
            out[2 + 2 * i] = (a1, b);
        }
        out
    }

    pub fn count(&self, plane: &Plane, p: Player) -> u32 {
        self.pairs()
            .iter()
            .filter(|&&(a, b)| plane.owner(a, b) == Ownership::from(p))
            .count() as u32
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GCopy {
    pub base: [VertexId; 2],
    pub pendants: [VertexId; 4],
}

impl GCopy {
    pub fn from_plane(copy: u8, pc: &PlaneCopy) -> GCopy {
        let v = |o| VertexId::new(copy, o);
        GCopy {
            base: [v(pc.base.0), v(pc.base.1)],
            pendants: pc.pendants.map(v),
        }
    }

    /// The nine edges of a copy living in a clique copy.
    pub fn edges(&self) -> Vec<Edge> {
        let mut out = vec![Edge::pair(self.base[0], self.base[1]).expect("valid copy")];
        for &b in &self.pendants {
            for &a in &self.base {
                out.push(Edge::pair(a, b).expect("valid copy"));
            }
        }
        out
    }

    pub fn vertices(&self) -> Vec<VertexId> {
        self.base.iter().chain(self.pendants.iter()).copied().collect()
    }
}

/// G′: centres X,Y plus an inner G on six further vertices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GPrimeCopy {
    pub centres: [u8; 2],
    pub inner: PlaneCopyRepr,
}

/// Serializable mirror of [`PlaneCopy`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PlaneCopyRepr {
    pub base: [u8; 2],
    pub pendants: [u8; 4],
}

impl From<PlaneCopy> for PlaneCopyRepr {
    fn from(pc: PlaneCopy) -> Self {
        PlaneCopyRepr { base: [pc.base.0, pc.base.1], pendants: pc.pendants }
    }
}

impl From<PlaneCopyRepr> for PlaneCopy {
    fn from(r: PlaneCopyRepr) -> Self {
        PlaneCopy { base: (r.base[0], r.base[1]), pendants: r.pendants }
    }
}

impl GPrimeCopy {
    pub fn hyperedges(&self) -> Vec<Edge> {
        let [x, y] = self.centres;
        PlaneCopy::from(self.inner)
            .pairs()
            .iter()
            .map(|&(a, b)| Edge::hyper([x, y, a, b]).expect("centres disjoint from inner"))
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum TargetCopy {
    G(GCopy),
    GPrime(GPrimeCopy),
}

impl TargetCopy {
    pub fn edges(&self) -> Vec<Edge> {
        match self {
            TargetCopy::G(g) => g.edges(),
            TargetCopy::GPrime(g) => g.hyperedges(),
        }
    }
}

/// An unclaimed edge whose claim completes a copy for the threatening player.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Threat {
    pub edge: Edge,
    pub copy: TargetCopy,
}

fn four_subsets(items: &[u8], mut f: impl FnMut([u8; 4])) {
    let k = items.len();
    for i in 0..k {
        for j in i + 1..k {
            for l in j + 1..k {
                for m in l + 1..k {
                    f([items[i], items[j], items[l], items[m]]);
                }
            }
        }
    }
}

fn row(plane: &Plane, p: Player, v: u8) -> u64 {
    match p {
        Player::P1 => plane.p1_row(v),
        Player::P2 => plane.p2_row(v),
    }
}

/// Every copy of G fully owned by `p` in `plane`.
pub fn plane_copies_owned(plane: &Plane, p: Player) -> Vec<PlaneCopy> {
    let mut out = Vec::new();
    for (a0, a1) in plane.edges(p) {
        let common: Vec<u8> = bits(row(plane, p, a0) & row(plane, p, a1)).collect();
        four_subsets(&common, |pendants| out.push(PlaneCopy { base: (a0, a1), pendants }));
    }
    out
}

/// Copies of G free of the opponent in which `p` owns exactly `9 - missing`
/// edges.
pub fn near_copies(plane: &Plane, p: Player, missing: u32) -> Vec<PlaneCopy> {
    let q = p.other();
    let mut out = Vec::new();
    let verts: Vec<u8> = plane.vertices().collect();
    for (i, &a0) in verts.iter().enumerate() {
        for &a1 in &verts[i + 1..] {
            let base_own = plane.owner(a0, a1);
            if base_own == Ownership::from(q) {
                continue;
            }
            let base_gain = u32::from(base_own == Ownership::from(p));
            if base_gain + 8 + missing < 9 {
                continue;
            }
            let blocked = row(plane, q, a0) | row(plane, q, a1);
            let mut cherries: Vec<(u8, u32)> = Vec::new();
            for y in plane.vertices() {
                if y == a0 || y == a1 || blocked >> y & 1 == 1 {
                    continue;
                }
                let w = (row(plane, p, a0) >> y & 1) as u32 + (row(plane, p, a1) >> y & 1) as u32;
                if w + missing >= 2 {
                    cherries.push((y, w));
                }
            }
            let ids: Vec<u8> = cherries.iter().map(|c| c.0).collect();
            four_subsets(&ids, |pendants| {
                let w: u32 = pendants
                    .iter()
                    .map(|y| cherries.iter().find(|c| c.0 == *y).unwrap().1)
                    .sum();
                if base_gain + w + missing == 9 {
                    out.push(PlaneCopy { base: (a0, a1), pendants });
                }
            });
        }
    }
    out
}

/// Per-base counting bound on e_P1, and its maximum.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BaseBounds {
    pub per_base: Vec<((u8, u8), u32)>,
    pub max: u32,
}

/// For every pair X0X1 not owned by P2: the P1 edges X_iY with YX_{1-i} not
/// owned by P2, plus X0X1 itself if P1 owns it.
pub fn max_ep1_over_bases(plane: &Plane) -> BaseBounds {
    let verts: Vec<u8> = plane.vertices().collect();
    let mut per_base = Vec::new();
    let mut max = 0;
    for (i, &x0) in verts.iter().enumerate() {
        for &x1 in &verts[i + 1..] {
            if plane.p2(x0, x1) {
                continue;
            }
            let mut c = u32::from(plane.p1(x0, x1));
            let (r0, r1) = (plane.p1_row(x0) & !(1u64 << x1), plane.p1_row(x1) & !(1u64 << x0));
            c += (r0 & !plane.p2_row(x1)).count_ones();
            c += (r1 & !plane.p2_row(x0)).count_ones();
            max = max.max(c);
            per_base.push(((x0, x1), c));
        }
    }
    BaseBounds { per_base, max }
}

/// Exact maximum of e_P1 over all copies of G in the plane.
pub fn exact_max_ep1(plane: &Plane) -> u32 {
    let verts: Vec<u8> = plane.vertices().collect();
    let mut best = 0;
    for (i, &a0) in verts.iter().enumerate() {
        for &a1 in &verts[i + 1..] {
            if plane.p2(a0, a1) {
                continue;
            }
            let blocked = plane.p2_row(a0) | plane.p2_row(a1);
            let mut ws: Vec<u32> = verts
                .iter()
                .filter(|&&y| y != a0 && y != a1 && blocked >> y & 1 == 0)
                .map(|&y| u32::from(plane.p1(a0, y)) + u32::from(plane.p1(a1, y)))
                .collect();
            if ws.len() < 4 {
                continue;
            }
            ws.sort_unstable_by(|a, b| b.cmp(a));
            let v = u32::from(plane.p1(a0, a1)) + ws[..4].iter().sum::<u32>();
            best = best.max(v);
        }
    }
    best
}

pub fn find_g_copies(state: &GameState, player: Player, copy: u8) -> Vec<GCopy> {
    plane_copies_owned(&state.plane(copy), player)
        .iter()
        .map(|pc| GCopy::from_plane(copy, pc))
        .collect()
}

/// Edges of `player` inside `copy` if the opponent has none there, else 0.
pub fn e_p(state: &GameState, player: Player, copy: &TargetCopy) -> u32 {
    let mut mine = 0;
    for e in copy.edges() {
        match state.owner(&e) {
            Ownership::Unclaimed => {}
            o if o == Ownership::from(player) => mine += 1,
            _ => return 0,
        }
    }
    mine
}

pub fn e_p1(state: &GameState, copy: &GCopy) -> u32 {
    e_p(state, Player::P1, &TargetCopy::G(*copy))
}

pub fn e_p2(state: &GameState, copy: &GCopy) -> u32 {
    e_p(state, Player::P2, &TargetCopy::G(*copy))
}

fn centre_pairs(n: u8) -> impl Iterator<Item = (u8, u8)> {
    (0..n).flat_map(move |x| (x + 1..n).map(move |y| (x, y)))
}

pub fn find_gprime_copies(state: &GameState, player: Player) -> Vec<GPrimeCopy> {
    let mut out = Vec::new();
    for (x, y) in centre_pairs(state.n()) {
        for pc in plane_copies_owned(&state.xy_plane(x, y), player) {
            out.push(GPrimeCopy { centres: [x, y], inner: pc.into() });
        }
    }
    out
}

pub fn threats(state: &GameState, player: Player) -> Vec<Threat> {
    let missing_pair = |plane: &Plane, pc: &PlaneCopy| {
        pc.pairs()
            .into_iter()
            .find(|&(a, b)| plane.owner(a, b) == Ownership::Unclaimed)
            .expect("near copy misses one edge")
    };
    let mut out = Vec::new();
    match state.kind() {
        BoardKind::TwoCliques => {
            for copy in 1..=2 {
                let plane = state.plane(copy);
                for pc in near_copies(&plane, player, 1) {
                    let (a, b) = missing_pair(&plane, &pc);
                    out.push(Threat {
                        edge: Edge::graph(copy, a, b).expect("same copy"),
                        copy: TargetCopy::G(GCopy::from_plane(copy, &pc)),
                    });
                }
            }
        }
        BoardKind::Hyper4 => {
            for (x, y) in centre_pairs(state.n()) {
                let plane = state.xy_plane(x, y);
                for pc in near_copies(&plane, player, 1) {
                    let (a, b) = missing_pair(&plane, &pc);
                    out.push(Threat {
                        edge: Edge::hyper([x, y, a, b]).expect("distinct"),
                        copy: TargetCopy::GPrime(GPrimeCopy { centres: [x, y], inner: pc.into() }),
                    });
                }
            }
        }
    }
    out
}

/// Whether some owned copy of G in `plane` uses the pair `u`-`v`.
pub fn plane_copy_through(plane: &Plane, p: Player, u: u8, v: u8) -> bool {
    let (ru, rv) = (row(plane, p, u), row(plane, p, v));
    if ru >> v & 1 == 0 {
        return false;
    }
    if (ru & rv).count_ones() >= 4 {
        return true;
    }
    // uv as a pendant edge: one endpoint is in the base with partner w
    for (b, ra, rb) in [(v, ru, rv), (u, rv, ru)] {
        for w in bits(ra & rb) {
            let rw = row(plane, p, w);
            if (ra & rw & !(1u64 << b)).count_ones() >= 3 {
                return true;
            }
        }
    }
    false
}

/// Whether `player`, already owning `edge`, owns a target copy through it.
pub fn completes_copy(state: &GameState, player: Player, edge: &Edge) -> bool {
    match *edge {
        Edge::Graph { copy, a, b } => plane_copy_through(&state.plane(copy), player, a, b),
        Edge::Hyper(vs) => {
            for i in 0..4 {
                for j in i + 1..4 {
                    let rest: Vec<u8> = (0..4).filter(|&k| k != i && k != j).map(|k| vs[k]).collect();
                    let plane = state.xy_plane(vs[i], vs[j]);
                    if plane_copy_through(&plane, player, rest[0], rest[1]) {
                        return true;
                    }
                }
            }
            false
        }
    }
}

/// Whether `player` owns any target copy anywhere on the board.
pub fn owns_target(state: &GameState, player: Player) -> bool {
    match state.kind() {
        BoardKind::TwoCliques => {
            (1..=2).any(|c| !plane_copies_owned(&state.plane(c), player).is_empty())
        }
        BoardKind::Hyper4 => centre_pairs(state.n())
            .any(|(x, y)| !plane_copies_owned(&state.xy_plane(x, y), player).is_empty()),
    }
}

//! Checkable predicates behind the endgame: potential bases, good and bad
//! edges, 2Δ-configurations, the sufficient condition for a potential base,
//! the endgame preconditions and the lost-edge ledger.
//!
//! Everything works on a [`Plane`], so the same code serves the second clique
//! copy and the XY board of the hypergraph game.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::board::{bits, GameState, Plane, Player};
use crate::patterns::{exact_max_ep1, max_ep1_over_bases};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PotentialBaseWitness {
    /// `[A0, A1]` with `A0` the special vertex.
    pub base: [u8; 2],
    pub special: u8,
    pub book: [u8; 2],
}

impl PotentialBaseWitness {
    pub fn a0(&self) -> u8 {
        self.base[0]
    }

    pub fn a1(&self) -> u8 {
        self.base[1]
    }
}

/// A P1 configuration that disqualifies a special vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    Triangle { x: u8, t1: u8, t2: u8 },
    FourCycle { x: u8, c1: u8, c2: u8, c3: u8 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum Refutation {
    NoBook,
    Blocked { violations: Vec<Violation> },
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum LemmaError {
    #[error("base {0}-{1} is not owned by P2")]
    BaseNotP2(u8, u8),
    #[error("special vertex {0} is not an endpoint of the base")]
    BadSpecial(u8),
    #[error("new P1 edges do not split into a star plus extras: {0}")]
    Decomposition(String),
}

/// First P1 triangle or P1 4-cycle through `x` that violates the special
/// vertex conditions, if any.
pub fn special_violation(plane: &Plane, x: u8) -> Option<Violation> {
    let nx = plane.p1_row(x);
    for t1 in bits(nx) {
        if let Some(t2) = bits(plane.p1_row(t1) & nx & !((2u64 << t1) - 1)).next() {
            return Some(Violation::Triangle { x, t1, t2 });
        }
    }
    for c1 in bits(nx) {
        for c3 in bits(nx & !((2u64 << c1) - 1)) {
            let c2s = plane.p1_row(c1) & plane.p1_row(c3) & !(1u64 << x) & !plane.p2_row(x);
            if let Some(c2) = bits(c2s).next() {
                return Some(Violation::FourCycle { x, c1, c2, c3 });
            }
        }
    }
    None
}

/// Common P2 neighbours of the two base endpoints.
pub fn book(plane: &Plane, a0: u8, a1: u8) -> Vec<u8> {
    bits(plane.p2_row(a0) & plane.p2_row(a1)).collect()
}

/// Tests whether `a0a1` is a potential base, trying `special` only when given
/// and otherwise `a0` before `a1`.
pub fn is_potential_base(
    plane: &Plane,
    a0: u8,
    a1: u8,
    special: Option<u8>,
) -> Result<Result<PotentialBaseWitness, Refutation>, LemmaError> {
    if !plane.p2(a0, a1) {
        return Err(LemmaError::BaseNotP2(a0, a1));
    }
    let candidates = match special {
        Some(x) if x == a0 || x == a1 => vec![x],
        Some(x) => return Err(LemmaError::BadSpecial(x)),
        None => vec![a0, a1],
    };
    let bk = book(plane, a0, a1);
    if bk.len() < 2 {
        return Ok(Err(Refutation::NoBook));
    }
    let mut violations = Vec::new();
    for x in candidates {
        match special_violation(plane, x) {
            None => {
                let other = if x == a0 { a1 } else { a0 };
                return Ok(Ok(PotentialBaseWitness { base: [x, other], special: x, book: [bk[0], bk[1]] }));
            }
            Some(v) => violations.push(v),
        }
    }
    Ok(Err(Refutation::Blocked { violations }))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum EdgeClass {
    Good,
    Bad,
}

/// Classifies a P1 edge of the plane for the base `a0a1`. Edges of the first
/// clique copy are always good and never reach this function.
pub fn classify_pair(plane: &Plane, base: (u8, u8), x1: u8, x2: u8) -> EdgeClass {
    let (a0, a1) = base;
    let disjoint = ![a0, a1].contains(&x1) && ![a0, a1].contains(&x2);
    let hit0 = plane.p2(a0, x1) || plane.p2(a0, x2);
    let hit1 = plane.p2(a1, x1) || plane.p2(a1, x2);
    if disjoint && hit0 && hit1 {
        EdgeClass::Good
    } else {
        EdgeClass::Bad
    }
}

pub fn bad_edges(plane: &Plane, a0: u8, a1: u8) -> Vec<(u8, u8)> {
    plane
        .edges(Player::P1)
        .into_iter()
        .filter(|&(x1, x2)| classify_pair(plane, (a0, a1), x1, x2) == EdgeClass::Bad)
        .collect()
}

/// A pair X1X2 off the base with all five 2Δ edges owned by P1.
pub fn has_two_delta(plane: &Plane, a0: u8, a1: u8) -> Option<(u8, u8)> {
    let common = plane.p1_row(a0) & plane.p1_row(a1) & !(1u64 << a0) & !(1u64 << a1);
    for x1 in bits(common) {
        if let Some(x2) = bits(plane.p1_row(x1) & common & !((2u64 << x1) - 1)).next() {
            return Some((x1, x2));
        }
    }
    None
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum Lemma3Failure {
    TooManyBad { count: usize },
    TwoDelta { x1: u8, x2: u8 },
    NoBook,
}

/// The sufficient condition: at most five bad edges, no 2Δ-configuration and a
/// P2 book on the base.
pub fn lemma3_check(plane: &Plane, a0: u8, a1: u8) -> Result<(), Vec<Lemma3Failure>> {
    let mut fails = Vec::new();
    let bad = bad_edges(plane, a0, a1).len();
    if bad > 5 {
        fails.push(Lemma3Failure::TooManyBad { count: bad });
    }
    if let Some((x1, x2)) = has_two_delta(plane, a0, a1) {
        fails.push(Lemma3Failure::TwoDelta { x1, x2 });
    }
    if book(plane, a0, a1).len() < 2 {
        fails.push(Lemma3Failure::NoBook);
    }
    if fails.is_empty() {
        Ok(())
    } else {
        Err(fails)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "condition", rename_all = "snake_case")]
pub enum Lemma2Failure {
    /// (a) more than six P1 edges in the first copy.
    FirstCopy { p1_edges: usize },
    /// (b) some copy of G in the second copy has e_P1 above five.
    EP1 { bound: u32, exact: u32 },
    /// (c) the recorded base is not a potential base.
    Base { refutation: Refutation },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Lemma2Report {
    pub first_copy_p1: usize,
    pub counting_bound: u32,
    pub exact_max: Option<u32>,
    pub failures: Vec<Lemma2Failure>,
}

impl Lemma2Report {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks the endgame preconditions at P2's turn. `k1` is the clique copy
/// holding P1's first edge; the witness lives in the other copy.
pub fn lemma2_preconditions(state: &GameState, k1: u8, w: &PotentialBaseWitness) -> Lemma2Report {
    let first = state.plane(k1).edges(Player::P1).len();
    let plane = state.plane(3 - k1);
    check_lemma2(first, &plane, w)
}

/// Plane form of [`lemma2_preconditions`], given the first-copy P1 count.
pub fn check_lemma2(first_copy_p1: usize, plane: &Plane, w: &PotentialBaseWitness) -> Lemma2Report {
    let mut failures = Vec::new();
    if first_copy_p1 > 6 {
        failures.push(Lemma2Failure::FirstCopy { p1_edges: first_copy_p1 });
    }
    let bound = max_ep1_over_bases(plane).max;
    let mut exact_max = None;
    if bound > 5 {
        let exact = exact_max_ep1(plane);
        exact_max = Some(exact);
        if exact > 5 {
            failures.push(Lemma2Failure::EP1 { bound, exact });
        }
    }
    match is_potential_base(plane, w.a0(), w.a1(), Some(w.special)) {
        Ok(Ok(_)) => {}
        Ok(Err(refutation)) => failures.push(Lemma2Failure::Base { refutation }),
        Err(_) => failures.push(Lemma2Failure::Base { refutation: Refutation::NoBook }),
    }
    Lemma2Report { first_copy_p1, counting_bound: bound, exact_max, failures }
}

/// P1 triangles through `x`.
pub fn triangles_through(plane: &Plane, x: u8) -> u32 {
    let nx = plane.p1_row(x);
    bits(nx).map(|t| (plane.p1_row(t) & nx).count_ones()).sum::<u32>() / 2
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StarBound {
    pub star: Vec<u8>,
    pub extras: usize,
    /// Triangles through X before the star, plus one per extra edge.
    pub bound: u32,
    pub triangles: u32,
}

impl StarBound {
    pub fn holds(&self) -> bool {
        self.triangles <= self.bound
    }
}

/// Splits the P1 edges added between `before` and `after` into a star from
/// `x` to vertices that were P1-free in `before`, plus extras, and compares the
/// triangles through `x` with the resulting bound.
pub fn star_triangle_bound(before: &Plane, after: &Plane, x: u8) -> Result<StarBound, LemmaError> {
    let mut star = Vec::new();
    let mut extras = 0;
    for (a, b) in after.edges(Player::P1) {
        if before.p1(a, b) {
            continue;
        }
        let other = if a == x { Some(b) } else if b == x { Some(a) } else { None };
        match other {
            Some(f) if before.p1_row(f) == 0 && !star.contains(&f) => star.push(f),
            _ => extras += 1,
        }
    }
    for (a, b) in before.edges(Player::P1) {
        if !after.p1(a, b) {
            return Err(LemmaError::Decomposition(format!("edge {a}-{b} disappeared")));
        }
    }
    let bound = triangles_through(before, x) + extras as u32;
    Ok(StarBound { star, extras, bound, triangles: triangles_through(after, x) })
}

/// Lost-edge accounting: with `k + 1` P1 edges in total, every copy of G in
/// the second clique copy has e_P1 at most `k - l`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LostEdgeLedger {
    pub k: u32,
    pub l: u32,
}

impl LostEdgeLedger {
    pub fn at(state: &GameState, l: u32) -> LostEdgeLedger {
        LostEdgeLedger { k: (state.edge_count(Player::P1) as u32).saturating_sub(1), l }
    }

    /// The counting bound on the given plane.
    pub fn bound(&self, plane: &Plane) -> u32 {
        max_ep1_over_bases(plane).max
    }

    pub fn holds(&self, plane: &Plane) -> bool {
        self.k >= self.l && self.bound(plane) <= self.k - self.l
    }
}

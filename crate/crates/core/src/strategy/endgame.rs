use serde::{Deserialize, Serialize};

use super::{P1Input, Phase, StrategyError, Turn};
use crate::board::{Edge, Player, VertexId};
use crate::lemma::{book, is_potential_base, lemma2_preconditions, PotentialBaseWitness};
use crate::patterns::near_copies;

/// Stages after an end-case: the first star, blocking in the first copy and
/// the second star.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EndStage {
    Star1,
    AfterStar1,
    Mirror,
    AfterBlock,
    Star2,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SpecialStage {
    Entry,
    AfterEj,
    Star,
}

type Move = Result<(Edge, String), StrategyError>;

impl Turn<'_> {
    fn push_ledger(&mut self, name: &str, e: Edge) {
        self.s.ledgers.entry(name.to_string()).or_default().push(e);
    }

    fn p1_edges_in(&self, copy: u8) -> Vec<Edge> {
        self.st.edges_of(Player::P1).filter(|e| e.copy() == copy).collect()
    }

    fn star_role(i: u32) -> String {
        format!("F{i}")
    }

    /// Binds the endgame roles from the recorded base and plays `A1F1`.
    pub(super) fn end_entry(&mut self) -> Move {
        let k2 = self.s.k2();
        let [r0, r1] = self
            .s
            .base_roles
            .clone()
            .ok_or_else(|| StrategyError::Invariant("end-case without base".into()))?;
        let (u, w) = (self.v(&r0)?, self.v(&r1)?);
        let plane = self.st.plane(k2);
        let witness = match is_potential_base(&plane, u.ordinal, w.ordinal, None) {
            Ok(Ok(wt)) => wt,
            other => {
                let bk = book(&plane, u.ordinal, w.ordinal);
                self.check(
                    "potential_base",
                    false,
                    serde_json::json!({ "base": [u.to_string(), w.to_string()], "result": format!("{other:?}") }),
                );
                let b = [bk.first().copied().unwrap_or(u.ordinal), bk.get(1).copied().unwrap_or(w.ordinal)];
                PotentialBaseWitness { base: [u.ordinal, w.ordinal], special: u.ordinal, book: b }
            }
        };
        let report = lemma2_preconditions(self.st, self.s.k1, &witness);
        self.check("lemma2", report.holds(), serde_json::to_value(&report).unwrap_or_default());
        self.bind("A0", VertexId::new(k2, witness.a0()));
        self.bind("A1", VertexId::new(k2, witness.a1()));
        self.bind("B1", VertexId::new(k2, witness.book[0]));
        self.bind("B2", VertexId::new(k2, witness.book[1]));
        let e01 = self.p1_edges_in(self.s.k1);
        let e02 = self.p1_edges_in(k2);
        self.s.ledgers.insert("E0_1".into(), e01);
        self.s.ledgers.insert("E0_2".into(), e02);
        self.s.star1 = 1;
        self.fresh("F1", k2)?;
        self.s.phase = Phase::Endgame(EndStage::Star1);
        Ok((self.take("A1", "F1")?, "endgame:star1".into()))
    }

    pub(super) fn endgame(&mut self, stage: EndStage) -> Move {
        match stage {
            EndStage::Star1 => {
                let f = Self::star_role(self.s.star1);
                if self.last_is("A0", &f)? {
                    let e = self.e("A0", &f)?;
                    self.push_ledger("E1", e);
                    self.s.star1 += 1;
                    let next = Self::star_role(self.s.star1);
                    self.fresh(&next, self.s.k2())?;
                    return Ok((self.take("A1", &next)?, "endgame:star1".into()));
                }
                if let Some(e) = self.last_p1_edge() {
                    self.push_ledger("E2", e);
                }
                self.s.phase = Phase::Endgame(EndStage::AfterStar1);
                Ok((self.take("A0", &f)?, "endgame:star1".into()))
            }
            EndStage::AfterStar1 => {
                let e = match self.input {
                    P1Input::Claim(e) => e,
                    _ => return self.start_star2("endgame:star2"),
                };
                self.push_ledger("E2", e);
                let plane = self.st.plane(self.s.k1);
                let near = near_copies(&plane, Player::P1, 1);
                let k1 = self.s.k1;
                self.check(
                    "first_copy_threats",
                    near.len() <= 1,
                    serde_json::json!({ "threats": near.len() }),
                );
                let Some(pc) = near.first() else {
                    return self.start_star2("endgame:III");
                };
                let (c0, c1) = pc.base;
                if !plane.p1(c0, c1) {
                    self.bind("C0", VertexId::new(k1, c0));
                    self.bind("C1", VertexId::new(k1, c1));
                    self.s.phase = Phase::Endgame(EndStage::AfterBlock);
                    return Ok((self.take("C0", "C1")?, "endgame:II".into()));
                }
                let (mut a, mut b, mut d) = (c0, c1, 0);
                for &y in &pc.pendants {
                    if !plane.p1(c0, y) {
                        d = y;
                        break;
                    }
                    if !plane.p1(c1, y) {
                        (a, b, d) = (c1, c0, y);
                        break;
                    }
                }
                self.bind("C0", VertexId::new(k1, a));
                self.bind("C1", VertexId::new(k1, b));
                self.bind("D1", VertexId::new(k1, d));
                self.s.mirror = 1;
                self.s.phase = Phase::Endgame(EndStage::Mirror);
                Ok((self.take("C0", "D1")?, "endgame:I".into()))
            }
            EndStage::Mirror => {
                if let Some(e) = self.last_p1_edge() {
                    let (c0, c1) = (self.v("C0")?, self.v("C1")?);
                    let pick = if e.contains(c0) && !e.contains(c1) {
                        Some(("C0", "C1", c0))
                    } else if e.contains(c1) && !e.contains(c0) {
                        Some(("C1", "C0", c1))
                    } else {
                        None
                    };
                    if let Some((_, other, c)) = pick {
                        let d = e.other(c).expect("endpoint");
                        let was_free = self.st.degree(Player::P1, d) == 1 && self.st.degree(Player::P2, d) == 0;
                        if was_free {
                            self.s.mirror += 1;
                            let role = format!("D{}", self.s.mirror);
                            self.bind(&role, d);
                            self.push_ledger("Mirror", e);
                            return Ok((self.take(other, &role)?, "endgame:I".into()));
                        }
                    }
                }
                self.start_star2("endgame:star2")
            }
            EndStage::AfterBlock => self.start_star2("endgame:star2"),
            EndStage::Star2 => {
                let f = Self::star_role(self.s.star1 + self.s.star2);
                if self.last_is("A0", &f)? {
                    let e = self.e("A0", &f)?;
                    self.push_ledger("E3", e);
                    self.s.star2 += 1;
                    let next = Self::star_role(self.s.star1 + self.s.star2);
                    self.fresh(&next, self.s.k2())?;
                    return Ok((self.take("A1", &next)?, "endgame:star2".into()));
                }
                if let Some(e) = self.last_p1_edge() {
                    self.push_ledger("E4", e);
                }
                self.s.phase = Phase::Done;
                Ok((self.take("A0", &f)?, "endgame:star2".into()))
            }
        }
    }

    fn start_star2(&mut self, case: &str) -> Move {
        self.s.star2 = 1;
        let f = Self::star_role(self.s.star1 + 1);
        self.fresh(&f, self.s.k2())?;
        self.s.phase = Phase::Endgame(EndStage::Star2);
        Ok((self.take("A1", &f)?, case.to_string()))
    }

    /// P1 answered all three edges of the F-star.
    pub(super) fn start_special1(&mut self) -> Move {
        self.s.phase = Phase::Special1(SpecialStage::Entry);
        Ok((self.take("E", "I")?, "special1".into()))
    }

    /// P1 failed to answer at star vertex `i` (0-based).
    pub(super) fn start_special2(&mut self, i: u8) -> Move {
        let roles = ["I", "J", "K"];
        let xs: Vec<VertexId> = roles[..=i as usize].iter().map(|r| self.v(r)).collect::<Result<_, _>>()?;
        let k = xs[i as usize];
        for r in roles {
            self.s.labels.remove(r);
        }
        self.bind("K", k);
        for (j, &x) in xs[..i as usize].iter().enumerate() {
            self.bind(roles[j], x);
            let f = self.v("F")?;
            let b = self.v("B")?;
            self.s.conceded.insert(Edge::pair(f, x)?);
            self.s.granted.insert(Edge::pair(b, x)?);
        }
        self.s.virtual_granted = 2 - i as u32;
        self.check(
            "special2_grant",
            true,
            serde_json::json!({
                "conceded": self.s.conceded.iter().map(|e| e.to_string()).collect::<Vec<_>>(),
                "granted": self.s.granted.iter().map(|e| e.to_string()).collect::<Vec<_>>(),
                "virtual": self.s.virtual_granted,
            }),
        );
        self.s.phase = Phase::Special2(SpecialStage::Entry);
        Ok((self.take("B", "K")?, "special2".into()))
    }

    pub(super) fn special1(&mut self, stage: SpecialStage) -> Move {
        match stage {
            SpecialStage::Entry => {
                if !self.unclaimed("E", "J")? {
                    if !self.unclaimed("E", "K")? {
                        return Err(StrategyError::Invariant("P1 holds both EJ and EK".into()));
                    }
                    self.swap("J", "K")?;
                }
                self.s.phase = Phase::Special1(SpecialStage::AfterEj);
                Ok((self.take("E", "J")?, "special1".into()))
            }
            SpecialStage::AfterEj => {
                let has_ek = self.p1_has("E", "K")?;
                self.record_ledger(if has_ek { 4 } else { 3 });
                if !has_ek {
                    self.s.phase = Phase::Done;
                    self.s.base_roles = Some(["E".into(), "F".into()]);
                    return Ok((self.take("E", "K")?, "special1".into()));
                }
                self.s.lstar = 1;
                self.fresh("L1", self.s.k2())?;
                self.s.phase = Phase::Special1(SpecialStage::Star);
                Ok((self.take("F", "L1")?, "special1:star".into()))
            }
            SpecialStage::Star => self.l_star("F", "E", "special1:star", ["E", "F"]),
        }
    }

    pub(super) fn special2(&mut self, stage: SpecialStage) -> Move {
        match stage {
            SpecialStage::Entry => {
                self.record_ledger(3);
                self.s.lstar = 1;
                self.fresh("L1", self.s.k2())?;
                self.s.phase = Phase::Special2(SpecialStage::Star);
                Ok((self.take("B", "L1")?, "special2:star".into()))
            }
            SpecialStage::Star => self.l_star("B", "F", "special2:star", ["B", "F"]),
            SpecialStage::AfterEj => Err(StrategyError::Invariant("no such stage".into())),
        }
    }

    /// P2 threatens from `hub`; P1 must answer at `other`.
    fn l_star(&mut self, hub: &str, other: &str, case: &str, base: [&str; 2]) -> Move {
        let l = format!("L{}", self.s.lstar);
        if self.last_is(other, &l)? {
            let e = self.e(other, &l)?;
            self.push_ledger("L", e);
            self.s.lstar += 1;
            let next = format!("L{}", self.s.lstar);
            self.fresh(&next, self.s.k2())?;
            return Ok((self.take(hub, &next)?, case.to_string()));
        }
        self.s.phase = Phase::Done;
        self.s.base_roles = Some(base.map(str::to_string));
        Ok((self.take(other, &l)?, case.to_string()))
    }
}

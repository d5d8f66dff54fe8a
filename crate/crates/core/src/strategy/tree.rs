use serde::{Deserialize, Serialize};

use super::{Phase, StrategyError, Turn};
use crate::board::{Edge, Player};
use crate::lemma::is_potential_base;

/// Waiting points of the case tree. `*Probe` steps test P1's edges;
/// `*Next` steps play the second move of a two-move case.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Step {
    A,
    A1Next,
    A1Probe,
    A11Next,
    A2Next,
    A2Probe,
    B,
    B1Probe,
    B11Probe,
    B111Probe,
    B1111Probe,
    B11121Probe,
    B11122Next,
    B112Probe,
    B11211Probe,
    B11212Probe,
    FStar(u8),
    B12Probe,
    B1211Next,
    B1211Probe,
    B1212Probe,
    B12121Probe,
    B2Next,
    B2Probe,
}

/// Every case label of the tree, in depth-first order.
pub const BRANCHES: [&str; 46] = [
    "A",
    "A.1",
    "A.1.1",
    "A.1.2",
    "A.2",
    "A.2.1",
    "A.2.2",
    "B",
    "B.1",
    "B.1.1",
    "B.1.1.1",
    "B.1.1.1.1",
    "B.1.1.1.1.1",
    "B.1.1.1.1.2",
    "B.1.1.1.2",
    "B.1.1.1.2.1",
    "B.1.1.1.2.1.1",
    "B.1.1.1.2.1.2",
    "B.1.1.1.2.2",
    "B.1.1.2",
    "B.1.1.2.1",
    "B.1.1.2.1.1",
    "B.1.1.2.1.1.1",
    "B.1.1.2.1.1.2",
    "B.1.1.2.1.2",
    "B.1.1.2.1.2.1",
    "B.1.1.2.1.2.1.1",
    "B.1.1.2.1.2.1.2",
    "B.1.1.2.1.2.2",
    "B.1.1.2.2",
    "B.1.2",
    "B.1.2.1",
    "B.1.2.1.1",
    "B.1.2.1.1.1",
    "B.1.2.1.1.2",
    "B.1.2.1.2",
    "B.1.2.1.2.1",
    "B.1.2.1.2.1.1",
    "B.1.2.1.2.1.2",
    "B.1.2.1.2.2",
    "B.1.2.2",
    "B.2",
    "B.2.1",
    "B.2.2",
    "root",
    "open",
];

const STAR_ROLES: [&str; 3] = ["I", "J", "K"];

type Move = Result<(Edge, String), StrategyError>;

impl Turn<'_> {
    fn fresh2(&mut self, role: &str) -> Result<(), StrategyError> {
        let k2 = self.s.k2();
        self.fresh(role, k2).map(|_| ())
    }

    fn go(&mut self, step: Step, r1: &str, r2: &str) -> Move {
        let e = self.take(r1, r2)?;
        self.s.phase = Phase::Tree(step);
        Ok((e, self.s.path.clone()))
    }

    fn finish_case(&mut self, r1: &str, r2: &str, base: [&str; 2]) -> Move {
        let e = self.take(r1, r2)?;
        self.s.base_roles = Some(base.map(str::to_string));
        self.s.phase = Phase::EndEntry;
        Ok((e, self.s.path.clone()))
    }

    pub(super) fn open(&mut self) -> Move {
        self.enter("open")?;
        self.s.k1 = match self.last_p1_edge() {
            Some(e) => e.copy(),
            None => 1,
        };
        let k2 = self.s.k2();
        let a = self.st.lowest_free_vertex(k2, &[])?;
        let b = self.st.lowest_free_vertex(k2, &[a])?;
        self.bind("A", a);
        self.bind("B", b);
        self.enter("root")?;
        self.s.phase = Phase::Root;
        Ok((self.take("A", "B")?, "root".into()))
    }

    pub(super) fn root(&mut self) -> Move {
        let k2 = self.s.k2();
        let (a, b) = (self.v("A")?, self.v("B")?);
        let case_b = match self.last_p1_edge() {
            Some(e) if e.copy() == k2 => {
                if e.contains(a) && !e.contains(b) {
                    self.swap("A", "B")?;
                }
                !e.contains(a) && !e.contains(b)
            }
            _ => false,
        };
        if case_b {
            let e = self.last_p1_edge().expect("claim");
            let vs = e.vertices();
            self.bind("C", vs[0]);
            self.bind("D", vs[1]);
            self.s.specified.insert(e);
            self.enter("B")?;
            self.fresh2("E")?;
            self.go(Step::B, "B", "E")
        } else {
            self.enter("A")?;
            self.fresh2("C")?;
            self.go(Step::A, "B", "C")
        }
    }

    pub(super) fn tree(&mut self, step: Step) -> Move {
        match step {
            Step::A => {
                if self.probe("A", "C")? {
                    self.enter("A.1")?;
                    self.fresh2("D")?;
                    self.go(Step::A1Next, "B", "D")
                } else {
                    self.enter("A.2")?;
                    self.go(Step::A2Next, "A", "C")
                }
            }
            Step::A1Next => {
                if !self.unclaimed("D", "A")? {
                    self.swap("A", "C")?;
                }
                self.go(Step::A1Probe, "D", "A")
            }
            Step::A1Probe => {
                self.record_ledger(1);
                if self.probe("D", "C")? {
                    self.enter("A.1.1")?;
                    self.fresh2("E")?;
                    self.go(Step::A11Next, "B", "E")
                } else {
                    self.enter("A.1.2")?;
                    self.finish_case("D", "C", ["B", "D"])
                }
            }
            Step::A11Next => {
                if !self.unclaimed("E", "D")? {
                    self.swap("A", "D")?;
                }
                self.finish_case("E", "D", ["B", "D"])
            }
            Step::A2Next => {
                self.fresh2("D")?;
                self.go(Step::A2Probe, "C", "D")
            }
            Step::A2Probe => {
                if self.probe("A", "D")? {
                    self.enter("A.2.1")?;
                    self.finish_case("B", "D", ["B", "C"])
                } else {
                    self.enter("A.2.2")?;
                    self.finish_case("A", "D", ["A", "C"])
                }
            }
            Step::B => {
                if self.probe("A", "E")? {
                    self.enter("B.1")?;
                    self.go(Step::B1Probe, "C", "E")
                } else {
                    self.enter("B.2")?;
                    self.go(Step::B2Next, "A", "E")
                }
            }
            Step::B1Probe => {
                if self.probe("B", "C")? {
                    self.enter("B.1.1")?;
                    self.fresh2("F")?;
                    self.go(Step::B11Probe, "B", "F")
                } else {
                    self.enter("B.1.2")?;
                    self.go(Step::B12Probe, "B", "C")
                }
            }
            Step::B11Probe => {
                self.record_ledger(1);
                if self.probe("E", "F")? {
                    self.enter("B.1.1.1")?;
                    self.go(Step::B111Probe, "A", "F")
                } else {
                    self.enter("B.1.1.2")?;
                    self.go(Step::B112Probe, "E", "F")
                }
            }
            Step::B111Probe => {
                self.record_ledger(2);
                if self.probe("B", "D")? {
                    self.enter("B.1.1.1.1")?;
                    self.fresh2("I")?;
                    return self.go(Step::B1111Probe, "F", "I");
                }
                self.enter("B.1.1.1.2")?;
                if self.p1_has("A", "D")? || self.p1_has("D", "F")? {
                    self.enter("B.1.1.1.2.1")?;
                    if !self.p1_has("A", "D")? {
                        self.swap("A", "F")?;
                    }
                    self.probe("A", "D")?;
                    self.fresh2("I")?;
                    self.go(Step::B11121Probe, "F", "I")
                } else {
                    self.enter("B.1.1.1.2.2")?;
                    self.go(Step::B11122Next, "B", "D")
                }
            }
            Step::B1111Probe => {
                if self.probe("A", "I")? {
                    self.enter("B.1.1.1.1.1")?;
                    self.finish_case("B", "I", ["B", "F"])
                } else {
                    self.enter("B.1.1.1.1.2")?;
                    self.finish_case("A", "I", ["A", "F"])
                }
            }
            Step::B11121Probe => {
                if self.probe("B", "I")? {
                    self.enter("B.1.1.1.2.1.1")?;
                    self.finish_case("A", "I", ["A", "F"])
                } else {
                    self.enter("B.1.1.1.2.1.2")?;
                    self.finish_case("B", "I", ["B", "F"])
                }
            }
            Step::B11122Next => {
                if !self.unclaimed("A", "D")? {
                    self.swap("A", "F")?;
                }
                self.finish_case("A", "D", ["A", "B"])
            }
            Step::B112Probe => {
                if self.probe("C", "F")? {
                    self.enter("B.1.1.2.1")?;
                    if self.probe("A", "F")? {
                        self.enter("B.1.1.2.1.1")?;
                        self.fresh2("I")?;
                        self.go(Step::B11211Probe, "E", "I")
                    } else {
                        self.enter("B.1.1.2.1.2")?;
                        self.go(Step::B11212Probe, "A", "F")
                    }
                } else {
                    self.enter("B.1.1.2.2")?;
                    self.finish_case("C", "F", ["E", "F"])
                }
            }
            Step::B11211Probe => {
                self.record_ledger(2);
                if self.probe("B", "I")? {
                    self.enter("B.1.1.2.1.1.1")?;
                    self.finish_case("F", "I", ["E", "F"])
                } else {
                    self.enter("B.1.1.2.1.1.2")?;
                    self.finish_case("B", "I", ["B", "E"])
                }
            }
            Step::B11212Probe => {
                let plane = self.st.plane(self.s.k2());
                let (b, f) = (self.v("B")?.ordinal, self.v("F")?.ordinal);
                let is_base = matches!(is_potential_base(&plane, b, f, None), Ok(Ok(_)));
                self.check("bf_potential_base", true, serde_json::json!({ "potential_base": is_base }));
                if is_base {
                    self.enter("B.1.1.2.1.2.2")?;
                    self.s.base_roles = Some(["B".into(), "F".into()]);
                    self.end_entry()
                } else {
                    self.enter("B.1.1.2.1.2.1")?;
                    for e in [("B", "D"), ("D", "F")] {
                        self.probe(e.0, e.1)?;
                    }
                    self.fresh2("I")?;
                    self.go(Step::FStar(0), "F", "I")
                }
            }
            Step::FStar(i) => {
                let x = STAR_ROLES[i as usize];
                if self.last_is("B", x)? {
                    self.probe("B", x)?;
                    if i < 2 {
                        let next = STAR_ROLES[i as usize + 1];
                        self.fresh2(next)?;
                        self.go(Step::FStar(i + 1), "F", next)
                    } else {
                        self.enter("B.1.1.2.1.2.1.1")?;
                        self.start_special1()
                    }
                } else {
                    self.enter("B.1.1.2.1.2.1.2")?;
                    self.start_special2(i)
                }
            }
            Step::B12Probe => {
                if self.probe("A", "C")? {
                    self.enter("B.1.2.1")?;
                    if self.probe("D", "E")? {
                        self.enter("B.1.2.1.1")?;
                        self.go(Step::B1211Next, "A", "D")
                    } else {
                        self.enter("B.1.2.1.2")?;
                        self.go(Step::B1212Probe, "D", "E")
                    }
                } else {
                    self.enter("B.1.2.2")?;
                    self.finish_case("A", "C", ["B", "C"])
                }
            }
            Step::B1211Next => {
                self.fresh2("F")?;
                self.go(Step::B1211Probe, "B", "F")
            }
            Step::B1211Probe => {
                self.record_ledger(2);
                if self.probe("E", "F")? {
                    self.enter("B.1.2.1.1.1")?;
                    self.finish_case("C", "F", ["B", "C"])
                } else {
                    self.enter("B.1.2.1.1.2")?;
                    self.finish_case("E", "F", ["B", "E"])
                }
            }
            Step::B1212Probe => {
                self.record_ledger(1);
                if self.probe("B", "D")? {
                    self.enter("B.1.2.1.2.1")?;
                    self.fresh2("F")?;
                    self.go(Step::B12121Probe, "B", "F")
                } else {
                    self.enter("B.1.2.1.2.2")?;
                    self.finish_case("B", "D", ["B", "E"])
                }
            }
            Step::B12121Probe => {
                self.record_ledger(2);
                if self.probe("E", "F")? {
                    self.enter("B.1.2.1.2.1.1")?;
                    self.finish_case("C", "F", ["B", "C"])
                } else {
                    self.enter("B.1.2.1.2.1.2")?;
                    self.finish_case("E", "F", ["B", "E"])
                }
            }
            Step::B2Next => {
                let mut pick = None;
                for r in ["B", "A", "E"] {
                    if self.st.is_p1_free_vertex(self.v(r)?) {
                        pick = Some(r);
                        break;
                    }
                }
                match pick {
                    Some("B") => {}
                    Some(r) => self.swap(r, "B")?,
                    _ => return Err(StrategyError::Invariant("no P1-free vertex among A, B, E".into())),
                }
                self.fresh2("F")?;
                self.go(Step::B2Probe, "B", "F")
            }
            Step::B2Probe => {
                if self.p1_has("A", "F")? || self.p1_has("E", "F")? {
                    self.enter("B.2.1")?;
                    if !self.p1_has("E", "F")? {
                        self.swap("A", "E")?;
                    }
                    self.probe("E", "F")?;
                } else {
                    self.enter("B.2.2")?;
                    if self.st.degree(Player::P1, self.v("A")?) > 1 {
                        self.swap("A", "E")?;
                    }
                    let deg = self.st.degree(Player::P1, self.v("A")?);
                    self.check("b22_degree", deg <= 1, serde_json::json!({ "deg_p1_a": deg }));
                }
                self.finish_case("A", "F", ["A", "B"])
            }
        }
    }
}

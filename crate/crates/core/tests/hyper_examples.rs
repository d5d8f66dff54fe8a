use proptest::prelude::*;
use ramsey_core::board::{BoardKind, Edge, Player};
use ramsey_core::hyper::{board_intersection, XYBoardView};
use ramsey_core::patterns::find_gprime_copies;
use ramsey_core::session::{P1Move, Session};
use ramsey_core::strategy::Reply;

fn v(s: &Session, r: &str) -> u8 {
    s.responder.labels().into_iter().find(|(n, _)| n == r).unwrap_or_else(|| panic!("role {r}")).1.ordinal
}

fn he(s: &Session, rs: [&str; 4]) -> Edge {
    Edge::hyper(rs.map(|r| v(s, r))).unwrap()
}

fn claim(s: &mut Session, e: &str) -> Vec<Reply> {
    s.play(P1Move::Claim(e.parse().unwrap())).unwrap()
}

// P1 keeps to a few low vertices so fresh vertices stay available
const FILLER: [&str; 5] = ["h:0-1-2-8", "h:0-1-3-8", "h:0-2-3-8", "h:1-2-3-8", "h:0-1-8-9"];

fn through_stage1(s: &mut Session) -> Vec<Reply> {
    let mut out = claim(s, "h:0-1-2-3");
    for e in &FILLER[..4] {
        out.extend(claim(s, e));
    }
    out
}

#[test]
fn opening_takes_fresh_xyab() {
    let mut s = Session::new(BoardKind::Hyper4, 16).unwrap();
    let r = claim(&mut s, "h:0-1-2-3");
    assert_eq!(r[0].edge.to_string(), "h:4-5-6-7");
}

#[test]
fn second_reply_avoids_p1_and_is_xybc() {
    let mut s = Session::new(BoardKind::Hyper4, 16).unwrap();
    claim(&mut s, "h:0-1-2-3");
    let r = claim(&mut s, "h:0-1-2-8");
    assert_eq!(r[0].edge, he(&s, ["X", "Y", "B", "C"]));
    assert!(!s.state.edges_of(Player::P1).any(|e| e.contains(ramsey_core::board::VertexId::hyper(v(&s, "X")))));
}

#[test]
fn stage1_leaves_the_core_on_the_xy_board() {
    let mut s = Session::new(BoardKind::Hyper4, 16).unwrap();
    let r = through_stage1(&mut s);
    assert_eq!(r.last().unwrap().edge, he(&s, ["X", "Y", "D", "A"]));
    let plane = XYBoardView::new(v(&s, "X"), v(&s, "Y")).unwrap().plane(&s.state);
    for (a, b) in [("A", "B"), ("B", "C"), ("C", "A"), ("C", "D"), ("D", "A")] {
        assert!(plane.p2(v(&s, a), v(&s, b)), "{a}{b}");
    }
    let r = claim(&mut s, FILLER[4]);
    assert!(r[0].checks.iter().all(|c| c.ok), "{:?}", r[0].checks);
    assert_eq!(r[0].edge, he(&s, ["X", "Y", "A1", "F1"]));
}

#[test]
fn stop_at_stage2_completes_on_xy() {
    let mut s = Session::new(BoardKind::Hyper4, 16).unwrap();
    through_stage1(&mut s);
    claim(&mut s, FILLER[4]);
    let r = s.play(P1Move::Stop).unwrap();
    assert_eq!(r[0].edge, he(&s, ["X", "Y", "A0", "F1"]));
    assert_eq!(s.winner, Some(Player::P2));
    let copies = find_gprime_copies(&s.state, Player::P2);
    let mut xy = [v(&s, "X"), v(&s, "Y")];
    xy.sort();
    assert!(!copies.is_empty() && copies.iter().all(|c| c.centres == xy));
}

#[test]
fn star_answers_then_deviation() {
    let mut s = Session::new(BoardKind::Hyper4, 18).unwrap();
    through_stage1(&mut s);
    claim(&mut s, FILLER[4]);
    for i in 1..=2 {
        let e = he(&s, ["X", "Y", "A0", &format!("F{i}")]);
        s.play(P1Move::Claim(e)).unwrap();
    }
    let r = claim(&mut s, "h:0-1-3-4");
    assert_eq!(r[0].edge, he(&s, ["X", "Y", "A0", "F3"]));
}

#[test]
fn intersections() {
    assert_eq!(board_intersection([0, 1], [2, 3], 8).unwrap(), 1);
    assert_eq!(board_intersection([0, 1], [0, 2], 10).unwrap(), 7);
    assert!(board_intersection([0, 1], [1, 0], 10).is_err());
}

proptest! {
    /// A star X Y A F_i seen from any pair of {X, Y, A} is still a star.
    #[test]
    fn stars_transfer_between_views(
        centre in prop::sample::subsequence((0u8..12).collect::<Vec<_>>(), 3),
        leaves in prop::sample::subsequence((12u8..20).collect::<Vec<_>>(), 1..6),
    ) {
        let star: Vec<Edge> = leaves
            .iter()
            .map(|&f| Edge::hyper([centre[0], centre[1], centre[2], f]).unwrap())
            .collect();
        for (i, j) in [(0, 1), (0, 2), (1, 2)] {
            let view = XYBoardView::new(centre[i], centre[j]).unwrap();
            let hub = centre[3 - i - j];
            for e in &star {
                let (a, b) = view.project(e).unwrap();
                prop_assert!(a == hub || b == hub);
            }
        }
    }
}

use proptest::prelude::*;
use ramsey_core::board::{BoardKind, Plane, Player};
use ramsey_core::lemma::{is_potential_base, lemma3_check, Lemma3Failure};
use ramsey_core::session::P1Move;
use ramsey_verifier::crosscheck::{check_plane, random_corpus, CrosscheckReport};
use ramsey_verifier::exhaustive::{candidate_moves, exhaustive_verify, new_session, reply_classes, ExhaustiveOptions};
use ramsey_verifier::ledger_cases::check_all;
use ramsey_verifier::mutation::mutation_check;
use ramsey_verifier::oracle::{oracle_solve, BoardSpec, OracleValue, TargetSpec};
use ramsey_verifier::stochastic::{stochastic_verify, StochasticOptions};
use ramsey_verifier::verdict::Outcome;

fn walk(sess: &ramsey_core::session::Session, left: usize, nodes: &mut usize) {
    *nodes += 1;
    assert_eq!(reply_classes(sess, true), reply_classes(sess, false), "trace {:?}", sess.trace);
    if left == 0 {
        return;
    }
    for e in candidate_moves(&sess.state, true) {
        let mut child = sess.clone();
        if child.play(P1Move::Claim(e)).is_ok() && !child.finished() {
            walk(&child, left - 1, nodes);
        }
    }
}

#[test]
fn reduced_candidates_cover_every_class_graph() {
    let opts = ExhaustiveOptions::new(BoardKind::TwoCliques, 10, 3);
    let mut nodes = 0;
    walk(&new_session(&opts), 3, &mut nodes);
    assert!(nodes > 50, "{nodes}");
}

#[test]
fn reduced_candidates_cover_every_class_hyper() {
    let opts = ExhaustiveOptions::new(BoardKind::Hyper4, 10, 2);
    let mut nodes = 0;
    walk(&new_session(&opts), 2, &mut nodes);
    assert!(nodes > 5, "{nodes}");
}

#[test]
fn reduction_keeps_the_verdict() {
    let mut opts = ExhaustiveOptions::new(BoardKind::TwoCliques, 10, 2);
    let reduced = exhaustive_verify(&opts);
    opts.reduce = false;
    let full = exhaustive_verify(&opts);
    assert_eq!(reduced.result, full.result);
    assert_eq!(reduced.stats.branches, full.stats.branches);
    assert!(full.stats.states_explored > reduced.stats.states_explored);
}

#[test]
fn exhaustive_depth_four_is_safe() {
    let v = exhaustive_verify(&ExhaustiveOptions::new(BoardKind::TwoCliques, 14, 4));
    assert!(v.is_safe(), "{:?}", v.violations.first());
    assert!(v.stats.end_case_entries > 0);
}

#[test]
fn small_board_is_a_finding() {
    let v = exhaustive_verify(&ExhaustiveOptions::new(BoardKind::TwoCliques, 6, 2));
    assert!(v.is_safe());
    assert!(v.finding_count > 0);
    assert!(v.findings[0].invariant.contains("board too small"));
}

#[test]
fn mirror_stub_is_caught() {
    let mut opts = ExhaustiveOptions::new(BoardKind::TwoCliques, 14, 2);
    opts.stub = true;
    let v = exhaustive_verify(&opts);
    assert_eq!(v.result, Outcome::Violated);
    assert!(!v.violations[0].trace.is_empty());
    let mut opts = ExhaustiveOptions::new(BoardKind::Hyper4, 10, 1);
    opts.stub = true;
    assert!(!exhaustive_verify(&opts).is_safe());
}

fn stoch(seed: u64) -> StochasticOptions {
    StochasticOptions {
        kind: BoardKind::TwoCliques,
        n: 14,
        playouts: 200,
        max_p1_moves: 12,
        seed,
        config: Default::default(),
    }
}

#[test]
fn stochastic_is_deterministic() {
    let a = stochastic_verify(&stoch(5));
    let b = stochastic_verify(&stoch(5));
    assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    let c = stochastic_verify(&stoch(6));
    assert_ne!(a.trace_hash, c.trace_hash);
}

#[test]
fn verdict_json_shape() {
    let v = stochastic_verify(&stoch(1));
    let j = serde_json::to_value(&v).unwrap();
    assert_eq!(j["mode"], "stochastic");
    assert_eq!(j["result"], "safe");
    assert_eq!(j["params"]["playouts"], 200);
    assert!(j["stats"]["states_explored"].as_u64().unwrap() > 200);
}

/// Plain minimax with no memo and no symmetry, on the edges of K5.
fn brute_triangle_k5(p1: u16, p2: u16, left: u32) -> bool {
    let pairs: Vec<(usize, usize)> = (0..5).flat_map(|a| (a + 1..5).map(move |b| (a, b))).collect();
    let bit = |a: usize, b: usize| 1u16 << pairs.iter().position(|&p| p == (a.min(b), a.max(b))).unwrap();
    let tri: Vec<u16> = (0..5)
        .flat_map(|a| (a + 1..5).flat_map(move |b| (b + 1..5).map(move |c| (a, b, c))))
        .map(|(a, b, c)| bit(a, b) | bit(a, c) | bit(b, c))
        .collect();
    fn go(p1: u16, p2: u16, left: u32, tri: &[u16]) -> bool {
        if left == 0 {
            return false;
        }
        let free: Vec<u16> = (0..10).map(|i| 1u16 << i).filter(|b| (p1 | p2) & b == 0).collect();
        if p1.count_ones() == p2.count_ones() {
            free.iter().any(|&b| tri.iter().any(|&t| (p1 | b) & t == t) || go(p1 | b, p2, left - 1, tri))
        } else {
            !free.is_empty()
                && !free.iter().any(|&b| tri.iter().any(|&t| (p2 | b) & t == t))
                && free.iter().all(|&b| go(p1, p2 | b, left - 1, tri))
        }
    }
    go(p1, p2, left, &tri)
}

#[test]
fn oracle_triangle_k5_fixture() {
    let r = oracle_solve(BoardSpec::Clique(5), TargetSpec::Triangle, 9).unwrap();
    // frozen after agreeing with the brute force below
    assert_eq!(r.value, OracleValue::P1WinWithinBudget);
    assert!(brute_triangle_k5(0, 0, 9));
    for budget in 3..=8 {
        let r = oracle_solve(BoardSpec::Clique(5), TargetSpec::Triangle, budget).unwrap();
        assert_eq!(r.value == OracleValue::P1WinWithinBudget, brute_triangle_k5(0, 0, budget as u32), "{budget}");
    }
}

#[test]
fn oracle_g_budget_sixteen() {
    let r = oracle_solve(BoardSpec::TwoCliques(6), TargetSpec::G, 16).unwrap();
    assert_eq!(r.value, OracleValue::NoP1WinWithinBudget);
    assert!(r.short_circuit);
}

fn book_plane() -> Plane {
    let mut p = Plane::empty(8);
    for (a, b) in [(0, 1), (0, 6), (1, 6), (0, 7), (1, 7)] {
        p.claim(a, b, Player::P2);
    }
    p
}

#[test]
fn two_triangles_on_an_edge_refute_both() {
    let mut p = book_plane();
    for (a, b) in [(0, 2), (1, 2), (0, 3), (1, 3), (2, 3)] {
        p.claim(a, b, Player::P1);
    }
    let fails = lemma3_check(&p, 0, 1).unwrap_err();
    assert!(fails.iter().any(|f| matches!(f, Lemma3Failure::TwoDelta { .. })));
    assert!(is_potential_base(&p, 0, 1, None).unwrap().is_err());
    let mut r = CrosscheckReport::default();
    check_plane(&p, 0, 1, &mut r);
    assert!(r.ok(), "{:?}", r.failures);
}

#[test]
fn bare_book_passes_everything() {
    let p = book_plane();
    let mut r = CrosscheckReport::default();
    check_plane(&p, 0, 1, &mut r);
    assert!(r.ok());
    assert_eq!(r.lemma3_applicable, 1);
}

#[test]
fn random_corpus_has_no_counterexample() {
    let r = random_corpus(11, 2000, 10);
    assert!(r.ok(), "{:?}", r.failures);
    assert!(r.lemma3_applicable > 1000);
}

#[test]
fn ledger_worst_cases() {
    // worst counts from an independent enumeration over the same pool
    let expected = [("A.1", 3), ("B.1.1", 3), ("B.1.2.1.2", 4), ("B.1.1.1", 3), ("B.1.1.2.1.1", 4), ("B.1.2.1.1", 4), ("B.1.2.1.2.1", 4)];
    let got = check_all();
    for (o, (name, worst)) in got.iter().zip(expected) {
        assert_eq!(o.case, name);
        assert_eq!(o.worst, worst, "{name}");
        assert!(o.holds(), "{o:?}");
    }
}

#[test]
fn mutations_of_deep_branches_are_caught() {
    for b in ["A.1.2", "B.1.1.2.1.2.1.1", "B.1.2.1.2.1.2", "B.2.2"] {
        let m = mutation_check(b);
        assert!(m.detected && m.baseline_safe, "{m:?}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn short_stochastic_runs_are_safe(seed in any::<u64>()) {
        let mut o = stoch(seed);
        o.playouts = 20;
        let v = stochastic_verify(&o);
        prop_assert!(v.is_safe(), "{:?}", v.violations.first().map(|r| &r.invariant));
    }
}

/// Five answered star edges: the alternative finish is available to P2.
#[test]
fn three_of_five_observed_on_a_long_star() {
    use ramsey_core::board::Edge;
    use ramsey_core::session::Session;
    use ramsey_verifier::check::play_checked;
    use ramsey_verifier::alt_finish::{three_of_five, AltFinish};
    use ramsey_verifier::verdict::{Mode, Params, Verdict};

    let role = |s: &Session, r: &str| s.responder.labels().into_iter().find(|(n, _)| n == r).unwrap().1;
    let fresh = |s: &Session| {
        let a = s.state.lowest_free_vertex(1, &[]).unwrap();
        let b = s.state.lowest_free_vertex(1, &[a]).unwrap();
        P1Move::Claim(Edge::pair(a, b).unwrap())
    };
    let mut v = Verdict::new(Mode::Stochastic, Params::default());
    let mut s = Session::new(BoardKind::TwoCliques, 16).unwrap();
    for _ in 0..6 {
        let mv = fresh(&s);
        play_checked(&mut v, &mut s, mv);
    }
    assert_eq!(s.trace.last().unwrap().case.as_deref(), Some("endgame:star1"));
    assert_eq!(three_of_five(&s.state, &s.responder.labels()), AltFinish::NotApplicable);
    for i in 1..=5 {
        let e = Edge::pair(role(&s, "A0"), role(&s, &format!("F{i}"))).unwrap();
        play_checked(&mut v, &mut s, P1Move::Claim(e));
    }
    assert!(v.is_safe(), "{:?}", v.violations);
    assert_eq!(v.stats.alt_finish_positions, 1);
}

//! Cross-checks of the lemma predicates against naive re-implementations on
//! random planes and on planes reached in play.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use ramsey_core::board::{BoardKind, Plane, Player};
use ramsey_core::lemma::{has_two_delta, is_potential_base, lemma3_check};
use ramsey_core::patterns::{exact_max_ep1, max_ep1_over_bases};
use ramsey_core::session::{P1Move, Session};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrosscheckReport {
    pub planes: u64,
    /// Planes where the sufficient condition held on the tested base.
    pub lemma3_applicable: u64,
    pub failures: Vec<String>,
}

impl CrosscheckReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }

    fn fail(&mut self, msg: String) {
        if self.failures.len() < 20 {
            self.failures.push(msg);
        }
    }
}

fn naive_special_ok(p: &Plane, x: u8) -> bool {
    let vs: Vec<u8> = p.vertices().filter(|&v| v != x).collect();
    for &a in &vs {
        for &b in &vs {
            if a < b && p.p1(x, a) && p.p1(x, b) && p.p1(a, b) {
                return false;
            }
        }
    }
    for &c1 in &vs {
        for &c2 in &vs {
            for &c3 in &vs {
                let distinct = c1 != c2 && c2 != c3 && c1 != c3;
                if distinct && p.p1(x, c1) && p.p1(c1, c2) && p.p1(c2, c3) && p.p1(c3, x) && !p.p2(x, c2) {
                    return false;
                }
            }
        }
    }
    true
}

fn naive_potential_base(p: &Plane, a0: u8, a1: u8) -> bool {
    let book = p.vertices().filter(|&y| p.p2(a0, y) && p.p2(a1, y)).count();
    p.p2(a0, a1) && book >= 2 && (naive_special_ok(p, a0) || naive_special_ok(p, a1))
}

/// Largest e_P1 over copies of G avoiding P2, by listing every 6-set and base.
pub fn naive_exact_max(p: &Plane) -> u32 {
    let vs: Vec<u8> = p.vertices().collect();
    let mut best = 0;
    let mut six = Vec::new();
    fn go(vs: &[u8], start: usize, cur: &mut Vec<u8>, f: &mut impl FnMut(&[u8])) {
        if cur.len() == 6 {
            f(cur);
            return;
        }
        for i in start..vs.len() {
            cur.push(vs[i]);
            go(vs, i + 1, cur, f);
            cur.pop();
        }
    }
    go(&vs, 0, &mut six, &mut |s: &[u8]| {
        for i in 0..6 {
            for j in i + 1..6 {
                let (a, b) = (s[i], s[j]);
                let mut pairs = vec![(a, b)];
                for &y in s.iter().filter(|&&y| y != a && y != b) {
                    pairs.push((a, y));
                    pairs.push((b, y));
                }
                if pairs.iter().any(|&(u, v)| p.p2(u, v)) {
                    continue;
                }
                best = best.max(pairs.iter().filter(|&&(u, v)| p.p1(u, v)).count() as u32);
            }
        }
    });
    best
}

fn naive_two_delta(p: &Plane, a0: u8, a1: u8) -> bool {
    let vs: Vec<u8> = p.vertices().filter(|&v| v != a0 && v != a1).collect();
    vs.iter().any(|&x1| {
        vs.iter().any(|&x2| {
            x1 < x2 && p.p1(x1, x2) && p.p1(a0, x1) && p.p1(a0, x2) && p.p1(a1, x1) && p.p1(a1, x2)
        })
    })
}

/// All checks on one plane with a P2 base `a0a1`.
pub fn check_plane(p: &Plane, a0: u8, a1: u8, report: &mut CrosscheckReport) {
    report.planes += 1;
    let tag = format!("p1={:?} p2={:?} base={a0}-{a1}", p.edges(Player::P1), p.edges(Player::P2));
    let pb = is_potential_base(p, a0, a1, None);
    let naive_pb = naive_potential_base(p, a0, a1);
    match &pb {
        Ok(r) if r.is_ok() != naive_pb => report.fail(format!("potential base disagrees ({naive_pb}): {tag}")),
        Err(e) => report.fail(format!("potential base error {e}: {tag}")),
        _ => {}
    }
    if lemma3_check(p, a0, a1).is_ok() {
        report.lemma3_applicable += 1;
        if !naive_pb {
            report.fail(format!("sufficient condition holds but no potential base: {tag}"));
        }
    }
    if has_two_delta(p, a0, a1).is_some() != naive_two_delta(p, a0, a1) {
        report.fail(format!("2-delta disagrees: {tag}"));
    }
    let exact = naive_exact_max(p);
    if exact_max_ep1(p) != exact {
        report.fail(format!("exact max {} vs naive {exact}: {tag}", exact_max_ep1(p)));
    }
    if max_ep1_over_bases(p).max < exact {
        report.fail(format!("counting bound below exact max {exact}: {tag}"));
    }
}

/// Random planes on `n` vertices with P2 base 0-1, a two-page P2 book and
/// scattered edges of both players.
pub fn random_corpus(seed: u64, count: u64, n: u8) -> CrosscheckReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = CrosscheckReport::default();
    let mut pairs = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            pairs.push((a, b));
        }
    }
    for _ in 0..count {
        let mut p = Plane::empty(n);
        for (a, b) in [(0, 1), (0, 2), (1, 2), (0, 3), (1, 3)] {
            p.claim(a, b, Player::P2);
        }
        let p1n = rng.gen_range(2..=9);
        let p2n = rng.gen_range(0..=4);
        let mut shuffled = pairs.clone();
        shuffled.shuffle(&mut rng);
        let open: Vec<(u8, u8)> = shuffled.into_iter().filter(|&(a, b)| !p.p2(a, b)).collect();
        for &(a, b) in &open[..p1n] {
            p.claim(a, b, Player::P1);
        }
        for &(a, b) in &open[p1n..p1n + p2n] {
            p.claim(a, b, Player::P2);
        }
        check_plane(&p, 0, 1, &mut report);
    }
    report
}

/// Planes of P2's second copy met in random games against the strategy,
/// tested on every P2 edge with a book.
pub fn reachable_corpus(seed: u64, games: u64, n: u8, report: &mut CrosscheckReport) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..games {
        let Ok(mut sess) = Session::new(BoardKind::TwoCliques, n) else { return };
        for _ in 0..12 {
            let moves = sess.state.unclaimed_edges();
            let Some(&e) = moves.choose(&mut rng) else { break };
            if sess.play(P1Move::Claim(e)).is_err() || sess.finished() {
                break;
            }
            let Some(k1) = sess.responder.first_copy() else { continue };
            let p = sess.state.plane(3 - k1);
            for (a, b) in p.edges(Player::P2) {
                if p.vertices().filter(|&y| p.p2(a, y) && p.p2(b, y)).count() >= 2 {
                    check_plane(&p, a, b, report);
                }
            }
        }
    }
}

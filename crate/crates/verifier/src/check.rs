//! The assertions made after every P1 action, shared by all search modes.

use ramsey_core::board::{GameState, Player};
use ramsey_core::patterns::owns_target;
use ramsey_core::session::{P1Move, Session, SessionError};

use crate::alt_finish::{three_of_five, AltFinish};
use crate::verdict::Verdict;

/// Failed checks of these kinds are findings rather than violations.
pub const FINDING_CHECKS: [&str; 2] = ["mirror_counterpart", "first_copy_threats"];

/// Whether the game can go on after the action.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Step {
    Continue,
    Terminal,
}

/// Plays one P1 action through the session and records everything that went
/// wrong in `v`.
pub fn play_checked(v: &mut Verdict, sess: &mut Session, mv: P1Move) -> Step {
    let bound = (mv == P1Move::Stop).then(|| sess.responder.completion_bound(&sess.state));
    v.stats.states_explored += 1;
    let before = sess.state.history().len();
    let replies = match sess.play(mv) {
        Ok(r) => r,
        Err(SessionError::Strategy(e)) if e.is_board_too_small() => {
            v.finding(format!("board too small: {e}"), &sess.trace);
            return Step::Terminal;
        }
        Err(e) => {
            v.violation(format!("strategy error: {e}"), &sess.trace);
            return Step::Terminal;
        }
    };
    if sess.winner == Some(Player::P1) {
        v.violation("P1 owns a target copy", &sess.trace);
        return Step::Terminal;
    }
    observe_alt_finish(v, sess, before);
    for r in &replies {
        v.stats.branches.insert(r.case.clone());
        for c in &r.checks {
            match c.kind.as_str() {
                "lemma2" => v.stats.end_case_entries += 1,
                "ledger" => v.stats.ledger_checks += 1,
                _ => {}
            }
            if !c.ok {
                let what = format!("check {} failed at {}: {}", c.kind, c.case, c.detail);
                if FINDING_CHECKS.contains(&c.kind.as_str()) {
                    v.finding(what, &sess.trace);
                } else {
                    v.violation(what, &sess.trace);
                }
            }
        }
    }
    if let Some(bound) = bound {
        v.stats.stop_lines += 1;
        v.stats.max_completion_moves = v.stats.max_completion_moves.max(replies.len());
        if sess.winner != Some(Player::P2) {
            v.violation("P2 did not complete a target copy after P1 stopped", &sess.trace);
        } else if replies.len() > bound {
            v.violation(format!("completion took {} moves, bound {bound}", replies.len()), &sess.trace);
        }
        if owns_target(&sess.state, Player::P1) {
            v.violation("P1 owns a target copy at the end", &sess.trace);
        }
        return Step::Terminal;
    }
    if sess.winner == Some(Player::P2) {
        v.stats.p2_wins += 1;
        return Step::Terminal;
    }
    Step::Continue
}

/// Looks at the position between P1's action and P2's first reply.
fn observe_alt_finish(v: &mut Verdict, sess: &Session, before: usize) {
    let labels = sess.responder.labels();
    if !labels.iter().any(|(n, _)| n == "F5") || sess.state.p1_stopped() {
        return;
    }
    let st = &sess.state;
    let Ok(mid) = GameState::replay(st.kind(), st.n(), &st.history()[..before + 1]) else {
        return;
    };
    match three_of_five(&mid, &labels) {
        AltFinish::NotApplicable => {}
        AltFinish::Holds => v.stats.alt_finish_positions += 1,
        AltFinish::Fails(why) => v.violation(format!("three-of-five win fails: {why}"), &sess.trace),
    }
}

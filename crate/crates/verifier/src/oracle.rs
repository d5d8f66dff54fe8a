//! Exact minimax for small strong games, built on its own edge bitmasks so
//! that it shares no code with the strategy, the patterns or the lemmas.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoardSpec {
    /// A single clique on the given number of vertices.
    Clique(u8),
    /// Two disjoint cliques of the given size.
    TwoCliques(u8),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TargetSpec {
    Triangle,
    /// K6 minus K4: a base edge and four cherries.
    G,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OracleValue {
    P1WinWithinBudget,
    NoP1WinWithinBudget,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OracleResult {
    pub board: BoardSpec,
    pub target: TargetSpec,
    pub budget: usize,
    pub value: OracleValue,
    pub states: u64,
    /// Decided by counting alone.
    pub short_circuit: bool,
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("board has {0} edges; at most 64 are supported")]
    TooLarge(usize),
    #[error("state limit reached after {states} states")]
    StateLimit { states: u64 },
}

struct Game {
    edges: Vec<(usize, usize)>,
    copies: Vec<u64>,
    perms: Vec<Vec<usize>>,
}

fn k_subsets(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if items.len() < k {
        return vec![];
    }
    let mut out = k_subsets(&items[1..], k);
    for mut rest in k_subsets(&items[1..], k - 1) {
        rest.insert(0, items[0]);
        out.push(rest);
    }
    out
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let x = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

impl Game {
    fn build(board: BoardSpec, target: TargetSpec) -> Result<Game, OracleError> {
        let (m, cliques) = match board {
            BoardSpec::Clique(m) => (m as usize, 1),
            BoardSpec::TwoCliques(m) => (m as usize, 2),
        };
        let groups: Vec<Vec<usize>> = (0..cliques).map(|c| (c * m..(c + 1) * m).collect()).collect();
        let mut edges = Vec::new();
        for g in &groups {
            for (i, &a) in g.iter().enumerate() {
                for &b in &g[i + 1..] {
                    edges.push((a, b));
                }
            }
        }
        if edges.len() > 64 {
            return Err(OracleError::TooLarge(edges.len()));
        }
        let index = |a: usize, b: usize| edges.iter().position(|&e| e == (a.min(b), a.max(b))).expect("edge");
        let mut copies = Vec::new();
        for g in &groups {
            match target {
                TargetSpec::Triangle => {
                    for t in k_subsets(g, 3) {
                        copies.push(1u64 << index(t[0], t[1]) | 1u64 << index(t[0], t[2]) | 1u64 << index(t[1], t[2]));
                    }
                }
                TargetSpec::G => {
                    for s in k_subsets(g, 6) {
                        for base in k_subsets(&s, 2) {
                            let (a, b) = (base[0], base[1]);
                            let mut mask = 1u64 << index(a, b);
                            for &p in s.iter().filter(|&&p| p != a && p != b) {
                                mask |= 1u64 << index(a, p) | 1u64 << index(b, p);
                            }
                            copies.push(mask);
                        }
                    }
                }
            }
        }
        copies.sort_unstable();
        copies.dedup();
        // vertex symmetries, only when small enough to list
        let mut perms = Vec::new();
        let small = match board {
            BoardSpec::Clique(m) => m <= 6,
            BoardSpec::TwoCliques(m) => m <= 3,
        };
        if small {
            let n = m * cliques;
            let within: Vec<Vec<Vec<usize>>> = groups.iter().map(|g| permutations(g)).collect();
            let mut vperms: Vec<Vec<usize>> = vec![vec![0; n]];
            for (gi, g) in groups.iter().enumerate() {
                let mut next = Vec::new();
                for vp in &vperms {
                    for p in &within[gi] {
                        let mut q = vp.clone();
                        for (i, &v) in g.iter().enumerate() {
                            q[v] = p[i];
                        }
                        next.push(q);
                    }
                }
                vperms = next;
            }
            if cliques == 2 {
                let swapped: Vec<Vec<usize>> =
                    vperms.iter().map(|p| p.iter().map(|&v| (v + m) % (2 * m)).collect()).collect();
                vperms.extend(swapped);
            }
            for vp in vperms {
                perms.push(edges.iter().map(|&(a, b)| index(vp[a], vp[b])).collect());
            }
        }
        Ok(Game { edges, copies, perms })
    }

    fn wins(&self, mask: u64) -> bool {
        self.copies.iter().any(|&c| mask & c == c)
    }

    fn canon(&self, p1: u64, p2: u64) -> (u64, u64) {
        let map = |mask: u64, p: &[usize]| {
            let mut out = 0u64;
            let mut m = mask;
            while m != 0 {
                let i = m.trailing_zeros() as usize;
                out |= 1u64 << p[i];
                m &= m - 1;
            }
            out
        };
        self.perms
            .iter()
            .map(|p| (map(p1, p), map(p2, p)))
            .min()
            .unwrap_or((p1, p2))
    }
}

struct Solver<'a> {
    game: &'a Game,
    memo: HashMap<(u64, u64, usize), bool>,
    states: u64,
    limit: u64,
}

impl Solver<'_> {
    /// Whether P1 forces a win within `left` further moves.
    fn solve(&mut self, p1: u64, p2: u64, left: usize) -> Result<bool, OracleError> {
        if left == 0 {
            return Ok(false);
        }
        let (c1, c2) = self.game.canon(p1, p2);
        if let Some(&v) = self.memo.get(&(c1, c2, left)) {
            return Ok(v);
        }
        self.states += 1;
        if self.states > self.limit {
            return Err(OracleError::StateLimit { states: self.states });
        }
        let all = if self.game.edges.len() == 64 { u64::MAX } else { (1u64 << self.game.edges.len()) - 1 };
        let free = all & !(p1 | p2);
        let p1_turn = p1.count_ones() == p2.count_ones();
        let moves: Vec<u64> = (0..64).map(|i| 1u64 << i).filter(|b| free & b != 0).collect();
        let value = if moves.is_empty() {
            false
        } else if p1_turn {
            let mut win = moves.iter().any(|&b| self.game.wins(p1 | b));
            for &b in &moves {
                if win {
                    break;
                }
                win = self.solve(p1 | b, p2, left - 1)?;
            }
            win
        } else if moves.iter().any(|&b| self.game.wins(p2 | b)) {
            false
        } else {
            let mut all_win = true;
            for &b in &moves {
                if !self.solve(p1, p2 | b, left - 1)? {
                    all_win = false;
                    break;
                }
            }
            all_win
        };
        self.memo.insert((c1, c2, left), value);
        Ok(value)
    }
}

/// Solves the strong game from the empty board with at most `budget` moves
/// in total, P1 first.
pub fn oracle_solve(board: BoardSpec, target: TargetSpec, budget: usize) -> Result<OracleResult, OracleError> {
    oracle_solve_limited(board, target, budget, 50_000_000)
}

pub fn oracle_solve_limited(
    board: BoardSpec,
    target: TargetSpec,
    budget: usize,
    limit: u64,
) -> Result<OracleResult, OracleError> {
    let game = Game::build(board, target)?;
    let need = game.copies.iter().map(|c| c.count_ones() as usize).min().unwrap_or(usize::MAX);
    let p1_moves = budget.div_ceil(2);
    let mut result =
        OracleResult { board, target, budget, value: OracleValue::NoP1WinWithinBudget, states: 0, short_circuit: false };
    if need > p1_moves {
        result.short_circuit = true;
        return Ok(result);
    }
    let mut solver = Solver { game: &game, memo: HashMap::new(), states: 0, limit };
    if solver.solve(0, 0, budget)? {
        result.value = OracleValue::P1WinWithinBudget;
    }
    result.states = solver.states;
    Ok(result)
}

/// Number of distinct target copies on the board, counted by the oracle's
/// own enumeration.
pub fn count_copies(board: BoardSpec, target: TargetSpec) -> Result<usize, OracleError> {
    Ok(Game::build(board, target)?.copies.len())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn copy_counts() {
        assert_eq!(count_copies(BoardSpec::Clique(5), TargetSpec::Triangle).unwrap(), 10);
        assert_eq!(count_copies(BoardSpec::Clique(6), TargetSpec::G).unwrap(), 15);
        assert_eq!(count_copies(BoardSpec::TwoCliques(6), TargetSpec::G).unwrap(), 30);
    }

    #[test]
    fn counting_short_circuit() {
        let r = oracle_solve(BoardSpec::TwoCliques(6), TargetSpec::G, 16).unwrap();
        assert_eq!(r.value, OracleValue::NoP1WinWithinBudget);
        assert!(r.short_circuit);
        let r = oracle_solve(BoardSpec::Clique(5), TargetSpec::Triangle, 4).unwrap();
        assert!(r.short_circuit);
    }

    #[test]
    fn triangle_on_k4_within_five_moves() {
        // P1 has three moves; P2 blocks the only open triangle each time
        let r = oracle_solve(BoardSpec::Clique(4), TargetSpec::Triangle, 5).unwrap();
        assert_eq!(r.value, OracleValue::NoP1WinWithinBudget);
    }
}

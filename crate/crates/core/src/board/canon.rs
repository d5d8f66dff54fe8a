//! Canonical labelling of coloured relational structures.
//!
//! Colour refinement followed by an individualisation search; each leaf of the
//! search yields a discrete ordering and the lexicographically least encoding
//! over all leaves is the canonical form. The leaf set is invariant under
//! isomorphism, so two structures get equal forms exactly when they are
//! isomorphic.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{BoardKind, Edge, GameState, Player, VertexId};

/// Vertex colours plus labelled relations (unordered vertex sets).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Structure {
    pub colors: Vec<u32>,
    pub rels: Vec<(u32, Vec<usize>)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CanonicalKey(pub Vec<u32>);

impl Structure {
    fn incidence(&self) -> Vec<Vec<usize>> {
        let mut inc = vec![Vec::new(); self.colors.len()];
        for (i, (_, vs)) in self.rels.iter().enumerate() {
            for &v in vs {
                inc[v].push(i);
            }
        }
        inc
    }

    /// Encoding of the structure with vertex `v` placed at position `pos[v]`.
    pub fn encode(&self, pos: &[usize]) -> Vec<u32> {
        let n = self.colors.len();
        let mut out = Vec::with_capacity(2 + n + self.rels.len() * 5);
        out.push(n as u32);
        let mut by_pos = vec![0u32; n];
        for (v, &p) in pos.iter().enumerate() {
            by_pos[p] = self.colors[v];
        }
        out.extend(by_pos);
        let mut rels: Vec<Vec<u32>> = self
            .rels
            .iter()
            .map(|(label, vs)| {
                let mut m: Vec<u32> = vs.iter().map(|&v| pos[v] as u32).collect();
                m.sort_unstable();
                let mut r = vec![*label, m.len() as u32];
                r.extend(m);
                r
            })
            .collect();
        rels.sort_unstable();
        out.push(rels.len() as u32);
        for r in rels {
            out.extend(r);
        }
        out
    }
}

fn rank(keys: &[impl Ord + Clone]) -> (Vec<u32>, usize) {
    let mut sorted: Vec<_> = keys.to_vec();
    sorted.sort();
    sorted.dedup();
    let ranks = keys.iter().map(|k| sorted.binary_search(k).unwrap() as u32).collect();
    (ranks, sorted.len())
}

fn refine(s: &Structure, inc: &[Vec<usize>], init: &[u32]) -> Vec<u32> {
    let (mut cls, mut k) = rank(init);
    loop {
        let sigs: Vec<(u32, Vec<(u32, Vec<u32>)>)> = (0..cls.len())
            .map(|v| {
                let mut around: Vec<(u32, Vec<u32>)> = inc[v]
                    .iter()
                    .map(|&ri| {
                        let (label, vs) = &s.rels[ri];
                        let mut others: Vec<u32> = vs.iter().filter(|&&u| u != v).map(|&u| cls[u]).collect();
                        others.sort_unstable();
                        (*label, others)
                    })
                    .collect();
                around.sort_unstable();
                (cls[v], around)
            })
            .collect();
        let (next, k2) = rank(&sigs);
        cls = next;
        if k2 == k {
            return cls;
        }
        k = k2;
    }
}

fn search(s: &Structure, inc: &[Vec<usize>], init: &[u32], best: &mut Option<Vec<u32>>) {
    let cls = refine(s, inc, init);
    let n = cls.len();
    let mut size = vec![0usize; n];
    for &c in &cls {
        size[c as usize] += 1;
    }
    // smallest non-singleton cell, ties broken by class index
    let target = (0..n).filter(|&c| size[c] > 1).min_by_key(|&c| (size[c], c));
    match target {
        None => {
            let pos: Vec<usize> = cls.iter().map(|&c| c as usize).collect();
            let enc = s.encode(&pos);
            if best.as_ref().map_or(true, |b| enc < *b) {
                *best = Some(enc);
            }
        }
        Some(t) => {
            for v in (0..n).filter(|&v| cls[v] as usize == t) {
                let next: Vec<u32> =
                    cls.iter().enumerate().map(|(u, &c)| 2 * c + u32::from(u != v)).collect();
                search(s, inc, &next, best);
            }
        }
    }
}

/// Canonical encoding of `s`.
pub fn canonical_form(s: &Structure) -> Vec<u32> {
    if s.colors.is_empty() {
        return s.encode(&[]);
    }
    let inc = s.incidence();
    let mut best = None;
    search(s, &inc, &s.colors, &mut best);
    best.expect("search visits at least one leaf")
}

/// Isomorphism-invariant key of a position. Copies keep their identity.
pub fn canonicalize(state: &GameState) -> CanonicalKey {
    canonicalize_with_roles(state, |c| c as u32, &[])
}

/// Key of a position whose vertices additionally carry role colours. On the
/// two-clique board `copy_color` decides which copies may be swapped.
pub fn canonicalize_with_roles(
    state: &GameState,
    copy_color: impl Fn(u8) -> u32,
    roles: &[(VertexId, u32)],
) -> CanonicalKey {
    let mut index: BTreeMap<VertexId, usize> = BTreeMap::new();
    let mut role_of: BTreeMap<VertexId, u32> = BTreeMap::new();
    for &(v, r) in roles {
        role_of.insert(v, r + 1);
    }
    let mut verts = state.touched_vertices();
    verts.extend(role_of.keys().copied().filter(|v| state.is_free_vertex(*v)));
    let mut s = Structure::default();
    let mut raw = Vec::with_capacity(verts.len());
    for v in verts {
        index.insert(v, raw.len());
        let cc = if state.kind() == BoardKind::TwoCliques { copy_color(v.copy) } else { 0 };
        raw.push((cc, role_of.get(&v).copied().unwrap_or(0)));
    }
    // colours become ranks; the table of raw colours goes into the key
    let (ranks, _) = rank(&raw);
    s.colors = ranks;
    let mut table = raw.clone();
    table.sort_unstable();
    table.dedup();
    for (e, &p) in state.claims() {
        let label = match p {
            Player::P1 => 1,
            Player::P2 => 2,
        };
        let vs = match e {
            Edge::Graph { .. } | Edge::Hyper(_) => e.vertices().iter().map(|v| index[v]).collect(),
        };
        s.rels.push((label, vs));
    }
    let mut key = vec![
        state.kind() as u32,
        state.n() as u32,
        u32::from(state.p1_stopped()),
        u32::from(state.to_move() == Player::P2),
        table.len() as u32,
    ];
    for (cc, r) in table {
        key.extend([cc, r]);
    }
    key.extend(canonical_form(&s));
    CanonicalKey(key)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn permutations(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in permutations(n - 1) {
            for i in 0..=p.len() {
                let mut q = p.clone();
                q.insert(i, n - 1);
                out.push(q);
            }
        }
        out
    }

    fn brute_min(s: &Structure) -> Vec<u32> {
        permutations(s.colors.len()).iter().map(|p| s.encode(p)).min().unwrap()
    }

    fn relabel(s: &Structure, p: &[usize]) -> Structure {
        let mut colors = vec![0; s.colors.len()];
        for (v, &c) in s.colors.iter().enumerate() {
            colors[p[v]] = c;
        }
        let rels = s.rels.iter().map(|(l, vs)| (*l, vs.iter().map(|&v| p[v]).collect())).collect();
        Structure { colors, rels }
    }

    fn random_structure(seed: u64, n: usize) -> Structure {
        let mut x = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        let mut next = move || {
            x ^= x << 13;
            x ^= x >> 7;
            x ^= x << 17;
            x
        };
        let colors = (0..n).map(|_| (next() % 2) as u32).collect();
        let mut rels = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                match next() % 4 {
                    0 => rels.push((1, vec![a, b])),
                    1 => rels.push((2, vec![a, b])),
                    _ => {}
                }
            }
        }
        Structure { colors, rels }
    }

    #[test]
    fn agrees_with_brute_force_isomorphism() {
        for seed in 0..60u64 {
            let n = 3 + (seed % 4) as usize;
            let a = random_structure(seed, n);
            let b = random_structure(seed + 1000, n);
            let iso = brute_min(&a) == brute_min(&b);
            assert_eq!(canonical_form(&a) == canonical_form(&b), iso, "seed {seed}");
            let perms = permutations(n);
            let p = &perms[(seed as usize * 7) % perms.len()];
            assert_eq!(canonical_form(&a), canonical_form(&relabel(&a, p)));
        }
    }

    #[test]
    fn regular_structures_terminate() {
        // 7-cycle: refinement alone cannot split it
        let rels = (0..7).map(|i| (1, vec![i, (i + 1) % 7])).collect();
        let c7 = Structure { colors: vec![0; 7], rels };
        let rels = (0..7).map(|i| (1, vec![i, (i + 2) % 7])).collect();
        let c7b = Structure { colors: vec![0; 7], rels };
        assert_eq!(canonical_form(&c7), canonical_form(&c7b));
    }

    #[test]
    fn state_keys_respect_isomorphism() {
        let st = |edges: &[&str]| {
            let mut s = GameState::new(BoardKind::TwoCliques, 8).unwrap();
            for e in edges {
                s = s.apply_move(s.to_move(), e.parse().unwrap()).unwrap();
            }
            s
        };
        let a = st(&["g:1:0-1", "g:2:0-1", "g:2:1-2"]);
        let b = st(&["g:1:4-6", "g:2:3-7", "g:2:3-5"]);
        let c = st(&["g:1:0-1", "g:2:0-1", "g:1:1-2"]);
        assert_eq!(canonicalize(&a), canonicalize(&b));
        assert_ne!(canonicalize(&a), canonicalize(&c));
        // swapping copy colours identifies a with its mirror image
        let d = st(&["g:2:0-1", "g:1:0-1", "g:1:1-2"]);
        let ka = canonicalize_with_roles(&a, |c| if c == 1 { 1 } else { 2 }, &[]);
        let kd = canonicalize_with_roles(&d, |c| if c == 2 { 1 } else { 2 }, &[]);
        assert_eq!(ka, kd);
        assert_ne!(canonicalize(&a), canonicalize(&d));
        let ra = canonicalize_with_roles(&a, |c| c as u32, &[(VertexId::new(2, 0), 1)]);
        let rb = canonicalize_with_roles(&a, |c| c as u32, &[(VertexId::new(2, 1), 1)]);
        assert_ne!(ra, rb);
    }
}

use super::{Ownership, Player};

/// A two-coloured simple graph on at most 64 vertices, stored as neighbour
/// bitmasks. Used both for a single clique copy and for the XY board of the
/// hypergraph game. Inactive vertices (the centres X and Y) never appear in
/// patterns.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Plane {
    n: u8,
    active: u64,
    p1: Vec<u64>,
    p2: Vec<u64>,
}

impl Plane {
    pub fn empty(n: u8) -> Plane {
        let active = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        Plane { n, active, p1: vec![0; n as usize], p2: vec![0; n as usize] }
    }

    pub fn n(&self) -> u8 {
        self.n
    }

    pub fn active(&self) -> u64 {
        self.active
    }

    pub fn is_active(&self, v: u8) -> bool {
        self.active >> v & 1 == 1
    }

    pub fn deactivate(&mut self, v: u8) {
        self.active &= !(1u64 << v);
    }

    pub(crate) fn set_row(&mut self, v: u8, p1: u64, p2: u64) {
        self.p1[v as usize] = p1;
        self.p2[v as usize] = p2;
    }

    pub fn claim(&mut self, a: u8, b: u8, p: Player) {
        let rows = match p {
            Player::P1 => &mut self.p1,
            Player::P2 => &mut self.p2,
        };
        rows[a as usize] |= 1u64 << b;
        rows[b as usize] |= 1u64 << a;
    }

    pub fn unclaim(&mut self, a: u8, b: u8) {
        for rows in [&mut self.p1, &mut self.p2] {
            rows[a as usize] &= !(1u64 << b);
            rows[b as usize] &= !(1u64 << a);
        }
    }

    pub fn owner(&self, a: u8, b: u8) -> Ownership {
        if self.p1[a as usize] >> b & 1 == 1 {
            Ownership::P1
        } else if self.p2[a as usize] >> b & 1 == 1 {
            Ownership::P2
        } else {
            Ownership::Unclaimed
        }
    }

    pub fn p1(&self, a: u8, b: u8) -> bool {
        self.p1[a as usize] >> b & 1 == 1
    }

    pub fn p2(&self, a: u8, b: u8) -> bool {
        self.p2[a as usize] >> b & 1 == 1
    }

    pub fn p1_row(&self, v: u8) -> u64 {
        self.p1[v as usize] & self.active
    }

    pub fn p2_row(&self, v: u8) -> u64 {
        self.p2[v as usize] & self.active
    }

    pub fn deg(&self, p: Player, v: u8) -> u32 {
        match p {
            Player::P1 => self.p1_row(v).count_ones(),
            Player::P2 => self.p2_row(v).count_ones(),
        }
    }

    pub fn vertices(&self) -> impl Iterator<Item = u8> + '_ {
        (0..self.n).filter(|&v| self.is_active(v))
    }

    /// Claimed edges of `p` as sorted pairs.
    pub fn edges(&self, p: Player) -> Vec<(u8, u8)> {
        let mut out = Vec::new();
        for a in self.vertices() {
            let row = match p {
                Player::P1 => self.p1_row(a),
                Player::P2 => self.p2_row(a),
            };
            let mut hi = row & !((2u64 << a) - 1);
            while hi != 0 {
                let b = hi.trailing_zeros() as u8;
                out.push((a, b));
                hi &= hi - 1;
            }
        }
        out
    }

    /// Vertices incident to at least one claimed edge.
    pub fn touched(&self) -> u64 {
        self.vertices()
            .filter(|&v| self.p1_row(v) | self.p2_row(v) != 0)
            .fold(0, |m, v| m | 1u64 << v)
    }
}

/// Iterates the set bits of a mask.
pub fn bits(mut m: u64) -> impl Iterator<Item = u8> {
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let b = m.trailing_zeros() as u8;
            m &= m - 1;
            Some(b)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn claims_and_rows() {
        let mut p = Plane::empty(6);
        p.claim(0, 3, Player::P1);
        p.claim(1, 3, Player::P2);
        assert_eq!(p.owner(3, 0), Ownership::P1);
        assert_eq!(p.owner(3, 1), Ownership::P2);
        assert_eq!(p.edges(Player::P1), vec![(0, 3)]);
        assert_eq!(p.deg(Player::P2, 3), 1);
        p.deactivate(1);
        assert_eq!(p.deg(Player::P2, 3), 0);
        p.unclaim(0, 3);
        assert!(p.edges(Player::P1).is_empty());
        assert_eq!(bits(0b1010).collect::<Vec<_>>(), vec![1, 3]);
    }
}

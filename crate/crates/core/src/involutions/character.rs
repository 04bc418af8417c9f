use std::fmt;

/// A sign on each simple root, extended multiplicatively to the root lattice.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Character {
    signs: Vec<i8>,
}

impl Character {
    pub fn new(signs: Vec<i8>) -> Self {
        assert!(signs.iter().all(|s| *s == 1 || *s == -1), "signs must be ±1");
        Self { signs }
    }

    pub fn trivial(rank: usize) -> Self {
        Self { signs: vec![1; rank] }
    }

    /// Bit `i` set means `alpha_i` gets `-1`.
    pub fn from_bits(rank: usize, bits: u64) -> Self {
        Self {
            signs: (0..rank).map(|i| if bits >> i & 1 == 1 { -1 } else { 1 }).collect(),
        }
    }

    pub fn bits(&self) -> u64 {
        self.signs
            .iter()
            .enumerate()
            .filter(|(_, s)| **s < 0)
            .map(|(i, _)| 1u64 << i)
            .sum()
    }

    /// Characters that are `-1` exactly on the given simple roots.
    pub fn minus_on(rank: usize, nodes: &[usize]) -> Self {
        Self::from_bits(rank, nodes.iter().map(|&i| 1u64 << i).sum())
    }

    /// All `2^rank - 1` nontrivial characters in increasing bit order.
    pub fn nontrivial(rank: usize) -> impl Iterator<Item = Character> {
        (1..(1u64 << rank)).map(move |b| Character::from_bits(rank, b))
    }

    pub fn rank(&self) -> usize {
        self.signs.len()
    }

    pub fn sign(&self, i: usize) -> i64 {
        i64::from(self.signs[i])
    }

    pub fn is_trivial(&self) -> bool {
        self.signs.iter().all(|s| *s == 1)
    }

    /// Value on a lattice vector given in simple-root coordinates.
    pub fn value(&self, coords: &[i64]) -> i64 {
        let odd: i64 = coords
            .iter()
            .zip(&self.signs)
            .filter(|(_, s)| **s < 0)
            .map(|(c, _)| *c)
            .sum();
        if odd.rem_euclid(2) == 0 {
            1
        } else {
            -1
        }
    }

    pub fn product(&self, other: &Character) -> Character {
        Character::new(self.signs.iter().zip(&other.signs).map(|(a, b)| a * b).collect())
    }

    /// `chi(alpha_{pi(i)}) = chi(alpha_i)` for all `i`.
    pub fn is_invariant_under(&self, pi: &[usize]) -> bool {
        pi.iter().enumerate().all(|(i, &p)| self.signs[i] == self.signs[p])
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.signs {
            f.write_str(if *s < 0 { "-" } else { "+" })?;
        }
        Ok(())
    }
}

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::RootError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }
}

/// A simple Dynkin type such as `E6` or `A5`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SimpleType {
    pub family: Family,
    pub rank: usize,
}

impl SimpleType {
    pub const fn new(family: Family, rank: usize) -> Self {
        Self { family, rank }
    }

    /// Whether the type exists (E only in ranks 6..8, F4, G2, D from 4, ...).
    pub fn is_valid(self) -> bool {
        match self.family {
            Family::A => self.rank >= 1,
            Family::B | Family::C => self.rank >= 2,
            Family::D => self.rank >= 4,
            Family::E => (6..=8).contains(&self.rank),
            Family::F => self.rank == 4,
            Family::G => self.rank == 2,
        }
    }

    pub fn dim(self) -> usize {
        let n = self.rank;
        match self.family {
            Family::A => n * (n + 2),
            Family::B | Family::C => n * (2 * n + 1),
            Family::D => n * (2 * n - 1),
            Family::E => match n {
                6 => 78,
                7 => 133,
                8 => 248,
                _ => unreachable!("invalid E rank"),
            },
            Family::F => 52,
            Family::G => 14,
        }
    }

    pub fn is_simply_laced(self) -> bool {
        matches!(self.family, Family::A | Family::D | Family::E)
    }

    /// Coxeter number.
    pub fn coxeter_number(self) -> usize {
        (self.dim() - self.rank) / self.rank
    }

    /// Lower-case algebra name: `e6`, `so8` for D4, `sl3` for A2 and so on.
    pub fn algebra_name(self) -> String {
        let n = self.rank;
        match self.family {
            Family::A => format!("su{}", n + 1),
            Family::B => format!("so{}", 2 * n + 1),
            Family::C => format!("sp{n}"),
            Family::D => format!("so{}", 2 * n),
            Family::E => format!("e{n}"),
            Family::F => "f4".into(),
            Family::G => "g2".into(),
        }
    }
}

impl fmt::Display for SimpleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.letter(), self.rank)
    }
}

impl FromStr for SimpleType {
    type Err = RootError;

    fn from_str(s: &str) -> Result<Self, RootError> {
        let s = s.trim();
        let mut chars = s.chars();
        let family = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Family::A,
            Some('B') => Family::B,
            Some('C') => Family::C,
            Some('D') => Family::D,
            Some('E') => Family::E,
            Some('F') => Family::F,
            Some('G') => Family::G,
            _ => return Err(RootError::UnsupportedType(s.to_string())),
        };
        let rank: usize = chars
            .as_str()
            .parse()
            .map_err(|_| RootError::UnsupportedType(s.to_string()))?;
        let t = SimpleType::new(family, rank);
        if t.is_valid() {
            Ok(t)
        } else {
            Err(RootError::UnsupportedType(s.to_string()))
        }
    }
}

/// Isomorphism type of a reductive algebra: simple components plus a torus.
///
/// Always canonical: low-rank coincidences are folded (B1, C1 -> A1;
/// C2 -> B2; D2 -> A1+A1; D3 -> A3) and components are sorted, so two labels
/// are equal exactly when the algebras are isomorphic.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TypeLabel {
    simple: Vec<SimpleType>,
    torus: usize,
}

impl TypeLabel {
    pub fn torus(rank: usize) -> Self {
        Self {
            simple: Vec::new(),
            torus: rank,
        }
    }

    pub fn new(components: impl IntoIterator<Item = SimpleType>, torus: usize) -> Self {
        let mut l = Self::torus(torus);
        for c in components {
            l.push_raw(c.family, c.rank);
        }
        l.simple.sort();
        l
    }

    pub fn simple(t: SimpleType) -> Self {
        Self::new([t], 0)
    }

    /// Adds a component given in possibly non-canonical form (`D2`, `C1`, `D1`...).
    fn push_raw(&mut self, family: Family, rank: usize) {
        use Family::*;
        match (family, rank) {
            (_, 0) => {}
            (A | B | C, 1) => self.simple.push(SimpleType::new(A, 1)),
            (D, 1) => self.torus += 1,
            (D, 2) => {
                self.simple.push(SimpleType::new(A, 1));
                self.simple.push(SimpleType::new(A, 1));
            }
            (D, 3) => self.simple.push(SimpleType::new(A, 3)),
            (C, 2) => self.simple.push(SimpleType::new(B, 2)),
            _ => self.simple.push(SimpleType::new(family, rank)),
        }
    }

    /// Compact orthogonal algebra `so(n)` as a type.
    pub fn so(n: usize) -> Self {
        let mut l = Self::default();
        match n {
            0 | 1 => {}
            n if n % 2 == 1 => l.push_raw(Family::B, n / 2),
            n => l.push_raw(Family::D, n / 2),
        }
        l
    }

    pub fn su(n: usize) -> Self {
        let mut l = Self::default();
        if n >= 2 {
            l.push_raw(Family::A, n - 1);
        }
        l
    }

    pub fn sp(n: usize) -> Self {
        let mut l = Self::default();
        l.push_raw(Family::C, n);
        l
    }

    /// `u(n) = su(n) + R`
    pub fn u(n: usize) -> Self {
        Self::su(n).plus(&Self::torus(usize::from(n >= 1)))
    }

    pub fn plus(&self, other: &TypeLabel) -> TypeLabel {
        let mut l = self.clone();
        l.simple.extend(other.simple.iter().copied());
        l.torus += other.torus;
        l.simple.sort();
        l
    }

    pub fn components(&self) -> &[SimpleType] {
        &self.simple
    }

    pub fn torus_rank(&self) -> usize {
        self.torus
    }

    pub fn dim(&self) -> usize {
        self.simple.iter().map(|s| s.dim()).sum::<usize>() + self.torus
    }

    pub fn rank(&self) -> usize {
        self.simple.iter().map(|s| s.rank).sum::<usize>() + self.torus
    }

    pub fn semisimple_rank(&self) -> usize {
        self.simple.iter().map(|s| s.rank).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.simple.is_empty() && self.torus == 0
    }

    /// Compact-style rendering, e.g. `so8+sp1+sp1+sp1` or `su3+su3+R+R`.
    pub fn compact_name(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts: Vec<String> = self
            .simple
            .iter()
            .rev()
            .map(|s| match (s.family, s.rank) {
                (Family::A, 1) => "sp1".to_string(),
                (Family::B, 2) => "so5".to_string(),
                _ => s.algebra_name(),
            })
            .collect();
        parts.extend(std::iter::repeat_n("R".to_string(), self.torus));
        parts.join("+")
    }
}

impl fmt::Display for TypeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts: Vec<String> = self.simple.iter().map(ToString::to_string).collect();
        if self.torus > 0 {
            parts.push(format!("T{}", self.torus));
        }
        write!(f, "{}", parts.join("+"))
    }
}

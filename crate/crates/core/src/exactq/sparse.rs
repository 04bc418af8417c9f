use std::fmt;

use num_traits::{One, Zero};

use super::{QMatrix, Rational};

/// Sparse rational vector: entries sorted by index, no stored zeros.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct SparseVec {
    entries: Vec<(usize, Rational)>,
}

impl SparseVec {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn unit(i: usize) -> Self {
        Self {
            entries: vec![(i, Rational::one())],
        }
    }

    pub fn single(i: usize, c: Rational) -> Self {
        if c.is_zero() {
            Self::new()
        } else {
            Self {
                entries: vec![(i, c)],
            }
        }
    }

    /// Builds from unsorted pairs, summing duplicates.
    pub fn from_pairs(mut pairs: Vec<(usize, Rational)>) -> Self {
        pairs.sort_by_key(|p| p.0);
        let mut entries: Vec<(usize, Rational)> = Vec::with_capacity(pairs.len());
        for (i, c) in pairs {
            match entries.last_mut() {
                Some((j, d)) if *j == i => *d += c,
                _ => entries.push((i, c)),
            }
        }
        entries.retain(|(_, c)| !c.is_zero());
        Self { entries }
    }

    pub fn from_dense(v: &[Rational]) -> Self {
        Self {
            entries: v
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (i, c.clone()))
                .collect(),
        }
    }

    pub fn to_dense(&self, dim: usize) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); dim];
        for (i, c) in &self.entries {
            v[*i] = c.clone();
        }
        v
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Rational)> {
        self.entries.iter().map(|(i, c)| (*i, c))
    }

    pub fn get(&self, i: usize) -> Rational {
        match self.entries.binary_search_by_key(&i, |p| p.0) {
            Ok(k) => self.entries[k].1.clone(),
            Err(_) => Rational::zero(),
        }
    }

    pub fn first_index(&self) -> Option<usize> {
        self.entries.first().map(|p| p.0)
    }

    pub fn max_index(&self) -> Option<usize> {
        self.entries.last().map(|p| p.0)
    }

    pub fn scaled(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::new();
        }
        Self {
            entries: self.entries.iter().map(|(i, x)| (*i, x * c)).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        Self {
            entries: self.entries.iter().map(|(i, x)| (*i, -x)).collect(),
        }
    }

    /// `self + c * other`
    pub fn add_scaled(&self, c: &Rational, other: &SparseVec) -> Self {
        if c.is_zero() || other.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut a, mut b) = (self.entries.iter().peekable(), other.entries.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some((i, x)), Some((j, y))) => {
                    if i < j {
                        out.push((*i, x.clone()));
                        a.next();
                    } else if j < i {
                        out.push((*j, c * y));
                        b.next();
                    } else {
                        let s = x + c * y;
                        if !s.is_zero() {
                            out.push((*i, s));
                        }
                        a.next();
                        b.next();
                    }
                }
                (Some((i, x)), None) => {
                    out.push((*i, x.clone()));
                    a.next();
                }
                (None, Some((j, y))) => {
                    out.push((*j, c * y));
                    b.next();
                }
                (None, None) => break,
            }
        }
        Self { entries: out }
    }

    pub fn add(&self, other: &SparseVec) -> Self {
        self.add_scaled(&Rational::one(), other)
    }

    pub fn sub(&self, other: &SparseVec) -> Self {
        self.add_scaled(&-Rational::one(), other)
    }
}

impl fmt::Debug for SparseVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .entries
            .iter()
            .map(|(i, c)| format!("{c}*b{i}"))
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Subspace of `Q^ambient` held in reduced echelon form: basis vector `j` has
/// a 1 at `pivots[j]` and every other basis vector vanishes there. Basis is
/// kept sorted by pivot.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<SparseVec>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Self {
            ambient,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Self {
            ambient,
            basis: (0..ambient).map(SparseVec::unit).collect(),
            pivots: (0..ambient).collect(),
        }
    }

    pub fn span<'a, I: IntoIterator<Item = &'a SparseVec>>(ambient: usize, vecs: I) -> Self {
        let mut s = Self::zero(ambient);
        for v in vecs {
            s.insert(v);
        }
        s
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[SparseVec] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Residual of `v` after eliminating the pivot columns.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut r = v.clone();
        for (b, &p) in self.basis.iter().zip(&self.pivots) {
            let c = r.get(p);
            if !c.is_zero() {
                r = r.add_scaled(&-c, b);
            }
        }
        r
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_zero()
    }

    /// Coordinates of `v` in this basis, `None` if `v` is not in the span.
    pub fn coordinates(&self, v: &SparseVec) -> Option<Vec<Rational>> {
        let coords: Vec<Rational> = self.pivots.iter().map(|&p| v.get(p)).collect();
        let mut r = v.clone();
        for (b, c) in self.basis.iter().zip(&coords) {
            if !c.is_zero() {
                r = r.add_scaled(&-c, b);
            }
        }
        r.is_zero().then_some(coords)
    }

    /// Adds `v`; returns true when the dimension grew.
    pub fn insert(&mut self, v: &SparseVec) -> bool {
        let r = self.reduce(v);
        let Some(p) = r.first_index() else {
            return false;
        };
        let inv = Rational::one() / r.get(p);
        let r = r.scaled(&inv);
        for b in self.basis.iter_mut() {
            let c = b.get(p);
            if !c.is_zero() {
                *b = b.add_scaled(&-c, &r);
            }
        }
        let pos = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(pos, p);
        self.basis.insert(pos, r);
        true
    }

    pub fn intersect(&self, other: &Subspace) -> Subspace {
        // x = sum a_i u_i = sum b_j w_j  <=>  [U | -W](a, b) = 0
        let n = self.dim() + other.dim();
        let mut cols: Vec<Vec<Rational>> = Vec::with_capacity(n);
        for u in &self.basis {
            cols.push(u.to_dense(self.ambient));
        }
        for w in &other.basis {
            cols.push(w.neg().to_dense(self.ambient));
        }
        let m = QMatrix::from_columns(self.ambient, &cols);
        let k = m.kernel();
        let mut out = Subspace::zero(self.ambient);
        for c in 0..k.cols() {
            let mut v = SparseVec::new();
            for (i, u) in self.basis.iter().enumerate() {
                v = v.add_scaled(&k[(i, c)], u);
            }
            out.insert(&v);
        }
        out
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut s = self.clone();
        for v in &other.basis {
            s.insert(v);
        }
        s
    }

    /// Solutions `x` of `b . x = 0` for every basis row `b`.
    pub fn annihilator(&self) -> Subspace {
        let mut is_pivot = vec![false; self.ambient];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        let mut out = Subspace::zero(self.ambient);
        for f in (0..self.ambient).filter(|&f| !is_pivot[f]) {
            let mut pairs = vec![(f, Rational::one())];
            for (b, &p) in self.basis.iter().zip(&self.pivots) {
                let c = b.get(f);
                if !c.is_zero() {
                    pairs.push((p, -c));
                }
            }
            out.insert(&SparseVec::from_pairs(pairs));
        }
        out
    }

    /// Basis vectors as dense columns of an `ambient x dim` matrix.
    pub fn to_matrix(&self) -> QMatrix {
        let cols: Vec<Vec<Rational>> = self.basis.iter().map(|b| b.to_dense(self.ambient)).collect();
        QMatrix::from_columns(self.ambient, &cols)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactq::q;

    fn sv(pairs: &[(usize, i64)]) -> SparseVec {
        SparseVec::from_pairs(pairs.iter().map(|&(i, c)| (i, q(c))).collect())
    }

    #[test]
    fn add_scaled_cancels() {
        let a = sv(&[(0, 1), (3, 2)]);
        let b = sv(&[(3, 1), (5, 1)]);
        assert_eq!(a.add_scaled(&q(-2), &b), sv(&[(0, 1), (5, -2)]));
    }

    #[test]
    fn subspace_echelon_and_coordinates() {
        let mut s = Subspace::zero(4);
        assert!(s.insert(&sv(&[(1, 2), (2, 2)])));
        assert!(s.insert(&sv(&[(0, 1), (1, 1)])));
        assert!(!s.insert(&sv(&[(0, 2), (1, 4), (2, 2)])));
        assert_eq!(s.dim(), 2);
        assert_eq!(s.pivots(), &[0, 1]);
        let v = sv(&[(0, 3), (1, 5), (2, 2)]);
        let c = s.coordinates(&v).unwrap();
        assert_eq!(c, vec![q(3), q(5)]);
        assert!(s.coordinates(&sv(&[(3, 1)])).is_none());
    }

    #[test]
    fn annihilator_is_orthogonal() {
        let s = Subspace::span(4, &[sv(&[(0, 1), (2, 3)]), sv(&[(1, 2), (3, 1)])]);
        let a = s.annihilator();
        assert_eq!(a.dim(), 2);
        for x in a.basis() {
            for b in s.basis() {
                let dot: Rational = b.iter().map(|(i, c)| c * x.get(i)).sum();
                assert!(dot.is_zero());
            }
        }
    }

    #[test]
    fn intersection_of_planes() {
        let a = Subspace::span(3, &[sv(&[(0, 1)]), sv(&[(1, 1)])]);
        let b = Subspace::span(3, &[sv(&[(1, 1)]), sv(&[(2, 1)])]);
        let i = a.intersect(&b);
        assert_eq!(i.dim(), 1);
        assert!(i.contains(&sv(&[(1, 7)])));
        assert_eq!(a.sum(&b).dim(), 3);
    }
}

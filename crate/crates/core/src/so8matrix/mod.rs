//! Standalone model of so8 as 8x8 skew-symmetric integer matrices, used as
//! an independent check on the so8 classification.

use std::fmt;

use crate::exactq::QMatrix;
use crate::rootsys::TypeLabel;

#[derive(Clone, Copy, PartialEq, Eq)]
pub struct Mat8(pub [[i64; 8]; 8]);

impl Mat8 {
    pub fn zero() -> Self {
        Mat8([[0; 8]; 8])
    }

    pub fn identity() -> Self {
        Self::diag([1; 8])
    }

    pub fn diag(d: [i64; 8]) -> Self {
        let mut m = Self::zero();
        for i in 0..8 {
            m.0[i][i] = d[i];
        }
        m
    }

    pub fn mul(&self, o: &Mat8) -> Mat8 {
        let mut m = Self::zero();
        for i in 0..8 {
            for j in 0..8 {
                m.0[i][j] = (0..8).map(|k| self.0[i][k] * o.0[k][j]).sum();
            }
        }
        m
    }

    pub fn transpose(&self) -> Mat8 {
        let mut m = Self::zero();
        for i in 0..8 {
            for j in 0..8 {
                m.0[i][j] = self.0[j][i];
            }
        }
        m
    }

    pub fn scale(&self, c: i64) -> Mat8 {
        let mut m = *self;
        m.0.iter_mut().flatten().for_each(|x| *x *= c);
        m
    }

    pub fn sub(&self, o: &Mat8) -> Mat8 {
        let mut m = *self;
        for i in 0..8 {
            for j in 0..8 {
                m.0[i][j] -= o.0[i][j];
            }
        }
        m
    }

    pub fn bracket(&self, o: &Mat8) -> Mat8 {
        self.mul(o).sub(&o.mul(self))
    }

    pub fn is_orthogonal(&self) -> bool {
        self.mul(&self.transpose()) == Self::identity()
    }

    /// `A X A^T`
    pub fn conj(&self, x: &Mat8) -> Mat8 {
        self.mul(x).mul(&self.transpose())
    }

    /// Upper-triangle coordinates of a skew matrix.
    pub fn coords(&self) -> Vec<i64> {
        (0..8).flat_map(|i| (i + 1..8).map(move |j| (i, j))).map(|(i, j)| self.0[i][j]).collect()
    }
}

impl fmt::Debug for Mat8 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.0 {
            writeln!(f, "{r:?}")?;
        }
        Ok(())
    }
}

/// The 28 matrices `E_ij - E_ji`, `i < j`.
pub fn skew_basis() -> Vec<Mat8> {
    let mut out = Vec::new();
    for i in 0..8 {
        for j in i + 1..8 {
            let mut m = Mat8::zero();
            m.0[i][j] = 1;
            m.0[j][i] = -1;
            out.push(m);
        }
    }
    out
}

fn from_coords(c: &[i64]) -> Mat8 {
    let mut m = Mat8::zero();
    let mut k = 0;
    for i in 0..8 {
        for j in i + 1..8 {
            m.0[i][j] = c[k];
            m.0[j][i] = -c[k];
            k += 1;
        }
    }
    m
}

/// `None` when all signs agree, since the action is then trivial.
pub fn diag_involution(signs: [i64; 8]) -> Option<Mat8> {
    let valid = signs.iter().all(|s| s.abs() == 1) && signs.iter().any(|s| *s != signs[0]);
    valid.then(|| Mat8::diag(signs))
}

/// Complex structure `[[0, -I], [I, 0]]`; conjugation by it fixes `u4`.
pub fn j_involution() -> Mat8 {
    let mut m = Mat8::zero();
    for i in 0..4 {
        m.0[i][i + 4] = -1;
        m.0[i + 4][i] = 1;
    }
    m
}

/// `diag(d, d)`, commuting with the complex structure.
pub fn complex_diag(d: [i64; 4]) -> Mat8 {
    let mut s = [0; 8];
    s[..4].copy_from_slice(&d);
    s[4..].copy_from_slice(&d);
    Mat8::diag(s)
}

fn rank_of(rows: &[Vec<i64>]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    QMatrix::from_i64_rows(rows).rank()
}

fn integral(v: &[crate::exactq::Rational]) -> Vec<i64> {
    use num_integer::Integer;
    use num_traits::ToPrimitive;
    let l = v.iter().fold(num_bigint::BigInt::from(1), |l, x| l.lcm(x.denom()));
    v.iter()
        .map(|x| (x * crate::exactq::Rational::from_integer(l.clone())).to_integer().to_i64().expect("small"))
        .collect()
}

/// Basis of the skew matrices fixed by conjugation with every `ops[i]`.
pub fn fixed_algebra(ops: &[Mat8]) -> Vec<Mat8> {
    let basis = skew_basis();
    let mut rows: Vec<Vec<i64>> = Vec::new();
    for a in ops {
        let images: Vec<Vec<i64>> = basis.iter().map(|x| a.conj(x).sub(x).coords()).collect();
        for r in 0..28 {
            rows.push((0..28).map(|c| images[c][r]).collect());
        }
    }
    let ker = QMatrix::from_i64_rows(&rows).kernel();
    (0..ker.cols()).map(|c| from_coords(&integral(&ker.column(c)))).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Invariants {
    pub dim: usize,
    pub center: usize,
    pub derived: usize,
}

pub fn invariants(k: &[Mat8]) -> Invariants {
    let n = k.len();
    // center: kernel of x -> ([x, k_j])_j on k
    let mut rows = Vec::new();
    let brs: Vec<Vec<Vec<i64>>> = k.iter().map(|x| k.iter().map(|y| x.bracket(y).coords()).collect()).collect();
    for j in 0..n {
        for r in 0..28 {
            rows.push((0..n).map(|i| brs[i][j][r]).collect());
        }
    }
    let center = if n == 0 { 0 } else { n - rank_of(&rows) };
    let all: Vec<Vec<i64>> = brs.into_iter().flatten().collect();
    Invariants {
        dim: n,
        center,
        derived: rank_of(&all),
    }
}

/// What a reductive algebra of the given type must show.
pub fn label_invariants(l: &TypeLabel) -> Invariants {
    Invariants {
        dim: l.dim(),
        center: l.torus_rank(),
        derived: l.dim() - l.torus_rank(),
    }
}

#[derive(Clone, Debug)]
pub struct OraclePair {
    pub name: String,
    pub sigma: Mat8,
    pub tau: Mat8,
    pub expected: TypeLabel,
}

impl OraclePair {
    /// Conjugation by `A` is an involution iff `A^2 = +-1`.
    pub fn is_valid(&self) -> bool {
        let inv = |a: &Mat8| {
            let s = a.mul(a);
            a.is_orthogonal() && (s == Mat8::identity() || s == Mat8::identity().scale(-1))
        };
        let st = self.sigma.mul(&self.tau);
        let ts = self.tau.mul(&self.sigma);
        inv(&self.sigma) && inv(&self.tau) && (st == ts || st == ts.scale(-1))
    }

    pub fn invariants(&self) -> Invariants {
        invariants(&fixed_algebra(&[self.sigma, self.tau]))
    }
}

fn signs(bits: u32) -> [i64; 8] {
    std::array::from_fn(|i| if bits >> i & 1 == 1 { -1 } else { 1 })
}

/// Sizes of the four joint eigenspaces of two sign matrices, sorted.
fn blocks(s: &[i64; 8], t: &[i64; 8]) -> Vec<usize> {
    let mut b: Vec<usize> = [(1, 1), (1, -1), (-1, 1), (-1, -1)]
        .iter()
        .map(|&(x, y)| (0..8).filter(|&i| s[i] == x && t[i] == y).count())
        .filter(|&n| n > 0)
        .collect();
    b.sort_unstable_by(|a, b| b.cmp(a));
    b
}

/// All commuting pairs of distinct nontrivial involutions among the sign
/// matrices, one per block shape, and the complex structure against
/// `diag(d, d)` for every nontrivial `d`, one per unitary shape.
pub fn oracle_pairs() -> Vec<OraclePair> {
    let mut out: Vec<OraclePair> = Vec::new();
    let mut shapes: Vec<Vec<usize>> = Vec::new();
    // sign vectors up to overall sign: bit 7 clear
    for a in 1..128u32 {
        for b in a + 1..128u32 {
            let (s, t) = (signs(a), signs(b));
            let shape = blocks(&s, &t);
            if shapes.contains(&shape) {
                continue;
            }
            let expected = shape.iter().fold(TypeLabel::default(), |l, &n| l.plus(&TypeLabel::so(n)));
            out.push(OraclePair {
                name: shape.iter().map(|n| format!("so{n}")).collect::<Vec<_>>().join("+"),
                sigma: diag_involution(s).expect("nontrivial"),
                tau: diag_involution(t).expect("nontrivial"),
                expected,
            });
            shapes.push(shape);
        }
    }
    let mut seen = Vec::new();
    for bits in 1..8u32 {
        let d: [i64; 4] = std::array::from_fn(|i| if bits >> i & 1 == 1 { -1 } else { 1 });
        let m = bits.count_ones() as usize;
        if seen.contains(&m.min(4 - m)) {
            continue;
        }
        seen.push(m.min(4 - m));
        out.push(OraclePair {
            name: format!("u{m}+u{}", 4 - m),
            sigma: j_involution(),
            tau: complex_diag(d),
            expected: TypeLabel::u(m).plus(&TypeLabel::u(4 - m)),
        });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactq::q;

    #[test]
    fn skew_basis_closes() {
        let b = skew_basis();
        assert_eq!(b.len(), 28);
        assert_eq!(invariants(&b), Invariants { dim: 28, center: 0, derived: 28 });
    }

    #[test]
    fn single_involutions() {
        assert_eq!(fixed_algebra(&[j_involution()]).len(), 16);
        let d = |s| diag_involution(s).unwrap();
        assert_eq!(fixed_algebra(&[d([-1, 1, 1, 1, 1, 1, 1, 1])]).len(), 21);
        assert_eq!(fixed_algebra(&[d([-1, -1, -1, 1, 1, 1, 1, 1])]).len(), 13);
        assert_eq!(fixed_algebra(&[d([-1, -1, -1, -1, 1, 1, 1, 1])]).len(), 12);
        assert!(diag_involution([1; 8]).is_none());
        assert!(diag_involution([-1; 8]).is_none());
        let k = invariants(&fixed_algebra(&[j_involution()]));
        assert_eq!((k.dim, k.center), (16, 1));
        assert!(j_involution().mul(&complex_diag([-1, 1, 1, 1])) == complex_diag([-1, 1, 1, 1]).mul(&j_involution()));
    }

    #[test]
    fn shapes_cover_the_families() {
        let ps = oracle_pairs();
        assert_eq!(ps.len(), 10 + 2);
        let six = ps.iter().find(|p| p.name == "so6+so1+so1").unwrap();
        assert_eq!(six.invariants().dim, 15);
    }

    #[test]
    fn unitary_pairs() {
        let ps = oracle_pairs();
        let u13 = ps.iter().find(|p| p.name == "u1+u3").unwrap();
        assert_eq!(u13.invariants(), Invariants { dim: 10, center: 2, derived: 8 });
        let u22 = ps.iter().find(|p| p.name == "u2+u2").unwrap();
        assert_eq!(u22.invariants(), Invariants { dim: 8, center: 2, derived: 6 });
    }

    #[test]
    fn every_pair_matches_its_label() {
        for p in oracle_pairs() {
            assert!(p.is_valid(), "{}", p.name);
            assert_eq!(p.invariants(), label_invariants(&p.expected), "{}", p.name);
        }
    }

    proptest::proptest! {
        #[test]
        fn diagonal_fixed_dim(bits in 1u32..255) {
            let s = signs(bits);
            let p = s.iter().filter(|x| **x == 1).count();
            let q = 8 - p;
            let d = diag_involution(s).unwrap();
            proptest::prop_assert_eq!(fixed_algebra(&[d]).len(), p * (p.saturating_sub(1)) / 2 + q * (q.saturating_sub(1)) / 2);
        }
    }

    #[test]
    fn q_is_exact() {
        assert_eq!(integral(&[q(2) / q(3), q(1)]), vec![2, 3]);
    }
}

//! Exact integer and rational arithmetic with dense linear algebra.
//!
//! Dense elimination is fraction-free (Bareiss): every row is first scaled to
//! integers and all intermediate quotients are exact. Pivots are chosen as the
//! first nonzero entry in column order, so kernels come out the same on every
//! run.

mod sparse;

pub use sparse::{SparseVec, Subspace};

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Reduced fraction with a positive denominator.
pub type Rational = BigRational;

pub fn q(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn q_frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LinAlgError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
}

/// Dense rational matrix stored row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    pub fn from_rows(rows: &[Vec<Rational>]) -> Result<Self, LinAlgError> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(LinAlgError::DimensionMismatch {
                    expected: cols,
                    found: r.len(),
                });
            }
            entries.extend(r.iter().cloned());
        }
        Ok(Self {
            rows: rows.len(),
            cols,
            entries,
        })
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Self {
        let rows: Vec<Vec<Rational>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| q(x)).collect())
            .collect();
        Self::from_rows(&rows).expect("ragged integer rows")
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, cols: &[Vec<Rational>]) -> Self {
        let mut m = Self::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows, "column length");
            for (i, x) in c.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn mul(&self, other: &QMatrix) -> Result<QMatrix, LinAlgError> {
        if self.cols != other.rows {
            return Err(LinAlgError::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = QMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, x: &[Rational]) -> Result<Vec<Rational>, LinAlgError> {
        if x.len() != self.cols {
            return Err(LinAlgError::DimensionMismatch {
                expected: self.cols,
                found: x.len(),
            });
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(x)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect())
    }

    /// Rank over the rationals.
    pub fn rank(&self) -> usize {
        Echelon::of(self, None).pivots.len()
    }

    /// Columns form a basis of the right null space.
    pub fn kernel(&self) -> QMatrix {
        let ech = Echelon::of(self, None);
        let basis = ech.null_basis();
        QMatrix::from_columns(self.cols, &basis)
    }

    /// Some `x` with `self * x = b`, or `None` if the system is inconsistent.
    pub fn solve(&self, b: &[Rational]) -> Result<Option<Vec<Rational>>, LinAlgError> {
        if b.len() != self.rows {
            return Err(LinAlgError::DimensionMismatch {
                expected: self.rows,
                found: b.len(),
            });
        }
        let ech = Echelon::of(self, Some(b));
        Ok(ech.particular_solution())
    }

    /// Inverse of a square matrix, `None` if singular.
    pub fn inverse(&self) -> Option<QMatrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut cols = Vec::with_capacity(n);
        for j in 0..n {
            let mut e = vec![Rational::zero(); n];
            e[j] = Rational::one();
            cols.push(self.solve(&e).ok()??);
        }
        if self.rank() < n {
            return None;
        }
        Some(QMatrix::from_columns(n, &cols))
    }
}

impl std::ops::Index<(usize, usize)> for QMatrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for QMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.entries[i * self.cols + j]
    }
}

impl fmt::Debug for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "QMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "  {}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

/// Integer row-echelon form produced by Bareiss elimination, with an optional
/// augmented right-hand side carried as the last column.
struct Echelon {
    cols: usize,
    rows: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
    inconsistent: bool,
}

fn integer_row(row: &[Rational], extra: Option<&Rational>) -> Vec<BigInt> {
    let lcm = row
        .iter()
        .chain(extra)
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    row.iter()
        .chain(extra)
        .map(|x| x.numer() * (&lcm / x.denom()))
        .collect()
}

impl Echelon {
    fn of(m: &QMatrix, rhs: Option<&[Rational]>) -> Self {
        let cols = m.cols;
        let mut rows: Vec<Vec<BigInt>> = (0..m.rows)
            .map(|i| integer_row(m.row(i), rhs.map(|b| &b[i])))
            .collect();
        let width = cols + usize::from(rhs.is_some());
        let mut pivots = Vec::new();
        let mut prev = BigInt::one();
        let mut r = 0;
        for c in 0..width {
            if r == rows.len() {
                break;
            }
            let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
                continue;
            };
            rows.swap(r, p);
            let (head, tail) = rows.split_at_mut(r + 1);
            let pivot_row = &head[r];
            let pv = pivot_row[c].clone();
            for row in tail.iter_mut() {
                let f = row[c].clone();
                for j in c + 1..width {
                    let num = &pv * &row[j] - &f * &pivot_row[j];
                    debug_assert!((&num % &prev).is_zero());
                    row[j] = num / &prev;
                }
                row[c] = BigInt::zero();
            }
            prev = pv;
            pivots.push(c);
            r += 1;
        }
        let inconsistent = rhs.is_some() && pivots.last() == Some(&cols);
        if inconsistent {
            pivots.pop();
        }
        rows.truncate(pivots.len());
        Self {
            cols,
            rows,
            pivots,
            inconsistent,
        }
    }

    /// Back substitution with the given values on free columns.
    fn back_substitute(&self, mut x: Vec<Rational>, rhs_col: Option<usize>) -> Vec<Rational> {
        for (r, &pc) in self.pivots.iter().enumerate().rev() {
            let row = &self.rows[r];
            let mut acc = match rhs_col {
                Some(c) => Rational::from_integer(row[c].clone()),
                None => Rational::zero(),
            };
            for j in pc + 1..self.cols {
                if !row[j].is_zero() && !x[j].is_zero() {
                    acc -= &x[j] * Rational::from_integer(row[j].clone());
                }
            }
            x[pc] = acc / Rational::from_integer(row[pc].clone());
        }
        x
    }

    fn null_basis(&self) -> Vec<Vec<Rational>> {
        let mut is_pivot = vec![false; self.cols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut x = vec![Rational::zero(); self.cols];
                x[free] = Rational::one();
                let mut v = self.back_substitute(x, None);
                // scale to a primitive integer vector for readability
                let lcm = v.iter().fold(BigInt::one(), |a, e| a.lcm(e.denom()));
                for e in v.iter_mut() {
                    *e = &*e * Rational::from_integer(lcm.clone());
                }
                let g = v
                    .iter()
                    .fold(BigInt::zero(), |a, e| a.gcd(e.numer()));
                if !g.is_zero() && !g.is_one() {
                    for e in v.iter_mut() {
                        *e = &*e / Rational::from_integer(g.clone());
                    }
                }
                if v.iter().find(|e| !e.is_zero()).is_some_and(|e| e.is_negative()) {
                    for e in v.iter_mut() {
                        *e = -&*e;
                    }
                }
                v
            })
            .collect()
    }

    fn particular_solution(&self) -> Option<Vec<Rational>> {
        if self.inconsistent {
            return None;
        }
        let x = vec![Rational::zero(); self.cols];
        Some(self.back_substitute(x, Some(self.cols)))
    }
}

pub fn rank(m: &QMatrix) -> usize {
    m.rank()
}

pub fn kernel(m: &QMatrix) -> QMatrix {
    m.kernel()
}

pub fn solve(m: &QMatrix, b: &[Rational]) -> Result<Option<Vec<Rational>>, LinAlgError> {
    m.solve(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ones(n: usize) -> QMatrix {
        QMatrix::from_i64_rows(&vec![vec![1; n]; n])
    }

    #[test]
    fn rank_examples() {
        assert_eq!(QMatrix::identity(3).rank(), 3);
        assert_eq!(QMatrix::from_i64_rows(&[vec![1, 1]]).rank(), 1);
        assert_eq!(ones(4).rank(), 1);
        assert_eq!(QMatrix::zeros(3, 5).rank(), 0);
    }

    #[test]
    fn kernel_examples() {
        let k = QMatrix::from_i64_rows(&[vec![1, 1]]).kernel();
        assert_eq!(k.cols(), 1);
        assert_eq!(k.column(0), vec![q(1), q(-1)]);
        assert_eq!(QMatrix::identity(4).kernel().cols(), 0);
        assert_eq!(QMatrix::zeros(2, 2).kernel().cols(), 2);
    }

    #[test]
    fn solve_examples() {
        let b = vec![q(3), q_frac(-1, 2), q(7)];
        assert_eq!(QMatrix::identity(3).solve(&b).unwrap(), Some(b));
        let x = QMatrix::from_i64_rows(&[vec![1, 1]])
            .solve(&[q(2)])
            .unwrap()
            .unwrap();
        assert_eq!(&x[0] + &x[1], q(2));
        let bad = QMatrix::from_i64_rows(&[vec![1, 0], vec![1, 0]]);
        assert_eq!(bad.solve(&[q(0), q(1)]).unwrap(), None);
        assert!(matches!(
            bad.solve(&[q(0)]),
            Err(LinAlgError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn inverse_roundtrip() {
        let m = QMatrix::from_i64_rows(&[vec![2, 1, 0], vec![1, 3, 1], vec![0, 1, 4]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), QMatrix::identity(3));
        assert!(ones(3).inverse().is_none());
    }

    fn small_matrix() -> impl Strategy<Value = QMatrix> {
        (1usize..6, 1usize..7).prop_flat_map(|(r, c)| {
            proptest::collection::vec(
                proptest::collection::vec((-4i64..5, 1i64..4), c),
                r,
            )
            .prop_map(|rows| {
                let rows: Vec<Vec<Rational>> = rows
                    .into_iter()
                    .map(|row| row.into_iter().map(|(n, d)| q_frac(n, d)).collect())
                    .collect();
                QMatrix::from_rows(&rows).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn rank_nullity(m in small_matrix()) {
            let k = m.kernel();
            prop_assert_eq!(m.rank() + k.cols(), m.cols());
            prop_assert!(m.mul(&k).unwrap().is_zero());
            prop_assert_eq!(k.rank(), k.cols());
        }

        #[test]
        fn solve_reproduces_rhs(m in small_matrix(), seed in proptest::collection::vec(-3i64..4, 6)) {
            let x0: Vec<Rational> = (0..m.cols()).map(|i| q(seed[i % seed.len()])).collect();
            let b = m.mul_vec(&x0).unwrap();
            let x = m.solve(&b).unwrap().expect("consistent by construction");
            prop_assert_eq!(m.mul_vec(&x).unwrap(), b);
        }
    }
}

use std::sync::Arc;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::LieAlgebra;
use crate::exactq::{QMatrix, Rational, SparseVec, Subspace};

/// A subspace of an algebra, usually (but not necessarily) bracket-closed.
#[derive(Clone)]
pub struct Subalgebra {
    alg: Arc<LieAlgebra>,
    space: Subspace,
}

impl std::fmt::Debug for Subalgebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Subalgebra(dim {} in {:?})", self.dim(), self.alg)
    }
}

impl Subalgebra {
    pub fn new(alg: Arc<LieAlgebra>, space: Subspace) -> Self {
        assert_eq!(space.ambient(), alg.dim());
        Self { alg, space }
    }

    pub fn whole(alg: Arc<LieAlgebra>) -> Self {
        let space = Subspace::full(alg.dim());
        Self { alg, space }
    }

    pub fn cartan(alg: Arc<LieAlgebra>) -> Self {
        let space = Subspace::span(alg.dim(), &(0..alg.rank()).map(SparseVec::unit).collect::<Vec<_>>());
        Self { alg, space }
    }

    /// Smallest bracket-closed subspace containing `gens`.
    pub fn closure(alg: Arc<LieAlgebra>, gens: &[SparseVec]) -> Self {
        let mut space = Subspace::zero(alg.dim());
        let mut spanning: Vec<SparseVec> = Vec::new();
        for g in gens {
            if space.insert(g) {
                spanning.push(g.clone());
            }
        }
        let mut i = 0;
        while i < spanning.len() {
            for j in 0..i {
                let v = alg.bracket(&spanning[i], &spanning[j]);
                if space.insert(&v) {
                    spanning.push(v);
                }
            }
            i += 1;
        }
        Self { alg, space }
    }

    pub fn algebra(&self) -> &Arc<LieAlgebra> {
        &self.alg
    }

    pub fn space(&self) -> &Subspace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn basis(&self) -> &[SparseVec] {
        self.space.basis()
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.space.contains(v)
    }

    pub fn is_closed(&self) -> bool {
        let b = self.basis();
        (0..b.len()).all(|i| (0..i).all(|j| self.contains(&self.alg.bracket(&b[i], &b[j]))))
    }

    pub fn is_abelian(&self) -> bool {
        let b = self.basis();
        (0..b.len()).all(|i| (0..i).all(|j| self.alg.bracket(&b[i], &b[j]).is_zero()))
    }

    pub fn intersect(&self, other: &Subalgebra) -> Subalgebra {
        Self::new(self.alg.clone(), self.space.intersect(&other.space))
    }

    /// Elements of `self` commuting with all of `s`.
    pub fn centralizer_of(&self, s: &Subalgebra) -> Subalgebra {
        centralizer(s, self)
    }

    pub fn center(&self) -> Subalgebra {
        centralizer(self, self)
    }

    pub fn derived(&self) -> Subalgebra {
        let b = self.basis();
        let mut space = Subspace::zero(self.alg.dim());
        for i in 0..b.len() {
            for j in 0..i {
                space.insert(&self.alg.bracket(&b[i], &b[j]));
            }
        }
        Self::new(self.alg.clone(), space)
    }

    /// Structure constants in this subalgebra's own basis, `None` if not closed.
    pub fn structure(&self) -> Option<Structure> {
        let b = self.basis();
        let n = b.len();
        let mut c = vec![vec![SparseVec::new(); n]; n];
        for i in 0..n {
            for j in 0..i {
                let v = self.alg.bracket(&b[i], &b[j]);
                let coords = self.space.coordinates(&v)?;
                let s = SparseVec::from_dense(&coords);
                c[j][i] = s.neg();
                c[i][j] = s;
            }
        }
        Some(Structure { c })
    }

    /// Minimal dimension of `ker ad_x` over seeded random `x`.
    pub fn generic_rank(&self, seed: u64) -> usize {
        self.structure().expect("generic rank of a non-closed subspace").generic_rank(seed)
    }
}

/// Elements of `within` that commute with every element of `s`.
pub fn centralizer(s: &Subalgebra, within: &Subalgebra) -> Subalgebra {
    let alg = within.alg.clone();
    let w = within.basis();
    // One equation per (element of s, ambient coordinate), unknowns indexed by w.
    let mut rows: std::collections::BTreeMap<(usize, usize), Vec<(usize, Rational)>> = Default::default();
    for (j, sj) in s.basis().iter().enumerate() {
        for (i, wi) in w.iter().enumerate() {
            for (t, c) in alg.bracket(wi, sj).iter() {
                rows.entry((j, t)).or_default().push((i, c.clone()));
            }
        }
    }
    let mut row_space = Subspace::zero(w.len());
    for (_, r) in rows {
        row_space.insert(&SparseVec::from_pairs(r));
        if row_space.dim() == w.len() {
            break;
        }
    }
    let mut out = Subspace::zero(alg.dim());
    for coeffs in row_space.annihilator().basis() {
        let mut x = SparseVec::new();
        for (i, c) in coeffs.iter() {
            x = x.add_scaled(c, &w[i]);
        }
        out.insert(&x);
    }
    Subalgebra::new(alg, out)
}

/// Structure constants of an abstract algebra: `c[i][j]` holds the
/// coordinates of `[b_i, b_j]`.
#[derive(Clone, Debug)]
pub struct Structure {
    pub c: Vec<Vec<SparseVec>>,
}

impl Structure {
    pub fn dim(&self) -> usize {
        self.c.len()
    }

    /// Matrix of `ad_x` (column `j` is `[x, b_j]`).
    pub fn ad(&self, x: &[Rational]) -> QMatrix {
        let n = self.dim();
        let mut m = QMatrix::zeros(n, n);
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for j in 0..n {
                for (k, c) in self.c[i][j].iter() {
                    m[(k, j)] += xi * c;
                }
            }
        }
        m
    }

    /// Restriction of `ad_x` to the coordinate subspace `cols`, read in the
    /// coordinates `rows`.
    pub fn ad_block(&self, x: &[Rational], rows: &[usize], cols: &[usize]) -> QMatrix {
        let full = self.ad(x);
        let mut m = QMatrix::zeros(rows.len(), cols.len());
        for (a, &r) in rows.iter().enumerate() {
            for (b, &c) in cols.iter().enumerate() {
                m[(a, b)] = full[(r, c)].clone();
            }
        }
        m
    }

    pub fn random_element(&self, rng: &mut ChaCha8Rng) -> Vec<Rational> {
        (0..self.dim())
            .map(|_| Rational::from_integer(rng.gen_range(-9i64..=9).into()))
            .collect()
    }

    pub const SAMPLES: u64 = 5;

    pub fn generic_rank(&self, seed: u64) -> usize {
        let n = self.dim();
        (0..Self::SAMPLES)
            .map(|s| {
                let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(s));
                n - self.ad(&self.random_element(&mut rng)).rank()
            })
            .min()
            .unwrap_or(0)
    }

    pub fn center_dim(&self) -> usize {
        let n = self.dim();
        // x central iff sum_i x_i c[i][j] = 0 for all j
        let mut rows = Subspace::zero(n);
        for j in 0..n {
            let mut per_k: std::collections::BTreeMap<usize, Vec<(usize, Rational)>> = Default::default();
            for i in 0..n {
                for (k, c) in self.c[i][j].iter() {
                    per_k.entry(k).or_default().push((i, c.clone()));
                }
            }
            for (_, r) in per_k {
                rows.insert(&SparseVec::from_pairs(r));
            }
        }
        n - rows.dim()
    }

    pub fn derived_dim(&self) -> usize {
        let n = self.dim();
        let mut s = Subspace::zero(n);
        for i in 0..n {
            for j in 0..i {
                s.insert(&self.c[i][j]);
            }
        }
        s.dim()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chevalley::algebra;

    fn alg(s: &str) -> Arc<LieAlgebra> {
        algebra(s.parse().unwrap())
    }

    #[test]
    fn single_root_vector_is_abelian_line() {
        let a = alg("e6");
        let s = Subalgebra::closure(a.clone(), &[SparseVec::unit(a.e(7))]);
        assert_eq!(s.dim(), 1);
        assert!(s.is_abelian());
    }

    #[test]
    fn e6_subsystem_generators_close_to_dim_38() {
        let a = alg("e6");
        let rs = a.root_system();
        let d = rs.extended_diagram();
        let mut gens = Vec::new();
        for node in [1, 2, 3, 4, 5, 0] {
            let r = d.node_root(node);
            gens.push(SparseVec::unit(a.e(r)));
            gens.push(SparseVec::unit(a.e(rs.neg(r))));
        }
        let s = Subalgebra::closure(a.clone(), &gens);
        assert_eq!(s.dim(), 38);
        assert!(s.is_closed());
        let whole = Subalgebra::whole(a.clone());
        assert_eq!(centralizer(&s, &whole).dim(), 0);
        assert_eq!(s.generic_rank(1), 6);
    }

    #[test]
    fn centralizers() {
        let a = alg("g2");
        let whole = Subalgebra::whole(a.clone());
        assert_eq!(whole.center().dim(), 0);
        let h = Subalgebra::cartan(a.clone());
        assert_eq!(centralizer(&h, &whole).dim(), 2);
        assert_eq!(h.generic_rank(3), 2);
        assert_eq!(whole.generic_rank(3), 2);
    }

    #[test]
    fn random_pair_generates_g2() {
        let a = alg("g2");
        for seed in 0..4 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut v = || {
                SparseVec::from_pairs(
                    (0..14).map(|i| (i, Rational::from_integer(rng.gen_range(-3i64..=3).into()))).collect(),
                )
            };
            let gens = [v(), v()];
            assert_eq!(Subalgebra::closure(a.clone(), &gens).dim(), 14);
        }
    }

    #[test]
    fn closure_is_idempotent() {
        let a = alg("b3");
        let gens = [SparseVec::unit(a.e(0)), SparseVec::unit(a.e(a.root_system().neg(1)))];
        let s = Subalgebra::closure(a.clone(), &gens);
        let t = Subalgebra::closure(a.clone(), s.basis());
        assert_eq!(s.space(), t.space());
    }

    #[test]
    fn whole_structure_invariants() {
        let a = alg("a2");
        let st = Subalgebra::whole(a).structure().unwrap();
        assert_eq!(st.center_dim(), 0);
        assert_eq!(st.derived_dim(), 8);
        assert_eq!(st.generic_rank(0), 2);
    }
}

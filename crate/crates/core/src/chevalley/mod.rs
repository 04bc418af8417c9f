//! Split simple Lie algebras over Q in a Chevalley basis.
//!
//! Basis order: `h_1..h_r` (simple coroots), then `e_alpha` for every root in
//! root-index order, so basis index `r + i` is the root vector of root `i`.
//! `[e_alpha, e_-alpha] = h_alpha` for every root.
//!
//! Simply laced types use a bimultiplicative sign cocycle on the root lattice.
//! The remaining types are cut out of a simply laced algebra as the
//! subalgebra generated by orbit sums of diagram-automorphism generators.

mod cache;
mod fold;
mod subalgebra;

use std::collections::HashMap;
use std::path::Path;
use std::sync::{Arc, Mutex, OnceLock};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::exactq::{Rational, SparseVec};
use crate::rootsys::{RootError, RootIndex, RootSystem, SimpleType};

pub use cache::{read_cache, write_cache};
pub use subalgebra::{centralizer, Structure, Subalgebra};

#[derive(Debug, Error)]
pub enum ChevalleyError {
    #[error("Jacobi identity fails on basis triple ({0}, {1}, {2})")]
    Jacobi(usize, usize, usize),
    #[error("inconsistent structure constants: {0}")]
    Inconsistent(String),
    #[error("bad cache file: {0}")]
    Cache(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Root(#[from] RootError),
}

/// Which of the two mirror-image sign cocycles to use for simply laced types.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Convention {
    #[default]
    Standard,
    Flipped,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum JacobiPolicy {
    Exhaustive,
    Sampled { triples: usize, seed: u64 },
}

impl JacobiPolicy {
    pub const SAMPLES: usize = 100_000;

    pub fn default_for(dim: usize) -> Self {
        if dim <= 52 {
            JacobiPolicy::Exhaustive
        } else {
            JacobiPolicy::Sampled {
                triples: Self::SAMPLES,
                seed: 0x5eed,
            }
        }
    }
}

/// How a non-simple root vector arises from a generator: for a positive root
/// `[e_{alpha_i}, e_prev] = coeff * e_root`, for a negative one
/// `[e_{-alpha_i}, e_prev] = coeff * e_root`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Word {
    pub generator: usize,
    pub prev: RootIndex,
    pub coeff: i64,
}

pub type Table = Vec<Vec<(usize, i64)>>;

pub struct LieAlgebra {
    rs: RootSystem,
    convention: Convention,
    table: Table,
    words: Vec<Option<Word>>,
}

impl std::fmt::Debug for LieAlgebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "LieAlgebra({}, dim {})", self.rs.cartan_type(), self.dim())
    }
}

fn sign(rs: &RootSystem, r: RootIndex) -> i64 {
    if rs.is_positive(r) {
        1
    } else {
        -1
    }
}

fn cocycle(rs: &RootSystem, conv: Convention, a: &[i64], b: &[i64]) -> i64 {
    let g = rs.gram_matrix();
    let n = rs.rank();
    let mut parity = 0i64;
    for i in 0..n {
        for j in 0..n {
            let odd = i == j
                || (g[i][j] == -1
                    && match conv {
                        Convention::Standard => i < j,
                        Convention::Flipped => i > j,
                    });
            if odd {
                parity += a[i] * b[j];
            }
        }
    }
    if parity.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

fn simply_laced_table(rs: &RootSystem, conv: Convention) -> Table {
    let r = rs.rank();
    let dim = rs.algebra_dim();
    let mut table = vec![Vec::new(); dim * dim];
    for a in 0..dim {
        for b in 0..dim {
            let entry = &mut table[a * dim + b];
            match (a.checked_sub(r), b.checked_sub(r)) {
                (None, None) => {}
                (None, Some(beta)) => {
                    let c = rs.on_coroot(beta, a);
                    if c != 0 {
                        entry.push((b, c));
                    }
                }
                (Some(alpha), None) => {
                    let c = rs.on_coroot(alpha, b);
                    if c != 0 {
                        entry.push((a, -c));
                    }
                }
                (Some(alpha), Some(beta)) => {
                    if beta == rs.neg(alpha) {
                        for (i, c) in rs.coroot_coeffs(alpha).into_iter().enumerate() {
                            if c != 0 {
                                entry.push((i, c));
                            }
                        }
                    } else if let Some(g) = rs.sum(alpha, beta) {
                        let n = sign(rs, alpha) * sign(rs, beta) * sign(rs, g) * cocycle(rs, conv, rs.root(alpha), rs.root(beta));
                        entry.push((r + g, n));
                    }
                }
            }
        }
    }
    table
}

impl LieAlgebra {
    pub fn build(ty: SimpleType) -> Result<Self, ChevalleyError> {
        Self::build_with(ty, Convention::Standard)
    }

    pub fn build_with(ty: SimpleType, convention: Convention) -> Result<Self, ChevalleyError> {
        let alg = Self::build_unchecked(ty, convention)?;
        alg.verify_jacobi(JacobiPolicy::default_for(alg.dim()))?;
        Ok(alg)
    }

    fn build_unchecked(ty: SimpleType, convention: Convention) -> Result<Self, ChevalleyError> {
        if !ty.is_valid() {
            return Err(RootError::UnsupportedType(ty.to_string()).into());
        }
        let rs = RootSystem::new(ty);
        let table = if ty.is_simply_laced() {
            simply_laced_table(&rs, convention)
        } else {
            fold::folded_table(&rs)?
        };
        Self::from_table(rs, convention, table)
    }

    /// Wraps a table after checking the Chevalley relations (not Jacobi).
    pub fn from_table(rs: RootSystem, convention: Convention, table: Table) -> Result<Self, ChevalleyError> {
        let mut alg = Self {
            rs,
            convention,
            table,
            words: Vec::new(),
        };
        alg.check_relations()?;
        alg.words = alg.derive_words();
        Ok(alg)
    }

    fn derive_words(&self) -> Vec<Option<Word>> {
        let rs = &self.rs;
        let r = rs.rank();
        let mut words = vec![None; rs.num_roots()];
        for xi in r..rs.num_positive() {
            let (i, prev) = (0..r)
                .find_map(|i| rs.difference(xi, i).filter(|&p| rs.is_positive(p)).map(|p| (i, p)))
                .expect("non-simple positive root has a positive predecessor");
            let coeff = self.coefficient(self.e(i), self.e(prev), self.e(xi));
            words[xi] = Some(Word { generator: i, prev, coeff });
            let nprev = rs.neg(prev);
            let coeff = self.coefficient(self.e(rs.neg(i)), self.e(nprev), self.e(rs.neg(xi)));
            words[rs.neg(xi)] = Some(Word {
                generator: i,
                prev: nprev,
                coeff,
            });
        }
        words
    }

    fn check_relations(&self) -> Result<(), ChevalleyError> {
        let rs = &self.rs;
        let r = rs.rank();
        let dim = self.dim();
        let bad = |s: String| Err(ChevalleyError::Inconsistent(s));
        if self.table.len() != dim * dim {
            return bad(format!("table has {} entries, expected {}", self.table.len(), dim * dim));
        }
        for a in 0..dim {
            for b in 0..dim {
                let ab = &self.table[a * dim + b];
                let ba = &self.table[b * dim + a];
                if ab.len() != ba.len() || ab.iter().zip(ba).any(|(x, y)| x.0 != y.0 || x.1 != -y.1) {
                    return bad(format!("[{a},{b}] is not antisymmetric"));
                }
            }
        }
        for i in 0..r {
            for beta in 0..rs.num_roots() {
                let want: Vec<(usize, i64)> = match rs.on_coroot(beta, i) {
                    0 => vec![],
                    c => vec![(self.e(beta), c)],
                };
                if self.bracket_basis(i, self.e(beta)) != want.as_slice() {
                    return bad(format!("[h_{i}, e_{beta}]"));
                }
            }
            for j in 0..r {
                if !self.bracket_basis(i, j).is_empty() {
                    return bad("Cartan is not abelian".into());
                }
            }
        }
        for alpha in 0..rs.num_roots() {
            for beta in 0..rs.num_roots() {
                let got = self.bracket_basis(self.e(alpha), self.e(beta));
                if beta == rs.neg(alpha) {
                    let want: Vec<(usize, i64)> = rs
                        .coroot_coeffs(alpha)
                        .into_iter()
                        .enumerate()
                        .filter(|p| p.1 != 0)
                        .collect();
                    if got != want.as_slice() {
                        return bad(format!("[e_{alpha}, e_-{alpha}] is not the coroot"));
                    }
                } else if let Some(g) = rs.sum(alpha, beta) {
                    let p = rs.string_down(alpha, beta);
                    match got {
                        [(k, n)] if *k == self.e(g) && n.abs() == p + 1 => {}
                        _ => return bad(format!("N({alpha},{beta}) = {got:?}, expected magnitude {}", p + 1)),
                    }
                } else if !got.is_empty() {
                    return bad(format!("[e_{alpha}, e_{beta}] should vanish"));
                }
            }
        }
        Ok(())
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    pub fn cartan_type(&self) -> SimpleType {
        self.rs.cartan_type()
    }

    pub fn convention(&self) -> Convention {
        self.convention
    }

    pub fn rank(&self) -> usize {
        self.rs.rank()
    }

    pub fn dim(&self) -> usize {
        self.rs.algebra_dim()
    }

    /// Basis index of the simple coroot `h_i`.
    pub fn h(&self, i: usize) -> usize {
        i
    }

    /// Basis index of the root vector `e_root`.
    pub fn e(&self, root: RootIndex) -> usize {
        self.rank() + root
    }

    /// Root of a basis index, `None` for Cartan elements.
    pub fn root_of(&self, b: usize) -> Option<RootIndex> {
        b.checked_sub(self.rank())
    }

    pub fn word(&self, root: RootIndex) -> Option<&Word> {
        self.words[root].as_ref()
    }

    pub fn table(&self) -> &Table {
        &self.table
    }

    pub fn bracket_basis(&self, a: usize, b: usize) -> &[(usize, i64)] {
        &self.table[a * self.dim() + b]
    }

    fn coefficient(&self, a: usize, b: usize, k: usize) -> i64 {
        self.bracket_basis(a, b).iter().find(|e| e.0 == k).map_or(0, |e| e.1)
    }

    /// `N(alpha, beta)` with `[e_alpha, e_beta] = N e_{alpha+beta}`.
    pub fn structure_constant(&self, alpha: RootIndex, beta: RootIndex) -> i64 {
        match self.rs.sum(alpha, beta) {
            Some(g) => self.coefficient(self.e(alpha), self.e(beta), self.e(g)),
            None => 0,
        }
    }

    pub fn bracket(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        let mut pairs: Vec<(usize, Rational)> = Vec::new();
        for (a, ca) in x.iter() {
            for (b, cb) in y.iter() {
                let entry = self.bracket_basis(a, b);
                if entry.is_empty() {
                    continue;
                }
                let c = ca * cb;
                for &(k, n) in entry {
                    pairs.push((k, &c * Rational::from_integer(n.into())));
                }
            }
        }
        SparseVec::from_pairs(pairs)
    }

    /// `[[a,b],c] + [[b,c],a] + [[c,a],b]` on basis elements.
    pub fn jacobiator(&self, a: usize, b: usize, c: usize) -> Vec<(usize, i64)> {
        let mut acc: HashMap<usize, i64> = HashMap::new();
        for (x, y, z) in [(a, b, c), (b, c, a), (c, a, b)] {
            for &(k, n) in self.bracket_basis(x, y) {
                for &(l, m) in self.bracket_basis(k, z) {
                    *acc.entry(l).or_default() += n * m;
                }
            }
        }
        let mut out: Vec<(usize, i64)> = acc.into_iter().filter(|p| p.1 != 0).collect();
        out.sort();
        out
    }

    /// Returns the number of triples checked.
    pub fn verify_jacobi(&self, policy: JacobiPolicy) -> Result<usize, ChevalleyError> {
        let dim = self.dim();
        let check = |a, b, c| {
            if self.jacobiator(a, b, c).is_empty() {
                Ok(())
            } else {
                Err(ChevalleyError::Jacobi(a, b, c))
            }
        };
        match policy {
            JacobiPolicy::Exhaustive => {
                for a in 0..dim {
                    for b in 0..dim {
                        for c in 0..dim {
                            check(a, b, c)?;
                        }
                    }
                }
                Ok(dim * dim * dim)
            }
            JacobiPolicy::Sampled { triples, seed } => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                for _ in 0..triples {
                    check(rng.gen_range(0..dim), rng.gen_range(0..dim), rng.gen_range(0..dim))?;
                }
                Ok(triples)
            }
        }
    }

    /// Expresses the coroot of `root` in the `h` basis.
    pub fn coroot_vector(&self, root: RootIndex) -> SparseVec {
        SparseVec::from_pairs(
            self.rs
                .coroot_coeffs(root)
                .into_iter()
                .enumerate()
                .map(|(i, c)| (i, Rational::from_integer(c.into())))
                .collect(),
        )
    }

    pub fn basis_name(&self, b: usize) -> String {
        match self.root_of(b) {
            None => format!("h{}", b + 1),
            Some(r) => format!("e{:?}", self.rs.root(r)),
        }
    }
}

type Registry = Mutex<HashMap<(SimpleType, Convention), Arc<LieAlgebra>>>;

fn registry() -> &'static Registry {
    static REG: OnceLock<Registry> = OnceLock::new();
    REG.get_or_init(Default::default)
}

/// Shared algebra instance; built (and Jacobi-checked) once per process.
///
/// # Panics
///
/// If construction fails, which means the sign assignment is broken.
pub fn algebra(ty: SimpleType) -> Arc<LieAlgebra> {
    algebra_with(ty, Convention::Standard)
}

pub fn algebra_with(ty: SimpleType, convention: Convention) -> Arc<LieAlgebra> {
    if let Some(a) = registry().lock().unwrap().get(&(ty, convention)) {
        return a.clone();
    }
    let built = Arc::new(LieAlgebra::build_with(ty, convention).unwrap_or_else(|e| panic!("building {ty}: {e}")));
    registry()
        .lock()
        .unwrap()
        .entry((ty, convention))
        .or_insert(built)
        .clone()
}

/// Loads the standard-convention algebra from `dir`, building and writing
/// the cache file if it is missing, and registers it for [`algebra`].
pub fn preload(ty: SimpleType, dir: &Path) -> Result<Arc<LieAlgebra>, ChevalleyError> {
    let path = dir.join(format!("{}.cache", ty.to_string().to_lowercase()));
    let alg = if path.exists() {
        let alg = read_cache(&std::fs::read_to_string(&path)?)?;
        alg.verify_jacobi(JacobiPolicy::default_for(alg.dim()))?;
        alg
    } else {
        let alg = LieAlgebra::build(ty)?;
        std::fs::create_dir_all(dir)?;
        std::fs::write(&path, write_cache(&alg))?;
        alg
    };
    let alg = Arc::new(alg);
    registry()
        .lock()
        .unwrap()
        .insert((ty, Convention::Standard), alg.clone());
    Ok(alg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactq::q;

    fn alg(s: &str) -> Arc<LieAlgebra> {
        algebra(s.parse().unwrap())
    }

    #[test]
    fn sl2_relations() {
        let a = alg("a1");
        assert_eq!(a.dim(), 3);
        let (h, e, f) = (0, a.e(0), a.e(1));
        assert_eq!(a.bracket_basis(h, e), &[(e, 2)]);
        assert_eq!(a.bracket_basis(h, f), &[(f, -2)]);
        assert_eq!(a.bracket_basis(e, f), &[(h, 1)]);
    }

    #[test]
    fn dimensions() {
        for (t, d) in [("g2", 14), ("f4", 52), ("d4", 28), ("e6", 78), ("b3", 21), ("c3", 21)] {
            assert_eq!(alg(t).dim(), d);
        }
    }

    #[test]
    fn magnitudes_by_type() {
        for t in ["g2", "f4", "e6", "b3", "c3"] {
            let a = alg(t);
            let n = a.root_system().num_roots();
            let max = (0..n)
                .flat_map(|x| (0..n).map(move |y| (x, y)))
                .map(|(x, y)| a.structure_constant(x, y).abs())
                .max()
                .unwrap();
            let want = match t {
                "g2" => 3,
                "f4" | "b3" | "c3" => 2,
                _ => 1,
            };
            assert_eq!(max, want, "{t}");
        }
    }

    #[test]
    fn opposite_constants() {
        for t in ["e6", "g2", "f4"] {
            let a = alg(t);
            let rs = a.root_system();
            for x in 0..rs.num_roots() {
                for y in 0..rs.num_roots() {
                    let n = a.structure_constant(x, y);
                    assert_eq!(n, -a.structure_constant(y, x));
                    if rs.is_positive(x) && rs.is_positive(y) && t == "e6" {
                        assert_eq!(n, -a.structure_constant(rs.neg(x), rs.neg(y)));
                    }
                }
            }
        }
    }

    #[test]
    fn bracket_is_alternating() {
        let a = alg("g2");
        let x = SparseVec::from_pairs(vec![(0, q(2)), (3, q(-1)), (9, q(5))]);
        assert!(a.bracket(&x, &x).is_zero());
    }

    #[test]
    fn words_replay() {
        let a = alg("f4");
        let rs = a.root_system();
        for xi in 0..rs.num_roots() {
            if let Some(w) = a.word(xi) {
                let g = if rs.is_positive(xi) { w.generator } else { rs.neg(w.generator) };
                assert_eq!(a.bracket_basis(a.e(g), a.e(w.prev)), &[(a.e(xi), w.coeff)]);
            }
        }
    }

    #[test]
    fn flipped_convention_is_a_lie_algebra() {
        let a = LieAlgebra::build_with("e6".parse().unwrap(), Convention::Flipped).unwrap();
        let b = alg("e6");
        assert!(a.table() != b.table());
    }

    #[test]
    fn e8_highest_root_bracket() {
        let a = alg("e8");
        let rs = a.root_system();
        let d = rs.highest_root();
        let got = a.bracket(&SparseVec::unit(a.e(d)), &SparseVec::unit(a.e(rs.neg(d))));
        assert_eq!(got, a.coroot_vector(d));
        assert_eq!(got.nnz(), 8);
    }

    #[test]
    fn exhaustive_jacobi_small() {
        assert_eq!(alg("g2").verify_jacobi(JacobiPolicy::Exhaustive).unwrap(), 2744);
    }
}

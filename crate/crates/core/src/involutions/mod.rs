//! Involutive automorphisms normalizing the distinguished Cartan subalgebra:
//! sign characters, the Chevalley involution, diagram lifts and Tits lifts of
//! Weyl group elements.

mod character;

use std::sync::Arc;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::catalog::{Catalog, CatalogError};
use crate::chevalley::{LieAlgebra, Subalgebra};
use crate::exactq::{q, QMatrix, Rational, SparseVec, Subspace};
use crate::rootsys::{RootError, RootIndex, RootSystem, TypeLabel, WeylElement};

pub use character::Character;

#[derive(Debug, Error)]
pub enum InvolutionError {
    #[error("the trivial character gives the identity")]
    TrivialCharacter,
    #[error("character has {got} signs, algebra has rank {want}")]
    CharacterRank { got: usize, want: usize },
    #[error("not a bracket automorphism: {0}")]
    NotAutomorphism(String),
    #[error("expected an involution, got order {0:?}")]
    NotInvolution(Option<usize>),
    #[error("{0:?} is not a nontrivial diagram symmetry")]
    NotDiagramSymmetry(Vec<usize>),
    #[error("no involution class of {algebra} has fixed dimension {dim}")]
    UnknownClass { algebra: String, dim: usize },
    #[error(transparent)]
    Root(#[from] RootError),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Provenance {
    Identity,
    Character(Character),
    ChevalleyInvolution,
    DiagramLift { perm: Vec<usize>, twist: Character },
    WeylLift { word: Vec<usize>, twist: Character },
    Composite,
}

/// An automorphism `e_alpha -> c_alpha e_{pi(alpha)}` with `h_alpha -> h_{pi(alpha)}`.
#[derive(Clone)]
pub struct Automorphism {
    alg: Arc<LieAlgebra>,
    perm: Vec<RootIndex>,
    coeff: Vec<Rational>,
    provenance: Provenance,
}

impl std::fmt::Debug for Automorphism {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Automorphism({:?} of {:?})", self.provenance, self.alg)
    }
}

impl PartialEq for Automorphism {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.alg, &other.alg) && self.perm == other.perm && self.coeff == other.coeff
    }
}

fn root_coeff(c: i64) -> Rational {
    q(c)
}

impl Automorphism {
    /// Checks the data against every bracket relation of the basis.
    pub fn new(
        alg: Arc<LieAlgebra>,
        perm: Vec<RootIndex>,
        coeff: Vec<Rational>,
        provenance: Provenance,
    ) -> Result<Self, InvolutionError> {
        let a = Self {
            alg,
            perm,
            coeff,
            provenance,
        };
        a.check()?;
        Ok(a)
    }

    pub fn identity(alg: Arc<LieAlgebra>) -> Self {
        let n = alg.root_system().num_roots();
        Self {
            alg,
            perm: (0..n).collect(),
            coeff: vec![Rational::one(); n],
            provenance: Provenance::Identity,
        }
    }

    fn check(&self) -> Result<(), InvolutionError> {
        let rs = self.alg.root_system();
        let n = rs.num_roots();
        let bad = |m: String| Err(InvolutionError::NotAutomorphism(m));
        if self.perm.len() != n || self.coeff.len() != n {
            return bad("wrong number of roots".into());
        }
        let mut seen = vec![false; n];
        for &p in &self.perm {
            if p >= n || std::mem::replace(&mut seen[p], true) {
                return bad("root map is not a bijection".into());
            }
        }
        if self.coeff.iter().any(Zero::is_zero) {
            return bad("zero coefficient".into());
        }
        let m = self.lattice_matrix();
        for a in 0..n {
            if rs.apply_lattice(&m, rs.root(a)) != rs.root(self.perm[a]) {
                return bad(format!("root map is not linear at {:?}", rs.root(a)));
            }
        }
        let r = rs.rank();
        for i in 0..r {
            for j in 0..r {
                if rs.root_inner(self.perm[rs.simple(i)], self.perm[rs.simple(j)]) != rs.gram_matrix()[i][j] {
                    return bad("root map is not an isometry".into());
                }
            }
        }
        // [e_a, e_-a] = h_a maps to c_a c_-a h_{pi a}
        for a in 0..n {
            if !(&self.coeff[a] * &self.coeff[rs.neg(a)]).is_one() {
                return bad(format!("c(a) c(-a) != 1 at {:?}", rs.root(a)));
            }
        }
        for a in 0..n {
            for b in 0..n {
                if let Some(g) = rs.sum(a, b) {
                    let lhs = root_coeff(self.alg.structure_constant(a, b)) * &self.coeff[g];
                    let rhs = &self.coeff[a]
                        * &self.coeff[b]
                        * root_coeff(self.alg.structure_constant(self.perm[a], self.perm[b]));
                    if lhs != rhs {
                        return bad(format!("[e{:?}, e{:?}] not preserved", rs.root(a), rs.root(b)));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn algebra(&self) -> &Arc<LieAlgebra> {
        &self.alg
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn with_provenance(mut self, p: Provenance) -> Self {
        self.provenance = p;
        self
    }

    pub fn root_map(&self) -> &[RootIndex] {
        &self.perm
    }

    pub fn coefficient(&self, root: RootIndex) -> &Rational {
        &self.coeff[root]
    }

    /// Action on the root lattice; column `j` is the image of `alpha_j`.
    pub fn lattice_matrix(&self) -> Vec<Vec<i64>> {
        let rs = self.alg.root_system();
        let r = rs.rank();
        let mut m = vec![vec![0; r]; r];
        for j in 0..r {
            for (i, &c) in rs.root(self.perm[rs.simple(j)]).iter().enumerate() {
                m[i][j] = c;
            }
        }
        m
    }

    /// Image of a basis vector.
    pub fn apply_basis(&self, b: usize) -> SparseVec {
        match self.alg.root_of(b) {
            Some(a) => SparseVec::single(self.alg.e(self.perm[a]), self.coeff[a].clone()),
            None => {
                let rs = self.alg.root_system();
                self.alg.coroot_vector(self.perm[rs.simple(b)])
            }
        }
    }

    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        let mut pairs = Vec::new();
        for (b, c) in v.iter() {
            for (k, d) in self.apply_basis(b).iter() {
                pairs.push((k, c * d));
            }
        }
        SparseVec::from_pairs(pairs)
    }

    /// The exact matrix on the algebra basis (column `b` is the image of basis vector `b`).
    pub fn matrix(&self) -> QMatrix {
        let dim = self.alg.dim();
        let cols: Vec<Vec<Rational>> = (0..dim).map(|b| self.apply_basis(b).to_dense(dim)).collect();
        QMatrix::from_columns(dim, &cols)
    }

    /// `self ∘ other`
    pub fn compose(&self, other: &Automorphism) -> Automorphism {
        assert!(Arc::ptr_eq(&self.alg, &other.alg), "automorphisms of different algebras");
        let perm = other.perm.iter().map(|&p| self.perm[p]).collect();
        let coeff = (0..other.perm.len())
            .map(|a| &other.coeff[a] * &self.coeff[other.perm[a]])
            .collect();
        Automorphism {
            alg: self.alg.clone(),
            perm,
            coeff,
            provenance: Provenance::Composite,
        }
    }

    pub fn inverse(&self) -> Automorphism {
        let n = self.perm.len();
        let mut perm = vec![0; n];
        let mut coeff = vec![Rational::zero(); n];
        for a in 0..n {
            perm[self.perm[a]] = a;
            coeff[self.perm[a]] = self.coeff[a].recip();
        }
        Automorphism {
            alg: self.alg.clone(),
            perm,
            coeff,
            provenance: Provenance::Composite,
        }
    }

    /// `self ∘ other ∘ self^-1`
    pub fn conjugate(&self, other: &Automorphism) -> Automorphism {
        self.compose(other).compose(&self.inverse())
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(a, &p)| a == p) && self.coeff.iter().all(One::is_one)
    }

    pub fn is_involution(&self) -> bool {
        !self.is_identity() && self.compose(self).is_identity()
    }

    pub fn commutes(&self, other: &Automorphism) -> bool {
        self.compose(other) == other.compose(self)
    }

    /// Order, if it is at most `bound`.
    pub fn order(&self, bound: usize) -> Option<usize> {
        let mut p = self.clone();
        for k in 1..=bound {
            if p.is_identity() {
                return Some(k);
            }
            p = p.compose(self);
        }
        None
    }

    /// `{x : a(x) = sign * x}` for `sign = ±1`.
    pub fn eigenspace(&self, sign: i64) -> Subspace {
        let lambda = q(sign);
        let rs = self.alg.root_system();
        let r = rs.rank();
        let dim = self.alg.dim();
        let mut vecs: Vec<SparseVec> = Vec::new();

        // Cartan block: images of h_j are coroots of the images of simple roots.
        let images: Vec<SparseVec> = (0..r).map(|j| self.apply_basis(j)).collect();
        let rows: Vec<Vec<Rational>> = (0..r)
            .map(|i| {
                (0..r)
                    .map(|j| images[j].get(i) - if i == j { lambda.clone() } else { Rational::zero() })
                    .collect()
            })
            .collect();
        let ker = QMatrix::from_rows(&rows).expect("square block").kernel();
        for c in 0..ker.cols() {
            vecs.push(SparseVec::from_dense(&ker.column(c)));
        }

        // Root vectors: one candidate per cycle of the root map.
        let n = rs.num_roots();
        let mut done = vec![false; n];
        for start in 0..n {
            if done[start] {
                continue;
            }
            let mut cycle = vec![start];
            done[start] = true;
            let mut a = self.perm[start];
            while a != start {
                done[a] = true;
                cycle.push(a);
                a = self.perm[a];
            }
            // v = sum t_k e_{a_k}, a(v) = lambda v forces t_{k+1} = t_k c_k / lambda
            let mut t = Rational::one();
            let mut pairs = Vec::with_capacity(cycle.len());
            for &a in &cycle {
                pairs.push((self.alg.e(a), t.clone()));
                t = t * &self.coeff[a] / &lambda;
            }
            if t.is_one() {
                vecs.push(SparseVec::from_pairs(pairs));
            }
        }
        Subspace::span(dim, &vecs)
    }

    pub fn fixed_subalgebra(&self) -> Subalgebra {
        Subalgebra::new(self.alg.clone(), self.eigenspace(1))
    }

    pub fn fixed_dim(&self) -> usize {
        self.eigenspace(1).dim()
    }

    /// Factorization of the lattice action as `w * gamma`.
    pub fn lattice_decomposition(&self) -> Result<(WeylElement, Vec<usize>), InvolutionError> {
        Ok(self.alg.root_system().decompose_lattice_auto(&self.lattice_matrix())?)
    }

    /// Whether the induced diagram symmetry is nontrivial.
    pub fn is_outer(&self) -> Result<bool, InvolutionError> {
        let (_, gamma) = self.lattice_decomposition()?;
        Ok(gamma.iter().enumerate().any(|(i, &g)| i != g))
    }
}

fn check_rank(alg: &LieAlgebra, chi: &Character) -> Result<(), InvolutionError> {
    if chi.rank() != alg.rank() {
        return Err(InvolutionError::CharacterRank {
            got: chi.rank(),
            want: alg.rank(),
        });
    }
    Ok(())
}

/// Diagonal automorphism `e_alpha -> chi(alpha) e_alpha`.
pub fn from_character(alg: &Arc<LieAlgebra>, chi: &Character) -> Result<Automorphism, InvolutionError> {
    check_rank(alg, chi)?;
    if chi.is_trivial() {
        return Err(InvolutionError::TrivialCharacter);
    }
    Ok(diagonal(alg, chi).with_provenance(Provenance::Character(chi.clone())))
}

fn diagonal(alg: &Arc<LieAlgebra>, chi: &Character) -> Automorphism {
    let rs = alg.root_system();
    let n = rs.num_roots();
    Automorphism {
        alg: alg.clone(),
        perm: (0..n).collect(),
        coeff: (0..n).map(|a| q(chi.value(rs.root(a)))).collect(),
        provenance: Provenance::Character(chi.clone()),
    }
}

/// Extends images of the simple root vectors `e_i` and `f_i = e_{-alpha_i}`
/// to the whole algebra by replaying the construction words.
pub fn extend_from_generators(
    alg: &Arc<LieAlgebra>,
    e_images: &[(RootIndex, Rational)],
    f_images: &[(RootIndex, Rational)],
    provenance: Provenance,
) -> Result<Automorphism, InvolutionError> {
    let rs = alg.root_system();
    let r = rs.rank();
    let n = rs.num_roots();
    let np = rs.num_positive();
    let mut perm = vec![usize::MAX; n];
    let mut coeff = vec![Rational::zero(); n];
    for i in 0..r {
        let (pe, ce) = e_images[i].clone();
        let (pf, cf) = f_images[i].clone();
        perm[rs.simple(i)] = pe;
        coeff[rs.simple(i)] = ce;
        perm[rs.neg(rs.simple(i))] = pf;
        coeff[rs.neg(rs.simple(i))] = cf;
    }
    let order = (0..np).chain(np..n);
    for root in order {
        let Some(w) = alg.word(root) else { continue };
        let g = if rs.is_positive(root) {
            rs.simple(w.generator)
        } else {
            rs.neg(rs.simple(w.generator))
        };
        let (p1, p2) = (perm[g], perm[w.prev]);
        let sum = rs
            .sum(p1, p2)
            .ok_or_else(|| InvolutionError::NotAutomorphism(format!("images of the word for {:?} do not add to a root", rs.root(root))))?;
        perm[root] = sum;
        coeff[root] = &coeff[g] * &coeff[w.prev] * root_coeff(alg.structure_constant(p1, p2)) / root_coeff(w.coeff);
    }
    Automorphism::new(alg.clone(), perm, coeff, provenance)
}

/// `e_i -> -f_i`, `f_i -> -e_i`, `h -> -h`.
pub fn chevalley_involution(alg: &Arc<LieAlgebra>) -> Automorphism {
    let rs = alg.root_system();
    let r = rs.rank();
    let e: Vec<_> = (0..r).map(|i| (rs.neg(rs.simple(i)), q(-1))).collect();
    let f: Vec<_> = (0..r).map(|i| (rs.simple(i), q(-1))).collect();
    extend_from_generators(alg, &e, &f, Provenance::ChevalleyInvolution)
        .expect("the Chevalley involution is an automorphism")
}

/// `e_i -> chi_i e_{pi(i)}`, `f_i -> chi_i f_{pi(i)}`.
pub fn diagram_lift(alg: &Arc<LieAlgebra>, pi: &[usize], twist: &Character) -> Result<Automorphism, InvolutionError> {
    check_rank(alg, twist)?;
    let rs = alg.root_system();
    if !rs.diagram_symmetries().iter().any(|s| s == pi) {
        return Err(InvolutionError::NotDiagramSymmetry(pi.to_vec()));
    }
    let r = rs.rank();
    let e: Vec<_> = (0..r).map(|i| (rs.simple(pi[i]), q(twist.sign(i)))).collect();
    let f: Vec<_> = (0..r).map(|i| (rs.neg(rs.simple(pi[i])), q(twist.sign(i)))).collect();
    extend_from_generators(
        alg,
        &e,
        &f,
        Provenance::DiagramLift {
            perm: pi.to_vec(),
            twist: twist.clone(),
        },
    )
}

/// A diagram lift that must be an involution.
pub fn diagram_involution(alg: &Arc<LieAlgebra>, pi: &[usize], twist: &Character) -> Result<Automorphism, InvolutionError> {
    let a = diagram_lift(alg, pi, twist)?;
    if a.is_involution() {
        Ok(a)
    } else {
        Err(InvolutionError::NotInvolution(a.order(64)))
    }
}

/// First twist (in increasing bit order, trivial first) making the diagram lift an involution.
pub fn diagram_involution_search(alg: &Arc<LieAlgebra>, pi: &[usize]) -> Result<Automorphism, InvolutionError> {
    let r = alg.rank();
    let mut last = InvolutionError::NotInvolution(None);
    for bits in 0..(1u64 << r) {
        match diagram_involution(alg, pi, &Character::from_bits(r, bits)) {
            Ok(a) => return Ok(a),
            Err(e) => last = e,
        }
    }
    Err(last)
}

fn exp_ad(alg: &LieAlgebra, x: &SparseVec, v: &SparseVec) -> SparseVec {
    let mut term = v.clone();
    let mut acc = v.clone();
    let mut k = 1i64;
    loop {
        term = alg.bracket(x, &term).scaled(&q_inv(k));
        if term.is_zero() {
            return acc;
        }
        acc = acc.add(&term);
        k += 1;
    }
}

fn q_inv(k: i64) -> Rational {
    Rational::new(1.into(), k.into())
}

/// Tits lift `n_i = exp(ad e_i) exp(ad -f_i) exp(ad e_i)` of a simple reflection.
pub fn simple_reflection_lift(alg: &Arc<LieAlgebra>, i: usize) -> Result<Automorphism, InvolutionError> {
    let rs = alg.root_system();
    let e = SparseVec::unit(alg.e(rs.simple(i)));
    let mf = SparseVec::unit(alg.e(rs.neg(rs.simple(i)))).neg();
    let n = rs.num_roots();
    let mut perm = vec![0; n];
    let mut coeff = vec![Rational::zero(); n];
    for a in 0..n {
        let v = SparseVec::unit(alg.e(a));
        let img = exp_ad(alg, &e, &exp_ad(alg, &mf, &exp_ad(alg, &e, &v)));
        let target = alg.e(rs.reflect_simple(i, a));
        if img.nnz() != 1 || img.first_index() != Some(target) {
            return Err(InvolutionError::NotAutomorphism(format!(
                "Tits lift of s{} is not monomial at {:?}",
                i + 1,
                rs.root(a)
            )));
        }
        perm[a] = rs.reflect_simple(i, a);
        coeff[a] = img.get(target);
    }
    // the Cartan image is read off the root map; compare with the exponentials
    let lift = Automorphism::new(alg.clone(), perm, coeff, Provenance::WeylLift {
        word: vec![i],
        twist: Character::trivial(rs.rank()),
    })?;
    for j in 0..rs.rank() {
        let h = SparseVec::unit(alg.h(j));
        let img = exp_ad(alg, &e, &exp_ad(alg, &mf, &exp_ad(alg, &e, &h)));
        if img != lift.apply_basis(j) {
            return Err(InvolutionError::NotAutomorphism("Tits lift disagrees on the Cartan".into()));
        }
    }
    Ok(lift)
}

/// `n_{w[0]} ... n_{w[k-1]} ∘ D_twist`; acts on the lattice as the Weyl element of `word`.
pub fn weyl_lift(alg: &Arc<LieAlgebra>, word: &[usize], twist: &Character) -> Result<Automorphism, InvolutionError> {
    check_rank(alg, twist)?;
    let lifts: Vec<Automorphism> = (0..alg.rank())
        .map(|i| simple_reflection_lift(alg, i))
        .collect::<Result<_, _>>()?;
    let mut acc = Automorphism::identity(alg.clone());
    for &i in word {
        acc = acc.compose(&lifts[i]);
    }
    Ok(acc.compose(&diagonal(alg, twist)).with_provenance(Provenance::WeylLift {
        word: word.to_vec(),
        twist: twist.clone(),
    }))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvolutionClass {
    pub algebra: String,
    pub class: String,
    pub outer: bool,
    pub fixed_dim: usize,
    pub label: TypeLabel,
}

impl InvolutionClass {
    pub fn display_name(&self) -> String {
        crate::catalog::display_class(&self.class)
    }
}

/// Class of an involution, determined by its fixed dimension; the outer flag is computed.
pub fn involution_class(a: &Automorphism) -> Result<InvolutionClass, InvolutionError> {
    if !a.is_involution() {
        return Err(InvolutionError::NotInvolution(a.order(64)));
    }
    let algebra = a.algebra().cartan_type().algebra_name();
    let fixed_dim = a.fixed_dim();
    class_for(&algebra, fixed_dim, a.is_outer()?)
}

pub fn class_for(algebra: &str, fixed_dim: usize, outer: bool) -> Result<InvolutionClass, InvolutionError> {
    let entry = Catalog::builtin()
        .class_by_dim(algebra, fixed_dim)
        .ok_or_else(|| InvolutionError::UnknownClass {
            algebra: algebra.to_string(),
            dim: fixed_dim,
        })?;
    Ok(InvolutionClass {
        algebra: algebra.to_string(),
        class: entry.class.clone(),
        outer,
        fixed_dim,
        label: entry.h.clone(),
    })
}

/// Root system of an automorphism's algebra (shorthand used by callers).
pub fn roots(a: &Automorphism) -> &RootSystem {
    a.algebra().root_system()
}

#[cfg(test)]
mod tests;

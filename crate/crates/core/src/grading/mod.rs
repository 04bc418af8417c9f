//! Splitting an algebra under a commuting pair of involutions into the four
//! joint eigenspaces, checking the grading axioms, and naming the common
//! fixed subalgebra.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::catalog::{display_tuple, Catalog, CatalogError};
use crate::chevalley::{LieAlgebra, Structure, Subalgebra};
use crate::exactq::{q, QMatrix, Rational, SparseVec, Subspace};
use crate::involutions::{involution_class, Automorphism, InvolutionClass, InvolutionError};
use crate::rootsys::{RootError, TypeLabel};

/// Seed for generic-element sampling.
pub const FINGERPRINT_SEED: u64 = 0x2a2a;

#[derive(Debug, Error)]
pub enum GradingError {
    #[error("{0} is not an involution")]
    NotInvolution(&'static str),
    #[error("the two involutions are equal")]
    Equal,
    #[error("the two involutions do not commute")]
    NotCommuting,
    #[error("no candidate type for {0}")]
    EmptyShortlist(String),
    #[error(transparent)]
    Involution(#[from] InvolutionError),
    #[error(transparent)]
    Root(#[from] RootError),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
}

/// The four pieces, indexed by the signs of `(sigma, tau)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Piece {
    /// `(+, +)`, the common fixed algebra `k`
    One,
    /// `(+, -)`
    Sigma,
    /// `(-, +)`
    Tau,
    /// `(-, -)`
    SigmaTau,
}

impl Piece {
    pub const ALL: [Piece; 4] = [Piece::One, Piece::Sigma, Piece::Tau, Piece::SigmaTau];

    fn signs(self) -> (i64, i64) {
        match self {
            Piece::One => (1, 1),
            Piece::Sigma => (1, -1),
            Piece::Tau => (-1, 1),
            Piece::SigmaTau => (-1, -1),
        }
    }

    fn index(self) -> usize {
        self as usize
    }

    /// Group product in `Z2 x Z2`.
    pub fn times(self, other: Piece) -> Piece {
        Piece::ALL[self.index() ^ other.index()]
    }
}

#[derive(Clone, Debug)]
pub struct Z2Z2Grading {
    alg: Arc<LieAlgebra>,
    sigma: Automorphism,
    tau: Automorphism,
    sigma_tau: Automorphism,
    pieces: [Subspace; 4],
    classes: [InvolutionClass; 3],
}

/// Joint eigenspace as the image of the projector `(1 + s sigma)(1 + t tau) / 4`.
fn joint_eigenspace(sigma: &Automorphism, tau: &Automorphism, (s, t): (i64, i64)) -> Subspace {
    let alg = sigma.algebra();
    let dim = alg.dim();
    let (qs, qt) = (q(s), q(t));
    let mut vecs = Vec::with_capacity(dim);
    for b in 0..dim {
        let v = SparseVec::unit(b);
        let v = v.add(&tau.apply(&v).scaled(&qt));
        let v = v.add(&sigma.apply(&v).scaled(&qs));
        if !v.is_zero() {
            vecs.push(v);
        }
    }
    Subspace::span(dim, &vecs)
}

pub fn split(sigma: &Automorphism, tau: &Automorphism) -> Result<Z2Z2Grading, GradingError> {
    if !sigma.is_involution() {
        return Err(GradingError::NotInvolution("sigma"));
    }
    if !tau.is_involution() {
        return Err(GradingError::NotInvolution("tau"));
    }
    if sigma == tau {
        return Err(GradingError::Equal);
    }
    if !sigma.commutes(tau) {
        return Err(GradingError::NotCommuting);
    }
    let sigma_tau = sigma.compose(tau);
    let pieces = Piece::ALL.map(|p| joint_eigenspace(sigma, tau, p.signs()));
    let classes = [
        involution_class(sigma)?,
        involution_class(tau)?,
        involution_class(&sigma_tau)?,
    ];
    Ok(Z2Z2Grading {
        alg: sigma.algebra().clone(),
        sigma: sigma.clone(),
        tau: tau.clone(),
        sigma_tau,
        pieces,
        classes,
    })
}

impl Z2Z2Grading {
    pub fn algebra(&self) -> &Arc<LieAlgebra> {
        &self.alg
    }

    pub fn algebra_name(&self) -> String {
        self.alg.cartan_type().algebra_name()
    }

    pub fn sigma(&self) -> &Automorphism {
        &self.sigma
    }

    pub fn tau(&self) -> &Automorphism {
        &self.tau
    }

    pub fn sigma_tau(&self) -> &Automorphism {
        &self.sigma_tau
    }

    pub fn piece(&self, p: Piece) -> &Subspace {
        &self.pieces[p.index()]
    }

    /// `[dim g_1, dim g_sigma, dim g_tau, dim g_sigmatau]`
    pub fn dims(&self) -> [usize; 4] {
        Piece::ALL.map(|p| self.piece(p).dim())
    }

    pub fn k(&self) -> Subalgebra {
        Subalgebra::new(self.alg.clone(), self.piece(Piece::One).clone())
    }

    /// Classes of `sigma`, `tau`, `sigma tau` in that order.
    pub fn classes(&self) -> &[InvolutionClass; 3] {
        &self.classes
    }

    /// Class names sorted in catalog order.
    pub fn triple(&self) -> [String; 3] {
        let mut t: Vec<String> = self.classes.iter().map(|c| c.class.clone()).collect();
        Catalog::builtin().sort_classes(&self.algebra_name(), &mut t);
        [t[0].clone(), t[1].clone(), t[2].clone()]
    }

    pub fn type_name(&self) -> String {
        display_tuple(&self.triple())
    }

    /// `d(sigma, tau) = dim g - dim g^sigma - dim g^tau`
    pub fn d(&self) -> i64 {
        self.alg.dim() as i64 - self.classes[0].fixed_dim as i64 - self.classes[1].fixed_dim as i64
    }

    /// Negative control: the same grading with one basis vector moved from
    /// `from` to `to`.
    pub fn with_moved_vector(&self, from: Piece, to: Piece) -> Z2Z2Grading {
        let mut g = self.clone();
        let v = g.pieces[from.index()].basis()[0].clone();
        let rest: Vec<SparseVec> = g.pieces[from.index()].basis()[1..].to_vec();
        g.pieces[from.index()] = Subspace::span(self.alg.dim(), &rest);
        g.pieces[to.index()].insert(&v);
        g
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub check: String,
    /// Basis vectors (by position in their piece) witnessing the failure.
    pub witness: Option<(Piece, usize, Piece, usize)>,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct GradingReport {
    pub bracket_pairs: usize,
    pub violations: Vec<Violation>,
}

impl GradingReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks `[g_a, g_b] ⊆ g_{ab}` on all basis pairs, the fixed algebras, the
/// direct sum and the dimension identity.
pub fn verify_grading(g: &Z2Z2Grading) -> GradingReport {
    let mut report = GradingReport::default();
    let alg = &g.alg;
    let dim = alg.dim();
    let fail = |r: &mut GradingReport, check: String, witness| r.violations.push(Violation { check, witness });

    let total: usize = g.dims().iter().sum();
    let sum = Piece::ALL.iter().fold(Subspace::zero(dim), |acc, p| acc.sum(g.piece(*p)));
    if total != dim || sum.dim() != dim {
        fail(&mut report, format!("pieces are not a direct sum: dims {:?}, span {}", g.dims(), sum.dim()), None);
    }

    for (i, a) in Piece::ALL.into_iter().enumerate() {
        for b in Piece::ALL.into_iter().skip(i) {
            let target = g.piece(a.times(b));
            let (ba, bb) = (g.piece(a).basis(), g.piece(b).basis());
            'pairs: for (x, vx) in ba.iter().enumerate() {
                for (y, vy) in bb.iter().enumerate() {
                    report.bracket_pairs += 1;
                    if !target.contains(&alg.bracket(vx, vy)) {
                        fail(&mut report, format!("[g_{a:?}, g_{b:?}] ⊄ g_{:?}", a.times(b)), Some((a, x, b, y)));
                        break 'pairs;
                    }
                }
            }
        }
    }

    let one = g.piece(Piece::One);
    for (p, inv, name) in [
        (Piece::Sigma, &g.sigma, "sigma"),
        (Piece::Tau, &g.tau, "tau"),
        (Piece::SigmaTau, &g.sigma_tau, "sigma tau"),
    ] {
        let fixed = inv.eigenspace(1);
        let s = one.sum(g.piece(p));
        if s.dim() != fixed.dim() || !s.basis().iter().all(|v| fixed.contains(v)) {
            fail(&mut report, format!("g_1 + g_{p:?} is not the fixed algebra of {name}"), None);
        }
        if !Subalgebra::new(alg.clone(), s).is_closed() {
            fail(&mut report, format!("g_1 + g_{p:?} is not closed"), None);
        }
    }

    let [d1, _, _, _] = g.dims();
    let lhs = dim as i64 - g.sigma.fixed_dim() as i64 - g.tau.fixed_dim() as i64;
    let rhs = g.sigma_tau.fixed_dim() as i64 - 2 * d1 as i64;
    if lhs != rhs {
        fail(&mut report, format!("dimension identity fails: {lhs} != {rhs}"), None);
    }
    report
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TypeFingerprint {
    pub dim: usize,
    pub rank: usize,
    pub center_dim: usize,
    pub derived_dim: usize,
    /// `(dim m, generic dim ker ad_x|m)` for `g_sigma`, `g_tau`, `g_sigmatau`
    pub modules: [(usize, usize); 3],
    pub seed: u64,
}

impl TypeFingerprint {
    /// Whether a label is consistent with the intrinsic fields.
    pub fn matches(&self, label: &TypeLabel) -> bool {
        self.dim == label.dim()
            && self.rank == label.rank()
            && self.center_dim == label.torus_rank()
            && self.derived_dim == label.dim() - label.torus_rank()
    }
}

fn random_in(basis: &[SparseVec], rng: &mut ChaCha8Rng) -> SparseVec {
    basis.iter().fold(SparseVec::new(), |acc, b| {
        acc.add_scaled(&q(rng.gen_range(-9i64..=9)), b)
    })
}

fn module_kernel(alg: &LieAlgebra, x: &SparseVec, m: &Subspace) -> usize {
    let n = m.dim();
    if n == 0 {
        return 0;
    }
    let cols: Vec<Vec<Rational>> = m
        .basis()
        .iter()
        .map(|v| m.coordinates(&alg.bracket(x, v)).expect("k preserves each piece"))
        .collect();
    n - QMatrix::from_columns(n, &cols).rank()
}

/// Intrinsic invariants of `k` and the generic kernel dimensions of its
/// action on the other three pieces.
pub fn fingerprint(g: &Z2Z2Grading, k: &Subalgebra) -> TypeFingerprint {
    let st = k.structure().expect("k is closed");
    let mut modules = [(0, usize::MAX); 3];
    for s in 0..Structure::SAMPLES {
        let mut rng = ChaCha8Rng::seed_from_u64(FINGERPRINT_SEED.wrapping_add(s));
        let x = random_in(k.basis(), &mut rng);
        for (slot, p) in [Piece::Sigma, Piece::Tau, Piece::SigmaTau].into_iter().enumerate() {
            let m = g.piece(p);
            let kd = module_kernel(&g.alg, &x, m);
            modules[slot] = (m.dim(), modules[slot].1.min(kd));
        }
    }
    TypeFingerprint {
        dim: k.dim(),
        rank: st.generic_rank(FINGERPRINT_SEED),
        center_dim: st.center_dim(),
        derived_dim: st.derived_dim(),
        modules,
        seed: FINGERPRINT_SEED,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum IdPath {
    /// `k` contains the Cartan subalgebra; read off the root subsystem.
    FullRank,
    /// Unique shortlist entry consistent with the fingerprint.
    Fingerprint,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Identification {
    Unique { label: TypeLabel, path: IdPath },
    Ambiguous { candidates: Vec<TypeLabel> },
}

impl Identification {
    pub fn label(&self) -> Option<&TypeLabel> {
        match self {
            Identification::Unique { label, .. } => Some(label),
            Identification::Ambiguous { .. } => None,
        }
    }
}

/// Label of `k` when it contains the distinguished Cartan subalgebra.
pub fn full_rank_label(g: &Z2Z2Grading) -> Result<Option<TypeLabel>, GradingError> {
    let one = g.piece(Piece::One);
    let alg = &g.alg;
    if !(0..alg.rank()).all(|j| one.contains(&SparseVec::unit(alg.h(j)))) {
        return Ok(None);
    }
    let rs = alg.root_system();
    let roots: Vec<usize> = (0..rs.num_roots())
        .filter(|&a| one.contains(&SparseVec::unit(alg.e(a))))
        .collect();
    let sub = rs.subsystem_type(&roots)?;
    debug_assert_eq!(sub.label.dim(), one.dim());
    Ok(Some(sub.label))
}

/// Shortlist entries agreeing with the fingerprint of `k`.
pub fn identify_by_fingerprint(g: &Z2Z2Grading) -> Result<Identification, GradingError> {
    let cat = Catalog::builtin();
    let shortlist = cat.triple_candidates(&g.algebra_name(), &g.triple())?;
    if shortlist.is_empty() {
        return Err(GradingError::EmptyShortlist(g.type_name()));
    }
    let fp = fingerprint(g, &g.k());
    let survivors: Vec<TypeLabel> = shortlist.into_iter().filter(|l| fp.matches(l)).collect();
    match survivors.len() {
        0 => Err(GradingError::EmptyShortlist(format!("{} after fingerprint {fp:?}", g.type_name()))),
        1 => Ok(Identification::Unique {
            label: survivors[0].clone(),
            path: IdPath::Fingerprint,
        }),
        _ => Ok(Identification::Ambiguous { candidates: survivors }),
    }
}

pub fn identify_component(g: &Z2Z2Grading) -> Result<Identification, GradingError> {
    if let Some(label) = full_rank_label(g)? {
        return Ok(Identification::Unique {
            label,
            path: IdPath::FullRank,
        });
    }
    identify_by_fingerprint(g)
}

/// Whether a vector lies in the named piece (helper for reports).
pub fn piece_of(g: &Z2Z2Grading, v: &SparseVec) -> Option<Piece> {
    Piece::ALL.into_iter().find(|p| g.piece(*p).contains(v) && !v.is_zero())
}

#[cfg(test)]
mod tests;

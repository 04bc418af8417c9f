//! The classification driver: diagonal enumeration, witness constructions,
//! exclusions, the so8 case and the end-to-end run.

mod exclusion;
mod so8;
mod witness;

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::catalog::tables::{self, OutputTable};
use crate::catalog::{display_tuple, Catalog, CatalogError};
use crate::chevalley::{algebra_with, Convention};
use crate::grading::{
    full_rank_label, identify_by_fingerprint, identify_component, split, verify_grading, GradingError, IdPath,
    Identification, Violation, Z2Z2Grading,
};
use crate::involutions::{class_for, Character, InvolutionError};
use crate::rootsys::{RootError, RootSystem, SimpleType, TypeLabel};

pub use exclusion::{nonexistence_report, ExclusionReason, ExclusionRecord};
pub use so8::{a5_conjugacy_check, classify_so8, lattice_automorphisms, so8_families, A5Report, So8Record, So8Result};
pub use witness::{Recipe, Witness};

#[derive(Debug, Error)]
pub enum ClassifyError {
    #[error(transparent)]
    Grading(#[from] GradingError),
    #[error(transparent)]
    Involution(#[from] InvolutionError),
    #[error(transparent)]
    Root(#[from] RootError),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error("grading from `{witness}` fails verification: {violations:?}")]
    Verification { witness: String, violations: Vec<Violation> },
    #[error("{type_name}: candidates {candidates:?} remain after fingerprints and containment facts")]
    Unresolved { type_name: String, candidates: Vec<String> },
    #[error("full-rank label {full} disagrees with fingerprint result {other}")]
    CrossCheck { full: String, other: String },
    #[error("witness search for {0} found nothing")]
    SearchExhausted(String),
    #[error("no witness recipe for {0}")]
    NoRecipe(String),
    #[error("so8 outcome {0} is outside the three families")]
    OutsideFamilies(String),
    #[error("triples neither realized nor excluded: {0:?}")]
    Incomplete(Vec<String>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DecidedBy {
    FullRank,
    Fingerprint,
    ContainmentFact,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GradingRecord {
    pub algebra: String,
    pub triple: [String; 3],
    pub type_name: String,
    pub k: TypeLabel,
    /// `[g_1, g_sigma, g_tau, g_sigmatau]`
    pub dims: [usize; 4],
    pub witness: Witness,
    pub decided_by: DecidedBy,
}

impl GradingRecord {
    pub fn key(&self) -> (String, [String; 3], TypeLabel) {
        (self.algebra.clone(), self.triple.clone(), self.k.clone())
    }
}

/// Names `k`, falling back to containment facts when fingerprints leave
/// several candidates.
pub fn decide(g: &Z2Z2Grading) -> Result<(TypeLabel, DecidedBy), ClassifyError> {
    match identify_component(g)? {
        Identification::Unique { label, path } => Ok((
            label,
            match path {
                IdPath::FullRank => DecidedBy::FullRank,
                IdPath::Fingerprint => DecidedBy::Fingerprint,
            },
        )),
        Identification::Ambiguous { candidates } => {
            let cat = Catalog::builtin();
            let hs: Vec<TypeLabel> = g.classes().iter().map(|c| c.label.clone()).collect();
            let left: Vec<TypeLabel> = candidates
                .iter()
                .filter(|k| hs.iter().all(|h| cat.refutation(k, h).is_none()))
                .cloned()
                .collect();
            match left.as_slice() {
                [one] => Ok((one.clone(), DecidedBy::ContainmentFact)),
                _ => Err(ClassifyError::Unresolved {
                    type_name: g.type_name(),
                    candidates: candidates.iter().map(|c| c.compact_name()).collect(),
                }),
            }
        }
    }
}

/// Replays, splits, verifies and names one witness.
pub fn record_for(w: &Witness) -> Result<GradingRecord, ClassifyError> {
    let (s, t) = w.replay()?;
    let g = split(&s, &t)?;
    let report = verify_grading(&g);
    if !report.ok() {
        return Err(ClassifyError::Verification {
            witness: w.describe(),
            violations: report.violations,
        });
    }
    let (k, decided_by) = decide(&g)?;
    Ok(GradingRecord {
        algebra: g.algebra_name(),
        triple: g.triple(),
        type_name: g.type_name(),
        k,
        dims: g.dims(),
        witness: w.clone(),
        decided_by,
    })
}

pub fn simple_type(name: &str) -> Result<SimpleType, ClassifyError> {
    let label = crate::catalog::algebra_label(name)?;
    match (label.components(), label.torus_rank()) {
        ([t], 0) => Ok(*t),
        _ => Err(RootError::UnsupportedType(name.to_string()).into()),
    }
}

/// Supported exceptional algebras in table order.
pub const EXCEPTIONAL: [&str; 5] = ["e6", "e7", "e8", "f4", "g2"];

#[derive(Clone, Debug, Serialize)]
pub struct DiagonalSummary {
    pub algebra: String,
    pub ordered_pairs: usize,
    /// Ordered pairs per `(type, k)` outcome.
    pub pair_counts: BTreeMap<String, usize>,
    pub records: Vec<GradingRecord>,
}

/// Sorted class triple and `k`.
type Outcome = ([String; 3], TypeLabel);

fn parity_masks(rs: &RootSystem) -> Vec<u64> {
    (0..rs.num_positive())
        .map(|a| {
            rs.root(a)
                .iter()
                .enumerate()
                .filter(|(_, c)| *c % 2 != 0)
                .map(|(i, _)| 1u64 << i)
                .sum()
        })
        .collect()
}

fn even(mask: u64, bits: u64) -> bool {
    (mask & bits).count_ones() % 2 == 0
}

/// All ordered pairs of distinct nontrivial characters, grouped by
/// `(sorted triple, k label)`; one representative per group is split,
/// verified, and named both from the root subsystem and from its fingerprint.
pub fn enumerate_diagonal_pairs(ty: SimpleType) -> Result<DiagonalSummary, ClassifyError> {
    enumerate_diagonal_pairs_with(ty, Convention::Standard)
}

pub fn enumerate_diagonal_pairs_with(ty: SimpleType, convention: Convention) -> Result<DiagonalSummary, ClassifyError> {
    let rs = RootSystem::new(ty);
    let r = rs.rank();
    let name = ty.algebra_name();
    let cat = Catalog::builtin();
    let masks = parity_masks(&rs);
    let n = 1u64 << r;
    let class_of = |bits: u64| -> Result<String, ClassifyError> {
        let fixed = r + 2 * masks.iter().filter(|m| even(**m, bits)).count();
        Ok(class_for(&name, fixed, false)?.class)
    };
    let classes: Vec<String> = std::iter::once(Ok(String::new()))
        .chain((1..n).map(class_of))
        .collect::<Result<_, _>>()?;

    // label per Klein subgroup {a, b, a^b}
    let mut groups: Vec<[u64; 3]> = Vec::new();
    for a in 1..n {
        for b in (a + 1)..n {
            let c = a ^ b;
            if c > b {
                groups.push([a, b, c]);
            }
        }
    }
    let labels: BTreeMap<[u64; 3], TypeLabel> = groups
        .par_iter()
        .map(|&[a, b, c]| {
            let roots: Vec<usize> = (0..rs.num_roots())
                .filter(|&x| {
                    let m = masks[x % rs.num_positive()];
                    even(m, a) && even(m, b)
                })
                .collect();
            rs.subsystem_type(&roots).map(|s| ([a, b, c], s.label))
        })
        .collect::<Result<_, _>>()?;

    let mut outcomes: BTreeMap<Outcome, (usize, (u64, u64))> = BTreeMap::new();
    let mut ordered_pairs = 0;
    for a in 1..n {
        for b in 1..n {
            if a == b {
                continue;
            }
            ordered_pairs += 1;
            let mut key = [a, b, a ^ b];
            key.sort();
            let mut t = vec![classes[a as usize].clone(), classes[b as usize].clone(), classes[(a ^ b) as usize].clone()];
            cat.sort_classes(&name, &mut t);
            let entry = outcomes
                .entry(([t[0].clone(), t[1].clone(), t[2].clone()], labels[&key].clone()))
                .or_insert((0, (a, b)));
            entry.0 += 1;
        }
    }

    let reps: Vec<(Outcome, (u64, u64))> =
        outcomes.iter().map(|(k, (_, p))| (k.clone(), *p)).collect();
    let records: Vec<GradingRecord> = reps
        .par_iter()
        .map(|((_, label), (a, b))| {
            let w = Witness {
                algebra: ty,
                convention,
                sigma: Recipe::Character { bits: *a },
                tau: Recipe::Character { bits: *b },
            };
            let rec = record_for(&w)?;
            if rec.k != *label || rec.decided_by != DecidedBy::FullRank {
                return Err(ClassifyError::CrossCheck {
                    full: label.compact_name(),
                    other: rec.k.compact_name(),
                });
            }
            cross_check_fingerprint(&w)?;
            Ok(rec)
        })
        .collect::<Result<_, _>>()?;
    let pair_counts = outcomes
        .into_iter()
        .map(|((t, l), (c, _))| (format!("{} {}", display_tuple(&t), l.compact_name()), c))
        .collect();
    Ok(DiagonalSummary {
        algebra: name,
        ordered_pairs,
        pair_counts,
        records,
    })
}

/// The fingerprint path must agree with (or at least admit) the full-rank label.
fn cross_check_fingerprint(w: &Witness) -> Result<(), ClassifyError> {
    let (s, t) = w.replay()?;
    let g = split(&s, &t)?;
    let full = full_rank_label(&g)?.expect("diagonal pairs contain the Cartan subalgebra");
    let ok = match identify_by_fingerprint(&g)? {
        Identification::Unique { label, .. } => label == full,
        Identification::Ambiguous { candidates } => candidates.contains(&full),
    };
    if ok {
        Ok(())
    } else {
        Err(ClassifyError::CrossCheck {
            full: full.compact_name(),
            other: "fingerprint".into(),
        })
    }
}

/// Rows whose `k` does not contain a Cartan subalgebra of `g`.
pub const WITNESS_ROWS: [(&str, &str); 7] = [
    ("e6", "E I-I-II"),
    ("e6", "E I-I-III"),
    ("e6", "E I-II-IV"),
    ("e6", "E III-IV-IV"),
    ("e7", "E V-V-V"),
    ("e7", "E V-V-VII"),
    ("e7", "E VII-VII-VII"),
];

const E6_FLIP: [usize; 6] = [4, 3, 2, 1, 0, 5];

fn first_match(
    candidates: Vec<Witness>,
    target: &str,
    extra: impl Fn(&Z2Z2Grading) -> bool + Sync,
) -> Result<GradingRecord, ClassifyError> {
    let found = candidates.par_iter().find_first(|w| {
        let Ok((s, t)) = w.replay() else { return false };
        if !s.is_involution() || !t.is_involution() || s == t || !s.commutes(&t) {
            return false;
        }
        match split(&s, &t) {
            Ok(g) => g.type_name() == target && extra(&g),
            Err(_) => false,
        }
    });
    match found {
        Some(w) => record_for(w),
        None => Err(ClassifyError::SearchExhausted(target.into())),
    }
}

/// Builds the grading for a row without a full-rank `k`.
pub fn construct_witness(algebra_name: &str, type_name: &str) -> Result<GradingRecord, ClassifyError> {
    construct_witness_with(algebra_name, type_name, Convention::Standard)
}

pub fn construct_witness_with(
    algebra_name: &str,
    type_name: &str,
    convention: Convention,
) -> Result<GradingRecord, ClassifyError> {
    let ty = simple_type(algebra_name)?;
    let r = ty.rank;
    let chars = |pred: &dyn Fn(u64) -> bool| -> Vec<u64> { (1..1u64 << r).filter(|b| pred(*b)).collect() };
    let pair = |sigma: Recipe, tau: Recipe| Witness {
        algebra: ty,
        convention,
        sigma,
        tau,
    };
    let any = |_: &Z2Z2Grading| true;
    match (algebra_name, type_name) {
        ("e6", "E I-I-II") | ("e6", "E I-I-III") | ("e7", "E V-V-V") | ("e7", "E V-V-VII") => {
            let cands = chars(&|_| true)
                .into_iter()
                .map(|b| pair(Recipe::Chevalley, Recipe::Character { bits: b }))
                .collect();
            first_match(cands, type_name, any)
        }
        ("e6", "E I-II-IV") => {
            let twists = std::iter::once(0).chain(chars(&|b| Character::from_bits(r, b).is_invariant_under(&E6_FLIP)));
            let cands = twists
                .map(|tw| {
                    pair(
                        Recipe::DiagramLift {
                            perm: E6_FLIP.to_vec(),
                            twist: tw,
                        },
                        Recipe::Chevalley,
                    )
                })
                .collect();
            first_match(cands, type_name, any)
        }
        ("e6", "E III-IV-IV") => {
            let cands = chars(&|b| Character::from_bits(r, b).is_invariant_under(&E6_FLIP))
                .into_iter()
                .map(|b| {
                    pair(
                        Recipe::DiagramLift {
                            perm: E6_FLIP.to_vec(),
                            twist: 0,
                        },
                        Recipe::Character { bits: b },
                    )
                })
                .collect();
            first_match(cands, type_name, any)
        }
        ("e7", "E VII-VII-VII") => {
            let rs = RootSystem::new(ty);
            let w = rs
                .longest_element(None)
                .compose(&rs, &rs.longest_element(Some(&[0, 1, 2, 3, 4, 5])))
                .reduced(&rs);
            let g = algebra_with(ty, convention);
            let sigmas: Vec<u64> = chars(&|b| {
                crate::involutions::from_character(&g, &Character::from_bits(r, b))
                    .map(|a| a.fixed_dim() == 79)
                    .unwrap_or(false)
            });
            let mut cands = Vec::new();
            for s in sigmas {
                for tw in 0..(1u64 << r) {
                    cands.push(pair(
                        Recipe::Character { bits: s },
                        Recipe::WeylLift {
                            word: w.word().to_vec(),
                            twist: tw,
                        },
                    ));
                }
            }
            first_match(cands, type_name, |g| g.dims()[0] == 52)
        }
        _ => Err(ClassifyError::NoRecipe(format!("{algebra_name} {type_name}"))),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassificationBundle {
    pub algebras: Vec<String>,
    pub records: Vec<GradingRecord>,
    pub diagonal: Vec<DiagonalSummary>,
    pub exclusions: Vec<ExclusionRecord>,
    pub so8: Option<So8Result>,
    pub a5: Option<A5Report>,
}

impl ClassificationBundle {
    pub fn table1(&self) -> OutputTable {
        tables::table1(
            self.records
                .iter()
                .map(|r| (r.type_name.clone(), r.algebra.clone(), r.k.compact_name())),
        )
    }

    /// Row-level differences against a reference classification table, restricted to the
    /// algebras in this run.
    pub fn table1_diff(&self, reference: &OutputTable) -> Vec<String> {
        let mut want = reference.clone();
        let names: Vec<TypeLabel> = self
            .algebras
            .iter()
            .filter_map(|a| crate::catalog::algebra_label(a).ok())
            .collect();
        want.rows
            .retain(|r| crate::catalog::algebra_label(&r[1]).is_ok_and(|l| names.contains(&l)));
        self.table1().diff(&want)
    }
}

fn table_order(recs: &mut [GradingRecord]) {
    let cat = Catalog::builtin();
    recs.sort_by_key(|r| {
        (
            EXCEPTIONAL.iter().position(|a| *a == r.algebra),
            r.triple.iter().map(|c| cat.class_order(&r.algebra, c)).collect::<Vec<_>>(),
            r.k.clone(),
        )
    });
}

/// Records for one exceptional algebra: diagonal enumeration plus witnesses.
pub fn classify_algebra(name: &str) -> Result<(Vec<GradingRecord>, DiagonalSummary), ClassifyError> {
    classify_algebra_with(name, Convention::Standard)
}

pub fn classify_algebra_with(
    name: &str,
    convention: Convention,
) -> Result<(Vec<GradingRecord>, DiagonalSummary), ClassifyError> {
    let ty = simple_type(name)?;
    let diag = enumerate_diagonal_pairs_with(ty, convention)?;
    let mut records = diag.records.clone();
    for (g, row) in WITNESS_ROWS {
        if g == name {
            records.push(construct_witness_with(g, row, convention)?);
        }
    }
    table_order(&mut records);
    Ok((records, diag))
}

/// Classifies the named algebras (`e6` .. `g2`, `so8`) in table order.
pub fn run(algebras: &[&str]) -> Result<ClassificationBundle, ClassifyError> {
    let mut selected: Vec<String> = Vec::new();
    for name in EXCEPTIONAL.iter().chain(["so8"].iter()) {
        if algebras.contains(name) {
            selected.push(name.to_string());
        }
    }
    if let Some(bad) = algebras.iter().find(|a| !selected.iter().any(|s| s == *a)) {
        return Err(CatalogError::UnknownAlgebra(bad.to_string()).into());
    }
    let mut records = Vec::new();
    let mut diagonal = Vec::new();
    let mut exclusions = Vec::new();
    for name in selected.iter().filter(|n| *n != "so8") {
        let (recs, diag) = classify_algebra(name)?;
        exclusions.extend(nonexistence_report(name, &recs)?);
        records.extend(recs);
        diagonal.push(diag);
    }
    let so8 = match selected.iter().any(|n| n == "so8") {
        true => Some(classify_so8()?),
        false => None,
    };
    let a5 = match selected.iter().any(|n| n == "e7") {
        true => Some(a5_conjugacy_check(&records)?),
        false => None,
    };
    Ok(ClassificationBundle {
        algebras: selected,
        records,
        diagonal,
        exclusions,
        so8,
        a5,
    })
}

pub fn full_run() -> Result<ClassificationBundle, ClassifyError> {
    run(&["e6", "e7", "e8", "f4", "g2", "so8"])
}

use std::collections::{BTreeMap, BTreeSet};

use num_traits::One;
use rayon::prelude::*;
use serde::Serialize;

use crate::chevalley::algebra;
use crate::grading::{split, verify_grading};
use crate::involutions::{chevalley_involution, diagram_lift, from_character, weyl_lift, Automorphism, Character};
use crate::rootsys::{Family, RootSystem, SimpleType, TypeLabel, WeylElement};

use super::{decide, ClassifyError, GradingRecord};

/// Labels of `k` predicted by the three families
/// `so(a)+so(b)+so(c)`, `so(a)+so(b)+so(c)+so(d)` (parts summing to 8) and `u3+u1`.
pub fn so8_families() -> BTreeSet<TypeLabel> {
    fn parts(n: usize, k: usize, max: usize, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == 0 {
            if n == 0 {
                out.push(acc.clone());
            }
            return;
        }
        for p in (1..=max.min(n)).rev() {
            acc.push(p);
            parts(n - p, k - 1, p, acc, out);
            acc.pop();
        }
    }
    let mut ps = Vec::new();
    parts(8, 3, 8, &mut Vec::new(), &mut ps);
    parts(8, 4, 8, &mut Vec::new(), &mut ps);
    let mut out: BTreeSet<TypeLabel> = ps
        .iter()
        .map(|p| p.iter().fold(TypeLabel::default(), |l, &n| l.plus(&TypeLabel::so(n))))
        .collect();
    out.insert(TypeLabel::u(3).plus(&TypeLabel::u(1)));
    out
}

/// One canonical outcome: all pairs with isomorphic `k`.
#[derive(Clone, Debug, Serialize)]
pub struct So8Record {
    pub label: String,
    /// Classes of the pair's action on the root lattice under `W x| S3`.
    pub lattice_orbits: usize,
    pub pairs: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct So8Result {
    pub pool: usize,
    /// Commuting pairs split and verified.
    pub commuting_pairs: usize,
    pub records: Vec<So8Record>,
    pub labels: BTreeSet<String>,
    pub families: BTreeSet<String>,
    /// Family labels never produced.
    pub missing: Vec<String>,
    /// Produced labels outside the families.
    pub outside: Vec<String>,
}

impl So8Result {
    pub fn matches_families(&self) -> bool {
        self.missing.is_empty() && self.outside.is_empty()
    }

    pub fn check(&self) -> Result<(), ClassifyError> {
        match self.outside.first() {
            Some(l) => Err(ClassifyError::OutsideFamilies(l.clone())),
            None => Ok(()),
        }
    }
}

type IMat = Vec<Vec<i64>>;

fn matmul(a: &IMat, b: &IMat) -> IMat {
    let n = a.len();
    (0..n)
        .map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum()).collect())
        .collect()
}

/// `W(D4) x| S3` on the root lattice, each element with its inverse.
pub fn lattice_automorphisms(rs: &RootSystem) -> Vec<(IMat, IMat)> {
    let r = rs.rank();
    let mut gens: Vec<IMat> = (0..r).map(|i| WeylElement::from_word(rs, &[i]).matrix().to_vec()).collect();
    for pi in rs.diagram_symmetries() {
        if (0..r).all(|i| pi[pi[i]] == i) {
            let mut m = vec![vec![0; r]; r];
            for (j, &pj) in pi.iter().enumerate() {
                m[pj][j] = 1;
            }
            gens.push(m);
        }
    }
    let id: IMat = (0..r).map(|i| (0..r).map(|j| i64::from(i == j)).collect()).collect();
    let mut seen: BTreeMap<IMat, IMat> = BTreeMap::from([(id.clone(), id.clone())]);
    let mut frontier = vec![(id.clone(), id)];
    while let Some((g, gi)) = frontier.pop() {
        // generators are involutions, so (g s)^-1 = s g^-1
        for s in &gens {
            let h = matmul(&g, s);
            if !seen.contains_key(&h) {
                let hi = matmul(s, &gi);
                seen.insert(h.clone(), hi.clone());
                frontier.push((h, hi));
            }
        }
    }
    seen.into_iter().collect()
}

fn orbit_key(group: &[(IMat, IMat)], triple: &[IMat; 3]) -> [IMat; 3] {
    group
        .iter()
        .map(|(g, gi)| {
            let mut t = triple.clone().map(|m| matmul(&matmul(g, &m), gi));
            t.sort();
            t
        })
        .min()
        .expect("group is nonempty")
}

fn involution_pool() -> Result<Vec<Automorphism>, ClassifyError> {
    let ty = SimpleType::new(Family::D, 4);
    let g = algebra(ty);
    let r = g.rank();
    let omega = chevalley_involution(&g);
    let mut base = vec![Automorphism::identity(g.clone())];
    for bits in 1..1u64 << r {
        base.push(from_character(&g, &Character::from_bits(r, bits))?);
    }
    for pi in g.root_system().diagram_symmetries() {
        let transposition = (0..r).all(|i| pi[pi[i]] == i);
        if !transposition {
            continue;
        }
        for bits in 0..1u64 << r {
            let chi = Character::from_bits(r, bits);
            if chi.is_invariant_under(&pi) {
                base.push(diagram_lift(&g, &pi, &chi)?);
            }
        }
    }
    // products of reflections in the mutually orthogonal simple roots 1, 3, 4
    for mask in 1..8u32 {
        let word: Vec<usize> = [0, 2, 3].into_iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, n)| n).collect();
        for bits in 0..1u64 << r {
            base.push(weyl_lift(&g, &word, &Character::from_bits(r, bits))?);
        }
    }
    let mut pool: Vec<Automorphism> = Vec::new();
    for a in base.iter().flat_map(|a| [a.clone(), omega.compose(a)]) {
        if a.is_involution() && !pool.contains(&a) {
            pool.push(a);
        }
    }
    Ok(pool)
}

/// Splits every commuting pair drawn from a pool of involutions of so8
/// (characters, diagram lifts, twisted lifts of orthogonal reflection
/// products, and their products with the Chevalley involution), groups the
/// pairs by isomorphism type of `k` and compares with the family list.
pub fn classify_so8() -> Result<So8Result, ClassifyError> {
    let pool = involution_pool()?;
    let pairs: Vec<(usize, usize)> = (0..pool.len())
        .flat_map(|i| (i + 1..pool.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| pool[i].commutes(&pool[j]))
        .collect();
    let labels: Vec<TypeLabel> = pairs
        .par_iter()
        .map(|&(i, j)| {
            let g = split(&pool[i], &pool[j])?;
            let report = verify_grading(&g);
            if !report.ok() {
                return Err(ClassifyError::Verification {
                    witness: format!("so8 pool pair ({i}, {j})"),
                    violations: report.violations,
                });
            }
            Ok(decide(&g)?.0)
        })
        .collect::<Result<_, ClassifyError>>()?;

    let rs = pool[0].algebra().root_system();
    let group = lattice_automorphisms(rs);
    let mut by_label: BTreeMap<TypeLabel, (BTreeSet<[IMat; 3]>, usize)> = BTreeMap::new();
    let mut keys: BTreeMap<[IMat; 3], [IMat; 3]> = BTreeMap::new();
    for (&(i, j), label) in pairs.iter().zip(&labels) {
        let mut t = [
            pool[i].lattice_matrix(),
            pool[j].lattice_matrix(),
            pool[i].compose(&pool[j]).lattice_matrix(),
        ];
        t.sort();
        let key = keys.entry(t.clone()).or_insert_with(|| orbit_key(&group, &t)).clone();
        let e = by_label.entry(label.clone()).or_default();
        e.0.insert(key);
        e.1 += 1;
    }
    let records = by_label
        .iter()
        .map(|(l, (orbits, n))| So8Record {
            label: l.compact_name(),
            lattice_orbits: orbits.len(),
            pairs: *n,
        })
        .collect();

    let got: BTreeSet<TypeLabel> = by_label.into_keys().collect();
    let fam = so8_families();
    Ok(So8Result {
        pool: pool.len(),
        commuting_pairs: pairs.len(),
        records,
        labels: got.iter().map(|l| l.compact_name()).collect(),
        families: fam.iter().map(|l| l.compact_name()).collect(),
        missing: fam.difference(&got).map(|l| l.compact_name()).collect(),
        outside: got.difference(&fam).map(|l| l.compact_name()).collect(),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct A5Report {
    /// Orthogonal subsystem of the A5 on extended nodes {0,1,3,4,5}.
    pub prime_orthogonal: String,
    /// Orthogonal subsystem of the A5 on extended nodes {0,1,3,4,2}.
    pub double_prime_orthogonal: String,
    /// Orthogonal subsystem of the A5 inside the `u6+R` record.
    pub record_orthogonal: Option<String>,
    /// `"prime"` or `"double-prime"`.
    pub record_class: Option<&'static str>,
    pub weyl_invariant: bool,
}

impl A5Report {
    pub fn distinguishes(&self) -> bool {
        self.prime_orthogonal != self.double_prime_orthogonal
    }
}

/// The two Weyl classes of A5 in E7, told apart by their orthogonal
/// subsystems, and the class of the A5 in the E VI-VI-VI record with `k = u6+R`.
pub fn a5_conjugacy_check(records: &[GradingRecord]) -> Result<A5Report, ClassifyError> {
    let rs = RootSystem::new(SimpleType::new(Family::E, 7));
    let ext = rs.extended_diagram();
    let copies = [ext.subsystem(&rs, &[0, 1, 3, 4, 5]), ext.subsystem(&rs, &[0, 1, 3, 4, 2])];
    let orth: Vec<TypeLabel> = copies
        .iter()
        .map(|c| rs.orthogonal_subsystem(c).map(|s| s.label))
        .collect::<Result<_, _>>()?;

    let movers = [
        rs.longest_element(None),
        rs.weyl_word(&[0, 2, 3, 1, 4, 3, 5, 6]),
        rs.weyl_word(&[6, 5, 4, 3, 2, 1, 0, 2, 3]),
    ];
    let mut weyl_invariant = true;
    for (c, o) in copies.iter().zip(&orth) {
        for w in &movers {
            let moved: Vec<usize> = c.iter().map(|&a| w.apply(a)).collect();
            weyl_invariant &= rs.orthogonal_subsystem(&moved)?.label == *o;
        }
    }

    let target = TypeLabel::u(6).plus(&TypeLabel::torus(1));
    let mut record_orthogonal = None;
    let mut record_class = None;
    if let Some(rec) = records.iter().find(|r| r.algebra == "e7" && r.k == target) {
        let (s, t) = rec.witness.replay()?;
        let roots: Vec<usize> = (0..rs.num_roots())
            .filter(|&a| s.root_map()[a] == a && t.root_map()[a] == a)
            .filter(|&a| s.coefficient(a).is_one() && t.coefficient(a).is_one())
            .collect();
        let o = rs.orthogonal_subsystem(&roots)?.label;
        record_class = if o == orth[0] {
            Some("prime")
        } else if o == orth[1] {
            Some("double-prime")
        } else {
            None
        };
        record_orthogonal = Some(o.compact_name());
    }
    Ok(A5Report {
        prime_orthogonal: orth[0].compact_name(),
        double_prime_orthogonal: orth[1].compact_name(),
        record_orthogonal,
        record_class,
        weyl_invariant,
    })
}

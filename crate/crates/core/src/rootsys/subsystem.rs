use std::collections::BTreeSet;

use super::{Family, RootError, RootIndex, RootSystem, SimpleType, TypeLabel};

/// Type of a closed root subsystem together with a simple system for it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubsystemLabel {
    pub label: TypeLabel,
    pub simple_roots: Vec<RootIndex>,
    pub roots: Vec<RootIndex>,
}

impl SubsystemLabel {
    pub fn torus_rank(&self) -> usize {
        self.label.torus_rank()
    }
}

/// Smallest subset containing `gens` that is closed under negation and under
/// addition inside the root system.
pub fn closed_span(rs: &RootSystem, gens: &[RootIndex]) -> Vec<RootIndex> {
    let mut set: BTreeSet<RootIndex> = BTreeSet::new();
    let mut stack: Vec<RootIndex> = Vec::new();
    for &g in gens {
        for r in [g, rs.neg(g)] {
            if set.insert(r) {
                stack.push(r);
            }
        }
    }
    while let Some(a) = stack.pop() {
        let current: Vec<RootIndex> = set.iter().copied().collect();
        for b in current {
            if let Some(s) = rs.sum(a, b) {
                for r in [s, rs.neg(s)] {
                    if set.insert(r) {
                        stack.push(r);
                    }
                }
            }
        }
    }
    set.into_iter().collect()
}

/// Roots orthogonal to every root in `roots`.
pub fn orthogonal_roots(rs: &RootSystem, roots: &[RootIndex]) -> Vec<RootIndex> {
    (0..rs.num_roots())
        .filter(|&b| roots.iter().all(|&a| rs.root_inner(a, b) == 0))
        .collect()
}

fn check_closed(rs: &RootSystem, set: &BTreeSet<RootIndex>) -> Result<(), RootError> {
    for &a in set {
        if !set.contains(&rs.neg(a)) {
            return Err(RootError::NotClosed(format!("missing negative of root {a}")));
        }
        for &b in set {
            if let Some(s) = rs.sum(a, b) {
                if !set.contains(&s) {
                    return Err(RootError::NotClosed(format!("root {a} + root {b} missing")));
                }
            }
        }
    }
    Ok(())
}

pub(super) fn subsystem_type(rs: &RootSystem, roots: &[RootIndex]) -> Result<SubsystemLabel, RootError> {
    let set: BTreeSet<RootIndex> = roots.iter().copied().collect();
    if let Some(&bad) = set.iter().find(|&&r| r >= rs.num_roots()) {
        return Err(RootError::BadRoot(bad));
    }
    check_closed(rs, &set)?;

    // Positivity from the functional with weights 2^(n-1), ..., 2, 1. Every
    // root has sign-uniform coordinates, so no root evaluates to zero.
    let n = rs.rank();
    let f = |r: RootIndex| -> i64 { rs.root(r).iter().enumerate().map(|(k, c)| c << (n - 1 - k)).sum() };
    let pos: Vec<RootIndex> = set.iter().copied().filter(|&r| f(r) > 0).collect();
    let pos_set: BTreeSet<RootIndex> = pos.iter().copied().collect();
    let simple: Vec<RootIndex> = pos
        .iter()
        .copied()
        .filter(|&r| {
            !pos.iter()
                .any(|&a| rs.difference(r, a).is_some_and(|d| pos_set.contains(&d)))
        })
        .collect();

    let k = simple.len();
    let cartan: Vec<Vec<i64>> = (0..k)
        .map(|i| (0..k).map(|j| rs.pairing(simple[j], simple[i])).collect())
        .collect();

    let mut seen = vec![false; k];
    let mut comps = Vec::new();
    for s in 0..k {
        if seen[s] {
            continue;
        }
        let mut comp = vec![s];
        seen[s] = true;
        let mut i = 0;
        while i < comp.len() {
            let a = comp[i];
            for b in 0..k {
                if !seen[b] && cartan[a][b] != 0 {
                    seen[b] = true;
                    comp.push(b);
                }
            }
            i += 1;
        }
        comp.sort();
        let sub: Vec<Vec<i64>> = comp.iter().map(|&a| comp.iter().map(|&b| cartan[a][b]).collect()).collect();
        comps.push(classify_connected(&sub)?);
    }
    Ok(SubsystemLabel {
        label: TypeLabel::new(comps, n - k),
        simple_roots: simple,
        roots: set.into_iter().collect(),
    })
}

/// Type of a connected Cartan matrix.
pub fn classify_connected(c: &[Vec<i64>]) -> Result<SimpleType, RootError> {
    let r = c.len();
    let unknown = || RootError::UnsupportedType(format!("{c:?}"));
    let nbrs = |i: usize| -> Vec<usize> { (0..r).filter(|&j| j != i && c[i][j] != 0).collect() };
    let bond = |i: usize, j: usize| c[i][j] * c[j][i];
    let max_bond = (0..r)
        .flat_map(|i| (0..r).map(move |j| (i, j)))
        .filter(|&(i, j)| i != j)
        .map(|(i, j)| bond(i, j))
        .max()
        .unwrap_or(0);
    let ty = match max_bond {
        0 | 1 => {
            let branch: Vec<usize> = (0..r).filter(|&i| nbrs(i).len() >= 3).collect();
            match branch.as_slice() {
                [] => SimpleType::new(Family::A, r),
                [b] => {
                    let mut arms: Vec<usize> = nbrs(*b)
                        .into_iter()
                        .map(|start| {
                            let (mut prev, mut cur, mut len) = (*b, start, 1);
                            loop {
                                let next: Vec<usize> = nbrs(cur).into_iter().filter(|&x| x != prev).collect();
                                match next.as_slice() {
                                    [x] => {
                                        prev = cur;
                                        cur = *x;
                                        len += 1;
                                    }
                                    _ => break len,
                                }
                            }
                        })
                        .collect();
                    arms.sort();
                    match arms.as_slice() {
                        [1, 1, _] => SimpleType::new(Family::D, r),
                        [1, 2, 2] => SimpleType::new(Family::E, 6),
                        [1, 2, 3] => SimpleType::new(Family::E, 7),
                        [1, 2, 4] => SimpleType::new(Family::E, 8),
                        _ => return Err(unknown()),
                    }
                }
                _ => return Err(unknown()),
            }
        }
        2 => {
            if r == 2 {
                SimpleType::new(Family::B, 2)
            } else if r == 4 && (0..r).filter(|&i| nbrs(i).len() == 1).all(|i| {
                let j = nbrs(i)[0];
                bond(i, j) == 1
            }) {
                SimpleType::new(Family::F, 4)
            } else {
                // a_ij = -2: alpha_i short, alpha_j long
                let (i, j) = (0..r)
                    .flat_map(|i| (0..r).map(move |j| (i, j)))
                    .find(|&(i, j)| c[i][j] == -2)
                    .ok_or_else(unknown)?;
                let long_is_end = nbrs(j).len() == 1;
                let short_is_end = nbrs(i).len() == 1;
                if short_is_end && !long_is_end {
                    SimpleType::new(Family::B, r)
                } else if long_is_end && !short_is_end {
                    SimpleType::new(Family::C, r)
                } else {
                    return Err(unknown());
                }
            }
        }
        3 => SimpleType::new(Family::G, 2),
        _ => return Err(unknown()),
    };
    Ok(ty)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rs(s: &str) -> RootSystem {
        RootSystem::from_label(s).unwrap()
    }

    fn lbl(s: &RootSystem, nodes: &[usize]) -> TypeLabel {
        let d = s.extended_diagram();
        s.subsystem_type(&d.subsystem(s, nodes)).unwrap().label
    }

    #[test]
    fn empty_is_torus() {
        let r = rs("e6");
        assert_eq!(r.subsystem_type(&[]).unwrap().label, TypeLabel::torus(6));
    }

    #[test]
    fn whole_system_types() {
        for t in ["e6", "e7", "e8", "f4", "g2", "b4", "c4", "d5", "a3"] {
            let r = rs(t);
            let all: Vec<_> = (0..r.num_roots()).collect();
            assert_eq!(r.subsystem_type(&all).unwrap().label, TypeLabel::simple(r.cartan_type()), "{t}");
            assert!(r.orthogonal_subsystem(&all).unwrap().roots.is_empty());
        }
    }

    #[test]
    fn e6_extended_diagram_subsystems() {
        let r = rs("e6");
        assert_eq!(lbl(&r, &[1, 2, 3, 4, 5, 0]).to_string(), "A1+A5");
        assert_eq!(lbl(&r, &[1, 2, 3, 4, 6]).to_string(), "D5+T1");
        let d = r.extended_diagram();
        let a: BTreeSet<_> = d.subsystem(&r, &[1, 2, 3, 4, 5, 0]).into_iter().collect();
        let b: BTreeSet<_> = d.subsystem(&r, &[1, 2, 3, 4, 6]).into_iter().collect();
        let both: Vec<_> = a.intersection(&b).copied().collect();
        assert_eq!(r.subsystem_type(&both).unwrap().label.to_string(), "A4+T2");
    }

    #[test]
    fn e7_a5_classes_have_different_complements() {
        let r = rs("e7");
        let d = r.extended_diagram();
        // extended line 0-1-3-4-5-6-7 with node 2 on node 4
        let a5p = d.subsystem(&r, &[0, 1, 3, 4, 5]);
        let a5pp = d.subsystem(&r, &[0, 1, 3, 4, 2]);
        assert_eq!(r.subsystem_type(&a5p).unwrap().label.semisimple_rank(), 5);
        assert_eq!(r.subsystem_type(&a5pp).unwrap().label.semisimple_rank(), 5);
        let o1 = r.orthogonal_subsystem(&a5p).unwrap().label;
        let o2 = r.orthogonal_subsystem(&a5pp).unwrap().label;
        assert_ne!(o1.components(), o2.components());
        assert_eq!(o2.to_string(), "A2+T5");
        assert!(o1.to_string().starts_with("A1"));
    }

    #[test]
    fn non_closed_rejected() {
        let r = rs("a2");
        assert!(matches!(r.subsystem_type(&[0]), Err(RootError::NotClosed(_))));
        assert!(matches!(r.subsystem_type(&[0, 1, 3, 4]), Err(RootError::NotClosed(_))));
    }

    #[test]
    fn non_simply_laced_subsystems() {
        let r = rs("f4");
        let d = r.extended_diagram();
        // F4 extended: 0-1-2=>3-4
        assert_eq!(lbl(&r, &[0, 1, 2, 3]).to_string(), "B4");
        assert_eq!(lbl(&r, &[0, 2, 3, 4]).to_string(), "A1+C3");
        assert_eq!(lbl(&r, &[0, 1, 2, 4]).to_string(), "A1+A3");
        assert_eq!(lbl(&r, &[0, 1, 3, 4]).to_string(), "A2+A2");
        assert_eq!(d.bond(2, 3), 2);
        let g = rs("g2");
        assert_eq!(lbl(&g, &[0, 1]).to_string(), "A1+A1");
        assert_eq!(lbl(&g, &[0, 2]).to_string(), "A2");
    }

    proptest! {
        #[test]
        fn type_is_weyl_invariant(word in proptest::collection::vec(0usize..6, 0..15), pick in 0usize..3) {
            let r = rs("e6");
            let d = r.extended_diagram();
            let nodes: &[usize] = [&[1, 2, 3, 4, 5, 0][..], &[1, 2, 3, 4, 6], &[2, 3, 4, 6, 0]][pick];
            let sub = d.subsystem(&r, nodes);
            let w = r.weyl_word(&word);
            let moved: Vec<_> = sub.iter().map(|&b| w.apply(b)).collect();
            prop_assert_eq!(r.subsystem_type(&sub).unwrap().label, r.subsystem_type(&moved).unwrap().label);
        }
    }
}

use std::collections::BTreeSet;

use crate::rootsys::{Family, SimpleType, TypeLabel};

/// Fixed algebras of the nontrivial involutions of a compact simple algebra
/// of classical type.
pub fn classical_symmetric(t: SimpleType) -> Vec<TypeLabel> {
    let n = t.rank;
    let mut out = Vec::new();
    match t.family {
        Family::A => {
            let m = n + 1;
            out.push(TypeLabel::so(m));
            if m % 2 == 0 {
                out.push(TypeLabel::sp(m / 2));
            }
            for p in 1..=m / 2 {
                out.push(TypeLabel::su(p).plus(&TypeLabel::su(m - p)).plus(&TypeLabel::torus(1)));
            }
        }
        Family::B => {
            let m = 2 * n + 1;
            for p in 1..=n {
                out.push(TypeLabel::so(p).plus(&TypeLabel::so(m - p)));
            }
        }
        Family::C => {
            out.push(TypeLabel::u(n));
            for p in 1..=n / 2 {
                out.push(TypeLabel::sp(p).plus(&TypeLabel::sp(n - p)));
            }
        }
        Family::D => {
            let m = 2 * n;
            for p in 1..=n {
                out.push(TypeLabel::so(p).plus(&TypeLabel::so(m - p)));
            }
            out.push(TypeLabel::u(n));
        }
        Family::E | Family::F | Family::G => {}
    }
    let whole = TypeLabel::simple(t);
    out.retain(|k| *k != whole);
    out.sort();
    out.dedup();
    out
}

/// All proper symmetric subalgebras of a compact reductive algebra `h`.
///
/// Each simple component carries an involution or the identity; two
/// isomorphic components may instead be exchanged (fixed algebra: one
/// diagonal copy); the torus keeps any dimension from 0 to its rank. The
/// all-identity choice is excluded. `simple` lists the involution fixed
/// algebras of one simple component.
pub fn symmetric_subalgebras(h: &TypeLabel, simple: &dyn Fn(SimpleType) -> Vec<TypeLabel>) -> BTreeSet<TypeLabel> {
    let comps = h.components();
    let options: Vec<Vec<TypeLabel>> = comps.iter().map(|&c| simple(c)).collect();
    let mut out = BTreeSet::new();
    let mut used = vec![false; comps.len()];
    walk(comps, &options, &mut used, 0, TypeLabel::default(), false, h.torus_rank(), &mut out);
    out
}

#[allow(clippy::too_many_arguments)]
fn walk(
    comps: &[SimpleType],
    options: &[Vec<TypeLabel>],
    used: &mut [bool],
    i: usize,
    acc: TypeLabel,
    nontrivial: bool,
    torus: usize,
    out: &mut BTreeSet<TypeLabel>,
) {
    if i == comps.len() {
        for f in 0..=torus {
            if nontrivial || f < torus {
                out.insert(acc.plus(&TypeLabel::torus(f)));
            }
        }
        return;
    }
    if used[i] {
        walk(comps, options, used, i + 1, acc, nontrivial, torus, out);
        return;
    }
    let whole = TypeLabel::simple(comps[i]);
    walk(comps, options, used, i + 1, acc.plus(&whole), nontrivial, torus, out);
    for k in &options[i] {
        walk(comps, options, used, i + 1, acc.plus(k), true, torus, out);
    }
    for j in i + 1..comps.len() {
        if !used[j] && comps[j] == comps[i] {
            used[j] = true;
            walk(comps, options, used, i + 1, acc.plus(&whole), true, torus, out);
            used[j] = false;
        }
    }
}

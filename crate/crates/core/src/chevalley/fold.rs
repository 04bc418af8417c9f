use num_traits::{One, Zero};

use super::{ChevalleyError, Convention, LieAlgebra, Table};
use crate::exactq::{Rational, SparseVec};
use crate::rootsys::{Family, RootSystem, SimpleType};

/// Simply laced parent type and, for each target node, the orbit of parent
/// nodes folded onto it.
fn folding(ty: SimpleType) -> (SimpleType, Vec<Vec<usize>>) {
    let n = ty.rank;
    match ty.family {
        Family::G => (SimpleType::new(Family::D, 4), vec![vec![0, 2, 3], vec![1]]),
        // parent E6 in line numbering: 1-2-3-4-5 with 6 on 3
        Family::F => (
            SimpleType::new(Family::E, 6),
            vec![vec![5], vec![2], vec![1, 3], vec![0, 4]],
        ),
        Family::B => {
            let mut orbits: Vec<Vec<usize>> = (0..n - 1).map(|k| vec![k]).collect();
            orbits.push(vec![n - 1, n]);
            (SimpleType::new(Family::D, n + 1), orbits)
        }
        Family::C => {
            let mut orbits: Vec<Vec<usize>> = (0..n - 1).map(|k| vec![k, 2 * n - 2 - k]).collect();
            orbits.push(vec![n - 1]);
            (SimpleType::new(Family::A, 2 * n - 1), orbits)
        }
        _ => unreachable!("{ty} is simply laced"),
    }
}

fn sum_of(idx: impl IntoIterator<Item = usize>) -> SparseVec {
    SparseVec::from_pairs(idx.into_iter().map(|i| (i, Rational::one())).collect())
}

pub(super) fn folded_table(rs: &RootSystem) -> Result<Table, ChevalleyError> {
    let (parent_ty, orbits) = folding(rs.cartan_type());
    let parent = LieAlgebra::build_unchecked(parent_ty, Convention::Standard)?;
    let prs = parent.root_system();
    let r = rs.rank();
    let np = rs.num_positive();
    let fail = |s: String| ChevalleyError::Inconsistent(s);

    let hs: Vec<SparseVec> = orbits.iter().map(|o| sum_of(o.iter().map(|&j| parent.h(j)))).collect();
    let mut xs: Vec<SparseVec> = orbits.iter().map(|o| sum_of(o.iter().map(|&j| parent.e(j)))).collect();
    let mut ys: Vec<SparseVec> = orbits
        .iter()
        .map(|o| sum_of(o.iter().map(|&j| parent.e(prs.neg(j)))))
        .collect();
    for i in 0..r {
        if parent.bracket(&xs[i], &ys[i]) != hs[i] {
            return Err(fail(format!("orbit {i} generators do not close on H")));
        }
    }

    let coroot = |xi: usize| -> SparseVec {
        let mut v = SparseVec::new();
        for (k, c) in rs.coroot_coeffs(xi).into_iter().enumerate() {
            v = v.add_scaled(&Rational::from_integer(c.into()), &hs[k]);
        }
        v
    };
    for xi in r..np {
        let (i, prev) = (0..r)
            .find_map(|i| rs.difference(xi, i).filter(|&p| rs.is_positive(p)).map(|p| (i, p)))
            .ok_or_else(|| fail(format!("root {xi} has no predecessor")))?;
        let scale = Rational::one() / Rational::from_integer((rs.string_down(i, prev) + 1).into());
        let x = parent.bracket(&xs[i], &xs[prev]).scaled(&scale);
        let mut y = parent.bracket(&ys[i], &ys[prev]).scaled(&scale);
        let h = coroot(xi);
        let xy = parent.bracket(&x, &y);
        if xy == h.neg() {
            y = y.neg();
        } else if xy != h {
            return Err(fail(format!("[X, Y] for root {xi} is not +-H")));
        }
        xs.push(x);
        ys.push(y);
    }

    let mut basis = hs;
    basis.extend(xs);
    basis.extend(ys);
    let dim = basis.len();
    if dim != rs.algebra_dim() {
        return Err(fail(format!("folded basis has {dim} elements")));
    }
    // Supports are disjoint; read each coordinate at the first support index.
    let mut owner = vec![None; parent.dim()];
    for (b, v) in basis.iter().enumerate() {
        for (k, _) in v.iter() {
            if owner[k].replace(b).is_some() {
                return Err(fail("overlapping supports".into()));
            }
        }
    }
    let leads: Vec<(usize, Rational)> = basis
        .iter()
        .map(|v| {
            let (k, c) = v.iter().next().expect("nonzero basis vector");
            (k, c.clone())
        })
        .collect();

    let mut table = vec![Vec::new(); dim * dim];
    for a in 0..dim {
        for b in 0..dim {
            let v = parent.bracket(&basis[a], &basis[b]);
            let mut targets: Vec<usize> = v.iter().filter_map(|(k, _)| owner[k]).collect();
            if targets.len() != v.nnz() {
                return Err(fail(format!("[{a},{b}] leaves the folded subalgebra")));
            }
            targets.sort();
            targets.dedup();
            let mut rebuilt = SparseVec::new();
            let mut entry = Vec::new();
            for t in targets {
                let c = v.get(leads[t].0) / &leads[t].1;
                if !c.is_integer() {
                    return Err(fail(format!("non-integral constant in [{a},{b}]")));
                }
                rebuilt = rebuilt.add_scaled(&c, &basis[t]);
                if !c.is_zero() {
                    entry.push((t, c.to_integer().try_into().expect("small constant")));
                }
            }
            if rebuilt != v {
                return Err(fail(format!("[{a},{b}] is not a combination of the folded basis")));
            }
            table[a * dim + b] = entry;
        }
    }
    Ok(table)
}

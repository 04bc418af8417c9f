use std::fmt::Write as _;

use super::{closed_span, RootIndex, RootSystem};

/// Extended Dynkin diagram. Node `0` is the affine node `-delta`, node `k`
/// (for `k >= 1`) is the simple root with 0-based index `k - 1`.
#[derive(Clone, Debug)]
pub struct ExtendedDiagram {
    roots: Vec<RootIndex>,
    marks: Vec<i64>,
    /// `(a, b, m)` with `a < b` and bond multiplicity `m`.
    edges: Vec<(usize, usize, i64)>,
}

impl ExtendedDiagram {
    pub(super) fn new(rs: &RootSystem) -> Self {
        let n = rs.rank();
        let mut roots = vec![rs.neg(rs.highest_root())];
        roots.extend((0..n).map(|k| rs.simple(k)));
        let mut marks = vec![1];
        marks.extend(rs.marks());
        let mut edges = Vec::new();
        for a in 0..=n {
            for b in a + 1..=n {
                let m = rs.pairing(roots[a], roots[b]) * rs.pairing(roots[b], roots[a]);
                if m != 0 {
                    edges.push((a, b, m));
                }
            }
        }
        Self { roots, marks, edges }
    }

    pub fn num_nodes(&self) -> usize {
        self.roots.len()
    }

    /// Root index of diagram node `k`.
    pub fn node_root(&self, k: usize) -> RootIndex {
        self.roots[k]
    }

    pub fn marks(&self) -> &[i64] {
        &self.marks
    }

    pub fn edges(&self) -> &[(usize, usize, i64)] {
        &self.edges
    }

    pub fn bond(&self, a: usize, b: usize) -> i64 {
        let (a, b) = if a < b { (a, b) } else { (b, a) };
        self.edges
            .iter()
            .find(|e| e.0 == a && e.1 == b)
            .map_or(0, |e| e.2)
    }

    pub fn mark_sum(&self) -> i64 {
        self.marks.iter().sum()
    }

    /// Closed subsystem generated by the roots at the given nodes.
    pub fn subsystem(&self, rs: &RootSystem, nodes: &[usize]) -> Vec<RootIndex> {
        let gens: Vec<RootIndex> = nodes.iter().map(|&k| self.roots[k]).collect();
        closed_span(rs, &gens)
    }

    pub fn ascii(&self) -> String {
        let mut s = String::new();
        for (k, m) in self.marks.iter().enumerate() {
            let _ = writeln!(s, "node {k}  mark {m}");
        }
        for &(a, b, m) in &self.edges {
            let bond = match m {
                1 => "---",
                2 => "===",
                3 => "≡≡≡",
                _ => "<=>",
            };
            let _ = writeln!(s, "{a} {bond} {b}");
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn affine_a1_is_a_quadruple_bond() {
        let d = RootSystem::from_label("a1").unwrap().extended_diagram();
        assert_eq!(d.num_nodes(), 2);
        assert_eq!(d.edges(), &[(0, 1, 4)]);
    }

    #[test]
    fn e6_affine_node_sits_on_branch() {
        let d = RootSystem::from_label("e6").unwrap().extended_diagram();
        let line: Vec<_> = (1..5).map(|k| (k, k + 1, 1)).collect();
        for e in &line {
            assert!(d.edges().contains(e));
        }
        assert_eq!(d.bond(3, 6), 1);
        assert_eq!(d.bond(0, 6), 1);
        assert_eq!(d.edges().len(), 6);
    }

    #[test]
    fn mark_sums_are_coxeter_numbers() {
        for (t, h) in [("e6", 12), ("e7", 18), ("e8", 30), ("f4", 12), ("g2", 6), ("d4", 6), ("b3", 6), ("c3", 6)] {
            let rs = RootSystem::from_label(t).unwrap();
            assert_eq!(rs.extended_diagram().mark_sum(), h, "{t}");
            assert_eq!(rs.cartan_type().coxeter_number() as i64, h);
        }
    }

    #[test]
    fn e8_marks() {
        let rs = RootSystem::from_label("e8").unwrap();
        let mut m = rs.extended_diagram().marks().to_vec();
        m.sort();
        assert_eq!(m, vec![1, 2, 2, 3, 3, 4, 4, 5, 6]);
        assert_eq!(rs.marks(), vec![2, 3, 4, 6, 5, 4, 3, 2]);
    }
}

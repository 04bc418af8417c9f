//! Root systems, (extended) Dynkin diagrams, Weyl group elements and closed
//! root subsystems.
//!
//! Node numbering is Bourbaki for every type except E6, which uses a line of
//! five nodes `1-2-3-4-5` with node `6` attached to `3` (the affine node `0`
//! hangs off `6`). Internally simple roots are 0-based, so E6 node `k` is
//! simple root index `k - 1`.
//!
//! Roots are integer coordinate vectors over the simple roots. Positive roots
//! are ordered by height, then by coordinates in decreasing lexicographic
//! order (so the simple roots come first, in node order). Root `i + N` is the
//! negative of positive root `i`, where `N` is the number of positive roots.

mod diagram;
mod label;
mod subsystem;
mod weyl;

pub use diagram::ExtendedDiagram;
pub use label::{Family, SimpleType, TypeLabel};
pub use subsystem::{closed_span, orthogonal_roots, SubsystemLabel};
pub use weyl::WeylElement;

use std::collections::HashMap;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RootError {
    #[error("unsupported root system type `{0}`")]
    UnsupportedType(String),
    #[error("root subset is not closed: {0}")]
    NotClosed(String),
    #[error("matrix is not an automorphism of the root system: {0}")]
    NotAutomorphism(String),
    #[error("root index {0} out of range")]
    BadRoot(usize),
}

pub type RootIndex = usize;

#[derive(Clone, Debug)]
pub struct RootSystem {
    ty: SimpleType,
    /// `gram[i][j] = (alpha_i, alpha_j)`, shortest roots have squared length 2.
    gram: Vec<Vec<i64>>,
    /// `cartan[i][j] = <alpha_j, alpha_i^vee>`
    cartan: Vec<Vec<i64>>,
    roots: Vec<Vec<i64>>,
    index: HashMap<Vec<i64>, RootIndex>,
    highest: RootIndex,
}

fn chain_gram(n: usize, lengths: &[i64], bonds: &[(usize, usize, i64)]) -> Vec<Vec<i64>> {
    let mut g = vec![vec![0i64; n]; n];
    for i in 0..n {
        g[i][i] = lengths[i];
    }
    for &(i, j, v) in bonds {
        g[i][j] = v;
        g[j][i] = v;
    }
    g
}

fn gram_for(ty: SimpleType) -> Vec<Vec<i64>> {
    let n = ty.rank;
    let line = |n: usize, v: i64| -> Vec<(usize, usize, i64)> { (0..n.saturating_sub(1)).map(|i| (i, i + 1, v)).collect() };
    match ty.family {
        Family::A => chain_gram(n, &vec![2; n], &line(n, -1)),
        Family::B => {
            let mut lengths = vec![4; n];
            lengths[n - 1] = 2;
            chain_gram(n, &lengths, &line(n, -2))
        }
        Family::C => {
            let mut lengths = vec![2; n];
            lengths[n - 1] = 4;
            let mut bonds = line(n - 1, -1);
            bonds.push((n - 2, n - 1, -2));
            chain_gram(n, &lengths, &bonds)
        }
        Family::D => {
            let mut bonds = line(n - 1, -1);
            bonds.push((n - 3, n - 1, -1));
            chain_gram(n, &vec![2; n], &bonds)
        }
        Family::E if n == 6 => {
            // line 1-2-3-4-5, node 6 on node 3
            let mut bonds = line(5, -1);
            bonds.push((2, 5, -1));
            chain_gram(6, &[2; 6], &bonds)
        }
        Family::E => {
            // Bourbaki: 1-3-4-5-6-7(-8), node 2 on node 4
            let mut bonds = vec![(0, 2, -1), (1, 3, -1)];
            bonds.extend((2..n - 1).map(|i| (i, i + 1, -1)));
            chain_gram(n, &vec![2; n], &bonds)
        }
        Family::F => chain_gram(4, &[4, 4, 2, 2], &[(0, 1, -2), (1, 2, -2), (2, 3, -1)]),
        Family::G => chain_gram(2, &[2, 6], &[(0, 1, -3)]),
    }
}

impl RootSystem {
    pub fn new(ty: SimpleType) -> Self {
        let gram = gram_for(ty);
        let n = ty.rank;
        let cartan: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|j| 2 * gram[i][j] / gram[i][i]).collect())
            .collect();

        // Closure of the simple roots under simple reflections, positives only.
        let mut positives: Vec<Vec<i64>> = Vec::new();
        let mut seen: HashMap<Vec<i64>, ()> = HashMap::new();
        let mut frontier: Vec<Vec<i64>> = (0..n)
            .map(|i| {
                let mut v = vec![0; n];
                v[i] = 1;
                v
            })
            .collect();
        while let Some(r) = frontier.pop() {
            if seen.insert(r.clone(), ()).is_some() {
                continue;
            }
            for i in 0..n {
                let pairing: i64 = (0..n).map(|j| r[j] * cartan[i][j]).sum();
                let mut s = r.clone();
                s[i] -= pairing;
                if s.iter().all(|&c| c >= 0) && s.iter().any(|&c| c > 0) && !seen.contains_key(&s) {
                    frontier.push(s);
                }
            }
            positives.push(r);
        }
        positives.sort_by(|a, b| {
            let (ha, hb): (i64, i64) = (a.iter().sum(), b.iter().sum());
            ha.cmp(&hb).then_with(|| b.cmp(a))
        });
        let np = positives.len();
        let mut roots = positives.clone();
        roots.extend(positives.iter().map(|r| r.iter().map(|c| -c).collect::<Vec<_>>()));
        let index: HashMap<Vec<i64>, RootIndex> =
            roots.iter().cloned().enumerate().map(|(i, r)| (r, i)).collect();
        Self {
            ty,
            gram,
            cartan,
            roots,
            index,
            highest: np - 1,
        }
    }

    /// Parses a label such as `e7`, `G2`, `d4`.
    pub fn from_label(label: &str) -> Result<Self, RootError> {
        Ok(Self::new(label.parse()?))
    }

    pub fn cartan_type(&self) -> SimpleType {
        self.ty
    }

    pub fn rank(&self) -> usize {
        self.ty.rank
    }

    /// Dimension of the corresponding simple Lie algebra.
    pub fn algebra_dim(&self) -> usize {
        self.rank() + self.roots.len()
    }

    pub fn num_roots(&self) -> usize {
        self.roots.len()
    }

    pub fn num_positive(&self) -> usize {
        self.roots.len() / 2
    }

    pub fn cartan_matrix(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn gram_matrix(&self) -> &[Vec<i64>] {
        &self.gram
    }

    pub fn root(&self, i: RootIndex) -> &[i64] {
        &self.roots[i]
    }

    pub fn roots(&self) -> &[Vec<i64>] {
        &self.roots
    }

    pub fn index_of(&self, coords: &[i64]) -> Option<RootIndex> {
        self.index.get(coords).copied()
    }

    pub fn is_positive(&self, i: RootIndex) -> bool {
        i < self.num_positive()
    }

    pub fn neg(&self, i: RootIndex) -> RootIndex {
        let np = self.num_positive();
        if i < np {
            i + np
        } else {
            i - np
        }
    }

    /// Index of simple root `alpha_k` (0-based node).
    pub fn simple(&self, k: usize) -> RootIndex {
        k
    }

    pub fn height(&self, i: RootIndex) -> i64 {
        self.roots[i].iter().sum()
    }

    pub fn highest_root(&self) -> RootIndex {
        self.highest
    }

    pub fn inner(&self, a: &[i64], b: &[i64]) -> i64 {
        let n = self.rank();
        let mut s = 0;
        for i in 0..n {
            if a[i] == 0 {
                continue;
            }
            for j in 0..n {
                s += a[i] * self.gram[i][j] * b[j];
            }
        }
        s
    }

    pub fn root_inner(&self, i: RootIndex, j: RootIndex) -> i64 {
        self.inner(&self.roots[i], &self.roots[j])
    }

    /// `<beta, alpha^vee> = 2 (beta, alpha) / (alpha, alpha)`
    pub fn pairing(&self, beta: RootIndex, alpha: RootIndex) -> i64 {
        2 * self.root_inner(beta, alpha) / self.root_inner(alpha, alpha)
    }

    /// Value of root `beta` on the simple coroot `h_i`.
    pub fn on_coroot(&self, beta: RootIndex, i: usize) -> i64 {
        let b = &self.roots[beta];
        (0..self.rank()).map(|j| b[j] * self.cartan[i][j]).sum()
    }

    /// Coefficients of the coroot `alpha^vee` over the simple coroots.
    pub fn coroot_coeffs(&self, alpha: RootIndex) -> Vec<i64> {
        let a = &self.roots[alpha];
        let len = self.root_inner(alpha, alpha);
        (0..self.rank())
            .map(|i| a[i] * self.gram[i][i] / len)
            .collect()
    }

    /// Index of `alpha + beta` if it is a root.
    pub fn sum(&self, a: RootIndex, b: RootIndex) -> Option<RootIndex> {
        let s: Vec<i64> = self.roots[a].iter().zip(&self.roots[b]).map(|(x, y)| x + y).collect();
        self.index_of(&s)
    }

    pub fn difference(&self, a: RootIndex, b: RootIndex) -> Option<RootIndex> {
        let s: Vec<i64> = self.roots[a].iter().zip(&self.roots[b]).map(|(x, y)| x - y).collect();
        self.index_of(&s)
    }

    /// Largest `p` with `beta - p alpha` a root (the alpha-string through beta
    /// extends `p` steps down).
    pub fn string_down(&self, alpha: RootIndex, beta: RootIndex) -> i64 {
        let mut p = 0;
        let mut cur = beta;
        while let Some(d) = self.difference(cur, alpha) {
            p += 1;
            cur = d;
        }
        p
    }

    /// Image of a root under simple reflection `s_i`.
    pub fn reflect_simple(&self, i: usize, beta: RootIndex) -> RootIndex {
        let p = self.on_coroot(beta, i);
        let mut v = self.roots[beta].clone();
        v[i] -= p;
        self.index[&v]
    }

    /// Applies an integer lattice map (columns = images of simple roots).
    pub fn apply_lattice(&self, m: &[Vec<i64>], beta: &[i64]) -> Vec<i64> {
        let n = self.rank();
        (0..n)
            .map(|i| (0..n).map(|j| m[i][j] * beta[j]).sum())
            .collect()
    }

    /// Marks: coefficients of the highest root over the simple roots.
    pub fn marks(&self) -> Vec<i64> {
        self.roots[self.highest].clone()
    }

    pub fn extended_diagram(&self) -> ExtendedDiagram {
        ExtendedDiagram::new(self)
    }

    /// Weyl element for a word of simple reflections.
    pub fn weyl_word(&self, word: &[usize]) -> WeylElement {
        WeylElement::from_word(self, word)
    }

    /// Longest element of the parabolic subgroup on the given nodes (all
    /// nodes when `nodes` is `None`).
    pub fn longest_element(&self, nodes: Option<&[usize]>) -> WeylElement {
        WeylElement::longest(self, nodes)
    }

    /// Factor a root-lattice automorphism as `w * gamma` with `w` in the Weyl
    /// group and `gamma` a diagram symmetry (returned as a node permutation).
    pub fn decompose_lattice_auto(
        &self,
        m: &[Vec<i64>],
    ) -> Result<(WeylElement, Vec<usize>), RootError> {
        weyl::decompose(self, m)
    }

    pub fn subsystem_type(&self, roots: &[RootIndex]) -> Result<SubsystemLabel, RootError> {
        subsystem::subsystem_type(self, roots)
    }

    pub fn orthogonal_subsystem(&self, roots: &[RootIndex]) -> Result<SubsystemLabel, RootError> {
        let orth = orthogonal_roots(self, roots);
        subsystem::subsystem_type(self, &orth)
    }

    /// Nontrivial diagram symmetries as node permutations.
    pub fn diagram_symmetries(&self) -> Vec<Vec<usize>> {
        let n = self.rank();
        let mut out = Vec::new();
        let mut perm: Vec<usize> = (0..n).collect();
        permutations(&mut perm, 0, &mut |p| {
            let id = p.iter().enumerate().all(|(i, &x)| i == x);
            if !id && (0..n).all(|i| (0..n).all(|j| self.cartan[p[i]][p[j]] == self.cartan[i][j])) {
                out.push(p.to_vec());
            }
        });
        out.sort();
        out
    }
}

fn permutations(p: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == p.len() {
        f(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permutations(p, k + 1, f);
        p.swap(k, i);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(s: &str) -> RootSystem {
        RootSystem::from_label(s).unwrap()
    }

    #[test]
    fn a1_roots() {
        let r = rs("a1");
        assert_eq!(r.roots(), &[vec![1], vec![-1]]);
    }

    #[test]
    fn root_counts_match_dimensions() {
        for (t, dim) in [
            ("e6", 78),
            ("e7", 133),
            ("e8", 248),
            ("f4", 52),
            ("g2", 14),
            ("d4", 28),
            ("b3", 21),
            ("c3", 21),
            ("a5", 35),
        ] {
            let r = rs(t);
            assert_eq!(r.algebra_dim(), dim, "{t}");
            assert_eq!(r.num_roots() % 2, 0);
            assert_eq!(r.num_positive() * 2, dim - r.rank());
        }
        assert_eq!(rs("e7").num_roots(), 126);
    }

    #[test]
    fn g2_highest_root_height_five() {
        let r = rs("g2");
        assert_eq!(r.num_roots(), 12);
        assert_eq!(r.height(r.highest_root()), 5);
        assert_eq!(r.marks(), vec![3, 2]);
    }

    #[test]
    fn reflections_permute_roots() {
        for t in ["e6", "f4", "g2", "b4", "c4"] {
            let r = rs(t);
            for i in 0..r.rank() {
                let mut image: Vec<_> = (0..r.num_roots()).map(|b| r.reflect_simple(i, b)).collect();
                assert_eq!(r.reflect_simple(i, i), r.neg(i));
                image.sort();
                image.dedup();
                assert_eq!(image.len(), r.num_roots());
            }
        }
    }

    #[test]
    fn highest_root_unique_max_height() {
        for t in ["e6", "e7", "e8", "f4", "d4"] {
            let r = rs(t);
            let h = r.height(r.highest_root());
            assert_eq!((0..r.num_roots()).filter(|&i| r.height(i) == h).count(), 1);
        }
    }

    #[test]
    fn e6_uses_line_numbering() {
        let r = rs("e6");
        assert_eq!(r.marks(), vec![1, 2, 3, 2, 1, 2]);
        assert_eq!(r.diagram_symmetries(), vec![vec![4, 3, 2, 1, 0, 5]]);
    }

    #[test]
    fn d4_has_s3_symmetry() {
        assert_eq!(rs("d4").diagram_symmetries().len(), 5);
    }
}

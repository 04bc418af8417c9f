use super::{RootError, RootIndex, RootSystem};

type IMat = Vec<Vec<i64>>;

fn identity(n: usize) -> IMat {
    (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect()
}

fn matmul(a: &IMat, b: &IMat) -> IMat {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum())
                .collect()
        })
        .collect()
}

fn reflection_matrix(rs: &RootSystem, i: usize) -> IMat {
    let mut m = identity(rs.rank());
    for j in 0..rs.rank() {
        m[i][j] -= rs.cartan_matrix()[i][j];
    }
    m
}

/// Permutation matrix of a diagram symmetry: `alpha_j -> alpha_{gamma[j]}`.
pub(super) fn diagram_matrix(gamma: &[usize]) -> IMat {
    let n = gamma.len();
    let mut m = vec![vec![0; n]; n];
    for (j, &g) in gamma.iter().enumerate() {
        m[g][j] = 1;
    }
    m
}

/// A Weyl group element: lattice matrix (column `j` is the image of
/// `alpha_j`), the word of simple reflections it was built from, and the
/// induced permutation of the roots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylElement {
    matrix: IMat,
    word: Vec<usize>,
    perm: Vec<RootIndex>,
}

impl WeylElement {
    pub fn identity(rs: &RootSystem) -> Self {
        Self::from_word(rs, &[])
    }

    /// `s_{w[0]} s_{w[1]} ... s_{w[k-1]}`
    pub fn from_word(rs: &RootSystem, word: &[usize]) -> Self {
        let mut m = identity(rs.rank());
        for &i in word {
            m = matmul(&m, &reflection_matrix(rs, i));
        }
        Self::from_parts(rs, m, word.to_vec())
    }

    fn from_parts(rs: &RootSystem, matrix: IMat, word: Vec<usize>) -> Self {
        let perm = (0..rs.num_roots())
            .map(|b| {
                let img = rs.apply_lattice(&matrix, rs.root(b));
                rs.index_of(&img).expect("Weyl image of a root is a root")
            })
            .collect();
        Self { matrix, word, perm }
    }

    pub(super) fn longest(rs: &RootSystem, nodes: Option<&[usize]>) -> Self {
        let all: Vec<usize> = (0..rs.rank()).collect();
        let nodes = nodes.unwrap_or(&all);
        let mut w = Self::identity(rs);
        loop {
            match nodes.iter().find(|&&i| rs.is_positive(w.apply(i))) {
                Some(&i) => w = w.compose(rs, &Self::from_word(rs, &[i])),
                None => return w,
            }
        }
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.matrix
    }

    pub fn word(&self) -> &[usize] {
        &self.word
    }

    pub fn length(&self) -> usize {
        self.word.len()
    }

    pub fn permutation(&self) -> &[RootIndex] {
        &self.perm
    }

    pub fn apply(&self, root: RootIndex) -> RootIndex {
        self.perm[root]
    }

    /// `self * other` (apply `other` first).
    pub fn compose(&self, rs: &RootSystem, other: &WeylElement) -> WeylElement {
        let mut word = self.word.clone();
        word.extend_from_slice(&other.word);
        Self::from_parts(rs, matmul(&self.matrix, &other.matrix), word)
    }

    pub fn inverse(&self, rs: &RootSystem) -> WeylElement {
        let word: Vec<usize> = self.word.iter().rev().copied().collect();
        Self::from_word(rs, &word)
    }

    /// The same element written as a reduced word.
    pub fn reduced(&self, rs: &RootSystem) -> WeylElement {
        decompose(rs, &self.matrix).expect("a Weyl element is a lattice automorphism").0
    }

    pub fn preserves_pairing(&self, rs: &RootSystem) -> bool {
        let n = rs.rank();
        (0..n).all(|i| {
            (0..n).all(|j| {
                let a: Vec<i64> = (0..n).map(|r| self.matrix[r][i]).collect();
                let b: Vec<i64> = (0..n).map(|r| self.matrix[r][j]).collect();
                rs.inner(&a, &b) == rs.gram_matrix()[i][j]
            })
        })
    }
}

pub(super) fn decompose(rs: &RootSystem, m: &[Vec<i64>]) -> Result<(WeylElement, Vec<usize>), RootError> {
    let n = rs.rank();
    if m.len() != n || m.iter().any(|r| r.len() != n) {
        return Err(RootError::NotAutomorphism("wrong matrix shape".into()));
    }
    let m: IMat = m.to_vec();
    for b in 0..rs.num_roots() {
        if rs.index_of(&rs.apply_lattice(&m, rs.root(b))).is_none() {
            return Err(RootError::NotAutomorphism(format!("root {b} is not mapped to a root")));
        }
    }
    let col = |mat: &IMat, j: usize| -> Vec<i64> { (0..n).map(|r| mat[r][j]).collect() };
    for i in 0..n {
        for j in 0..n {
            if rs.inner(&col(&m, i), &col(&m, j)) != rs.gram_matrix()[i][j] {
                return Err(RootError::NotAutomorphism("pairing not preserved".into()));
            }
        }
    }

    // cur = m s_{i1} ... s_{ik}; each step shortens cur until it fixes the positive system.
    let mut cur = m.clone();
    let mut steps = Vec::new();
    loop {
        let neg = (0..n).find(|&i| col(&cur, i).iter().any(|&c| c < 0));
        match neg {
            Some(i) => {
                cur = matmul(&cur, &reflection_matrix(rs, i));
                steps.push(i);
            }
            None => break,
        }
    }
    let mut gamma = vec![0; n];
    for j in 0..n {
        let c = col(&cur, j);
        let k = (0..n)
            .find(|&k| c[k] == 1 && c.iter().sum::<i64>() == 1)
            .ok_or_else(|| RootError::NotAutomorphism("residual map does not permute simple roots".into()))?;
        gamma[j] = k;
    }
    // m = gamma s_{ik} ... s_{i1} = (s_{g(ik)} ... s_{g(i1)}) gamma
    let word: Vec<usize> = steps.iter().rev().map(|&i| gamma[i]).collect();
    let w = WeylElement::from_word(rs, &word);
    debug_assert_eq!(matmul(&w.matrix, &diagram_matrix(&gamma)), m);
    Ok((w, gamma))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rs(s: &str) -> RootSystem {
        RootSystem::from_label(s).unwrap()
    }

    #[test]
    fn reduced_words() {
        let r = rs("e7");
        let w = r.longest_element(None).compose(&r, &r.longest_element(Some(&[0, 1, 2, 3, 4, 5])));
        assert_eq!(w.length(), 99);
        let red = w.reduced(&r);
        assert_eq!(red.length(), 27);
        assert_eq!(red.matrix(), w.matrix());
    }

    #[test]
    fn longest_of_a1_is_the_reflection() {
        let r = rs("a1");
        assert_eq!(r.longest_element(None).word(), &[0]);
    }

    #[test]
    fn longest_of_e7_is_minus_one() {
        let r = rs("e7");
        let w0 = r.longest_element(None);
        assert_eq!(w0.length(), 63);
        for i in 0..7 {
            assert_eq!(w0.apply(i), r.neg(i));
        }
    }

    #[test]
    fn longest_maps_positive_to_negative() {
        for t in ["e6", "f4", "g2", "d4"] {
            let r = rs(t);
            let w0 = r.longest_element(None);
            assert_eq!(w0.length(), r.num_positive());
            assert!((0..r.num_positive()).all(|b| !r.is_positive(w0.apply(b))));
        }
    }

    #[test]
    fn e7_w0_times_e6_w0_flips_e6() {
        let r = rs("e7");
        let e6: Vec<usize> = (0..6).collect();
        let w = r.longest_element(None).compose(&r, &r.longest_element(Some(&e6)));
        // Bourbaki E6 inside E7: 1-3-4-5-6 line with 2 on 4; the flip swaps 1<->6 and 3<->5.
        let flip = [5, 1, 4, 3, 2, 0];
        for i in 0..6 {
            assert_eq!(w.apply(i), flip[i]);
        }
    }

    #[test]
    fn minus_one_on_e6_is_outer() {
        let r = rs("e6");
        let m: Vec<Vec<i64>> = (0..6).map(|i| (0..6).map(|j| -i64::from(i == j)).collect()).collect();
        let (w, gamma) = r.decompose_lattice_auto(&m).unwrap();
        assert_eq!(gamma, vec![4, 3, 2, 1, 0, 5]);
        assert_eq!(w.matrix(), r.longest_element(None).matrix());
    }

    #[test]
    fn non_automorphism_rejected() {
        let r = rs("a2");
        let m = vec![vec![2, 0], vec![0, 1]];
        assert!(r.decompose_lattice_auto(&m).is_err());
    }

    proptest! {
        #[test]
        fn decomposition_recomposes(word in proptest::collection::vec(0usize..6, 0..20), flip in any::<bool>()) {
            let r = rs("e6");
            let w = r.weyl_word(&word);
            let gamma_in: Vec<usize> = if flip { vec![4, 3, 2, 1, 0, 5] } else { (0..6).collect() };
            let m = matmul(&w.matrix, &diagram_matrix(&gamma_in));
            let (w2, gamma) = r.decompose_lattice_auto(&m).unwrap();
            prop_assert_eq!(&gamma, &gamma_in);
            prop_assert_eq!(matmul(&w2.matrix, &diagram_matrix(&gamma)), m);
            prop_assert!(w.preserves_pairing(&r));
        }
    }
}

use std::collections::BTreeSet;

use proptest::prelude::*;

use super::*;
use crate::chevalley::algebra;
use crate::rootsys::{Family, SimpleType};

fn alg(f: Family, r: usize) -> Arc<LieAlgebra> {
    algebra(SimpleType::new(f, r))
}

/// Direct check of `a([x, y]) = [a(x), a(y)]` on all basis pairs.
fn preserves_brackets(a: &Automorphism) -> bool {
    let g = a.algebra();
    (0..g.dim()).all(|x| {
        (0..g.dim()).all(|y| {
            let (ex, ey) = (SparseVec::unit(x), SparseVec::unit(y));
            a.apply(&g.bracket(&ex, &ey)) == g.bracket(&a.apply(&ex), &a.apply(&ey))
        })
    })
}

#[test]
fn trivial_character_rejected() {
    let g = alg(Family::E, 6);
    assert!(matches!(
        from_character(&g, &Character::trivial(6)),
        Err(InvolutionError::TrivialCharacter)
    ));
    assert!(matches!(
        from_character(&g, &Character::trivial(5)),
        Err(InvolutionError::CharacterRank { .. })
    ));
}

#[test]
fn e7_character_fixed_dims() {
    let g = alg(Family::E, 7);
    let dims: BTreeSet<usize> = Character::nontrivial(7)
        .map(|chi| from_character(&g, &chi).unwrap().fixed_dim())
        .collect();
    assert_eq!(dims, [63, 69, 79].into_iter().collect());
}

#[test]
fn e6_character_of_type_d5() {
    let g = alg(Family::E, 6);
    // -1 on node 1 leaves D5 on nodes 2..6
    let a = from_character(&g, &Character::minus_on(6, &[0])).unwrap();
    let fixed = a.fixed_subalgebra();
    assert_eq!(fixed.dim(), 46);
    let c = involution_class(&a).unwrap();
    assert_eq!((c.class.as_str(), c.outer), ("EIII", false));
    assert_eq!(c.label.to_string(), "D5+T1");
}

#[test]
fn a1_chevalley_involution() {
    let g = alg(Family::A, 1);
    let w = chevalley_involution(&g);
    let fixed = w.eigenspace(1);
    assert_eq!(fixed.dim(), 1);
    let e_minus_f = SparseVec::from_pairs(vec![(g.e(0), q(1)), (g.e(1), q(-1))]);
    assert!(fixed.contains(&e_minus_f));
    assert!(w.is_involution());
}

#[test]
fn chevalley_involution_classes() {
    let e7 = chevalley_involution(&alg(Family::E, 7));
    assert_eq!(e7.fixed_dim(), 63);
    let c = involution_class(&e7).unwrap();
    assert_eq!((c.class.as_str(), c.outer), ("EV", false));

    let e6 = chevalley_involution(&alg(Family::E, 6));
    assert_eq!(e6.fixed_dim(), 36);
    let (_, gamma) = e6.lattice_decomposition().unwrap();
    assert_eq!(gamma, vec![4, 3, 2, 1, 0, 5]);
    assert_eq!(involution_class(&e6).unwrap().class, "EI");
    assert!(involution_class(&e6).unwrap().outer);

    for (f, r, class) in [(Family::E, 8, "EVIII"), (Family::F, 4, "FI"), (Family::G, 2, "G")] {
        let w = chevalley_involution(&alg(f, r));
        let c = involution_class(&w).unwrap();
        assert_eq!((c.class.as_str(), c.outer), (class, false), "{f:?}{r}");
        assert_eq!(w.fixed_dim(), w.algebra().root_system().num_positive());
    }
}

#[test]
fn e6_flip_lift() {
    let g = alg(Family::E, 6);
    let flip = [4, 3, 2, 1, 0, 5];
    let a = diagram_involution(&g, &flip, &Character::trivial(6)).unwrap();
    assert_eq!(a.fixed_dim(), 52);
    let c = involution_class(&a).unwrap();
    assert_eq!((c.class.as_str(), c.outer), ("EIV", true));
    // a twist that is not flip-invariant squares to a nontrivial diagonal map
    let bad = Character::minus_on(6, &[0]);
    assert!(!bad.is_invariant_under(&flip));
    assert!(matches!(
        diagram_involution(&g, &flip, &bad),
        Err(InvolutionError::NotInvolution(Some(4)))
    ));
    assert!(diagram_involution_search(&g, &flip).unwrap().is_involution());
    assert!(matches!(
        diagram_lift(&g, &[1, 0, 2, 3, 4, 5], &Character::trivial(6)),
        Err(InvolutionError::NotDiagramSymmetry(_))
    ));
}

#[test]
fn d4_transposition_lift() {
    let g = alg(Family::D, 4);
    let syms = g.root_system().diagram_symmetries();
    assert_eq!(syms.len(), 5);
    for pi in syms {
        let a = diagram_lift(&g, &pi, &Character::trivial(4)).unwrap();
        if a.is_involution() {
            assert_eq!(a.fixed_dim(), 21);
            let c = involution_class(&a).unwrap();
            assert_eq!((c.class.as_str(), c.outer), ("Spin7", true));
        } else {
            assert_eq!(a.order(10), Some(3));
            assert_eq!(a.fixed_dim(), 14);
        }
    }
}

#[test]
fn weyl_lifts() {
    let g = alg(Family::A, 1);
    assert!(weyl_lift(&g, &[], &Character::trivial(1)).unwrap().is_identity());
    let n = weyl_lift(&g, &[0], &Character::trivial(1)).unwrap();
    let (e, f, h) = (SparseVec::unit(g.e(0)), SparseVec::unit(g.e(1)), SparseVec::unit(g.h(0)));
    assert_eq!(n.apply(&e), f.neg());
    assert_eq!(n.apply(&f), e.neg());
    assert_eq!(n.apply(&h), h.neg());

    let e7 = alg(Family::E, 7);
    let rs = e7.root_system();
    let w = rs.longest_element(None).compose(rs, &rs.longest_element(Some(&[0, 1, 2, 3, 4, 5])));
    let lift = weyl_lift(&e7, w.word(), &Character::trivial(7)).unwrap();
    assert_eq!(lift.lattice_matrix(), w.matrix());
}

#[test]
fn tits_lift_relations() {
    // n_i^2 acts as the character (-1)^{<beta, alpha_i^vee>}
    for (f, r) in [(Family::G, 2), (Family::B, 3), (Family::C, 3), (Family::F, 4)] {
        let g = alg(f, r);
        let rs = g.root_system();
        for i in 0..r {
            let n = simple_reflection_lift(&g, i).unwrap();
            let sq = n.compose(&n);
            for b in 0..rs.num_roots() {
                assert_eq!(sq.root_map()[b], b);
                let expect = if rs.on_coroot(b, i) % 2 == 0 { 1 } else { -1 };
                assert_eq!(*sq.coefficient(b), q(expect));
            }
        }
    }
}

#[test]
fn generic_bracket_check_agrees() {
    let g = alg(Family::G, 2);
    let w = chevalley_involution(&g);
    let n = weyl_lift(&g, &[0, 1, 0], &Character::from_bits(2, 1)).unwrap();
    for a in [&w, &n, &w.compose(&n), &n.inverse()] {
        assert!(preserves_brackets(a));
        assert!(a.check().is_ok());
    }
    // flipping one coefficient breaks it
    let mut broken = n.clone();
    broken.coeff[3] = -broken.coeff[3].clone();
    assert!(!preserves_brackets(&broken));
    assert!(broken.check().is_err());
}

#[test]
fn matrix_squares_to_identity() {
    let g = alg(Family::A, 2);
    let w = chevalley_involution(&g);
    let m = w.matrix();
    assert_eq!(m.mul(&m).unwrap(), QMatrix::identity(g.dim()));
}

#[test]
fn fixed_algebras_of_large_characters() {
    let e7 = alg(Family::E, 7);
    // -1 on node 7 leaves E6 + T1
    let a = from_character(&e7, &Character::minus_on(7, &[6])).unwrap();
    assert_eq!(a.fixed_dim(), 79);
    assert_eq!(involution_class(&a).unwrap().class, "EVII");
    let e8 = alg(Family::E, 8);
    let b = from_character(&e8, &Character::minus_on(8, &[0])).unwrap();
    assert_eq!(b.fixed_dim(), 120);
    assert_eq!(involution_class(&b).unwrap().class, "EVIII");
    assert!(b.fixed_subalgebra().is_closed());
}

#[test]
fn e6_reachable_classes() {
    let g = alg(Family::E, 6);
    let mut seen = BTreeSet::new();
    for chi in Character::nontrivial(6) {
        let c = involution_class(&from_character(&g, &chi).unwrap()).unwrap();
        seen.insert((c.fixed_dim, c.outer));
    }
    let flip = [4, 3, 2, 1, 0, 5];
    for chi in Character::nontrivial(6).chain([Character::trivial(6)]) {
        if let Ok(a) = diagram_involution(&g, &flip, &chi) {
            let c = involution_class(&a).unwrap();
            seen.insert((c.fixed_dim, c.outer));
        }
    }
    let w = chevalley_involution(&g);
    seen.insert((w.fixed_dim(), true));
    assert_eq!(seen, [(36, true), (38, false), (46, false), (52, true)].into_iter().collect());
}

#[test]
fn identity_fixes_everything() {
    let g = alg(Family::G, 2);
    let id = Automorphism::identity(g.clone());
    assert_eq!(id.fixed_dim(), 14);
    assert!(!id.is_involution());
    assert!(id.commutes(&id));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn characters_commute_with_chevalley_involution(bits in 1u64..64) {
        let g = alg(Family::E, 6);
        let w = chevalley_involution(&g);
        let a = from_character(&g, &Character::from_bits(6, bits)).unwrap();
        prop_assert!(a.commutes(&w));
        prop_assert!(a.is_involution());
        let b = from_character(&g, &Character::from_bits(6, 63 - bits + 1)).unwrap();
        prop_assert!(a.commutes(&b));
    }

    #[test]
    fn class_is_conjugation_invariant(bits in 1u64..16, word in proptest::collection::vec(0usize..4, 0..8)) {
        let g = alg(Family::F, 4);
        let a = from_character(&g, &Character::from_bits(4, bits)).unwrap();
        let n = weyl_lift(&g, &word, &Character::trivial(4)).unwrap();
        let b = n.conjugate(&a);
        prop_assert!(b.is_involution());
        prop_assert_eq!(involution_class(&a).unwrap(), involution_class(&b).unwrap());
    }
}

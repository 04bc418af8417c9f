use super::*;
use crate::catalog::parse_label;
use crate::chevalley::algebra;
use crate::involutions::{chevalley_involution, from_character, Character};
use crate::rootsys::{Family, SimpleType};

fn alg(f: Family, r: usize) -> Arc<LieAlgebra> {
    algebra(SimpleType::new(f, r))
}

fn chi(g: &Arc<LieAlgebra>, nodes: &[usize]) -> Automorphism {
    from_character(g, &Character::minus_on(g.rank(), nodes)).unwrap()
}

fn l(s: &str) -> TypeLabel {
    parse_label(s).unwrap()
}

#[test]
fn e6_two_characters() {
    let g = alg(Family::E, 6);
    // node 6 (mark 2) gives E II, node 1 (mark 1) gives E III
    let gr = split(&chi(&g, &[5]), &chi(&g, &[0])).unwrap();
    assert_eq!(gr.dims(), [26, 12, 20, 20]);
    assert_eq!(gr.type_name(), "E II-III-III");
    assert_eq!(gr.d(), -6);
    assert!(verify_grading(&gr).ok());
    let id = identify_component(&gr).unwrap();
    assert_eq!(id, Identification::Unique { label: l("su5+R+R"), path: IdPath::FullRank });
}

#[test]
fn precondition_errors() {
    let g = alg(Family::G, 2);
    let a = chi(&g, &[0]);
    assert!(matches!(split(&a, &a), Err(GradingError::Equal)));
    let id = crate::involutions::Automorphism::identity(g.clone());
    assert!(matches!(split(&id, &a), Err(GradingError::NotInvolution("sigma"))));
    let n = crate::involutions::weyl_lift(&g, &[0], &Character::trivial(2)).unwrap();
    // n_1 has order 4
    assert!(matches!(split(&a, &n), Err(GradingError::NotInvolution("tau"))));
    let e6 = alg(Family::E, 6);
    let rho = crate::involutions::diagram_involution(&e6, &[4, 3, 2, 1, 0, 5], &Character::trivial(6)).unwrap();
    assert!(matches!(split(&chi(&e6, &[0]), &rho), Err(GradingError::NotCommuting)));
}

#[test]
fn e7_chevalley_and_e_vii() {
    let g = alg(Family::E, 7);
    let gr = split(&chevalley_involution(&g), &chi(&g, &[6])).unwrap();
    assert_eq!(gr.dims()[0], 36);
    assert_eq!(gr.type_name(), "E V-V-VII");
    assert!(verify_grading(&gr).ok());
    let id = identify_component(&gr).unwrap();
    assert_eq!(id, Identification::Unique { label: l("sp4"), path: IdPath::Fingerprint });
}

#[test]
fn g2_grading() {
    let g = alg(Family::G, 2);
    let gr = split(&chevalley_involution(&g), &chi(&g, &[0])).unwrap();
    assert_eq!(gr.dims(), [2, 4, 4, 4]);
    assert_eq!(gr.type_name(), "G");
    let report = verify_grading(&gr);
    assert!(report.ok(), "{:?}", report.violations);
    assert_eq!(identify_component(&gr).unwrap().label(), Some(&l("R+R")));
}

#[test]
fn corrupted_grading_is_caught() {
    let g = alg(Family::G, 2);
    let gr = split(&chevalley_involution(&g), &chi(&g, &[0])).unwrap();
    let bad = gr.with_moved_vector(Piece::Sigma, Piece::One);
    let report = verify_grading(&bad);
    assert!(!report.ok());
    assert!(report.violations.iter().any(|v| v.witness.is_some()));
}

#[test]
fn every_g2_and_f4_diagonal_pair() {
    for (f, r) in [(Family::G, 2), (Family::F, 4)] {
        let g = alg(f, r);
        let chars: Vec<Character> = Character::nontrivial(r).collect();
        for (i, a) in chars.iter().enumerate() {
            for b in &chars[i + 1..] {
                let gr = split(&from_character(&g, a).unwrap(), &from_character(&g, b).unwrap()).unwrap();
                assert!(verify_grading(&gr).ok());
                let full = full_rank_label(&gr).unwrap().unwrap();
                match identify_by_fingerprint(&gr).unwrap() {
                    Identification::Unique { label, .. } => assert_eq!(label, full),
                    Identification::Ambiguous { candidates } => assert!(candidates.contains(&full)),
                }
                // the component is determined by the triple, not the order
                let swapped = split(gr.tau(), gr.sigma()).unwrap();
                let other = split(gr.sigma(), gr.sigma_tau()).unwrap();
                assert_eq!(swapped.triple(), gr.triple());
                assert_eq!(other.triple(), gr.triple());
                assert_eq!(full_rank_label(&other).unwrap().unwrap(), full);
            }
        }
    }
}

#[test]
fn e7_u6_plus_r_fingerprint() {
    let g = alg(Family::E, 7);
    let rs = g.root_system();
    let target = l("u6+R");
    let chars: Vec<Character> = Character::nontrivial(7).collect();
    let (a, b) = chars
        .iter()
        .flat_map(|a| chars.iter().map(move |b| (a, b)))
        .find(|(a, b)| {
            a < b && {
                let roots: Vec<usize> = (0..rs.num_roots())
                    .filter(|&r| a.value(rs.root(r)) == 1 && b.value(rs.root(r)) == 1)
                    .collect();
                rs.subsystem_type(&roots).unwrap().label == target
            }
        })
        .unwrap();
    let gr = split(&from_character(&g, a).unwrap(), &from_character(&g, b).unwrap()).unwrap();
    let fp = fingerprint(&gr, &gr.k());
    assert_eq!((fp.dim, fp.rank, fp.center_dim, fp.derived_dim), (37, 7, 2, 35));
    assert!(fp.matches(&target));
    assert_eq!(gr.type_name(), "E VI-VI-VI");
}

#[test]
fn e6_chevalley_with_e_ii() {
    let g = alg(Family::E, 6);
    let gr = split(&chevalley_involution(&g), &chi(&g, &[5])).unwrap();
    assert_eq!(gr.type_name(), "E I-I-II");
    let fp = fingerprint(&gr, &gr.k());
    assert_eq!((fp.dim, fp.rank), (16, 4));
    assert_eq!(identify_component(&gr).unwrap().label(), Some(&l("so6+R")));
}

#[test]
fn e6_full_rank_disambiguation() {
    let g = alg(Family::E, 6);
    let rs = g.root_system();
    let chars: Vec<Character> = Character::nontrivial(6).collect();
    let want = l("su3+su3+R+R");
    let gr = chars
        .iter()
        .flat_map(|a| chars.iter().map(move |b| (a, b)))
        .filter(|(a, b)| a < b)
        .find_map(|(a, b)| {
            let roots: Vec<usize> = (0..rs.num_roots())
                .filter(|&r| a.value(rs.root(r)) == 1 && b.value(rs.root(r)) == 1)
                .collect();
            if rs.subsystem_type(&roots).unwrap().label != want {
                return None;
            }
            let gr = split(&from_character(&g, a).unwrap(), &from_character(&g, b).unwrap()).unwrap();
            (gr.type_name() == "E II-II-II").then_some(gr)
        })
        .unwrap();
    let short = Catalog::builtin().triple_candidates("e6", &gr.triple()).unwrap();
    assert_eq!(short.len(), 2);
    assert!(short.contains(&l("so6+sp1")));
    assert_eq!(
        identify_by_fingerprint(&gr).unwrap(),
        Identification::Unique { label: want.clone(), path: IdPath::Fingerprint }
    );
    assert_eq!(identify_component(&gr).unwrap().label(), Some(&want));
}

#[test]
fn e8_d4_plus_d4() {
    let g = alg(Family::E, 8);
    let rs = g.root_system();
    let want = l("so8+so8");
    let chars: Vec<Character> = Character::nontrivial(8).collect();
    let (a, b) = chars
        .iter()
        .flat_map(|a| chars.iter().map(move |b| (a, b)))
        .find(|(a, b)| {
            a < b && {
                let roots: Vec<usize> = (0..rs.num_roots())
                    .filter(|&r| a.value(rs.root(r)) == 1 && b.value(rs.root(r)) == 1)
                    .collect();
                rs.subsystem_type(&roots).unwrap().label == want
            }
        })
        .unwrap();
    let gr = split(&from_character(&g, a).unwrap(), &from_character(&g, b).unwrap()).unwrap();
    assert_eq!(gr.type_name(), "E VIII-VIII-VIII");
    assert_eq!(identify_component(&gr).unwrap().label(), Some(&want));
    assert!(verify_grading(&gr).ok());
}

#[test]
fn whole_algebra_invariants() {
    let st = Subalgebra::whole(alg(Family::G, 2)).structure().unwrap();
    assert_eq!(st.center_dim(), 0);
    assert_eq!(st.derived_dim(), 14);
}

use proptest::prelude::*;

use super::*;
use crate::gf::{Field, Matrix};
use crate::groupcore::{Group, GroupElement, Perm};
use crate::modrep::{GModule, MeataxeOptions};
use crate::presentations::Presentation;

fn perm(n: usize, s: &str) -> Perm {
    Perm::parse_cycles(n, s).unwrap()
}

fn group(n: usize, gens: &[&str]) -> Group<Perm> {
    Group::new(gens.iter().map(|s| perm(n, s)).collect(), Perm::identity(n))
}

fn trivial_module(q: u64, dim: usize, gens: usize) -> GModule {
    GModule::trivial(&Field::of_order(q).unwrap(), dim, gens)
}

fn perm_module(q: u64, g: &Group<Perm>) -> GModule {
    GModule::permutation_module(&Field::of_order(q).unwrap(), g.generators()).unwrap()
}

fn c2() -> Group<Perm> {
    group(2, &["(0,1)"])
}

fn d8() -> Group<Perm> {
    group(4, &["(0,1,2,3)", "(0,2)"])
}

/// Q8 in its regular representation on 8 points.
fn q8() -> Group<Perm> {
    group(8, &["(0,1,2,3)(4,5,6,7)", "(0,4,2,6)(1,7,3,5)"])
}

fn opts() -> MeataxeOptions {
    MeataxeOptions::default()
}

#[test]
fn cyclic_of_order_two_has_one_class() {
    let cs = h2_sylow(&c2(), &trivial_module(2, 1, 1)).unwrap();
    assert_eq!(cs.dim_h2(), 1);
    assert_eq!(h2_full_bar(&cs).h2, 1);
}

#[test]
fn trivial_group_has_no_classes() {
    let g = Group::new(Vec::new(), Perm::identity(1));
    let cs = h2_sylow(&g, &trivial_module(2, 3, 0)).unwrap();
    assert_eq!(cs.dim_h2(), 0);
}

#[test]
fn coprime_coefficients_vanish() {
    let cs = h2_sylow(&c2(), &trivial_module(3, 2, 1)).unwrap();
    assert_eq!(cs.dim_h2(), 0);
    let c3 = group(3, &["(0,1,2)"]);
    let cs = h2_sylow(&c3, &trivial_module(3, 1, 1)).unwrap();
    assert_eq!(cs.dim_h2(), 1);
}

// Small cases with known answers: H²(C2², F2) = 3, H²(D8, F2) = 3,
// H²(Q8, F2) = 2, H²(C2³, F2) = 6; induced modules follow Shapiro's lemma.
#[test]
fn known_dimensions_agree_with_full_bar() {
    let c2sq = group(4, &["(0,1)", "(2,3)"]);
    let c2cube = group(6, &["(0,1)", "(2,3)", "(4,5)"]);
    let c3 = group(3, &["(0,1,2)"]);
    let cases: Vec<(Group<Perm>, GModule, usize)> = vec![
        (c2sq.clone(), trivial_module(2, 1, 2), 3),
        (d8(), trivial_module(2, 1, 2), 3),
        (q8(), trivial_module(2, 1, 2), 2),
        (c2cube.clone(), trivial_module(2, 1, 3), 6),
        (d8(), perm_module(2, &d8()), 1),
        (c3.clone(), perm_module(3, &c3), 0),
        (q8(), perm_module(2, &q8()), 0),
    ];
    for (g, m, expected) in cases {
        let cs = h2_sylow(&g, &m).unwrap();
        let bar = h2_full_bar(&cs);
        assert_eq!(cs.dim_h2(), expected, "order {}", cs.order());
        assert_eq!(bar.h2, expected);
        assert_eq!(bar.b2, cs.dim_b2());
        assert_eq!(cs.dim_b2(), (cs.order() - 1) * m.dim() - cs.dim_z1());
    }
}

#[test]
fn basis_cocycles_satisfy_the_identity() {
    let cs = h2_sylow(&d8(), &perm_module(2, &d8())).unwrap();
    for z in cs.z2_basis() {
        assert!(cs.is_cocycle(&z));
    }
    for z in cs.h2_representatives() {
        assert!(!cs.is_coboundary(z));
    }
    // crossed homomorphisms
    let n = cs.order();
    let d = cs.module_dim();
    let f = cs.field().clone();
    for c in cs.z1_basis() {
        for x in 0..n {
            for y in 0..n {
                let lhs = &c[cs.mul_index(x, y) * d..][..d];
                let rhs = crate::gf::vector::add(&f, &cs.action(y).vec_mul(&c[x * d..][..d]), &c[y * d..][..d]);
                assert_eq!(lhs, &rhs[..]);
            }
        }
    }
}

#[test]
fn cocycles_round_trip_through_presentations() {
    for (g, m) in [(d8(), trivial_module(2, 1, 2)), (c2(), trivial_module(2, 2, 1)), (q8(), trivial_module(2, 1, 2))] {
        let cs = h2_sylow(&g, &m).unwrap();
        let s_order = cs.order() as u64;
        let b2 = cs.dim_b2();
        let z2 = cs.z2_basis();
        for (i, alpha) in z2.iter().enumerate() {
            let spec = ExtensionSpec::from_cocycle(&cs, alpha).unwrap();
            let inst = spec.instantiate(1 << 12).unwrap();
            assert_eq!(inst.order, s_order * 2u64.pow(m.dim() as u32));
            assert_eq!(inst.kernel.order().unwrap(), 2u64.pow(m.dim() as u32));
            // the kernel carries the module action
            let ea = ElementaryAbelian::new(&inst.kernel).unwrap();
            for l in &inst.lifts {
                assert!(ea.action_matrix(l).unwrap().is_identity());
            }
            let cert = split_check(&inst.group, &inst.kernel, &spec.quotient, &inst.lifts).unwrap();
            let is_class = i < z2.len() - b2;
            assert_eq!(cert.splits, !is_class, "cocycle {i}");
        }
    }
}

#[test]
fn direct_product_splits() {
    // C2 × C3 on 5 points, K = C2
    let e = group(5, &["(0,1)", "(2,3,4)"]);
    let k = group(5, &["(0,1)"]);
    let pres = Presentation::parse("group c3\ngens a\nrel a^3\n").unwrap();
    let lift = perm(5, "(0,1)(2,3,4)");
    let cert = split_check(&e, &k, &pres, &[lift]).unwrap();
    assert!(cert.splits);
    assert_eq!(cert.complement_order, Some(3));
    assert_eq!(cert.meets_kernel_trivially, Some(true));
    let c = cert.complement.unwrap();
    assert_eq!(c[0], perm(5, "(2,3,4)"));
}

#[test]
fn cyclic_of_order_four_does_not_split() {
    let e = group(4, &["(0,1,2,3)"]);
    let k = group(4, &["(0,2)(1,3)"]);
    let pres = Presentation::parse("group c2\ngens a\nrel a^2\n").unwrap();
    let cert = split_check(&e, &k, &pres, &[perm(4, "(0,1,2,3)")]).unwrap();
    assert!(!cert.splits);
    assert!(cert.complement.is_none());
}

#[test]
fn wrong_kernel_is_rejected() {
    // the relator evaluates outside K
    let e = group(4, &["(0,1,2,3)"]);
    let k = group(4, &["(0,2)(1,3)"]);
    let pres = Presentation::parse("group c1\ngens a\nrel a\n").unwrap();
    assert!(split_check(&e, &k, &pres, &[perm(4, "(0,1,2,3)")]).is_err());
}

fn sl2_5() -> Group<Perm> {
    group(
        24,
        &[
            "(0,19,3,4)(1,14,2,9)(5,20,23,8)(6,15,22,13)(7,10,21,18)(11,16,17,12)",
            "(0,20,19,3,8,4)(1,16,14,2,12,9)(5,21,15,23,7,13)(6,17,10,22,11,18)",
        ],
    )
}

#[test]
fn sl2_5_over_its_centre_is_minimal() {
    let e = sl2_5();
    assert_eq!(e.order().unwrap(), 120);
    let z = e.center().unwrap();
    assert_eq!(z.order().unwrap(), 2);
    let cert = minimal_extension_check(&e, &z, None, &opts()).unwrap();
    assert_eq!(cert.method, "exhaustive");
    assert!(cert.minimal);
    assert!(cert.pairs_checked > 0);
    // the irreducible-kernel route agrees
    let pres = Presentation::parse("group a5\ngens a b\nrel a^2\nrel b^3\nrel (a b)^5\n").unwrap();
    let lifts = e.generators().to_vec();
    let by_split = minimal_extension_check(&e, &z, Some((&pres, &lifts)), &opts()).unwrap();
    assert_eq!(by_split.method, "nonsplit");
    assert!(by_split.minimal);
}

#[test]
fn split_extensions_are_not_minimal() {
    let s3 = group(3, &["(0,1)", "(0,1,2)"]);
    let k = group(3, &["(0,1,2)"]);
    let cert = minimal_extension_check(&s3, &k, None, &opts()).unwrap();
    assert!(!cert.minimal);
    assert_eq!(cert.witness_order, Some(2));
    let pres = Presentation::parse("group c2\ngens a\nrel a^2\n").unwrap();
    let lifts = vec![perm(3, "(0,1)")];
    let cert = minimal_extension_check(&s3, &k, Some((&pres, &lifts)), &opts()).unwrap();
    assert_eq!(cert.method, "nonsplit");
    assert!(!cert.minimal);
}

#[test]
fn p_group_is_its_own_stable_subspace() {
    let m = perm_module(2, &d8());
    let rep = h2(&d8(), &m).unwrap();
    assert_eq!(rep.dim_h2_sylow, 1);
    assert_eq!(rep.dim_h2_stable, 1);
    assert_eq!(rep.double_cosets, 1);
}

// H²(S3, F2) = 1, H²(A4, F2) = 1, H²(A5, F2) = 1 (Schur multiplier C2,
// perfect or with odd abelianisation), H²(S3, F3) = 0 (sign-twisted class
// of C3 not stable) while H²(C3, F3) = 1.
#[test]
fn fusion_cuts_down_sylow_cohomology() {
    let s3 = group(3, &["(0,1)", "(0,1,2)"]);
    let a4 = group(4, &["(0,1)(2,3)", "(0,1,2)"]);
    let a5 = group(5, &["(0,1)(2,3)", "(0,2,4)"]);
    let cases = [
        (s3.clone(), 2, 1, 1),
        (a4, 2, 3, 1),
        (a5, 2, 3, 1),
        (s3, 3, 1, 0),
    ];
    for (g, q, sylow, stable) in cases {
        let m = trivial_module(q, 1, g.generators().len());
        let rep = h2(&g, &m).unwrap();
        assert_eq!((rep.dim_h2_sylow, rep.dim_h2_stable), (sylow, stable), "order {} p {q}", rep.group_order);
    }
}

#[test]
fn double_cosets_of_a_sylow_subgroup() {
    // S3 = C2 ∪ C2·(0,1,2)·C2 over the Sylow 2-subgroup
    let s3 = group(3, &["(0,1)", "(0,1,2)"]);
    let s = s3.subgroup(vec![perm(3, "(0,1)")]);
    let reps = double_coset_reps(&s3, &s, 100).unwrap();
    assert_eq!(reps.len(), 2);
    assert!(reps[0].is_one());
    assert!(double_coset_reps(&s3, &s, 2).is_err());
}

#[test]
fn non_prime_fields_are_rejected() {
    let f4 = Field::of_order(4).unwrap();
    let m = GModule::new(&f4, 1, vec![Matrix::identity(&f4, 1)]).unwrap();
    assert!(h2_sylow(&c2(), &m).is_err());
    assert!(h2(&c2(), &m).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    /// Random 2-subgroups of S8 with random permutation or trivial modules:
    /// the tree method and the full bar complex give the same dimensions.
    #[test]
    fn tree_method_matches_full_bar(picks in proptest::collection::vec(0usize..6, 1..3), trivial in any::<bool>()) {
        let pool = [
            "(0,1)", "(0,1)(2,3)", "(0,2)(1,3)", "(0,1,2,3)", "(4,5)(6,7)", "(0,4)(1,5)(2,6)(3,7)",
        ];
        let gens: Vec<&str> = picks.iter().map(|&i| pool[i]).collect();
        let g = group(8, &gens);
        prop_assume!(g.order().unwrap() <= 32);
        let m = if trivial { trivial_module(2, 1, gens.len()) } else { perm_module(2, &g) };
        let cs = h2_sylow(&g, &m).unwrap();
        let bar = h2_full_bar(&cs);
        prop_assert_eq!(cs.dim_h2(), bar.h2);
        prop_assert_eq!(cs.dim_b2(), bar.b2);
        for z in cs.h2_representatives() {
            prop_assert!(cs.is_cocycle(z));
        }
    }
}

use proptest::prelude::*;

use super::*;
use crate::gf::{Field, FieldRef};
use crate::groupcore::perm_matrix;
use crate::modrep::{composition_factors, module_iso};
use crate::symtype::{construct_r, isometry_group_generators, normalizer_extension, weil_rep, FormData, Kind};

fn opts() -> MeataxeOptions {
    MeataxeOptions::default()
}

fn a5_natural_4() -> GModule {
    let f2 = Field::of_order(2).unwrap();
    let a = Perm::parse_cycles(5, "(0,1)(2,3)").unwrap();
    let b = Perm::parse_cycles(5, "(0,2,4)").unwrap();
    let perm = GModule::permutation_module(&f2, &[a, b]).unwrap();
    composition_factors(&perm, &opts()).unwrap().into_iter().find(|m| m.dim() == 4).unwrap()
}

fn dihedral_gf5() -> GModule {
    let f5 = Field::of_order(5).unwrap();
    let rot = Matrix::from_ints(&f5, &[&[2, 0], &[0, 3]]);
    let swap = Matrix::from_ints(&f5, &[&[0, 1], &[1, 0]]);
    GModule::new(&f5, 2, vec![rot, swap]).unwrap()
}

#[test]
fn centre_of_extraspecial_acts_homogeneously() {
    let fd = FormData::standard(Kind::Minus, 2, 2).unwrap();
    let w = weil_rep(&construct_r(&fd), 3).unwrap();
    let v = w.module().clone();
    let minus_one = v.generators().last().unwrap().clone();
    assert!(minus_one.is_scalar_value().is_some());
    let dec = homogeneous_components(&v, &[minus_one], &opts()).unwrap();
    assert_eq!(dec.summary(), ComponentSummary { k: 1, multiplicities: vec![4], irreducible_dims: vec![1], transitive: true });
    assert!(imprimitivity_witness(&dec).is_none());
    assert!(tensor_factorize(&v, &dec, &opts()).unwrap().is_none());
}

#[test]
fn dihedral_swaps_two_characters() {
    let v = dihedral_gf5();
    let rot = v.generators()[0].clone();
    let dec = homogeneous_components(&v, &[rot], &opts()).unwrap();
    assert_eq!(dec.k(), 2);
    assert!(dec.transitive);
    assert!(dec.components.iter().all(|c| c.multiplicity == 1 && c.irreducible_dim == 1));
    assert_eq!(dec.permutations[1].image(0), 1);
    let blocks = imprimitivity_witness(&dec).unwrap();
    assert_eq!(blocks.blocks.len(), 2);
    assert!(blocks.blocks.iter().all(|b| b.len() == 1));
    assert!(blocks.verify(&v));
    assert!(tensor_factorize(&v, &dec, &opts()).is_err());
}

#[test]
fn product_of_a5_factors_as_tensor() {
    let w = a5_natural_4();
    let f = w.field().clone();
    let id = Matrix::identity(&f, 4);
    let (a, b) = (w.generators()[0].clone(), w.generators()[1].clone());
    let gens = vec![a.kron(&id), b.kron(&id), id.kron(&a), id.kron(&b)];
    let v = GModule::new(&f, 16, gens.clone()).unwrap();
    let dec = homogeneous_components(&v, &gens[..2], &opts()).unwrap();
    assert_eq!(dec.summary(), ComponentSummary { k: 1, multiplicities: vec![4], irreducible_dims: vec![4], transitive: true });
    let tf = tensor_factorize(&v, &dec, &opts()).unwrap().unwrap();
    assert_eq!((tf.m1, tf.m2), (4, 4));
    assert!(tf.reconstructs(&v));
    // over GF(2) projective and linear equivalence coincide
    let u_mod = GModule::new(&f, 4, tf.factors.iter().map(|(u, _)| u.matrix().clone()).collect()).unwrap();
    let w_mod = GModule::new(&f, 4, tf.factors.iter().map(|(_, c)| c.matrix().clone()).collect()).unwrap();
    let second = GModule::new(&f, 4, vec![id.clone(), id.clone(), a.clone(), b.clone()]).unwrap();
    let first = GModule::new(&f, 4, vec![a, b, id.clone(), id]).unwrap();
    assert!(module_iso(&u_mod, &second, &opts()).unwrap().is_some());
    assert!(module_iso(&w_mod, &first, &opts()).unwrap().is_some());
}

#[test]
fn irreducible_restriction_is_degenerate() {
    let v = a5_natural_4();
    let dec = homogeneous_components(&v, v.generators(), &opts()).unwrap();
    assert_eq!(dec.summary().multiplicities, vec![1]);
    assert!(tensor_factorize(&v, &dec, &opts()).unwrap().is_none());
}

#[test]
fn non_normal_subgroup_is_rejected() {
    let f5 = Field::of_order(5).unwrap();
    let t = perm_matrix(&f5, &Perm::parse_cycles(3, "(0,1)").unwrap());
    let c = perm_matrix(&f5, &Perm::parse_cycles(3, "(0,1,2)").unwrap());
    let v = GModule::new(&f5, 3, vec![t.clone(), c]).unwrap();
    assert!(matches!(homogeneous_components(&v, &[t], &opts()), Err(Error::Precondition(_))));
}

fn monomial(f: &FieldRef, p: &Perm, signs: &[bool]) -> Matrix {
    let mut m = perm_matrix(f, p);
    for (i, &s) in signs.iter().enumerate() {
        if s {
            for j in 0..m.cols() {
                m.set(i, j, f.neg(m.get(i, j)));
            }
        }
    }
    m
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// Monomial groups over GF(5) with `M` the diagonal sign matrices.
    #[test]
    fn components_fill_the_module(
        d in 2usize..5,
        perms in prop::collection::vec(prop::collection::vec(0u32..100, 5), 1..3),
        signs in prop::collection::vec(prop::collection::vec(any::<bool>(), 5), 1..3),
    ) {
        let f5 = Field::of_order(5).unwrap();
        let mut h = Vec::new();
        for key in &perms {
            let mut order: Vec<u32> = (0..d as u32).collect();
            order.sort_by_key(|&i| key[i as usize]);
            h.push(perm_matrix(&f5, &Perm::from_images(order).unwrap()));
        }
        for s in &signs {
            h.push(monomial(&f5, &Perm::identity(d), &s[..d]));
        }
        let m_gens: Vec<Matrix> = (0..d).map(|i| {
            let mut s = vec![false; d];
            s[i] = true;
            monomial(&f5, &Perm::identity(d), &s)
        }).collect();
        h.extend(m_gens.iter().cloned());
        let v = GModule::new(&f5, d, h).unwrap();
        let dec = homogeneous_components(&v, &m_gens, &opts()).unwrap();
        let total: usize = dec.components.iter().map(|c| c.multiplicity * c.irreducible_dim).sum();
        prop_assert_eq!(total, d);
        prop_assert_eq!(dec.k(), d);
        if let Some(b) = imprimitivity_witness(&dec) {
            prop_assert!(b.verify(&v));
        }
    }
}

fn projective(gens: Vec<Matrix>) -> Group<ProjMat> {
    Group::from_gens(gens.into_iter().map(ProjMat::new).collect()).unwrap()
}

#[test]
fn reduction_for_central_product_over_gf5() {
    let fd = FormData::standard(Kind::Central4, 2, 2).unwrap();
    let w = weil_rep(&construct_r(&fd), 5).unwrap();
    let s = isometry_group_generators(&fd).unwrap();
    let ext = normalizer_extension(&w, s.generators()).unwrap();
    let n = ext.group.subgroup(ext.group.generators()[..ext.num_r_gens].to_vec());
    let out = feit_tits_reduce(&ext.group, &n, &opts()).unwrap();
    let rep = out.report().unwrap_or_else(|| panic!("{out:?}"));
    assert_eq!((rep.r, rep.n, rep.m), (2, 2, 4));
    assert_eq!(rep.kind, Kind::Central4);
    assert_eq!(rep.image_order, 720);
    assert!(rep.holds(), "{rep:?}");
    assert!(rep.centralizer_scalar);
}

#[test]
fn reduction_for_odd_extraspecial() {
    let fd = FormData::standard(Kind::Odd, 3, 1).unwrap();
    let w = weil_rep(&construct_r(&fd), 4).unwrap();
    let s = isometry_group_generators(&fd).unwrap();
    let ext = normalizer_extension(&w, s.generators()).unwrap();
    let n = ext.group.subgroup(ext.group.generators()[..ext.num_r_gens].to_vec());
    let rep = feit_tits_reduce(&ext.group, &n, &opts()).unwrap().report().cloned().unwrap();
    assert_eq!((rep.r, rep.n, rep.m, rep.image_order), (3, 1, 3, 24));
    assert!(rep.holds());
}

#[test]
fn reducible_normal_subgroup_fails_clause_iii() {
    let f5 = Field::of_order(5).unwrap();
    let h = projective(vec![Matrix::from_ints(&f5, &[&[1, 0], &[0, 4]])]);
    let out = feit_tits_reduce(&h, &h, &opts()).unwrap();
    let FeitTitsOutcome::Failed(f) = out else { panic!("expected failure") };
    assert_eq!(f.clause, "(iii)");
}

#[test]
fn non_nilpotent_normal_subgroup_fails_clause_i() {
    let f5 = Field::of_order(5).unwrap();
    let t = perm_matrix(&f5, &Perm::parse_cycles(3, "(0,1)").unwrap());
    let c = perm_matrix(&f5, &Perm::parse_cycles(3, "(0,1,2)").unwrap());
    let h = projective(vec![t, c]);
    let FeitTitsOutcome::Failed(f) = feit_tits_reduce(&h, &h, &opts()).unwrap() else { panic!() };
    assert_eq!(f.clause, "(i)");
}

#[test]
fn nilpotency_of_small_groups() {
    let d8 = Group::from_gens(vec![
        Perm::parse_cycles(4, "(0,1,2,3)").unwrap(),
        Perm::parse_cycles(4, "(0,2)").unwrap(),
    ])
    .unwrap();
    assert!(d8.is_nilpotent().unwrap());
    assert_eq!(d8.lower_central_series().unwrap().len(), 3);
    let s3 = Group::from_gens(vec![Perm::parse_cycles(3, "(0,1)").unwrap(), Perm::parse_cycles(3, "(0,1,2)").unwrap()]).unwrap();
    assert!(!s3.is_nilpotent().unwrap());
}

use proptest::prelude::*;

use super::*;
use crate::gf::Field;
use crate::groupcore::{Group, GroupElement, Perm};

fn a5_pres() -> Presentation {
    Presentation::parse("group a5\ngens a b\nrel a^2\nrel b^3\nrel (a b)^5\n").unwrap()
}

fn s3_pres() -> Presentation {
    Presentation::parse("group s3\ngens a b\nrel a^2\nrel b^3\nrel (a b)^2\n").unwrap()
}

fn perm_start(g: &Group<Perm>) -> GModule {
    GModule::permutation_module(&Field::of_order(2).unwrap(), g.generators()).unwrap()
}

#[test]
fn a5_has_degree_five() {
    let rep = perm_degree("a5", &a5_pres(), 6, None).unwrap();
    assert_eq!(rep.value, Some(5));
    assert!(validate_report::<Perm>(&rep, None, Some(&a5_pres())).unwrap());
    let below = perm_degree("a5", &a5_pres(), 4, None).unwrap();
    assert_eq!(below.value, None);
}

#[test]
fn tampered_coset_action_fails_validation() {
    let mut rep = perm_degree("a5", &a5_pres(), 5, None).unwrap();
    if let Witness::CosetAction { perms, .. } = &mut rep.witness {
        perms[0].swap(0, 1);
        perms[0].swap(2, 3);
    }
    assert!(!validate_report::<Perm>(&rep, None, Some(&a5_pres())).unwrap());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn larger_caps_never_raise_the_degree(c1 in 1usize..9, extra in 0usize..5, s3 in any::<bool>()) {
        let pres = if s3 { s3_pres() } else { a5_pres() };
        let small = perm_degree("g", &pres, c1, None).unwrap().value;
        let large = perm_degree("g", &pres, c1 + extra, None).unwrap().value;
        if let Some(v) = small {
            prop_assert_eq!(large, Some(v));
        }
    }
}

/// All pairs in `GL₂(2)` satisfying the relations of `A₅`; none is faithful
/// since `|GL₂(2)| = 6`.
#[test]
fn a5_has_no_faithful_two_dimensional_module() {
    let f2 = Field::of_order(2).unwrap();
    let mats: Vec<Matrix> = (0..16u64)
        .map(|c| Matrix::from_rows(&f2, &[vec![(c & 1) as u32, (c >> 1 & 1) as u32], vec![(c >> 2 & 1) as u32, (c >> 3 & 1) as u32]]).unwrap())
        .filter(|m| m.is_invertible())
        .collect();
    assert_eq!(mats.len(), 6);
    let pres = a5_pres();
    let one = Matrix::identity(&f2, 2);
    let mut reps = 0;
    for x in &mats {
        for y in &mats {
            let imgs = [x.clone(), y.clone()];
            if pres.rels.iter().all(|w| w.evaluate(&imgs, &one).is_one()) {
                reps += 1;
                assert!(Group::new(imgs.to_vec(), one.clone()).order().unwrap() < 60);
            }
        }
    }
    assert_eq!(reps, 1);
}

#[test]
fn a5_embeds_in_sp4_2() {
    let g = a5();
    let np = n_prime("a5", &g, &perm_start(&g), 3, 1).unwrap();
    let n = n_symplectic("a5", &g, &perm_start(&g), 3, 1).unwrap();
    assert_eq!((np.value, n.value), (Some(2), Some(2)));
    assert!(validate_report(&np, Some(&g), None).unwrap());
    assert!(validate_report(&n, Some(&g), None).unwrap());
    let mut broken = n.clone();
    if let Witness::Module { form, .. } = &mut broken.witness {
        *form = Some(vec![vec![0, 1, 0, 0], vec![1, 0, 0, 0], vec![0, 0, 0, 0], vec![0, 0, 0, 0]]);
    }
    assert!(!validate_report(&broken, Some(&g), None).unwrap());
}

#[test]
fn reports_round_trip_through_json() {
    let g = a5();
    let n = n_symplectic("a5", &g, &perm_start(&g), 2, 1).unwrap();
    let text = serde_json::to_string(&n).unwrap();
    let back: InvariantReport = serde_json::from_str(&text).unwrap();
    assert_eq!(back, n);
    assert!(validate_report(&back, Some(&g), None).unwrap());
    assert!(text.contains("\"kind\":\"n\""));
}

#[test]
fn square_of_a5_meets_the_multiplicative_bound_with_equality() {
    let rep = check_multiplicative(&a5(), 2, 4, None, 1).unwrap();
    assert_eq!((rep.n_t, rep.n_power, rep.bound), (2, 4, 4));
    assert!(rep.holds && rep.equality);
    let one = check_multiplicative(&a5(), 1, 2, None, 1).unwrap();
    assert!(one.holds && one.equality);
    // a wrong value of n'_T must make the check fail
    let wrong = check_multiplicative(&a5(), 2, 4, Some(3), 1).unwrap();
    assert!(!wrong.holds);
}

fn sl2_onto_a5() -> Homomorphism<Perm, Perm> {
    Homomorphism::new(sl2_5(), a5(), a5().generators().to_vec()).unwrap()
}

#[test]
fn fiber_product_of_sl2_5_over_a5() {
    let q = sl2_onto_a5();
    assert!(q.is_well_defined().unwrap());
    let inst = fiber_product(&sl2_5(), &sl2_5(), &q, &q).unwrap();
    assert_eq!(inst.h.order().unwrap(), 120 * 120 / 60);
    assert_eq!(inst.n.order().unwrap(), 4);
    let rep = check_subdirect(&inst).unwrap();
    assert_eq!((rep.ell, rep.ells.clone()), (1, vec![1, 1]));
    assert!(rep.holds);
}

#[test]
fn trivial_quotient_gives_the_direct_product() {
    let g = sl2_5();
    let triv = Group::new(Vec::new(), Perm::identity(1));
    let q = Homomorphism::new(g.clone(), triv, vec![Perm::identity(1); 2]).unwrap();
    let inst = fiber_product(&g, &g, &q, &q).unwrap();
    assert_eq!(inst.h.order().unwrap(), 120 * 120);
    let rep = check_subdirect(&inst).unwrap();
    assert_eq!((rep.ell, rep.ells.clone(), rep.n_order), (2, vec![1, 1], 4));
}

#[test]
fn diagonal_sl2_5_over_its_centre() {
    let g = sl2_5();
    let (prod, offsets) = direct_product(&[g.clone(), g.clone()]);
    let total = 48;
    let diag: Vec<Perm> = g
        .generators()
        .iter()
        .map(|x| {
            let mut img: Vec<u32> = x.images().to_vec();
            img.extend(x.images().iter().map(|&p| p + offsets[1] as u32));
            Perm::from_images(img).unwrap()
        })
        .collect();
    let h = Group::new(diag, Perm::identity(total));
    let z = h.center().unwrap();
    assert_eq!(z.order().unwrap(), 2);
    let inst = SubdirectInstance::new(vec![g.clone(), g.clone()], h, z).unwrap();
    let rep = check_subdirect(&inst).unwrap();
    assert_eq!((rep.ell, rep.ells.clone()), (1, vec![1, 1]));
    // the full product with N = Z × Z
    let zz = prod.center().unwrap();
    let inst = SubdirectInstance::new(vec![g.clone(), g], prod, zz).unwrap();
    let rep = check_subdirect(&inst).unwrap();
    assert_eq!((rep.ell, rep.ells), (2, vec![1, 1]));
}

#[test]
fn non_normal_or_insoluble_n_is_rejected() {
    let g = a5();
    let (prod, _) = direct_product(&[g.clone(), g.clone()]);
    let insoluble = prod.subgroup(prod.generators()[..2].to_vec());
    assert!(SubdirectInstance::new(vec![g.clone(), g.clone()], prod.clone(), insoluble).is_err());
    let not_normal = prod.subgroup(vec![prod.generators()[0].clone()]);
    assert!(SubdirectInstance::new(vec![g.clone(), g], prod, not_normal).is_err());
}

#[test]
fn seeded_instances_satisfy_the_inequality() {
    for seed in 0..10 {
        let inst = random_instance(seed).unwrap();
        let rep = check_subdirect(&inst).unwrap();
        assert!(rep.holds, "seed {seed}: {rep:?}");
    }
}

/// `|H ∩ X| = |H|·|X| / |⟨H, X⟩|` for `X = Rad(H₁) × Rad(H₂)`, normal in `H₁ × H₂`.
#[test]
fn seeded_n_is_the_intersection_with_the_product_of_radicals() {
    for seed in 0..12 {
        let inst = random_instance(seed).unwrap();
        let radicals: Vec<Group<Perm>> = inst.factors.iter().map(|f| f.soluble_radical().unwrap()).collect();
        let (x, _) = direct_product(&radicals);
        let mut joined = inst.h.generators().to_vec();
        joined.extend(x.generators().iter().cloned());
        let hx = inst.h.subgroup(joined).order().unwrap();
        let expected = inst.h.order().unwrap() * x.order().unwrap() / hx;
        assert_eq!(inst.n.order().unwrap(), expected, "seed {seed}");
        for (i, r) in radicals.iter().enumerate() {
            assert!(r.contains_group(&inst.project(i, &inst.n).unwrap()).unwrap());
        }
    }
}

#[test]
fn radical_map_with_a_larger_kernel_is_rejected() {
    let g = sl2_5();
    let q = Homomorphism::new(g.clone(), a5(), a5().generators().to_vec()).unwrap();
    let triv = Group::new(Vec::new(), Perm::identity(1));
    let bad = Homomorphism::new(g.clone(), triv, vec![Perm::identity(1); 2]).unwrap();
    assert!(fiber_product_with(&g, &g, &q, &q, Some([&bad, &q])).is_err());
    let inst = fiber_product_with(&g, &g, &q, &q, Some([&q, &q])).unwrap();
    assert_eq!(inst.n.order().unwrap(), 4);
}

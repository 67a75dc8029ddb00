use std::path::PathBuf;
use std::time::Instant;

use grpx::cohomology::{h2, h2_full_bar, h2_sylow, minimal_extension_check, split_check};
use grpx::gf::Matrix;
use grpx::groupcore::{minimal_generators, AnyGroup, Group, GroupFile, Homomorphism, Perm};
use grpx::modrep::{GModule, MeataxeOptions};
use grpx::presentations::Presentation;
use grpx::symtype::{construct_r, isometry_from_symplectic, normalizer_extension, weil_rep, FormData, Kind};

fn asset(name: &str) -> String {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../assets").join(name);
    std::fs::read_to_string(&p).unwrap_or_else(|e| panic!("{}: {e}", p.display()))
}

fn perm_group(name: &str) -> Group<Perm> {
    match GroupFile::parse(&asset(name)).unwrap().group {
        AnyGroup::Perm(g) => g,
        _ => panic!("expected a permutation group"),
    }
}

#[test]
fn psl2_17_has_no_second_cohomology_in_the_8_dim_module() {
    let t = Instant::now();
    let g = perm_group("psl2_17.grp");
    let m = GModule::parse(&asset("psl2_17_m8.mod")).unwrap();
    let rep = h2(&g, &m).unwrap();
    eprintln!("{rep:?} in {:?}", t.elapsed());
    assert_eq!(rep.sylow_order, 16);
    assert_eq!(rep.dim_h2_sylow, 1);
    assert_eq!(rep.dim_h2_stable, 0);
}

#[test]
fn sylow_cohomology_of_psl2_17_matches_the_full_bar_complex() {
    let g = perm_group("psl2_17.grp");
    let m = GModule::parse(&asset("psl2_17_m8.mod")).unwrap();
    let rho = Homomorphism::new(
        g.clone(),
        Group::new(m.generators().to_vec(), Matrix::identity(m.field(), m.dim())),
        m.generators().to_vec(),
    )
    .unwrap();
    let sylow = g.sylow_subgroup(2).unwrap();
    let s = g.subgroup(minimal_generators(&sylow, sylow.generators().to_vec()).unwrap());
    let images = s.generators().iter().map(|x| rho.image(x).unwrap()).collect();
    let ms = GModule::new(m.field(), m.dim(), images).unwrap();
    let cs = h2_sylow(&s, &ms).unwrap();
    let bar = h2_full_bar(&cs);
    assert_eq!(cs.dim_h2(), bar.h2);
    assert_eq!(cs.dim_b2(), bar.b2);
    for z in cs.z2_basis() {
        assert!(cs.is_cocycle(&z));
    }
}

#[test]
fn psu3_3_has_second_cohomology_in_the_6_dim_module() {
    let t = Instant::now();
    let g = perm_group("psu3_3.grp");
    let m = GModule::parse(&asset("psu3_3_m6.mod")).unwrap();
    let rep = h2(&g, &m).unwrap();
    eprintln!("{rep:?} in {:?}", t.elapsed());
    assert_eq!(rep.sylow_order, 32);
    assert_eq!(rep.dim_h2_sylow, 3);
    // frozen; the requirement is only that it is nonzero
    assert_eq!(rep.dim_h2_stable, 1);
}

#[test]
fn extension_of_psu3_3_in_pgl8_9_splits() {
    let AnyGroup::Mat(s) = GroupFile::parse(&asset("psu3_3_sp6.grp")).unwrap().group else {
        panic!("expected a matrix group")
    };
    let fd = FormData::standard(Kind::Central4, 2, 3).unwrap();
    let gens: Vec<_> = s.generators().iter().map(|g| isometry_from_symplectic(&fd, g).unwrap()).collect();
    let w = weil_rep(&construct_r(&fd), 9).unwrap();
    let ext = normalizer_extension(&w, &gens).unwrap();
    let k = ext.quotient.kernel().unwrap();
    assert_eq!(k.order().unwrap(), 64);
    let pres = Presentation::parse(&asset("psu3_3.pres")).unwrap();
    let t = Instant::now();
    let cert = split_check(&ext.group, &k, &pres, &ext.lifts).unwrap();
    eprintln!("split in {:?}", t.elapsed());
    assert!(cert.splits);
    assert_eq!(cert.complement_order, Some(6048));
    assert_eq!(cert.meets_kernel_trivially, Some(true));
    let min = minimal_extension_check(&ext.group, &k, Some((&pres, &ext.lifts)), &MeataxeOptions::default()).unwrap();
    assert_eq!(min.method, "nonsplit");
    assert!(!min.minimal);
}

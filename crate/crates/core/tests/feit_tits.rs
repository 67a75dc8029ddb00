use std::path::PathBuf;

use grpx::clifford::feit_tits_reduce;
use grpx::groupcore::{AnyGroup, GroupFile};
use grpx::modrep::MeataxeOptions;
use grpx::symtype::{construct_r, isometry_from_symplectic, normalizer_extension, weil_rep, FormData, Kind};

fn asset(name: &str) -> String {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../assets").join(name);
    std::fs::read_to_string(&p).unwrap_or_else(|e| panic!("{}: {e}", p.display()))
}

#[test]
fn psu3_3_extension_in_pgl8_9_reduces_to_sp6_2() {
    let AnyGroup::Mat(s) = GroupFile::parse(&asset("psu3_3_sp6.grp")).unwrap().group else {
        panic!("expected a matrix group")
    };
    let fd = FormData::standard(Kind::Central4, 2, 3).unwrap();
    let gens: Vec<_> = s.generators().iter().map(|g| isometry_from_symplectic(&fd, g).unwrap()).collect();
    let w = weil_rep(&construct_r(&fd), 9).unwrap();
    let ext = normalizer_extension(&w, &gens).unwrap();
    assert_eq!(ext.certificate.order, 64 * 6048);
    let n = ext.quotient.kernel().unwrap();
    let out = feit_tits_reduce(&ext.group, &n, &MeataxeOptions::default()).unwrap();
    let rep = out.report().unwrap_or_else(|| panic!("{out:?}"));
    assert_eq!((rep.r, rep.n, rep.m), (2, 3, 8));
    assert_eq!(rep.image_order, 6048);
    assert!(rep.holds(), "{rep:?}");
}

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use grpx::groupcore::{AnyGroup, GroupFile};
use grpx::symtype::Kind;
use grpx_cli::claims::{central4_extension, r_image};
use serde_json::Value;

fn assets() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../assets")
}

fn grpx(args: &[&str], asset_dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_grpx")).args(args).env("GRPX_ASSET_DIR", asset_dir).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn json_of(o: &Output) -> Value {
    assert!(o.status.success(), "{}\n{}", stdout(o), String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).expect("JSON on stdout")
}

fn copy_dir(from: &Path, to: &Path) {
    for e in std::fs::read_dir(from).unwrap().flatten() {
        let p = e.path();
        let q = to.join(e.file_name());
        if p.is_dir() {
            std::fs::create_dir_all(&q).unwrap();
            copy_dir(&p, &q);
        } else {
            std::fs::copy(&p, &q).unwrap();
        }
    }
}

#[test]
fn asset_inventory_matches_the_manifest() {
    let o = grpx(&["asset-verify"], &assets());
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let text = stdout(&o);
    let manifest: Value = serde_json::from_str(&std::fs::read_to_string(assets().join("manifest.json")).unwrap()).unwrap();
    let n = manifest["assets"].as_array().unwrap().len();
    assert!(text.starts_with(&format!("{n} assets in manifest, {n} files on disk")), "{text}");
}

#[test]
fn edited_relator_is_reported_with_exit_code_2() {
    let dir = tempfile::tempdir().unwrap();
    copy_dir(&assets(), dir.path());
    let pres = dir.path().join("a5.pres");
    let text = std::fs::read_to_string(&pres).unwrap().replace("(a b)^5", "(a b)^4");
    std::fs::write(&pres, text).unwrap();
    let o = grpx(&["asset-verify"], dir.path());
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("FAIL a5.pres"), "{}", stdout(&o));
    // claims refuse to start on a corrupted asset directory
    let o = grpx(&["reproduce-all"], dir.path());
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("a5.pres"));
}

#[test]
fn unlisted_asset_fails_the_inventory() {
    let dir = tempfile::tempdir().unwrap();
    copy_dir(&assets(), dir.path());
    std::fs::write(dir.path().join("extra.grp"), "group x kind perm degree 1\n").unwrap();
    let o = grpx(&["asset-verify"], dir.path());
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("extra.grp: not in the manifest"));
}

#[test]
fn explain_known_and_unknown_claims() {
    let o = grpx(&["explain", "table.psl2_17"], &assets());
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("claim:      table.psl2_17") && text.contains("statement:") && text.contains("18"));
    let o = grpx(&["explain", "no.such.claim"], &assets());
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn h2_of_psl2_17_from_the_command_line() {
    let v = json_of(&grpx(&["h2", "--group", "psl2_17", "--module", "m8.mod", "--p", "2", "--seed", "7"], &assets()));
    assert_eq!(v["dim_h2_sylow"], 1);
    assert_eq!(v["dim_h2_stable"], 0);
    assert_eq!(v["seed"], 7);
    assert!(v["elapsed_ms"].is_u64());
    assert!(v["inputs"]["psl2_17_m8.mod"].is_string());
    let o = grpx(&["h2", "--group", "psl2_17", "--module", "m8.mod", "--p", "3"], &assets());
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn h2_of_psu3_3_with_a_short_module_name() {
    let v = json_of(&grpx(&["h2", "--group", "psu3_3", "--module", "m6", "--p", "2"], &assets()));
    assert_eq!(v["dim_h2_stable"], 1);
}

#[test]
fn invariants_writes_json() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("p.json");
    let o = grpx(&["invariants", "--group", "a5", "--kind", "P", "--cap", "10", "--json", out.to_str().unwrap()], &assets());
    assert!(o.status.success());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["kind"], "P");
    assert_eq!(v["value"], 5);
    let v = json_of(&grpx(&["invariants", "--group", "a5", "--kind", "nprime", "--cap", "3"], &assets()));
    assert_eq!(v["value"], 2);
    let o = grpx(&["invariants", "--group", "a5", "--kind", "Q", "--cap", "3"], &assets());
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn symtype_build_reproduces_the_bundled_files() {
    let dir = tempfile::tempdir().unwrap();
    let o = grpx(&["symtype", "build", "--r", "2", "--n", "3", "--kind", "central4", "--field", "9", "--out", dir.path().to_str().unwrap()], &assets());
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    for ext in ["grp", "mod"] {
        let name = format!("central4_r2_n3_q9.{ext}");
        let built = std::fs::read_to_string(dir.path().join(&name)).unwrap();
        let bundled = std::fs::read_to_string(assets().join("symtype").join(&name)).unwrap();
        assert_eq!(built, bundled, "{name}");
    }
}

#[test]
fn every_bundled_symtype_asset_is_reproduced() {
    let dir = assets().join("symtype");
    for e in std::fs::read_dir(&dir).unwrap().flatten() {
        let name = e.file_name().to_string_lossy().into_owned();
        let Some(stem) = name.strip_suffix(".grp") else { continue };
        let parts: Vec<&str> = stem.split('_').collect();
        let kind = Kind::parse(parts[0]).unwrap();
        let num = |s: &str, p: char| s.strip_prefix(p).unwrap().parse::<u32>().unwrap();
        let (r, n, q) = (num(parts[1], 'r'), num(parts[2], 'n') as usize, num(parts[3], 'q'));
        let (s, grp, module) = grpx_cli::symtype_files(kind, r, n, q).unwrap();
        assert_eq!(s, stem);
        assert_eq!(grp, std::fs::read_to_string(dir.join(format!("{stem}.grp"))).unwrap());
        assert_eq!(module, std::fs::read_to_string(dir.join(format!("{stem}.mod"))).unwrap());
    }
}

fn write_proj(path: &Path, name: &str, g: &grpx::groupcore::Group<grpx::groupcore::ProjMat>) {
    let one = g.one().matrix();
    let gf = GroupFile {
        name: name.into(),
        degree: one.rows(),
        field: Some(one.field().clone()),
        gen_names: (0..g.generators().len()).map(|i| format!("g{i}")).collect(),
        group: AnyGroup::ProjMat(g.clone()),
    };
    std::fs::write(path, gf.to_text()).unwrap();
}

#[test]
fn split_from_files() {
    let AnyGroup::Mat(s) = GroupFile::parse(&std::fs::read_to_string(assets().join("psu3_3_sp6.grp")).unwrap()).unwrap().group else {
        panic!("matrix group expected")
    };
    let ext = central4_extension(3, 9, s.generators()).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let (e, k) = (dir.path().join("e.grp"), dir.path().join("k.grp"));
    write_proj(&e, "e", &ext.group);
    write_proj(&k, "k", &r_image(&ext));
    let v = json_of(&grpx(&["split", "--ext", e.to_str().unwrap(), "--kernel", k.to_str().unwrap(), "--pres", "psu3_3.pres"], &assets()));
    assert_eq!(v["splits"], true);
    assert_eq!(v["complement_order"], 6048);
    assert_eq!(v["meets_kernel_trivially"], true);
    assert_eq!(v["kernel_order"], 64);
}

#[test]
fn feit_tits_from_files() {
    let AnyGroup::Mat(s) = GroupFile::parse(&std::fs::read_to_string(assets().join("sp4_2.grp")).unwrap()).unwrap().group else {
        panic!("matrix group expected")
    };
    let ext = central4_extension(2, 5, s.generators()).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let (h, n, m) = (dir.path().join("h.grp"), dir.path().join("n.grp"), dir.path().join("v.mod"));
    write_proj(&h, "h", &ext.group);
    write_proj(&n, "n", &r_image(&ext));
    let gens: Vec<_> = ext.group.generators().iter().map(|x| x.matrix().clone()).collect();
    std::fs::write(&m, grpx::modrep::GModule::from_matrices(gens).unwrap().to_text()).unwrap();
    let args = ["feit-tits", "--group", h.to_str().unwrap(), "--normal", n.to_str().unwrap(), "--module", m.to_str().unwrap(), "--seed", "3"];
    let v = json_of(&grpx(&args, &assets()));
    assert_eq!(v["outcome"], "reduced");
    assert_eq!((v["r"].as_u64(), v["n"].as_u64(), v["image_order"].as_u64()), (Some(2), Some(2), Some(720)));
    assert_eq!(v["faithful"], true);
    assert_eq!(v["irreducible"], true);
    assert_eq!(v["seed"], 3);
}

#[test]
fn clifford_components_of_a_weil_module() {
    let dir = tempfile::tempdir().unwrap();
    let g = GroupFile::parse(&std::fs::read_to_string(assets().join("symtype/central4_r2_n2_q5.grp")).unwrap()).unwrap();
    let AnyGroup::Mat(r) = &g.group else { panic!("matrix group expected") };
    // ⟨x1, c⟩ is normal in R since commutators are central
    let gens = vec![r.generators()[0].clone(), r.generators().last().unwrap().clone()];
    let sub = GroupFile {
        name: "m".into(),
        degree: g.degree,
        field: g.field.clone(),
        gen_names: vec!["x1".into(), "c".into()],
        group: AnyGroup::Mat(grpx::groupcore::Group::new(gens, r.one().clone())),
    };
    let path = dir.path().join("m.grp");
    std::fs::write(&path, sub.to_text()).unwrap();
    let v = json_of(&grpx(&["clifford", "--module", "symtype/central4_r2_n2_q5.mod", "--normal", path.to_str().unwrap()], &assets()));
    assert_eq!(v["components"]["k"], 2);
    assert_eq!(v["components"]["transitive"], true);
    assert_eq!(v["imprimitive"], true);
}

#[test]
fn subdirect_from_the_command_line() {
    let o = grpx(&["subdirect", "--count", "5", "--seed", "11"], &assets());
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.starts_with("PASS 5 seeded instances"));
}

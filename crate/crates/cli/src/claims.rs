//! The reproducible claims: each one loads its assets, recomputes a value
//! and compares it with the expected one.

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use grpx::clifford::feit_tits_reduce;
use grpx::cohomology::{h2, split_check};
use grpx::gf::{Field, Matrix};
use grpx::groupcore::{naive_closure, Action, AnyGroup, Group, Perm, ProjMat};
use grpx::invariants::{
    check_multiplicative, check_subdirect, direct_power, n_prime, n_symplectic, random_instance, small_irreducibles,
    verify_table_row, InvariantReport, TABLE,
};
use grpx::modrep::{all_submodules, composition_dims_by_enumeration, composition_factors, is_irreducible, GModule, MeataxeOptions};
use grpx::symtype::{
    construct_r, default_weil_field, isometry_from_symplectic, isometry_group_generators, isometry_group_order,
    normalizer_extension, weil_rep, FormData, Kind, NormalizerExtension,
};
use serde_json::{json, Value};

use crate::assets::{Assets, Loader};
use crate::cert::{Certificate, Verdict};
use crate::CliError;

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub seed: u64,
    /// Element-count cap for groups loaded from assets.
    pub cap: u64,
    pub coset_cap: usize,
    /// Overrides every claim's own time limit.
    pub budget: Option<Duration>,
    pub jobs: usize,
    pub extended: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            seed: 1,
            cap: grpx::groupcore::DEFAULT_CAP,
            coset_cap: grpx::presentations::DEFAULT_COSET_CAP,
            budget: None,
            jobs: 1,
            extended: false,
        }
    }
}

pub struct Outcome {
    pub verdict: Verdict,
    pub outputs: Value,
    pub diff: Option<String>,
}

impl Outcome {
    fn check(ok: bool, outputs: Value, diff: impl FnOnce() -> String) -> Outcome {
        Outcome {
            verdict: if ok { Verdict::Pass } else { Verdict::Fail },
            diff: if ok { None } else { Some(diff()) },
            outputs,
        }
    }
}

type Runner = fn(&RunConfig, &mut Loader) -> Result<Outcome, CliError>;

pub struct Claim {
    pub id: &'static str,
    pub statement: &'static str,
    pub method: &'static str,
    /// Default wall-clock limit; exceeding it turns a PASS into a FAIL.
    pub limit_secs: u64,
    pub extended_only: bool,
    run: Runner,
}

macro_rules! claim {
    ($id:expr, $limit:expr, $ext:expr, $run:expr, $statement:expr, $method:expr) => {
        Claim { id: $id, statement: $statement, method: $method, limit_secs: $limit, extended_only: $ext, run: $run }
    };
}

pub static CLAIMS: &[Claim] = &[
    claim!("table.psl2_17", 900, false, |c, l| table_row(c, l, 0),
        "PSL2(17) has minimal permutation degree 18 and embeds irreducibly in Sp8(2) but in no smaller symplectic group over GF(2).",
        "low-index subgroup enumeration on the bundled presentation; GF(2)-irreducibles of dimension at most 2*floor(log2 P) from the permutation module, with invariant alternating forms"),
    claim!("table.psp4_3", 900, false, |c, l| table_row(c, l, 1),
        "PSp4(3) has minimal permutation degree 27 and least symplectic GF(2)-dimension 6.",
        "as for table.psl2_17"),
    claim!("table.psu3_3", 900, false, |c, l| table_row(c, l, 2),
        "PSU3(3) has minimal permutation degree 28 and least symplectic GF(2)-dimension 6.",
        "as for table.psl2_17"),
    claim!("table.g2_3", 900, true, table_g2_3,
        "G2(3) has minimal permutation degree 351 and least symplectic GF(2)-dimension 14.",
        "not reproduced: no generators are bundled and the search is beyond desk scale"),
    claim!("modules.psl2_17", 900, false, |c, l| module_dims(c, l, "psl2_17", 18, &[8]),
        "The nontrivial irreducible GF(2)-modules of PSL2(17) of dimension at most 2*log2(18) all have dimension 8.",
        "tensor-and-chop search from the permutation module, with a completeness level recorded"),
    claim!("modules.psu3_3", 900, false, |c, l| module_dims(c, l, "psu3_3", 28, &[6]),
        "The nontrivial irreducible GF(2)-modules of PSU3(3) of dimension at most 2*log2(28) all have dimension 6.",
        "tensor-and-chop search from the permutation module, with a completeness level recorded"),
    claim!("h2.psl2_17", 300, false, |c, l| h2_claim(c, l, "psl2_17", "psl2_17_m8.mod", false),
        "The second cohomology of PSL2(17) with coefficients in its 8-dimensional GF(2)-module vanishes.",
        "cocycles of a Sylow 2-subgroup, then the stable-element conditions over double coset representatives"),
    claim!("h2.psu3_3", 300, false, |c, l| h2_claim(c, l, "psu3_3", "psu3_3_m6.mod", true),
        "The second cohomology of PSU3(3) with coefficients in its 6-dimensional GF(2)-module is nonzero.",
        "cocycles of a Sylow 2-subgroup, then the stable-element conditions over double coset representatives"),
    claim!("split.psu3_3", 600, false, split_claim,
        "The extension 2^6.PSU3(3) inside PGL8(9), generated by the Weil image of 4o2^{1+6} and lifts of PSU3(3) < Sp6(2), splits.",
        "Fox-calculus linear system on the presentation of the quotient; the complement is built and its order and intersection with the kernel are checked"),
    claim!("symtype.laws", 600, false, symtype_laws,
        "Every symplectic-type group of each kind with n <= 3 satisfies the commutator and power laws of its form.",
        "exhaustive over all pairs when the order is at most 2^10, seeded samples otherwise"),
    claim!("symtype.weil", 600, false, symtype_weil,
        "Each Weil representation has dimension r^n and is faithful and irreducible.",
        "explicit tensor model; faithfulness on the centre and on every element when small; MeatAxe irreducibility"),
    claim!("symtype.normalizers", 600, false, symtype_normalizers,
        "The normaliser quotients for 4o2^{1+4}, 2^{1+4}_+ and 2^{1+4}_- have orders 720, 72 and 120.",
        "Schreier-Sims order of the isometry group, compared with the closed formula and with the quotient of the normaliser extension"),
    claim!("feit_tits.sp4_2", 600, false, |c, l| feit_tits_claim(c, l, false),
        "On 2^4.Sp4(2) inside PGL4(5) the reduction yields (r, n) = (2, 2) with a faithful irreducible image of order 720.",
        "feit_tits_reduce with every hypothesis checked"),
    claim!("feit_tits.psu3_3", 600, false, |c, l| feit_tits_claim(c, l, true),
        "On 2^6.PSU3(3) inside PGL8(9) the reduction yields (r, n) = (2, 3) with a faithful irreducible image of order 6048.",
        "feit_tits_reduce with every hypothesis checked"),
    claim!("subdirect.seeded", 900, false, subdirect_seeded,
        "For a subdirect product H of H_1, H_2 and soluble N with H/N = T^l, each H_i/N_i = T^{l_i} and l_1 + l_2 >= l.",
        "100 seeded fiber products over A5 or the trivial group, with soluble decorations"),
    claim!("multiplicative.a5", 600, false, multiplicative_a5,
        "n'(A5) = 2 and n'(A5^2) = 4 = n'(A5)*2^(2-1).",
        "least faithful irreducible GF(2)-module of A5 and of A5 x A5"),
    claim!("invariants.nprime_le_n", 600, false, nprime_le_n,
        "n'_G <= n_G for every group with both values computed.",
        "both invariants on the bundled simple groups, A5 and A5 x A5"),
    claim!("oracle.meataxe", 600, false, oracle_meataxe,
        "MeatAxe composition factors and irreducibility agree with exhaustive submodule enumeration on GF(2)-modules of dimension at most 6.",
        "chop versus the full submodule lattice"),
    claim!("oracle.schreier_sims", 600, false, oracle_schreier_sims,
        "Schreier-Sims orders agree with naive closure for every bundled group of order at most 10^4.",
        "naive closure of the generators"),
    claim!("oracle.determinism", 600, false, oracle_determinism,
        "Repeated runs with a fixed seed produce identical certificates.",
        "two claims run twice, determinism hashes compared"),
];

pub fn find(id: &str) -> Option<&'static Claim> {
    CLAIMS.iter().find(|c| c.id == id)
}

pub fn claims_for(config: &RunConfig) -> Vec<&'static Claim> {
    CLAIMS.iter().filter(|c| config.extended || !c.extended_only).collect()
}

fn compute_fail(e: grpx::Error) -> Outcome {
    Outcome { verdict: Verdict::Fail, outputs: json!({ "error": e.to_string() }), diff: Some(format!("error: {e}")) }
}

/// Runs one claim. Asset errors propagate; computation errors become FAIL.
pub fn run_claim(claim: &Claim, assets: &Assets, config: &RunConfig) -> Result<Certificate, CliError> {
    let start = Instant::now();
    let mut loader = Loader::new(assets);
    let outcome = match (claim.run)(config, &mut loader) {
        Ok(o) => o,
        Err(CliError::Compute(e)) => compute_fail(e),
        Err(e) => return Err(e),
    };
    let elapsed = start.elapsed();
    let limit = config.budget.unwrap_or(Duration::from_secs(claim.limit_secs));
    let Outcome { mut verdict, outputs, mut diff } = outcome;
    if verdict == Verdict::Pass && elapsed > limit {
        verdict = Verdict::Fail;
        diff = Some(format!("took {} ms, over the {} s limit", elapsed.as_millis(), limit.as_secs()));
    }
    Ok(Certificate::new(claim.id, verdict, config.seed, loader.hashes, outputs, diff, elapsed.as_millis() as u64))
}

/// Runs claims on up to `config.jobs` threads; certificates come back in input order.
pub fn run_claims(claims: &[&'static Claim], assets: &Assets, config: &RunConfig) -> Result<Vec<Certificate>, CliError> {
    let next = AtomicUsize::new(0);
    let results: Mutex<Vec<Option<Result<Certificate, CliError>>>> = Mutex::new((0..claims.len()).map(|_| None).collect());
    std::thread::scope(|s| {
        for _ in 0..config.jobs.clamp(1, claims.len().max(1)) {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::SeqCst);
                if i >= claims.len() {
                    break;
                }
                let r = run_claim(claims[i], assets, config);
                results.lock().expect("no poisoned lock")[i] = Some(r);
            });
        }
    });
    results.into_inner().expect("no poisoned lock").into_iter().map(|r| r.expect("every claim ran")).collect()
}

fn perm_group(l: &mut Loader, name: &str, config: &RunConfig) -> Result<Group<Perm>, CliError> {
    Ok(l.perm_group(&format!("{name}.grp"))?.with_cap(config.cap))
}

fn table_row(config: &RunConfig, l: &mut Loader, i: usize) -> Result<Outcome, CliError> {
    let row = &TABLE[i];
    let pres = l.presentation(&format!("{}.pres", row.group))?;
    let g = perm_group(l, row.group, config)?;
    let budget = Some(config.budget.unwrap_or(Duration::from_secs(900)));
    let res = verify_table_row(row, &pres, &g, budget, config.seed)?;
    let ok = res.pass;
    let diff = || format!("expected P = {}, n = {}; got P = {:?}, n = {:?}", row.p, row.n, res.p, res.n);
    let d = diff();
    Ok(Outcome::check(ok, serde_json::to_value(&res).expect("serialisable"), || d))
}

fn table_g2_3(_: &RunConfig, _: &mut Loader) -> Result<Outcome, CliError> {
    Ok(Outcome {
        verdict: Verdict::Skipped,
        outputs: json!({
            "expected_p": 351,
            "expected_n": 7,
            "reason": "no generators for G2(3) are bundled; a low-index search to index 351 and a module search to dimension 16 are beyond desk scale",
        }),
        diff: None,
    })
}

/// Largest `d` with `2^d ≤ p²`, i.e. `⌊2·log₂ p⌋`.
pub fn two_log2_floor(p: u64) -> usize {
    (0..128).take_while(|&d| (1u128 << d) <= (p as u128) * (p as u128)).last().unwrap_or(0)
}

fn module_dims(config: &RunConfig, l: &mut Loader, name: &str, p: u64, expected: &[usize]) -> Result<Outcome, CliError> {
    let g = perm_group(l, name, config)?;
    let f2 = Field::of_order(2)?;
    let start = GModule::permutation_module(&f2, g.generators())?;
    let dmax = two_log2_floor(p);
    let (mods, level) = small_irreducibles(&start, dmax, config.seed)?;
    let mut dims: Vec<usize> = mods.iter().map(GModule::dim).collect();
    dims.sort_unstable();
    dims.dedup();
    let ok = dims == expected;
    let out = json!({ "group": name, "p": p, "dmax": dmax, "dims": dims, "expected": expected, "level": level });
    Ok(Outcome::check(ok, out, || format!("expected dimensions {expected:?}, found {dims:?}")))
}

fn h2_claim(config: &RunConfig, l: &mut Loader, name: &str, module: &str, nonzero: bool) -> Result<Outcome, CliError> {
    let g = perm_group(l, name, config)?;
    let m = l.module(module)?;
    let rep = h2(&g, &m)?;
    let ok = if nonzero { rep.dim_h2_stable >= 1 } else { rep.dim_h2_stable == 0 };
    let want = if nonzero { "at least 1" } else { "0" };
    let got = rep.dim_h2_stable;
    Ok(Outcome::check(ok, serde_json::to_value(&rep).expect("serialisable"), || {
        format!("expected dim H^2 {want}, got {got}")
    }))
}

/// `2^{2n}.S ≤ PGL` from the Weil representation of `4∘2^{1+2n}` and isometry lifts.
pub fn central4_extension(n: usize, q: u32, s_symplectic: &[Matrix]) -> grpx::Result<NormalizerExtension> {
    let fd = FormData::standard(Kind::Central4, 2, n)?;
    let gens = s_symplectic.iter().map(|g| isometry_from_symplectic(&fd, g)).collect::<grpx::Result<Vec<_>>>()?;
    let w = weil_rep(&construct_r(&fd), q)?;
    normalizer_extension(&w, &gens)
}

fn psu3_3_extension(l: &mut Loader) -> Result<NormalizerExtension, CliError> {
    let s = l.mat_group("psu3_3_sp6.grp")?;
    Ok(central4_extension(3, 9, s.generators())?)
}

/// The subgroup generated by the first `num_r_gens` generators: the image of `R`.
pub fn r_image(ext: &NormalizerExtension) -> Group<ProjMat> {
    ext.group.subgroup(ext.group.generators()[..ext.num_r_gens].to_vec())
}

fn split_claim(_: &RunConfig, l: &mut Loader) -> Result<Outcome, CliError> {
    let ext = psu3_3_extension(l)?;
    let pres = l.presentation("psu3_3.pres")?;
    let k = r_image(&ext);
    let cert = split_check(&ext.group, &k, &pres, &ext.lifts)?;
    let ok = cert.splits
        && cert.kernel_order == 64
        && cert.complement_order == Some(6048)
        && cert.meets_kernel_trivially == Some(true);
    let out = json!({ "extension": ext.certificate, "split": cert });
    let (s, c, m) = (cert.splits, cert.complement_order, cert.meets_kernel_trivially);
    Ok(Outcome::check(ok, out, || {
        format!("expected a complement of order 6048 meeting the kernel trivially; splits = {s}, complement = {c:?}, trivial intersection = {m:?}")
    }))
}

fn all_kinds() -> Vec<(Kind, u32, usize)> {
    let mut v = Vec::new();
    for n in 1..=3 {
        v.push((Kind::Plus, 2, n));
        v.push((Kind::Minus, 2, n));
        v.push((Kind::Central4, 2, n));
        v.push((Kind::Odd, 3, n));
    }
    v
}

fn symtype_laws(config: &RunConfig, _: &mut Loader) -> Result<Outcome, CliError> {
    let mut rows = Vec::new();
    let mut bad = Vec::new();
    for (kind, r, n) in all_kinds() {
        let g = construct_r(&FormData::standard(kind, r, n)?);
        let rep = g.check_laws(4096, config.seed);
        if !rep.holds() || rep.exhaustive != (rep.order <= grpx::symtype::EXHAUSTIVE_LAW_LIMIT) {
            bad.push(kind.label(r, n));
        }
        rows.push(json!({ "group": kind.label(r, n), "report": rep }));
    }
    let ok = bad.is_empty();
    Ok(Outcome::check(ok, json!({ "groups": rows }), || format!("laws fail for {bad:?}")))
}

fn symtype_weil(_: &RunConfig, _: &mut Loader) -> Result<Outcome, CliError> {
    let mut cases: Vec<(Kind, u32, usize, u32)> =
        all_kinds().into_iter().map(|(k, r, n)| (k, r, n, default_weil_field(r, k))).collect();
    cases.push((Kind::Central4, 2, 3, 9));
    let mut rows = Vec::new();
    let mut bad = Vec::new();
    for (kind, r, n, q) in cases {
        let w = weil_rep(&construct_r(&FormData::standard(kind, r, n)?), q)?;
        let rep = w.report()?;
        if rep.dim as u64 != (r as u64).pow(n as u32) || !rep.faithful || !rep.irreducible {
            bad.push(format!("{} over GF({q})", kind.label(r, n)));
        }
        rows.push(rep);
    }
    let ok = bad.is_empty();
    Ok(Outcome::check(ok, json!({ "representations": rows }), || format!("failing: {bad:?}")))
}

fn symtype_normalizers(_: &RunConfig, _: &mut Loader) -> Result<Outcome, CliError> {
    let mut rows = Vec::new();
    let mut bad = Vec::new();
    for (kind, expected) in [(Kind::Central4, 720u64), (Kind::Plus, 72), (Kind::Minus, 120)] {
        let fd = FormData::standard(kind, 2, 2)?;
        let s = isometry_group_generators(&fd)?;
        let order = s.order()?;
        let formula = isometry_group_order(&fd) as u64;
        let w = weil_rep(&construct_r(&fd), default_weil_field(2, kind))?;
        let ext = normalizer_extension(&w, s.generators())?;
        let quotient = ext.certificate.quotient_order;
        if order != expected || formula != expected || quotient != expected || !ext.certificate.holds(2, 2) {
            bad.push(kind.label(2, 2));
        }
        rows.push(json!({
            "group": kind.label(2, 2),
            "expected": expected,
            "isometry_group_order": order,
            "formula": formula,
            "extension": ext.certificate,
        }));
    }
    let ok = bad.is_empty();
    Ok(Outcome::check(ok, json!({ "normalizers": rows }), || format!("order mismatch for {bad:?}")))
}

fn feit_tits_claim(config: &RunConfig, l: &mut Loader, psu: bool) -> Result<Outcome, CliError> {
    let (ext, want) = if psu {
        (psu3_3_extension(l)?, (2u32, 3usize, 6048u64))
    } else {
        let s = l.mat_group("sp4_2.grp")?;
        (central4_extension(2, 5, s.generators())?, (2, 2, 720))
    };
    let n = r_image(&ext);
    let opts = MeataxeOptions { seed: config.seed, ..MeataxeOptions::default() };
    let out = feit_tits_reduce(&ext.group, &n, &opts)?;
    let outputs = serde_json::to_value(&out).expect("serialisable");
    let Some(rep) = out.report() else {
        return Ok(Outcome::check(false, outputs, || "the reduction failed".into()));
    };
    let ok = (rep.r, rep.n, rep.image_order) == want && rep.holds();
    let got = (rep.r, rep.n, rep.image_order, rep.holds());
    Ok(Outcome::check(ok, outputs, || format!("expected (r, n, |image|) = {want:?} with all checks; got {got:?}")))
}

pub const SUBDIRECT_INSTANCES: u64 = 100;

/// Seeded instances `seed, seed + 1, …`, with the inequality checked on each.
pub fn subdirect_reports(seed: u64, count: u64, jobs: usize) -> grpx::Result<Vec<Value>> {
    let next = AtomicUsize::new(0);
    let out: Mutex<Vec<Option<grpx::Result<Value>>>> = Mutex::new((0..count).map(|_| None).collect());
    std::thread::scope(|s| {
        for _ in 0..jobs.clamp(1, count.max(1) as usize) {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::SeqCst);
                if i as u64 >= count {
                    break;
                }
                let sd = seed.wrapping_add(i as u64);
                let r = random_instance(sd)
                    .and_then(|inst| check_subdirect(&inst))
                    .map(|rep| json!({ "seed": sd, "report": rep }));
                out.lock().expect("no poisoned lock")[i] = Some(r);
            });
        }
    });
    out.into_inner().expect("no poisoned lock").into_iter().map(|r| r.expect("every instance ran")).collect()
}

fn subdirect_seeded(config: &RunConfig, _: &mut Loader) -> Result<Outcome, CliError> {
    let reports = subdirect_reports(config.seed, SUBDIRECT_INSTANCES, config.jobs)?;
    let failing: Vec<u64> = reports
        .iter()
        .filter(|r| r["report"]["holds"] != Value::Bool(true))
        .map(|r| r["seed"].as_u64().unwrap_or(0))
        .collect();
    let ok = failing.is_empty();
    Ok(Outcome::check(ok, json!({ "instances": reports }), || format!("inequality fails for seeds {failing:?}")))
}

fn a5() -> Group<Perm> {
    grpx::invariants::a5()
}

fn multiplicative_a5(config: &RunConfig, _: &mut Loader) -> Result<Outcome, CliError> {
    let t = a5();
    let f2 = Field::of_order(2)?;
    let np = n_prime("a5", &t, &GModule::permutation_module(&f2, t.generators())?, 3, config.seed)?;
    let rep = check_multiplicative(&t, 2, 4, np.value, config.seed)?;
    let ok = np.value == Some(2) && rep.n_power == 4 && rep.bound == 4 && rep.holds && rep.equality;
    let out = json!({ "n_prime_a5": np, "square": rep });
    let (a, b) = (np.value, rep.n_power);
    Ok(Outcome::check(ok, out, || format!("expected n'(A5) = 2, n'(A5^2) = 4 with equality; got {a:?}, {b}")))
}

/// `(n', n)` for one group from its permutation module.
fn both_invariants(name: &str, g: &Group<Perm>, nmax: usize, seed: u64) -> grpx::Result<(InvariantReport, InvariantReport)> {
    let f2 = Field::of_order(2)?;
    let start = GModule::permutation_module(&f2, g.generators())?;
    Ok((n_prime(name, g, &start, nmax, seed)?, n_symplectic(name, g, &start, nmax, seed)?))
}

fn nprime_le_n(config: &RunConfig, l: &mut Loader) -> Result<Outcome, CliError> {
    let mut groups: Vec<(String, Group<Perm>, usize)> =
        vec![("a5".into(), a5(), 3), ("a5^2".into(), direct_power(&a5(), 2), 4), ("s3".into(), perm_group(l, "s3", config)?, 2)];
    for row in TABLE.iter().filter(|r| !r.extended) {
        groups.push((row.group.into(), perm_group(l, row.group, config)?, row.n));
    }
    let mut rows = Vec::new();
    let mut bad = Vec::new();
    for (name, g, nmax) in &groups {
        let (np, n) = both_invariants(name, g, *nmax, config.seed)?;
        let ok = match (np.value, n.value) {
            (Some(a), Some(b)) => a <= b,
            (_, None) => true,
            (None, Some(_)) => false,
        };
        if !ok {
            bad.push(name.clone());
        }
        rows.push(json!({ "group": name, "n_prime": np.value, "n": n.value, "bound": 2 * nmax }));
    }
    let ok = bad.is_empty();
    Ok(Outcome::check(ok, json!({ "groups": rows }), || format!("n' > n for {bad:?}")))
}

/// GF(2)-modules of dimension at most 6 among the assets and their permutation modules.
fn small_gf2_modules(l: &mut Loader) -> Result<Vec<(String, GModule)>, CliError> {
    let f2 = Field::of_order(2)?;
    let mut out = Vec::new();
    for name in ["s3", "a5"] {
        let g = l.perm_group(&format!("{name}.grp"))?;
        out.push((format!("{name} permutation module"), GModule::permutation_module(&f2, g.generators())?));
    }
    for name in ["sp4_2", "o4p_2", "o4m_2", "psu3_3_sp6"] {
        let g = l.mat_group(&format!("{name}.grp"))?;
        out.push((format!("{name} natural module"), GModule::from_matrices(g.generators().to_vec())?));
    }
    out.push(("psu3_3_m6".into(), l.module("psu3_3_m6.mod")?));
    // a reducible sum as a negative control for irreducibility
    let sp4 = l.mat_group("sp4_2.grp")?;
    let nat = GModule::from_matrices(sp4.generators().to_vec())?;
    let triv = GModule::trivial(&f2, 2, nat.num_gens());
    out.push(("sp4_2 natural + trivial^2".into(), nat.direct_sum(&triv)?));
    Ok(out)
}

fn oracle_meataxe(config: &RunConfig, l: &mut Loader) -> Result<Outcome, CliError> {
    let opts = MeataxeOptions { seed: config.seed, ..MeataxeOptions::default() };
    let mut rows = Vec::new();
    let mut bad = Vec::new();
    for (name, m) in small_gf2_modules(l)? {
        let mut chop: Vec<usize> = composition_factors(&m, &opts)?.iter().map(GModule::dim).collect();
        let mut exhaustive = composition_dims_by_enumeration(&m)?;
        chop.sort_unstable();
        exhaustive.sort_unstable();
        let irr_meataxe = is_irreducible(&m, &opts)?.is_irreducible();
        let irr_enum = all_submodules(&m).len() == 2;
        if chop != exhaustive || irr_meataxe != irr_enum {
            bad.push(name.clone());
        }
        rows.push(json!({
            "module": name,
            "dim": m.dim(),
            "meataxe_factors": chop,
            "enumerated_factors": exhaustive,
            "irreducible": irr_enum,
        }));
    }
    let ok = bad.is_empty();
    Ok(Outcome::check(ok, json!({ "modules": rows }), || format!("disagreement on {bad:?}")))
}

fn closure_matches<E: Action>(g: &Group<E>, limit: u64) -> grpx::Result<Option<(u64, u64)>> {
    let order = g.order()?;
    if order > limit {
        return Ok(None);
    }
    let naive = naive_closure(g.generators(), g.one(), limit as usize + 1)?.len() as u64;
    Ok(Some((order, naive)))
}

pub const CLOSURE_LIMIT: u64 = 10_000;

fn oracle_schreier_sims(config: &RunConfig, l: &mut Loader) -> Result<Outcome, CliError> {
    let paths: Vec<String> =
        l.assets.manifest.assets.iter().map(|e| e.path.clone()).filter(|p| p.ends_with(".grp")).collect();
    let mut rows = Vec::new();
    let mut bad = Vec::new();
    for p in paths {
        let gf = l.group(&p)?;
        let res = match gf.group.with_cap(config.cap) {
            AnyGroup::Perm(g) => closure_matches(&g, CLOSURE_LIMIT)?,
            AnyGroup::Mat(g) => closure_matches(&g, CLOSURE_LIMIT)?,
            AnyGroup::ProjMat(g) => closure_matches(&g, CLOSURE_LIMIT)?,
        };
        if let Some((o, n)) = res {
            if o != n {
                bad.push(p.clone());
            }
            rows.push(json!({ "group": p, "schreier_sims": o, "closure": n }));
        }
    }
    let ok = bad.is_empty() && !rows.is_empty();
    Ok(Outcome::check(ok, json!({ "groups": rows }), || format!("order mismatch for {bad:?}")))
}

fn oracle_determinism(config: &RunConfig, l: &mut Loader) -> Result<Outcome, CliError> {
    let mut rows = BTreeMap::new();
    let mut bad = Vec::new();
    for id in ["h2.psl2_17", "modules.psl2_17"] {
        let claim = find(id).expect("registered claim");
        let a = run_claim(claim, l.assets, config)?;
        let b = run_claim(claim, l.assets, config)?;
        for (k, v) in &a.inputs {
            l.hashes.insert(k.clone(), v.clone());
        }
        if a.determinism_hash != b.determinism_hash {
            bad.push(id);
        }
        rows.insert(id.to_string(), json!([a.determinism_hash, b.determinism_hash]));
    }
    let ok = bad.is_empty();
    Ok(Outcome::check(ok, json!({ "hashes": rows }), || format!("hashes differ for {bad:?}")))
}

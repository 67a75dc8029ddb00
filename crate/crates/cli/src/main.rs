use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand};
use grpx::clifford::{homogeneous_components, imprimitivity_witness, tensor_factorize, FeitTitsOutcome};
use grpx::cohomology::{h2, split_check};
use grpx::gf::Matrix;
use grpx::groupcore::{Action, AnyGroup, Group, GroupFile, ProjMat};
use grpx::invariants::{n_prime, n_symplectic, perm_degree, InvariantKind};
use grpx::modrep::{GModule, MeataxeOptions};
use grpx::presentations::Presentation;
use grpx::symtype::Kind;
use grpx_cli::assets::{default_asset_dir, sha256_hex, verify_all, Assets, Loader};
use grpx_cli::cert::Bundle;
use grpx_cli::claims::{self, claims_for, run_claims, subdirect_reports, RunConfig, CLAIMS};
use grpx_cli::{symtype_files, CliError};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "grpx", version, about = "Certified finite group computations")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Global {
    /// Master seed for every randomised routine.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    /// Claims run concurrently.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    /// Wall-clock limit per claim; defaults to each claim's own limit.
    #[arg(long, global = true)]
    budget_secs: Option<u64>,
    /// Include claims that are not reproducible at desk scale.
    #[arg(long, global = true)]
    extended: bool,
    /// Write the JSON result here instead of standard output.
    #[arg(long, global = true)]
    json: Option<PathBuf>,
    /// Element-count cap for group enumeration.
    #[arg(long, global = true, default_value_t = grpx::groupcore::DEFAULT_CAP)]
    element_cap: u64,
    /// Cap on live cosets in coset enumeration.
    #[arg(long, global = true, default_value_t = grpx::presentations::DEFAULT_COSET_CAP)]
    coset_cap: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Run every default claim and write one certificate per claim.
    ReproduceAll {
        /// Also write `<claim>.json` files here.
        #[arg(long)]
        cert_dir: Option<PathBuf>,
    },
    /// Recompute the rows of the permutation-degree table.
    VerifyTable,
    /// Compute P, n or n' for a bundled group.
    Invariants {
        #[arg(long)]
        group: String,
        /// P, n or nprime.
        #[arg(long)]
        kind: String,
        /// Largest value searched: index for P, n for n and n'.
        #[arg(long)]
        cap: usize,
    },
    /// Dimensions of H^2(S, M) for a Sylow p-subgroup S and of H^2(G, M).
    H2 {
        #[arg(long)]
        group: String,
        #[arg(long)]
        module: String,
        #[arg(long)]
        p: u32,
    },
    /// Decide whether E splits over an elementary abelian normal subgroup K.
    /// The last generators of E, one per generator of the presentation, lift those of E/K.
    Split {
        #[arg(long)]
        ext: String,
        #[arg(long)]
        kernel: String,
        #[arg(long)]
        pres: String,
    },
    /// Run the Feit-Tits reduction on H in PGL with nilpotent normal N.
    FeitTits {
        #[arg(long)]
        group: String,
        #[arg(long)]
        normal: String,
        /// Module whose generators must agree with those of H up to scalars.
        #[arg(long)]
        module: Option<String>,
    },
    /// Symplectic-type groups.
    Symtype {
        #[command(subcommand)]
        action: SymtypeCmd,
    },
    /// Homogeneous components of a module restricted to a normal subgroup.
    Clifford {
        #[arg(long)]
        module: String,
        /// Matrix group whose generators generate the normal subgroup.
        #[arg(long)]
        normal: String,
    },
    /// Seeded subdirect-product instances checked against the sum inequality.
    Subdirect {
        #[arg(long, default_value_t = claims::SUBDIRECT_INSTANCES)]
        count: u64,
    },
    /// Check hashes and contents of every bundled asset.
    AssetVerify,
    /// Describe a claim and how it is checked.
    Explain {
        /// Claim identifier; omit to list all.
        id: Option<String>,
    },
}

#[derive(Subcommand)]
enum SymtypeCmd {
    /// Write the Weil representation as `.grp` and `.mod` files.
    Build {
        #[arg(long)]
        r: u32,
        #[arg(long)]
        n: usize,
        /// odd, plus, minus or central4.
        #[arg(long)]
        kind: String,
        /// Field order; defaults to the smallest admissible one.
        #[arg(long)]
        field: Option<u32>,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
}

/// Reads user-supplied files, preferring a literal path and falling back to
/// the asset directory, and records their hashes.
struct Inputs<'a> {
    loader: Loader<'a>,
}

impl Inputs<'_> {
    fn read(&mut self, candidates: &[String]) -> Result<String, CliError> {
        for c in candidates {
            let p = Path::new(c);
            if p.is_file() {
                let bytes = std::fs::read(p).map_err(|e| CliError::Input(format!("{c}: {e}")))?;
                self.loader.hashes.insert(c.clone(), sha256_hex(&bytes));
                return String::from_utf8(bytes).map_err(|_| CliError::Input(format!("{c}: not UTF-8")));
            }
            if self.loader.assets.entry(c).is_some() {
                return self.loader.text(c);
            }
        }
        Err(CliError::Input(format!("none of {candidates:?} exists")))
    }

    fn group(&mut self, arg: &str) -> Result<GroupFile, CliError> {
        let text = self.read(&[arg.to_string(), format!("{arg}.grp")])?;
        GroupFile::parse(&text).map_err(|e| CliError::Input(format!("{arg}: {e}")))
    }

    fn module(&mut self, arg: &str, group: Option<&str>) -> Result<GModule, CliError> {
        let base = arg.strip_suffix(".mod").unwrap_or(arg);
        let mut c = vec![arg.to_string(), format!("{base}.mod")];
        if let Some(g) = group {
            c.push(format!("{g}_{base}.mod"));
        }
        let text = self.read(&c)?;
        GModule::parse(&text).map_err(|e| CliError::Input(format!("{arg}: {e}")))
    }

    fn presentation(&mut self, arg: &str) -> Result<Presentation, CliError> {
        let text = self.read(&[arg.to_string(), format!("{arg}.pres")])?;
        Presentation::parse(&text).map_err(|e| CliError::Input(format!("{arg}: {e}")))
    }
}

fn emit(global: &Global, value: &Value) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(value).expect("serialisable") + "\n";
    match &global.json {
        Some(p) => std::fs::write(p, text).map_err(|e| CliError::Input(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn emit_bundle(global: &Global, bundle: &Bundle) -> Result<(), CliError> {
    for c in &bundle.certificates {
        println!("{}", c.line());
    }
    if let Some(p) = &global.json {
        let text = serde_json::to_string_pretty(bundle).expect("serialisable") + "\n";
        std::fs::write(p, text).map_err(|e| CliError::Input(format!("{}: {e}", p.display())))?;
    }
    Ok(())
}

fn verdict_code(fail: bool) -> i32 {
    i32::from(fail)
}

fn with_meta(mut v: Value, seed: u64, start: Instant, inputs: &BTreeMap<String, String>) -> Value {
    if let Value::Object(m) = &mut v {
        m.insert("schema_version".into(), json!(grpx_cli::cert::SCHEMA_VERSION));
        m.insert("seed".into(), json!(seed));
        m.insert("inputs".into(), json!(inputs));
        m.insert("elapsed_ms".into(), json!(start.elapsed().as_millis() as u64));
    }
    v
}

fn config(g: &Global) -> RunConfig {
    RunConfig {
        seed: g.seed,
        cap: g.element_cap,
        coset_cap: g.coset_cap,
        budget: g.budget_secs.map(Duration::from_secs),
        jobs: g.jobs.max(1),
        extended: g.extended,
    }
}

fn to_proj(g: AnyGroup, what: &str) -> Result<Group<ProjMat>, CliError> {
    match g {
        AnyGroup::ProjMat(g) => Ok(g),
        AnyGroup::Mat(g) => {
            let gens = g.generators().iter().cloned().map(ProjMat::new).collect();
            Ok(Group::new(gens, ProjMat::new(g.one().clone())))
        }
        AnyGroup::Perm(_) => Err(CliError::Input(format!("{what} must be a matrix group"))),
    }
}

fn h2_any<E: Action>(g: &Group<E>, m: &GModule) -> grpx::Result<grpx::cohomology::H2Report> {
    h2(g, m)
}

fn split_any<E: Action>(e: &Group<E>, k: &Group<E>, pres: &Presentation) -> Result<Value, CliError> {
    let q = pres.num_gens();
    let gens = e.generators();
    if gens.len() < q {
        return Err(CliError::Input(format!("E has {} generators, fewer than the {q} of the presentation", gens.len())));
    }
    let lifts = gens[gens.len() - q..].to_vec();
    let cert = split_check(e, k, pres, &lifts)?;
    let mut v = serde_json::to_value(&cert).expect("serialisable");
    if let (Some(c), Value::Object(m)) = (&cert.complement, &mut v) {
        m.insert("complement_generators".into(), json!(c.len()));
    }
    Ok(v)
}

fn run(cli: Cli) -> Result<i32, CliError> {
    let g = &cli.global;
    let dir = default_asset_dir();
    let assets = Assets::open(&dir)?;
    let cfg = config(g);
    let start = Instant::now();
    match cli.command {
        Command::ReproduceAll { cert_dir } => {
            assets.check_hashes()?;
            let certs = run_claims(&claims_for(&cfg), &assets, &cfg)?;
            if let Some(d) = &cert_dir {
                std::fs::create_dir_all(d).map_err(|e| CliError::Input(format!("{}: {e}", d.display())))?;
                for c in &certs {
                    let p = d.join(format!("{}.json", c.claim));
                    std::fs::write(&p, c.to_json() + "\n").map_err(|e| CliError::Input(format!("{}: {e}", p.display())))?;
                }
            }
            let bundle = Bundle::new(cfg.seed, certs);
            emit_bundle(g, &bundle)?;
            Ok(verdict_code(bundle.any_fail()))
        }
        Command::VerifyTable => {
            let table: Vec<_> = claims_for(&cfg).into_iter().filter(|c| c.id.starts_with("table.")).collect();
            let bundle = Bundle::new(cfg.seed, run_claims(&table, &assets, &cfg)?);
            emit_bundle(g, &bundle)?;
            Ok(verdict_code(bundle.any_fail()))
        }
        Command::Invariants { group, kind, cap } => {
            let kind = InvariantKind::parse(&kind).map_err(|e| CliError::Input(e.to_string()))?;
            let mut inp = Inputs { loader: Loader::new(&assets) };
            let mut report = match kind {
                InvariantKind::PermDegree => {
                    let pres = inp.presentation(&group)?;
                    perm_degree(&group, &pres, cap, cfg.budget)?
                }
                _ => {
                    let AnyGroup::Perm(pg) = inp.group(&group)?.group.with_cap(cfg.cap) else {
                        return Err(CliError::Input("n and n' need a permutation group".into()));
                    };
                    let f2 = grpx::gf::Field::of_order(2)?;
                    let start_mod = GModule::permutation_module(&f2, pg.generators())?;
                    if kind == InvariantKind::Symplectic {
                        n_symplectic(&group, &pg, &start_mod, cap, cfg.seed)?
                    } else {
                        n_prime(&group, &pg, &start_mod, cap, cfg.seed)?
                    }
                }
            };
            report.seed = cfg.seed;
            emit(g, &with_meta(serde_json::to_value(&report).expect("serialisable"), cfg.seed, start, &inp.loader.hashes))?;
            Ok(0)
        }
        Command::H2 { group, module, p } => {
            let mut inp = Inputs { loader: Loader::new(&assets) };
            let gf = inp.group(&group)?;
            let m = inp.module(&module, Some(&group))?;
            if m.field().p() != p || m.field().e() != 1 {
                return Err(CliError::Input(format!("the module is over GF({}), not GF({p})", m.field().q())));
            }
            let rep = match gf.group.with_cap(cfg.cap) {
                AnyGroup::Perm(x) => h2_any(&x, &m),
                AnyGroup::Mat(x) => h2_any(&x, &m),
                AnyGroup::ProjMat(x) => h2_any(&x, &m),
            }?;
            emit(g, &with_meta(serde_json::to_value(&rep).expect("serialisable"), cfg.seed, start, &inp.loader.hashes))?;
            Ok(0)
        }
        Command::Split { ext, kernel, pres } => {
            let mut inp = Inputs { loader: Loader::new(&assets) };
            let e = inp.group(&ext)?.group.with_cap(cfg.cap);
            let k = inp.group(&kernel)?.group;
            let q = inp.presentation(&pres)?;
            let v = match (e, k) {
                (AnyGroup::Perm(e), AnyGroup::Perm(k)) => split_any(&e, &k, &q)?,
                (AnyGroup::Mat(e), AnyGroup::Mat(k)) => split_any(&e, &k, &q)?,
                (AnyGroup::ProjMat(e), AnyGroup::ProjMat(k)) => split_any(&e, &k, &q)?,
                _ => return Err(CliError::Input("E and K must be groups of the same kind".into())),
            };
            emit(g, &with_meta(v, cfg.seed, start, &inp.loader.hashes))?;
            Ok(0)
        }
        Command::FeitTits { group, normal, module } => {
            let mut inp = Inputs { loader: Loader::new(&assets) };
            let h = to_proj(inp.group(&group)?.group, "H")?.with_cap(cfg.cap);
            let n = to_proj(inp.group(&normal)?.group, "N")?;
            if let Some(mpath) = module {
                let m = inp.module(&mpath, None)?;
                let agree = m.num_gens() == h.generators().len()
                    && m.generators().iter().zip(h.generators()).all(|(a, b)| ProjMat::new(a.clone()) == *b);
                if !agree {
                    return Err(CliError::Input("module generators differ from those of H".into()));
                }
            }
            let opts = MeataxeOptions { seed: cfg.seed, ..MeataxeOptions::default() };
            let out = grpx::clifford::feit_tits_reduce(&h, &n, &opts)?;
            let failed = matches!(out, FeitTitsOutcome::Failed(_));
            let mut v = serde_json::to_value(&out).expect("serialisable");
            if let Some(rep) = out.report() {
                if let Value::Object(m) = &mut v {
                    m.insert("holds".into(), json!(rep.holds()));
                }
            }
            emit(g, &with_meta(v, cfg.seed, start, &inp.loader.hashes))?;
            Ok(verdict_code(failed))
        }
        Command::Symtype { action: SymtypeCmd::Build { r, n, kind, field, out } } => {
            let kind = Kind::parse(&kind).map_err(|e| CliError::Input(e.to_string()))?;
            let q = field.unwrap_or_else(|| grpx::symtype::default_weil_field(r, kind));
            let (stem, grp, module) = symtype_files(kind, r, n, q).map_err(|e| CliError::Input(e.to_string()))?;
            std::fs::create_dir_all(&out).map_err(|e| CliError::Input(format!("{}: {e}", out.display())))?;
            let mut written = BTreeMap::new();
            for (ext, text) in [("grp", &grp), ("mod", &module)] {
                let p = out.join(format!("{stem}.{ext}"));
                std::fs::write(&p, text).map_err(|e| CliError::Input(format!("{}: {e}", p.display())))?;
                written.insert(p.display().to_string(), sha256_hex(text.as_bytes()));
            }
            emit(g, &with_meta(json!({ "kind": kind.as_str(), "r": r, "n": n, "field": q, "files": written }), cfg.seed, start, &BTreeMap::new()))?;
            Ok(0)
        }
        Command::Clifford { module, normal } => {
            let mut inp = Inputs { loader: Loader::new(&assets) };
            let v = inp.module(&module, None)?;
            let AnyGroup::Mat(ng) = inp.group(&normal)?.group else {
                return Err(CliError::Input("the normal subgroup must be a matrix group".into()));
            };
            let m_gens: Vec<Matrix> = ng.generators().to_vec();
            let opts = MeataxeOptions { seed: cfg.seed, ..MeataxeOptions::default() };
            let dec = homogeneous_components(&v, &m_gens, &opts)?;
            let blocks = imprimitivity_witness(&dec).is_some();
            // a tensor decomposition only exists for a single homogeneous component
            let tensor = match dec.k() {
                1 => tensor_factorize(&v, &dec, &opts)?.map(|t| json!({ "m1": t.m1, "m2": t.m2, "reconstructs": t.reconstructs(&v) })),
                _ => None,
            };
            let out = json!({ "components": dec.summary(), "imprimitive": blocks, "tensor_factorization": tensor });
            emit(g, &with_meta(out, cfg.seed, start, &inp.loader.hashes))?;
            Ok(0)
        }
        Command::Subdirect { count } => {
            let reports = subdirect_reports(cfg.seed, count, cfg.jobs)?;
            let holds = reports.iter().all(|r| r["report"]["holds"] == Value::Bool(true));
            println!("{} {count} seeded instances", if holds { "PASS" } else { "FAIL" });
            emit(g, &with_meta(json!({ "all_hold": holds, "instances": reports }), cfg.seed, start, &BTreeMap::new()))?;
            Ok(verdict_code(!holds))
        }
        Command::AssetVerify => {
            let rep = verify_all(&dir, cfg.coset_cap)?;
            println!("{} assets in manifest, {} files on disk", rep.manifest_entries, rep.files_on_disk);
            for f in &rep.failures {
                println!("FAIL {f}");
            }
            emit(g, &serde_json::to_value(&rep).expect("serialisable"))?;
            Ok(if rep.failures.is_empty() && rep.inventory_matches { 0 } else { 2 })
        }
        Command::Explain { id } => {
            let Some(id) = id else {
                for c in CLAIMS {
                    println!("{:<24} {}", c.id, c.statement);
                }
                return Ok(0);
            };
            let c = claims::find(&id).ok_or_else(|| CliError::Input(format!("unknown claim `{id}`; run `grpx explain` for the list")))?;
            println!("claim:      {}", c.id);
            println!("statement:  {}", c.statement);
            println!("checked by: {}", c.method);
            println!("limit:      {} s{}", c.limit_secs, if c.extended_only { " (only with --extended)" } else { "" });
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("grpx: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

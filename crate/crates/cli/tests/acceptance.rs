//! One line per acceptance criterion. Runs every claim in-process with the
//! default seed and exits nonzero if any criterion fails.

use std::time::Duration;

use grpx_cli::assets::{default_asset_dir, Assets};
use grpx_cli::cert::{Certificate, Verdict};
use grpx_cli::claims::{claims_for, find, run_claim, RunConfig};

/// Wall-clock limits on a single core.
const TABLE_ROW_LIMIT: Duration = Duration::from_secs(15 * 60);
const H2_LIMIT: Duration = Duration::from_secs(5 * 60);

struct Run {
    assets: Assets,
    config: RunConfig,
}

impl Run {
    fn claim(&self, id: &str) -> Certificate {
        let claim = find(id).unwrap_or_else(|| panic!("unknown claim {id}"));
        run_claim(claim, &self.assets, &self.config).unwrap_or_else(|e| panic!("{id}: {e}"))
    }

    /// Runs the claims and returns failure notes; `limit` bounds each one.
    fn all_pass(&self, ids: &[&str], limit: Option<Duration>) -> Vec<String> {
        let mut notes = Vec::new();
        for id in ids {
            let c = self.claim(id);
            if c.verdict != Verdict::Pass {
                notes.push(c.line());
            }
            if let Some(l) = limit {
                if c.elapsed_ms > l.as_millis() as u64 {
                    notes.push(format!("{id} took {} ms", c.elapsed_ms));
                }
            }
        }
        notes
    }
}

fn without_timing(c: &Certificate) -> String {
    let mut v = serde_json::to_value(c).unwrap();
    fn strip(v: &mut serde_json::Value) {
        match v {
            serde_json::Value::Object(m) => {
                m.remove("elapsed_ms");
                m.values_mut().for_each(strip);
            }
            serde_json::Value::Array(xs) => xs.iter_mut().for_each(strip),
            _ => {}
        }
    }
    strip(&mut v);
    v.to_string()
}

fn main() {
    let run = Run { assets: Assets::open(&default_asset_dir()).expect("asset directory"), config: RunConfig::default() };
    run.assets.check_hashes().expect("pristine assets");
    let mut results: Vec<(&str, Vec<String>)> = Vec::new();

    let mut table = run.all_pass(&["table.psl2_17", "table.psp4_3", "table.psu3_3"], Some(TABLE_ROW_LIMIT));
    let default_ids: Vec<&str> = claims_for(&run.config).iter().map(|c| c.id).collect();
    let extended = RunConfig { extended: true, ..RunConfig::default() };
    let extended_ids: Vec<&str> = claims_for(&extended).iter().map(|c| c.id).collect();
    if default_ids.contains(&"table.g2_3") || !extended_ids.contains(&"table.g2_3") {
        table.push("G2(3) row must appear only with --extended".into());
    }
    if run.claim("table.g2_3").verdict != Verdict::Skipped {
        table.push("G2(3) row must be SKIPPED".into());
    }
    results.push(("1 table: P and n for PSL2(17), PSp4(3), PSU3(3); G2(3) gated", table));

    results.push(("2 module dimensions {8} and {6}", run.all_pass(&["modules.psl2_17", "modules.psu3_3"], None)));
    results.push(("3 cohomology: H^2 = 0 for PSL2(17), nonzero for PSU3(3)", run.all_pass(&["h2.psl2_17", "h2.psu3_3"], Some(H2_LIMIT))));
    results.push(("4 split: 2^6.PSU3(3) has a complement of order 6048", run.all_pass(&["split.psu3_3"], None)));
    results.push((
        "5 symplectic-type laws, Weil representations, normaliser quotients",
        run.all_pass(&["symtype.laws", "symtype.weil", "symtype.normalizers"], None),
    ));
    results.push(("6 Feit-Tits reduction: (2,2) and (2,3)", run.all_pass(&["feit_tits.sp4_2", "feit_tits.psu3_3"], None)));
    results.push((
        "7 subdirect sums, multiplicativity for A5^2, n' <= n",
        run.all_pass(&["subdirect.seeded", "multiplicative.a5", "invariants.nprime_le_n"], None),
    ));

    let mut oracles = run.all_pass(&["oracle.meataxe", "oracle.schreier_sims", "oracle.determinism"], None);
    for id in ["split.psu3_3", "symtype.normalizers"] {
        let (a, b) = (run.claim(id), run.claim(id));
        if without_timing(&a) != without_timing(&b) || a.determinism_hash != b.determinism_hash {
            oracles.push(format!("{id} is not deterministic"));
        }
    }
    results.push(("8 oracle equivalences and determinism", oracles));

    let mut failed = 0;
    for (name, notes) in &results {
        if notes.is_empty() {
            println!("PASS criterion {name}");
        } else {
            failed += 1;
            println!("FAIL criterion {name}");
            for n in notes {
                println!("     {n}");
            }
        }
    }
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}

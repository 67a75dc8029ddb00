//! Certificates: one JSON object per claim, with fields in a fixed order and
//! a hash over everything except timings.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::Value;

use crate::assets::sha256_hex;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, Serialize, PartialEq, Eq)]
#[serde(rename_all = "UPPERCASE")]
pub enum Verdict {
    Pass,
    Fail,
    Skipped,
}

/// Fields are serialised in declaration order; maps inside `outputs` are sorted.
#[derive(Clone, Debug, Serialize)]
pub struct Certificate {
    pub schema_version: u32,
    pub claim: String,
    pub verdict: Verdict,
    pub seed: u64,
    /// Asset path to sha256.
    pub inputs: BTreeMap<String, String>,
    pub outputs: Value,
    /// Expected versus observed, present on FAIL.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub diff: Option<String>,
    /// sha256 of this certificate with `determinism_hash` and every `elapsed_ms` removed.
    pub determinism_hash: String,
    pub elapsed_ms: u64,
}

fn strip_timings(v: &mut Value) {
    match v {
        Value::Object(map) => {
            map.remove("elapsed_ms");
            map.values_mut().for_each(strip_timings);
        }
        Value::Array(xs) => xs.iter_mut().for_each(strip_timings),
        _ => {}
    }
}

impl Certificate {
    pub fn new(
        claim: &str,
        verdict: Verdict,
        seed: u64,
        inputs: BTreeMap<String, String>,
        outputs: Value,
        diff: Option<String>,
        elapsed_ms: u64,
    ) -> Certificate {
        // round-trip through Value so nested maps come out sorted
        let outputs = serde_json::from_str(&outputs.to_string()).expect("valid JSON");
        let mut c = Certificate {
            schema_version: SCHEMA_VERSION,
            claim: claim.into(),
            verdict,
            seed,
            inputs,
            outputs,
            diff,
            determinism_hash: String::new(),
            elapsed_ms,
        };
        c.determinism_hash = c.compute_hash();
        c
    }

    pub fn compute_hash(&self) -> String {
        let mut v = serde_json::to_value(self).expect("serialisable");
        if let Value::Object(map) = &mut v {
            map.remove("determinism_hash");
        }
        strip_timings(&mut v);
        sha256_hex(v.to_string().as_bytes())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serialisable")
    }

    pub fn line(&self) -> String {
        let v = match self.verdict {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::Skipped => "SKIPPED",
        };
        let mut s = format!("{v:<7} {} ({} ms)", self.claim, self.elapsed_ms);
        if let Some(d) = &self.diff {
            s.push_str(&format!(": {d}"));
        }
        s
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Bundle {
    pub schema_version: u32,
    pub seed: u64,
    pub certificates: Vec<Certificate>,
}

impl Bundle {
    pub fn new(seed: u64, certificates: Vec<Certificate>) -> Bundle {
        Bundle { schema_version: SCHEMA_VERSION, seed, certificates }
    }

    pub fn any_fail(&self) -> bool {
        self.certificates.iter().any(|c| c.verdict == Verdict::Fail)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    fn sample(elapsed: u64) -> Certificate {
        let inputs = BTreeMap::from([("a5.grp".to_string(), "00".to_string())]);
        Certificate::new("c", Verdict::Pass, 3, inputs, json!({ "z": 1, "a": { "elapsed_ms": elapsed, "b": 2 } }), None, elapsed)
    }

    #[test]
    fn hash_ignores_timings() {
        assert_eq!(sample(5).determinism_hash, sample(900).determinism_hash);
        let mut other = sample(5);
        other.seed = 4;
        assert_ne!(other.compute_hash(), sample(5).determinism_hash);
    }

    #[test]
    fn keys_come_out_in_a_fixed_order() {
        let text = sample(1).to_json();
        let keys: Vec<usize> = ["schema_version", "claim", "verdict", "seed", "inputs", "outputs", "determinism_hash", "elapsed_ms"]
            .iter()
            // the last occurrence, since `outputs` nests its own elapsed_ms
            .map(|k| text.rfind(&format!("\"{k}\"")).unwrap())
            .collect();
        assert!(keys.windows(2).all(|w| w[0] < w[1]));
        // nested maps are sorted
        assert!(text.find("\"a\"").unwrap() < text.find("\"z\"").unwrap());
        assert!(!text.contains("\"diff\""));
    }
}

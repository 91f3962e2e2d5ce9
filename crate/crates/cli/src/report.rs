use std::collections::BTreeMap;
use std::fmt::Write;

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};
use unisets::{GroupSpec, Verdict, VerifyMode};

use crate::exit;

pub const SCHEMA: &str = "unisets.run-report/1";

/// Comparison of an achieved value against a bound.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundComparison {
    pub name: String,
    /// `upper` or `lower`.
    pub kind: String,
    pub bound: f64,
    pub achieved: f64,
    /// `achieved / bound`, absent when the bound is not positive.
    pub ratio: Option<f64>,
    /// Whether the construction guarantees the bound at this instance.
    pub guaranteed: Option<bool>,
}

impl BoundComparison {
    pub fn new(name: &str, kind: &str, bound: f64, achieved: f64, guaranteed: Option<bool>) -> Self {
        Self {
            name: name.into(),
            kind: kind.into(),
            bound,
            achieved,
            ratio: (bound > 0.0).then(|| achieved / bound),
            guaranteed,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub schema: String,
    pub command: String,
    pub group: Option<GroupSpec>,
    pub parameters: Map<String, Value>,
    pub sizes: BTreeMap<String, u64>,
    pub bounds: Vec<BoundComparison>,
    pub verdicts: BTreeMap<String, Verdict>,
    /// Deterministic properties that must hold.
    pub checks: BTreeMap<String, bool>,
    pub seed: Option<u64>,
    pub wall_time_ms: f64,
    pub exit_code: u8,
    /// Full construction output.
    pub result: Value,
}

impl RunReport {
    pub fn new(command: &str, group: Option<GroupSpec>, seed: Option<u64>) -> Self {
        Self {
            schema: SCHEMA.into(),
            command: command.into(),
            group,
            parameters: Map::new(),
            sizes: BTreeMap::new(),
            bounds: Vec::new(),
            verdicts: BTreeMap::new(),
            checks: BTreeMap::new(),
            seed,
            wall_time_ms: 0.0,
            exit_code: exit::VERIFIED,
            result: Value::Null,
        }
    }

    pub fn param(&mut self, key: &str, v: impl Serialize) {
        self.parameters
            .insert(key.into(), serde_json::to_value(v).expect("parameter serializes"));
    }

    /// 3 if anything failed, 1 if anything was only sampled, else 0.
    pub fn settle(&mut self) {
        let failed = self.verdicts.values().any(|v| !v.pass) || self.checks.values().any(|&c| !c);
        let sampled = self.verdicts.values().any(|v| v.mode == VerifyMode::Sampled);
        self.exit_code = if failed {
            exit::VERIFICATION_FAILED
        } else if sampled {
            exit::SAMPLED_ONLY
        } else {
            exit::VERIFIED
        };
    }

    /// Copy with the wall time zeroed, for replay comparisons.
    pub fn without_timing(&self) -> Self {
        Self { wall_time_ms: 0.0, ..self.clone() }
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let group = self.group.as_ref().map(ToString::to_string).unwrap_or_else(|| "-".into());
        let _ = writeln!(s, "{} on {group}", self.command);
        for (k, v) in &self.parameters {
            let _ = writeln!(s, "  {k} = {v}");
        }
        for (k, v) in &self.sizes {
            let _ = writeln!(s, "  |{k}| = {v}");
        }
        for b in &self.bounds {
            let ratio = b.ratio.map(|r| format!("{r:.3}")).unwrap_or_else(|| "-".into());
            let g = match b.guaranteed {
                Some(true) => " (guaranteed)",
                Some(false) => " (not guaranteed)",
                None => "",
            };
            let _ = writeln!(
                s,
                "  {} {} bound {:.3}, achieved {}, ratio {ratio}{g}",
                b.name, b.kind, b.bound, b.achieved
            );
        }
        for (k, v) in &self.verdicts {
            let mode = match v.mode {
                VerifyMode::Exact => "exact".to_string(),
                VerifyMode::Sampled => format!(
                    "sampled, {} trials, miss bound {:.2e}",
                    v.trials.unwrap_or(0),
                    v.failure_bound.unwrap_or(1.0)
                ),
            };
            let status = if v.pass { "pass" } else { "FAIL" };
            let witness = v.witness.as_ref().map(|w| format!(" witness {w:?}")).unwrap_or_default();
            let _ = writeln!(s, "  verify {k}: {status} ({mode}){witness}");
        }
        for (k, v) in &self.checks {
            let _ = writeln!(s, "  check {k}: {}", if *v { "pass" } else { "FAIL" });
        }
        if let Some(seed) = self.seed {
            let _ = writeln!(s, "  seed {seed}");
        }
        let _ = writeln!(s, "  wall time {:.1} ms, exit {}", self.wall_time_ms, self.exit_code);
        s
    }
}

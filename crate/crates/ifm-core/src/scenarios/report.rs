//! Serializable scenario reports and their text renderings.
//!
//! The JSON shape is fixed: top-level keys `scenario`, `backend`, `joint`
//! (list of `{photon, spins, p_exact, p_decimal}`) and `conditionals` (map).
//! CSV carries the joint with header `photon,spins,p_exact,p_decimal`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::amplitude::BackendKind;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct JointEntry {
    pub photon: String,
    pub spins: String,
    pub p_exact: String,
    pub p_decimal: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CondEntry {
    pub p_exact: String,
    pub p_decimal: f64,
}

/// A finished experiment report. The serialized form exposes exactly the
/// published JSON schema; checks, notes and stage dumps are table-only.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ScenarioResult {
    pub scenario: String,
    pub backend: BackendKind,
    pub joint: Vec<JointEntry>,
    pub conditionals: BTreeMap<String, CondEntry>,
    #[serde(skip)]
    pub checks: BTreeMap<String, bool>,
    #[serde(skip)]
    pub notes: Vec<String>,
    #[serde(skip)]
    pub stage_dumps: Vec<(String, String)>,
}

pub(crate) fn round6(v: f64) -> f64 {
    (v * 1e6).round() / 1e6
}

impl ScenarioResult {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("photon,spins,p_exact,p_decimal\n");
        for e in &self.joint {
            let _ = writeln!(out, "{},{},{},{:.6}", e.photon, e.spins, e.p_exact, e.p_decimal);
        }
        out
    }

    pub fn to_table(&self, include_dumps: bool) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "scenario: {}", self.scenario);
        let _ = writeln!(out, "backend: {}", self.backend);
        let _ = writeln!(out, "joint distribution:");
        let mut total = 0.0;
        for e in &self.joint {
            total += e.p_decimal;
            if e.spins.chars().all(|c| c == '?') {
                let _ = writeln!(out, "  P({}) = {} = {:.6}", e.photon, e.p_exact, e.p_decimal);
            } else {
                let _ = writeln!(
                    out,
                    "  P({} AND {}) = {} = {:.6}",
                    e.photon, e.spins, e.p_exact, e.p_decimal
                );
            }
        }
        let _ = writeln!(out, "  total = {:.6}", round6(total));
        if !self.conditionals.is_empty() {
            let _ = writeln!(out, "conditionals:");
            for (name, c) in &self.conditionals {
                let _ = writeln!(out, "  {} = {} = {:.6}", name, c.p_exact, c.p_decimal);
            }
        }
        if !self.checks.is_empty() {
            let _ = writeln!(out, "checks:");
            for (name, ok) in &self.checks {
                let _ = writeln!(out, "  {}: {}", name, if *ok { "ok" } else { "FAILED" });
            }
        }
        for note in &self.notes {
            let _ = writeln!(out, "note: {note}");
        }
        if include_dumps {
            for (stage, dump) in &self.stage_dumps {
                let _ = writeln!(out, "state after {stage}:");
                for line in dump.lines() {
                    let _ = writeln!(out, "  {line}");
                }
            }
        }
        out
    }

    /// True when every check passed (vacuously true without checks).
    pub fn all_checks_pass(&self) -> bool {
        self.checks.values().all(|ok| *ok)
    }
}

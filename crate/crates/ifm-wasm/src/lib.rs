//! Browser bindings for the interferometer/atom-row simulator.
//!
//! Three entry points back the demo page in `www/`:
//! [`run_builtin_json`] for the named experiments, [`run_program_json`] for
//! the experiment language playground, and [`sweep_json`] for the
//! selected-atom scaling curve. Everything returns JSON strings so the page
//! needs no generated glue beyond wasm-bindgen's own.
//!
//! Build with `wasm-pack build --target web crates/ifm-wasm` and serve the
//! `www/` directory next to the generated `pkg/`.

use wasm_bindgen::prelude::*;

use ifm_core::amplitude::{Amplitude, CycloAmp, FloatAmp};
use ifm_core::dsl;
use ifm_core::scenarios::{
    run_hardy, run_n_atom_row, run_select_atom, sweep_right_atom, ScenarioRun, SWEEP_MAX_ATOMS,
};

fn err_json(message: &str) -> String {
    serde_json::json!({ "error": message }).to_string()
}

fn report_json<A: Amplitude>(run: &ScenarioRun<A>) -> String {
    let report = run.report();
    let mut doc = serde_json::to_value(&report).expect("report serializes");
    // The page also shows checks and notes, which the wire schema omits.
    doc["checks"] = serde_json::to_value(&report.checks).expect("checks serialize");
    doc["notes"] = serde_json::to_value(&report.notes).expect("notes serialize");
    doc.to_string()
}

fn run_builtin_backend<A: Amplitude>(
    kind: &str,
    n: usize,
    m: usize,
) -> Result<ScenarioRun<A>, String> {
    let bound = |v: usize| (1..=SWEEP_MAX_ATOMS).contains(&v);
    match kind {
        "hardy" => Ok(run_hardy(false)),
        "hardy-blocked" => Ok(run_hardy(true)),
        "row-n" | "row-n-blocked" if !bound(n) => {
            Err(format!("n must be in 1..={SWEEP_MAX_ATOMS}"))
        }
        "row-n" => Ok(run_n_atom_row(n, false)),
        "row-n-blocked" => Ok(run_n_atom_row(n, true)),
        "select" if !bound(n) => Err(format!("n must be in 1..={SWEEP_MAX_ATOMS}")),
        "select" if !(1..=n).contains(&m) => Err("m must be in 1..=n".to_string()),
        "select" => Ok(run_select_atom(n, m)),
        other => Err(format!("unknown builtin `{other}`")),
    }
}

/// Runs a named built-in experiment and returns its report as JSON
/// (`scenario`, `backend`, `joint`, `conditionals`, plus `checks`/`notes`).
#[wasm_bindgen]
pub fn run_builtin_json(kind: &str, n: usize, m: usize, float_backend: bool) -> String {
    let result = if float_backend {
        run_builtin_backend::<FloatAmp>(kind, n, m).map(|run| report_json(&run))
    } else {
        run_builtin_backend::<CycloAmp>(kind, n, m).map(|run| report_json(&run))
    };
    result.unwrap_or_else(|e| err_json(&e))
}

/// Parses, checks and runs an experiment program. On success returns the
/// report JSON; on failure `{ "diagnostics": [{line, col, severity, message}] }`.
#[wasm_bindgen]
pub fn run_program_json(source: &str) -> String {
    let diag_doc = |ds: Vec<dsl::ParseDiagnostic>| {
        let list: Vec<_> = ds
            .iter()
            .map(|d| {
                serde_json::json!({
                    "line": d.line,
                    "col": d.col,
                    "severity": d.severity.to_string(),
                    "message": d.message,
                })
            })
            .collect();
        serde_json::json!({ "diagnostics": list }).to_string()
    };
    let ast = match dsl::parse(source) {
        Ok(ast) => ast,
        Err(ds) => return diag_doc(ds),
    };
    let ops = match dsl::compile(&ast) {
        Ok(ops) => ops,
        Err(ds) => return diag_doc(ds),
    };
    match dsl::execute::<CycloAmp>(&ops, "program") {
        Ok(run) => report_json(&run),
        Err(e) => err_json(&e.to_string()),
    }
}

/// Sweeps the selected-atom conditional for n = 1..=n_max; returns rows of
/// `{n, engine, oracle, formula}` with exact strings and decimals.
#[wasm_bindgen]
pub fn sweep_json(n_max: usize) -> String {
    if !(1..=SWEEP_MAX_ATOMS).contains(&n_max) {
        return err_json(&format!("n_max must be in 1..={SWEEP_MAX_ATOMS}"));
    }
    let rows: Vec<_> = sweep_right_atom(n_max)
        .iter()
        .map(|row| {
            serde_json::json!({
                "n": row.n,
                "engine": { "exact": row.engine.exact_string(), "decimal": row.engine.to_f64() },
                "oracle": { "exact": row.oracle.exact_string(), "decimal": row.oracle.to_f64() },
                "formula": { "exact": row.formula.exact_string(), "decimal": row.formula.to_f64() },
                "engine_matches_oracle": row.engine_matches_oracle(),
            })
        })
        .collect();
    serde_json::json!({ "n_max": n_max, "rows": rows }).to_string()
}

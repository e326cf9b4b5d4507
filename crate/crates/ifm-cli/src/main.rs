//! Command-line front end: run experiment programs or named built-in
//! scenarios, sweep the atom count, and cross-check the engine against the
//! brute-force path oracle.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{rngs::StdRng, Rng, SeedableRng};

use ifm_core::amplitude::{Amplitude, CycloAmp, FloatAmp, QuadReal};
use ifm_core::dsl;
use ifm_core::engine::{PhotonMode, SpinConfig};
use ifm_core::scenarios::{
    self, oracle, run_hardy, run_n_atom_row, run_select_atom, sweep_right_atom, ScenarioResult,
    ScenarioRun, SweepRow, SWEEP_MAX_ATOMS,
};

/// Full-joint oracle comparisons spread every path over the terminal
/// outcomes, so they stay bounded while the z-stage layer covers large n.
const TERMINAL_ORACLE_MAX: usize = 10;
const SELECT_ORACLE_MAX: usize = 8;

#[derive(Parser)]
#[command(name = "ifm", version, about = "Exact interferometer/atom-row experiment simulator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run an .ifm program or a named built-in scenario.
    Run(RunArgs),
    /// Sweep the selected-atom conditional over n = 1..=n-max.
    Sweep(SweepArgs),
    /// Exact engine-vs-oracle equality over the built-in scenarios.
    OracleCheck(OracleCheckArgs),
}

#[derive(Args)]
struct RunArgs {
    /// Experiment program file (.ifm).
    input: Option<PathBuf>,
    /// Built-in scenario instead of a program file.
    #[arg(long, value_enum)]
    builtin: Option<Builtin>,
    /// Atom count for row-n / row-n-blocked / select.
    #[arg(long)]
    n: Option<usize>,
    /// Selected atom index for select.
    #[arg(long)]
    m: Option<usize>,
    #[arg(long, value_enum, default_value_t = Backend::Exact)]
    backend: Backend,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Monte-Carlo sample count (float backend, table format).
    #[arg(long)]
    samples: Option<u64>,
    /// RNG seed for sampling; omit for a fresh seed per run.
    #[arg(long)]
    seed: Option<u64>,
    /// Include per-stage state dumps in table output.
    #[arg(long)]
    dump_states: bool,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long)]
    n_max: usize,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
}

#[derive(Args)]
struct OracleCheckArgs {
    #[arg(long, default_value_t = 6)]
    n_max: usize,
    /// Test hook: deliberately perturb the engine's distribution so the
    /// mismatch path is exercised.
    #[arg(long, hide = true)]
    perturb_engine: bool,
}

#[derive(ValueEnum, Clone, Copy, PartialEq, Eq)]
enum Builtin {
    Hardy,
    HardyBlocked,
    RowN,
    RowNBlocked,
    Select,
}

#[derive(ValueEnum, Clone, Copy, PartialEq, Eq)]
enum Backend {
    Exact,
    Float,
}

#[derive(ValueEnum, Clone, Copy, PartialEq, Eq)]
enum Format {
    Table,
    Json,
    Csv,
}

enum CliError {
    /// Bad configuration, unreadable input, program diagnostics, or an
    /// engine/oracle mismatch.
    Usage(String),
    /// The engine broke one of its own guarantees.
    Internal(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Internal(_) => 2,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Internal(m) => m,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Run(args) => cmd_run(args),
        Command::Sweep(args) => cmd_sweep(args),
        Command::OracleCheck(args) => cmd_oracle_check(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{}", e.message());
            ExitCode::from(e.code())
        }
    }
}

enum Input {
    Builtin(Builtin, usize, usize),
    Program(PathBuf),
}

fn resolve_input(args: &RunArgs) -> Result<Input, CliError> {
    match (&args.input, args.builtin) {
        (Some(_), Some(_)) => Err(CliError::Usage(
            "give either a program file or --builtin, not both".into(),
        )),
        (None, None) => Err(CliError::Usage(
            "nothing to run: give a program file or --builtin".into(),
        )),
        (Some(path), None) => Ok(Input::Program(path.clone())),
        (None, Some(builtin)) => {
            let need_n = matches!(builtin, Builtin::RowN | Builtin::RowNBlocked | Builtin::Select);
            let n = match (need_n, args.n) {
                (true, None) => {
                    return Err(CliError::Usage("this builtin requires --n".into()));
                }
                (true, Some(n)) => {
                    if !(1..=SWEEP_MAX_ATOMS).contains(&n) {
                        return Err(CliError::Usage(format!(
                            "--n must be in 1..={SWEEP_MAX_ATOMS}"
                        )));
                    }
                    n
                }
                (false, _) => 1,
            };
            let m = if builtin == Builtin::Select {
                match args.m {
                    None => return Err(CliError::Usage("select requires --m".into())),
                    Some(m) if (1..=n).contains(&m) => m,
                    Some(_) => {
                        return Err(CliError::Usage("--m must be in 1..=n".into()));
                    }
                }
            } else {
                1
            };
            Ok(Input::Builtin(builtin, n, m))
        }
    }
}

fn run_input<A: Amplitude>(input: &Input) -> Result<ScenarioRun<A>, CliError> {
    match input {
        Input::Builtin(builtin, n, m) => Ok(match builtin {
            Builtin::Hardy => run_hardy(false),
            Builtin::HardyBlocked => run_hardy(true),
            Builtin::RowN => run_n_atom_row(*n, false),
            Builtin::RowNBlocked => run_n_atom_row(*n, true),
            Builtin::Select => run_select_atom(*n, *m),
        }),
        Input::Program(path) => {
            let display = path.display().to_string();
            let source = std::fs::read_to_string(path)
                .map_err(|e| CliError::Usage(format!("{display}: {e}")))?;
            let ast = dsl::parse(&source).map_err(|ds| diagnostics_error(&display, ds))?;
            let ops = dsl::compile(&ast).map_err(|ds| diagnostics_error(&display, ds))?;
            let name = path
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_else(|| "program".into());
            dsl::execute(&ops, &name)
                .map_err(|e| CliError::Internal(format!("{display}: engine error: {e}")))
        }
    }
}

fn diagnostics_error(file: &str, diagnostics: Vec<dsl::ParseDiagnostic>) -> CliError {
    let mut out = String::new();
    for d in diagnostics {
        let _ = writeln!(out, "{file}:{d}");
    }
    out.pop();
    CliError::Usage(out)
}

fn checked_report<A: Amplitude>(run: &ScenarioRun<A>) -> Result<ScenarioResult, CliError> {
    if !run.is_normalized() {
        return Err(CliError::Internal(format!(
            "internal invariant violation: joint distribution of {} does not sum to 1",
            run.scenario
        )));
    }
    let report = run.report();
    if !report.all_checks_pass() {
        return Err(CliError::Internal(format!(
            "internal invariant violation: reference-state check failed in {}",
            run.scenario
        )));
    }
    Ok(report)
}

fn cmd_run(args: RunArgs) -> Result<(), CliError> {
    let input = resolve_input(&args)?;
    if args.samples.is_some() {
        if args.backend != Backend::Float {
            return Err(CliError::Usage("--samples requires --backend float".into()));
        }
        if args.format != Format::Table {
            return Err(CliError::Usage("--samples output is table-only".into()));
        }
    }
    if args.seed.is_some() && args.samples.is_none() {
        return Err(CliError::Usage("--seed only applies with --samples".into()));
    }
    match args.backend {
        Backend::Exact => {
            let run = run_input::<CycloAmp>(&input)?;
            let report = checked_report(&run)?;
            print_report(&report, args.format, args.dump_states);
        }
        Backend::Float => {
            let run = run_input::<FloatAmp>(&input)?;
            let report = checked_report(&run)?;
            print_report(&report, args.format, args.dump_states);
            if let Some(samples) = args.samples {
                print_sampling(&run, &report, samples, args.seed);
            }
        }
    }
    Ok(())
}

fn print_report(report: &ScenarioResult, format: Format, dump_states: bool) {
    match format {
        Format::Table => print!("{}", report.to_table(dump_states)),
        Format::Csv => print!("{}", report.to_csv()),
        Format::Json => {
            println!(
                "{}",
                serde_json::to_string_pretty(report).expect("report serializes")
            );
        }
    }
}

fn print_sampling(
    run: &ScenarioRun<FloatAmp>,
    report: &ScenarioResult,
    samples: u64,
    seed: Option<u64>,
) {
    let mut rng = match seed {
        Some(s) => StdRng::seed_from_u64(s),
        None => StdRng::from_os_rng(),
    };
    let entries: Vec<(String, f64)> = run
        .joint
        .iter()
        .map(|(l, p)| (format!("{} {}", l.photon, l.spins_string()), *p))
        .collect();
    let mut counts: BTreeMap<&str, u64> = BTreeMap::new();
    for _ in 0..samples {
        let mut u: f64 = rng.random();
        let mut chosen = entries.last().map(|(l, _)| l.as_str()).unwrap_or("");
        for (label, p) in &entries {
            if u < *p {
                chosen = label;
                break;
            }
            u -= p;
        }
        *counts.entry(chosen).or_insert(0) += 1;
    }
    println!("sampled {samples} runs (float backend):");
    for e in &report.joint {
        let label = if e.spins.is_empty() {
            e.photon.clone()
        } else {
            format!("{} {}", e.photon, e.spins)
        };
        let count = counts.get(label.as_str()).copied().unwrap_or(0);
        println!(
            "  {} count={} empirical={:.6} exact={:.6}",
            label,
            count,
            count as f64 / samples as f64,
            e.p_decimal
        );
    }
}

fn cmd_sweep(args: SweepArgs) -> Result<(), CliError> {
    if !(1..=SWEEP_MAX_ATOMS).contains(&args.n_max) {
        return Err(CliError::Usage(format!("--n-max must be in 1..={SWEEP_MAX_ATOMS}")));
    }
    let rows = sweep_right_atom(args.n_max);
    match args.format {
        Format::Table => {
            println!("{:<4} {:<24} {:<24} {:<24}", "n", "engine", "oracle", "closed-form");
            for row in &rows {
                println!(
                    "{:<4} {:<24} {:<24} {:<24}",
                    row.n,
                    render_ratio(&row.engine),
                    render_ratio(&row.oracle),
                    render_ratio(&row.formula),
                );
            }
            println!(
                "note: the closed-form column (2^(n-1)+1)/2^n diverges from the exact \
                 conditional (5/8 vs 4/7 at n=3); engine and oracle are compared exactly."
            );
        }
        Format::Csv => {
            println!(
                "n,engine_exact,engine_decimal,oracle_exact,oracle_decimal,formula_exact,formula_decimal"
            );
            for row in &rows {
                println!(
                    "{},{},{:.6},{},{:.6},{},{:.6}",
                    row.n,
                    row.engine.exact_string(),
                    row.engine.to_f64(),
                    row.oracle.exact_string(),
                    row.oracle.to_f64(),
                    row.formula.exact_string(),
                    row.formula.to_f64(),
                );
            }
        }
        Format::Json => {
            let rows: Vec<serde_json::Value> = rows.iter().map(sweep_row_json).collect();
            let doc = serde_json::json!({ "n_max": args.n_max, "rows": rows });
            println!("{}", serde_json::to_string_pretty(&doc).expect("sweep serializes"));
        }
    }
    for row in &rows {
        if !row.engine_matches_oracle() {
            return Err(CliError::Usage(format!(
                "engine and oracle disagree at n={}: {} vs {}",
                row.n,
                row.engine.exact_string(),
                row.oracle.exact_string()
            )));
        }
    }
    Ok(())
}

fn render_ratio(r: &ifm_core::amplitude::Ratio<QuadReal>) -> String {
    format!("{} = {:.6}", r.exact_string(), r.to_f64())
}

fn sweep_row_json(row: &SweepRow) -> serde_json::Value {
    let pair = |r: &ifm_core::amplitude::Ratio<QuadReal>| {
        serde_json::json!({ "exact": r.exact_string(), "decimal": (r.to_f64() * 1e6).round() / 1e6 })
    };
    serde_json::json!({
        "n": row.n,
        "engine": pair(&row.engine),
        "oracle": pair(&row.oracle),
        "formula": pair(&row.formula),
        "engine_matches_oracle": row.engine_matches_oracle(),
    })
}

fn cmd_oracle_check(args: OracleCheckArgs) -> Result<(), CliError> {
    if !(1..=SWEEP_MAX_ATOMS).contains(&args.n_max) {
        return Err(CliError::Usage(format!("--n-max must be in 1..={SWEEP_MAX_ATOMS}")));
    }
    let mut compared = 0usize;
    // Closed-box (z-stage) joints for every n: cheap path enumeration.
    for n in 1..=args.n_max {
        for obstacle in [false, true] {
            let mut engine = scenarios::engine_z_stage_joint::<CycloAmp>(n, obstacle);
            if args.perturb_engine {
                if let Some(v) = engine.values_mut().next() {
                    *v = *v + QuadReal::dyadic(1, 10);
                }
            }
            let reference = oracle::z_stage_joint(n, obstacle);
            if engine != reference {
                let label = first_difference_z(&engine, &reference, n);
                return Err(CliError::Usage(format!(
                    "engine differs from oracle (stage joint, n={n}, obstacle={obstacle}) at {label}"
                )));
            }
            compared += 1;
        }
    }
    // Terminal joints where the spread enumeration stays small.
    for n in 1..=args.n_max.min(TERMINAL_ORACLE_MAX) {
        for obstacle in [false, true] {
            let engine = if n == 1 {
                run_hardy::<CycloAmp>(obstacle).joint
            } else {
                run_n_atom_row::<CycloAmp>(n, obstacle).joint
            };
            let reference = oracle::terminal_joint_row(n, obstacle);
            if engine != reference {
                let label = first_difference_terminal(&engine, &reference);
                return Err(CliError::Usage(format!(
                    "engine differs from oracle (terminal joint, n={n}, obstacle={obstacle}) at {label}"
                )));
            }
            compared += 1;
        }
    }
    for n in 1..=args.n_max.min(SELECT_ORACLE_MAX) {
        for m in 1..=n {
            let engine = run_select_atom::<CycloAmp>(n, m).joint;
            let reference = oracle::terminal_joint_select(n, m);
            if engine != reference {
                let label = first_difference_terminal(&engine, &reference);
                return Err(CliError::Usage(format!(
                    "engine differs from oracle (selection joint, n={n}, m={m}) at {label}"
                )));
            }
            compared += 1;
        }
    }
    println!(
        "oracle-check: {compared} joint distributions agree exactly (n = 1..={})",
        args.n_max
    );
    Ok(())
}

fn first_difference_z(
    a: &BTreeMap<(PhotonMode, u32), QuadReal>,
    b: &BTreeMap<(PhotonMode, u32), QuadReal>,
    n: usize,
) -> String {
    let keys: std::collections::BTreeSet<_> = a.keys().chain(b.keys()).collect();
    for key in keys {
        if a.get(key) != b.get(key) {
            return format!("photon={} spins={}", key.0, SpinConfig::from_bits(key.1).render(n));
        }
    }
    "<none>".into()
}

fn first_difference_terminal(
    a: &BTreeMap<scenarios::OutcomeLabel, QuadReal>,
    b: &BTreeMap<scenarios::OutcomeLabel, QuadReal>,
) -> String {
    let keys: std::collections::BTreeSet<_> = a.keys().chain(b.keys()).collect();
    for key in keys {
        if a.get(key) != b.get(key) {
            return key.to_string();
        }
    }
    "<none>".into()
}

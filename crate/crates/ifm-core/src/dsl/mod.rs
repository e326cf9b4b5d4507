//! A line-oriented experiment description language.
//!
//! One statement per line, lowercase keywords, `#` comments, ASCII only:
//!
//! ```text
//! atoms 3
//! split src -> u v      # u is the reflected arm, v the transmitted one
//! cross v 1
//! cross v 2
//! cross v 3
//! block v
//! merge u v -> c d
//! measure 1 x
//! ```
//!
//! Programs parse to an [`ExperimentAst`], are semantically checked and
//! compiled to engine operations ([`compile`]), and run by a small branching
//! executor ([`execute`]) that follows the same outcome-space convention as
//! the programmatic scenario builders.

mod compile;
mod exec;
mod parse;

pub use compile::{compile, EngineOp};
pub use exec::execute;
pub use parse::parse;

use std::fmt;

use crate::engine::SpinBasis;

/// File extension used for experiment programs.
pub const FILE_EXTENSION: &str = "ifm";

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Statement {
    /// `atoms <n>` — exactly one, first statement.
    Atoms { n: usize },
    /// `split <in> -> <out1> <out2>` — photon splitter; the first listed
    /// output is the reflected arm (amplitude i/√2), the second the
    /// transmitted arm (1/√2), which is where crossed atoms sit.
    Split { input: String, out1: String, out2: String },
    /// `cross <mode> <atom>` — the atom's intersecting box straddles the mode.
    Cross { mode: String, atom: usize },
    /// `block <mode>` — macroscopic obstacle across the mode.
    Block { mode: String },
    /// `merge <in1> <in2> -> <out1> <out2>` — recombining splitter;
    /// `<in1>` transmits into `<out1>` and reflects into `<out2>`.
    Merge { in1: String, in2: String, out1: String, out2: String },
    /// `postselect <mode>` — keep only runs with the photon in this mode.
    Postselect { mode: String },
    /// `measure <atom> <z|x> [keep <+|->]` — spin measurement, optionally
    /// proceeding only on the given outcome.
    Measure { atom: usize, basis: SpinBasis, keep: Option<bool> },
    /// `reverse <atom>` — apply the reverse field to one atom.
    Reverse { atom: usize },
}

impl fmt::Display for Statement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Statement::Atoms { n } => write!(f, "atoms {n}"),
            Statement::Split { input, out1, out2 } => write!(f, "split {input} -> {out1} {out2}"),
            Statement::Cross { mode, atom } => write!(f, "cross {mode} {atom}"),
            Statement::Block { mode } => write!(f, "block {mode}"),
            Statement::Merge { in1, in2, out1, out2 } => {
                write!(f, "merge {in1} {in2} -> {out1} {out2}")
            }
            Statement::Postselect { mode } => write!(f, "postselect {mode}"),
            Statement::Measure { atom, basis, keep } => {
                write!(f, "measure {atom} {}", basis.to_string().to_lowercase())?;
                if let Some(plus) = keep {
                    write!(f, " keep {}", if *plus { '+' } else { '-' })?;
                }
                Ok(())
            }
            Statement::Reverse { atom } => write!(f, "reverse {atom}"),
        }
    }
}

/// A statement with its source line (1-based).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Located {
    pub statement: Statement,
    pub line: usize,
}

/// Parsed experiment program.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExperimentAst {
    pub statements: Vec<Located>,
}

impl ExperimentAst {
    /// Canonical source rendering; reparsing yields an equal AST.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for s in &self.statements {
            out.push_str(&s.statement.to_string());
            out.push('\n');
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Severity {
    Error,
    Warning,
}

impl fmt::Display for Severity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Severity::Error => write!(f, "error"),
            Severity::Warning => write!(f, "warning"),
        }
    }
}

/// A parse or semantic problem, pointing at the offending token's line and
/// column (1-based). Displays as `line:col: severity: message`; front ends
/// prepend the file name.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseDiagnostic {
    pub line: usize,
    pub col: usize,
    pub severity: Severity,
    pub message: String,
}

impl ParseDiagnostic {
    pub fn error(line: usize, col: usize, message: impl Into<String>) -> Self {
        ParseDiagnostic { line, col, severity: Severity::Error, message: message.into() }
    }
}

impl fmt::Display for ParseDiagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}: {}", self.line, self.col, self.severity, self.message)
    }
}

//! Semantic checking and compilation to engine operations.

use std::collections::BTreeMap;

use crate::engine::{PhotonMode, SpinBasis};

use super::{ExperimentAst, ParseDiagnostic, Statement};

/// One step of a compiled experiment, executed against the state engine.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EngineOp {
    Prepare { n_atoms: usize },
    BeamSplitter {
        in1: PhotonMode,
        in2: Option<PhotonMode>,
        out1: PhotonMode,
        out2: PhotonMode,
    },
    Interact { atom: usize },
    Obstacle,
    Postselect { mode: PhotonMode },
    Measure { atom: usize, basis: SpinBasis, keep: Option<bool> },
    Reverse { atom: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum ModeStatus {
    Live,
    Consumed,
}

struct Checker {
    n_atoms: usize,
    modes: BTreeMap<String, (PhotonMode, ModeStatus)>,
    split_done: bool,
    merge_done: bool,
    blocked_used: bool,
    crossed: Vec<bool>,
    postselect_in_stage: bool,
    ops: Vec<EngineOp>,
    diagnostics: Vec<ParseDiagnostic>,
}

impl Checker {
    fn err(&mut self, line: usize, message: impl Into<String>) {
        self.diagnostics.push(ParseDiagnostic::error(line, 1, message));
    }

    fn live_mode(&mut self, line: usize, name: &str) -> Option<PhotonMode> {
        match self.modes.get(name) {
            Some((mode, ModeStatus::Live)) => Some(*mode),
            Some((_, ModeStatus::Consumed)) => {
                self.err(line, format!("mode `{name}` already consumed"));
                None
            }
            None => {
                self.err(line, format!("undefined mode `{name}`"));
                None
            }
        }
    }

    fn define(&mut self, line: usize, name: &str, mode: PhotonMode) {
        if self.modes.contains_key(name) {
            self.err(line, format!("mode `{name}` redefined"));
        } else {
            self.modes.insert(name.to_string(), (mode, ModeStatus::Live));
        }
    }

    fn consume(&mut self, name: &str) {
        if let Some(entry) = self.modes.get_mut(name) {
            entry.1 = ModeStatus::Consumed;
        }
    }

    fn atom_in_range(&mut self, line: usize, atom: usize, what: &str) -> bool {
        if atom == 0 || atom > self.n_atoms {
            self.err(
                line,
                format!("{what} atom {atom} out of range (program declares {} atoms)", self.n_atoms),
            );
            false
        } else {
            true
        }
    }
}

/// Checks mode liveness, atom ranges and single-use channels, then emits the
/// engine operation sequence in source order.
pub fn compile(ast: &ExperimentAst) -> Result<Vec<EngineOp>, Vec<ParseDiagnostic>> {
    let mut c = Checker {
        n_atoms: 0,
        modes: BTreeMap::new(),
        split_done: false,
        merge_done: false,
        blocked_used: false,
        crossed: Vec::new(),
        postselect_in_stage: false,
        ops: Vec::new(),
        diagnostics: Vec::new(),
    };
    let mut statements = ast.statements.iter();
    match statements.next() {
        Some(located) => {
            if let Statement::Atoms { n } = located.statement {
                c.n_atoms = n;
                c.crossed = vec![false; n];
                c.ops.push(EngineOp::Prepare { n_atoms: n });
            } else {
                c.err(located.line, "first statement must declare `atoms <n>`");
            }
        }
        None => {
            c.err(1, "empty program: `atoms <n>` expected");
        }
    }
    for located in statements {
        let line = located.line;
        match &located.statement {
            Statement::Atoms { .. } => {
                c.err(line, "duplicate `atoms` declaration");
            }
            Statement::Split { input, out1, out2 } => {
                if c.split_done {
                    c.err(line, "only one splitting stage is supported");
                    continue;
                }
                c.split_done = true;
                c.postselect_in_stage = false;
                // The split's input names the photon source.
                c.define(line, input, PhotonMode::Source);
                c.consume(input);
                if out1 == out2 {
                    c.err(line, format!("mode `{out1}` redefined"));
                    continue;
                }
                c.define(line, out1, PhotonMode::U);
                c.define(line, out2, PhotonMode::V);
                c.ops.push(EngineOp::BeamSplitter {
                    in1: PhotonMode::Source,
                    in2: None,
                    out1: PhotonMode::V,
                    out2: PhotonMode::U,
                });
            }
            Statement::Cross { mode, atom } => {
                let Some(engine_mode) = c.live_mode(line, mode) else { continue };
                if engine_mode != PhotonMode::V {
                    c.err(
                        line,
                        format!("intersecting boxes sit on the transmitted arm, not `{mode}`"),
                    );
                    continue;
                }
                if !c.atom_in_range(line, *atom, "crossed") {
                    continue;
                }
                if c.crossed[*atom - 1] {
                    c.err(line, format!("absorption channel for atom {atom} already used"));
                    continue;
                }
                c.crossed[*atom - 1] = true;
                c.ops.push(EngineOp::Interact { atom: *atom });
            }
            Statement::Block { mode } => {
                let Some(engine_mode) = c.live_mode(line, mode) else { continue };
                if engine_mode != PhotonMode::V {
                    c.err(line, format!("the obstacle sits on the transmitted arm, not `{mode}`"));
                    continue;
                }
                if c.blocked_used {
                    c.err(line, "blocked channel already used");
                    continue;
                }
                c.blocked_used = true;
                c.ops.push(EngineOp::Obstacle);
            }
            Statement::Merge { in1, in2, out1, out2 } => {
                if c.merge_done {
                    c.err(line, "only one merging stage is supported");
                    continue;
                }
                let (Some(m1), Some(m2)) = (c.live_mode(line, in1), c.live_mode(line, in2)) else {
                    continue;
                };
                if !matches!((m1, m2), (PhotonMode::U, PhotonMode::V) | (PhotonMode::V, PhotonMode::U))
                {
                    c.err(line, "merge inputs must be the two interferometer arms");
                    continue;
                }
                c.merge_done = true;
                c.postselect_in_stage = false;
                c.consume(in1);
                c.consume(in2);
                if out1 == out2 {
                    c.err(line, format!("mode `{out1}` redefined"));
                    continue;
                }
                c.define(line, out1, PhotonMode::C);
                c.define(line, out2, PhotonMode::D);
                c.ops.push(EngineOp::BeamSplitter {
                    in1: m1,
                    in2: Some(m2),
                    out1: PhotonMode::C,
                    out2: PhotonMode::D,
                });
            }
            Statement::Postselect { mode } => {
                let Some(engine_mode) = c.live_mode(line, mode) else { continue };
                if c.postselect_in_stage {
                    c.err(line, "duplicate postselect in this stage");
                    continue;
                }
                c.postselect_in_stage = true;
                c.ops.push(EngineOp::Postselect { mode: engine_mode });
            }
            Statement::Measure { atom, basis, keep } => {
                if !c.atom_in_range(line, *atom, "measured") {
                    continue;
                }
                c.ops.push(EngineOp::Measure { atom: *atom, basis: *basis, keep: *keep });
            }
            Statement::Reverse { atom } => {
                if !c.atom_in_range(line, *atom, "reversed") {
                    continue;
                }
                c.ops.push(EngineOp::Reverse { atom: *atom });
            }
        }
    }
    if c.diagnostics.is_empty() {
        Ok(c.ops)
    } else {
        Err(c.diagnostics)
    }
}

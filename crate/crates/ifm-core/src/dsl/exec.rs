//! Branching executor for compiled experiment programs.
//!
//! Follows the same outcome-space convention as the scenario builders:
//! absorption and blocking retire their branch into the joint distribution as
//! aggregates, `postselect` and `measure ... keep` retire the discarded
//! branch at its current measurement resolution, and whatever is left at the
//! end of the program is read out by photon channel.

use crate::amplitude::{Amplitude, ProbValue, Ratio};
use crate::engine::{EngineError, PhotonMode, PureState, SpinOutcome, SpinUnitary2};
use crate::scenarios::{OutcomeLabel, ScenarioRun};

use super::EngineOp;

struct Branch<A: Amplitude> {
    state: PureState<A>,
    recorded: Vec<Option<SpinOutcome>>,
}

fn retire_by_mode<A: Amplitude>(
    run: &mut ScenarioRun<A>,
    state: &PureState<A>,
    recorded: &[Option<SpinOutcome>],
) {
    let mut modes: Vec<PhotonMode> = state.terms().map(|(l, _)| l.mode).collect();
    modes.sort();
    modes.dedup();
    for mode in modes {
        let w = state.weight_of(|l| l.mode == mode);
        if !w.is_zero() {
            run.insert_joint(OutcomeLabel { photon: mode, spins: recorded.to_vec() }, w);
        }
    }
}

fn unique_cond_name<A: Amplitude>(run: &ScenarioRun<A>, base: &str) -> String {
    if !run.conditionals.contains_key(base) {
        return base.to_string();
    }
    let mut i = 2;
    loop {
        let name = format!("{base}_{i}");
        if !run.conditionals.contains_key(&name) {
            return name;
        }
        i += 1;
    }
}

fn op_stage_name(op: &EngineOp) -> String {
    match op {
        EngineOp::Prepare { .. } => "prepare".to_string(),
        EngineOp::BeamSplitter { in2: None, .. } => "split".to_string(),
        EngineOp::BeamSplitter { .. } => "merge".to_string(),
        EngineOp::Interact { atom } => format!("cross_{atom}"),
        EngineOp::Obstacle => "block".to_string(),
        EngineOp::Postselect { mode } => format!("postselect_{mode}"),
        EngineOp::Measure { atom, basis, .. } => {
            format!("measure_{atom}_{}", basis.to_string().to_lowercase())
        }
        EngineOp::Reverse { atom } => format!("reverse_{atom}"),
    }
}

/// Runs a compiled operation sequence on backend `A`.
pub fn execute<A: Amplitude>(ops: &[EngineOp], name: &str) -> Result<ScenarioRun<A>, EngineError> {
    let n_atoms = match ops.first() {
        Some(EngineOp::Prepare { n_atoms }) => *n_atoms,
        _ => 0,
    };
    let mut run = ScenarioRun::<A>::new(name, n_atoms);
    let mut branches: Vec<Branch<A>> = Vec::new();
    for op in ops {
        match op {
            EngineOp::Prepare { n_atoms } => {
                branches = vec![Branch {
                    state: PureState::prepare(*n_atoms),
                    recorded: vec![None; *n_atoms],
                }];
            }
            EngineOp::BeamSplitter { in1, in2, out1, out2 } => {
                for b in &mut branches {
                    b.state = b.state.apply_beam_splitter(*in1, *in2, *out1, *out2)?;
                }
            }
            EngineOp::Interact { atom } => {
                for b in &mut branches {
                    let s = b.state.interact(*atom)?;
                    let (live, absorbed) =
                        s.partition(|l| !matches!(l.mode, PhotonMode::Absorbed(_)));
                    if !absorbed.is_empty() {
                        run.insert_joint(
                            OutcomeLabel {
                                photon: PhotonMode::Absorbed(*atom),
                                spins: b.recorded.clone(),
                            },
                            absorbed.norm_sq(),
                        );
                    }
                    b.state = live;
                }
            }
            EngineOp::Obstacle => {
                for b in &mut branches {
                    let s = b.state.apply_obstacle()?;
                    let (live, blocked) = s.partition(|l| l.mode != PhotonMode::Blocked);
                    if !blocked.is_empty() {
                        run.insert_joint(
                            OutcomeLabel { photon: PhotonMode::Blocked, spins: b.recorded.clone() },
                            blocked.norm_sq(),
                        );
                    }
                    b.state = live;
                }
            }
            EngineOp::Postselect { mode } => {
                let mut kept_total = A::Prob::zero();
                let mut all_total = A::Prob::zero();
                for b in &mut branches {
                    let (kept, dropped) = b.state.partition(|l| l.mode == *mode);
                    all_total = all_total.add(&b.state.norm_sq());
                    kept_total = kept_total.add(&kept.norm_sq());
                    retire_by_mode(&mut run, &dropped, &b.recorded);
                    b.state = kept;
                }
                branches.retain(|b| !b.state.is_empty());
                let name = unique_cond_name(&run, &format!("P_keep_postselect_{mode}"));
                run.cond(&name, Ratio::new(kept_total, all_total));
            }
            EngineOp::Measure { atom, basis, keep } => {
                let mut next = Vec::new();
                let mut kept_total = A::Prob::zero();
                let mut all_total = A::Prob::zero();
                for b in &mut branches {
                    all_total = all_total.add(&b.state.norm_sq());
                    let outcomes = b.state.measure_spin(*atom, *basis)?;
                    for o in outcomes {
                        if o.collapsed.is_empty() {
                            continue;
                        }
                        let mut recorded = b.recorded.clone();
                        recorded[*atom - 1] = Some(o.outcome);
                        match keep {
                            None => next.push(Branch { state: o.collapsed, recorded }),
                            Some(plus) if *plus == o.outcome.plus => {
                                kept_total = kept_total.add(&o.probability);
                                next.push(Branch { state: o.collapsed, recorded });
                            }
                            Some(_) => retire_by_mode(&mut run, &o.collapsed, &recorded),
                        }
                    }
                }
                branches = next;
                if let Some(plus) = keep {
                    let name = unique_cond_name(
                        &run,
                        &format!(
                            "P_keep_atom{}_{}{}",
                            atom,
                            basis,
                            if *plus { "plus" } else { "minus" }
                        ),
                    );
                    run.cond(&name, Ratio::new(kept_total, all_total));
                }
            }
            EngineOp::Reverse { atom } => {
                for b in &mut branches {
                    b.state = b.state.apply_spin_unitary(*atom, &SpinUnitary2::reverse_field())?;
                }
            }
        }
        if branches.len() == 1 {
            let stage = op_stage_name(op);
            run.stage(&stage, &branches[0].state);
        }
    }
    // Whatever remains is read out by photon channel; spins keep their
    // recorded resolution.
    for b in &branches {
        retire_by_mode(&mut run, &b.state, &b.recorded);
    }
    Ok(run)
}

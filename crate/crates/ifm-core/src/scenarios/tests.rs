use super::*;
use crate::amplitude::{FloatAmp, QuadReal};

type Exact = CycloAmp;

fn dy(num: i128, m: u32) -> QuadReal {
    QuadReal::dyadic(num, m)
}

fn cond(run: &ScenarioRun<Exact>, name: &str) -> Ratio<QuadReal> {
    run.conditionals
        .get(name)
        .unwrap_or_else(|| panic!("missing conditional {name}"))
        .clone()
}

fn assert_cond(run: &ScenarioRun<Exact>, name: &str, num: i128, mnum: u32, den: i128, mden: u32) {
    let expect = Ratio::new(dy(num, mnum), dy(den, mden));
    let got = cond(run, name);
    assert!(got.eq_exact(&expect), "{name}: got {} want {}", got.exact_string(), expect.exact_string());
}

fn joint_p(run: &ScenarioRun<Exact>, photon: &str, spins: &str) -> QuadReal {
    run.joint_sum(|l| l.photon.to_string() == photon && l.spins_string() == spins)
}

#[test]
fn single_atom_joint_distribution() {
    let run = run_hardy::<Exact>(false);
    assert!(run.is_normalized());
    assert_eq!(joint_p(&run, "absorbed(1)", "?"), dy(1, 2));
    assert_eq!(joint_p(&run, "c", "X+"), dy(9, 4));
    assert_eq!(joint_p(&run, "c", "X-"), dy(1, 4));
    assert_eq!(joint_p(&run, "d", "X+"), dy(1, 4));
    assert_eq!(joint_p(&run, "d", "X-"), dy(1, 4));
    assert!(run.checks["state_after_discard"]);
    assert!(run.checks["final_state"]);
    assert_cond(&run, "P_absorb", 1, 2, 1, 0);
    assert_cond(&run, "P_dark_port", 1, 3, 1, 0);
    // The dark-port weight relative to the unabsorbed 3/4 ensemble is 1/6.
    assert_cond(&run, "P_dark_given_unabsorbed", 1, 3, 3, 2);
    assert_cond(&run, "P_all_Xplus_given_detector", 10, 4, 12, 4);
    assert_cond(&run, "P_dark_and_all_Zminus", 0, 0, 1, 0);
}

#[test]
fn single_atom_blocked_distribution() {
    let run = run_hardy::<Exact>(true);
    assert!(run.is_normalized());
    assert_eq!(joint_p(&run, "blocked", "?"), dy(1, 2));
    assert_eq!(joint_p(&run, "absorbed(1)", "?"), dy(1, 2));
    assert_eq!(joint_p(&run, "c", "X+"), dy(1, 2));
    assert_eq!(joint_p(&run, "d", "X+"), dy(1, 2));
    assert_eq!(joint_p(&run, "c", "X-"), QuadReal::zero());
    assert_eq!(joint_p(&run, "d", "X-"), QuadReal::zero());
    assert!(run.checks["state_after_block"]);
    assert!(run.checks["final_state"]);
    assert_cond(&run, "P_all_Xplus_given_detector", 1, 1, 1, 1);
    assert_cond(&run, "P_blocked", 1, 2, 1, 0);
}

#[test]
fn three_atom_row() {
    let run = run_n_atom_row::<Exact>(3, false);
    assert!(run.is_normalized());
    assert_cond(&run, "P_absorb", 7, 4, 1, 0);
    assert_cond(&run, "P_dark_port", 7, 5, 1, 0);
    assert_cond(&run, "P_dark_and_all_Zminus", 0, 0, 1, 0);
    assert!(run.checks["dark_branch_state"]);
    // Absorption splits by first intersecting atom: 1/4, 1/8, 1/16.
    assert_eq!(joint_p(&run, "absorbed(1)", "???"), dy(1, 2));
    assert_eq!(joint_p(&run, "absorbed(2)", "???"), dy(1, 3));
    assert_eq!(joint_p(&run, "absorbed(3)", "???"), dy(1, 4));
    // Detector X outcomes: all-X+ dominates the dark port.
    assert_eq!(joint_p(&run, "d", "X+X+X+"), dy(49, 8));
    assert_eq!(joint_p(&run, "d", "X-X+X+"), dy(1, 8));
}

#[test]
fn three_atom_dark_branch_norm() {
    assert_eq!(expected_three_atom_dark::<Exact>().norm_sq(), dy(7, 5));
}

#[test]
fn reference_state_norms() {
    // The unabsorbed single-atom fraction and its final reading.
    assert_eq!(expected_single_after_discard::<Exact>().norm_sq(), dy(3, 2));
    assert_eq!(expected_single_final::<Exact>().norm_sq(), dy(3, 2));
    assert_eq!(expected_select_final::<Exact>().norm_sq(), dy(1, 3));
}

#[test]
fn runs_are_shareable_across_threads() {
    fn assert_send_sync<T: Send + Sync>() {}
    assert_send_sync::<crate::engine::PureState<Exact>>();
    assert_send_sync::<crate::engine::PureState<FloatAmp>>();
    assert_send_sync::<ScenarioRun<Exact>>();
}

#[test]
fn single_atom_row_reduces_to_hardy() {
    let hardy = run_hardy::<Exact>(false);
    let row = run_n_atom_row::<Exact>(1, false);
    assert_eq!(hardy.joint, row.joint);
    let hardy_b = run_hardy::<Exact>(true);
    let row_b = run_n_atom_row::<Exact>(1, true);
    assert_eq!(hardy_b.joint, row_b.joint);
}

#[test]
fn three_atom_blocked_row() {
    let run = run_n_atom_row::<Exact>(3, true);
    assert!(run.is_normalized());
    assert_cond(&run, "P_blocked", 1, 4, 1, 0);
    assert_cond(&run, "P_absorb", 7, 4, 1, 0);
    assert_cond(&run, "P_all_Xplus_given_detector", 1, 1, 1, 1);
}

#[test]
fn select_middle_atom() {
    let run = run_select_atom::<Exact>(3, 2);
    assert!(run.is_normalized());
    assert_cond(&run, "P_selected_plus_given_D", 4, 5, 7, 5);
    assert_cond(&run, "P_others_all_Xplus_given_selected_plus", 1, 3, 1, 3);
    assert_cond(&run, "P_atom1_Xplus_given_selected_plus", 1, 3, 1, 3);
    assert_cond(&run, "P_atom3_Xplus_given_selected_plus", 1, 3, 1, 3);
    assert_cond(&run, "P_any_other_Zplus_given_selected_minus", 3, 5, 3, 5);
    assert!(run.checks["others_disentangled"]);
    assert!(run.checks["selected_branch_state"]);
    assert!(run.checks["final_product_state"]);
    assert!(run.notes.iter().any(|n| n.contains("4/7") && n.contains("56%")));
    // The kept dark branch shows up as a single product outcome.
    assert_eq!(joint_p(&run, "d", "X+Z+X+"), dy(1, 3));
}

#[test]
fn select_index_independence() {
    let reference = cond(&run_select_atom::<Exact>(3, 2), "P_selected_plus_given_D");
    for m in [1, 3] {
        let got = cond(&run_select_atom::<Exact>(3, m), "P_selected_plus_given_D");
        assert!(got.eq_exact(&reference), "m={m}");
    }
}

#[test]
fn select_single_atom_edge() {
    let run = run_select_atom::<Exact>(1, 1);
    assert!(run.is_normalized());
    assert_cond(&run, "P_selected_plus_given_D", 1, 0, 1, 0);
    // With no other atoms the Z− conditioning event never occurs.
    assert!(cond(&run, "P_any_other_Zplus_given_selected_minus").is_empty_ensemble());
}

#[test]
fn engine_matches_oracle_z_stage() {
    for n in 1..=6 {
        for obstacle in [false, true] {
            let engine = engine_z_stage_joint::<Exact>(n, obstacle);
            let oracle = oracle::z_stage_joint(n, obstacle);
            assert_eq!(engine, oracle, "n={n} obstacle={obstacle}");
        }
    }
}

#[test]
fn engine_matches_oracle_terminal_row() {
    for n in 1..=4 {
        for obstacle in [false, true] {
            let engine = if n == 1 {
                run_hardy::<Exact>(obstacle).joint
            } else {
                run_n_atom_row::<Exact>(n, obstacle).joint
            };
            let oracle = oracle::terminal_joint_row(n, obstacle);
            assert_eq!(engine, oracle, "n={n} obstacle={obstacle}");
        }
    }
}

#[test]
fn engine_matches_oracle_terminal_select() {
    for n in 1..=4 {
        for m in 1..=n {
            let engine = run_select_atom::<Exact>(n, m).joint;
            let oracle = oracle::terminal_joint_select(n, m);
            assert_eq!(engine, oracle, "n={n} m={m}");
        }
    }
}

#[test]
fn float_backend_runs_all_scenarios() {
    let runs = [
        run_hardy::<FloatAmp>(false),
        run_hardy::<FloatAmp>(true),
        run_n_atom_row::<FloatAmp>(3, false),
        run_select_atom::<FloatAmp>(3, 2),
    ];
    for run in runs {
        assert!(run.is_normalized(), "{}", run.scenario);
        assert!(run.checks.values().all(|ok| *ok), "{}", run.scenario);
    }
}

#[test]
fn report_shape() {
    let report = run_hardy::<Exact>(false).report();
    assert_eq!(report.scenario, "hardy");
    let c_plus = report
        .joint
        .iter()
        .find(|e| e.photon == "c" && e.spins == "X+")
        .expect("bright-port X+ entry");
    assert_eq!(c_plus.p_exact, "9/16");
    assert_eq!(c_plus.p_decimal, 0.5625);
    assert_eq!(report.conditionals["P_absorb"].p_exact, "1/4");
    let csv = report.to_csv();
    assert!(csv.starts_with("photon,spins,p_exact,p_decimal\n"));
    assert!(csv.contains("c,X+,9/16,0.562500"));
    let table = report.to_table(false);
    assert!(table.contains("P(d AND X-) = 1/16"));
    assert!(table.contains("P(absorbed(1)) = 1/4"));
}

#[test]
fn scenario_dispatch() {
    assert_eq!(Scenario::hardy(false).run::<Exact>().scenario, "hardy");
    assert_eq!(Scenario::row(3, true).run::<Exact>().scenario, "row-3-blocked");
    assert_eq!(Scenario::select(3, 2).run::<Exact>().scenario, "select-3-2");
}

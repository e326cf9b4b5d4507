//! Property suites: ring axioms and canonicalization for the exact
//! amplitudes, unitarity and measurement bookkeeping for the engine, and
//! backend parity across the scenario runners.

use proptest::prelude::*;

use ifm_core::amplitude::{CycloAmp, FloatAmp, QuadReal};
use ifm_core::engine::{
    BasisLabel, PhotonMode, PureState, SpinBasis, SpinConfig, SpinUnitary2,
};
use ifm_core::scenarios::{run_hardy, run_n_atom_row, run_select_atom};

fn arb_cyclo() -> impl Strategy<Value = CycloAmp> {
    (
        prop::array::uniform4(-8i128..=8),
        0u32..5,
    )
        .prop_map(|(c, k)| CycloAmp::new(c, k))
}

fn arb_cyclo_wide() -> impl Strategy<Value = CycloAmp> {
    let big = 1i128 << 20;
    (prop::array::uniform4(-big..=big), 0u32..8).prop_map(|(c, k)| CycloAmp::new(c, k))
}

fn zeta_pow(t: u32) -> CycloAmp {
    let mut c = [0i128; 4];
    let pos = (t % 8) as usize;
    c[pos % 4] = if pos < 4 { 1 } else { -1 };
    CycloAmp::new(c, 0)
}

proptest! {
    #[test]
    fn add_commutes(a in arb_cyclo(), b in arb_cyclo()) {
        prop_assert_eq!(a + b, b + a);
    }

    #[test]
    fn mul_commutes(a in arb_cyclo(), b in arb_cyclo()) {
        prop_assert_eq!(a * b, b * a);
    }

    #[test]
    fn add_associates(a in arb_cyclo(), b in arb_cyclo(), c in arb_cyclo()) {
        prop_assert_eq!((a + b) + c, a + (b + c));
    }

    #[test]
    fn mul_associates(a in arb_cyclo(), b in arb_cyclo(), c in arb_cyclo()) {
        prop_assert_eq!((a * b) * c, a * (b * c));
    }

    #[test]
    fn mul_distributes(a in arb_cyclo(), b in arb_cyclo(), c in arb_cyclo()) {
        prop_assert_eq!(a * (b + c), a * b + a * c);
    }

    #[test]
    fn canonicalization_is_idempotent(a in arb_cyclo()) {
        let again = CycloAmp::new(a.coefficients(), a.sqrt2_denom_exponent());
        prop_assert_eq!(again, a);
    }

    #[test]
    fn conjugation_involutes_and_respects_mul(a in arb_cyclo(), b in arb_cyclo()) {
        prop_assert_eq!(a.conj().conj(), a);
        prop_assert_eq!((a * b).conj(), a.conj() * b.conj());
    }

    #[test]
    fn norm_is_nonnegative(a in arb_cyclo()) {
        // Structurally real by construction; nonneg by exact comparison.
        prop_assert!(a.norm_sq() >= QuadReal::zero());
        let (re, im) = a.to_complex_f64();
        let float_norm = re * re + im * im;
        let exact_norm = a.norm_sq().to_f64();
        prop_assert!((exact_norm - float_norm).abs() <= 1e-9 * (1.0 + exact_norm));
    }

    #[test]
    fn float_mirror_tracks_ring_ops(a in arb_cyclo_wide(), b in arb_cyclo_wide()) {
        // Mixed absolute/relative bound: the ulp of the value itself scales
        // with its magnitude, so a bare absolute bound cannot hold for wide
        // operands.
        let fa = a.to_complex_f64();
        let fb = b.to_complex_f64();
        let tol = |v: (f64, f64), w: (f64, f64)| {
            let scale = 1.0 + v.0.abs() + v.1.abs();
            ((v.0 - w.0).abs() <= 1e-12 * scale) && ((v.1 - w.1).abs() <= 1e-12 * scale)
        };
        let sum = (a + b).to_complex_f64();
        prop_assert!(tol(sum, (fa.0 + fb.0, fa.1 + fb.1)));
        let prod = (a * b).to_complex_f64();
        prop_assert!(tol(prod, (fa.0 * fb.0 - fa.1 * fb.1, fa.0 * fb.1 + fa.1 * fb.0)));
    }

    #[test]
    fn amplitude_rendering_roundtrips(a in arb_cyclo()) {
        let s = a.to_string();
        let back: CycloAmp = s.parse().unwrap();
        prop_assert_eq!(back, a, "render {}", s);
    }

    #[test]
    fn quadreal_rendering_roundtrips(p in -64i128..=64, q in -64i128..=64, m in 0u32..6) {
        let v = QuadReal::new(p, q, m);
        let back: QuadReal = v.to_string().parse().unwrap();
        prop_assert_eq!(back, v);
    }

    #[test]
    fn quadreal_ordering_matches_floats(p1 in -64i128..=64, q1 in -64i128..=64, m1 in 0u32..4,
                                        p2 in -64i128..=64, q2 in -64i128..=64, m2 in 0u32..4) {
        let a = QuadReal::new(p1, q1, m1);
        let b = QuadReal::new(p2, q2, m2);
        let fa = a.to_f64();
        let fb = b.to_f64();
        // Floats decide cleanly separated values; the exact order must agree.
        if (fa - fb).abs() > 1e-6 {
            prop_assert_eq!(a < b, fa < fb);
        }
        prop_assert_eq!(a == b, a.to_string() == b.to_string());
    }
}

// ---------------------------------------------------------------------------
// Engine properties.

#[derive(Debug, Clone)]
struct CircuitPlan {
    n_atoms: usize,
    interact_order: Vec<usize>,
    obstacle: bool,
    rotations: Vec<(usize, u8, u32, u32)>, // (atom, kind, phase a, phase b)
}

fn arb_plan() -> impl Strategy<Value = CircuitPlan> {
    (0usize..=6)
        .prop_flat_map(|n| {
            let interact = proptest::sample::subsequence((1..=n).collect::<Vec<_>>(), 0..=n)
                .prop_shuffle();
            let rotations = prop::collection::vec(
                (1usize..=n.max(1), 0u8..3, 0u32..8, 0u32..8),
                0..4,
            );
            (Just(n), interact, any::<bool>(), rotations)
        })
        .prop_map(|(n_atoms, interact_order, obstacle, rotations)| CircuitPlan {
            n_atoms,
            interact_order,
            obstacle,
            rotations: if n_atoms == 0 { Vec::new() } else { rotations },
        })
}

fn rotation(kind: u8, a: u32, b: u32) -> SpinUnitary2<CycloAmp> {
    match kind {
        0 => SpinUnitary2::splitting_field(),
        1 => SpinUnitary2::reverse_field(),
        _ => SpinUnitary2::new([
            [zeta_pow(a), CycloAmp::zero()],
            [CycloAmp::zero(), zeta_pow(b)],
        ]),
    }
}

fn run_plan(plan: &CircuitPlan) -> PureState<CycloAmp> {
    let mut s = PureState::<CycloAmp>::prepare(plan.n_atoms)
        .apply_beam_splitter(PhotonMode::Source, None, PhotonMode::V, PhotonMode::U)
        .unwrap();
    for &atom in &plan.interact_order {
        s = s.interact(atom).unwrap();
    }
    if plan.obstacle {
        s = s.apply_obstacle().unwrap();
    }
    s = s
        .apply_beam_splitter(PhotonMode::V, Some(PhotonMode::U), PhotonMode::D, PhotonMode::C)
        .unwrap();
    for &(atom, kind, a, b) in &plan.rotations {
        s = s.apply_spin_unitary(atom, &rotation(kind, a, b)).unwrap();
    }
    s
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn evolution_preserves_norm_exactly(plan in arb_plan()) {
        let s = run_plan(&plan);
        prop_assert_eq!(s.norm_sq(), QuadReal::one());
    }
}

proptest! {
    #[test]
    fn postselection_complements_sum_to_total(plan in arb_plan(), salt in any::<u64>()) {
        let s = run_plan(&plan);
        let pred = move |l: &BasisLabel| {
            let mut h = salt ^ (l.spins.bits() as u64);
            h ^= match l.mode {
                PhotonMode::C => 3,
                PhotonMode::D => 5,
                PhotonMode::Blocked => 7,
                _ => 11,
            };
            h = h.wrapping_mul(0x9e37_79b9_7f4a_7c15);
            h & 1 == 0
        };
        let (kept, r1) = s.postselect(pred);
        let (dropped, r2) = s.postselect(|l| !pred(l));
        prop_assert_eq!(kept.norm_sq() + dropped.norm_sq(), s.norm_sq());
        prop_assert_eq!(r1.num + r2.num, r1.den);
        prop_assert_eq!(r1.den, r2.den);
    }

    #[test]
    fn measurement_outcomes_sum_to_norm(plan in arb_plan(), basis in prop::bool::ANY) {
        prop_assume!(plan.n_atoms >= 1);
        let s = run_plan(&plan);
        let basis = if basis { SpinBasis::Z } else { SpinBasis::X };
        for atom in 1..=plan.n_atoms {
            let outcomes = s.measure_spin(atom, basis).unwrap();
            prop_assert_eq!(
                outcomes[0].probability + outcomes[1].probability,
                s.norm_sq()
            );
        }
    }

    #[test]
    fn product_detection_is_phase_and_local_unitary_invariant(
        n in 1usize..=4,
        t in 0u32..8,
        kind in 0u8..3,
        a in 0u32..8,
        b in 0u32..8,
    ) {
        // Fresh preparations are products; a global phase and any rotation of
        // the tested atom must not change the verdict.
        let s = PureState::<CycloAmp>::prepare(n);
        for atom in 1..=n {
            prop_assert!(s.is_product(atom).unwrap());
            let phased = s.scaled(&zeta_pow(t));
            prop_assert!(phased.is_product(atom).unwrap());
            let rotated = s.apply_spin_unitary(atom, &rotation(kind, a, b)).unwrap();
            prop_assert!(rotated.is_product(atom).unwrap());
        }
    }

    #[test]
    fn entangled_pair_stays_entangled_under_local_rotation(kind in 0u8..3, a in 0u32..8, b in 0u32..8) {
        let bell = PureState::<CycloAmp>::from_terms(
            2,
            [
                (BasisLabel::new(PhotonMode::Source, SpinConfig::from_bits(0b11)), CycloAmp::inv_sqrt2()),
                (BasisLabel::new(PhotonMode::Source, SpinConfig::from_bits(0b00)), CycloAmp::inv_sqrt2()),
            ],
        );
        let rotated = bell.apply_spin_unitary(1, &rotation(kind, a, b)).unwrap();
        prop_assert!(!rotated.is_product(1).unwrap());
        prop_assert!(!rotated.is_product(2).unwrap());
    }

    #[test]
    fn global_phase_equality_accepts_units(plan in arb_plan(), t in 0u32..8) {
        let s = run_plan(&plan);
        prop_assert!(s.equal_up_to_global_phase(&s.scaled(&zeta_pow(t))));
        prop_assert!(!s.equal_up_to_global_phase(&s.scaled(&CycloAmp::from_int(2))));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    // Squared norms stay nonnegative under the exact order for a wide draw.
    #[test]
    fn norm_is_nonnegative_wide(a in arb_cyclo_wide()) {
        prop_assert!(a.norm_sq() >= QuadReal::zero());
    }
}

// ---------------------------------------------------------------------------
// Engine-vs-oracle invariants across the scenario family.

#[test]
fn engine_matches_oracle_closed_box_to_twelve() {
    use ifm_core::scenarios::{engine_z_stage_joint, oracle};
    for n in 1..=12 {
        for obstacle in [false, true] {
            let engine = engine_z_stage_joint::<CycloAmp>(n, obstacle);
            let reference = oracle::z_stage_joint(n, obstacle);
            assert_eq!(engine, reference, "n={n} obstacle={obstacle}");
        }
    }
}

#[test]
fn dark_port_all_minus_never_occurs_to_twelve() {
    use ifm_core::scenarios::engine_z_stage_joint;
    for n in 1..=12 {
        let joint = engine_z_stage_joint::<CycloAmp>(n, false);
        assert!(
            !joint.contains_key(&(PhotonMode::D, 0)),
            "n={n}: all-minus dark amplitude survived"
        );
    }
}

#[test]
fn selected_atom_conditional_is_index_independent() {
    use ifm_core::scenarios::{oracle, selected_plus_given_dark_engine};
    for n in 1..=8 {
        let reference = selected_plus_given_dark_engine(n, 1);
        for m in 2..=n {
            let engine = selected_plus_given_dark_engine(n, m);
            assert!(engine.eq_exact(&reference), "engine n={n} m={m}");
            let from_paths = oracle::selected_plus_given_dark(n, m);
            assert!(from_paths.eq_exact(&reference), "oracle n={n} m={m}");
        }
    }
}

#[test]
fn selection_disentangles_and_certifies_to_six() {
    for n in 1..=6 {
        for m in 1..=n {
            let run = run_select_atom::<CycloAmp>(n, m);
            assert!(run.checks["others_disentangled"], "n={n} m={m}");
            let all_plus = &run.conditionals["P_others_all_Xplus_given_selected_plus"];
            assert_eq!(all_plus.exact_string(), "1", "n={n} m={m}");
            for atom in (1..=n).filter(|a| *a != m) {
                let one = &run.conditionals[&format!("P_atom{atom}_Xplus_given_selected_plus")];
                assert_eq!(one.exact_string(), "1", "n={n} m={m} atom={atom}");
            }
        }
    }
}

#[test]
fn obstacle_makes_detector_atoms_certain_to_six() {
    for n in 1..=6 {
        let run = if n == 1 {
            run_hardy::<CycloAmp>(true)
        } else {
            run_n_atom_row::<CycloAmp>(n, true)
        };
        let cond = &run.conditionals["P_all_Xplus_given_detector"];
        assert_eq!(cond.exact_string(), "1", "n={n}");
    }
}

// ---------------------------------------------------------------------------
// Backend parity across the scenario suites.

#[test]
fn exact_and_float_scenarios_agree_everywhere() {
    type ExactRun = ifm_core::scenarios::ScenarioRun<CycloAmp>;
    type FloatRun = ifm_core::scenarios::ScenarioRun<FloatAmp>;
    let pairs: Vec<(ExactRun, FloatRun)> = vec![
        (run_hardy(false), run_hardy(false)),
        (run_hardy(true), run_hardy(true)),
        (run_n_atom_row(2, false), run_n_atom_row(2, false)),
        (run_n_atom_row(3, false), run_n_atom_row(3, false)),
        (run_n_atom_row(3, true), run_n_atom_row(3, true)),
        (run_n_atom_row(5, false), run_n_atom_row(5, false)),
        (run_select_atom(3, 1), run_select_atom(3, 1)),
        (run_select_atom(3, 2), run_select_atom(3, 2)),
        (run_select_atom(4, 2), run_select_atom(4, 2)),
    ];
    for (exact, float) in &pairs {
        assert_eq!(exact.scenario, float.scenario);
        for (label, p) in &exact.joint {
            let f = float.joint.get(label).copied().unwrap_or(0.0);
            assert!(
                (p.to_f64() - f).abs() <= 1e-12,
                "{}: joint {label} exact {} float {}",
                exact.scenario,
                p.to_f64(),
                f
            );
        }
        for (label, f) in &float.joint {
            assert!(exact.joint.contains_key(label) || *f <= 1e-12, "{label} float-only");
        }
        for (name, r) in &exact.conditionals {
            let fr = &float.conditionals[name];
            if r.is_empty_ensemble() {
                assert!(fr.is_empty_ensemble(), "{name}");
            } else {
                assert!(
                    (r.to_f64() - fr.to_f64()).abs() <= 1e-12,
                    "{}: conditional {name}",
                    exact.scenario
                );
            }
        }
        for (name, ok) in &exact.checks {
            assert_eq!(float.checks[name], *ok, "{}: check {name}", exact.scenario);
        }
    }
}

#[test]
fn float_states_stay_finite() {
    let run = run_n_atom_row::<FloatAmp>(4, false);
    for p in run.joint.values() {
        assert!(p.is_finite());
    }
    assert!(run.is_normalized());
}

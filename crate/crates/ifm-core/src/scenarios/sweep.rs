//! The n-atom sweep: how often the selected atom turns out to be the one in
//! the intersecting box, conditioned on a dark-port click.

use crate::amplitude::{QuadReal, Ratio};

use super::{oracle, selected_plus_given_dark_engine};

/// Enumeration bound shared by the engine and the oracle (2^{n+1} paths).
pub const SWEEP_MAX_ATOMS: usize = oracle::ORACLE_MAX_ATOMS;

/// One sweep row: the engine's exact conditional, the oracle's exact
/// conditional, and the commonly quoted closed form `(2^{n−1}+1)/2^n`, which
/// is carried as data for comparison rather than asserted (it disagrees with
/// the exact enumeration: 5/8 vs 4/7 at n = 3).
#[derive(Debug, Clone)]
pub struct SweepRow {
    pub n: usize,
    pub engine: Ratio<QuadReal>,
    pub oracle: Ratio<QuadReal>,
    pub formula: Ratio<QuadReal>,
}

impl SweepRow {
    pub fn engine_matches_oracle(&self) -> bool {
        self.engine.eq_exact(&self.oracle)
    }
}

/// The quoted closed form `(2^{n−1}+1)/2^n`.
pub fn quoted_closed_form(n: usize) -> Ratio<QuadReal> {
    assert!((1..127).contains(&n));
    Ratio::new(
        QuadReal::from_int((1i128 << (n - 1)) + 1),
        QuadReal::from_int(1i128 << n),
    )
}

/// Sweeps `n = 1..=n_max`, computing `P(selected atom in Z+ | dark port)`
/// with the engine and independently with the path oracle (atom 1 selected;
/// the conditional is index-independent, which the test suite checks
/// separately).
pub fn sweep_right_atom(n_max: usize) -> Vec<SweepRow> {
    assert!(
        (1..=SWEEP_MAX_ATOMS).contains(&n_max),
        "sweep range is 1..={SWEEP_MAX_ATOMS}"
    );
    (1..=n_max)
        .map(|n| SweepRow {
            n,
            engine: selected_plus_given_dark_engine(n, 1),
            oracle: oracle::selected_plus_given_dark(n, 1),
            formula: quoted_closed_form(n),
        })
        .collect()
}

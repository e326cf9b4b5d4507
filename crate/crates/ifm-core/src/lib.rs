//! Exact simulation of single-photon interaction-free measurement experiments:
//! a photon in a Mach-Zehnder interferometer crossing a row of superposed
//! spin-1/2 atoms.
//!
//! The crate is organized as four layers:
//!
//! * [`amplitude`] — exact arithmetic in the ring generated by the integers,
//!   `i` and `1/√2`, plus a floating-point parity backend;
//! * [`engine`] — sparse unnormalized state vectors and the unitary steps of
//!   the experiments (beam splitters, spin fields, absorption, obstacle),
//!   post-selection, measurement and disentanglement detection;
//! * [`scenarios`] — builders for the named experiments, an independent
//!   brute-force path-enumeration oracle, and the n-atom sweep;
//! * [`dsl`] — a small line-oriented experiment description language compiled
//!   to engine operations.

pub mod amplitude;
pub mod dsl;
pub mod engine;
pub mod scenarios;

pub use amplitude::{Amplitude, BackendKind, CycloAmp, FloatAmp, ProbValue, QuadReal, Ratio};
pub use engine::{
    BasisLabel, EngineError, MeasurementOutcome, PhotonMode, PureState, Spin, SpinBasis,
    SpinConfig, SpinOutcome, SpinUnitary2,
};

//! Sparse unnormalized state vectors over photon ⊗ spins labels, with the
//! unitary evolution steps of the interferometer experiments, post-selection,
//! measurement and product-state detection.
//!
//! States are values: every operation returns a new state. Nothing here ever
//! renormalizes — probabilities are tracked explicitly as ratios of squared
//! norms, which keeps the exact backend inside its ring.

mod label;
mod unitary;

pub use label::{BasisLabel, PhotonMode, Spin, SpinConfig};
pub use unitary::SpinUnitary2;

use std::collections::BTreeMap;
use std::fmt;

use crate::amplitude::{Amplitude, ProbValue, Ratio};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EngineError {
    #[error("atom index {atom} out of range (state has {n_atoms} atoms)")]
    AtomOutOfRange { atom: usize, n_atoms: usize },
    #[error("beam splitter output mode {0} is already occupied")]
    OutputModeOccupied(String),
    #[error("beam splitter input modes must be distinct")]
    InputModesEqual,
    #[error("beam splitter output modes must be distinct")]
    OutputModesEqual,
    #[error("mode {0} cannot be both input and output of a beam splitter")]
    InputIsOutput(String),
    #[error("absorption channel for atom {0} already used")]
    AbsorptionChannelOccupied(usize),
    #[error("blocked channel already used")]
    BlockedChannelOccupied,
    #[error("spin rotation is not unitary")]
    NonUnitary,
    #[error("operation requires a nonempty state")]
    EmptyState,
}

/// Measurement basis for an atom's spin. `X` is realized by applying the
/// reverse field and reading the position boxes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SpinBasis {
    Z,
    X,
}

impl fmt::Display for SpinBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpinBasis::Z => write!(f, "Z"),
            SpinBasis::X => write!(f, "X"),
        }
    }
}

/// A measured spin value with its basis tag.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SpinOutcome {
    pub basis: SpinBasis,
    pub plus: bool,
}

impl fmt::Display for SpinOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.basis, if self.plus { '+' } else { '-' })
    }
}

/// One branch of a two-outcome spin measurement: its label, its absolute
/// probability (the squared norm of the projected branch) and the collapsed,
/// still unnormalized state.
#[derive(Debug, Clone)]
pub struct MeasurementOutcome<A: Amplitude> {
    pub outcome: SpinOutcome,
    pub probability: A::Prob,
    pub collapsed: PureState<A>,
}

/// Sparse superposition over [`BasisLabel`]s with amplitudes in backend `A`.
/// Zero amplitudes are never stored.
#[derive(Clone, PartialEq)]
pub struct PureState<A: Amplitude> {
    n_atoms: usize,
    terms: BTreeMap<BasisLabel, A>,
}

impl<A: Amplitude> PureState<A> {
    /// The initial state: photon at the source with amplitude 1, every atom
    /// split into `(i|Z+⟩ + |Z−⟩)/√2`, expanded into the sparse map. A
    /// configuration with `j` atoms in their `Z+` box carries `i^j/√2^n`.
    pub fn prepare(n_atoms: usize) -> Self {
        assert!(n_atoms <= SpinConfig::MAX_ATOMS, "atom count above engine cap");
        let mut terms = BTreeMap::new();
        for bits in 0u32..(1u32 << n_atoms) {
            let spins = SpinConfig::from_bits(bits);
            let amp = crate::amplitude::CycloAmp::i_pow_over_sqrt2(
                spins.count_plus(n_atoms),
                n_atoms as u32,
            );
            terms.insert(
                BasisLabel::new(PhotonMode::Source, spins),
                A::from_exact(&amp),
            );
        }
        PureState { n_atoms, terms }
    }

    /// Builds a state from explicit terms, accumulating duplicates and
    /// dropping negligible amplitudes.
    pub fn from_terms(n_atoms: usize, terms: impl IntoIterator<Item = (BasisLabel, A)>) -> Self {
        let mut map: BTreeMap<BasisLabel, A> = BTreeMap::new();
        for (label, amp) in terms {
            if let PhotonMode::Absorbed(j) = label.mode {
                debug_assert!(j >= 1 && j <= n_atoms);
            }
            insert_add(&mut map, label, amp);
        }
        PureState { n_atoms, terms: map }
    }

    pub fn empty(n_atoms: usize) -> Self {
        PureState { n_atoms, terms: BTreeMap::new() }
    }

    pub fn n_atoms(&self) -> usize {
        self.n_atoms
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BasisLabel, &A)> {
        self.terms.iter()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn amplitude(&self, label: &BasisLabel) -> A {
        self.terms.get(label).cloned().unwrap_or_else(A::zero)
    }

    /// Sum of squared amplitude norms, exact on the exact backend.
    pub fn norm_sq(&self) -> A::Prob {
        self.terms
            .values()
            .fold(A::Prob::zero(), |acc, a| acc.add(&a.norm_sq()))
    }

    fn check_atom(&self, atom: usize) -> Result<(), EngineError> {
        if atom == 0 || atom > self.n_atoms {
            return Err(EngineError::AtomOutOfRange { atom, n_atoms: self.n_atoms });
        }
        Ok(())
    }

    fn mode_occupied(&self, mode: PhotonMode) -> bool {
        self.terms.keys().any(|l| l.mode == mode)
    }

    /// Two-port beam splitter: `|in1⟩ → (|out1⟩ + i·|out2⟩)/√2` and, when a
    /// second input is wired, `|in2⟩ → (|out2⟩ + i·|out1⟩)/√2` (transmission
    /// real `1/√2`, reflection `i/√2`). Terms on other modes pass through.
    pub fn apply_beam_splitter(
        &self,
        in1: PhotonMode,
        in2: Option<PhotonMode>,
        out1: PhotonMode,
        out2: PhotonMode,
    ) -> Result<Self, EngineError> {
        if in2 == Some(in1) {
            return Err(EngineError::InputModesEqual);
        }
        if out1 == out2 {
            return Err(EngineError::OutputModesEqual);
        }
        for out in [out1, out2] {
            if out == in1 || Some(out) == in2 {
                return Err(EngineError::InputIsOutput(out.to_string()));
            }
            if self.mode_occupied(out) {
                return Err(EngineError::OutputModeOccupied(out.to_string()));
            }
        }
        let t = A::from_exact(&crate::amplitude::CycloAmp::inv_sqrt2());
        let r = A::from_exact(&crate::amplitude::CycloAmp::i_inv_sqrt2());
        let mut map = BTreeMap::new();
        for (label, amp) in &self.terms {
            if label.mode == in1 {
                insert_add(&mut map, BasisLabel::new(out1, label.spins), amp.mul(&t));
                insert_add(&mut map, BasisLabel::new(out2, label.spins), amp.mul(&r));
            } else if Some(label.mode) == in2 {
                insert_add(&mut map, BasisLabel::new(out2, label.spins), amp.mul(&t));
                insert_add(&mut map, BasisLabel::new(out1, label.spins), amp.mul(&r));
            } else {
                insert_add(&mut map, *label, amp.clone());
            }
        }
        Ok(PureState { n_atoms: self.n_atoms, terms: map })
    }

    /// Applies a single-atom spin rotation to every term.
    pub fn apply_spin_unitary(
        &self,
        atom: usize,
        u: &SpinUnitary2<A>,
    ) -> Result<Self, EngineError> {
        self.check_atom(atom)?;
        if !u.is_unitary() {
            return Err(EngineError::NonUnitary);
        }
        let mut map = BTreeMap::new();
        for (label, amp) in &self.terms {
            let col = match label.spins.get(atom) {
                Spin::ZPlus => 0,
                Spin::ZMinus => 1,
            };
            let to_plus = u.m[0][col].mul(amp);
            let to_minus = u.m[1][col].mul(amp);
            insert_add(&mut map, BasisLabel::new(label.mode, label.spins.with(atom, Spin::ZPlus)), to_plus);
            insert_add(&mut map, BasisLabel::new(label.mode, label.spins.with(atom, Spin::ZMinus)), to_minus);
        }
        Ok(PureState { n_atoms: self.n_atoms, terms: map })
    }

    /// The photon/atom interaction on arm `v`: a basis permutation that moves
    /// every `|v⟩` term whose atom sits in its `Z+` box into that atom's
    /// absorption channel. Unitary, so the total norm is preserved and the
    /// absorbed weight stays queryable until it is explicitly post-selected
    /// away.
    pub fn interact(&self, atom: usize) -> Result<Self, EngineError> {
        self.check_atom(atom)?;
        if self.mode_occupied(PhotonMode::Absorbed(atom)) {
            return Err(EngineError::AbsorptionChannelOccupied(atom));
        }
        let mut map = BTreeMap::new();
        for (label, amp) in &self.terms {
            let new_label = if label.mode == PhotonMode::V && label.spins.get(atom) == Spin::ZPlus
            {
                BasisLabel::new(PhotonMode::Absorbed(atom), label.spins)
            } else {
                *label
            };
            insert_add(&mut map, new_label, amp.clone());
        }
        Ok(PureState { n_atoms: self.n_atoms, terms: map })
    }

    /// The macroscopic obstacle on arm `v`: `|v⟩ → |blocked⟩` on every term.
    pub fn apply_obstacle(&self) -> Result<Self, EngineError> {
        if self.mode_occupied(PhotonMode::Blocked) {
            return Err(EngineError::BlockedChannelOccupied);
        }
        let mut map = BTreeMap::new();
        for (label, amp) in &self.terms {
            let new_label = if label.mode == PhotonMode::V {
                BasisLabel::new(PhotonMode::Blocked, label.spins)
            } else {
                *label
            };
            insert_add(&mut map, new_label, amp.clone());
        }
        Ok(PureState { n_atoms: self.n_atoms, terms: map })
    }

    /// Keeps the terms satisfying `keep`, without renormalizing, and returns
    /// the kept probability as the exact ratio `norm²(kept)/norm²(self)`.
    /// A zero numerator is a legal result ("never occurs" queries); a zero
    /// denominator marks an empty ensemble.
    pub fn postselect(&self, keep: impl Fn(&BasisLabel) -> bool) -> (Self, Ratio<A::Prob>) {
        let kept: BTreeMap<BasisLabel, A> = self
            .terms
            .iter()
            .filter(|(l, _)| keep(l))
            .map(|(l, a)| (*l, a.clone()))
            .collect();
        let kept_state = PureState { n_atoms: self.n_atoms, terms: kept };
        let ratio = Ratio::new(kept_state.norm_sq(), self.norm_sq());
        (kept_state, ratio)
    }

    /// Splits into (kept, discarded) along a predicate.
    pub fn partition(&self, keep: impl Fn(&BasisLabel) -> bool) -> (Self, Self) {
        let (kept, _) = self.postselect(&keep);
        let (dropped, _) = self.postselect(|l| !keep(l));
        (kept, dropped)
    }

    /// Absolute probability of a label predicate (squared norm of the
    /// matching part).
    pub fn weight_of(&self, pred: impl Fn(&BasisLabel) -> bool) -> A::Prob {
        self.terms
            .iter()
            .filter(|(l, _)| pred(l))
            .fold(A::Prob::zero(), |acc, (_, a)| acc.add(&a.norm_sq()))
    }

    /// Measures one atom's spin. `Z` reads the position boxes directly; `X`
    /// applies the reverse field first and labels the outcomes `X±`. The two
    /// outcome probabilities sum to `norm_sq(self)` and the collapsed states
    /// are unnormalized projections.
    pub fn measure_spin(
        &self,
        atom: usize,
        basis: SpinBasis,
    ) -> Result<[MeasurementOutcome<A>; 2], EngineError> {
        self.check_atom(atom)?;
        let state = match basis {
            SpinBasis::Z => self.clone(),
            SpinBasis::X => self.apply_spin_unitary(atom, &SpinUnitary2::reverse_field())?,
        };
        let (plus, minus) = state.partition(|l| l.spins.get(atom) == Spin::ZPlus);
        Ok([
            MeasurementOutcome {
                outcome: SpinOutcome { basis, plus: true },
                probability: plus.norm_sq(),
                collapsed: plus,
            },
            MeasurementOutcome {
                outcome: SpinOutcome { basis, plus: false },
                probability: minus.norm_sq(),
                collapsed: minus,
            },
        ])
    }

    /// True iff the state factorizes as (atom) ⊗ (rest): every 2×2 cross
    /// determinant over pairs of rest-labels vanishes (exactly on the exact
    /// backend, relative to the squared norm on the float backend).
    pub fn is_product(&self, atom: usize) -> Result<bool, EngineError> {
        self.check_atom(atom)?;
        if self.is_empty() {
            return Err(EngineError::EmptyState);
        }
        // Group amplitudes by (photon mode, spins of the other atoms).
        let mut groups: BTreeMap<BasisLabel, [A; 2]> = BTreeMap::new();
        for (label, amp) in &self.terms {
            let rest = BasisLabel::new(label.mode, label.spins.with(atom, Spin::ZMinus));
            let slot = groups.entry(rest).or_insert_with(|| [A::zero(), A::zero()]);
            match label.spins.get(atom) {
                Spin::ZPlus => slot[0] = amp.clone(),
                Spin::ZMinus => slot[1] = amp.clone(),
            }
        }
        let norm = self.norm_sq();
        let zero = A::zero();
        let mut it = groups.values();
        let reference = it.next().expect("nonempty state has at least one group");
        for g in it {
            let det = reference[0].mul(&g[1]).sub(&reference[1].mul(&g[0]));
            if !det.eq_at_scale(&zero, &norm) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// True iff `self = λ·other` for a unit-modulus scalar λ: the states carry
    /// the same labels, cross products of amplitudes agree, and the squared
    /// norms are equal.
    pub fn equal_up_to_global_phase(&self, other: &Self) -> bool {
        if self.n_atoms != other.n_atoms || self.terms.len() != other.terms.len() {
            return false;
        }
        if self.terms.is_empty() {
            return true;
        }
        let scale = self.norm_sq();
        if !prob_eq_at_scale::<A>(&scale, &other.norm_sq()) {
            return false;
        }
        let (l0, a0) = self.terms.iter().next().expect("nonempty");
        let Some(b0) = other.terms.get(l0) else {
            return false;
        };
        for (label, a) in &self.terms {
            let Some(b) = other.terms.get(label) else {
                return false;
            };
            // a0·b == b0·a  ⇔  a/b constant across labels.
            if !a0.mul(b).eq_at_scale(&b0.mul(a), &scale) {
                return false;
            }
        }
        true
    }

    /// Multiplies every amplitude by a scalar (test helper and builder step).
    pub fn scaled(&self, factor: &A) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(l, a)| (*l, a.mul(factor)))
            .collect();
        PureState { n_atoms: self.n_atoms, terms }
    }

    /// Deterministic dump: one `photon=<mode> spins=<+-+> amp=<amplitude>`
    /// line per term, sorted lexicographically by the rendered label.
    pub fn dump(&self) -> String {
        let mut lines: Vec<String> = self
            .terms
            .iter()
            .map(|(l, a)| format!("{} amp={}", l.render(self.n_atoms), a.render()))
            .collect();
        lines.sort();
        let mut out = lines.join("\n");
        if !out.is_empty() {
            out.push('\n');
        }
        out
    }
}

/// Norm-scale-aware probability comparison used by state equality checks.
fn prob_eq_at_scale<A: Amplitude>(a: &A::Prob, b: &A::Prob) -> bool {
    match A::BACKEND {
        crate::amplitude::BackendKind::Exact => a == b,
        crate::amplitude::BackendKind::Float => {
            (a.to_f64() - b.to_f64()).abs() <= 1e-10 * (1.0 + a.to_f64().abs())
        }
    }
}

fn insert_add<A: Amplitude>(map: &mut BTreeMap<BasisLabel, A>, label: BasisLabel, amp: A) {
    use std::collections::btree_map::Entry;
    match map.entry(label) {
        Entry::Vacant(e) => {
            if !amp.is_negligible() {
                e.insert(amp);
            }
        }
        Entry::Occupied(mut e) => {
            let sum = e.get().add(&amp);
            if sum.is_negligible() {
                e.remove();
            } else {
                *e.get_mut() = sum;
            }
        }
    }
}

impl<A: Amplitude> fmt::Debug for PureState<A> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PureState<{} atoms>\n{}", self.n_atoms, self.dump())
    }
}

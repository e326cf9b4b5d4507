//! Independent brute-force verification by explicit path enumeration.
//!
//! Every path is a choice of photon arm (`u` or `v`) and one spin box per
//! atom. Its amplitude is the literal product of the preparation, splitter
//! and reverse-field factors, with the absorption rule applied textually
//! (the photon on `v` is taken by the first atom found in its `Z+` box).
//! Interfering paths are summed per final label. Nothing here touches the
//! state engine's evolution code: amplitudes are bare Gaussian integers over
//! a power of √2.

use std::collections::BTreeMap;

use crate::amplitude::{QuadReal, Ratio};
use crate::engine::{PhotonMode, SpinBasis, SpinOutcome};

use super::OutcomeLabel;

/// `(re + im·i) / √2^k` with plain checked integer arithmetic.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct PathAmp {
    re: i128,
    im: i128,
    k: u32,
}

impl PathAmp {
    const fn new(re: i128, im: i128, k: u32) -> Self {
        PathAmp { re, im, k }
    }

    fn mul(self, o: PathAmp) -> PathAmp {
        let re = self.re * o.re - self.im * o.im;
        let im = self.re * o.im + self.im * o.re;
        PathAmp { re, im, k: self.k + o.k }
    }

    fn add(self, o: PathAmp) -> PathAmp {
        // Interfering paths always carry the same number of √2 factors.
        assert_eq!(self.k, o.k, "path amplitudes must share a denominator");
        PathAmp { re: self.re + o.re, im: self.im + o.im, k: self.k }
    }

    /// `|amp|² = (re² + im²) / 2^k`, exactly.
    fn prob(self) -> QuadReal {
        QuadReal::dyadic(self.re * self.re + self.im * self.im, self.k)
    }

    fn is_zero(self) -> bool {
        self.re == 0 && self.im == 0
    }
}

// Literal factors. Arm u is the reflected output of the first splitter.
const BS1_TO_U: PathAmp = PathAmp::new(0, 1, 1); // i/√2
const BS1_TO_V: PathAmp = PathAmp::new(1, 0, 1); // 1/√2
const PREP_PLUS: PathAmp = PathAmp::new(0, 1, 1); // atom found in Z+: i/√2
const PREP_MINUS: PathAmp = PathAmp::new(1, 0, 1); // atom found in Z−: 1/√2
const BS2_U_TO_C: PathAmp = PathAmp::new(1, 0, 1);
const BS2_U_TO_D: PathAmp = PathAmp::new(0, 1, 1);
const BS2_V_TO_D: PathAmp = PathAmp::new(1, 0, 1);
const BS2_V_TO_C: PathAmp = PathAmp::new(0, 1, 1);
// Reverse-field matrix elements ⟨X±|Z±⟩.
const REV_PLUS_FROM_ZPLUS: PathAmp = PathAmp::new(0, -1, 1); // −i/√2
const REV_MINUS_FROM_ZPLUS: PathAmp = PathAmp::new(1, 0, 1);
const REV_PLUS_FROM_ZMINUS: PathAmp = PathAmp::new(1, 0, 1);
const REV_MINUS_FROM_ZMINUS: PathAmp = PathAmp::new(0, -1, 1);

/// Hard bound on the enumeration (2^{n+1} photon-arm × spin-box paths).
pub const ORACLE_MAX_ATOMS: usize = 20;

/// Where a photon path terminates before any terminal spin handling.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum PathEnd {
    Detector(bool), // true = dark port d
    Absorbed(usize),
    Blocked,
}

fn prep_factor(z_plus: bool) -> PathAmp {
    if z_plus {
        PREP_PLUS
    } else {
        PREP_MINUS
    }
}

fn rev_factor(z_plus: bool, x_plus: bool) -> PathAmp {
    match (z_plus, x_plus) {
        (true, true) => REV_PLUS_FROM_ZPLUS,
        (true, false) => REV_MINUS_FROM_ZPLUS,
        (false, true) => REV_PLUS_FROM_ZMINUS,
        (false, false) => REV_MINUS_FROM_ZMINUS,
    }
}

/// Enumerates all paths up to the second splitter, summing amplitudes per
/// `(end, spin configuration)` label.
fn z_stage_amplitudes(n: usize, obstacle: bool) -> BTreeMap<(PathEnd, u32), PathAmp> {
    assert!(n <= ORACLE_MAX_ATOMS, "oracle bound is {ORACLE_MAX_ATOMS} atoms");
    let mut map: BTreeMap<(PathEnd, u32), PathAmp> = BTreeMap::new();
    let mut put = |key: (PathEnd, u32), amp: PathAmp| {
        map.entry(key)
            .and_modify(|a| *a = a.add(amp))
            .or_insert(amp);
    };
    for z in 0u32..(1u32 << n) {
        let mut spin_product = PathAmp::new(1, 0, 0);
        for atom in 1..=n {
            spin_product = spin_product.mul(prep_factor(z >> (atom - 1) & 1 == 1));
        }
        // Arm u: the photon never meets an atom.
        let u_amp = BS1_TO_U.mul(spin_product);
        put((PathEnd::Detector(false), z), u_amp.mul(BS2_U_TO_C));
        put((PathEnd::Detector(true), z), u_amp.mul(BS2_U_TO_D));
        // Arm v: absorbed by the first atom in its Z+ box, if any.
        let v_amp = BS1_TO_V.mul(spin_product);
        if let Some(j) = (1..=n).find(|a| z >> (a - 1) & 1 == 1) {
            put((PathEnd::Absorbed(j), z), v_amp);
        } else if obstacle {
            put((PathEnd::Blocked, z), v_amp);
        } else {
            put((PathEnd::Detector(false), z), v_amp.mul(BS2_V_TO_C));
            put((PathEnd::Detector(true), z), v_amp.mul(BS2_V_TO_D));
        }
    }
    map
}

fn end_mode(end: PathEnd) -> PhotonMode {
    match end {
        PathEnd::Detector(false) => PhotonMode::C,
        PathEnd::Detector(true) => PhotonMode::D,
        PathEnd::Absorbed(j) => PhotonMode::Absorbed(j),
        PathEnd::Blocked => PhotonMode::Blocked,
    }
}

/// Joint distribution over `(photon end, spin configuration)` at the stage
/// where all spin boxes are still closed. 2^{n+1} paths.
pub fn z_stage_joint(n: usize, obstacle: bool) -> BTreeMap<(PhotonMode, u32), QuadReal> {
    z_stage_amplitudes(n, obstacle)
        .into_iter()
        .filter(|(_, amp)| !amp.is_zero())
        .map(|((end, z), amp)| ((end_mode(end), z), amp.prob()))
        .collect()
}

/// `P(atom m in Z+ | dark port)` by path counting, the sweep's arbiter.
pub fn selected_plus_given_dark(n: usize, m: usize) -> Ratio<QuadReal> {
    assert!(m >= 1 && m <= n);
    let mut num = QuadReal::zero();
    let mut den = QuadReal::zero();
    for ((end, z), p) in z_stage_joint(n, false) {
        if end != PhotonMode::D {
            continue;
        }
        den = den + p;
        if z >> (m - 1) & 1 == 1 {
            num = num + p;
        }
    }
    Ratio::new(num, den)
}

fn unmeasured(n: usize) -> Vec<Option<SpinOutcome>> {
    vec![None; n]
}

fn x_outcome(plus: bool) -> Option<SpinOutcome> {
    Some(SpinOutcome { basis: SpinBasis::X, plus })
}

fn z_outcome(plus: bool) -> Option<SpinOutcome> {
    Some(SpinOutcome { basis: SpinBasis::Z, plus })
}

/// Joint distribution over terminal outcomes, mirroring the row experiments:
/// absorbed/blocked branches keep their boxes closed and aggregate; detector
/// branches reunite every box and read the spin in the X basis.
///
/// Spreads every detector path over all X outcomes (≈ 4^n paths), so this is
/// intended for small n; the z-stage layer above carries the large-n checks.
pub fn terminal_joint_row(n: usize, obstacle: bool) -> BTreeMap<OutcomeLabel, QuadReal> {
    let mut joint: BTreeMap<OutcomeLabel, QuadReal> = BTreeMap::new();
    let mut det_amps: BTreeMap<(bool, u32), PathAmp> = BTreeMap::new();
    for ((end, z), amp) in z_stage_amplitudes(n, obstacle) {
        match end {
            PathEnd::Absorbed(_) | PathEnd::Blocked => {
                let label = OutcomeLabel { photon: end_mode(end), spins: unmeasured(n) };
                let entry = joint.entry(label).or_insert_with(QuadReal::zero);
                *entry = *entry + amp.prob();
            }
            PathEnd::Detector(dark) => {
                // Spread over the 2^n X readings of the reunited boxes.
                for x in 0u32..(1u32 << n) {
                    let mut a = amp;
                    for atom in 1..=n {
                        a = a.mul(rev_factor(z >> (atom - 1) & 1 == 1, x >> (atom - 1) & 1 == 1));
                    }
                    det_amps
                        .entry((dark, x))
                        .and_modify(|acc| *acc = acc.add(a))
                        .or_insert(a);
                }
            }
        }
    }
    for ((dark, x), amp) in det_amps {
        if amp.is_zero() {
            continue;
        }
        let spins = (1..=n).map(|atom| x_outcome(x >> (atom - 1) & 1 == 1)).collect();
        let photon = if dark { PhotonMode::D } else { PhotonMode::C };
        joint.insert(OutcomeLabel { photon, spins }, amp.prob());
    }
    joint
}

/// Joint distribution for the selection protocol: condition side branches
/// aggregate, atom `m` is read in Z at the dark port, the others in X when
/// `m` was found in `Z+` and in Z otherwise.
pub fn terminal_joint_select(n: usize, m: usize) -> BTreeMap<OutcomeLabel, QuadReal> {
    assert!(m >= 1 && m <= n);
    let mut joint: BTreeMap<OutcomeLabel, QuadReal> = BTreeMap::new();
    let mut bright = QuadReal::zero();
    let mut plus_amps: BTreeMap<u32, PathAmp> = BTreeMap::new();
    for ((end, z), amp) in z_stage_amplitudes(n, false) {
        match end {
            PathEnd::Absorbed(_) | PathEnd::Blocked => {
                let label = OutcomeLabel { photon: end_mode(end), spins: unmeasured(n) };
                let entry = joint.entry(label).or_insert_with(QuadReal::zero);
                *entry = *entry + amp.prob();
            }
            PathEnd::Detector(false) => {
                bright = bright + amp.prob();
            }
            PathEnd::Detector(true) => {
                if z >> (m - 1) & 1 == 1 {
                    // Spread the other atoms over X readings.
                    for x in 0u32..(1u32 << n) {
                        if x >> (m - 1) & 1 != 1 {
                            continue; // atom m's slot mirrors its Z+ record
                        }
                        let mut a = amp;
                        for atom in (1..=n).filter(|a| *a != m) {
                            a = a.mul(rev_factor(
                                z >> (atom - 1) & 1 == 1,
                                x >> (atom - 1) & 1 == 1,
                            ));
                        }
                        plus_amps
                            .entry(x)
                            .and_modify(|acc| *acc = acc.add(a))
                            .or_insert(a);
                    }
                } else if !amp.is_zero() {
                    let spins = (1..=n)
                        .map(|atom| z_outcome(z >> (atom - 1) & 1 == 1))
                        .collect();
                    let label = OutcomeLabel { photon: PhotonMode::D, spins };
                    let entry = joint.entry(label).or_insert_with(QuadReal::zero);
                    *entry = *entry + amp.prob();
                }
            }
        }
    }
    if !bright.is_zero() {
        joint.insert(
            OutcomeLabel { photon: PhotonMode::C, spins: unmeasured(n) },
            bright,
        );
    }
    for (x, amp) in plus_amps {
        if amp.is_zero() {
            continue;
        }
        let spins = (1..=n)
            .map(|atom| {
                if atom == m {
                    z_outcome(true)
                } else {
                    x_outcome(x >> (atom - 1) & 1 == 1)
                }
            })
            .collect();
        joint.insert(OutcomeLabel { photon: PhotonMode::D, spins }, amp.prob());
    }
    joint
}

#[cfg(test)]
mod tests {
    use super::*;

    fn total(map: &BTreeMap<OutcomeLabel, QuadReal>) -> QuadReal {
        map.values().fold(QuadReal::zero(), |a, b| a + *b)
    }

    #[test]
    fn z_stage_normalizes() {
        for n in 0..=6 {
            for obstacle in [false, true] {
                let sum = z_stage_joint(n, obstacle)
                    .values()
                    .fold(QuadReal::zero(), |a, b| a + *b);
                assert_eq!(sum, QuadReal::one(), "n={n} obstacle={obstacle}");
            }
        }
    }

    #[test]
    fn dark_port_all_minus_path_cancellation() {
        // At n=3 the u and v paths to the dark port with every atom in Z−
        // contribute −1/(4√2) and +1/(4√2): the label vanishes outright.
        let amps = z_stage_amplitudes(3, false);
        assert!(amps[&(PathEnd::Detector(true), 0)].is_zero());
        let all_minus = PREP_MINUS.mul(PREP_MINUS).mul(PREP_MINUS);
        assert_eq!(BS1_TO_U.mul(all_minus).mul(BS2_U_TO_D), PathAmp::new(-1, 0, 5));
        assert_eq!(BS1_TO_V.mul(all_minus).mul(BS2_V_TO_D), PathAmp::new(1, 0, 5));
    }

    #[test]
    fn single_atom_conditional_is_certain() {
        let r = selected_plus_given_dark(1, 1);
        assert_eq!(r.exact_string(), "1");
    }

    #[test]
    fn three_atom_conditional() {
        for m in 1..=3 {
            assert_eq!(selected_plus_given_dark(3, m).exact_string(), "4/7");
        }
    }

    #[test]
    fn terminal_joints_normalize() {
        for n in 1..=5 {
            for obstacle in [false, true] {
                assert_eq!(total(&terminal_joint_row(n, obstacle)), QuadReal::one());
            }
            assert_eq!(total(&terminal_joint_select(n, 1)), QuadReal::one());
        }
    }
}

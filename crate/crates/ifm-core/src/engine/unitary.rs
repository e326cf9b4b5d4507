//! Single-atom spin rotations.

use crate::amplitude::{Amplitude, CycloAmp, ProbValue};

/// A 2×2 unitary acting on one atom's spin, rows and columns indexed by
/// `(Z+, Z−)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpinUnitary2<A: Amplitude> {
    pub m: [[A; 2]; 2],
}

impl<A: Amplitude> SpinUnitary2<A> {
    pub fn new(m: [[A; 2]; 2]) -> Self {
        SpinUnitary2 { m }
    }

    fn from_exact_rows(rows: [[CycloAmp; 2]; 2]) -> Self {
        SpinUnitary2 {
            m: rows.map(|r| r.map(|c| A::from_exact(&c))),
        }
    }

    /// The splitting field: sends the prepared spin into its position boxes,
    /// `(1/√2)·[[i, 1], [1, i]]`. Its first column realizes the preparation
    /// `(i|Z+⟩ + |Z−⟩)/√2`.
    pub fn splitting_field() -> Self {
        let h = CycloAmp::inv_sqrt2();
        let ih = CycloAmp::i_inv_sqrt2();
        Self::from_exact_rows([[ih, h], [h, ih]])
    }

    /// The reverse field, inverse of the splitting field:
    /// `(1/√2)·[[−i, 1], [1, −i]]`.
    pub fn reverse_field() -> Self {
        let h = CycloAmp::inv_sqrt2();
        let mih = CycloAmp::i_inv_sqrt2().neg();
        Self::from_exact_rows([[mih, h], [h, mih]])
    }

    /// Checks `U·U† = I` (exactly on the exact backend, to backend tolerance
    /// on the float backend).
    pub fn is_unitary(&self) -> bool {
        let scale = A::Prob::one();
        let dot = |r1: &[A; 2], r2: &[A; 2]| {
            let a = r1[0].mul(&r2[0].conj());
            let b = r1[1].mul(&r2[1].conj());
            a.add(&b)
        };
        let one = A::one();
        let zero = A::zero();
        dot(&self.m[0], &self.m[0]).eq_at_scale(&one, &scale)
            && dot(&self.m[1], &self.m[1]).eq_at_scale(&one, &scale)
            && dot(&self.m[0], &self.m[1]).eq_at_scale(&zero, &scale)
    }
}

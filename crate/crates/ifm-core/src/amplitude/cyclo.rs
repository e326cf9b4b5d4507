//! Exact complex amplitudes over the ring generated by the integers, `i` and `1/√2`.
//!
//! A [`CycloAmp`] stores `(c0 + c1·ζ + c2·ζ² + c3·ζ³) / √2^k` where `ζ = e^{iπ/4}`,
//! so `ζ² = i` and `ζ − ζ³ = √2`. Every amplitude that arises from beam splitters,
//! the spin-splitting field and its inverse lives in this ring, so interference
//! cancellations are decided exactly instead of numerically.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::quad::QuadReal;
use super::ArithError;

/// Exact amplitude `(c0 + c1·ζ + c2·ζ² + c3·ζ³) / √2^k` with `ζ = e^{iπ/4}`.
///
/// Values are kept canonical: `k == 0`, or the numerator is not divisible by √2
/// in the cyclotomic integers. Zero is always `(0,0,0,0)/√2^0`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct CycloAmp {
    c: [i128; 4],
    k: u32,
}

fn ck_add(a: i128, b: i128) -> Result<i128, ArithError> {
    a.checked_add(b).ok_or(ArithError::Overflow)
}

fn ck_sub(a: i128, b: i128) -> Result<i128, ArithError> {
    a.checked_sub(b).ok_or(ArithError::Overflow)
}

fn ck_mul(a: i128, b: i128) -> Result<i128, ArithError> {
    a.checked_mul(b).ok_or(ArithError::Overflow)
}

impl CycloAmp {
    /// Builds an amplitude from raw numerator coefficients `[c0, c1, c2, c3]`
    /// (coefficients of `1, ζ, ζ², ζ³`) over `√2^k`, then canonicalizes.
    pub fn new(c: [i128; 4], k: u32) -> Self {
        let mut a = CycloAmp { c, k };
        a.canonicalize();
        a
    }

    /// Gaussian-integer shortcut: `(re + im·i) / √2^k`.
    pub fn from_gauss(re: i128, im: i128, k: u32) -> Self {
        Self::new([re, 0, im, 0], k)
    }

    pub fn zero() -> Self {
        CycloAmp { c: [0; 4], k: 0 }
    }

    pub fn one() -> Self {
        CycloAmp { c: [1, 0, 0, 0], k: 0 }
    }

    /// The imaginary unit `i = ζ²`.
    pub fn i() -> Self {
        CycloAmp { c: [0, 0, 1, 0], k: 0 }
    }

    pub fn from_int(n: i128) -> Self {
        Self::new([n, 0, 0, 0], 0)
    }

    /// `1/√2`.
    pub fn inv_sqrt2() -> Self {
        CycloAmp { c: [1, 0, 0, 0], k: 1 }
    }

    /// `i/√2`.
    pub fn i_inv_sqrt2() -> Self {
        CycloAmp { c: [0, 0, 1, 0], k: 1 }
    }

    /// `i^p / √2^k` for `p` taken mod 4.
    pub fn i_pow_over_sqrt2(p: u32, k: u32) -> Self {
        let mut c = [0i128; 4];
        match p % 4 {
            0 => c[0] = 1,
            1 => c[2] = 1,
            2 => c[0] = -1,
            _ => c[2] = -1,
        }
        Self::new(c, k)
    }

    pub fn coefficients(&self) -> [i128; 4] {
        self.c
    }

    pub fn sqrt2_denom_exponent(&self) -> u32 {
        self.k
    }

    pub fn is_zero(&self) -> bool {
        self.c == [0; 4]
    }

    /// Numerator divisibility by √2: multiplying by `ζ − ζ³` (= √2) must leave
    /// every coefficient even. That reduces to a parity test on opposite pairs.
    fn divisible_by_sqrt2(c: &[i128; 4]) -> bool {
        (c[0] - c[2]) % 2 == 0 && (c[1] - c[3]) % 2 == 0
    }

    /// Replaces the numerator by numerator/√2 (caller must have checked divisibility).
    fn div_sqrt2(c: &[i128; 4]) -> [i128; 4] {
        [
            (c[1] - c[3]) / 2,
            (c[0] + c[2]) / 2,
            (c[1] + c[3]) / 2,
            (c[2] - c[0]) / 2,
        ]
    }

    /// Multiplies a numerator by √2 = ζ − ζ³ (used to align denominators).
    fn mul_sqrt2(c: &[i128; 4]) -> Result<[i128; 4], ArithError> {
        Ok([
            ck_sub(c[1], c[3])?,
            ck_add(c[0], c[2])?,
            ck_add(c[1], c[3])?,
            ck_sub(c[2], c[0])?,
        ])
    }

    fn canonicalize(&mut self) {
        if self.c == [0; 4] {
            self.k = 0;
            return;
        }
        while self.k > 0 && Self::divisible_by_sqrt2(&self.c) {
            self.c = Self::div_sqrt2(&self.c);
            self.k -= 1;
        }
    }

    /// Exact sum; reports integer overflow instead of wrapping.
    pub fn checked_add(&self, other: &Self) -> Result<Self, ArithError> {
        let (mut a, mut b) = (*self, *other);
        // Align to the larger denominator exponent.
        while a.k < b.k {
            a.c = Self::mul_sqrt2(&a.c)?;
            a.k += 1;
        }
        while b.k < a.k {
            b.c = Self::mul_sqrt2(&b.c)?;
            b.k += 1;
        }
        let mut c = [0i128; 4];
        for (i, slot) in c.iter_mut().enumerate() {
            *slot = ck_add(a.c[i], b.c[i])?;
        }
        Ok(Self::new(c, a.k))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, ArithError> {
        self.checked_add(&other.neg())
    }

    /// Exact product using `ζ⁴ = −1`; reports overflow instead of wrapping.
    pub fn checked_mul(&self, other: &Self) -> Result<Self, ArithError> {
        let c = Self::raw_mul(&self.c, &other.c)?;
        let k = self.k.checked_add(other.k).ok_or(ArithError::Overflow)?;
        Ok(Self::new(c, k))
    }

    fn raw_mul(a: &[i128; 4], b: &[i128; 4]) -> Result<[i128; 4], ArithError> {
        let mut c = [0i128; 4];
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.iter().enumerate() {
                if bj == 0 {
                    continue;
                }
                let p = ck_mul(ai, bj)?;
                let pos = i + j;
                if pos < 4 {
                    c[pos] = ck_add(c[pos], p)?;
                } else {
                    c[pos - 4] = ck_sub(c[pos - 4], p)?;
                }
            }
        }
        Ok(c)
    }

    /// Complex conjugate: `ζ ↦ −ζ³`, i.e. `(c0, c1, c2, c3) ↦ (c0, −c3, −c2, −c1)`.
    pub fn conj(&self) -> Self {
        // The divisibility test is symmetric under this permutation, so the
        // result is already canonical.
        CycloAmp {
            c: [self.c[0], -self.c[3], -self.c[2], -self.c[1]],
            k: self.k,
        }
    }

    pub fn neg(&self) -> Self {
        CycloAmp {
            c: [-self.c[0], -self.c[1], -self.c[2], -self.c[3]],
            k: self.k,
        }
    }

    /// `x · conj(x)`, which is structurally real: the raw product has the form
    /// `r0 + r1·ζ + 0·ζ² − r1·ζ³`, i.e. `r0 + r1·√2`, over `√2^{2k} = 2^k`.
    pub fn norm_sq(&self) -> QuadReal {
        let conj = self.conj();
        let r = Self::raw_mul(&self.c, &conj.c).expect("amplitude coefficient overflow in norm");
        debug_assert_eq!(r[2], 0);
        debug_assert_eq!(r[1], -r[3]);
        QuadReal::new(r[0], r[1], self.k)
    }

    /// Floating-point evaluation `(re, im)`.
    ///
    /// The Gaussian part is converted exactly; each `ζ`-component contributes one
    /// rounded multiplication by `1/√2`, so results are accurate to a few ulps for
    /// the coefficient sizes that occur here.
    pub fn to_complex_f64(&self) -> (f64, f64) {
        let odd_re = (self.c[1] - self.c[3]) as f64 * std::f64::consts::FRAC_1_SQRT_2;
        let odd_im = (self.c[1] + self.c[3]) as f64 * std::f64::consts::FRAC_1_SQRT_2;
        let re = self.c[0] as f64 + odd_re;
        let im = self.c[2] as f64 + odd_im;
        let scale = Self::inv_sqrt2_pow_f64(self.k);
        (re * scale, im * scale)
    }

    fn inv_sqrt2_pow_f64(k: u32) -> f64 {
        // 2^{-k/2} is exact; at most one extra rounding for odd k.
        let base = f64::powi(2.0, -((k / 2) as i32));
        if k.is_multiple_of(2) {
            base
        } else {
            base * std::f64::consts::FRAC_1_SQRT_2
        }
    }
}

impl Add for CycloAmp {
    type Output = CycloAmp;
    fn add(self, rhs: CycloAmp) -> CycloAmp {
        self.checked_add(&rhs).expect("amplitude coefficient overflow in add")
    }
}

impl Sub for CycloAmp {
    type Output = CycloAmp;
    fn sub(self, rhs: CycloAmp) -> CycloAmp {
        self.checked_sub(&rhs).expect("amplitude coefficient overflow in sub")
    }
}

impl Mul for CycloAmp {
    type Output = CycloAmp;
    fn mul(self, rhs: CycloAmp) -> CycloAmp {
        self.checked_mul(&rhs).expect("amplitude coefficient overflow in mul")
    }
}

impl Neg for CycloAmp {
    type Output = CycloAmp;
    fn neg(self) -> CycloAmp {
        CycloAmp::neg(&self)
    }
}

impl fmt::Debug for CycloAmp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycloAmp({self})")
    }
}

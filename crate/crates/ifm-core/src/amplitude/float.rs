//! Floating-point mirror of the exact amplitude type, used as a parity backend.

use std::fmt;

/// Complex amplitude in `f64`, `re + im·i`.
#[derive(Clone, Copy, PartialEq, Debug, Default)]
pub struct FloatAmp {
    pub re: f64,
    pub im: f64,
}

impl FloatAmp {
    pub fn new(re: f64, im: f64) -> Self {
        FloatAmp { re, im }
    }

    pub fn zero() -> Self {
        FloatAmp { re: 0.0, im: 0.0 }
    }

    pub fn one() -> Self {
        FloatAmp { re: 1.0, im: 0.0 }
    }

    pub fn add(&self, o: &Self) -> Self {
        FloatAmp { re: self.re + o.re, im: self.im + o.im }
    }

    pub fn sub(&self, o: &Self) -> Self {
        FloatAmp { re: self.re - o.re, im: self.im - o.im }
    }

    pub fn mul(&self, o: &Self) -> Self {
        FloatAmp {
            re: self.re * o.re - self.im * o.im,
            im: self.re * o.im + self.im * o.re,
        }
    }

    pub fn conj(&self) -> Self {
        FloatAmp { re: self.re, im: -self.im }
    }

    pub fn norm_sq(&self) -> f64 {
        self.re * self.re + self.im * self.im
    }

    pub fn is_finite(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }
}

impl fmt::Display for FloatAmp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im >= 0.0 {
            write!(f, "{}+{}i", self.re, self.im)
        } else {
            write!(f, "{}{}i", self.re, self.im)
        }
    }
}

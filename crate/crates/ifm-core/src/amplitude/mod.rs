//! Amplitude arithmetic: the exact ring backend, its floating mirror, and the
//! traits that let the engine run on either.

mod cyclo;
mod float;
mod parse;
mod quad;

pub use cyclo::CycloAmp;
pub use float::FloatAmp;
pub use parse::ParseValueError;
pub use quad::QuadReal;

use std::fmt;

/// Arithmetic failure: coefficient growth past the 128-bit range is reported,
/// never wrapped.
#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum ArithError {
    #[error("integer overflow in exact amplitude arithmetic")]
    Overflow,
}

/// Which arithmetic a state or result was computed with.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BackendKind {
    Exact,
    Float,
}

impl fmt::Display for BackendKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BackendKind::Exact => write!(f, "exact"),
            BackendKind::Float => write!(f, "float"),
        }
    }
}

/// Real-valued probability scalar of a backend.
pub trait ProbValue: Clone + PartialEq + PartialOrd + fmt::Debug + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn is_zero(&self) -> bool;
    fn to_f64(&self) -> f64;
    /// Exact-form rendering (reduced fraction for dyadic exact values); the
    /// float backend renders its decimal value.
    fn exact_string(&self) -> String;
    /// Rendering of the exact ratio `num/den` (`4/7`, `1`, `0/0`, ...).
    fn ratio_string(num: &Self, den: &Self) -> String;
}

impl ProbValue for QuadReal {
    fn zero() -> Self {
        QuadReal::zero()
    }
    fn one() -> Self {
        QuadReal::one()
    }
    fn add(&self, o: &Self) -> Self {
        *self + *o
    }
    fn sub(&self, o: &Self) -> Self {
        *self - *o
    }
    fn mul(&self, o: &Self) -> Self {
        *self * *o
    }
    fn is_zero(&self) -> bool {
        QuadReal::is_zero(self)
    }
    fn to_f64(&self) -> f64 {
        QuadReal::to_f64(self)
    }
    fn exact_string(&self) -> String {
        self.prob_string()
    }
    fn ratio_string(num: &Self, den: &Self) -> String {
        if den.is_zero() {
            return "0/0".to_string();
        }
        if num.is_dyadic() && den.is_dyadic() {
            let (pn, _, mn) = num.parts();
            let (pd, _, md) = den.parts();
            // num/den = pn·2^md / (pd·2^mn)
            assert!(mn < 127 && md < 127, "ratio exponent overflow");
            let mut a = pn.checked_mul(1i128 << md).expect("ratio overflow");
            let mut b = pd.checked_mul(1i128 << mn).expect("ratio overflow");
            if b < 0 {
                a = -a;
                b = -b;
            }
            let g = gcd(a.unsigned_abs(), b.unsigned_abs()).max(1) as i128;
            let (a, b) = (a / g, b / g);
            if b == 1 {
                format!("{a}")
            } else {
                format!("{a}/{b}")
            }
        } else {
            format!("({})/({})", num.exact_string(), den.exact_string())
        }
    }
}

impl ProbValue for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn exact_string(&self) -> String {
        format!("{self}")
    }
    fn ratio_string(num: &Self, den: &Self) -> String {
        if *den == 0.0 {
            "0/0".to_string()
        } else {
            format!("{}", num / den)
        }
    }
}

/// Complex amplitude scalar of a backend.
///
/// The engine never divides amplitudes; every operation stays inside the ring
/// on the exact backend.
pub trait Amplitude: Clone + PartialEq + fmt::Debug + Send + Sync + 'static {
    type Prob: ProbValue;

    const BACKEND: BackendKind;

    fn zero() -> Self;
    fn one() -> Self;
    /// Lifts an exact ring element into this backend (identity on the exact side).
    fn from_exact(c: &CycloAmp) -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn conj(&self) -> Self;
    fn norm_sq(&self) -> Self::Prob;
    /// True when the value should be dropped from a sparse state. Exact zero
    /// on the exact backend; a conservative chop of accumulated rounding dust
    /// on the float backend.
    fn is_negligible(&self) -> bool;
    /// Equality for state comparisons: exact, or within backend tolerance
    /// relative to the given squared-norm scale.
    fn eq_at_scale(&self, o: &Self, norm_scale: &Self::Prob) -> bool;
    fn to_complex_f64(&self) -> (f64, f64);
    fn render(&self) -> String;
}

impl Amplitude for CycloAmp {
    type Prob = QuadReal;

    const BACKEND: BackendKind = BackendKind::Exact;

    fn zero() -> Self {
        CycloAmp::zero()
    }
    fn one() -> Self {
        CycloAmp::one()
    }
    fn from_exact(c: &CycloAmp) -> Self {
        *c
    }
    fn add(&self, o: &Self) -> Self {
        *self + *o
    }
    fn sub(&self, o: &Self) -> Self {
        *self - *o
    }
    fn mul(&self, o: &Self) -> Self {
        *self * *o
    }
    fn conj(&self) -> Self {
        CycloAmp::conj(self)
    }
    fn norm_sq(&self) -> QuadReal {
        CycloAmp::norm_sq(self)
    }
    fn is_negligible(&self) -> bool {
        self.is_zero()
    }
    fn eq_at_scale(&self, o: &Self, _norm_scale: &QuadReal) -> bool {
        self == o
    }
    fn to_complex_f64(&self) -> (f64, f64) {
        CycloAmp::to_complex_f64(self)
    }
    fn render(&self) -> String {
        self.to_string()
    }
}

impl Amplitude for FloatAmp {
    type Prob = f64;

    const BACKEND: BackendKind = BackendKind::Float;

    fn zero() -> Self {
        FloatAmp::zero()
    }
    fn one() -> Self {
        FloatAmp::one()
    }
    fn from_exact(c: &CycloAmp) -> Self {
        let (re, im) = c.to_complex_f64();
        FloatAmp::new(re, im)
    }
    fn add(&self, o: &Self) -> Self {
        FloatAmp::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        FloatAmp::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        FloatAmp::mul(self, o)
    }
    fn conj(&self) -> Self {
        FloatAmp::conj(self)
    }
    fn norm_sq(&self) -> f64 {
        FloatAmp::norm_sq(self)
    }
    fn is_negligible(&self) -> bool {
        // Interference residue well below any physical amplitude in these
        // experiments (smallest squared weight at the n = 20 cap is 2^-22).
        self.norm_sq() <= 1e-24
    }
    fn eq_at_scale(&self, o: &Self, norm_scale: &f64) -> bool {
        let d = FloatAmp::sub(self, o).norm_sq();
        d <= 1e-20 * (1.0 + norm_scale)
    }
    fn to_complex_f64(&self) -> (f64, f64) {
        (self.re, self.im)
    }
    fn render(&self) -> String {
        self.to_string()
    }
}

/// An exact conditional probability, kept as a numerator/denominator pair:
/// the ring of `(p + q√2)/2^m` values is not closed under division, so ratios
/// stay symbolic and compare by cross-multiplication.
#[derive(Clone, Debug, PartialEq)]
pub struct Ratio<P: ProbValue> {
    pub num: P,
    pub den: P,
}

impl<P: ProbValue> Ratio<P> {
    pub fn new(num: P, den: P) -> Self {
        Ratio { num, den }
    }

    /// Probability against a unit denominator.
    pub fn of_one(num: P) -> Self {
        Ratio { num, den: P::one() }
    }

    /// The conditioning event has probability zero: 0/0 queries are legal
    /// ("never occurs" events) and flagged rather than divided.
    pub fn is_empty_ensemble(&self) -> bool {
        self.den.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero() && !self.den.is_zero()
    }

    pub fn eq_exact(&self, o: &Self) -> bool {
        self.num.mul(&o.den) == o.num.mul(&self.den)
    }

    pub fn to_f64(&self) -> f64 {
        if self.den.is_zero() {
            f64::NAN
        } else {
            self.num.to_f64() / self.den.to_f64()
        }
    }

    /// Reduced-fraction rendering when both sides are exact dyadics
    /// (`4/7`, `1`, `0`), composite or decimal rendering otherwise.
    pub fn exact_string(&self) -> String {
        P::ratio_string(&self.num, &self.den)
    }
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

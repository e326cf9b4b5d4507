//! Exact real numbers of the form `(p + q·√2) / 2^m`.
//!
//! These carry every probability and squared norm produced by the engine.
//! Comparison is decided exactly from the integer coefficients; no floating
//! point is consulted.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// `(p + q·√2) / 2^m`, canonical when `m == 0` or not both `p` and `q` are even.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct QuadReal {
    p: i128,
    q: i128,
    m: u32,
}

impl QuadReal {
    pub fn new(p: i128, q: i128, m: u32) -> Self {
        let mut v = QuadReal { p, q, m };
        v.canonicalize();
        v
    }

    pub fn from_int(n: i128) -> Self {
        QuadReal { p: n, q: 0, m: 0 }
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    /// The dyadic rational `num / 2^m`.
    pub fn dyadic(num: i128, m: u32) -> Self {
        Self::new(num, 0, m)
    }

    pub fn parts(&self) -> (i128, i128, u32) {
        (self.p, self.q, self.m)
    }

    pub fn is_zero(&self) -> bool {
        self.p == 0 && self.q == 0
    }

    /// True when the √2 component vanishes, i.e. the value is `p / 2^m`.
    pub fn is_dyadic(&self) -> bool {
        self.q == 0
    }

    fn canonicalize(&mut self) {
        if self.p == 0 && self.q == 0 {
            self.m = 0;
            return;
        }
        while self.m > 0 && self.p % 2 == 0 && self.q % 2 == 0 {
            self.p /= 2;
            self.q /= 2;
            self.m -= 1;
        }
    }

    fn ck(v: Option<i128>) -> i128 {
        v.expect("probability coefficient overflow")
    }

    /// Exact sign of `p + q·√2` (the `2^m` scale never matters for sign).
    fn sign(p: i128, q: i128) -> Ordering {
        match (p.cmp(&0), q.cmp(&0)) {
            (Ordering::Equal, s) => s,
            (s, Ordering::Equal) => s,
            (Ordering::Greater, Ordering::Greater) => Ordering::Greater,
            (Ordering::Less, Ordering::Less) => Ordering::Less,
            (Ordering::Greater, Ordering::Less) | (Ordering::Less, Ordering::Greater) => {
                // Compare p² with 2q²; equality is impossible for nonzero integers.
                let p2 = Self::ck(p.checked_mul(p));
                let q2 = Self::ck(q.checked_mul(q).and_then(|x| x.checked_mul(2)));
                if p > 0 {
                    p2.cmp(&q2)
                } else {
                    q2.cmp(&p2)
                }
            }
        }
    }

    pub fn to_f64(&self) -> f64 {
        (self.p as f64 + self.q as f64 * std::f64::consts::SQRT_2) / f64::powi(2.0, self.m as i32)
    }
}

fn pow2_i128(m: u32) -> i128 {
    assert!(m < 127, "probability exponent overflow");
    1i128 << m
}

impl Add for QuadReal {
    type Output = QuadReal;
    fn add(self, rhs: QuadReal) -> QuadReal {
        let m = self.m.max(rhs.m);
        let sa = pow2_i128(m - self.m);
        let sb = pow2_i128(m - rhs.m);
        QuadReal::new(
            Self::ck(self.p.checked_mul(sa).and_then(|x| x.checked_add(Self::ck(rhs.p.checked_mul(sb))))),
            Self::ck(self.q.checked_mul(sa).and_then(|x| x.checked_add(Self::ck(rhs.q.checked_mul(sb))))),
            m,
        )
    }
}

impl Sub for QuadReal {
    type Output = QuadReal;
    fn sub(self, rhs: QuadReal) -> QuadReal {
        self + (-rhs)
    }
}

impl Neg for QuadReal {
    type Output = QuadReal;
    fn neg(self) -> QuadReal {
        QuadReal { p: -self.p, q: -self.q, m: self.m }
    }
}

impl Mul for QuadReal {
    type Output = QuadReal;
    fn mul(self, rhs: QuadReal) -> QuadReal {
        // (p1 + q1√2)(p2 + q2√2) = p1p2 + 2q1q2 + (p1q2 + q1p2)√2
        let p = Self::ck(self.p.checked_mul(rhs.p).and_then(|x| {
            x.checked_add(Self::ck(
                self.q.checked_mul(rhs.q).and_then(|y| y.checked_mul(2)),
            ))
        }));
        let q = Self::ck(self.p.checked_mul(rhs.q).and_then(|x| {
            x.checked_add(Self::ck(self.q.checked_mul(rhs.p)))
        }));
        let m = self.m.checked_add(rhs.m).expect("probability exponent overflow");
        QuadReal::new(p, q, m)
    }
}

impl PartialOrd for QuadReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QuadReal {
    fn cmp(&self, other: &Self) -> Ordering {
        let d = *self - *other;
        Self::sign(d.p, d.q)
    }
}

impl fmt::Debug for QuadReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QuadReal({self})")
    }
}

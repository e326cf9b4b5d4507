//! Human-readable rendering and round-trip parsing for exact values.
//!
//! Amplitudes render like `(-1+2i)/sqrt2^3`; values with an irreducible
//! `ζ = e^{iπ/4}` component use an explicit `z` group, e.g. `(1+(1)z)`.
//! Reals render like `(9)/2^4` or `(2+1*sqrt2)/2^1`.

use std::fmt;
use std::str::FromStr;

use super::cyclo::CycloAmp;
use super::quad::QuadReal;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid exact-value literal: {0}")]
pub struct ParseValueError(pub String);

fn gauss_str(re: i128, im: i128) -> String {
    match (re, im) {
        (0, 0) => "0".to_string(),
        (r, 0) => format!("{r}"),
        (0, 1) => "i".to_string(),
        (0, -1) => "-i".to_string(),
        (0, i) => format!("{i}i"),
        (r, 1) => format!("{r}+i"),
        (r, -1) => format!("{r}-i"),
        (r, i) if i > 0 => format!("{r}+{i}i"),
        (r, i) => format!("{r}{i}i"),
    }
}

fn sqrt2_denom_str(k: u32) -> String {
    match k {
        0 => String::new(),
        1 => "/sqrt2".to_string(),
        k => format!("/sqrt2^{k}"),
    }
}

impl fmt::Display for CycloAmp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let [c0, c1, c2, c3] = self.coefficients();
        let k = self.sqrt2_denom_exponent();
        if c1 == 0 && c3 == 0 {
            return write!(f, "({}){}", gauss_str(c0, c2), sqrt2_denom_str(k));
        }
        if c0 == 0 && c2 == 0 {
            // Pure ζ-part: c1ζ + c3ζ³ = ((c1−c3) + (c1+c3)i)/√2.
            return write!(f, "({}){}", gauss_str(c1 - c3, c1 + c3), sqrt2_denom_str(k + 1));
        }
        // Mixed: numerator = (c0 + c2·i) + (c1 + c3·i)·ζ.
        write!(
            f,
            "({}+({})z){}",
            gauss_str(c0, c2),
            gauss_str(c1, c3),
            sqrt2_denom_str(k)
        )
    }
}

impl fmt::Display for QuadReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (p, q, m) = self.parts();
        if self.is_zero() {
            return write!(f, "0");
        }
        let body = match (p, q) {
            (p, 0) => format!("{p}"),
            (0, q) => format!("{q}*sqrt2"),
            (p, q) if q > 0 => format!("{p}+{q}*sqrt2"),
            (p, q) => format!("{p}{q}*sqrt2"),
        };
        if m == 0 {
            write!(f, "({body})")
        } else {
            write!(f, "({body})/2^{m}")
        }
    }
}

impl QuadReal {
    /// Probability-style rendering: reduced fraction for dyadic values
    /// (`9/16`, `1`, `0`), falling back to the general form otherwise.
    pub fn prob_string(&self) -> String {
        let (p, _, m) = self.parts();
        if self.is_dyadic() {
            if m == 0 {
                format!("{p}")
            } else {
                format!("{p}/{}", 1i128 << m)
            }
        } else {
            self.to_string()
        }
    }
}

/// Parses a signed complex-integer body such as `-1+2i`, `i`, `3-i`.
fn parse_gauss(s: &str) -> Result<(i128, i128), ParseValueError> {
    let err = || ParseValueError(s.to_string());
    let bytes = s.as_bytes();
    if bytes.is_empty() {
        return Err(err());
    }
    let (mut re, mut im) = (0i128, 0i128);
    let mut pos = 0;
    while pos < bytes.len() {
        let sign = match bytes[pos] {
            b'+' => {
                pos += 1;
                1
            }
            b'-' => {
                pos += 1;
                -1
            }
            _ => 1,
        };
        let start = pos;
        while pos < bytes.len() && bytes[pos].is_ascii_digit() {
            pos += 1;
        }
        let digits = &s[start..pos];
        let is_imag = pos < bytes.len() && bytes[pos] == b'i';
        if is_imag {
            pos += 1;
        }
        let mag: i128 = if digits.is_empty() {
            if !is_imag {
                return Err(err());
            }
            1
        } else {
            digits.parse().map_err(|_| err())?
        };
        if is_imag {
            im += sign * mag;
        } else {
            re += sign * mag;
        }
    }
    Ok((re, im))
}

/// Splits a trailing `/sqrt2[^k]` or `/2^m` suffix, returning (body, exponent).
fn split_denom<'a>(s: &'a str, denom_prefix: &str) -> Result<(&'a str, u32), ParseValueError> {
    match s.find(denom_prefix) {
        None => Ok((s, 0)),
        Some(at) => {
            let tail = &s[at + denom_prefix.len()..];
            let k = if tail.is_empty() {
                1
            } else {
                tail.strip_prefix('^')
                    .ok_or_else(|| ParseValueError(s.to_string()))?
                    .parse()
                    .map_err(|_| ParseValueError(s.to_string()))?
            };
            Ok((&s[..at], k))
        }
    }
}

fn strip_parens(s: &str) -> Result<&str, ParseValueError> {
    s.strip_prefix('(')
        .and_then(|t| t.strip_suffix(')'))
        .ok_or_else(|| ParseValueError(s.to_string()))
}

impl FromStr for CycloAmp {
    type Err = ParseValueError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s == "0" {
            return Ok(CycloAmp::zero());
        }
        let (body, k) = split_denom(&s, "/sqrt2")?;
        let body = strip_parens(body)?;
        // An optional `+(...)z` group carries the ζ component.
        if let Some(at) = body.find("+(") {
            let (g0, rest) = body.split_at(at);
            let g1 = rest
                .strip_prefix("+(")
                .and_then(|t| t.strip_suffix(")z"))
                .ok_or_else(|| ParseValueError(s.clone()))?;
            let (c0, c2) = parse_gauss(g0)?;
            let (c1, c3) = parse_gauss(g1)?;
            Ok(CycloAmp::new([c0, c1, c2, c3], k))
        } else {
            let (re, im) = parse_gauss(body)?;
            Ok(CycloAmp::from_gauss(re, im, k))
        }
    }
}

impl FromStr for QuadReal {
    type Err = ParseValueError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s == "0" {
            return Ok(QuadReal::zero());
        }
        let (body, m) = split_denom(&s, "/2")?;
        let body = strip_parens(body)?;
        let (mut p, mut q) = (0i128, 0i128);
        let mut rest = body;
        while !rest.is_empty() {
            // A term runs to the next sign that is not the leading one.
            let split_at = rest[1..].find(['+', '-']).map(|i| i + 1).unwrap_or(rest.len());
            let (term, tail) = rest.split_at(split_at);
            let term = term.strip_prefix('+').unwrap_or(term);
            if let Some(qs) = term.strip_suffix("*sqrt2") {
                q += qs.parse::<i128>().map_err(|_| ParseValueError(s.clone()))?;
            } else {
                p += term.parse::<i128>().map_err(|_| ParseValueError(s.clone()))?;
            }
            rest = tail;
        }
        Ok(QuadReal::new(p, q, m))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn amp_render_examples() {
        assert_eq!(CycloAmp::from_gauss(-1, 2, 3).to_string(), "(-1+2i)/sqrt2^3");
        assert_eq!(CycloAmp::inv_sqrt2().to_string(), "(1)/sqrt2");
        assert_eq!(CycloAmp::i().to_string(), "(i)");
        assert_eq!(CycloAmp::zero().to_string(), "0");
        // √2 folds back to a Gaussian numerator one level down.
        let sqrt2 = CycloAmp::new([0, 1, 0, -1], 0);
        assert_eq!(sqrt2.to_string(), "(2)/sqrt2");
        // 1 + ζ keeps an explicit z group.
        assert_eq!(CycloAmp::new([1, 1, 0, 0], 0).to_string(), "(1+(1)z)");
    }

    #[test]
    fn amp_roundtrip() {
        let cases = [
            CycloAmp::zero(),
            CycloAmp::one(),
            CycloAmp::i(),
            CycloAmp::from_gauss(-1, 2, 3),
            CycloAmp::from_gauss(0, -1, 1),
            CycloAmp::new([0, 1, 0, -1], 0),
            CycloAmp::new([1, 1, 0, 0], 1),
            CycloAmp::new([-2, 3, 5, -7], 4),
        ];
        for amp in cases {
            let s = amp.to_string();
            let back: CycloAmp = s.parse().unwrap_or_else(|e| panic!("{s}: {e}"));
            assert_eq!(back, amp, "roundtrip of {s}");
        }
    }

    #[test]
    fn quad_render_examples() {
        assert_eq!(QuadReal::new(9, 0, 4).to_string(), "(9)/2^4");
        assert_eq!(QuadReal::new(2, 1, 1).to_string(), "(2+1*sqrt2)/2^1");
        assert_eq!(QuadReal::zero().to_string(), "0");
        assert_eq!(QuadReal::new(0, -1, 0).to_string(), "(-1*sqrt2)");
    }

    #[test]
    fn quad_roundtrip() {
        let cases = [
            QuadReal::zero(),
            QuadReal::one(),
            QuadReal::new(9, 0, 4),
            QuadReal::new(2, 1, 1),
            QuadReal::new(-3, 2, 5),
            QuadReal::new(0, -7, 2),
        ];
        for v in cases {
            let s = v.to_string();
            let back: QuadReal = s.parse().unwrap_or_else(|e| panic!("{s}: {e}"));
            assert_eq!(back, v, "roundtrip of {s}");
        }
    }

    #[test]
    fn prob_strings() {
        assert_eq!(QuadReal::new(9, 0, 4).prob_string(), "9/16");
        assert_eq!(QuadReal::one().prob_string(), "1");
        assert_eq!(QuadReal::zero().prob_string(), "0");
        assert_eq!(QuadReal::new(2, 1, 1).prob_string(), "(2+1*sqrt2)/2^1");
    }

    #[test]
    fn rejects_garbage() {
        assert!("(1+".parse::<CycloAmp>().is_err());
        assert!("(1)/sqrt3".parse::<CycloAmp>().is_err());
        assert!("(x)".parse::<QuadReal>().is_err());
    }
}

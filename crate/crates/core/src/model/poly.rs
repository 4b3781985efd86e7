//! Exact polynomials over ℤ and the nonstandard model ℤ\[X\]⁺.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};
use thiserror::Error;

/// An element of ℤ\[X\]; `coeffs[i]` is the coefficient of `Xⁱ`, without
/// trailing zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ZPoly {
    coeffs: Vec<BigInt>,
}

impl ZPoly {
    pub fn zero() -> ZPoly {
        ZPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: impl Into<BigInt>) -> ZPoly {
        ZPoly::from_coeffs(vec![c.into()])
    }

    /// The indeterminate `X`.
    pub fn x() -> ZPoly {
        ZPoly::from_coeffs(vec![BigInt::zero(), BigInt::one()])
    }

    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> ZPoly {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        ZPoly { coeffs }
    }

    pub fn from_i64s(cs: &[i64]) -> ZPoly {
        ZPoly::from_coeffs(cs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with the zero polynomial reported as `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    /// Zero or positive leading coefficient.
    pub fn is_nonnegative(&self) -> bool {
        self.leading().is_none_or(|c| c.is_positive())
    }

    pub fn is_positive(&self) -> bool {
        self.leading().is_some_and(|c| c.is_positive())
    }

    /// Exact quotient `self / divisor` in ℤ\[X\], if it exists.
    pub fn div_exact(&self, divisor: &ZPoly) -> Option<ZPoly> {
        let d_deg = divisor.degree()?;
        if self.is_zero() {
            return Some(ZPoly::zero());
        }
        let d_lead = divisor.leading().expect("nonzero");
        let mut rem = self.coeffs.clone();
        let n_deg = self.degree().expect("nonzero");
        if n_deg < d_deg {
            return None;
        }
        let mut quot = vec![BigInt::zero(); n_deg - d_deg + 1];
        for i in (0..=n_deg - d_deg).rev() {
            let top = &rem[i + d_deg];
            if top.is_zero() {
                continue;
            }
            let (q, r) = top.div_rem(d_lead);
            if !r.is_zero() {
                return None;
            }
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                rem[i + j] -= &q * dc;
            }
            quot[i] = q;
        }
        if rem.iter().all(Zero::is_zero) {
            Some(ZPoly::from_coeffs(quot))
        } else {
            None
        }
    }

    /// Value at an integer point.
    pub fn eval_at(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }
}

impl Ord for ZPoly {
    /// `p < q` iff `q − p` has positive leading coefficient.
    fn cmp(&self, other: &ZPoly) -> Ordering {
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = BigInt::zero();
        for i in (0..n).rev() {
            let a = self.coeffs.get(i).unwrap_or(&zero);
            let b = other.coeffs.get(i).unwrap_or(&zero);
            match a.cmp(b) {
                Ordering::Equal => continue,
                ord => return ord,
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for ZPoly {
    fn partial_cmp(&self, other: &ZPoly) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for &ZPoly {
    type Output = ZPoly;
    fn add(self, rhs: &ZPoly) -> ZPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let zero = BigInt::zero();
        ZPoly::from_coeffs(
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&zero) + rhs.coeffs.get(i).unwrap_or(&zero))
                .collect(),
        )
    }
}

impl Sub for &ZPoly {
    type Output = ZPoly;
    fn sub(self, rhs: &ZPoly) -> ZPoly {
        self + &(-rhs)
    }
}

impl Neg for &ZPoly {
    type Output = ZPoly;
    fn neg(self) -> ZPoly {
        ZPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &ZPoly {
    type Output = ZPoly;
    fn mul(self, rhs: &ZPoly) -> ZPoly {
        if self.is_zero() || rhs.is_zero() {
            return ZPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        ZPoly::from_coeffs(out)
    }
}

impl fmt::Display for ZPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else if c.is_negative() {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            first = false;
            let unit = mag.is_one();
            match i {
                0 => write!(f, "{mag}")?,
                1 if unit => f.write_str("X")?,
                1 => write!(f, "{mag}X")?,
                _ if unit => write!(f, "X^{i}")?,
                _ => write!(f, "{mag}X^{i}")?,
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("{0} has negative leading coefficient, so it is not in Z[X]+")]
    Negative(ZPoly),
    #[error("cannot read polynomial {text:?}: {msg}")]
    Syntax { text: String, msg: String },
}

/// An element of ℤ\[X\]⁺: zero, or a polynomial with positive leading
/// coefficient.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PolyPlus(ZPoly);

impl PolyPlus {
    pub fn zero() -> PolyPlus {
        PolyPlus(ZPoly::zero())
    }

    pub fn one() -> PolyPlus {
        PolyPlus(ZPoly::constant(1))
    }

    pub fn x() -> PolyPlus {
        PolyPlus(ZPoly::x())
    }

    pub fn constant(n: u64) -> PolyPlus {
        PolyPlus(ZPoly::constant(n))
    }

    pub fn new(p: ZPoly) -> Result<PolyPlus, PolyError> {
        if p.is_nonnegative() {
            Ok(PolyPlus(p))
        } else {
            Err(PolyError::Negative(p))
        }
    }

    pub fn as_poly(&self) -> &ZPoly {
        &self.0
    }

    pub fn into_poly(self) -> ZPoly {
        self.0
    }

    /// `self − other` if it stays in ℤ\[X\]⁺, i.e. if `other ≤ self`.
    pub fn checked_sub(&self, other: &PolyPlus) -> Option<PolyPlus> {
        PolyPlus::new(&self.0 - &other.0).ok()
    }

    /// Parses `2X^2 - 3X + 1`-style text; `X` may also be written `x`.
    pub fn parse(text: &str) -> Result<PolyPlus, PolyError> {
        let p = parse_zpoly(text)?;
        PolyPlus::new(p)
    }
}

impl Add for &PolyPlus {
    type Output = PolyPlus;
    fn add(self, rhs: &PolyPlus) -> PolyPlus {
        PolyPlus(&self.0 + &rhs.0)
    }
}

impl Mul for &PolyPlus {
    type Output = PolyPlus;
    fn mul(self, rhs: &PolyPlus) -> PolyPlus {
        PolyPlus(&self.0 * &rhs.0)
    }
}

impl fmt::Display for PolyPlus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl Serialize for PolyPlus {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

fn parse_zpoly(text: &str) -> Result<ZPoly, PolyError> {
    let err = |msg: &str| PolyError::Syntax {
        text: text.to_string(),
        msg: msg.to_string(),
    };
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(err("empty"));
    }
    let mut coeffs: Vec<BigInt> = Vec::new();
    let bytes = compact.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let mut sign = BigInt::one();
        if bytes[i] == b'+' || bytes[i] == b'-' {
            if bytes[i] == b'-' {
                sign = -sign;
            }
            i += 1;
        } else if i != 0 {
            return Err(err("expected + or -"));
        }
        let start = i;
        while i < bytes.len() && bytes[i].is_ascii_digit() {
            i += 1;
        }
        let mag: Option<BigInt> = if i > start {
            Some(compact[start..i].parse().map_err(|_| err("bad number"))?)
        } else {
            None
        };
        if i < bytes.len() && bytes[i] == b'*' {
            i += 1;
        }
        let power = if i < bytes.len() && (bytes[i] == b'X' || bytes[i] == b'x') {
            i += 1;
            if i < bytes.len() && bytes[i] == b'^' {
                i += 1;
                let s = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                compact[s..i].parse::<usize>().map_err(|_| err("bad exponent"))?
            } else {
                1
            }
        } else {
            if mag.is_none() {
                return Err(err("expected a coefficient or X"));
            }
            0
        };
        let c = sign * mag.unwrap_or_else(BigInt::one);
        if coeffs.len() <= power {
            coeffs.resize(power + 1, BigInt::zero());
        }
        coeffs[power] += c;
    }
    Ok(ZPoly::from_coeffs(coeffs))
}

/// Every element of ℤ\[X\]⁺ with degree at most `max_degree` and all
/// coefficients in `[-max_coeff, max_coeff]`, in canonical order: by degree,
/// then coefficients from the leading one down, each in the order
/// `0, 1, -1, 2, -2, …` (leading coefficients `1, 2, …`).
pub fn enumerate_polys(max_degree: usize, max_coeff: u64) -> Vec<PolyPlus> {
    let small: Vec<i64> = std::iter::once(0)
        .chain((1..=max_coeff as i64).flat_map(|c| [c, -c]))
        .collect();
    let mut out = vec![PolyPlus::zero()];
    for deg in 0..=max_degree {
        let lower_count = small.len().pow(deg as u32);
        for lead in 1..=max_coeff as i64 {
            for idx in 0..lower_count {
                // idx enumerates the lower coefficients, most significant first
                let mut coeffs = vec![0i64; deg + 1];
                coeffs[deg] = lead;
                let mut rest = idx;
                for k in (0..deg).rev() {
                    let digit = rest / small.len().pow(k as u32);
                    rest %= small.len().pow(k as u32);
                    coeffs[k] = small[digit];
                }
                out.push(PolyPlus(ZPoly::from_i64s(&coeffs)));
            }
        }
    }
    out
}

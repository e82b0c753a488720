//! Laurent polynomials in one variable with exact integer coefficients.
//!
//! The zero polynomial is stored with an empty coefficient vector; every
//! nonzero polynomial keeps its first and last coefficient nonzero, so
//! structural equality coincides with mathematical equality.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct LaurentPoly {
    /// Exponent of `coeffs[0]`.
    offset: i64,
    /// Coefficient of `t^(offset + k)` at index `k`.
    coeffs: Vec<BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly { offset: 0, coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::monomial(0, BigInt::one())
    }

    pub fn monomial(exp: i64, coeff: BigInt) -> Self {
        if coeff.is_zero() {
            return Self::zero();
        }
        LaurentPoly { offset: exp, coeffs: vec![coeff] }
    }

    /// `t` itself.
    pub fn variable() -> Self {
        Self::monomial(1, BigInt::one())
    }

    pub fn from_coeffs(offset: i64, coeffs: Vec<BigInt>) -> Self {
        let mut p = LaurentPoly { offset, coeffs };
        p.trim();
        p
    }

    pub fn from_i64_coeffs(offset: i64, coeffs: &[i64]) -> Self {
        Self::from_coeffs(offset, coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    fn trim(&mut self) {
        while self.coeffs.last().map_or(false, |c| c.is_zero()) {
            self.coeffs.pop();
        }
        let leading_zeros = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if leading_zeros > 0 {
            self.coeffs.drain(..leading_zeros);
            self.offset += leading_zeros as i64;
        }
        if self.coeffs.is_empty() {
            self.offset = 0;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Lowest exponent with nonzero coefficient. None for the zero polynomial.
    pub fn min_exp(&self) -> Option<i64> {
        if self.is_zero() { None } else { Some(self.offset) }
    }

    pub fn max_exp(&self) -> Option<i64> {
        if self.is_zero() { None } else { Some(self.offset + self.coeffs.len() as i64 - 1) }
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        let idx = exp - self.offset;
        if idx < 0 || idx >= self.coeffs.len() as i64 {
            BigInt::zero()
        } else {
            self.coeffs[idx as usize].clone()
        }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn offset(&self) -> i64 {
        self.offset
    }

    pub fn shift(&self, k: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        LaurentPoly { offset: self.offset + k, coeffs: self.coeffs.clone() }
    }

    /// Evaluation at an integer point; requires all exponents nonnegative.
    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        assert!(self.is_zero() || self.offset >= 0, "cannot evaluate negative powers at an integer");
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc * x.pow(self.offset.max(0) as u32)
    }

    /// `t^(min+max) * p(1/t)`: reverses the coefficient sequence in place of
    /// the original exponent span.
    pub fn reversed(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        LaurentPoly { offset: self.offset, coeffs }
    }

    /// Multiplies by `±t^k` so the lowest exponent becomes 0 and the constant
    /// coefficient is positive.
    pub fn normalized(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut p = self.shift(-self.offset);
        if p.coeffs[0].is_negative() {
            p = -&p;
        }
        p
    }

    /// Exact division; returns None when the divisor does not divide self.
    pub fn div_exact(&self, divisor: &LaurentPoly) -> Option<LaurentPoly> {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        if self.is_zero() {
            return Some(Self::zero());
        }
        let mut rem = self.coeffs.clone();
        let d = &divisor.coeffs;
        if rem.len() < d.len() {
            return None;
        }
        let qlen = rem.len() - d.len() + 1;
        let mut quot = vec![BigInt::zero(); qlen];
        let lead = d.last().unwrap();
        for k in (0..qlen).rev() {
            let top = rem[k + d.len() - 1].clone();
            if top.is_zero() {
                continue;
            }
            let q = &top / lead;
            if &top % lead != BigInt::zero() {
                return None;
            }
            for (i, dc) in d.iter().enumerate() {
                let val = rem[k + i].clone() - &q * dc;
                rem[k + i] = val;
            }
            quot[k] = q;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(LaurentPoly::from_coeffs(self.offset - divisor.offset, quot))
    }

    /// JSON form `{"offset": o, "coeffs": [..]}` with ascending coefficients.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(PolyJson::from(self)).expect("polynomial serialization")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let dto: PolyJson = serde_json::from_value(v.clone())
            .map_err(|e| Error::Json(format!("polynomial: {e}")))?;
        Ok(LaurentPoly::from_coeffs(
            dto.offset,
            dto.coeffs.into_iter().map(BigInt::from).collect(),
        ))
    }
}

#[derive(Serialize, Deserialize)]
struct PolyJson {
    offset: i64,
    coeffs: Vec<i64>,
}

impl From<&LaurentPoly> for PolyJson {
    fn from(p: &LaurentPoly) -> Self {
        PolyJson {
            offset: p.offset,
            coeffs: p
                .coeffs
                .iter()
                .map(|c| i64::try_from(c).expect("coefficient exceeds the i64 range of the JSON format"))
                .collect(),
        }
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let exp = self.offset + k as i64;
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if mag != BigInt::one() || exp == 0 {
                write!(f, "{mag}")?;
            }
            match exp {
                0 => {}
                1 => write!(f, "t")?,
                _ => write!(f, "t^{exp}")?,
            }
        }
        Ok(())
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let lo = self.offset.min(rhs.offset);
        let hi = (self.offset + self.coeffs.len() as i64).max(rhs.offset + rhs.coeffs.len() as i64);
        let mut coeffs = vec![BigInt::zero(); (hi - lo) as usize];
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs[(self.offset - lo) as usize + k] += c;
        }
        for (k, c) in rhs.coeffs.iter().enumerate() {
            coeffs[(rhs.offset - lo) as usize + k] += c;
        }
        LaurentPoly::from_coeffs(lo, coeffs)
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            offset: self.offset,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        LaurentPoly::from_coeffs(self.offset + rhs.offset, coeffs)
    }
}

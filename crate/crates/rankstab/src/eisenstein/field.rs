//! Elements of the fraction field Q(ω), stored as canonical num/den pairs.

use super::{euclid_gcd, EisInt, PrimeElem};
use crate::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// An exact element of Q(ω) in canonical form: gcd(num, den) is a unit and
/// den is the canonical associate of itself.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "FieldElemWire", into = "FieldElemWire")]
pub struct FieldElem {
    num: EisInt,
    den: EisInt,
}

#[derive(Serialize, Deserialize)]
struct FieldElemWire {
    num: EisInt,
    den: EisInt,
}

impl From<FieldElem> for FieldElemWire {
    fn from(x: FieldElem) -> Self {
        FieldElemWire { num: x.num, den: x.den }
    }
}

impl TryFrom<FieldElemWire> for FieldElem {
    type Error = Error;
    fn try_from(w: FieldElemWire) -> Result<Self> {
        FieldElem::new(w.num, w.den)
    }
}

impl FieldElem {
    pub fn new(num: EisInt, den: EisInt) -> Result<FieldElem> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(FieldElem { num: EisInt::zero(), den: EisInt::one() });
        }
        let g = euclid_gcd(&num, &den)?;
        let num = num.exact_div(&g)?;
        let den = den.exact_div(&g)?;
        let (den, u) = den.canonical_assoc();
        Ok(FieldElem { num: &u * &num, den })
    }

    pub fn from_int(x: EisInt) -> FieldElem {
        FieldElem { num: x, den: EisInt::one() }
    }

    pub fn zero() -> FieldElem {
        FieldElem::from_int(EisInt::zero())
    }

    pub fn one() -> FieldElem {
        FieldElem::from_int(EisInt::one())
    }

    pub fn num(&self) -> &EisInt {
        &self.num
    }

    pub fn den(&self) -> &EisInt {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_integral(&self) -> bool {
        self.den.is_unit()
    }

    /// The integral value, if the denominator is a unit.
    pub fn to_int(&self) -> Option<EisInt> {
        if self.den.is_unit() {
            // canonical den of a unit is 1
            Some(self.num.clone())
        } else {
            None
        }
    }

    pub fn inverse(&self) -> Result<FieldElem> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        FieldElem::new(self.den.clone(), self.num.clone())
    }

    pub fn pow(&self, e: i64) -> Result<FieldElem> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut k = e.unsigned_abs();
        let mut acc = FieldElem::one();
        let mut b = base;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &b;
            }
            b = &b * &b;
            k >>= 1;
        }
        Ok(acc)
    }

    /// v_p(num) − v_p(den).
    pub fn valuation(&self, p: &PrimeElem) -> Result<i64> {
        if self.is_zero() {
            return Err(Error::ZeroInput("valuation of zero"));
        }
        let (vn, _) = self.num.valuation(p.value())?;
        let (vd, _) = self.den.valuation(p.value())?;
        Ok(vn as i64 - vd as i64)
    }

    /// Divide out p^v exactly (v may be negative).
    pub fn shift_prime(&self, p: &PrimeElem, v: i64) -> Result<FieldElem> {
        let pw = FieldElem::from_int(p.value().clone()).pow(v)?;
        Ok(self / &pw)
    }
}

impl Add for &FieldElem {
    type Output = FieldElem;
    fn add(self, rhs: &FieldElem) -> FieldElem {
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        FieldElem::new(num, &self.den * &rhs.den).unwrap()
    }
}

impl Sub for &FieldElem {
    type Output = FieldElem;
    fn sub(self, rhs: &FieldElem) -> FieldElem {
        self + &(-rhs)
    }
}

impl Mul for &FieldElem {
    type Output = FieldElem;
    fn mul(self, rhs: &FieldElem) -> FieldElem {
        FieldElem::new(&self.num * &rhs.num, &self.den * &rhs.den).unwrap()
    }
}

impl Div for &FieldElem {
    type Output = FieldElem;
    fn div(self, rhs: &FieldElem) -> FieldElem {
        assert!(!rhs.is_zero(), "division by zero field element");
        FieldElem::new(&self.num * &rhs.den, &self.den * &rhs.num).unwrap()
    }
}

impl Neg for &FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        FieldElem { num: -&self.num, den: self.den.clone() }
    }
}

impl Neg for FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        -&self
    }
}

impl From<EisInt> for FieldElem {
    fn from(x: EisInt) -> Self {
        FieldElem::from_int(x)
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_unit() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(a: i64, b: i64) -> EisInt {
        EisInt::new(a, b)
    }

    fn q(na: i64, nb: i64, da: i64, db: i64) -> FieldElem {
        FieldElem::new(e(na, nb), e(da, db)).unwrap()
    }

    #[test]
    fn canonical_form_reduces() {
        // 6/2 = 3
        assert_eq!(q(6, 0, 2, 0), FieldElem::from_int(e(3, 0)));
        // num/den scaled by a common prime reduce identically
        assert_eq!(q(14, 0, 4, 0), q(7, 0, 2, 0));
    }

    #[test]
    fn canonical_den_is_sector_normalized() {
        let x = q(1, 0, -2, 0); // 1/(−2) → −1/2
        assert_eq!(x.den(), &e(2, 0));
        assert_eq!(x.num(), &e(-1, 0));
        let y = q(1, 0, 2, 1); // den 2+ω normalizes to 1−ω sector rep
        assert!(y.den().is_canonical_assoc());
    }

    #[test]
    fn arithmetic_identities() {
        let a = q(3, 1, 7, 1); // (3+ω)/(7+ω)
        let b = q(2, 0, 7, 1); // 2/(7+ω)
        // a + 2b = 1
        let two = FieldElem::from_int(e(2, 0));
        assert_eq!(&a + &(&two * &b), FieldElem::one());
        let t = &a * &b;
        // t = 2(3+ω)/(7+ω)²
        let expect = FieldElem::new(&e(2, 0) * &e(3, 1), &e(7, 1) * &e(7, 1)).unwrap();
        assert_eq!(t, expect);
    }

    #[test]
    fn inverse_and_pow() {
        let x = q(3, 1, 2, 0);
        assert_eq!(&x * &x.inverse().unwrap(), FieldElem::one());
        assert_eq!(x.pow(0).unwrap(), FieldElem::one());
        assert_eq!(x.pow(-2).unwrap(), x.inverse().unwrap().pow(2).unwrap());
    }

    #[test]
    fn serde_round_trip() {
        let x = q(3, 1, 7, 1);
        let s = serde_json::to_string(&x).unwrap();
        let y: FieldElem = serde_json::from_str(&s).unwrap();
        assert_eq!(x, y);
        // non-canonical wire forms normalize on read
        let z: FieldElem =
            serde_json::from_str(r#"{"den":{"a":"4","b":"0"},"num":{"a":"2","b":"0"}}"#).unwrap();
        assert_eq!(z, q(1, 0, 2, 0));
    }
}

//! Exact arithmetic in Z[ω] and Q(ω), where ω² + ω + 1 = 0.
//!
//! Elements are stored on the basis (1, ω). The ring is norm-Euclidean with
//! N(a + bω) = a² − ab + b², and has exactly six units {±1, ±ω, ±ω²}.
//! Division reduces via the nearest lattice point, which guarantees
//! N(r) ≤ ¾·N(d) for the remainder.

mod field;
mod primality;
mod primes;
mod residues;
mod symbols;

pub use field::FieldElem;
pub use primality::is_prime_integer;
pub use primes::{factor, is_prime_element, Factorization, PrimeElem, PrimeKind};
pub use residues::{crt_solve, CosetByNorm, ResidueClass, ResidueRing};
pub use symbols::{is_local_power, residue_symbol, SymbolValue};

use crate::{Error, Result};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

/// An element a + bω of Z[ω].
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct EisInt {
    a: BigInt,
    b: BigInt,
}

impl EisInt {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>) -> Self {
        EisInt { a: a.into(), b: b.into() }
    }

    pub fn zero() -> Self {
        EisInt::new(0, 0)
    }

    pub fn one() -> Self {
        EisInt::new(1, 0)
    }

    pub fn omega() -> Self {
        EisInt::new(0, 1)
    }

    /// The ramified prime λ = 1 − ω above 3.
    pub fn lambda() -> Self {
        EisInt::new(1, -1)
    }

    /// The six units 1, −1, ω, −ω, ω², −ω².
    pub fn units() -> [EisInt; 6] {
        [
            EisInt::new(1, 0),
            EisInt::new(-1, 0),
            EisInt::new(0, 1),
            EisInt::new(0, -1),
            EisInt::new(-1, -1),
            EisInt::new(1, 1),
        ]
    }

    pub fn coeff_a(&self) -> &BigInt {
        &self.a
    }

    pub fn coeff_b(&self) -> &BigInt {
        &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// N(a + bω) = a² − ab + b² ≥ 0.
    pub fn norm(&self) -> BigInt {
        &self.a * &self.a - &self.a * &self.b + &self.b * &self.b
    }

    pub fn is_unit(&self) -> bool {
        self.norm().is_one()
    }

    /// Complex conjugate: ω ↦ ω² = −1 − ω, so a + bω ↦ (a − b) − bω.
    pub fn conj(&self) -> EisInt {
        EisInt { a: &self.a - &self.b, b: -&self.b }
    }

    pub fn pow(&self, mut e: u64) -> EisInt {
        let mut base = self.clone();
        let mut acc = EisInt::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Euclidean division by the nearest lattice point: x = q·d + r with
    /// N(r) ≤ ¾·N(d). Among the four corner candidates the remainder of
    /// minimal norm is chosen, ties broken by lexicographic (a, b).
    pub fn divmod(&self, d: &EisInt) -> Result<(EisInt, EisInt)> {
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = d.norm();
        let t = self * &d.conj();
        let qa = num_integer::Integer::div_floor(&t.a, &n);
        let qb = num_integer::Integer::div_floor(&t.b, &n);
        let mut best: Option<((BigInt, BigInt, BigInt), EisInt, EisInt)> = None;
        for da in 0..2u8 {
            for db in 0..2u8 {
                let q = EisInt::new(&qa + da, &qb + db);
                let r = self - &(&q * d);
                let key = (r.norm(), r.a.clone(), r.b.clone());
                if best.as_ref().map_or(true, |(k, _, _)| key < *k) {
                    best = Some((key, q, r));
                }
            }
        }
        let (_, q, r) = best.unwrap();
        Ok((q, r))
    }

    pub fn divides(&self, x: &EisInt) -> bool {
        if self.is_zero() {
            return x.is_zero();
        }
        let (_, r) = x.divmod(self).unwrap();
        r.is_zero()
    }

    /// Exact quotient; errors if `d` does not divide `self`.
    pub fn exact_div(&self, d: &EisInt) -> Result<EisInt> {
        let (q, r) = self.divmod(d)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::InexactDivision)
        }
    }

    /// The number of times `p` divides `self` (self ≠ 0), with the cofactor.
    pub fn valuation(&self, p: &EisInt) -> Result<(u64, EisInt)> {
        if self.is_zero() {
            return Err(Error::ZeroInput("valuation of zero"));
        }
        if p.is_zero() || p.is_unit() {
            return Err(Error::BadModulus("valuation requires a non-unit, nonzero element"));
        }
        let mut v = 0u64;
        let mut x = self.clone();
        loop {
            let (q, r) = x.divmod(p)?;
            if r.is_zero() {
                v += 1;
                x = q;
            } else {
                return Ok((v, x));
            }
        }
    }

    /// The canonical associate: the unique associate lying in the sector of
    /// angle [−30°, 30°) about the positive real axis, i.e. with
    /// a + b ≥ 0 and a > 2b. Restricted to Z this picks |x|; it picks
    /// λ = 1 − ω among the associates of λ. Returns (canonical, u) with
    /// u·self = canonical.
    pub fn canonical_assoc(&self) -> (EisInt, EisInt) {
        if self.is_zero() {
            return (EisInt::zero(), EisInt::one());
        }
        for u in EisInt::units() {
            let c = &u * self;
            if (&c.a + &c.b).sign() != num_bigint::Sign::Minus && c.a > &c.b * 2 {
                return (c, u);
            }
        }
        unreachable!("every nonzero element has a canonical associate");
    }

    pub fn is_canonical_assoc(&self) -> bool {
        !self.is_zero() && self.canonical_assoc().0 == *self
    }

    /// The primary associate, the unique associate ≡ −1 (mod 3).
    /// Defined exactly when λ ∤ self. Returns (primary, u) with
    /// u·self = primary.
    pub fn primary_assoc(&self) -> Result<(EisInt, EisInt)> {
        if self.is_zero() {
            return Err(Error::ZeroInput("primary associate of zero"));
        }
        let three = EisInt::new(3, 0);
        for u in EisInt::units() {
            let c = &u * self;
            let (_, r) = (&c + &EisInt::one()).divmod(&three).unwrap();
            if r.is_zero() {
                return Ok((c, u));
            }
        }
        Err(Error::NotCoprimeToLambda)
    }

    pub fn is_primary(&self) -> bool {
        let three = EisInt::new(3, 0);
        (self + &EisInt::one()).divmod(&three).unwrap().1.is_zero()
    }

    /// Two elements generate the same ideal.
    pub fn is_associate(&self, other: &EisInt) -> bool {
        EisInt::units().iter().any(|u| &(u * self) == other)
    }
}

/// Unit-normalized greatest common divisor of x and y (not both zero).
///
/// The result divides both inputs, any common divisor divides it, and it is
/// returned as its canonical associate.
pub fn euclid_gcd(x: &EisInt, y: &EisInt) -> Result<EisInt> {
    if x.is_zero() && y.is_zero() {
        return Err(Error::GcdOfZeros);
    }
    let (mut a, mut b) = (x.clone(), y.clone());
    while !b.is_zero() {
        let (_, r) = a.divmod(&b).unwrap();
        a = b;
        b = r;
    }
    Ok(a.canonical_assoc().0)
}

/// Extended gcd: returns (g, s, t) with s·x + t·y = g and g canonical.
pub fn extended_gcd(x: &EisInt, y: &EisInt) -> Result<(EisInt, EisInt, EisInt)> {
    if x.is_zero() && y.is_zero() {
        return Err(Error::GcdOfZeros);
    }
    let (mut r0, mut r1) = (x.clone(), y.clone());
    let (mut s0, mut s1) = (EisInt::one(), EisInt::zero());
    let (mut t0, mut t1) = (EisInt::zero(), EisInt::one());
    while !r1.is_zero() {
        let (q, r) = r0.divmod(&r1).unwrap();
        r0 = std::mem::replace(&mut r1, r);
        let ns = &s0 - &(&q * &s1);
        s0 = std::mem::replace(&mut s1, ns);
        let nt = &t0 - &(&q * &t1);
        t0 = std::mem::replace(&mut t1, nt);
    }
    let (g, u) = r0.canonical_assoc();
    Ok((g, &u * &s0, &u * &t0))
}

impl Add for &EisInt {
    type Output = EisInt;
    fn add(self, rhs: &EisInt) -> EisInt {
        EisInt { a: &self.a + &rhs.a, b: &self.b + &rhs.b }
    }
}

impl Sub for &EisInt {
    type Output = EisInt;
    fn sub(self, rhs: &EisInt) -> EisInt {
        EisInt { a: &self.a - &rhs.a, b: &self.b - &rhs.b }
    }
}

impl Mul for &EisInt {
    type Output = EisInt;
    fn mul(self, rhs: &EisInt) -> EisInt {
        // (a+bω)(c+dω) = (ac − bd) + (ad + bc − bd)ω
        let ac = &self.a * &rhs.a;
        let bd = &self.b * &rhs.b;
        let ad_bc = &self.a * &rhs.b + &self.b * &rhs.a;
        EisInt { a: ac - &bd, b: ad_bc - bd }
    }
}

impl Neg for &EisInt {
    type Output = EisInt;
    fn neg(self) -> EisInt {
        EisInt { a: -&self.a, b: -&self.b }
    }
}

macro_rules! forward_owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for EisInt {
            type Output = EisInt;
            fn $method(self, rhs: EisInt) -> EisInt {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&EisInt> for EisInt {
            type Output = EisInt;
            fn $method(self, rhs: &EisInt) -> EisInt {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

impl Neg for EisInt {
    type Output = EisInt;
    fn neg(self) -> EisInt {
        -&self
    }
}

impl From<i64> for EisInt {
    fn from(v: i64) -> Self {
        EisInt::new(v, 0)
    }
}

impl fmt::Display for EisInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        let bw = if self.b.is_one() {
            "w".to_string()
        } else if self.b == BigInt::from(-1) {
            "-w".to_string()
        } else {
            format!("{}w", self.b)
        };
        if self.a.is_zero() {
            write!(f, "{bw}")
        } else if self.b.is_positive() {
            write!(f, "{}+{}", self.a, bw)
        } else {
            write!(f, "{}{}", self.a, bw)
        }
    }
}

impl fmt::Debug for EisInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for EisInt {
    type Err = Error;

    /// Accepts `"5"`, `"-1"`, `"w"`, `"-2w"`, `"3+w"`, `"3-2w"`, and the
    /// explicit pair form `"(a,b)"`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::ParseEisInt(s.to_string());
        if let Some(inner) = s.strip_prefix('(').and_then(|t| t.strip_suffix(')')) {
            let mut it = inner.split(',');
            let a = it.next().ok_or_else(bad)?.trim();
            let b = it.next().ok_or_else(bad)?.trim();
            if it.next().is_some() {
                return Err(bad());
            }
            return Ok(EisInt {
                a: a.parse().map_err(|_| bad())?,
                b: b.parse().map_err(|_| bad())?,
            });
        }
        // split into rational part and ω part at the last +/- that is not leading
        let norm_s: String = s.replace("ω", "w").chars().filter(|c| !c.is_whitespace()).collect();
        let parse_w_coeff = |t: &str| -> Result<BigInt> {
            match t {
                "" | "+" => Ok(BigInt::one()),
                "-" => Ok(BigInt::from(-1)),
                _ => t.parse().map_err(|_| bad()),
            }
        };
        if let Some(idx) = norm_s.rfind('w') {
            if idx + 1 != norm_s.len() {
                return Err(bad());
            }
            let body = &norm_s[..idx];
            // find the split point between the a-part and the b-coefficient
            let mut split = None;
            for (i, c) in body.char_indices().rev() {
                if (c == '+' || c == '-') && i > 0 {
                    split = Some(i);
                    break;
                }
            }
            match split {
                Some(i) => Ok(EisInt {
                    a: body[..i].parse().map_err(|_| bad())?,
                    b: parse_w_coeff(&body[i..])?,
                }),
                None => Ok(EisInt { a: BigInt::zero(), b: parse_w_coeff(body)? }),
            }
        } else {
            Ok(EisInt { a: norm_s.parse().map_err(|_| bad())?, b: BigInt::zero() })
        }
    }
}

#[derive(Serialize, Deserialize)]
struct EisIntWire {
    a: String,
    b: String,
}

impl Serialize for EisInt {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        EisIntWire { a: self.a.to_string(), b: self.b.to_string() }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for EisInt {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let w = EisIntWire::deserialize(deserializer)?;
        let a: BigInt = w.a.parse().map_err(|_| D::Error::custom("bad integer string"))?;
        let b: BigInt = w.b.parse().map_err(|_| D::Error::custom("bad integer string"))?;
        Ok(EisInt { a, b })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(a: i64, b: i64) -> EisInt {
        EisInt::new(a, b)
    }

    #[test]
    fn norm_values() {
        assert_eq!(e(3, 1).norm(), BigInt::from(7));
        assert_eq!(e(1, -1).norm(), BigInt::from(3));
        assert_eq!(e(7, 1).norm(), BigInt::from(43));
        assert_eq!(e(4, -2).norm(), BigInt::from(28));
        assert_eq!(EisInt::zero().norm(), BigInt::zero());
    }

    #[test]
    fn units_have_norm_one() {
        for u in EisInt::units() {
            assert!(u.is_unit(), "{u}");
        }
        // ω² = −1−ω squared against ω·ω
        let w2 = &EisInt::omega() * &EisInt::omega();
        assert_eq!(w2, e(-1, -1));
    }

    #[test]
    fn divmod_euclidean_small() {
        let x = e(17, 5);
        let d = e(3, 1);
        let (q, r) = x.divmod(&d).unwrap();
        assert_eq!(&(&q * &d) + &r, x);
        assert!(r.norm() < d.norm());
    }

    #[test]
    fn canonical_assoc_examples() {
        assert_eq!(e(5, 0).canonical_assoc().0, e(5, 0));
        assert_eq!(e(-5, 0).canonical_assoc().0, e(5, 0));
        assert_eq!(e(1, -1).canonical_assoc().0, e(1, -1));
        assert_eq!(e(3, 1).canonical_assoc().0, e(3, 1));
        // boundary at +30°: 2+ω rotates to 1−ω
        assert_eq!(e(2, 1).canonical_assoc().0, e(1, -1));
    }

    #[test]
    fn primary_assoc_examples() {
        assert_eq!(e(3, 1).primary_assoc().unwrap().0, e(2, 3));
        assert_eq!(e(2, -1).primary_assoc().unwrap().0, e(-1, -3));
        assert_eq!(e(7, 1).primary_assoc().unwrap().0, e(-1, 6));
        assert_eq!(e(5, 0).primary_assoc().unwrap().0, e(5, 0));
        assert_eq!(e(2, 0).primary_assoc().unwrap().0, e(2, 0));
        assert!(e(1, -1).primary_assoc().is_err());
    }

    #[test]
    fn primary_assoc_unique_small_sweep() {
        // every nonzero non-unit coprime to λ has exactly one primary associate
        for a in -10i64..=10 {
            for b in -10i64..=10 {
                let x = e(a, b);
                if x.is_zero() || x.is_unit() {
                    continue;
                }
                if EisInt::lambda().divides(&x) {
                    continue;
                }
                let count = EisInt::units().iter().filter(|u| (*u * &x).is_primary()).count();
                assert_eq!(count, 1, "{x}");
            }
        }
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(euclid_gcd(&e(0, 0), &e(5, 0)).unwrap(), e(5, 0));
        assert_eq!(euclid_gcd(&e(1, -1), &e(3, 0)).unwrap(), e(1, -1));
        assert_eq!(euclid_gcd(&e(3, 1), &e(7, 0)).unwrap(), e(3, 1));
        assert!(euclid_gcd(&EisInt::zero(), &EisInt::zero()).is_err());
    }

    #[test]
    fn gcd_divides_both() {
        // exhaustive trial-division oracle for gcd(3+ω, 7): every common
        // divisor class of norm > 1 must be an associate of the gcd
        let x = e(3, 1);
        let y = e(7, 0);
        let g = euclid_gcd(&x, &y).unwrap();
        assert!(g.divides(&x) && g.divides(&y));
        for a in -8i64..=8 {
            for b in -8i64..=8 {
                let d = e(a, b);
                if d.is_zero() || d.is_unit() {
                    continue;
                }
                if d.divides(&x) && d.divides(&y) {
                    assert!(d.divides(&g), "common divisor {d} must divide gcd {g}");
                }
            }
        }
    }

    #[test]
    fn extended_gcd_identity() {
        let x = e(12, 7);
        let y = e(5, -3);
        let (g, s, t) = extended_gcd(&x, &y).unwrap();
        assert_eq!(&(&s * &x) + &(&t * &y), g);
    }

    #[test]
    fn parse_and_display() {
        for s in ["5", "-1", "w", "-w", "3+w", "3-2w", "-2-3w", "0"] {
            let x: EisInt = s.parse().unwrap();
            let y: EisInt = x.to_string().parse().unwrap();
            assert_eq!(x, y);
        }
        assert_eq!("(4,-7)".parse::<EisInt>().unwrap(), e(4, -7));
        assert_eq!("1-w".parse::<EisInt>().unwrap(), EisInt::lambda());
        assert!("3+q".parse::<EisInt>().is_err());
    }

    #[test]
    fn serde_round_trip() {
        let x = e(-12345, 678);
        let s = serde_json::to_string(&x).unwrap();
        assert_eq!(s, r#"{"a":"-12345","b":"678"}"#);
        let y: EisInt = serde_json::from_str(&s).unwrap();
        assert_eq!(x, y);
    }

    #[test]
    fn valuation_strips_exactly() {
        let lam = EisInt::lambda();
        let x = &lam.pow(3) * &e(2, 3);
        let (v, cof) = x.valuation(&lam).unwrap();
        assert_eq!(v, 3);
        assert_eq!(cof, e(2, 3));
    }
}

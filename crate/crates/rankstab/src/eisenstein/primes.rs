//! Prime elements of Z[ω]: classification, normalization, and factorization.
//!
//! The splitting law over the rational prime p:
//!   p = 3          ramified, 3 = −ω²·λ² with λ = 1 − ω;
//!   p ≡ 1 (mod 3)  split, p = π·π̄ with N(π) = p;
//!   p ≡ 2 (mod 3)  inert, N(p) = p².

use super::{euclid_gcd, is_prime_integer, EisInt};
use crate::{Error, Result};
use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PrimeKind {
    Split,
    Inert,
    Ramified,
}

/// A unit-normalized Eisenstein prime with cached norm and splitting kind.
///
/// Split and inert primes are stored as their primary associate
/// (≡ −1 mod 3); the ramified prime is stored as λ = 1 − ω.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "PrimeElemWire", into = "PrimeElemWire")]
pub struct PrimeElem {
    value: EisInt,
    norm: BigInt,
    kind: PrimeKind,
}

#[derive(Serialize, Deserialize)]
struct PrimeElemWire {
    value: EisInt,
    norm: String,
    kind: PrimeKind,
}

impl From<PrimeElem> for PrimeElemWire {
    fn from(p: PrimeElem) -> Self {
        PrimeElemWire { value: p.value, norm: p.norm.to_string(), kind: p.kind }
    }
}

impl TryFrom<PrimeElemWire> for PrimeElem {
    type Error = Error;
    fn try_from(w: PrimeElemWire) -> Result<Self> {
        let p = PrimeElem::new(&w.value)?;
        if p.value != w.value || p.norm.to_string() != w.norm || p.kind != w.kind {
            return Err(Error::Schema(format!("prime record for {} is not normalized", w.value)));
        }
        Ok(p)
    }
}

impl PrimeElem {
    /// Normalizes an arbitrary prime element; errors if `x` is not prime.
    pub fn new(x: &EisInt) -> Result<PrimeElem> {
        if !is_prime_element(x)? {
            return Err(Error::NotPrime(x.to_string()));
        }
        let norm = x.norm();
        let three = BigInt::from(3);
        if norm == three {
            return Ok(PrimeElem { value: EisInt::lambda(), norm, kind: PrimeKind::Ramified });
        }
        let kind = if is_prime_integer(norm.magnitude()) { PrimeKind::Split } else { PrimeKind::Inert };
        let (value, _) = x.primary_assoc()?;
        Ok(PrimeElem { value, norm, kind })
    }

    pub fn lambda() -> PrimeElem {
        PrimeElem { value: EisInt::lambda(), norm: BigInt::from(3), kind: PrimeKind::Ramified }
    }

    pub fn value(&self) -> &EisInt {
        &self.value
    }

    pub fn norm(&self) -> &BigInt {
        &self.norm
    }

    pub fn kind(&self) -> PrimeKind {
        self.kind
    }

    /// The rational prime below: 3 for λ, p for split (N = p) and inert (N = p²).
    pub fn residue_char(&self) -> BigUint {
        match self.kind {
            PrimeKind::Ramified => BigUint::from(3u32),
            PrimeKind::Split => self.norm.magnitude().clone(),
            PrimeKind::Inert => self.norm.magnitude().sqrt(),
        }
    }

    pub fn is_lambda(&self) -> bool {
        self.kind == PrimeKind::Ramified
    }

    /// The inert prime 2.
    pub fn two() -> PrimeElem {
        PrimeElem { value: EisInt::new(2, 0), norm: BigInt::from(4), kind: PrimeKind::Inert }
    }

    pub fn divides(&self, x: &EisInt) -> bool {
        self.value.divides(x)
    }
}

impl fmt::Display for PrimeElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl fmt::Debug for PrimeElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (N={}, {:?})", self.value, self.norm, self.kind)
    }
}

/// Whether `x` generates a prime ideal of Z[ω].
///
/// Equivalent to: N(x) is prime, or N(x) = p² with p prime ≡ 2 (mod 3) and
/// x an associate of p. Errors on zero or unit input.
pub fn is_prime_element(x: &EisInt) -> Result<bool> {
    if x.is_zero() {
        return Err(Error::ZeroInput("primality of zero"));
    }
    if x.is_unit() {
        return Err(Error::UnitInput(x.to_string()));
    }
    let n = x.norm();
    let nu = n.magnitude();
    if is_prime_integer(nu) {
        return Ok(true);
    }
    let r = nu.sqrt();
    if &(&r * &r) == nu && is_prime_integer(&r) && (&r % 3u32).to_u32() == Some(2) {
        let p = EisInt::new(BigInt::from(r), BigInt::zero());
        return Ok(x.is_associate(&p));
    }
    Ok(false)
}

/// A complete factorization x = unit · ∏ pᵢ^eᵢ with primary-normalized
/// primes sorted by (norm, a, b).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Factorization {
    pub unit: EisInt,
    pub factors: Vec<(PrimeElem, u32)>,
}

impl Factorization {
    pub fn recompose(&self) -> EisInt {
        let mut acc = self.unit.clone();
        for (p, e) in &self.factors {
            acc = &acc * &p.value().pow(*e as u64);
        }
        acc
    }

    /// The squarefree part together with the perfect-square cofactor
    /// (unit · ∏ p^{e mod 2}, ∏ p^{⌊e/2⌋}).
    pub fn squarefree_part(&self) -> (EisInt, EisInt) {
        let mut free = self.unit.clone();
        let mut sq = EisInt::one();
        for (p, e) in &self.factors {
            if e % 2 == 1 {
                free = &free * p.value();
            }
            sq = &sq * &p.value().pow((e / 2) as u64);
        }
        (free, sq)
    }

    pub fn support(&self) -> Vec<&PrimeElem> {
        self.factors.iter().map(|(p, _)| p).collect()
    }
}

/// Trial-division bound for norms; inputs here are desk scale.
const FACTOR_NORM_LIMIT_BITS: u64 = 80;

fn factor_norm(n: &BigUint) -> Result<Vec<(BigUint, u32)>> {
    if n.bits() > FACTOR_NORM_LIMIT_BITS {
        return Err(Error::NormTooLarge(n.to_string()));
    }
    let mut n = n.clone();
    let mut out: Vec<(BigUint, u32)> = Vec::new();
    let mut push = |p: BigUint, e: u32| {
        if e > 0 {
            out.push((p, e));
        }
    };
    for small in [2u32, 3u32] {
        let p = BigUint::from(small);
        let mut e = 0;
        while (&n % &p).is_zero() {
            n /= &p;
            e += 1;
        }
        push(p, e);
    }
    // 6k ± 1 wheel
    let mut d = BigUint::from(5u32);
    let mut step = BigUint::from(2u32);
    while &d * &d <= n {
        if is_prime_integer(&n) {
            break;
        }
        let mut e = 0;
        while (&n % &d).is_zero() {
            n /= &d;
            e += 1;
        }
        push(d.clone(), e);
        d += &step;
        step = BigUint::from(6u32) - step;
    }
    if n > BigUint::one() {
        push(n, 1);
    }
    Ok(out)
}

/// Find a prime of norm p for a split rational prime p ≡ 1 (mod 3), via a
/// primitive cube root of unity mod p and a gcd with p.
fn split_prime_above(p: &BigUint) -> Result<PrimeElem> {
    let p_int = BigInt::from(p.clone());
    let exp = (p - 1u32) / 3u32;
    let mut g = BigUint::from(2u32);
    let c = loop {
        let h = g.modpow(&exp, p);
        if !h.is_one() {
            break h;
        }
        g += 1u32;
        if g > p.clone() {
            return Err(Error::Internal("no cube root of unity found".into()));
        }
    };
    // gcd(p, c − ω) generates one of the two primes above p
    let cand = euclid_gcd(&EisInt::new(p_int, BigInt::zero()), &EisInt::new(BigInt::from(c), BigInt::from(-1)))?;
    PrimeElem::new(&cand)
}

/// Factor a nonzero element into primary primes and a unit.
pub fn factor(x: &EisInt) -> Result<Factorization> {
    if x.is_zero() {
        return Err(Error::ZeroInput("factorization of zero"));
    }
    let mut rest = x.clone();
    let mut factors: Vec<(PrimeElem, u32)> = Vec::new();
    let norm_factors = factor_norm(x.norm().magnitude())?;
    for (p, _) in norm_factors {
        if p == BigUint::from(3u32) {
            let lam = PrimeElem::lambda();
            let (v, cof) = rest.valuation(lam.value())?;
            if v > 0 {
                factors.push((lam, v as u32));
                rest = cof;
            }
        } else if (&p % 3u32).to_u32() == Some(1) {
            let pi = split_prime_above(&p)?;
            for cand in [pi.clone(), PrimeElem::new(&pi.value().conj())?] {
                let (v, cof) = rest.valuation(cand.value())?;
                if v > 0 {
                    factors.push((cand, v as u32));
                    rest = cof;
                }
            }
        } else {
            let q = PrimeElem::new(&EisInt::new(BigInt::from(p), BigInt::zero()))?;
            let (v, cof) = rest.valuation(q.value())?;
            if v > 0 {
                factors.push((q, v as u32));
                rest = cof;
            }
        }
    }
    if !rest.is_unit() {
        return Err(Error::Internal(format!("factor left non-unit cofactor {rest}")));
    }
    factors.sort_by(|(p, _), (q, _)| {
        (p.norm(), p.value().coeff_a(), p.value().coeff_b()).cmp(&(
            q.norm(),
            q.value().coeff_a(),
            q.value().coeff_b(),
        ))
    });
    Ok(Factorization { unit: rest, factors })
}

//! Power residue symbols and local power testing.

use super::{FieldElem, PrimeElem, ResidueClass, ResidueRing};
use crate::eisenstein::EisInt;
use crate::{Error, Result};
use num_bigint::BigInt;
use num_traits::ToPrimitive;

/// The value of an e-th power residue symbol.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SymbolValue {
    /// p divides the argument.
    Zero,
    /// A root of unity: ±1 for e = 2; one of 1, ω, ω² for e = 3.
    Unit(EisInt),
}

impl SymbolValue {
    pub fn is_one(&self) -> bool {
        matches!(self, SymbolValue::Unit(u) if u == &EisInt::one())
    }
}

/// x^((N(p)−1)/e) mod p, identified with an e-th root of unity, or Zero
/// when p | x.
///
/// Defined for e = 2 at primes of odd norm and for e = 3 at primes p ≠ λ;
/// at the excluded primes the symbol degenerates and `is_local_power` must
/// be used instead.
pub fn residue_symbol(x: &EisInt, p: &PrimeElem, e: u32) -> Result<SymbolValue> {
    let roots: Vec<EisInt> = match e {
        2 => {
            if p.residue_char() == 2u32.into() {
                return Err(Error::SymbolAtRamifiedLocus("e = 2 at the prime 2; use is_local_power"));
            }
            vec![EisInt::one(), -&EisInt::one()]
        }
        3 => {
            if p.is_lambda() {
                return Err(Error::SymbolAtRamifiedLocus("e = 3 at λ; use is_local_power"));
            }
            vec![EisInt::one(), EisInt::omega(), &EisInt::omega() * &EisInt::omega()]
        }
        _ => return Err(Error::UnsupportedExponent(e)),
    };
    let c = ResidueClass::new(x, p.value())?;
    if c.is_zero() {
        return Ok(SymbolValue::Zero);
    }
    let e_int = BigInt::from(e);
    let exp: BigInt = (p.norm() - 1) / &e_int;
    debug_assert!(BigInt::from(p.norm() - 1) % &e_int == BigInt::from(0), "N(p) ≢ 1 mod e");
    let r = c.pow(&exp)?;
    for root in roots {
        if r.contains(&root) {
            return Ok(SymbolValue::Unit(root));
        }
    }
    Err(Error::Internal(format!("symbol value not a root of unity: {r}")))
}

/// Whether x ∈ F_p^{×e} for the completion at p (e = 2 or 3, x ≠ 0).
///
/// Requires v_p(x) ≡ 0 (mod e); after dividing out p^v the unit part is
/// tested with the residue symbol when p is coprime to e, and otherwise by
/// brute-force root search modulo p^{2·v_p(e)+1}, which decides membership
/// exactly by Hensel's lemma (2³ for squares at 2, λ⁵ for cubes at λ).
pub fn is_local_power(x: &FieldElem, p: &PrimeElem, e: u32) -> Result<bool> {
    if !(e == 2 || e == 3) {
        return Err(Error::UnsupportedExponent(e));
    }
    if x.is_zero() {
        return Err(Error::ZeroInput("local power test of zero"));
    }
    let v = x.valuation(p)?;
    if v.rem_euclid(e as i64) != 0 {
        return Ok(false);
    }
    let unit_part = x.shift_prime(p, v)?;

    let char_divides_e = match e {
        2 => p.residue_char() == 2u32.into(),
        3 => p.is_lambda(),
        _ => unreachable!(),
    };

    if !char_divides_e {
        let residue = reduce_field_elem(&unit_part, p.value())?;
        return Ok(residue_symbol(&residue, p, e)?.is_one());
    }

    // Hensel threshold 2·v_p(e) + 1
    let vp_e = match e {
        2 => 1u64, // v₂(2) = 1
        3 => 2u64, // v_λ(3) = 2
        _ => unreachable!(),
    };
    let k = 2 * vp_e + 1;
    let modulus = p.value().pow(k);
    let target = reduce_field_elem(&unit_part, &modulus)?;
    let ring = ResidueRing::new(&modulus)?;
    let exp = BigInt::from(e);
    for y in ring.elements() {
        let c = ResidueClass::new(&y, &modulus)?;
        if c.pow(&exp)?.contains(&target) {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Reduce a field element with p-integral denominator modulo m (a power of p).
fn reduce_field_elem(x: &FieldElem, m: &EisInt) -> Result<EisInt> {
    let den_class = ResidueClass::new(x.den(), m)?;
    let inv = den_class
        .inverse()
        .map_err(|_| Error::BadReduction(format!("denominator of {x} not invertible mod {m}")))?;
    Ok(inv.mul_elem(x.num()).representative().clone())
}

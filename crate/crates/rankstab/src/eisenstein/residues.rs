//! Residue rings Z[ω]/(m): canonical representatives, inversion, powering,
//! enumeration, and the Chinese remainder theorem.

use super::{extended_gcd, EisInt};
use crate::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;

/// A congruence class: the representative is the canonical reduction of any
/// member (nearest-lattice-point remainder; ties by minimal (norm, a, b)).
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ResidueClass {
    modulus: EisInt,
    representative: EisInt,
}

impl ResidueClass {
    pub fn new(x: &EisInt, modulus: &EisInt) -> Result<ResidueClass> {
        if modulus.is_zero() {
            return Err(Error::BadModulus("zero modulus"));
        }
        let modulus = modulus.canonical_assoc().0;
        let (_, representative) = x.divmod(&modulus)?;
        Ok(ResidueClass { modulus, representative })
    }

    pub fn modulus(&self) -> &EisInt {
        &self.modulus
    }

    pub fn representative(&self) -> &EisInt {
        &self.representative
    }

    pub fn contains(&self, x: &EisInt) -> bool {
        self.modulus.divides(&(x - &self.representative))
    }

    pub fn is_zero(&self) -> bool {
        self.representative.is_zero()
    }

    pub fn is_unit(&self) -> bool {
        super::euclid_gcd(&self.representative, &self.modulus)
            .map(|g| g.is_unit())
            .unwrap_or(false)
    }

    pub fn add(&self, other: &ResidueClass) -> Result<ResidueClass> {
        self.check_same_modulus(other)?;
        ResidueClass::new(&(&self.representative + &other.representative), &self.modulus)
    }

    pub fn mul(&self, other: &ResidueClass) -> Result<ResidueClass> {
        self.check_same_modulus(other)?;
        ResidueClass::new(&(&self.representative * &other.representative), &self.modulus)
    }

    pub fn mul_elem(&self, x: &EisInt) -> ResidueClass {
        ResidueClass::new(&(&self.representative * x), &self.modulus).unwrap()
    }

    pub fn inverse(&self) -> Result<ResidueClass> {
        let (g, s, _) = extended_gcd(&self.representative, &self.modulus)?;
        if !g.is_unit() {
            return Err(Error::NotInvertible(format!(
                "{} mod {}",
                self.representative, self.modulus
            )));
        }
        // s·rep ≡ g (mod m); divide by the unit g
        let ginv = g.conj(); // for units, u·ū = N(u) = 1
        ResidueClass::new(&(&s * &ginv), &self.modulus)
    }

    pub fn pow(&self, e: &BigInt) -> Result<ResidueClass> {
        if e.is_negative() {
            return self.inverse()?.pow(&-e);
        }
        let mut acc = ResidueClass::new(&EisInt::one(), &self.modulus)?;
        let mut base = self.clone();
        let mut k = e.magnitude().clone();
        while !k.is_zero() {
            if k.is_odd() {
                acc = acc.mul(&base)?;
            }
            base = base.mul(&base)?;
            k >>= 1;
        }
        Ok(acc)
    }

    /// Reinterpret in a divisor modulus (natural projection).
    pub fn project(&self, smaller: &EisInt) -> Result<ResidueClass> {
        if !smaller.divides(&self.modulus) {
            return Err(Error::BadModulus("projection target must divide the modulus"));
        }
        ResidueClass::new(&self.representative, smaller)
    }

    fn check_same_modulus(&self, other: &ResidueClass) -> Result<()> {
        if self.modulus != other.modulus {
            return Err(Error::BadModulus("mismatched moduli"));
        }
        Ok(())
    }
}

impl fmt::Display for ResidueClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.representative, self.modulus)
    }
}

impl fmt::Debug for ResidueClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// The finite ring Z[ω]/(m), with enumeration of all N(m) residues through a
/// Hermite normal form of the sublattice m·Z[ω] ⊂ Z[ω].
pub struct ResidueRing {
    modulus: EisInt,
    d1: BigInt,
    d2: BigInt,
}

impl ResidueRing {
    pub fn new(modulus: &EisInt) -> Result<ResidueRing> {
        if modulus.is_zero() {
            return Err(Error::BadModulus("zero modulus"));
        }
        let modulus = modulus.canonical_assoc().0;
        // lattice basis: m·1 = (a, b), m·ω = (−b, a − b) on the (1, ω) basis
        let a = modulus.coeff_a().clone();
        let b = modulus.coeff_b().clone();
        let v1 = (a.clone(), b.clone());
        let v2 = (-&b, &a - &b);
        // column-reduce to [[d1, *], [0, d2]]
        let (g, s, t) = ext_gcd_int(&v1.1, &v2.1);
        let w1 = (&s * &v1.0 + &t * &v2.0, g.clone()); // second coord g
        let cof1 = &v1.1 / &g;
        let cof2 = &v2.1 / &g;
        let w2_first = &cof2 * &v1.0 - &cof1 * &v2.0; // second coord 0
        let d1 = w2_first.abs();
        let d2 = g.abs();
        debug_assert_eq!(&d1 * &d2, modulus.norm(), "HNF determinant mismatch");
        let _ = w1;
        Ok(ResidueRing { modulus, d1, d2 })
    }

    pub fn modulus(&self) -> &EisInt {
        &self.modulus
    }

    pub fn size(&self) -> BigInt {
        self.modulus.norm()
    }

    pub fn reduce(&self, x: &EisInt) -> EisInt {
        x.divmod(&self.modulus).unwrap().1
    }

    /// Iterate over one representative of every residue class.
    pub fn elements(&self) -> impl Iterator<Item = EisInt> + '_ {
        let d1 = self.d1.to_i64().expect("residue ring too large to enumerate");
        let d2 = self.d2.to_i64().expect("residue ring too large to enumerate");
        (0..d2).flat_map(move |j| (0..d1).map(move |i| self.reduce(&EisInt::new(i, j))))
    }

    /// Iterate over one representative of every unit class.
    pub fn units(&self) -> impl Iterator<Item = EisInt> + '_ {
        self.elements().filter(|x| {
            super::euclid_gcd(x, &self.modulus).map(|g| g.is_unit()).unwrap_or(false)
        })
    }
}

fn ext_gcd_int(x: &BigInt, y: &BigInt) -> (BigInt, BigInt, BigInt) {
    let g = x.extended_gcd(y);
    (g.gcd, g.x, g.y)
}

/// Enumerates the coset rep + m·Z[ω] by increasing (norm, a, b), up to a
/// norm cap. Shells of geometrically growing width keep the output globally
/// sorted while touching each lattice point a bounded number of times.
pub struct CosetByNorm {
    rep: EisInt,
    modulus: EisInt,
    modulus_norm: BigInt,
    shell_lo: BigInt,
    shell_width: BigInt,
    max_norm: BigInt,
    buffer: std::collections::VecDeque<EisInt>,
    done: bool,
}

impl CosetByNorm {
    pub fn new(rep: &EisInt, modulus: &EisInt, max_norm: &BigInt) -> Result<CosetByNorm> {
        if modulus.is_zero() {
            return Err(Error::BadModulus("zero modulus"));
        }
        let modulus = modulus.canonical_assoc().0;
        let (_, rep) = rep.divmod(&modulus)?;
        let modulus_norm = modulus.norm();
        let shell_width = (&modulus_norm * 16).max(BigInt::from(1024));
        Ok(CosetByNorm {
            rep,
            modulus,
            modulus_norm,
            shell_lo: BigInt::zero(),
            shell_width,
            max_norm: max_norm.clone(),
            buffer: std::collections::VecDeque::new(),
            done: false,
        })
    }

    fn refill(&mut self) {
        while self.buffer.is_empty() && !self.done {
            if self.shell_lo > self.max_norm {
                self.done = true;
                return;
            }
            let hi = (&self.shell_lo + &self.shell_width).min(&self.max_norm + 1);
            // |z + rep/m| ≤ sqrt(hi/N(m)); coefficient bound |m|,|n| ≤ 2/√3·R
            let r_sq = &hi / &self.modulus_norm + 2;
            let radius = r_sq.sqrt() + 2;
            // coefficient bound |m|, |n| ≤ 2/√3 · radius ≈ 1.1548 · radius
            let bound = (&radius * 6) / 5 + 2;
            let bound: i64 = bound.to_i64().expect("coset shell too wide to enumerate");
            let mut shell: Vec<(BigInt, EisInt)> = Vec::new();
            for n in -bound..=bound {
                for m in -bound..=bound {
                    let x = &self.rep + &(&self.modulus * &EisInt::new(m, n));
                    let nx = x.norm();
                    if nx >= self.shell_lo && nx < hi {
                        shell.push((nx, x));
                    }
                }
            }
            shell.sort_by(|(n1, x1), (n2, x2)| {
                (n1, x1.coeff_a(), x1.coeff_b()).cmp(&(n2, x2.coeff_a(), x2.coeff_b()))
            });
            self.buffer.extend(shell.into_iter().map(|(_, x)| x));
            self.shell_lo = hi;
            self.shell_width = &self.shell_width * 2;
        }
    }
}

impl Iterator for CosetByNorm {
    type Item = EisInt;

    fn next(&mut self) -> Option<EisInt> {
        if self.buffer.is_empty() {
            self.refill();
        }
        self.buffer.pop_front()
    }
}

/// Combine congruence constraints into a single class modulo the product.
///
/// Pairwise-coprime moduli always merge; non-coprime moduli merge exactly
/// when the targets agree on the common factor, and otherwise raise a
/// conflict error.
pub fn crt_solve(constraints: &[ResidueClass]) -> Result<ResidueClass> {
    let mut it = constraints.iter();
    let first = it.next().ok_or(Error::BadModulus("empty constraint list"))?;
    let mut acc = first.clone();
    for c in it {
        acc = crt_pair(&acc, c)?;
    }
    Ok(acc)
}

fn crt_pair(c1: &ResidueClass, c2: &ResidueClass) -> Result<ResidueClass> {
    let (m1, r1) = (c1.modulus(), c1.representative());
    let (m2, r2) = (c2.modulus(), c2.representative());
    let (g, s, _) = extended_gcd(m1, m2)?;
    let diff = r2 - r1;
    let (q, rem) = diff.divmod(&g)?;
    if !rem.is_zero() {
        return Err(Error::CrtConflict(format!("{c1} vs {c2}")));
    }
    // x = r1 + m1·s·(diff/g) mod lcm
    let lcm = &(m1 * m2).exact_div(&g)?;
    let x = r1 + &(&(m1 * &s) * &q);
    ResidueClass::new(&x, lcm)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn e(a: i64, b: i64) -> EisInt {
        EisInt::new(a, b)
    }

    #[test]
    fn ring_enumeration_sizes() {
        for m in [e(2, 0), e(3, 1), e(5, 0), e(1, -1), e(6, 2), e(8, 0)] {
            let ring = ResidueRing::new(&m).unwrap();
            let elems: std::collections::HashSet<EisInt> = ring.elements().collect();
            assert_eq!(BigInt::from(elems.len()), m.norm(), "size mismatch mod {m}");
        }
    }

    #[test]
    fn unit_count_mod_five() {
        // (5) is inert: residue field F₂₅, 24 units
        let ring = ResidueRing::new(&e(5, 0)).unwrap();
        assert_eq!(ring.units().count(), 24);
        // mod 8: N = 64, units are the classes odd at 2: 48
        let ring8 = ResidueRing::new(&e(8, 0)).unwrap();
        assert_eq!(ring8.units().count(), 48);
    }

    #[test]
    fn inverse_round_trip() {
        let m = e(7, 0);
        let ring = ResidueRing::new(&m).unwrap();
        for x in ring.units() {
            let c = ResidueClass::new(&x, &m).unwrap();
            let inv = c.inverse().unwrap();
            let one = c.mul(&inv).unwrap();
            assert!(one.contains(&EisInt::one()));
        }
    }

    #[test]
    fn pow_matches_repeated_mul() {
        let m = e(3, 1);
        let c = ResidueClass::new(&e(2, 0), &m).unwrap();
        let mut acc = ResidueClass::new(&EisInt::one(), &m).unwrap();
        for k in 0..10 {
            assert_eq!(c.pow(&BigInt::from(k)).unwrap(), acc);
            acc = acc.mul(&c).unwrap();
        }
    }

    #[test]
    fn crt_all_ones() {
        let c1 = ResidueClass::new(&EisInt::one(), &e(2, 0)).unwrap();
        let c2 = ResidueClass::new(&EisInt::one(), &EisInt::lambda()).unwrap();
        let merged = crt_solve(&[c1, c2]).unwrap();
        assert!(merged.contains(&EisInt::one()));
        assert_eq!(merged.modulus().norm(), BigInt::from(12));
    }

    #[test]
    fn crt_single_echoes() {
        let c = ResidueClass::new(&e(4, 1), &e(5, 0)).unwrap();
        assert_eq!(crt_solve(std::slice::from_ref(&c)).unwrap(), c);
    }

    #[test]
    fn crt_example_with_exhaustive_oracle() {
        // x ≡ 1 (mod 2), x ≡ 2 (mod 3+ω); unique class mod 2(3+ω), N = 28
        let c1 = ResidueClass::new(&EisInt::one(), &e(2, 0)).unwrap();
        let c2 = ResidueClass::new(&e(2, 0), &e(3, 1)).unwrap();
        let merged = crt_solve(&[c1.clone(), c2.clone()]).unwrap();
        let m = &e(2, 0) * &e(3, 1);
        let ring = ResidueRing::new(&m).unwrap();
        let matches: Vec<EisInt> = ring
            .elements()
            .filter(|x| c1.contains(x) && c2.contains(x))
            .collect();
        assert_eq!(matches.len(), 1);
        assert!(merged.contains(&matches[0]));
        // frozen from the independent scan: the canonical representative is 1+2ω
        assert_eq!(merged.representative(), &e(1, 2));
    }

    #[test]
    fn crt_conflict_detected() {
        let c1 = ResidueClass::new(&EisInt::one(), &e(2, 0)).unwrap();
        let c2 = ResidueClass::new(&EisInt::zero(), &e(4, 0)).unwrap();
        assert!(crt_solve(&[c1, c2]).is_err());
        // consistent non-coprime constraints merge
        let c3 = ResidueClass::new(&e(3, 0), &e(2, 0)).unwrap();
        let c4 = ResidueClass::new(&e(1, 0), &e(4, 0)).unwrap();
        let merged = crt_solve(&[c3, c4]).unwrap();
        assert!(merged.contains(&EisInt::one()));
        assert_eq!(merged.modulus().norm(), BigInt::from(16));
    }

    #[test]
    fn class_equality_is_representative_equality() {
        let m = e(6, 2);
        let a = ResidueClass::new(&e(9, 0), &m).unwrap();
        let b = ResidueClass::new(&(&e(9, 0) + &m), &m).unwrap();
        assert_eq!(a, b);
        assert!(a.modulus().is_canonical_assoc());
        let one = ResidueClass::new(&EisInt::one(), &m).unwrap();
        assert!(one.is_unit() && !one.is_zero());
    }
}

//! Prime fields GF(p), used by the mod-p smoothness certificate.
//!
//! A nonempty projective singular locus over the algebraic closure of Q
//! reduces, by properness, to a nonempty locus over the algebraic closure
//! of F_p for every prime p; exhibiting one prime where the reduced
//! singular system is inconsistent therefore certifies smoothness in
//! characteristic zero.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

use crate::error::AlgebraError;
use crate::exactalg::rat::Rat;
use crate::exactalg::ring::{Field, Ring};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct GfField {
    pub p: u64,
}

impl GfField {
    pub fn new(p: u64) -> Self {
        assert!(p >= 2);
        GfField { p }
    }

    pub fn reduce_bigint(&self, n: &BigInt) -> u64 {
        let m = n % BigInt::from(self.p);
        let m = if m.is_negative() { m + BigInt::from(self.p) } else { m };
        m.to_u64().expect("residue fits")
    }

    /// Reduce a rational; None when the denominator vanishes mod p.
    pub fn try_from_rat(&self, q: &Rat) -> Option<u64> {
        let den = self.reduce_bigint(q.denom());
        if den == 0 {
            return None;
        }
        let num = self.reduce_bigint(q.numer());
        Some(self.mul(&num, &self.inv(&den).expect("nonzero denominator")))
    }
}

impl Ring for GfField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }

    fn one(&self) -> u64 {
        1 % self.p
    }

    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }

    fn neg(&self, a: &u64) -> u64 {
        (self.p - a % self.p) % self.p
    }

    fn mul(&self, a: &u64, b: &u64) -> u64 {
        // p < 2^32 keeps the product in range
        debug_assert!(self.p < (1 << 32));
        (a * b) % self.p
    }

    fn is_zero(&self, a: &u64) -> bool {
        a % self.p == 0
    }

    fn from_i64(&self, n: i64) -> u64 {
        n.rem_euclid(self.p as i64) as u64
    }

    fn from_rat(&self, q: &Rat) -> u64 {
        self.try_from_rat(q)
            .expect("denominator divisible by the characteristic")
    }

    fn fmt_elem(&self, a: &u64) -> String {
        a.to_string()
    }
}

impl Field for GfField {
    fn inv(&self, a: &u64) -> Result<u64, AlgebraError> {
        let a = a % self.p;
        if a == 0 {
            return Err(AlgebraError::DivisionByZero);
        }
        // Fermat: a^(p-2)
        let mut acc: u64 = 1;
        let mut base = a;
        let mut e = self.p - 2;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_arithmetic_mod_13() {
        let f = GfField::new(13);
        assert_eq!(f.add(&7, &9), 3);
        assert_eq!(f.mul(&7, &2), 1);
        assert_eq!(f.inv(&7).unwrap(), 2);
        assert!(f.inv(&0).is_err());
        assert_eq!(f.from_i64(-1), 12);
        assert_eq!(f.try_from_rat(&Rat::new(1, 13)), None);
        assert_eq!(f.try_from_rat(&Rat::new(3, 2)).unwrap(), f.mul(&3, &f.inv(&2).unwrap()));
    }

    #[test]
    fn zero_is_absorbing_and_identities_hold() {
        let f = GfField::new(11);
        for a in 0..11u64 {
            assert_eq!(f.add(&a, &f.neg(&a)), 0);
            if a != 0 {
                assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), 1);
            }
        }
    }
}

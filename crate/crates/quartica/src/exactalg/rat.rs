//! The field Q of arbitrary-precision rationals.
//!
//! `BigRational` already maintains the canonical form we require
//! (reduced fraction, positive denominator, zero as 0/1).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::str::FromStr;

use crate::error::AlgebraError;
use crate::exactalg::ring::{Field, Ring};

/// An exact rational number.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Rat(pub BigRational);

impl Rat {
    pub fn from_int(n: i64) -> Self {
        Rat(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Rat(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Rat(BigRational::from_integer(n))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn abs(&self) -> Rat {
        Rat(self.0.abs())
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    /// Parse "p/q" or "p" with optional sign; used by the JSON schema.
    pub fn parse(s: &str) -> Result<Rat, AlgebraError> {
        let s = s.trim();
        let parse_int = |t: &str| -> Result<BigInt, AlgebraError> {
            BigInt::from_str(t.trim())
                .map_err(|_| AlgebraError::Precondition(format!("bad rational literal: {s:?}")))
        };
        match s.split_once('/') {
            Some((p, q)) => {
                let den = parse_int(q)?;
                if den.is_zero() {
                    return Err(AlgebraError::DivisionByZero);
                }
                Ok(Rat(BigRational::new(parse_int(p)?, den)))
            }
            None => Ok(Rat(BigRational::from_integer(parse_int(s)?))),
        }
    }
}

impl std::fmt::Display for Rat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// The field Q as a zero-sized context.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub struct RatField;

impl Ring for RatField {
    type Elem = Rat;

    fn zero(&self) -> Rat {
        Rat(BigRational::zero())
    }

    fn one(&self) -> Rat {
        Rat(BigRational::one())
    }

    fn add(&self, a: &Rat, b: &Rat) -> Rat {
        Rat(&a.0 + &b.0)
    }

    fn neg(&self, a: &Rat) -> Rat {
        Rat(-&a.0)
    }

    fn mul(&self, a: &Rat, b: &Rat) -> Rat {
        Rat(&a.0 * &b.0)
    }

    fn is_zero(&self, a: &Rat) -> bool {
        a.0.is_zero()
    }

    fn from_i64(&self, n: i64) -> Rat {
        Rat::from_int(n)
    }

    fn from_rat(&self, q: &Rat) -> Rat {
        q.clone()
    }

    fn fmt_elem(&self, a: &Rat) -> String {
        a.to_string()
    }
}

impl Field for RatField {
    fn inv(&self, a: &Rat) -> Result<Rat, AlgebraError> {
        if a.0.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        Ok(Rat(a.0.recip()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_roundtrip() {
        assert_eq!(Rat::parse("3/6").unwrap(), Rat::new(1, 2));
        assert_eq!(Rat::parse("-4").unwrap(), Rat::from_int(-4));
        assert_eq!(Rat::parse(" 7 / -2 ").unwrap(), Rat::new(-7, 2));
        assert!(Rat::parse("1/0").is_err());
        assert!(Rat::parse("x").is_err());
    }

    #[test]
    fn canonical_form() {
        let q = Rat::new(-6, -4);
        assert_eq!(q.to_string(), "3/2");
        assert!(q.denom() > &num_bigint::BigInt::from(0));
    }

    #[test]
    fn field_ops() {
        let f = RatField;
        let a = Rat::new(2, 3);
        assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), f.one());
        assert!(f.inv(&f.zero()).is_err());
    }
}

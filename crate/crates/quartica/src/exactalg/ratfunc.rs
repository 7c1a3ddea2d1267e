//! The rational function field Q(t).
//!
//! Elements are reduced fractions of univariate rational polynomials with a
//! monic denominator; the variable is displayed as `t`.

use crate::error::AlgebraError;
use crate::exactalg::rat::{Rat, RatField};
use crate::exactalg::ring::{Field, Ring};
use crate::exactalg::upoly::UPoly;

pub type QPoly = UPoly<RatField>;

#[derive(Clone, Debug)]
pub struct RatFuncElem {
    pub num: QPoly,
    pub den: QPoly,
}

impl PartialEq for RatFuncElem {
    fn eq(&self, other: &Self) -> bool {
        // both sides are kept reduced with monic denominators
        self.num == other.num && self.den == other.den
    }
}

impl RatFuncElem {
    fn reduce(num: QPoly, den: QPoly) -> Result<Self, AlgebraError> {
        if den.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(RatFuncElem { num, den: QPoly::one(RatField) });
        }
        let g = num.gcd(&den)?;
        let (num, den) = if g.deg() > 0 {
            (num.exact_div(&g)?, den.exact_div(&g)?)
        } else {
            (num, den)
        };
        let lc = den.leading().clone();
        let lc_inv = RatField.inv(&lc)?;
        Ok(RatFuncElem { num: num.scale(&lc_inv), den: den.scale(&lc_inv) })
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.degree() == Some(0)
    }
}

/// Q(t) as a zero-sized context.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub struct RatFuncField;

impl RatFuncField {
    pub fn from_poly(&self, p: QPoly) -> RatFuncElem {
        RatFuncElem { num: p, den: QPoly::one(RatField) }
    }

    /// The coordinate t.
    pub fn gen(&self) -> RatFuncElem {
        self.from_poly(QPoly::var(RatField))
    }

    pub fn fraction(&self, num: QPoly, den: QPoly) -> Result<RatFuncElem, AlgebraError> {
        RatFuncElem::reduce(num, den)
    }

    /// Evaluate at a rational point; errors on a pole.
    pub fn eval_at(&self, f: &RatFuncElem, x: &Rat) -> Result<Rat, AlgebraError> {
        let d = f.den.eval(x);
        if RatField.is_zero(&d) {
            return Err(AlgebraError::DivisionByZero);
        }
        RatField.div(&f.num.eval(x), &d)
    }
}

impl Ring for RatFuncField {
    type Elem = RatFuncElem;

    fn zero(&self) -> RatFuncElem {
        self.from_poly(QPoly::zero(RatField))
    }

    fn one(&self) -> RatFuncElem {
        self.from_poly(QPoly::one(RatField))
    }

    fn add(&self, a: &RatFuncElem, b: &RatFuncElem) -> RatFuncElem {
        let num = a.num.mul(&b.den).add(&b.num.mul(&a.den));
        let den = a.den.mul(&b.den);
        RatFuncElem::reduce(num, den).expect("denominators are nonzero")
    }

    fn neg(&self, a: &RatFuncElem) -> RatFuncElem {
        RatFuncElem { num: a.num.neg(), den: a.den.clone() }
    }

    fn mul(&self, a: &RatFuncElem, b: &RatFuncElem) -> RatFuncElem {
        RatFuncElem::reduce(a.num.mul(&b.num), a.den.mul(&b.den))
            .expect("denominators are nonzero")
    }

    fn is_zero(&self, a: &RatFuncElem) -> bool {
        a.num.is_zero()
    }

    fn from_i64(&self, n: i64) -> RatFuncElem {
        self.from_poly(QPoly::from_coeff_slice(RatField, &[n]))
    }

    fn from_rat(&self, q: &Rat) -> RatFuncElem {
        self.from_poly(QPoly::constant(RatField, q.clone()))
    }

    fn fmt_elem(&self, a: &RatFuncElem) -> String {
        if a.is_polynomial() {
            a.num.fmt_with("t")
        } else {
            format!("({})/({})", a.num.fmt_with("t"), a.den.fmt_with("t"))
        }
    }
}

impl Field for RatFuncField {
    fn inv(&self, a: &RatFuncElem) -> Result<RatFuncElem, AlgebraError> {
        if self.is_zero(a) {
            return Err(AlgebraError::DivisionByZero);
        }
        RatFuncElem::reduce(a.den.clone(), a.num.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_reduces() {
        let k = RatFuncField;
        let t = k.gen();
        // t/(t^2) = 1/t
        let t2 = k.mul(&t, &t);
        let r = k.div(&t, &t2).unwrap();
        assert_eq!(k.fmt_elem(&r), "(1)/(t)");
        // (t+1)(t-1)/(t-1) = t+1
        let p = k.add(&t, &k.one());
        let m = k.sub(&t, &k.one());
        let r = k.div(&k.mul(&p, &m), &m).unwrap();
        assert!(r.is_polynomial());
        assert_eq!(k.fmt_elem(&r), "t + 1");
    }

    #[test]
    fn inverse_of_zero_fails() {
        let k = RatFuncField;
        assert!(k.inv(&k.zero()).is_err());
    }
}

//! Simple ring extensions `K[x]/(m)` with squarefree monic modulus.
//!
//! Elements are coordinate vectors of length deg(m) over the base field.
//! Inversion runs the extended Euclidean algorithm and, when the element is
//! a zero divisor (possible when m is reducible), reports the gcd witness.

use crate::error::AlgebraError;
use crate::exactalg::ring::{Field, Ring};
use crate::exactalg::upoly::UPoly;

#[derive(Clone, PartialEq, Debug)]
pub struct ExtField<F: Field> {
    pub base: F,
    pub modulus: UPoly<F>,
    pub var: String,
}

impl<F: Field> ExtField<F> {
    /// Build `K[x]/(m)`. The modulus must be monic of degree >= 1 and
    /// squarefree (nonzero discriminant), so the quotient is a product of
    /// fields; it is a field exactly when m is irreducible.
    pub fn new(base: F, modulus: UPoly<F>, var: &str) -> Result<Self, AlgebraError> {
        if modulus.is_zero() || modulus.deg() == 0 {
            return Err(AlgebraError::Precondition(
                "modulus must have degree >= 1".into(),
            ));
        }
        let modulus = modulus.monic()?;
        let g = modulus.gcd(&modulus.derivative())?;
        if g.deg() > 0 {
            return Err(AlgebraError::ModulusNotSquarefree(g.fmt_with(var)));
        }
        Ok(ExtField { base, modulus, var: var.into() })
    }

    pub fn degree(&self) -> usize {
        self.modulus.deg()
    }

    /// The class of x.
    pub fn gen(&self) -> Vec<F::Elem> {
        let mut v = vec![self.base.zero(); self.degree()];
        if self.degree() == 1 {
            // x = -m(0) in a degree-1 quotient
            v[0] = self.base.neg(&self.modulus.coeff(0));
        } else {
            v[1] = self.base.one();
        }
        v
    }

    pub fn from_base(&self, c: F::Elem) -> Vec<F::Elem> {
        let mut v = vec![self.base.zero(); self.degree()];
        v[0] = c;
        v
    }

    pub fn from_poly(&self, p: &UPoly<F>) -> Vec<F::Elem> {
        let (_, r) = p.div_rem(&self.modulus).expect("modulus is nonzero");
        let mut v = vec![self.base.zero(); self.degree()];
        for (i, c) in r.coeffs.iter().enumerate() {
            v[i] = c.clone();
        }
        v
    }

    pub fn to_poly(&self, a: &[F::Elem]) -> UPoly<F> {
        UPoly::new(self.base.clone(), a.to_vec())
    }

    /// Apply a base-field map coordinatewise (e.g. specializing t in Q(t)).
    pub fn map_coords<G: Field>(
        &self,
        target: &ExtField<G>,
        a: &[F::Elem],
        f: impl Fn(&F::Elem) -> G::Elem,
    ) -> Vec<G::Elem> {
        assert_eq!(self.degree(), target.degree());
        a.iter().map(f).collect()
    }
}

impl<F: Field> Ring for ExtField<F> {
    type Elem = Vec<F::Elem>;

    fn zero(&self) -> Vec<F::Elem> {
        vec![self.base.zero(); self.degree()]
    }

    fn one(&self) -> Vec<F::Elem> {
        self.from_base(self.base.one())
    }

    fn add(&self, a: &Vec<F::Elem>, b: &Vec<F::Elem>) -> Vec<F::Elem> {
        a.iter().zip(b).map(|(x, y)| self.base.add(x, y)).collect()
    }

    fn neg(&self, a: &Vec<F::Elem>) -> Vec<F::Elem> {
        a.iter().map(|x| self.base.neg(x)).collect()
    }

    fn mul(&self, a: &Vec<F::Elem>, b: &Vec<F::Elem>) -> Vec<F::Elem> {
        let pa = self.to_poly(a);
        let pb = self.to_poly(b);
        self.from_poly(&pa.mul(&pb))
    }

    fn is_zero(&self, a: &Vec<F::Elem>) -> bool {
        a.iter().all(|x| self.base.is_zero(x))
    }

    fn from_i64(&self, n: i64) -> Vec<F::Elem> {
        self.from_base(self.base.from_i64(n))
    }

    fn from_rat(&self, q: &crate::exactalg::Rat) -> Vec<F::Elem> {
        self.from_base(self.base.from_rat(q))
    }

    fn fmt_elem(&self, a: &Vec<F::Elem>) -> String {
        self.to_poly(a).fmt_with(&self.var)
    }
}

impl<F: Field> Field for ExtField<F> {
    fn inv(&self, a: &Vec<F::Elem>) -> Result<Vec<F::Elem>, AlgebraError> {
        if self.is_zero(a) {
            return Err(AlgebraError::DivisionByZero);
        }
        // extended Euclid: s*a + t*m = gcd(a, m)
        let pa = self.to_poly(a);
        let mut r0 = self.modulus.clone();
        let mut r1 = pa;
        let mut s0 = UPoly::zero(self.base.clone());
        let mut s1 = UPoly::one(self.base.clone());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1)?;
            let s = s0.sub(&q.mul(&s1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
        }
        if r0.deg() > 0 {
            return Err(AlgebraError::NotInvertible {
                witness: r0.monic()?.fmt_with(&self.var),
            });
        }
        let c_inv = self.base.inv(r0.leading())?;
        Ok(self.from_poly(&s0.scale(&c_inv)))
    }
}

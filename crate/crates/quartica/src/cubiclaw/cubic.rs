//! Plane cubic curves with exact coefficients.
//!
//! A ternary cubic is stored as its ten coefficients in the fixed
//! descending-lex monomial order on (U, V, T); see [`CUBIC_MONOMIALS`].

use crate::error::GeomError;
use crate::exactalg::mpoly::{vars, MPoly, VarList};
use crate::exactalg::ring::Field;
use crate::projgeom::point::ProjPoint;

/// Degree-3 monomial exponents in descending lexicographic order.
pub const CUBIC_MONOMIALS: [[u32; 3]; 10] = [
    [3, 0, 0], // U^3
    [2, 1, 0], // U^2 V
    [2, 0, 1], // U^2 T
    [1, 2, 0], // U V^2
    [1, 1, 1], // U V T
    [1, 0, 2], // U T^2
    [0, 3, 0], // V^3
    [0, 2, 1], // V^2 T
    [0, 1, 2], // V T^2
    [0, 0, 3], // T^3
];

pub fn cubic_vars() -> VarList {
    vars(&["U", "V", "T"])
}

#[derive(Clone, PartialEq, Debug)]
pub struct TernaryCubic<F: Field> {
    pub ring: F,
    pub coeffs: Vec<F::Elem>, // length 10, CUBIC_MONOMIALS order
}

impl<F: Field> TernaryCubic<F> {
    pub fn new(ring: F, coeffs: Vec<F::Elem>) -> Self {
        assert_eq!(coeffs.len(), 10);
        TernaryCubic { ring, coeffs }
    }

    pub fn from_mpoly(p: &MPoly<F>) -> Result<Self, GeomError> {
        if p.vars.len() != 3 {
            return Err(GeomError::Precondition("cubic must have three variables".into()));
        }
        let ring = p.ring.clone();
        let mut coeffs = vec![ring.zero(); 10];
        for (e, c) in &p.terms {
            let idx = CUBIC_MONOMIALS
                .iter()
                .position(|m| m[0] == e[0] && m[1] == e[1] && m[2] == e[2])
                .ok_or(GeomError::Precondition("form is not a cubic".into()))?;
            coeffs[idx] = c.clone();
        }
        Ok(TernaryCubic { ring, coeffs })
    }

    pub fn to_mpoly(&self) -> MPoly<F> {
        let vl = cubic_vars();
        let mut p = MPoly::zero(self.ring.clone(), vl.clone());
        for (m, c) in CUBIC_MONOMIALS.iter().zip(&self.coeffs) {
            if !self.ring.is_zero(c) {
                p = p.add(&MPoly::monomial(self.ring.clone(), vl.clone(), m.to_vec(), c.clone()));
            }
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| self.ring.is_zero(c))
    }

    pub fn eval(&self, p: &[F::Elem]) -> F::Elem {
        let r = &self.ring;
        let mut acc = r.zero();
        for (m, c) in CUBIC_MONOMIALS.iter().zip(&self.coeffs) {
            if r.is_zero(c) {
                continue;
            }
            let mut t = c.clone();
            for (i, &e) in m.iter().enumerate() {
                if e > 0 {
                    t = r.mul(&t, &r.pow(&p[i], e));
                }
            }
            acc = r.add(&acc, &t);
        }
        acc
    }

    pub fn contains(&self, p: &ProjPoint<F>) -> bool {
        self.ring.is_zero(&self.eval(&p.coords))
    }

    /// Gradient at a point.
    pub fn gradient_at(&self, p: &[F::Elem]) -> Vec<F::Elem> {
        let mp = self.to_mpoly();
        (0..3).map(|i| mp.partial(i).eval(p)).collect()
    }

    pub fn is_smooth_at(&self, p: &ProjPoint<F>) -> bool {
        self.contains(p) && !self.gradient_at(&p.coords).iter().all(|c| self.ring.is_zero(c))
    }

    /// The Hessian cubic: determinant of the matrix of second partials
    /// (a degree-3 covariant).
    pub fn hessian(&self) -> TernaryCubic<F> {
        let mp = self.to_mpoly();
        let second: Vec<Vec<MPoly<F>>> = (0..3)
            .map(|i| (0..3).map(|j| mp.partial(i).partial(j)).collect())
            .collect();
        // 3x3 determinant by cofactor expansion
        let det = {
            let m = &second;
            let t1 = m[0][0].mul(&m[1][1].mul(&m[2][2]).sub(&m[1][2].mul(&m[2][1])));
            let t2 = m[0][1].mul(&m[1][0].mul(&m[2][2]).sub(&m[1][2].mul(&m[2][0])));
            let t3 = m[0][2].mul(&m[1][0].mul(&m[2][1]).sub(&m[1][1].mul(&m[2][0])));
            t1.sub(&t2).add(&t3)
        };
        TernaryCubic::from_mpoly(&det).expect("hessian of a cubic is a cubic")
    }

    /// Map coefficients into another field.
    pub fn map<G: Field>(&self, target: &G, f: impl Fn(&F::Elem) -> G::Elem) -> TernaryCubic<G> {
        TernaryCubic::new(target.clone(), self.coeffs.iter().map(f).collect())
    }

    pub fn fmt_pretty(&self) -> String {
        self.to_mpoly().fmt_pretty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rat::{Rat, RatField};
    use crate::exactalg::ring::Ring;

    pub fn cubic_q(terms: &[(usize, i64)]) -> TernaryCubic<RatField> {
        let mut coeffs = vec![Rat::from_int(0); 10];
        for &(i, c) in terms {
            coeffs[i] = Rat::from_int(c);
        }
        TernaryCubic::new(RatField, coeffs)
    }

    #[test]
    fn hessian_of_triangle_is_proportional_to_triangle() {
        // UVT has Hessian 2*UVT
        let c = cubic_q(&[(4, 1)]);
        let h = c.hessian();
        assert_eq!(h.coeffs[4], Rat::from_int(2));
        let mut expected = vec![Rat::from_int(0); 10];
        expected[4] = Rat::from_int(2);
        assert_eq!(h.coeffs, expected);
    }

    #[test]
    fn hessian_of_fermat_cubic() {
        // U^3 + V^3 + T^3 -> Hessian = 216 UVT
        let c = cubic_q(&[(0, 1), (6, 1), (9, 1)]);
        let h = c.hessian();
        let mut expected = vec![Rat::from_int(0); 10];
        expected[4] = Rat::from_int(216);
        assert_eq!(h.coeffs, expected);
    }

    #[test]
    fn eval_and_gradient() {
        // cuspidal V^2 T - U^3
        let c = cubic_q(&[(7, 1), (0, -1)]);
        let p = vec![Rat::from_int(0), Rat::from_int(0), Rat::from_int(1)];
        assert!(RatField.is_zero(&c.eval(&p)));
        assert!(c.gradient_at(&p).iter().all(|g| RatField.is_zero(g)));
    }
}

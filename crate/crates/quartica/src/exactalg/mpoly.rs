//! Sparse multivariate polynomials over a generic field.
//!
//! Terms live in a `BTreeMap` keyed by exponent vectors, so iteration order
//! is canonical and no zero coefficients are ever stored. The "leading"
//! term and the sign convention below always refer to descending
//! lexicographic order on exponent vectors.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::AlgebraError;
use crate::exactalg::rat::{Rat, RatField};
use crate::exactalg::ring::Field;

pub type VarList = Arc<Vec<String>>;

pub fn vars(names: &[&str]) -> VarList {
    Arc::new(names.iter().map(|s| s.to_string()).collect())
}

#[derive(Clone, PartialEq, Debug)]
pub struct MPoly<F: Field> {
    pub ring: F,
    pub vars: VarList,
    pub terms: BTreeMap<Vec<u32>, F::Elem>,
}

impl<F: Field> MPoly<F> {
    pub fn zero(ring: F, vars: VarList) -> Self {
        MPoly { ring, vars, terms: BTreeMap::new() }
    }

    pub fn constant(ring: F, vars: VarList, c: F::Elem) -> Self {
        let mut p = MPoly::zero(ring, vars);
        if !p.ring.is_zero(&c) {
            p.terms.insert(vec![0; p.vars.len()], c);
        }
        p
    }

    pub fn one(ring: F, vars: VarList) -> Self {
        let c = ring.one();
        MPoly::constant(ring, vars, c)
    }

    /// The i-th variable as a polynomial.
    pub fn var(ring: F, vars: VarList, i: usize) -> Self {
        let mut exp = vec![0u32; vars.len()];
        exp[i] = 1;
        let mut terms = BTreeMap::new();
        terms.insert(exp, ring.one());
        MPoly { ring, vars, terms }
    }

    pub fn monomial(ring: F, vars: VarList, exp: Vec<u32>, c: F::Elem) -> Self {
        assert_eq!(exp.len(), vars.len(), "exponent/variable length mismatch");
        let mut p = MPoly::zero(ring, vars);
        if !p.ring.is_zero(&c) {
            p.terms.insert(exp, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn check_compat(&self, other: &Self) -> Result<(), AlgebraError> {
        if self.vars != other.vars {
            return Err(AlgebraError::VariableMismatch(
                format!("{:?}", self.vars),
                format!("{:?}", other.vars),
            ));
        }
        Ok(())
    }

    fn insert_add(&mut self, exp: Vec<u32>, c: F::Elem) {
        if self.ring.is_zero(&c) {
            return;
        }
        match self.terms.entry(exp) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = self.ring.add(e.get(), &c);
                if self.ring.is_zero(&s) {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_compat(other).expect("variable mismatch in add");
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.insert_add(e.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = self.ring.neg(c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check_compat(other).expect("variable mismatch in mul");
        let mut out = MPoly::zero(self.ring.clone(), self.vars.clone());
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let exp: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.insert_add(exp, self.ring.mul(c1, c2));
            }
        }
        out
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        if self.ring.is_zero(c) {
            return MPoly::zero(self.ring.clone(), self.vars.clone());
        }
        let mut out = self.clone();
        for v in out.terms.values_mut() {
            *v = self.ring.mul(v, c);
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = MPoly::one(self.ring.clone(), self.vars.clone());
        let mut base = self.clone();
        let mut k = n;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn partial(&self, var: usize) -> Self {
        let mut out = MPoly::zero(self.ring.clone(), self.vars.clone());
        for (e, c) in &self.terms {
            if e[var] == 0 {
                continue;
            }
            let mut exp = e.clone();
            exp[var] -= 1;
            let k = self.ring.from_i64(e[var] as i64);
            out.insert_add(exp, self.ring.mul(c, &k));
        }
        out
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|e| e[var]).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|e| e.iter().sum::<u32>());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|x| x == d),
        }
    }

    /// Substitute `images[i]` for variable i. All images must share a common
    /// variable list, which becomes the variable list of the result.
    pub fn substitute(&self, images: &[MPoly<F>]) -> Result<Self, AlgebraError> {
        assert_eq!(images.len(), self.vars.len(), "one image per variable");
        let target_vars = images
            .first()
            .map(|p| p.vars.clone())
            .unwrap_or_else(|| self.vars.clone());
        for im in images {
            if im.vars != target_vars {
                return Err(AlgebraError::VariableMismatch(
                    format!("{:?}", target_vars),
                    format!("{:?}", im.vars),
                ));
            }
        }
        // memoize powers of each image
        let mut powers: Vec<Vec<MPoly<F>>> = images
            .iter()
            .map(|im| vec![MPoly::one(self.ring.clone(), target_vars.clone()), im.clone()])
            .collect();
        let mut out = MPoly::zero(self.ring.clone(), target_vars.clone());
        for (e, c) in &self.terms {
            let mut term = MPoly::constant(self.ring.clone(), target_vars.clone(), c.clone());
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                while powers[i].len() <= k as usize {
                    let next = powers[i].last().unwrap().mul(&images[i]);
                    powers[i].push(next);
                }
                term = term.mul(&powers[i][k as usize]);
            }
            out = out.add(&term);
        }
        Ok(out)
    }

    /// Specialize one variable to a scalar; the variable stays in the list
    /// with exponent zero everywhere.
    pub fn specialize(&self, var: usize, value: &F::Elem) -> Self {
        let mut out = MPoly::zero(self.ring.clone(), self.vars.clone());
        for (e, c) in &self.terms {
            let mut exp = e.clone();
            let k = exp[var];
            exp[var] = 0;
            let scaled = self.ring.mul(c, &self.ring.pow(value, k));
            out.insert_add(exp, scaled);
        }
        out
    }

    pub fn eval(&self, point: &[F::Elem]) -> F::Elem {
        assert_eq!(point.len(), self.vars.len());
        let mut acc = self.ring.zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    t = self.ring.mul(&t, &self.ring.pow(&point[i], k));
                }
            }
            acc = self.ring.add(&acc, &t);
        }
        acc
    }

    pub fn gradient(&self) -> Vec<Self> {
        (0..self.vars.len()).map(|i| self.partial(i)).collect()
    }

    /// Leading term in descending lexicographic order.
    pub fn leading_term(&self) -> Option<(&Vec<u32>, &F::Elem)> {
        self.terms.iter().next_back()
    }

    /// Multivariate exact division (lex leading-term algorithm). Errors if
    /// the divisor does not divide exactly — that always signals a logic
    /// bug upstream.
    pub fn exact_div(&self, divisor: &Self) -> Result<Self, AlgebraError> {
        self.check_compat(divisor)?;
        if divisor.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        let (dexp, dc) = divisor.leading_term().unwrap();
        let dexp = dexp.clone();
        let dc_inv = self.ring.inv(dc)?;
        let mut rem = self.clone();
        let mut quot = MPoly::zero(self.ring.clone(), self.vars.clone());
        while let Some((e, c)) = rem.leading_term() {
            let e = e.clone();
            let c = c.clone();
            if !e.iter().zip(&dexp).all(|(a, b)| a >= b) {
                return Err(AlgebraError::InexactDivision(format!(
                    "leading monomial {:?} not divisible by {:?}",
                    e, dexp
                )));
            }
            let qexp: Vec<u32> = e.iter().zip(&dexp).map(|(a, b)| a - b).collect();
            let qc = self.ring.mul(&c, &dc_inv);
            let qterm = MPoly::monomial(self.ring.clone(), self.vars.clone(), qexp, qc);
            rem = rem.sub(&qterm.mul(divisor));
            quot = quot.add(&qterm);
        }
        Ok(quot)
    }

    /// View a polynomial that only uses variable `var` as univariate.
    pub fn as_univariate(&self, var: usize) -> Result<crate::exactalg::UPoly<F>, AlgebraError> {
        let mut coeffs: Vec<F::Elem> = Vec::new();
        for (e, c) in &self.terms {
            for (i, &k) in e.iter().enumerate() {
                if i != var && k != 0 {
                    return Err(AlgebraError::Precondition(format!(
                        "polynomial is not univariate in {}",
                        self.vars[var]
                    )));
                }
            }
            let d = e[var] as usize;
            if coeffs.len() <= d {
                coeffs.resize(d + 1, self.ring.zero());
            }
            coeffs[d] = c.clone();
        }
        Ok(crate::exactalg::UPoly::new(self.ring.clone(), coeffs))
    }

    pub fn fmt_pretty(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (e, c) in self.terms.iter().rev() {
            let mut factors = Vec::new();
            let cs = self.ring.fmt_elem(c);
            let coeff_is_one = cs == "1";
            if !coeff_is_one || e.iter().all(|&k| k == 0) {
                factors.push(cs);
            }
            for (i, &k) in e.iter().enumerate() {
                match k {
                    0 => {}
                    1 => factors.push(self.vars[i].clone()),
                    _ => factors.push(format!("{}^{}", self.vars[i], k)),
                }
            }
            parts.push(factors.join("*"));
        }
        parts.join(" + ")
    }
}

/// Transport a polynomial to another coefficient field.
pub fn map_coeffs<F: Field, G: Field>(
    target: &G,
    f: &MPoly<F>,
    map: impl Fn(&F::Elem) -> G::Elem,
) -> MPoly<G> {
    let mut out = MPoly::zero(target.clone(), f.vars.clone());
    for (e, c) in &f.terms {
        let mc = map(c);
        if !target.is_zero(&mc) {
            out.terms.insert(e.clone(), mc);
        }
    }
    out
}

impl MPoly<RatField> {
    /// Build from integer-coefficient term data.
    pub fn from_terms(vars: VarList, terms: &[(Vec<u32>, i64)]) -> Self {
        let mut p = MPoly::zero(RatField, vars);
        for (e, c) in terms {
            p.insert_add(e.clone(), Rat::from_int(*c));
        }
        p
    }

    /// Integer content and sign normalization: clears denominators, divides
    /// by the integer content and makes the leading (descending-lex)
    /// coefficient positive. Returns the normalized polynomial.
    pub fn primitive_normalized(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut den_lcm = BigInt::one();
        for c in self.terms.values() {
            den_lcm = den_lcm.lcm(c.denom());
        }
        let mut content = BigInt::zero();
        for c in self.terms.values() {
            let int = c.numer() * (&den_lcm / c.denom());
            content = content.gcd(&int);
        }
        if content.is_zero() {
            return self.clone();
        }
        let scale = Rat(num_rational::BigRational::new(den_lcm, content));
        let mut out = self.scale(&scale);
        if let Some((_, lead)) = out.leading_term() {
            if lead.is_negative() {
                out = out.neg();
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn uvta() -> VarList {
        vars(&["X", "Y", "Z", "W"])
    }

    #[test]
    fn fermat_substitution_from_plane_parametrization() {
        // X^4 - Y^4 + Z^4 - W^4 under X <- U+aT, Y <- U-aT, Z <- V+T, W <- V-T
        let xyzw = uvta();
        let f = MPoly::from_terms(
            xyzw.clone(),
            &[
                (vec![4, 0, 0, 0], 1),
                (vec![0, 4, 0, 0], -1),
                (vec![0, 0, 4, 0], 1),
                (vec![0, 0, 0, 4], -1),
            ],
        );
        let uvta = vars(&["U", "V", "T", "a"]);
        let u = MPoly::var(RatField, uvta.clone(), 0);
        let v = MPoly::var(RatField, uvta.clone(), 1);
        let t = MPoly::var(RatField, uvta.clone(), 2);
        let a = MPoly::var(RatField, uvta.clone(), 3);
        let at = a.mul(&t);
        let images = [u.add(&at), u.sub(&at), v.add(&t), v.sub(&t)];
        let g = f.substitute(&images).unwrap();
        // 8aU^3T + 8a^3UT^3 + 8V^3T + 8VT^3
        let expected = MPoly::from_terms(
            uvta.clone(),
            &[
                (vec![3, 0, 1, 1], 8),
                (vec![1, 0, 3, 3], 8),
                (vec![0, 3, 1, 0], 8),
                (vec![0, 1, 3, 0], 8),
            ],
        );
        assert_eq!(g, expected);

        // exact-divide by 8T
        let eight_t = MPoly::from_terms(uvta.clone(), &[(vec![0, 0, 1, 0], 8)]);
        let cubic = g.exact_div(&eight_t).unwrap();
        let expected_cubic = MPoly::from_terms(
            uvta,
            &[
                (vec![3, 0, 0, 1], 1),
                (vec![1, 0, 2, 3], 1),
                (vec![0, 3, 0, 0], 1),
                (vec![0, 1, 2, 0], 1),
            ],
        );
        assert_eq!(cubic, expected_cubic);
    }

    #[test]
    fn mul_by_one_is_identity() {
        let vl = uvta();
        let f = MPoly::from_terms(vl.clone(), &[(vec![1, 2, 0, 1], 3), (vec![0, 0, 1, 0], -7)]);
        assert_eq!(f.mul(&MPoly::one(RatField, vl)), f);
    }

    #[test]
    fn exact_div_rejects_non_divisible() {
        let vl = vars(&["x", "y"]);
        let f = MPoly::from_terms(vl.clone(), &[(vec![1, 0], 1), (vec![0, 0], 1)]); // x + 1
        let g = MPoly::from_terms(vl, &[(vec![0, 1], 1)]); // y
        assert!(f.exact_div(&g).is_err());
    }

    #[test]
    fn primitive_normalization_sign_and_content() {
        let vl = vars(&["x", "y"]);
        let f = MPoly::zero(RatField, vl.clone())
            .add(&MPoly::monomial(RatField, vl.clone(), vec![2, 0], Rat::new(-4, 6)))
            .add(&MPoly::monomial(RatField, vl.clone(), vec![0, 1], Rat::new(2, 3)));
        let g = f.primitive_normalized();
        // -2/3 x^2 + 2/3 y -> x^2 - y (leading term positive)
        let expected =
            MPoly::from_terms(vl, &[(vec![2, 0], 1), (vec![0, 1], -1)]);
        assert_eq!(g, expected);
    }

    #[test]
    fn substitution_is_ring_homomorphism() {
        let vl = vars(&["x", "y"]);
        let f = MPoly::from_terms(vl.clone(), &[(vec![2, 0], 1), (vec![0, 1], -1)]);
        let g = MPoly::from_terms(vl.clone(), &[(vec![1, 1], 2), (vec![0, 0], 5)]);
        let tv = vars(&["s"]);
        let s = MPoly::var(RatField, tv.clone(), 0);
        let imgs = [s.mul(&s), s.add(&MPoly::one(RatField, tv.clone()))];
        let lhs = f.mul(&g).substitute(&imgs).unwrap();
        let rhs = f.substitute(&imgs).unwrap().mul(&g.substitute(&imgs).unwrap());
        assert_eq!(lhs, rhs);
    }
}

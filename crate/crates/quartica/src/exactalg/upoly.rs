//! Dense univariate polynomials over a generic field.
//!
//! Coefficients are stored in ascending degree order; the vector is empty
//! for the zero polynomial and its last entry is nonzero otherwise.

use crate::error::AlgebraError;
use crate::exactalg::ring::Field;

#[derive(Clone, PartialEq, Debug)]
pub struct UPoly<F: Field> {
    pub ring: F,
    pub coeffs: Vec<F::Elem>,
}

impl<F: Field> UPoly<F> {
    pub fn new(ring: F, mut coeffs: Vec<F::Elem>) -> Self {
        while coeffs.last().map_or(false, |c| ring.is_zero(c)) {
            coeffs.pop();
        }
        UPoly { ring, coeffs }
    }

    pub fn zero(ring: F) -> Self {
        UPoly { ring, coeffs: vec![] }
    }

    pub fn constant(ring: F, c: F::Elem) -> Self {
        UPoly::new(ring.clone(), vec![c])
    }

    pub fn one(ring: F) -> Self {
        let c = ring.one();
        UPoly::constant(ring, c)
    }

    /// The monomial x.
    pub fn var(ring: F) -> Self {
        let coeffs = vec![ring.zero(), ring.one()];
        UPoly { ring, coeffs }
    }

    pub fn from_coeff_slice(ring: F, cs: &[i64]) -> Self {
        let coeffs = cs.iter().map(|&c| ring.from_i64(c)).collect();
        UPoly::new(ring, coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial has none.
    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn deg(&self) -> usize {
        self.degree().expect("degree of zero polynomial")
    }

    pub fn leading(&self) -> &F::Elem {
        self.coeffs.last().expect("leading coeff of zero polynomial")
    }

    pub fn coeff(&self, i: usize) -> F::Elem {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.ring.zero())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.ring.add(&self.coeff(i), &other.coeff(i)));
        }
        UPoly::new(self.ring.clone(), out)
    }

    pub fn neg(&self) -> Self {
        let coeffs = self.coeffs.iter().map(|c| self.ring.neg(c)).collect();
        UPoly { ring: self.ring.clone(), coeffs }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return UPoly::zero(self.ring.clone());
        }
        let mut out = vec![self.ring.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if self.ring.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = self.ring.add(&out[i + j], &self.ring.mul(a, b));
            }
        }
        UPoly::new(self.ring.clone(), out)
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let coeffs = self.coeffs.iter().map(|a| self.ring.mul(a, c)).collect();
        UPoly::new(self.ring.clone(), coeffs)
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = UPoly::one(self.ring.clone());
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// Euclidean division: returns (quotient, remainder).
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self), AlgebraError> {
        if divisor.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        let ring = &self.ring;
        let lc_inv = ring.inv(divisor.leading())?;
        let d = divisor.deg();
        let mut rem = self.coeffs.clone();
        if rem.len() < divisor.coeffs.len() {
            return Ok((UPoly::zero(ring.clone()), self.clone()));
        }
        let mut quot = vec![ring.zero(); rem.len() - d];
        for i in (d..rem.len()).rev() {
            if ring.is_zero(&rem[i]) {
                continue;
            }
            let q = ring.mul(&rem[i], &lc_inv);
            for j in 0..=d {
                let t = ring.mul(&q, &divisor.coeffs[j]);
                rem[i - d + j] = ring.sub(&rem[i - d + j], &t);
            }
            quot[i - d] = q;
        }
        Ok((
            UPoly::new(ring.clone(), quot),
            UPoly::new(ring.clone(), rem),
        ))
    }

    /// Exact division; errors if the remainder is nonzero.
    pub fn exact_div(&self, divisor: &Self) -> Result<Self, AlgebraError> {
        let (q, r) = self.div_rem(divisor)?;
        if !r.is_zero() {
            return Err(AlgebraError::InexactDivision(
                "univariate remainder nonzero".into(),
            ));
        }
        Ok(q)
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return UPoly::zero(self.ring.clone());
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| self.ring.mul(c, &self.ring.from_i64(i as i64)))
            .collect();
        UPoly::new(self.ring.clone(), coeffs)
    }

    pub fn eval(&self, x: &F::Elem) -> F::Elem {
        let mut acc = self.ring.zero();
        for c in self.coeffs.iter().rev() {
            acc = self.ring.add(&self.ring.mul(&acc, x), c);
        }
        acc
    }

    /// Substitute another polynomial for the variable.
    pub fn compose(&self, inner: &Self) -> Self {
        let mut acc = UPoly::zero(self.ring.clone());
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(inner).add(&UPoly::constant(self.ring.clone(), c.clone()));
        }
        acc
    }

    pub fn monic(&self) -> Result<Self, AlgebraError> {
        if self.is_zero() {
            return Ok(self.clone());
        }
        let inv = self.ring.inv(self.leading())?;
        Ok(self.scale(&inv))
    }

    /// Monic gcd by the Euclidean algorithm.
    pub fn gcd(&self, other: &Self) -> Result<Self, AlgebraError> {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b)?;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Resultant via the Euclidean remainder sequence.
    pub fn resultant(&self, other: &Self) -> Result<F::Elem, AlgebraError> {
        let ring = self.ring.clone();
        if self.is_zero() || other.is_zero() {
            return Ok(ring.zero());
        }
        let mut f = self.clone();
        let mut g = other.clone();
        let mut acc = ring.one();
        loop {
            if g.deg() == 0 {
                let val = ring.pow(g.leading(), f.deg() as u32);
                return Ok(ring.mul(&acc, &val));
            }
            if f.deg() < g.deg() {
                // res(f, g) = (-1)^(deg f * deg g) res(g, f)
                if (f.deg() * g.deg()) % 2 == 1 {
                    acc = ring.neg(&acc);
                }
                std::mem::swap(&mut f, &mut g);
                continue;
            }
            let (_, r) = f.div_rem(&g)?;
            if r.is_zero() {
                return Ok(ring.zero());
            }
            // res(f, g) = (-1)^(df*dg) lc(g)^(df - dr) res(g, r)
            let df = f.deg();
            let dg = g.deg();
            let dr = r.deg();
            if (df * dg) % 2 == 1 {
                acc = ring.neg(&acc);
            }
            acc = ring.mul(&acc, &ring.pow(g.leading(), (df - dr) as u32));
            f = g;
            g = r;
        }
    }

    /// Discriminant with the classical sign:
    /// disc(f) = (-1)^(n(n-1)/2) res(f, f') / lc(f).
    pub fn discriminant(&self) -> Result<F::Elem, AlgebraError> {
        if self.is_zero() {
            return Err(AlgebraError::ZeroPolynomial);
        }
        let n = self.deg();
        if n == 0 {
            return Err(AlgebraError::Precondition(
                "discriminant needs degree >= 1".into(),
            ));
        }
        let res = self.resultant(&self.derivative())?;
        let signed = if (n * (n - 1) / 2) % 2 == 1 {
            self.ring.neg(&res)
        } else {
            res
        };
        self.ring.div(&signed, self.leading())
    }

    /// Squarefree part: f / gcd(f, f').
    pub fn squarefree_part(&self) -> Result<Self, AlgebraError> {
        let g = self.gcd(&self.derivative())?;
        if g.is_zero() || g.deg() == 0 {
            return self.monic();
        }
        self.exact_div(&g)?.monic()
    }

    /// Yun's squarefree decomposition: returns [(g_i, i)] with
    /// f = lc * prod g_i^i and the g_i monic, squarefree, pairwise coprime.
    pub fn squarefree_decomposition(&self) -> Result<Vec<(Self, u32)>, AlgebraError> {
        if self.is_zero() {
            return Err(AlgebraError::ZeroPolynomial);
        }
        let f = self.monic()?;
        if f.deg() == 0 {
            return Ok(vec![]);
        }
        let df = f.derivative();
        let mut a = f.gcd(&df)?;
        let mut b = f.exact_div(&a)?;
        let mut c = df.exact_div(&a)?;
        let mut d = c.sub(&b.derivative());
        let mut out = Vec::new();
        let mut i = 1u32;
        loop {
            if b.deg() == 0 {
                break;
            }
            a = b.gcd(&d)?;
            if a.deg() > 0 {
                out.push((a.monic()?, i));
            }
            b = b.exact_div(&a)?;
            c = d.exact_div(&a)?;
            d = c.sub(&b.derivative());
            i += 1;
        }
        Ok(out)
    }

    /// Order of vanishing of `self` along the irreducible `factor`
    /// (largest k with factor^k | self).
    pub fn valuation(&self, factor: &Self) -> Result<u32, AlgebraError> {
        if self.is_zero() {
            return Err(AlgebraError::ZeroPolynomial);
        }
        let mut k = 0;
        let mut cur = self.clone();
        loop {
            let (q, r) = cur.div_rem(factor)?;
            if !r.is_zero() {
                return Ok(k);
            }
            k += 1;
            cur = q;
        }
    }

    pub fn fmt_with(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if self.ring.is_zero(c) {
                continue;
            }
            let cs = self.ring.fmt_elem(c);
            let body = match i {
                0 => cs,
                1 if cs == "1" => var.to_string(),
                1 => format!("{cs}*{var}"),
                _ if cs == "1" => format!("{var}^{i}"),
                _ => format!("{cs}*{var}^{i}"),
            };
            parts.push(body);
        }
        parts.join(" + ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::ring::Ring;
    use crate::exactalg::rat::{Rat, RatField};

    fn p(cs: &[i64]) -> UPoly<RatField> {
        UPoly::from_coeff_slice(RatField, cs)
    }

    /// Independent oracle: resultant as the Sylvester determinant,
    /// expanded by exact Gaussian elimination.
    fn sylvester_resultant(f: &UPoly<RatField>, g: &UPoly<RatField>) -> Rat {
        let m = f.deg();
        let n = g.deg();
        let size = m + n;
        let ring = RatField;
        let mut mat = vec![vec![ring.zero(); size]; size];
        for i in 0..n {
            for (j, c) in f.coeffs.iter().rev().enumerate() {
                mat[i][i + j] = c.clone();
            }
        }
        for i in 0..m {
            for (j, c) in g.coeffs.iter().rev().enumerate() {
                mat[n + i][i + j] = c.clone();
            }
        }
        // exact Gaussian elimination
        let mut det = ring.one();
        for col in 0..size {
            let pivot = (col..size).find(|&r| !ring.is_zero(&mat[r][col]));
            let Some(pr) = pivot else { return ring.zero() };
            if pr != col {
                mat.swap(pr, col);
                det = ring.neg(&det);
            }
            det = ring.mul(&det, &mat[col][col]);
            let inv = ring.inv(&mat[col][col]).unwrap();
            for r in (col + 1)..size {
                let factor = ring.mul(&mat[r][col], &inv);
                if ring.is_zero(&factor) {
                    continue;
                }
                for c in col..size {
                    let t = ring.mul(&factor, &mat[col][c]);
                    mat[r][c] = ring.sub(&mat[r][c], &t);
                }
            }
        }
        det
    }

    #[test]
    fn division_and_gcd() {
        let f = p(&[-1, 0, 0, 1]); // x^3 - 1
        let g = p(&[-1, 1]); // x - 1
        let (q, r) = f.div_rem(&g).unwrap();
        assert!(r.is_zero());
        assert_eq!(q, p(&[1, 1, 1]));
        assert_eq!(f.gcd(&g).unwrap(), g.monic().unwrap());
    }

    #[test]
    fn discriminant_quadratic_is_b2_minus_4c() {
        // x^2 + 3x + 2 -> 9 - 8 = 1
        assert_eq!(p(&[2, 3, 1]).discriminant().unwrap(), Rat::from_int(1));
        // x^2 + x + 1 -> -3
        assert_eq!(p(&[1, 1, 1]).discriminant().unwrap(), Rat::from_int(-3));
    }

    #[test]
    fn discriminant_of_x3_minus_1_matches_sylvester_oracle() {
        let f = p(&[-1, 0, 0, 1]);
        // oracle: res(x^3 - 1, 3x^2) via the Sylvester determinant
        let res = sylvester_resultant(&f, &f.derivative());
        assert_eq!(res, Rat::from_int(27));
        // signed: (-1)^3 * 27 / 1 = -27
        assert_eq!(f.discriminant().unwrap(), Rat::from_int(-27));
    }

    #[test]
    fn resultant_matches_sylvester_on_samples() {
        let samples = [
            (p(&[2, 0, 1]), p(&[-3, 1, 4])),
            (p(&[1, 2, 3, 4]), p(&[5, -1, 2])),
            (p(&[0, 1, 0, 0, 1]), p(&[7, 0, 1])),
        ];
        for (f, g) in samples {
            assert_eq!(f.resultant(&g).unwrap(), sylvester_resultant(&f, &g));
        }
    }

    #[test]
    fn repeated_root_forces_zero_discriminant() {
        // (x-1)^2 (x^2+1)
        let f = p(&[-1, 1]).mul(&p(&[-1, 1])).mul(&p(&[1, 0, 1]));
        assert_eq!(f.discriminant().unwrap(), Rat::from_int(0));
        assert!(f.gcd(&f.derivative()).unwrap().deg() > 0);
    }

    #[test]
    fn squarefree_decomposition_recovers_multiplicity() {
        // (x^2 - 2)^2
        let f = p(&[-2, 0, 1]).mul(&p(&[-2, 0, 1]));
        let dec = f.squarefree_decomposition().unwrap();
        assert_eq!(dec.len(), 1);
        assert_eq!(dec[0].1, 2);
        assert_eq!(dec[0].0, p(&[-2, 0, 1]).monic().unwrap());
    }

    #[test]
    fn valuation_counts_factor_multiplicity() {
        let f = p(&[0, 0, 0, 1]); // x^3
        assert_eq!(f.valuation(&p(&[0, 1])).unwrap(), 3);
        assert_eq!(f.valuation(&p(&[-1, 1])).unwrap(), 0);
    }
}

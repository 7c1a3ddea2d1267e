//! Schubert calculus on the Grassmannian of lines G(1, n), at the scale
//! needed to count lines on hypersurfaces.
//!
//! Classes are integer combinations of Schubert classes sigma_{a,b}
//! (partitions in the 2 x (n-1) box). Multiplication uses the Pieri rule
//! for sigma_1 and the column rule for sigma_{1,1}; the top Chern class of
//! a symmetric power of the dual universal subbundle is expanded through
//! its Chern roots.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::AlgebraError;

/// An integral class on G(1, n) in the Schubert basis.
#[derive(Clone, Debug, PartialEq)]
pub struct SchubertClass {
    pub n: u32,
    pub coeffs: BTreeMap<(u32, u32), BigInt>,
}

impl SchubertClass {
    pub fn zero(n: u32) -> Self {
        SchubertClass { n, coeffs: BTreeMap::new() }
    }

    pub fn one(n: u32) -> Self {
        let mut c = SchubertClass::zero(n);
        c.coeffs.insert((0, 0), BigInt::from(1));
        c
    }

    fn insert(&mut self, key: (u32, u32), val: BigInt) {
        if val.is_zero() {
            return;
        }
        let e = self.coeffs.entry(key).or_insert_with(BigInt::zero);
        *e += val;
        if e.is_zero() {
            self.coeffs.remove(&key);
        }
    }

    pub fn add(&self, other: &SchubertClass) -> SchubertClass {
        assert_eq!(self.n, other.n);
        let mut out = self.clone();
        for (k, v) in &other.coeffs {
            out.insert(*k, v.clone());
        }
        out
    }

    pub fn scale(&self, c: &BigInt) -> SchubertClass {
        let mut out = SchubertClass::zero(self.n);
        for (k, v) in &self.coeffs {
            out.insert(*k, v * c);
        }
        out
    }

    /// Pieri rule: multiply by sigma_1.
    pub fn mul_sigma1(&self) -> SchubertClass {
        let box_width = self.n - 1;
        let mut out = SchubertClass::zero(self.n);
        for (&(a, b), v) in &self.coeffs {
            if a + 1 <= box_width {
                out.insert((a + 1, b), v.clone());
            }
            if b + 1 <= a {
                out.insert((a, b + 1), v.clone());
            }
        }
        out
    }

    /// Column rule: multiply by sigma_{1,1} (adds a full column).
    pub fn mul_sigma11(&self) -> SchubertClass {
        let box_width = self.n - 1;
        let mut out = SchubertClass::zero(self.n);
        for (&(a, b), v) in &self.coeffs {
            if a + 1 <= box_width {
                out.insert((a + 1, b + 1), v.clone());
            }
        }
        out
    }

    /// Codimension of the class, when pure.
    pub fn pure_codim(&self) -> Option<u32> {
        let mut degs = self.coeffs.keys().map(|&(a, b)| a + b);
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    pub fn fmt_pretty(&self) -> String {
        if self.coeffs.is_empty() {
            return "0".into();
        }
        self.coeffs
            .iter()
            .rev()
            .map(|(&(a, b), v)| format!("{v}*sigma_{{{a},{b}}}"))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// Expand the product of linear forms prod_i (i*x + (d-i)*y), i = 0..d,
/// as a polynomial in the elementary symmetric functions e1 = x + y,
/// e2 = x y. Returns the coefficient of e1^j e2^k keyed by (j, k).
fn chern_root_product(d: u32) -> BTreeMap<(u32, u32), BigInt> {
    // dense symmetric polynomial in (x, y): coefficient of x^i y^j
    let deg = (d + 1) as usize;
    let mut poly: BTreeMap<(u32, u32), BigInt> = BTreeMap::new();
    poly.insert((0, 0), BigInt::from(1));
    for i in 0..=d {
        let mut next: BTreeMap<(u32, u32), BigInt> = BTreeMap::new();
        for ((a, b), v) in &poly {
            // multiply by (i x + (d - i) y)
            if i > 0 {
                let e = next.entry((a + 1, *b)).or_insert_with(BigInt::zero);
                *e += v * BigInt::from(i);
            }
            if d - i > 0 {
                let e = next.entry((*a, b + 1)).or_insert_with(BigInt::zero);
                *e += v * BigInt::from(d - i);
            }
        }
        next.retain(|_, v| !v.is_zero());
        poly = next;
    }
    debug_assert!(poly.keys().all(|&(a, b)| (a + b) as usize == deg));
    // symmetric reduction: repeatedly strip the leading term
    let mut out: BTreeMap<(u32, u32), BigInt> = BTreeMap::new();
    while let Some((&(a, b), _)) = poly.iter().rev().find(|(&(a, b), _)| a >= b) {
        let v = poly.get(&(a, b)).cloned().unwrap_or_else(BigInt::zero);
        if v.is_zero() {
            poly.remove(&(a, b));
            continue;
        }
        let (j, k) = (a - b, b);
        out.insert((j, k), v.clone());
        // subtract v * e1^j e2^k, expanded in x, y
        let mut expand: BTreeMap<(u32, u32), BigInt> = BTreeMap::new();
        // e1^j: binomials
        for t in 0..=j {
            let c = binomial(j, t);
            expand.insert((j - t + k, t + k), c * &v);
        }
        for (key, val) in expand {
            let e = poly.entry(key).or_insert_with(BigInt::zero);
            *e -= val;
            if e.is_zero() {
                poly.remove(&key);
            }
        }
    }
    debug_assert!(poly.is_empty(), "symmetric reduction left terms: {poly:?}");
    out
}

fn binomial(n: u32, k: u32) -> BigInt {
    let mut acc = BigInt::from(1);
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// The top Chern class of Sym^d of the dual universal subbundle on
/// G(1, n), in the Schubert basis. For (n, d) = (4, 4) the class is
/// 320 sigma_{3,2}; (3, 3) gives the 27 lines on a cubic surface.
pub fn line_count_class(n: u32, d: u32) -> Result<SchubertClass, AlgebraError> {
    if !(3..=6).contains(&n) || !(1..=7).contains(&d) {
        return Err(AlgebraError::Precondition(format!(
            "line_count_class is tabulated for 3 <= n <= 6, 1 <= d <= 7; got ({n}, {d})"
        )));
    }
    let in_e = chern_root_product(d);
    let mut acc = SchubertClass::zero(n);
    for (&(j, k), v) in &in_e {
        // e1^j e2^k with e1 = sigma_1, e2 = sigma_{1,1}
        let mut cls = SchubertClass::one(n);
        for _ in 0..j {
            cls = cls.mul_sigma1();
        }
        for _ in 0..k {
            cls = cls.mul_sigma11();
        }
        acc = acc.add(&cls.scale(v));
    }
    Ok(acc)
}

/// Degree of the Fano curve of lines under the Pluecker embedding: the
/// line-count class must have curve dimension, and the degree is its
/// intersection with sigma_1.
pub fn fano_curve_degree(n: u32, d: u32) -> Result<BigInt, AlgebraError> {
    let cls = line_count_class(n, d)?;
    let dim = 2 * (n - 1);
    let codim = cls
        .pure_codim()
        .ok_or_else(|| AlgebraError::Precondition("mixed-dimension class".into()))?;
    if codim + 1 != dim {
        return Err(AlgebraError::Precondition(format!(
            "the Fano class has dimension {}, not a curve",
            dim - codim
        )));
    }
    let top = cls.mul_sigma1();
    let top_class = (n - 1, n - 1);
    Ok(top
        .coeffs
        .get(&top_class)
        .cloned()
        .unwrap_or_else(BigInt::zero))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pieri_self_tests() {
        // sigma_1^2 = sigma_2 + sigma_{1,1} in G(1,3)
        let s1 = SchubertClass::one(3).mul_sigma1();
        let s1sq = s1.mul_sigma1();
        let mut expected = SchubertClass::zero(3);
        expected.insert((2, 0), BigInt::from(1));
        expected.insert((1, 1), BigInt::from(1));
        assert_eq!(s1sq, expected);
        // sigma_{1,1}^2 = sigma_{2,2}
        let s11sq = SchubertClass::one(3).mul_sigma11().mul_sigma11();
        let mut expected = SchubertClass::zero(3);
        expected.insert((2, 2), BigInt::from(1));
        assert_eq!(s11sq, expected);
    }

    #[test]
    fn quartic_threefold_count_is_320() {
        let cls = line_count_class(4, 4).unwrap();
        let mut expected = SchubertClass::zero(4);
        expected.insert((3, 2), BigInt::from(320));
        assert_eq!(cls, expected);
        assert_eq!(fano_curve_degree(4, 4).unwrap(), BigInt::from(320));
    }

    #[test]
    fn cubic_surface_count_is_27() {
        let cls = line_count_class(3, 3).unwrap();
        let mut expected = SchubertClass::zero(3);
        expected.insert((2, 2), BigInt::from(27));
        assert_eq!(cls, expected);
        // dimension bookkeeping: a zero-dimensional class is not a curve
        assert!(fano_curve_degree(3, 3).is_err());
    }

    #[test]
    fn quintic_threefold_count_is_2875() {
        let cls = line_count_class(4, 5).unwrap();
        let mut expected = SchubertClass::zero(4);
        expected.insert((3, 3), BigInt::from(2875));
        assert_eq!(cls, expected);
    }

    #[test]
    fn classes_are_effective() {
        for n in 3..=6 {
            for d in 1..=7 {
                let cls = line_count_class(n, d).unwrap();
                for v in cls.coeffs.values() {
                    assert!(v >= &BigInt::from(0), "(n,d) = ({n},{d})");
                }
            }
        }
    }

    #[test]
    fn out_of_range_rejected() {
        assert!(line_count_class(7, 4).is_err());
        assert!(line_count_class(4, 8).is_err());
    }

    #[test]
    fn cone_section_consistency_identity() {
        // a cone component of the Fano curve has multiplicity 2 and its
        // base is a plane quartic: 40 sections x 2 x 4 = 320
        let deg = fano_curve_degree(4, 4).unwrap();
        assert_eq!(BigInt::from(40 * 2 * 4), deg);
    }
}

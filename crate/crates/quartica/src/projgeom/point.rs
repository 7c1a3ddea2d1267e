//! Points of projective space over an arbitrary coefficient field.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::GeomError;
use crate::exactalg::rat::{Rat, RatField};
use crate::exactalg::ring::Field;

/// A projective point with canonically normalized coordinates: the first
/// nonzero coordinate is scaled to one, so equality is plain coordinate
/// equality.
#[derive(Clone, PartialEq, Debug)]
pub struct ProjPoint<F: Field> {
    pub ring: F,
    pub coords: Vec<F::Elem>,
}

impl<F: Field> ProjPoint<F> {
    pub fn new(ring: F, coords: Vec<F::Elem>) -> Result<Self, GeomError> {
        let lead = coords.iter().find(|c| !ring.is_zero(c));
        let Some(lead) = lead else {
            return Err(GeomError::Precondition("all coordinates zero".into()));
        };
        let inv = ring.inv(lead)?;
        let coords = coords.iter().map(|c| ring.mul(c, &inv)).collect();
        Ok(ProjPoint { ring, coords })
    }

    pub fn dim(&self) -> usize {
        self.coords.len() - 1
    }

    pub fn fmt_pretty(&self) -> String {
        let inner: Vec<String> = self.coords.iter().map(|c| self.ring.fmt_elem(c)).collect();
        format!("[{}]", inner.join(", "))
    }
}

impl ProjPoint<RatField> {
    pub fn from_ints(coords: &[i64]) -> Result<Self, GeomError> {
        ProjPoint::new(RatField, coords.iter().map(|&c| Rat::from_int(c)).collect())
    }

    pub fn to_int_point(&self) -> IntPoint {
        IntPoint::from_rationals(&self.coords)
    }
}

/// A rational projective point in primitive integer coordinates
/// (gcd one, first nonzero entry positive). Used at the I/O boundary and
/// for heights.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IntPoint(pub Vec<BigInt>);

impl IntPoint {
    pub fn from_rationals(coords: &[Rat]) -> Self {
        let mut den_lcm = BigInt::one();
        for c in coords {
            den_lcm = den_lcm.lcm(c.denom());
        }
        let mut ints: Vec<BigInt> = coords
            .iter()
            .map(|c| c.numer() * (&den_lcm / c.denom()))
            .collect();
        let mut g = BigInt::zero();
        for v in &ints {
            g = g.gcd(v);
        }
        if !g.is_zero() {
            for v in &mut ints {
                *v /= &g;
            }
        }
        if let Some(first) = ints.iter().find(|v| !v.is_zero()) {
            if first.is_negative() {
                for v in &mut ints {
                    *v = -v.clone();
                }
            }
        }
        IntPoint(ints)
    }

    pub fn max_abs_coord(&self) -> BigInt {
        self.0
            .iter()
            .map(|v| v.abs())
            .max()
            .unwrap_or_else(BigInt::zero)
    }

    pub fn to_rationals(&self) -> Vec<Rat> {
        self.0.iter().map(|v| Rat::from_bigint(v.clone())).collect()
    }
}

impl std::fmt::Display for IntPoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let inner: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
        write!(f, "[{}]", inner.join(", "))
    }
}

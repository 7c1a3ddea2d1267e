//! Lines in P^3 over Q, carried as a span pair together with a canonical
//! pair of dual linear forms.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::GeomError;
use crate::exactalg::linalg;
use crate::exactalg::rat::{Rat, RatField};
use crate::exactalg::ring::{Field, Ring};
use crate::projgeom::point::ProjPoint;

/// A line in P^3. The dual forms are derived canonically from the span
/// points: take the reduced-echelon kernel basis of the 2x4 span matrix in
/// free-column order, then scale each covector to primitive integers with
/// positive first nonzero entry. This makes every downstream object
/// (pencil parametrization, residual cubics) reproducible byte for byte.
#[derive(Clone, PartialEq, Debug)]
pub struct LineInP3 {
    pub span: [ProjPoint<RatField>; 2],
    pub dual: [Vec<Rat>; 2],
}

fn primitive_covector(v: &[Rat]) -> Vec<Rat> {
    let ints = crate::projgeom::point::IntPoint::from_rationals(v);
    ints.to_rationals()
}

impl LineInP3 {
    pub fn new(p1: ProjPoint<RatField>, p2: ProjPoint<RatField>) -> Result<Self, GeomError> {
        if p1.coords.len() != 4 || p2.coords.len() != 4 {
            return Err(GeomError::Precondition("line points must lie in P^3".into()));
        }
        if p1 == p2 {
            return Err(GeomError::DegenerateLine);
        }
        let mat = vec![p1.coords.clone(), p2.coords.clone()];
        let ker = linalg::kernel_basis(&RatField, &mat);
        if ker.len() != 2 {
            return Err(GeomError::DegenerateLine);
        }
        let dual = [primitive_covector(&ker[0]), primitive_covector(&ker[1])];
        Ok(LineInP3 { span: [p1, p2], dual })
    }

    pub fn from_int_points(p1: &[i64], p2: &[i64]) -> Result<Self, GeomError> {
        LineInP3::new(ProjPoint::from_ints(p1)?, ProjPoint::from_ints(p2)?)
    }

    /// The point u * p1 + v * p2, with coordinates in any Q-algebra.
    pub fn point_at<F: Field>(&self, ring: &F, u: &F::Elem, v: &F::Elem) -> Vec<F::Elem> {
        (0..4)
            .map(|i| {
                let a = ring.mul(u, &ring.from_rat(&self.span[0].coords[i]));
                let b = ring.mul(v, &ring.from_rat(&self.span[1].coords[i]));
                ring.add(&a, &b)
            })
            .collect()
    }

    pub fn contains(&self, p: &ProjPoint<RatField>) -> bool {
        self.dual.iter().all(|f| {
            RatField.is_zero(
                &f.iter()
                    .zip(&p.coords)
                    .fold(Rat::from_int(0), |acc, (a, b)| {
                        RatField.add(&acc, &RatField.mul(a, b))
                    }),
            )
        })
    }

    /// Whether two lines in P^3 meet (equivalently, their four span points
    /// are linearly dependent).
    pub fn meets(&self, other: &LineInP3) -> bool {
        let mat = vec![
            self.span[0].coords.clone(),
            self.span[1].coords.clone(),
            other.span[0].coords.clone(),
            other.span[1].coords.clone(),
        ];
        linalg::rank(&RatField, &mat) < 4
    }

    /// Express a point of the line in its span coordinates [u : v].
    pub fn span_coords(&self, p: &ProjPoint<RatField>) -> Option<(Rat, Rat)> {
        let mat: Vec<Vec<Rat>> = (0..4)
            .map(|i| vec![self.span[0].coords[i].clone(), self.span[1].coords[i].clone()])
            .collect();
        linalg::solve(&RatField, &mat, &p.coords).map(|x| (x[0].clone(), x[1].clone()))
    }

    /// Gram matrix of the two dual covectors under the standard inner
    /// product; it is positive definite, hence invertible.
    pub fn dual_gram(&self) -> [[Rat; 2]; 2] {
        let ip = |a: &[Rat], b: &[Rat]| {
            a.iter().zip(b).fold(Rat::from_int(0), |acc, (x, y)| {
                RatField.add(&acc, &RatField.mul(x, y))
            })
        };
        [
            [ip(&self.dual[0], &self.dual[0]), ip(&self.dual[0], &self.dual[1])],
            [ip(&self.dual[1], &self.dual[0]), ip(&self.dual[1], &self.dual[1])],
        ]
    }

    /// Primitive integer direction vectors of the span points (for display).
    pub fn fmt_pretty(&self) -> String {
        format!(
            "line through {} and {}",
            self.span[0].to_int_point(),
            self.span[1].to_int_point()
        )
    }
}

/// Integer content normalization used when lines are built from schema
/// data given as big integer strings.
pub fn primitive_bigints(v: &[BigInt]) -> Vec<BigInt> {
    let mut g = BigInt::zero();
    for x in v {
        g = g.gcd(x);
    }
    let mut out = v.to_vec();
    if !g.is_zero() {
        for x in &mut out {
            *x /= &g;
        }
    }
    if let Some(first) = out.iter().find(|x| !x.is_zero()) {
        if first.is_negative() {
            for x in &mut out {
                *x = -x.clone();
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fermat_line_dual_forms_are_x_minus_y_and_z_minus_w() {
        let l = LineInP3::from_int_points(&[1, 1, 0, 0], &[0, 0, 1, 1]).unwrap();
        assert_eq!(
            l.dual[0],
            vec![Rat::from_int(1), Rat::from_int(-1), Rat::from_int(0), Rat::from_int(0)]
        );
        assert_eq!(
            l.dual[1],
            vec![Rat::from_int(0), Rat::from_int(0), Rat::from_int(1), Rat::from_int(-1)]
        );
        assert!(l.contains(&ProjPoint::from_ints(&[1, 1, 2, 2]).unwrap()));
        assert!(!l.contains(&ProjPoint::from_ints(&[1, 0, 0, 0]).unwrap()));
    }

    #[test]
    fn meets_detects_skew_and_incident_pairs() {
        let l = LineInP3::from_int_points(&[1, 1, 0, 0], &[0, 0, 1, 1]).unwrap();
        // X=-Y, Z=-W is skew to it
        let skew = LineInP3::from_int_points(&[1, -1, 0, 0], &[0, 0, 1, -1]).unwrap();
        assert!(!l.meets(&skew));
        // X=Y, Z=-W meets it at [1,1,0,0]
        let incident = LineInP3::from_int_points(&[1, 1, 0, 0], &[0, 0, 1, -1]).unwrap();
        assert!(l.meets(&incident));
    }

    #[test]
    fn coincident_points_rejected() {
        assert!(matches!(
            LineInP3::from_int_points(&[1, 1, 0, 0], &[2, 2, 0, 0]),
            Err(GeomError::DegenerateLine)
        ));
    }
}

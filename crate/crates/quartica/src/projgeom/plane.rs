//! The pencil of planes through a line, parametrized restriction of forms,
//! and tangent planes.

use crate::error::GeomError;
use crate::exactalg::mpoly::{map_coeffs, vars, MPoly, VarList};
use crate::exactalg::rat::{Rat, RatField};
use crate::exactalg::ring::{Field, Ring};
use crate::exactalg::linalg;
use crate::projgeom::line::LineInP3;
use crate::projgeom::point::ProjPoint;

/// A point of P^1: a finite rational parameter or infinity. Infinity is a
/// first-class value, not a large number.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum P1 {
    Finite(Rat),
    Infinity,
}

impl P1 {
    /// Homogeneous coordinates [t : s].
    pub fn ts(&self) -> (Rat, Rat) {
        match self {
            P1::Finite(t) => (t.clone(), Rat::from_int(1)),
            P1::Infinity => (Rat::from_int(1), Rat::from_int(0)),
        }
    }

    pub fn parse(s: &str) -> Result<P1, GeomError> {
        let s = s.trim();
        if s == "inf" || s == "oo" || s == "infinity" {
            return Ok(P1::Infinity);
        }
        Rat::parse(s)
            .map(P1::Finite)
            .map_err(|e| GeomError::Precondition(e.to_string()))
    }
}

impl std::fmt::Display for P1 {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            P1::Finite(t) => write!(f, "{t}"),
            P1::Infinity => write!(f, "inf"),
        }
    }
}

/// An embedded plane P^2 -> P^3 given by three column vectors: the map
/// sends [U, V, T] to U*c0 + V*c1 + T*c2. When the plane belongs to the
/// pencil through a line, c0 and c1 are the line's span points, so the
/// line is exactly the image of T = 0.
#[derive(Clone, PartialEq, Debug)]
pub struct PlaneParam<F: Field> {
    pub ring: F,
    pub cols: [Vec<F::Elem>; 3],
}

pub const PLANE_VARS: [&str; 3] = ["U", "V", "T"];

impl<F: Field> PlaneParam<F> {
    pub fn plane_vars() -> VarList {
        vars(&PLANE_VARS)
    }

    pub fn map_point(&self, u: &F::Elem, v: &F::Elem, t: &F::Elem) -> Vec<F::Elem> {
        (0..4)
            .map(|i| {
                let r = &self.ring;
                let a = r.mul(u, &self.cols[0][i]);
                let b = r.mul(v, &self.cols[1][i]);
                let c = r.mul(t, &self.cols[2][i]);
                r.add(&r.add(&a, &b), &c)
            })
            .collect()
    }

    /// The (projective) dual covector of the plane, by signed 3x3 minors.
    pub fn dual_vector(&self) -> Vec<F::Elem> {
        let r = &self.ring;
        let mut out = Vec::with_capacity(4);
        for skip in 0..4 {
            let rows: Vec<Vec<F::Elem>> = (0..4)
                .filter(|&i| i != skip)
                .map(|i| {
                    vec![
                        self.cols[0][i].clone(),
                        self.cols[1][i].clone(),
                        self.cols[2][i].clone(),
                    ]
                })
                .collect();
            let d = linalg::det(r, &rows);
            out.push(if skip % 2 == 0 { d } else { r.neg(&d) });
        }
        out
    }

    /// Solve for the in-plane coordinates of an ambient point, if it lies
    /// on the plane.
    pub fn in_plane_coords(&self, ambient: &[F::Elem]) -> Option<[F::Elem; 3]> {
        let mat: Vec<Vec<F::Elem>> = (0..4)
            .map(|i| {
                vec![
                    self.cols[0][i].clone(),
                    self.cols[1][i].clone(),
                    self.cols[2][i].clone(),
                ]
            })
            .collect();
        let x = linalg::solve(&self.ring, &mat, ambient)?;
        // verify (solve only guarantees consistency of the reduced system)
        let image = self.map_point(&x[0], &x[1], &x[2]);
        let proportional = check_proportional(&self.ring, &image, ambient);
        if proportional {
            Some([x[0].clone(), x[1].clone(), x[2].clone()])
        } else {
            None
        }
    }
}

fn check_proportional<F: Field>(ring: &F, a: &[F::Elem], b: &[F::Elem]) -> bool {
    // a and b nonzero vectors: proportional iff all 2x2 minors vanish
    for i in 0..a.len() {
        for j in (i + 1)..a.len() {
            let m = ring.sub(&ring.mul(&a[i], &b[j]), &ring.mul(&a[j], &b[i]));
            if !ring.is_zero(&m) {
                return false;
            }
        }
    }
    true
}

/// The plane of the pencil through `line` at homogeneous parameter
/// [t : s].
///
/// The moving point is t*d1 + s*d2 where d1, d2 are the line's canonical
/// dual covectors read as points. Because the Gram matrix of (d1, d2) is
/// rationally invertible, the moving point never lies on the line and
/// distinct parameters give distinct planes.
pub fn pencil_plane_ts<F: Field>(
    ring: &F,
    line: &LineInP3,
    t: &F::Elem,
    s: &F::Elem,
) -> PlaneParam<F> {
    let embed = |v: &[Rat]| -> Vec<F::Elem> { v.iter().map(|c| ring.from_rat(c)).collect() };
    let d1 = embed(&line.dual[0]);
    let d2 = embed(&line.dual[1]);
    let moving: Vec<F::Elem> = (0..4)
        .map(|i| ring.add(&ring.mul(t, &d1[i]), &ring.mul(s, &d2[i])))
        .collect();
    PlaneParam {
        ring: ring.clone(),
        cols: [
            embed(&line.span[0].coords),
            embed(&line.span[1].coords),
            moving,
        ],
    }
}

/// Rational-parameter convenience wrapper.
pub fn pencil_plane(line: &LineInP3, t: &P1) -> PlaneParam<RatField> {
    let (tt, ss) = t.ts();
    pencil_plane_ts(&RatField, line, &tt, &ss)
}

/// Restrict a homogeneous form on P^3 to a parametrized plane; the result
/// is a form of the same degree in (U, V, T).
pub fn restrict_form<F: Field>(
    form: &MPoly<RatField>,
    plane: &PlaneParam<F>,
) -> Result<MPoly<F>, GeomError> {
    if form.vars.len() != 4 {
        return Err(GeomError::Precondition("form must have four variables".into()));
    }
    if !form.is_homogeneous() {
        return Err(GeomError::NotHomogeneous);
    }
    let ring = plane.ring.clone();
    let pv = PlaneParam::<F>::plane_vars();
    let f = map_coeffs(&ring, form, |c| ring.from_rat(c));
    let images: Vec<MPoly<F>> = (0..4)
        .map(|i| {
            let mut img = MPoly::zero(ring.clone(), pv.clone());
            for (j, var_idx) in (0..3).enumerate() {
                let coeff = plane.cols[j][i].clone();
                img = img.add(&MPoly::monomial(
                    ring.clone(),
                    pv.clone(),
                    {
                        let mut e = vec![0u32; 3];
                        e[var_idx] = 1;
                        e
                    },
                    coeff,
                ));
            }
            img
        })
        .collect();
    f.substitute(&images).map_err(GeomError::from)
}

/// The tangent plane of a hypersurface at a smooth point, as a primitive
/// dual covector. Errors distinguish "point not on the surface" from
/// "singular point".
pub fn tangent_plane_dual(
    form: &MPoly<RatField>,
    p: &ProjPoint<RatField>,
) -> Result<Vec<Rat>, GeomError> {
    if !RatField.is_zero(&form.eval(&p.coords)) {
        return Err(GeomError::PointNotOnVariety);
    }
    let grad: Vec<Rat> = form.gradient().iter().map(|g| g.eval(&p.coords)).collect();
    if grad.iter().all(|c| RatField.is_zero(c)) {
        return Err(GeomError::SingularPoint);
    }
    Ok(crate::projgeom::point::IntPoint::from_rationals(&grad).to_rationals())
}

/// For a point p of the line on the surface, the tangent plane at p
/// belongs to the pencil; return its parameter [t : s].
pub fn tangent_pencil_parameter(
    form: &MPoly<RatField>,
    line: &LineInP3,
    p: &ProjPoint<RatField>,
) -> Result<(Rat, Rat), GeomError> {
    if !line.contains(p) {
        return Err(GeomError::Precondition("point is not on the line".into()));
    }
    let dual = tangent_plane_dual(form, p)?;
    // dual = alpha * d1 + beta * d2
    let mat: Vec<Vec<Rat>> = (0..4)
        .map(|i| vec![line.dual[0][i].clone(), line.dual[1][i].clone()])
        .collect();
    let ab = linalg::solve(&RatField, &mat, &dual).ok_or_else(|| {
        GeomError::Precondition("tangent plane does not contain the line".into())
    })?;
    let (alpha, beta) = (&ab[0], &ab[1]);
    let g = line.dual_gram();
    // [t : s] = [alpha*G12 + beta*G22 : -(alpha*G11 + beta*G12)]
    let r = RatField;
    let t = r.add(&r.mul(alpha, &g[0][1]), &r.mul(beta, &g[1][1]));
    let s = r.neg(&r.add(&r.mul(alpha, &g[0][0]), &r.mul(beta, &g[0][1])));
    Ok((t, s))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::mpoly::MPoly;

    fn fermat_quartic() -> MPoly<RatField> {
        MPoly::from_terms(
            vars(&["X", "Y", "Z", "W"]),
            &[
                (vec![4, 0, 0, 0], 1),
                (vec![0, 4, 0, 0], -1),
                (vec![0, 0, 4, 0], 1),
                (vec![0, 0, 0, 4], -1),
            ],
        )
    }

    fn fermat_line() -> LineInP3 {
        LineInP3::from_int_points(&[1, 1, 0, 0], &[0, 0, 1, 1]).unwrap()
    }

    #[test]
    fn pencil_reproduces_classical_fermat_parametrization() {
        let l = fermat_line();
        // at parameter a the moving point is [a, -a, 1, -1]
        let h = pencil_plane(&l, &P1::Finite(Rat::from_int(5)));
        assert_eq!(
            h.cols[2],
            vec![Rat::from_int(5), Rat::from_int(-5), Rat::from_int(1), Rat::from_int(-1)]
        );
        // at infinity the plane is Z = W
        let hinf = pencil_plane(&l, &P1::Infinity);
        let dual = hinf.dual_vector();
        let primitive = crate::projgeom::point::IntPoint::from_rationals(&dual);
        assert_eq!(
            primitive.0,
            vec![0.into(), 0.into(), 1.into(), (-1).into()]
        );
    }

    #[test]
    fn restriction_of_fermat_quartic_matches_displayed_form() {
        let l = fermat_line();
        let h = pencil_plane(&l, &P1::Finite(Rat::from_int(2)));
        let g = restrict_form(&fermat_quartic(), &h).unwrap();
        // 8*2*U^3T + 8*8*UT^3 + 8V^3T + 8VT^3
        let expected = MPoly::from_terms(
            PlaneParam::<RatField>::plane_vars(),
            &[
                (vec![3, 0, 1], 16),
                (vec![1, 0, 3], 64),
                (vec![0, 3, 1], 8),
                (vec![0, 1, 3], 8),
            ],
        );
        assert_eq!(g, expected);
    }

    #[test]
    fn restriction_is_multiplicative() {
        let l = fermat_line();
        let h = pencil_plane(&l, &P1::Finite(Rat::new(3, 2)));
        let f = fermat_quartic();
        let varsq = vars(&["X", "Y", "Z", "W"]);
        let g = MPoly::from_terms(varsq, &[(vec![1, 1, 0, 0], 2), (vec![0, 0, 2, 0], -3)]);
        let lhs = restrict_form(&f.mul(&g), &h).unwrap();
        let rhs = restrict_form(&f, &h).unwrap().mul(&restrict_form(&g, &h).unwrap());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn two_pencil_planes_intersect_exactly_in_the_line() {
        let l = fermat_line();
        let h1 = pencil_plane(&l, &P1::Finite(Rat::from_int(1)));
        let h2 = pencil_plane(&l, &P1::Finite(Rat::from_int(-3)));
        let mat = vec![h1.dual_vector(), h2.dual_vector()];
        assert_eq!(linalg::rank(&RatField, &mat), 2);
        let ker = linalg::kernel_basis(&RatField, &mat);
        // the kernel is spanned by the line's span points
        for v in &ker {
            let p = ProjPoint::new(RatField, v.clone()).unwrap();
            assert!(l.contains(&p));
        }
    }

    #[test]
    fn tangent_plane_at_unit_point() {
        let f = fermat_quartic();
        let p = ProjPoint::from_ints(&[1, 1, 1, 1]).unwrap();
        let dual = tangent_plane_dual(&f, &p).unwrap();
        assert_eq!(
            dual,
            vec![Rat::from_int(1), Rat::from_int(-1), Rat::from_int(1), Rat::from_int(-1)]
        );
        // Euler: the tangent plane contains the point
        let ip: Rat = dual
            .iter()
            .zip(&p.coords)
            .fold(Rat::from_int(0), |acc, (a, b)| {
                RatField.add(&acc, &RatField.mul(a, b))
            });
        assert!(RatField.is_zero(&ip));
    }

    #[test]
    fn tangent_errors_are_distinguished() {
        let f = fermat_quartic();
        let off = ProjPoint::from_ints(&[1, 0, 0, 0]).unwrap();
        assert!(matches!(
            tangent_plane_dual(&f, &off),
            Err(GeomError::PointNotOnVariety)
        ));
        // cone X^2 - Y^2 (as a quartic times nothing: use a singular quartic)
        let cone = MPoly::from_terms(
            vars(&["X", "Y", "Z", "W"]),
            &[(vec![2, 2, 0, 0], 1)],
        );
        let sing = ProjPoint::from_ints(&[1, 0, 0, 0]).unwrap();
        assert!(matches!(
            tangent_plane_dual(&cone, &sing),
            Err(GeomError::SingularPoint)
        ));
    }

    #[test]
    fn pencil_parameter_of_tangent_plane_at_line_point() {
        let f = fermat_quartic();
        let l = fermat_line();
        let p = ProjPoint::from_ints(&[1, 1, 1, 1]).unwrap();
        let (t, s) = tangent_pencil_parameter(&f, &l, &p).unwrap();
        // the tangent plane X - Y + Z - W = 0 is the pencil member at a = -1
        assert_eq!(RatField.div(&t, &s).unwrap(), Rat::from_int(-1));
    }

    #[test]
    fn in_plane_coords_roundtrip() {
        let l = fermat_line();
        let h = pencil_plane(&l, &P1::Finite(Rat::from_int(-1)));
        let amb = h.map_point(&Rat::from_int(2), &Rat::from_int(-3), &Rat::from_int(5));
        let c = h.in_plane_coords(&amb).unwrap();
        let back = h.map_point(&c[0], &c[1], &c[2]);
        assert!(check_proportional(&RatField, &back, &amb));
        // a point off the plane has no in-plane coordinates
        assert!(h.in_plane_coords(&[
            Rat::from_int(1),
            Rat::from_int(0),
            Rat::from_int(0),
            Rat::from_int(0)
        ])
        .is_none());
    }
}

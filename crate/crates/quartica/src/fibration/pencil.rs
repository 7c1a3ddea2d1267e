//! Residual cubics of the pencil of planes through the line, trisection
//! divisors, and the branch analysis of the degree-3 map from the line to
//! the pencil base.

use crate::error::FibrationError;
use crate::exactalg::factor::factor_desk;
use crate::exactalg::mpoly::MPoly;
use crate::exactalg::rat::{Rat, RatField};
use crate::exactalg::ratfunc::{RatFuncElem, RatFuncField};
use crate::exactalg::ring::{Field, Ring};
use crate::exactalg::upoly::UPoly;
use crate::exactalg::ExtField;
use crate::cubiclaw::cubic::TernaryCubic;
use crate::fibration::surface::QuarticSurfaceWithLine;
use crate::projgeom::plane::{pencil_plane_ts, restrict_form, tangent_pencil_parameter, P1};
use crate::projgeom::point::ProjPoint;

/// A residual cubic together with the scalar relating it back to the
/// restriction: restrict(quartic) = scalar * T * cubic.
#[derive(Clone, Debug)]
pub struct ResidualCubic<F: Field> {
    pub cubic: TernaryCubic<F>,
    pub scalar: F::Elem,
}

/// The residual cubic at a rational pencil parameter (or infinity),
/// primitive-normalized over Q.
pub fn residual_cubic_at(
    surface: &QuarticSurfaceWithLine,
    t: &P1,
) -> Result<ResidualCubic<RatField>, FibrationError> {
    let (tt, ss) = t.ts();
    let plane = pencil_plane_ts(&RatField, &surface.line, &tt, &ss);
    let restricted = restrict_form(&surface.quartic, &plane).map_err(FibrationError::Geom)?;
    let t_mono = MPoly::monomial(
        RatField,
        restricted.vars.clone(),
        vec![0, 0, 1],
        Rat::from_int(1),
    );
    let raw = restricted
        .exact_div(&t_mono)
        .map_err(|_| FibrationError::ResidualNotDivisible)?;
    let normalized = raw.primitive_normalized();
    // scalar with raw = scalar * normalized
    let (eraw, craw) = raw.leading_term().expect("nonzero cubic");
    let cnorm = normalized.terms.get(eraw).expect("same support");
    let scalar = RatField.div(craw, cnorm).map_err(FibrationError::Algebra)?;
    Ok(ResidualCubic {
        cubic: TernaryCubic::from_mpoly(&normalized).map_err(FibrationError::Geom)?,
        scalar,
    })
}

/// The symbolic residual cubic over Q(t). `at_infinity` selects the other
/// affine chart of the pencil base (parameter [1 : s] instead of [t : 1]),
/// used for exact analysis of the fiber over infinity.
pub fn residual_cubic_symbolic(
    surface: &QuarticSurfaceWithLine,
    at_infinity: bool,
) -> Result<ResidualCubic<RatFuncField>, FibrationError> {
    let k = RatFuncField;
    let (t, s) = if at_infinity {
        (k.one(), k.gen())
    } else {
        (k.gen(), k.one())
    };
    let plane = pencil_plane_ts(&k, &surface.line, &t, &s);
    let restricted = restrict_form(&surface.quartic, &plane).map_err(FibrationError::Geom)?;
    let t_mono = MPoly::monomial(k, restricted.vars.clone(), vec![0, 0, 1], k.one());
    let raw = restricted
        .exact_div(&t_mono)
        .map_err(|_| FibrationError::ResidualNotDivisible)?;
    // all coefficients are polynomials in the parameter
    for c in raw.terms.values() {
        debug_assert!(c.is_polynomial());
    }
    // integer-content normalization across the ten coefficient polynomials
    let mut content: Option<Rat> = None;
    for c in raw.terms.values() {
        for q in &c.num.coeffs {
            content = Some(match content.take() {
                None => q.abs(),
                Some(acc) => gcd_rat(&acc, q),
            });
        }
    }
    let content = content.ok_or(FibrationError::ResidualNotDivisible)?;
    let mut normalized = raw.scale(&k.from_rat(&RatField.inv(&content).map_err(FibrationError::Algebra)?));
    // sign: leading coefficient of the first cubic monomial present
    let lead_sign_flip = normalized
        .terms
        .iter()
        .next_back()
        .map(|(_, c)| c.num.leading().is_negative())
        .unwrap_or(false);
    let mut scalar = content;
    if lead_sign_flip {
        normalized = normalized.neg();
        scalar = RatField.neg(&scalar);
    }
    Ok(ResidualCubic {
        cubic: TernaryCubic::from_mpoly(&normalized).map_err(FibrationError::Geom)?,
        scalar: k.from_rat(&scalar),
    })
}

fn gcd_rat(a: &Rat, b: &Rat) -> Rat {
    use num_integer::Integer;
    // gcd of rationals: gcd of numerators over lcm of denominators
    let num = a.numer().gcd(b.numer());
    let den = a.denom().lcm(b.denom());
    Rat(num_rational::BigRational::new(num, den))
}

/// The trisection form: restriction of a residual cubic to T = 0, as a
/// binary cubic [c(U^3), c(U^2 V), c(U V^2), c(V^3)].
pub fn trisection_coeffs<F: Field>(cubic: &TernaryCubic<F>) -> [F::Elem; 4] {
    [
        cubic.coeffs[0].clone(),
        cubic.coeffs[1].clone(),
        cubic.coeffs[3].clone(),
        cubic.coeffs[6].clone(),
    ]
}

/// Trisection divisor of the fiber at a rational parameter: errors when
/// the restriction vanishes identically (the line would be a component).
pub fn trisection_at(
    surface: &QuarticSurfaceWithLine,
    t: &P1,
) -> Result<[Rat; 4], FibrationError> {
    let rc = residual_cubic_at(surface, t)?;
    let tri = trisection_coeffs(&rc.cubic);
    if tri.iter().all(|c| RatField.is_zero(c)) {
        return Err(FibrationError::TrisectionDegenerate);
    }
    Ok(tri)
}

/// Discriminant of a binary cubic a x^3 + b x^2 y + c x y^2 + d y^3.
pub fn binary_cubic_disc<F: Field>(ring: &F, co: &[F::Elem; 4]) -> F::Elem {
    let (a, b, c, d) = (&co[0], &co[1], &co[2], &co[3]);
    let t1 = ring.mul(&ring.mul(&ring.mul(a, b), &ring.mul(c, d)), &ring.from_i64(18));
    let t2 = ring.mul(&ring.mul(&ring.pow(b, 3), d), &ring.from_i64(-4));
    let t3 = ring.mul(&ring.pow(b, 2), &ring.pow(c, 2));
    let t4 = ring.mul(&ring.mul(a, &ring.pow(c, 3)), &ring.from_i64(-4));
    let t5 = ring.mul(&ring.mul(&ring.pow(a, 2), &ring.pow(d, 2)), &ring.from_i64(-27));
    ring.sum([t1, t2, t3, t4, t5])
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum RamificationProfile {
    /// one double point and one simple point of the trisection divisor
    Double,
    /// one triple point
    Triple,
}

impl RamificationProfile {
    pub fn tag(&self) -> &'static str {
        match self {
            RamificationProfile::Double => "double",
            RamificationProfile::Triple => "triple",
        }
    }
}

#[derive(Clone, Debug)]
pub struct BranchPoint {
    /// finite parameters come as the minimal polynomial of their orbit
    pub param: FiberParamDesc,
    /// order of vanishing of the trisection discriminant (per root)
    pub weight: u32,
    pub profile: RamificationProfile,
}

#[derive(Clone, Debug, PartialEq)]
pub enum FiberParamDesc {
    Rational(Rat),
    AlgebraicOrbit { minpoly: UPoly<RatField> },
    Infinity,
}

impl FiberParamDesc {
    pub fn orbit_size(&self) -> u32 {
        match self {
            FiberParamDesc::Rational(_) | FiberParamDesc::Infinity => 1,
            FiberParamDesc::AlgebraicOrbit { minpoly } => minpoly.deg() as u32,
        }
    }

    pub fn fmt_pretty(&self) -> String {
        match self {
            FiberParamDesc::Rational(r) => r.to_string(),
            FiberParamDesc::Infinity => "inf".into(),
            FiberParamDesc::AlgebraicOrbit { minpoly } => {
                format!("root of {}", minpoly.fmt_with("t"))
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct BranchReport {
    pub points: Vec<BranchPoint>,
    /// total weight, counted with orbit sizes; always 4 by Riemann-Hurwitz
    pub total: u32,
}

/// Branch locus of the degree-3 covering of the pencil base by the line:
/// roots of the trisection discriminant (including infinity), each with
/// its ramification profile.
pub fn branch_analysis(surface: &QuarticSurfaceWithLine) -> Result<BranchReport, FibrationError> {
    let k = RatFuncField;
    let rc = residual_cubic_symbolic(surface, false)?;
    let tri = trisection_coeffs(&rc.cubic);
    if tri.iter().all(|c| k.is_zero(c)) {
        return Err(FibrationError::TrisectionDegenerate);
    }
    let disc = binary_cubic_disc(&k, &tri);
    if k.is_zero(&disc) {
        return Err(FibrationError::PencilDegenerate);
    }
    debug_assert!(disc.is_polynomial());
    let disc_poly = disc.num.clone();
    let deg = disc_poly.deg() as u32;
    if deg > 4 {
        return Err(FibrationError::TaxonomyViolation(format!(
            "trisection discriminant has degree {deg} > 4"
        )));
    }
    let mut points = Vec::new();
    let mut total = 0u32;
    let fac = factor_desk(&disc_poly).map_err(FibrationError::Algebra)?;
    for (h, mult) in &fac.factors {
        let param = if h.deg() == 1 {
            FiberParamDesc::Rational(
                RatField
                    .div(&RatField.neg(&h.coeff(0)), &h.coeff(1))
                    .map_err(FibrationError::Algebra)?,
            )
        } else {
            FiberParamDesc::AlgebraicOrbit { minpoly: h.clone() }
        };
        let profile = ramification_profile_at(&tri, h)?;
        total += mult * h.deg() as u32;
        points.push(BranchPoint { param, weight: *mult, profile });
    }
    // contribution at infinity
    let inf_weight = 4 - deg;
    if inf_weight > 0 {
        let rc_inf = residual_cubic_symbolic(surface, true)?;
        let tri_inf = trisection_coeffs(&rc_inf.cubic);
        let tri_at_zero: [Rat; 4] = [
            eval_at_zero(&tri_inf[0]),
            eval_at_zero(&tri_inf[1]),
            eval_at_zero(&tri_inf[2]),
            eval_at_zero(&tri_inf[3]),
        ];
        let profile = binary_profile(&RatField, &tri_at_zero)?;
        total += inf_weight;
        points.push(BranchPoint {
            param: FiberParamDesc::Infinity,
            weight: inf_weight,
            profile,
        });
    }
    debug_assert_eq!(total, 4, "Riemann-Hurwitz count");
    sort_branch_points(&mut points);
    Ok(BranchReport { points, total })
}

fn eval_at_zero(f: &RatFuncElem) -> Rat {
    RatFuncField
        .eval_at(f, &Rat::from_int(0))
        .expect("polynomial coefficient")
}

fn sort_branch_points(points: &mut [BranchPoint]) {
    points.sort_by(|a, b| param_sort_key(&a.param).cmp(&param_sort_key(&b.param)));
}

pub(crate) fn param_sort_key(p: &FiberParamDesc) -> (u8, Vec<Rat>) {
    match p {
        FiberParamDesc::Rational(r) => (0, vec![r.clone()]),
        FiberParamDesc::AlgebraicOrbit { minpoly } => {
            let mut key = vec![Rat::from_int(minpoly.deg() as i64)];
            key.extend(minpoly.coeffs.iter().rev().cloned());
            (1, key)
        }
        FiberParamDesc::Infinity => (2, vec![]),
    }
}

/// Ramification profile of the trisection divisor over a root of the
/// irreducible h: double or triple point, decided by the gcd degree over
/// Q[tau]/(h).
fn ramification_profile_at(
    tri: &[RatFuncElem; 4],
    h: &UPoly<RatField>,
) -> Result<RamificationProfile, FibrationError> {
    if h.deg() == 1 {
        let root = RatField
            .div(&RatField.neg(&h.coeff(0)), &h.coeff(1))
            .map_err(FibrationError::Algebra)?;
        let co: [Rat; 4] = [
            RatFuncField.eval_at(&tri[0], &root).map_err(FibrationError::Algebra)?,
            RatFuncField.eval_at(&tri[1], &root).map_err(FibrationError::Algebra)?,
            RatFuncField.eval_at(&tri[2], &root).map_err(FibrationError::Algebra)?,
            RatFuncField.eval_at(&tri[3], &root).map_err(FibrationError::Algebra)?,
        ];
        binary_profile(&RatField, &co)
    } else {
        let k = ExtField::new(RatField, h.clone(), "t").map_err(FibrationError::Algebra)?;
        let co: [Vec<Rat>; 4] = [
            k.from_poly(&tri[0].num),
            k.from_poly(&tri[1].num),
            k.from_poly(&tri[2].num),
            k.from_poly(&tri[3].num),
        ];
        binary_profile(&k, &co)
    }
}

/// Profile of a binary cubic with vanishing discriminant: Double when the
/// gcd with the derivative is linear, Triple when quadratic.
fn binary_profile<F: Field>(ring: &F, co: &[F::Elem; 4]) -> Result<RamificationProfile, FibrationError> {
    // dehomogenize carefully: use the chart where the form does not vanish
    let f = UPoly::new(
        ring.clone(),
        vec![co[3].clone(), co[2].clone(), co[1].clone(), co[0].clone()],
    );
    if f.is_zero() {
        return Err(FibrationError::TrisectionDegenerate);
    }
    // multiplicity structure of a binary cubic: compare deg(gcd(f, f'))
    // after accounting for the root at infinity (degree drop)
    let drop = 3 - f.degree().unwrap_or(0); // multiplicity of [1:0]
    let g = f.gcd(&f.derivative()).map_err(FibrationError::Algebra)?;
    let finite_rep = if f.deg() == 0 { 0 } else { g.degree().unwrap_or(0) };
    // total repeated-root weight: finite gcd degree plus (drop - 1 if the
    // infinite root is multiple)
    let inf_extra = drop.saturating_sub(1);
    match finite_rep + inf_extra {
        1 => Ok(RamificationProfile::Double),
        2 => Ok(RamificationProfile::Triple),
        0 => Err(FibrationError::Precondition(
            "profile requested at an unramified parameter".into(),
        )),
        other => Err(FibrationError::TaxonomyViolation(format!(
            "trisection multiplicity {other} impossible for a reduced fiber"
        ))),
    }
}

/// The fiber through a point of the line: the residual cubic in the
/// tangent plane at that point, together with the pencil parameter and the
/// in-plane coordinates of the point.
pub struct FiberAtPoint {
    pub param: P1,
    pub residual: ResidualCubic<RatField>,
    pub point_in_plane: ProjPoint<RatField>,
}

pub fn fiber_at_line_point(
    surface: &QuarticSurfaceWithLine,
    p: &ProjPoint<RatField>,
) -> Result<FiberAtPoint, FibrationError> {
    let (t, s) = tangent_pencil_parameter(&surface.quartic, &surface.line, p)
        .map_err(FibrationError::Geom)?;
    let param = if RatField.is_zero(&s) {
        P1::Infinity
    } else {
        P1::Finite(RatField.div(&t, &s).map_err(FibrationError::Algebra)?)
    };
    let residual = residual_cubic_at(surface, &param)?;
    let (tt, ss) = param.ts();
    let plane = pencil_plane_ts(&RatField, &surface.line, &tt, &ss);
    let coords = plane
        .in_plane_coords(&p.coords)
        .ok_or_else(|| FibrationError::Precondition("point not on its tangent plane".into()))?;
    let point_in_plane =
        ProjPoint::new(RatField, coords.to_vec()).map_err(FibrationError::Geom)?;
    debug_assert!(residual.cubic.contains(&point_in_plane), "p lies on its own fiber");
    Ok(FiberAtPoint { param, residual, point_in_plane })
}

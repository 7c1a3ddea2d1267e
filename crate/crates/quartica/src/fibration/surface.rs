//! A smooth quartic surface with a marked line, validated on construction.

use crate::error::{FibrationError, GeomError};
use crate::exactalg::factor::factor_desk;
use crate::exactalg::mpoly::{vars, MPoly};
use crate::exactalg::rat::{Rat, RatField};
use crate::exactalg::ring::{Field, Ring};
use crate::exactalg::upoly::UPoly;
use crate::exactalg::ExtField;
use crate::cubiclaw::classify::resultant_wrt;
use crate::projgeom::line::LineInP3;

/// Outcome of the smoothness check.
#[derive(Clone, Debug, PartialEq)]
pub enum SmoothnessCertificate {
    /// The partials were shown to have no common projective zero.
    Certified,
    /// Only sampled gradients were checked; the full elimination was not
    /// conclusive at desk scale.
    SampledOnly(String),
}

#[derive(Clone, Debug)]
pub struct QuarticSurfaceWithLine {
    pub quartic: MPoly<RatField>,
    pub line: LineInP3,
    pub certificate: SmoothnessCertificate,
}

impl QuarticSurfaceWithLine {
    /// Validate and construct. Checks: the form is homogeneous of degree 4
    /// in four variables, the line lies on the surface, and the surface
    /// passes the smoothness certificate (full elimination when it
    /// concludes, sampled gradients otherwise; a singular witness is a
    /// hard error).
    pub fn new(quartic: MPoly<RatField>, line: LineInP3) -> Result<Self, FibrationError> {
        if quartic.vars.len() != 4 {
            return Err(GeomError::Precondition("quartic must have four variables".into()).into());
        }
        if !quartic.is_homogeneous() || quartic.total_degree() != Some(4) {
            return Err(GeomError::NotHomogeneous.into());
        }
        let quartic = quartic.primitive_normalized();
        if !line_on_surface(&quartic, &line) {
            return Err(GeomError::LineNotOnSurface.into());
        }
        // sampled gradient checks along the line
        for (a, b) in [(1i64, 0i64), (0, 1), (1, 1), (1, -1), (2, 1), (1, 3)] {
            let pt: Vec<Rat> = line.point_at(&RatField, &Rat::from_int(a), &Rat::from_int(b));
            let grad_zero = quartic
                .gradient()
                .iter()
                .all(|g| RatField.is_zero(&g.eval(&pt)));
            if grad_zero {
                return Err(FibrationError::SurfaceSingular(format!(
                    "gradient vanishes on the line at [{a}:{b}]"
                )));
            }
        }
        let certificate = full_smoothness_check(&quartic)?;
        Ok(QuarticSurfaceWithLine { quartic, line, certificate })
    }
}

enum ZeroSearch {
    NoZero,
    Zero(String),
    Unconfirmed(String),
}

/// Degree caps for the elimination cascade; exceeding them makes the
/// search give up rather than grind through huge Sylvester matrices.
#[derive(Clone, Copy)]
struct SearchLimits {
    max_total_degree: u32,
    max_var_degree: u32,
}

const Q_LIMITS: SearchLimits = SearchLimits { max_total_degree: 9, max_var_degree: 4 };
const GF_LIMITS: SearchLimits = SearchLimits { max_total_degree: 60, max_var_degree: 12 };

/// Primes tried by the mod-p certificate.
const CERT_PRIMES: [u64; 6] = [101, 103, 107, 109, 113, 127];

/// Full smoothness certificate: show that the four partials have no common
/// projective zero, chart by chart, by resultant elimination down to
/// univariate data; surviving candidates are verified over their factor
/// fields.
pub fn full_smoothness_check(
    quartic: &MPoly<RatField>,
) -> Result<SmoothnessCertificate, FibrationError> {
    let partials = quartic.gradient();
    for chart in 0..4 {
        let fixed_one = 3 - chart;
        let sys: Vec<MPoly<RatField>> = partials
            .iter()
            .map(|p| {
                let mut q = p.specialize(fixed_one, &Rat::from_int(1));
                for z in (fixed_one + 1)..4 {
                    q = q.specialize(z, &Rat::from_int(0));
                }
                q
            })
            .filter(|q| !q.is_zero())
            .collect();
        if sys.is_empty() {
            return Err(FibrationError::SurfaceSingular(format!(
                "all partials vanish identically on chart {chart}"
            )));
        }
        let free_vars: Vec<usize> = (0..fixed_one).collect();
        match search_common_zero(&RatField, &sys, &free_vars, Q_LIMITS)? {
            ZeroSearch::NoZero => continue,
            ZeroSearch::Zero(desc) => return Err(FibrationError::SurfaceSingular(desc)),
            ZeroSearch::Unconfirmed(_) => {
                // fall back to the mod-p argument: the singular locus of a
                // projective variety is proper, so an empty reduced
                // singular locus over the closure of F_p for one prime
                // certifies smoothness in characteristic zero
                return mod_p_certificate(quartic);
            }
        }
    }
    Ok(SmoothnessCertificate::Certified)
}

/// Try to certify smoothness by showing the reduced gradient system has
/// no solution over the algebraic closure of F_p for some prime p.
fn mod_p_certificate(
    quartic: &MPoly<RatField>,
) -> Result<SmoothnessCertificate, FibrationError> {
    'primes: for &p in &CERT_PRIMES {
        let gf = crate::exactalg::gf::GfField::new(p);
        // reduce the (primitive integer) quartic
        let ok = std::cell::Cell::new(true);
        let reduced = crate::exactalg::mpoly::map_coeffs(&gf, quartic, |c| {
            match gf.try_from_rat(c) {
                Some(v) => v,
                None => {
                    ok.set(false);
                    0
                }
            }
        });
        if !ok.get() || reduced.is_zero() {
            continue;
        }
        let partials = reduced.gradient();
        for chart in 0..4 {
            let fixed_one = 3 - chart;
            let sys: Vec<MPoly<crate::exactalg::gf::GfField>> = partials
                .iter()
                .map(|q| {
                    let mut r = q.specialize(fixed_one, &gf.one());
                    for z in (fixed_one + 1)..4 {
                        r = r.specialize(z, &gf.zero());
                    }
                    r
                })
                .filter(|q| !q.is_zero())
                .collect();
            if sys.is_empty() {
                continue 'primes;
            }
            let free_vars: Vec<usize> = (0..fixed_one).collect();
            match search_common_zero(&gf, &sys, &free_vars, GF_LIMITS)? {
                ZeroSearch::NoZero => continue,
                // a mod-p zero or an inconclusive cascade says nothing
                // about characteristic zero; try the next prime
                _ => continue 'primes,
            }
        }
        return Ok(SmoothnessCertificate::Certified);
    }
    Ok(SmoothnessCertificate::SampledOnly(
        "elimination inconclusive over Q and at every certificate prime".into(),
    ))
}

/// Decide whether a polynomial system over a field has a common affine
/// zero, by pairwise resultant elimination. Exact refusals and exact
/// witnesses where the cascade concludes; `Unconfirmed` otherwise.
fn search_common_zero<F: Field + 'static>(
    ring: &F,
    sys: &[MPoly<F>],
    free_vars: &[usize],
    limits: SearchLimits,
) -> Result<ZeroSearch, FibrationError> {
    let live: Vec<MPoly<F>> = sys.iter().filter(|p| !p.is_zero()).cloned().collect();
    if live.is_empty() {
        return Ok(ZeroSearch::Zero("system vanishes identically".into()));
    }
    if live.iter().any(|p| p.total_degree() == Some(0)) {
        return Ok(ZeroSearch::NoZero);
    }
    match free_vars.len() {
        0 => Ok(ZeroSearch::NoZero),
        1 => {
            let v = free_vars[0];
            let mut acc: Option<UPoly<F>> = None;
            for p in &live {
                let up = p.as_univariate(v).map_err(FibrationError::Algebra)?;
                acc = Some(match acc.take() {
                    None => up,
                    Some(a) => a.gcd(&up).map_err(FibrationError::Algebra)?,
                });
            }
            let g = acc.unwrap();
            Ok(if g.is_zero() || g.deg() > 0 {
                ZeroSearch::Zero("univariate system has a common root".into())
            } else {
                ZeroSearch::NoZero
            })
        }
        _ => {
            // eliminate the last variable and recurse
            let var = *free_vars.last().unwrap();
            let rest: Vec<usize> = free_vars[..free_vars.len() - 1].to_vec();
            let with_var: Vec<&MPoly<F>> = live
                .iter()
                .filter(|p| p.degree_in(var).unwrap_or(0) > 0)
                .collect();
            let mut next: Vec<MPoly<F>> = live
                .iter()
                .filter(|p| p.degree_in(var).unwrap_or(0) == 0)
                .cloned()
                .collect();
            if with_var.len() == 1 && next.is_empty() {
                return Ok(ZeroSearch::Unconfirmed(
                    "a lone polynomial carries the last variable".into(),
                ));
            }
            // keep the cascade at desk scale: give up rather than grind
            // through huge Sylvester matrices
            let too_big = with_var
                .iter()
                .any(|p| p.total_degree().unwrap_or(0) > limits.max_total_degree)
                || with_var
                    .iter()
                    .map(|p| p.degree_in(var).unwrap_or(0))
                    .max()
                    .unwrap_or(0)
                    > limits.max_var_degree;
            if too_big {
                return Ok(ZeroSearch::Unconfirmed(
                    "elimination degrees exceed the desk bound".into(),
                ));
            }
            for i in 0..with_var.len() {
                for j in (i + 1)..with_var.len() {
                    let r = resultant_wrt(with_var[i], with_var[j], var);
                    if !r.is_zero() {
                        next.push(r);
                    }
                }
            }
            if next.is_empty() {
                return Ok(ZeroSearch::Unconfirmed(
                    "all pairwise resultants vanished".into(),
                ));
            }
            match search_common_zero(ring, &next, &rest, limits)? {
                ZeroSearch::NoZero => Ok(ZeroSearch::NoZero),
                ZeroSearch::Unconfirmed(r) => Ok(ZeroSearch::Unconfirmed(r)),
                ZeroSearch::Zero(_) => {
                    // the eliminated locus is a candidate, not yet a
                    // point of the original system; confirm it
                    confirm_candidates(ring, &live, free_vars, limits)
                }
            }
        }
    }
}

/// Confirm or refute candidate zeros after elimination flagged a
/// nonempty locus: factor the final univariate eliminant (only possible
/// over Q) and check each root field honestly.
fn confirm_candidates<F: Field + 'static>(
    ring: &F,
    sys: &[MPoly<F>],
    free_vars: &[usize],
    limits: SearchLimits,
) -> Result<ZeroSearch, FibrationError> {
    // only implemented over Q, where factor_desk applies; over extension
    // fields report the locus unconfirmed
    let Some(sys_q) = as_rational_system(ring, sys) else {
        return Ok(ZeroSearch::Unconfirmed(
            "candidate locus over an extension field".into(),
        ));
    };
    let var = free_vars[0];
    // eliminate all but the first variable
    let mut polys = sys_q.clone();
    for &v in free_vars.iter().skip(1).rev() {
        let with_var: Vec<&MPoly<RatField>> = polys
            .iter()
            .filter(|p| p.degree_in(v).unwrap_or(0) > 0)
            .collect();
        let mut next: Vec<MPoly<RatField>> = polys
            .iter()
            .filter(|p| p.degree_in(v).unwrap_or(0) == 0)
            .cloned()
            .collect();
        for i in 0..with_var.len() {
            for j in (i + 1)..with_var.len() {
                let r = resultant_wrt(with_var[i], with_var[j], v);
                if !r.is_zero() {
                    next.push(r);
                }
            }
        }
        polys = next;
        if polys.is_empty() {
            return Ok(ZeroSearch::Unconfirmed("elimination degenerated".into()));
        }
    }
    let mut g: Option<UPoly<RatField>> = None;
    for p in &polys {
        let Ok(up) = p.as_univariate(var) else {
            return Ok(ZeroSearch::Unconfirmed("non-univariate residue".into()));
        };
        if up.is_zero() {
            continue;
        }
        g = Some(match g.take() {
            None => up,
            Some(a) => a.gcd(&up).map_err(FibrationError::Algebra)?,
        });
    }
    let Some(g) = g else {
        return Ok(ZeroSearch::Unconfirmed("empty univariate stage".into()));
    };
    if g.deg() == 0 {
        return Ok(ZeroSearch::NoZero);
    }
    let g = g.squarefree_part().map_err(FibrationError::Algebra)?;
    let Ok(fac) = factor_desk(&g) else {
        return Ok(ZeroSearch::Unconfirmed(
            "eliminant not factorable at desk scale".into(),
        ));
    };
    let others: Vec<usize> = free_vars[1..].to_vec();
    for (h, _) in fac.factors {
        let verdict = if h.deg() == 1 {
            let root = RatField
                .div(&RatField.neg(&h.coeff(0)), &h.coeff(1))
                .map_err(FibrationError::Algebra)?;
            let reduced: Vec<MPoly<RatField>> =
                sys_q.iter().map(|p| p.specialize(var, &root)).collect();
            search_common_zero(&RatField, &reduced, &others, limits)?
        } else {
            let k = ExtField::new(RatField, h.clone(), "x").map_err(FibrationError::Algebra)?;
            let root = k.gen();
            let reduced: Vec<MPoly<ExtField<RatField>>> = sys_q
                .iter()
                .map(|p| {
                    crate::exactalg::mpoly::map_coeffs(&k, p, |c| k.from_base(c.clone()))
                        .specialize(var, &root)
                })
                .collect();
            search_common_zero(&k, &reduced, &others, limits)?
        };
        match verdict {
            ZeroSearch::Zero(_) => {
                return Ok(ZeroSearch::Zero(format!(
                    "singular point over a root of {}",
                    h.fmt_with("x")
                )))
            }
            ZeroSearch::Unconfirmed(r) => return Ok(ZeroSearch::Unconfirmed(r)),
            ZeroSearch::NoZero => continue,
        }
    }
    Ok(ZeroSearch::NoZero)
}

/// The candidate-confirmation stage needs factor_desk, which exists over Q
/// only; detect that case by downcasting.
fn as_rational_system<F: Field + 'static>(
    _ring: &F,
    sys: &[MPoly<F>],
) -> Option<Vec<MPoly<RatField>>> {
    sys.iter()
        .map(|p| {
            (p as &dyn std::any::Any)
                .downcast_ref::<MPoly<RatField>>()
                .cloned()
        })
        .collect()
}

/// Whether the line lies on the quartic, by restricting to its span.
pub fn line_on_surface(quartic: &MPoly<RatField>, line: &LineInP3) -> bool {
    let uv = vars(&["u", "v"]);
    let u = MPoly::var(RatField, uv.clone(), 0);
    let v = MPoly::var(RatField, uv.clone(), 1);
    let images: Vec<MPoly<RatField>> = (0..4)
        .map(|i| {
            u.scale(&line.span[0].coords[i])
                .add(&v.scale(&line.span[1].coords[i]))
        })
        .collect();
    quartic.substitute(&images).map(|p| p.is_zero()).unwrap_or(false)
}

pub fn fermat_quartic() -> MPoly<RatField> {
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

pub fn fermat_line() -> LineInP3 {
    LineInP3::from_int_points(&[1, 1, 0, 0], &[0, 0, 1, 1]).expect("valid line")
}

pub fn fermat_surface() -> QuarticSurfaceWithLine {
    QuarticSurfaceWithLine::new(fermat_quartic(), fermat_line()).expect("fermat is smooth")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fermat_surface_is_certified_smooth() {
        let s = fermat_surface();
        assert_eq!(s.certificate, SmoothnessCertificate::Certified);
    }

    #[test]
    fn line_not_on_surface_is_rejected() {
        let q = fermat_quartic();
        let l = LineInP3::from_int_points(&[1, 0, 0, 0], &[0, 1, 0, 0]).unwrap();
        assert!(matches!(
            QuarticSurfaceWithLine::new(q, l),
            Err(FibrationError::Geom(GeomError::LineNotOnSurface))
        ));
    }

    #[test]
    fn singular_quartic_is_rejected() {
        // square of a quadric through the line: gradient vanishes along it
        let vl = vars(&["X", "Y", "Z", "W"]);
        let x = MPoly::var(RatField, vl.clone(), 0);
        let y = MPoly::var(RatField, vl.clone(), 1);
        let z = MPoly::var(RatField, vl.clone(), 2);
        let w = MPoly::var(RatField, vl.clone(), 3);
        let quad = x.mul(&z).sub(&y.mul(&w));
        let q = quad.mul(&quad);
        let l = fermat_line();
        assert!(line_on_surface(&q, &l));
        assert!(QuarticSurfaceWithLine::new(q, l).is_err());
    }

    #[test]
    fn non_quartic_rejected() {
        let vl = vars(&["X", "Y", "Z", "W"]);
        let x = MPoly::var(RatField, vl.clone(), 0);
        assert!(QuarticSurfaceWithLine::new(x.pow(3), fermat_line()).is_err());
    }
}

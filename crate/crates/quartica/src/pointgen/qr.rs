//! The torsion precheck and the two point sequences it licenses.
//!
//! For a rational point p of the line, smooth on its fiber C_p, the class
//! of 3p minus a line section either is torsion (the obstruction) or
//! generates unbounded sequences q_n, r_n of rational points defined by
//!
//!   q_n + (3n-1) p  ~  O(n),      -r_n + (3n+1) p  ~  O(n),
//!
//! all lying on the surface exactly.

use num_bigint::BigInt;

use crate::error::PointGenError;
use crate::exactalg::rat::{Rat, RatField};
use crate::exactalg::ring::Ring;
use crate::cubiclaw::invariants::aronhold_invariants;
use crate::cubiclaw::law::{CubicGroup, DivisorClass};
use crate::fibration::pencil::fiber_at_line_point;
use crate::fibration::surface::QuarticSurfaceWithLine;
use crate::pointgen::height::naive_height_exact;
use crate::projgeom::plane::{pencil_plane_ts, P1};
use crate::projgeom::point::{IntPoint, ProjPoint};

/// Torsion orders of elliptic curves over Q are bounded by 12, which
/// makes 12 the sensible default search bound over the rationals; the
/// bound is configurable because no effective bound is available over a
/// general number field.
pub const DEFAULT_TORSION_BOUND: u32 = 12;

#[derive(Clone, Debug, PartialEq)]
pub enum TorsionVerdict {
    Torsion { order: u32 },
    FreeAtBound { bound: u32 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GeneratedKind {
    Q,
    R,
    X,
}

impl GeneratedKind {
    pub fn tag(&self) -> &'static str {
        match self {
            GeneratedKind::Q => "q",
            GeneratedKind::R => "r",
            GeneratedKind::X => "x",
        }
    }
}

#[derive(Clone, Debug)]
pub struct GeneratedPoint {
    pub kind: GeneratedKind,
    pub index: u32,
    pub fiber_param: P1,
    /// the point on the surface, in primitive integer coordinates
    pub ambient: IntPoint,
    /// the same point in the coordinates of its plane
    pub in_plane: ProjPoint<RatField>,
    pub max_abs_coord: BigInt,
    pub height_log: f64,
}

/// The fiber data behind a precheck or a generation run.
pub struct FiberContext {
    pub param: P1,
    pub group: CubicGroup<RatField>,
    pub base_point: ProjPoint<RatField>,
}

pub fn fiber_context(
    surface: &QuarticSurfaceWithLine,
    p: &ProjPoint<RatField>,
) -> Result<FiberContext, PointGenError> {
    let fp = fiber_at_line_point(surface, p)?;
    let cubic = fp.residual.cubic;
    // distinguish "singular at the base point" from a singular fiber
    let grad = cubic.gradient_at(&fp.point_in_plane.coords);
    if grad.iter().all(|g| RatField.is_zero(g)) {
        return Err(PointGenError::Fibration(
            crate::error::FibrationError::FiberSingularAtBasePoint,
        ));
    }
    let inv = aronhold_invariants(&cubic);
    if RatField.is_zero(&inv.disc) {
        return Err(PointGenError::Precondition(
            "the fiber is singular away from the base point".into(),
        ));
    }
    let group = CubicGroup::new(cubic, fp.point_in_plane.clone()).map_err(PointGenError::Geom)?;
    Ok(FiberContext { param: fp.param, group, base_point: fp.point_in_plane })
}

/// Order of the class of (3 p - line section) on the fiber through p, up
/// to the bound.
pub fn torsion_precheck(
    surface: &QuarticSurfaceWithLine,
    p: &ProjPoint<RatField>,
    bound: u32,
) -> Result<TorsionVerdict, PointGenError> {
    if bound < 1 {
        return Err(PointGenError::Precondition("bound must be >= 1".into()));
    }
    let ctx = fiber_context(surface, p)?;
    // the class 3p - H reduces to the inverse of the tangent third point,
    // whose order equals the order of the tangent third point itself
    let t0 = ctx.group.tangent_third().clone();
    match ctx.group.torsion_order(&t0, bound).map_err(PointGenError::Geom)? {
        Some(order) => Ok(TorsionVerdict::Torsion { order }),
        None => Ok(TorsionVerdict::FreeAtBound { bound }),
    }
}

fn to_ambient(
    surface: &QuarticSurfaceWithLine,
    param: &P1,
    plane_pt: &ProjPoint<RatField>,
) -> Result<IntPoint, PointGenError> {
    let (t, s) = param.ts();
    let plane = pencil_plane_ts(&RatField, &surface.line, &t, &s);
    let amb = plane.map_point(&plane_pt.coords[0], &plane_pt.coords[1], &plane_pt.coords[2]);
    let proj = ProjPoint::new(RatField, amb).map_err(PointGenError::Geom)?;
    let int_point = proj.to_int_point();
    // the on-surface postcondition, checked exactly, always
    let val = surface.quartic.eval(&int_point.to_rationals());
    if !RatField.is_zero(&val) {
        return Err(PointGenError::Precondition(
            "generated point does not satisfy the surface equation".into(),
        ));
    }
    Ok(int_point)
}

/// Generate q_1, r_1, ..., q_n, r_n on the fiber through p. Refuses to run
/// when the precheck reports torsion; a collision mid-run would contradict
/// the precheck and is reported as a hard error.
pub fn qr_sequence(
    surface: &QuarticSurfaceWithLine,
    p: &ProjPoint<RatField>,
    n_max: u32,
    bound: u32,
) -> Result<Vec<GeneratedPoint>, PointGenError> {
    match torsion_precheck(surface, p, bound)? {
        TorsionVerdict::Torsion { order } => {
            return Err(PointGenError::TorsionObstruction { order })
        }
        TorsionVerdict::FreeAtBound { .. } => {}
    }
    let ctx = fiber_context(surface, p)?;
    let tau = ctx.group.tangent_third().clone();
    let mut out = Vec::with_capacity(2 * n_max as usize);
    let mut seen: Vec<ProjPoint<RatField>> = vec![ctx.base_point.clone()];
    let mut q = tau.clone();
    for n in 1..=n_max {
        // q_n = n * tau, r_n = -(n * tau) in the group based at p
        let r = ctx.group.neg(&q).map_err(PointGenError::Geom)?;
        for (kind, pt) in [(GeneratedKind::Q, q.clone()), (GeneratedKind::R, r)] {
            if seen.contains(&pt) {
                return Err(PointGenError::TorsionMidRun { index: n });
            }
            seen.push(pt.clone());
            let ambient = to_ambient(surface, &ctx.param, &pt)?;
            let (max_abs, height_log) = naive_height_exact(&ambient);
            out.push(GeneratedPoint {
                kind,
                index: n,
                fiber_param: ctx.param.clone(),
                ambient,
                in_plane: pt,
                max_abs_coord: max_abs,
                height_log,
            });
        }
        if n < n_max {
            q = ctx.group.add(&q, &tau).map_err(PointGenError::Geom)?;
        }
    }
    Ok(out)
}

/// Re-verify the defining divisor relations of a generated run by
/// independent divisor-class reduction (optionally against a different
/// reference line).
pub fn verify_qr_relations(
    surface: &QuarticSurfaceWithLine,
    p: &ProjPoint<RatField>,
    points: &[GeneratedPoint],
) -> Result<bool, PointGenError> {
    let ctx = fiber_context(surface, p)?;
    for gp in points {
        let n = gp.index as i64;
        let class = match gp.kind {
            GeneratedKind::Q => DivisorClass {
                // q_n + (3n - 1) p - n H ~ 0
                summands: vec![(gp.in_plane.clone(), 1), (ctx.base_point.clone(), 3 * n - 1)],
                hyperplane_multiple: n,
            },
            GeneratedKind::R => DivisorClass {
                // -r_n + (3n + 1) p - n H ~ 0
                summands: vec![(gp.in_plane.clone(), -1), (ctx.base_point.clone(), 3 * n + 1)],
                hyperplane_multiple: n,
            },
            GeneratedKind::X => {
                return Err(PointGenError::Precondition(
                    "x-sequence points are verified by their own generator".into(),
                ))
            }
        };
        let reduced = ctx.group.reduce_class(&class).map_err(PointGenError::Geom)?;
        if reduced != ctx.base_point {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Scan small rational points of the line for one with a free precheck;
/// used by fixtures and the command-line generator.
pub fn find_free_point(
    surface: &QuarticSurfaceWithLine,
    bound: u32,
    search_limit: i64,
) -> Option<(ProjPoint<RatField>, TorsionVerdict)> {
    let mut candidates: Vec<(i64, i64)> = vec![(1, 0), (0, 1)];
    for a in 1..=search_limit {
        for b in -search_limit..=search_limit {
            candidates.push((b, a));
        }
    }
    for (u, v) in candidates {
        let coords = surface
            .line
            .point_at(&RatField, &Rat::from_int(u), &Rat::from_int(v));
        let Ok(p) = ProjPoint::new(RatField, coords) else { continue };
        match torsion_precheck(surface, &p, bound) {
            Ok(v @ TorsionVerdict::FreeAtBound { .. }) => return Some((p, v)),
            _ => continue,
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fibration::surface::fermat_surface;

    #[test]
    fn fermat_precheck_always_reports_order_two() {
        let s = fermat_surface();
        // several rational points of the line, avoiding branch parameters
        for (u, v) in [(2i64, 1i64), (3, 1), (1, -3), (5, 2)] {
            let coords = s
                .line
                .point_at(&RatField, &Rat::from_int(u), &Rat::from_int(v));
            let p = ProjPoint::new(RatField, coords).unwrap();
            let verdict = torsion_precheck(&s, &p, DEFAULT_TORSION_BOUND).unwrap();
            assert_eq!(verdict, TorsionVerdict::Torsion { order: 2 }, "at [{u}:{v}]");
        }
    }

    #[test]
    fn fermat_generator_refuses_to_run() {
        let s = fermat_surface();
        let coords = s
            .line
            .point_at(&RatField, &Rat::from_int(2), &Rat::from_int(1));
        let p = ProjPoint::new(RatField, coords).unwrap();
        assert!(matches!(
            qr_sequence(&s, &p, 3, DEFAULT_TORSION_BOUND),
            Err(PointGenError::TorsionObstruction { order: 2 })
        ));
    }

    #[test]
    fn q1_is_the_tangent_third_intersection() {
        let s = fermat_surface();
        let coords = s
            .line
            .point_at(&RatField, &Rat::from_int(2), &Rat::from_int(1));
        let p = ProjPoint::new(RatField, coords).unwrap();
        let ctx = fiber_context(&s, &p).unwrap();
        // q_1 ~ H - 2p, so reducing H - 3p against the origin p must give
        // the third intersection of the tangent line at p
        let d = DivisorClass {
            summands: vec![(ctx.base_point.clone(), -3)],
            hyperplane_multiple: -1,
        };
        let reduced = ctx.group.reduce_class(&d).unwrap();
        assert_eq!(&reduced, ctx.group.tangent_third());
    }
}

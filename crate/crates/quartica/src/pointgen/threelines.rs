//! The three-lines configuration and its point sequence: given skew lines
//! L, L' with L'' meeting L' but not L, the fibers of the pencil through L
//! carry the points q_H on L' and r_H on L'', and x_n is defined by
//! x_n + n q_H ~ (n+1) r_H.

use crate::error::{FibrationError, PointGenError};
use crate::exactalg::rat::RatField;
use crate::exactalg::ring::Ring;
use crate::cubiclaw::invariants::aronhold_invariants;
use crate::cubiclaw::law::CubicGroup;
use crate::fibration::pencil::residual_cubic_at;
use crate::fibration::surface::{line_on_surface, QuarticSurfaceWithLine};
use crate::pointgen::height::naive_height_exact;
use crate::pointgen::qr::{GeneratedKind, GeneratedPoint};
use crate::projgeom::line::LineInP3;
use crate::projgeom::plane::{pencil_plane_ts, P1, PlaneParam};
use crate::projgeom::point::ProjPoint;

/// Three lines on the surface with the incidences required by the
/// x-sequence: the base line is skew to both others, which meet.
#[derive(Clone, Debug)]
pub struct ThreeLineConfig {
    pub surface: QuarticSurfaceWithLine,
    pub line_q: LineInP3,
    pub line_r: LineInP3,
}

impl ThreeLineConfig {
    pub fn new(
        surface: QuarticSurfaceWithLine,
        line_q: LineInP3,
        line_r: LineInP3,
    ) -> Result<Self, PointGenError> {
        for (name, l) in [("q-line", &line_q), ("r-line", &line_r)] {
            if !line_on_surface(&surface.quartic, l) {
                return Err(PointGenError::Precondition(format!(
                    "{name} does not lie on the surface"
                )));
            }
        }
        if surface.line.meets(&line_q) {
            return Err(PointGenError::Precondition(
                "base line must not meet the q-line".into(),
            ));
        }
        if surface.line.meets(&line_r) {
            return Err(PointGenError::Precondition(
                "base line must not meet the r-line".into(),
            ));
        }
        if !line_q.meets(&line_r) {
            return Err(PointGenError::Precondition(
                "the q-line and the r-line must meet".into(),
            ));
        }
        Ok(ThreeLineConfig { surface, line_q, line_r })
    }

    /// The intersection of an auxiliary line with the pencil plane at t,
    /// in the plane coordinates.
    fn line_plane_point(
        &self,
        plane: &PlaneParam<RatField>,
        line: &LineInP3,
    ) -> Result<ProjPoint<RatField>, PointGenError> {
        let dual = plane.dual_vector();
        let dot = |pt: &[crate::exactalg::rat::Rat]| {
            pt.iter()
                .zip(&dual)
                .fold(RatField.zero(), |acc, (a, b)| RatField.add(&acc, &RatField.mul(a, b)))
        };
        let a = dot(&line.span[0].coords);
        let b = dot(&line.span[1].coords);
        if RatField.is_zero(&a) && RatField.is_zero(&b) {
            return Err(PointGenError::Precondition(
                "auxiliary line lies inside the pencil plane".into(),
            ));
        }
        // the point u p1 + v p2 with a u + b v = 0
        let (u, v) = (RatField.neg(&b), a);
        let amb = line.point_at(&RatField, &u, &v);
        let coords = plane.in_plane_coords(&amb).ok_or_else(|| {
            PointGenError::Precondition("auxiliary point missed the plane".into())
        })?;
        ProjPoint::new(RatField, coords.to_vec()).map_err(|e| PointGenError::Geom(e))
    }
}

/// Generate x_0, ..., x_n on the fiber at parameter t. The fiber is
/// skipped when q_H - r_H is torsion at the bound.
pub fn three_lines_sequence(
    cfg: &ThreeLineConfig,
    t: &P1,
    n_max: u32,
    bound: u32,
) -> Result<Vec<GeneratedPoint>, PointGenError> {
    let rc = residual_cubic_at(&cfg.surface, t)?;
    let cubic = rc.cubic;
    let inv = aronhold_invariants(&cubic);
    if RatField.is_zero(&inv.disc) {
        return Err(PointGenError::Fibration(FibrationError::Precondition(
            "fiber at the requested parameter is singular".into(),
        )));
    }
    let (tt, ss) = t.ts();
    let plane = pencil_plane_ts(&RatField, &cfg.surface.line, &tt, &ss);
    let q_h = cfg.line_plane_point(&plane, &cfg.line_q)?;
    let r_h = cfg.line_plane_point(&plane, &cfg.line_r)?;
    for (name, pt) in [("q_H", &q_h), ("r_H", &r_h)] {
        if !cubic.is_smooth_at(pt) {
            return Err(PointGenError::Precondition(format!(
                "{name} is not reported a smooth point of the fiber"
            )));
        }
    }
    let group = CubicGroup::new(cubic, r_h.clone()).map_err(PointGenError::Geom)?;
    if let Some(order) = group
        .torsion_order(&q_h, bound)
        .map_err(PointGenError::Geom)?
    {
        return Err(PointGenError::FiberSkipped { order });
    }
    // x_n = -(n * q_H) in the group based at r_H; x_0 = r_H
    let mut out = Vec::with_capacity(n_max as usize + 1);
    let mut seen: Vec<ProjPoint<RatField>> = Vec::new();
    let mut acc = group.origin.clone(); // n * q_H accumulator starts at 0
    for n in 0..=n_max {
        let x = group.neg(&acc).map_err(PointGenError::Geom)?;
        if seen.contains(&x) {
            return Err(PointGenError::TorsionMidRun { index: n });
        }
        seen.push(x.clone());
        let amb = plane.map_point(&x.coords[0], &x.coords[1], &x.coords[2]);
        let proj = ProjPoint::new(RatField, amb).map_err(PointGenError::Geom)?;
        let int_point = proj.to_int_point();
        let val = cfg.surface.quartic.eval(&int_point.to_rationals());
        if !RatField.is_zero(&val) {
            return Err(PointGenError::Precondition(
                "generated point does not satisfy the surface equation".into(),
            ));
        }
        let (max_abs, height_log) = naive_height_exact(&int_point);
        out.push(GeneratedPoint {
            kind: GeneratedKind::X,
            index: n,
            fiber_param: t.clone(),
            ambient: int_point,
            in_plane: x,
            max_abs_coord: max_abs,
            height_log,
        });
        if n < n_max {
            acc = group.add(&acc, &q_h).map_err(PointGenError::Geom)?;
        }
    }
    Ok(out)
}

/// Re-verify the defining relations x_n + n q_H ~ (n+1) r_H through
/// independent class reduction.
pub fn verify_x_relations(
    cfg: &ThreeLineConfig,
    t: &P1,
    points: &[GeneratedPoint],
) -> Result<bool, PointGenError> {
    let rc = residual_cubic_at(&cfg.surface, t)?;
    let (tt, ss) = t.ts();
    let plane = pencil_plane_ts(&RatField, &cfg.surface.line, &tt, &ss);
    let q_h = cfg.line_plane_point(&plane, &cfg.line_q)?;
    let r_h = cfg.line_plane_point(&plane, &cfg.line_r)?;
    let group = CubicGroup::new(rc.cubic, r_h.clone()).map_err(PointGenError::Geom)?;
    for gp in points {
        let n = gp.index as i64;
        let class = crate::cubiclaw::law::DivisorClass {
            summands: vec![
                (gp.in_plane.clone(), 1),
                (q_h.clone(), n),
                (r_h.clone(), -(n + 1)),
            ],
            hyperplane_multiple: 0,
        };
        let reduced = group.reduce_class(&class).map_err(PointGenError::Geom)?;
        if reduced != r_h {
            return Ok(false);
        }
    }
    Ok(true)
}

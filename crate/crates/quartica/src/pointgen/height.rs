//! Naive logarithmic heights of rational projective points, and the
//! height-ratio table for sections of the fibration.
//!
//! Heights compare exactly through the underlying integers; the logarithm
//! is attached only for display. This is the one place a float appears in
//! the crate.

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::error::PointGenError;
use crate::exactalg::rat::{Rat, RatField};
use crate::fibration::surface::QuarticSurfaceWithLine;
use crate::pointgen::qr::fiber_context;
use crate::projgeom::point::{IntPoint, ProjPoint};

/// log of the maximum absolute coordinate of a primitive integer point.
pub fn naive_height(p: &IntPoint) -> f64 {
    naive_height_exact(p).1
}

/// The exact maximum together with its logarithm.
pub fn naive_height_exact(p: &IntPoint) -> (BigInt, f64) {
    let m = p.max_abs_coord();
    let log = m.to_f64().map(|x| x.ln()).unwrap_or(f64::INFINITY);
    (m.clone(), log.max(0.0))
}

#[derive(Clone, Debug)]
pub struct RatioRow {
    pub base: (BigInt, BigInt),
    pub h_base: f64,
    pub h_section: Option<f64>,
    pub ratio: Option<f64>,
    pub note: Option<String>,
}

/// For each rational point [u : v] of the line, evaluate the section
/// q_1 (the tangent third intersection on the fiber through the point)
/// and tabulate the height ratio h(q_1) / h([u : v]).
///
/// The section height is taken in the coordinates of the fiber's own
/// plane (the restriction of the plane polarization), which is the height
/// whose ratio against the base height stabilizes; a torsion section has
/// bounded plane heights and its ratios sink to zero. Fibers on which the
/// section is undefined are skipped with a note.
pub fn height_ratio_experiment(
    surface: &QuarticSurfaceWithLine,
    base_points: &[(i64, i64)],
) -> Result<Vec<RatioRow>, PointGenError> {
    let mut rows = Vec::new();
    for &(u, v) in base_points {
        let base_int = IntPoint::from_rationals(&[Rat::from_int(u), Rat::from_int(v)]);
        let h_base = naive_height(&base_int);
        let coords = surface
            .line
            .point_at(&RatField, &Rat::from_int(u), &Rat::from_int(v));
        let p = match ProjPoint::new(RatField, coords) {
            Ok(p) => p,
            Err(_) => continue,
        };
        match fiber_context(surface, &p) {
            Ok(ctx) => {
                let t0 = ctx.group.tangent_third().clone();
                let in_plane = IntPoint::from_rationals(&t0.coords);
                let h = naive_height(&in_plane);
                let ratio = if h_base > 0.0 { Some(h / h_base) } else { None };
                rows.push(RatioRow {
                    base: (BigInt::from(u), BigInt::from(v)),
                    h_base,
                    h_section: Some(h),
                    ratio,
                    note: None,
                });
            }
            Err(e) => rows.push(RatioRow {
                base: (BigInt::from(u), BigInt::from(v)),
                h_base,
                h_section: None,
                ratio: None,
                note: Some(format!("fiber skipped: {e}")),
            }),
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn height_of_standard_points() {
        let p = IntPoint::from_rationals(&[
            Rat::from_int(1),
            Rat::from_int(0),
            Rat::from_int(0),
            Rat::from_int(0),
        ]);
        assert_eq!(naive_height(&p), 0.0);
        let p = IntPoint::from_rationals(&[
            Rat::from_int(3),
            Rat::from_int(-5),
            Rat::from_int(2),
            Rat::from_int(1),
        ]);
        assert_eq!(naive_height(&p), 5f64.ln());
        assert_eq!(naive_height_exact(&p).0, BigInt::from(5));
    }

    #[test]
    fn fermat_two_torsion_section_has_vanishing_ratio() {
        // on the Fermat surface the tangent-third section is the constant
        // in-plane point [0,0,1]: its fiber heights are zero and every
        // ratio vanishes
        let s = crate::fibration::surface::fermat_surface();
        let params: Vec<(i64, i64)> = vec![(2, 1), (3, 1), (5, 1), (7, 1), (11, 1), (23, 1)];
        let rows = height_ratio_experiment(&s, &params).unwrap();
        let ratios: Vec<f64> = rows.iter().filter_map(|r| r.ratio).collect();
        assert!(ratios.len() >= 5);
        assert!(ratios.iter().all(|r| *r == 0.0));
        let max_h = rows
            .iter()
            .filter_map(|r| r.h_section)
            .fold(0.0f64, f64::max);
        assert_eq!(max_h, 0.0);
    }
}

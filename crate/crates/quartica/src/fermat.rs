//! Canned verifications on the Fermat quartic, the one known surface whose
//! trisection points all differ by 2-torsion.
//!
//! The symbolic check runs in the degree-6 extension `Q(a)[h]/(h^6 + 27a^2)`,
//! which contains a cube root b = h^4 / (9a) of a together with a
//! primitive cube root of unity w = -1/2 - h^3/(6a); two of the three
//! trisection points [1, -b, 0], [1, -wb, 0] then live in one field and
//! the tangent criterion can be evaluated exactly.

use crate::error::FibrationError;
use crate::exactalg::ext::ExtField;
use crate::exactalg::rat::{Rat, RatField};
use crate::exactalg::ratfunc::RatFuncField;
use crate::exactalg::ring::{Field, Ring};
use crate::exactalg::upoly::UPoly;
use crate::cubiclaw::cubic::TernaryCubic;
use crate::cubiclaw::law::{two_torsion_tangent, CubicGroup};
use crate::fibration::pencil::residual_cubic_symbolic;
use crate::fibration::surface::fermat_surface;
use crate::projgeom::point::ProjPoint;

#[derive(Clone, Debug)]
pub struct TwoTorsionSymbolic {
    /// the tangents at the two trisection points meet on the curve
    pub verdict: bool,
    /// the intersection point of the two tangent lines (it is [0, 0, 1])
    pub intersection: Vec<String>,
    /// the intersection lies on the symbolic fiber
    pub on_curve: bool,
}

/// Verify, symbolically over Q(a), that two distinct trisection points of
/// the Fermat fibration differ by 2-torsion via the tangent criterion.
pub fn fermat_two_torsion_symbolic() -> Result<TwoTorsionSymbolic, FibrationError> {
    let surface = fermat_surface();
    let rc = residual_cubic_symbolic(&surface, false)?;

    // the field F = Q(a)[h]/(h^6 + 27 a^2)
    let qa = RatFuncField;
    let a = qa.gen();
    let mut modulus_coeffs = vec![qa.zero(); 7];
    modulus_coeffs[0] = qa.mul(&qa.from_i64(27), &qa.mul(&a, &a));
    modulus_coeffs[6] = qa.one();
    let modulus = UPoly::new(qa, modulus_coeffs);
    let f6 = ExtField::new(qa, modulus, "h").map_err(FibrationError::Algebra)?;

    let h = f6.gen();
    let h3 = f6.mul(&f6.mul(&h, &h), &h);
    let h4 = f6.mul(&h3, &h);
    let inv = |x: &Vec<crate::exactalg::ratfunc::RatFuncElem>| {
        f6.inv(x).map_err(FibrationError::Algebra)
    };
    // b = h^4 / (9a), a cube root of a
    let nine_a = f6.from_base(qa.mul(&qa.from_i64(9), &a));
    let b1 = f6.mul(&h4, &inv(&nine_a)?);
    let b1_cubed = f6.mul(&f6.mul(&b1, &b1), &b1);
    debug_assert_eq!(b1_cubed, f6.from_base(a.clone()));
    // w = -1/2 - h^3/(6a), a primitive cube root of unity
    let six_a = f6.from_base(qa.mul(&qa.from_i64(6), &a));
    let w = f6.sub(
        &f6.from_rat(&Rat::new(-1, 2)),
        &f6.mul(&h3, &inv(&six_a)?),
    );
    let w_sq = f6.mul(&w, &w);
    let unity_check = f6.add(&f6.add(&w_sq, &w), &f6.one());
    debug_assert!(f6.is_zero(&unity_check));
    let b2 = f6.mul(&w, &b1);

    // the symbolic fiber over F and the two trisection points
    let cubic: TernaryCubic<ExtField<RatFuncField>> =
        rc.cubic.map(&f6, |c| f6.from_base(c.clone()));
    let p1 = ProjPoint::new(f6.clone(), vec![f6.one(), f6.neg(&b1), f6.zero()])
        .map_err(FibrationError::Geom)?;
    let p2 = ProjPoint::new(f6.clone(), vec![f6.one(), f6.neg(&b2), f6.zero()])
        .map_err(FibrationError::Geom)?;
    debug_assert!(cubic.contains(&p1) && cubic.contains(&p2));

    let (verdict, meet) = two_torsion_tangent(&cubic, &p1, &p2).map_err(FibrationError::Geom)?;
    let on_curve = cubic.contains(&meet);
    Ok(TwoTorsionSymbolic {
        verdict,
        intersection: meet.coords.iter().map(|c| f6.fmt_elem(c)).collect(),
        on_curve,
    })
}

/// Cross-check the tangent criterion against the group law at rational
/// specializations a = c^3: the trisection points [1, -c, 0] and
/// [1, -cw, 0] live over Q(w) and their difference has order exactly 2.
pub fn fermat_two_torsion_specializations(cubes: &[i64]) -> Result<Vec<u32>, FibrationError> {
    let surface = fermat_surface();
    let rc = residual_cubic_symbolic(&surface, false)?;
    let qw = ExtField::new(
        RatField,
        UPoly::from_coeff_slice(RatField, &[1, 1, 1]),
        "w",
    )
    .map_err(FibrationError::Algebra)?;
    let w = qw.gen();
    let mut orders = Vec::new();
    for &c in cubes {
        let a = Rat::from_int(c * c * c);
        // specialize the symbolic fiber at a = c^3 and lift to Q(w)
        let cubic_q = rc.cubic.map(&RatField, |co| {
            RatFuncField.eval_at(co, &a).expect("polynomial coefficient")
        });
        let cubic = cubic_q.map(&qw, |co| qw.from_base(co.clone()));
        let p1 = ProjPoint::new(
            qw.clone(),
            vec![qw.one(), qw.from_i64(-c), qw.zero()],
        )
        .map_err(FibrationError::Geom)?;
        let p2_coord = qw.mul(&w, &qw.from_i64(-c));
        let p2 = ProjPoint::new(qw.clone(), vec![qw.one(), p2_coord, qw.zero()])
            .map_err(FibrationError::Geom)?;
        // tangent criterion
        let (verdict, meet) = two_torsion_tangent(&cubic, &p1, &p2).map_err(FibrationError::Geom)?;
        if !verdict || !cubic.contains(&meet) {
            return Err(FibrationError::TaxonomyViolation(
                "tangent criterion failed at a rational specialization".into(),
            ));
        }
        // group-law order of p2 - p1
        let group = CubicGroup::new(cubic, p1).map_err(FibrationError::Geom)?;
        let order = group
            .torsion_order(&p2, 12)
            .map_err(FibrationError::Geom)?
            .ok_or_else(|| {
                FibrationError::TaxonomyViolation("difference not torsion at bound 12".into())
            })?;
        orders.push(order);
    }
    Ok(orders)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symbolic_two_torsion_holds_with_intersection_at_origin_of_t() {
        let r = fermat_two_torsion_symbolic().unwrap();
        assert!(r.verdict);
        assert!(r.on_curve);
        assert_eq!(r.intersection, vec!["0", "0", "1"]);
    }

    #[test]
    fn specializations_have_order_exactly_two() {
        let orders = fermat_two_torsion_specializations(&[2, 3, 5]).unwrap();
        assert_eq!(orders, vec![2, 2, 2]);
    }
}

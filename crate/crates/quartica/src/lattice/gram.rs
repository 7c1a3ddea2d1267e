//! Gram matrices of divisor classes on the base-changed surface, encoded
//! with their symbolic parameters, plus the push-pull identities that fill
//! their entries.
//!
//! The intersection numbers are never computed from the geometry of the
//! (possibly singular) covering surface; the tables carry one symbolic
//! parameter constrained by the positivity of the section-curve
//! intersection, and determinants are expanded symbolically.

use crate::error::AlgebraError;
use crate::exactalg::mpoly::{vars, MPoly, VarList};
use crate::exactalg::rat::{Rat, RatField};
use crate::exactalg::ring::Ring;

/// A small symmetric matrix of exact intersection numbers, possibly with
/// symbolic entries (polynomials over Q in the declared parameters).
#[derive(Clone, Debug)]
pub struct GramMatrix {
    pub labels: Vec<String>,
    pub params: VarList,
    pub entries: Vec<Vec<MPoly<RatField>>>,
    pub determinant: MPoly<RatField>,
    pub verdict: GramVerdict,
    pub constraint_flags: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GramVerdict {
    Independent,
    Degenerate,
    /// symbolic determinant: independence holds wherever it is nonzero
    Symbolic,
}

fn det3(m: &[Vec<MPoly<RatField>>]) -> MPoly<RatField> {
    let t1 = m[0][0].mul(&m[1][1].mul(&m[2][2]).sub(&m[1][2].mul(&m[2][1])));
    let t2 = m[0][1].mul(&m[1][0].mul(&m[2][2]).sub(&m[1][2].mul(&m[2][0])));
    let t3 = m[0][2].mul(&m[1][0].mul(&m[2][1]).sub(&m[1][1].mul(&m[2][0])));
    t1.sub(&t2).add(&t3)
}

/// The quartic-surface table for the classes (gamma, phi, sigma):
///
///   [ 12  3  1 ]
///   [  3  0  1 ]
///   [  1  1  s ]      s = sigma^2
///
/// with determinant -6 - 9s. The self-intersection s is only constrained:
/// s < -2 whenever the section meets the complementary trisection curve,
/// which it always does; a value violating that is flagged.
pub fn quartic_gram(sigma_sq: Option<&Rat>) -> GramMatrix {
    let params = vars(&["s"]);
    let c = |n: i64| MPoly::constant(RatField, params.clone(), Rat::from_int(n));
    let s_entry = match sigma_sq {
        Some(v) => MPoly::constant(RatField, params.clone(), v.clone()),
        None => MPoly::var(RatField, params.clone(), 0),
    };
    let entries = vec![
        vec![c(12), c(3), c(1)],
        vec![c(3), c(0), c(1)],
        vec![c(1), c(1), s_entry],
    ];
    let determinant = det3(&entries);
    let mut constraint_flags = Vec::new();
    let verdict = match sigma_sq {
        Some(v) => {
            // det = -6 - 9 s
            if *v >= Rat::from_int(-2) {
                constraint_flags
                    .push("sigma^2 >= -2 violates the section-meets-trisection constraint".into());
            }
            if RatField.is_zero(&determinant.eval(&[v.clone()])) {
                GramVerdict::Degenerate
            } else {
                GramVerdict::Independent
            }
        }
        None => GramVerdict::Symbolic,
    };
    GramMatrix {
        labels: vec!["gamma".into(), "phi".into(), "sigma".into()],
        params,
        entries,
        determinant,
        verdict,
        constraint_flags,
    }
}

/// The general elliptic-surface table for the classes (phi, sigma, rho)
/// under a degree-m base change along a curve of self-intersection -b:
///
///   [  0     1       m-1      ]
///   [  1   -b-c       c       ]
///   [ m-1    c    -(m-1)b - c ]
///
/// Its determinant expands to
/// c(m-1) + (m-1)b + c + c(m-1) + (b+c)(m-1)^2, positive for b >= 0,
/// c > 0.
pub fn general_gram(
    m: u32,
    b: Option<&Rat>,
    c: Option<&Rat>,
) -> Result<GramMatrix, AlgebraError> {
    if m < 2 {
        return Err(AlgebraError::Precondition(
            "the covering degree m must be at least 2".into(),
        ));
    }
    let params = vars(&["b", "c"]);
    let k = |n: i64| MPoly::constant(RatField, params.clone(), Rat::from_int(n));
    let bp = match b {
        Some(v) => MPoly::constant(RatField, params.clone(), v.clone()),
        None => MPoly::var(RatField, params.clone(), 0),
    };
    let cp = match c {
        Some(v) => MPoly::constant(RatField, params.clone(), v.clone()),
        None => MPoly::var(RatField, params.clone(), 1),
    };
    let m1 = (m - 1) as i64;
    let entries = vec![
        vec![k(0), k(1), k(m1)],
        vec![k(1), bp.add(&cp).neg(), cp.clone()],
        vec![k(m1), cp.clone(), bp.scale(&Rat::from_int(m1)).add(&cp).neg()],
    ];
    let determinant = det3(&entries);
    let mut constraint_flags = Vec::new();
    let verdict = match (b, c) {
        (Some(bv), Some(cv)) => {
            if bv.is_negative() {
                constraint_flags.push("b must be nonnegative".into());
            }
            if !cv.is_negative() && !RatField.is_zero(cv) {
                // fine: c > 0
            } else {
                constraint_flags.push("c must be positive".into());
            }
            let val = determinant.eval(&[bv.clone(), cv.clone()]);
            if RatField.is_zero(&val) {
                GramVerdict::Degenerate
            } else {
                GramVerdict::Independent
            }
        }
        _ => GramVerdict::Symbolic,
    };
    Ok(GramMatrix {
        labels: vec!["phi".into(), "sigma".into(), "rho".into()],
        params,
        entries,
        determinant,
        verdict,
        constraint_flags,
    })
}

/// The five-term expansion of the general determinant, built term by term
/// for comparison with the matrix expansion.
pub fn general_det_expected(m: u32) -> MPoly<RatField> {
    let params = vars(&["b", "c"]);
    let b = MPoly::var(RatField, params.clone(), 0);
    let c = MPoly::var(RatField, params.clone(), 1);
    let m1 = Rat::from_int((m - 1) as i64);
    let m1sq = RatField.mul(&m1, &m1);
    // c(m-1) + (m-1)b + c + c(m-1) + (b+c)(m-1)^2
    c.scale(&m1)
        .add(&b.scale(&m1))
        .add(&c)
        .add(&c.scale(&m1))
        .add(&b.add(&c).scale(&m1sq))
}

/// Push-pull identities for the self-intersections appearing in the
/// tables: the pullback of the base curve satisfies
/// (Sigma . pullback) = (C . C) = -b, and the degree-m cover scales
/// self-intersections by m.
pub fn pushpull_check(cover_degree: u32, base_self_int: &Rat) -> PushPull {
    let pulled = RatField.mul(&Rat::from_int(cover_degree as i64), base_self_int);
    PushPull {
        section_dot_pullback: base_self_int.clone(),
        pullback_self_intersection: pulled,
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PushPull {
    /// (Sigma . nu^* C) = (nu_* Sigma . C) = (C . C)
    pub section_dot_pullback: Rat,
    /// (nu^* C . nu^* C) = m (C . C)
    pub pullback_self_intersection: Rat,
}

/// Self-intersection of a line on a smooth quartic surface, by adjunction
/// (trivial canonical class, rational curve): -2.
pub fn line_self_intersection_on_quartic() -> Rat {
    // 2g - 2 = C^2 + K.C with g = 0 and K = 0
    Rat::from_int(-2)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quartic_det_is_minus6_minus_9s_symbolically() {
        let g = quartic_gram(None);
        let params = g.params.clone();
        let expected = MPoly::from_terms(params, &[(vec![0], -6), (vec![1], -9)]);
        assert_eq!(g.determinant, expected);
        assert_eq!(g.verdict, GramVerdict::Symbolic);
    }

    #[test]
    fn quartic_det_at_minus_six_is_48() {
        // sigma^2 = -2 - (Sigma.R) with (Sigma.R) = 4 for a smooth cover
        let g = quartic_gram(Some(&Rat::from_int(-6)));
        assert_eq!(
            g.determinant.eval(&[Rat::from_int(-6)]),
            Rat::from_int(48)
        );
        assert_eq!(g.verdict, GramVerdict::Independent);
        assert!(g.constraint_flags.is_empty());
    }

    #[test]
    fn quartic_boundary_value_flags_constraint() {
        let g = quartic_gram(Some(&Rat::from_int(-2)));
        assert_eq!(g.determinant.eval(&[Rat::from_int(-2)]), Rat::from_int(12));
        assert_eq!(g.verdict, GramVerdict::Independent);
        assert_eq!(g.constraint_flags.len(), 1);
    }

    #[test]
    fn positivity_under_the_stated_constraints() {
        // any sigma^2 < -2 gives det > 0
        for s in [-3i64, -6, -10, -100] {
            let g = quartic_gram(Some(&Rat::from_int(s)));
            let d = g.determinant.eval(&[Rat::from_int(s)]);
            assert!(!d.is_negative() && !RatField.is_zero(&d));
        }
    }

    #[test]
    fn general_det_matches_the_five_term_expansion() {
        for m in 2..=10 {
            let g = general_gram(m, None, None).unwrap();
            assert_eq!(g.determinant, general_det_expected(m), "m = {m}");
        }
    }

    #[test]
    fn general_det_samples() {
        let d = |m: u32, b: i64, c: i64| -> Rat {
            general_gram(m, Some(&Rat::from_int(b)), Some(&Rat::from_int(c)))
                .unwrap()
                .determinant
                .eval(&[Rat::from_int(b), Rat::from_int(c)])
        };
        assert_eq!(d(3, 2, 4), Rat::from_int(48));
        assert_eq!(d(2, 2, 4), Rat::from_int(20));
        assert_eq!(d(2, 0, 1), Rat::from_int(4));
        assert!(general_gram(1, None, None).is_err());
    }

    #[test]
    fn pushpull_identities() {
        // line on a quartic: -2; with a degree-3 cover the pullback has
        // self-intersection -6
        let l2 = line_self_intersection_on_quartic();
        assert_eq!(l2, Rat::from_int(-2));
        let pp = pushpull_check(3, &l2);
        assert_eq!(pp.section_dot_pullback, Rat::from_int(-2));
        assert_eq!(pp.pullback_self_intersection, Rat::from_int(-6));
        // rational section with b = 2
        let pp = pushpull_check(2, &Rat::from_int(-2));
        assert_eq!(pp.section_dot_pullback, Rat::from_int(-2));
    }
}

//! Property suites: ring axioms, discriminant/gcd agreement, factorization
//! round trips, extension arithmetic, the group law on random smooth
//! cubics, and the dual-method oracles for flexes and 2-torsion.

use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use quartica::cubiclaw::cubic::TernaryCubic;
use quartica::cubiclaw::invariants::aronhold_invariants;
use quartica::cubiclaw::law::{
    is_flex, two_torsion_tangent, CubicGroup, CubicPoint, DivisorClass,
};
use quartica::exactalg::factor::factor_desk;
use quartica::exactalg::linalg;
use quartica::exactalg::mpoly::{vars, MPoly};
use quartica::exactalg::rat::{Rat, RatField};
use quartica::exactalg::ring::{Field, Ring};
use quartica::exactalg::upoly::UPoly;
use quartica::projgeom::point::ProjPoint;

fn rat_strategy() -> impl Strategy<Value = Rat> {
    (-20i64..=20, 1i64..=9).prop_map(|(n, d)| Rat::new(n, d))
}

fn upoly_strategy(max_deg: usize) -> impl Strategy<Value = UPoly<RatField>> {
    proptest::collection::vec(-9i64..=9, 1..=max_deg + 1)
        .prop_map(|cs| UPoly::from_coeff_slice(RatField, &cs))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rational_field_axioms(a in rat_strategy(), b in rat_strategy(), c in rat_strategy()) {
        let f = RatField;
        prop_assert_eq!(f.add(&f.add(&a, &b), &c), f.add(&a, &f.add(&b, &c)));
        prop_assert_eq!(f.mul(&a, &f.add(&b, &c)), f.add(&f.mul(&a, &b), &f.mul(&a, &c)));
        prop_assert_eq!(f.add(&a, &f.neg(&a)), f.zero());
    }

    #[test]
    fn mpoly_ring_axioms(
        ta in proptest::collection::vec(((0u32..3, 0u32..3), -5i64..=5), 1..6),
        tb in proptest::collection::vec(((0u32..3, 0u32..3), -5i64..=5), 1..6),
        tc in proptest::collection::vec(((0u32..3, 0u32..3), -5i64..=5), 1..6),
    ) {
        let vl = vars(&["x", "y"]);
        let build = |ts: &[((u32, u32), i64)]| {
            let terms: Vec<(Vec<u32>, i64)> =
                ts.iter().map(|((i, j), c)| (vec![*i, *j], *c)).collect();
            MPoly::from_terms(vl.clone(), &terms)
        };
        let (a, b, c) = (build(&ta), build(&tb), build(&tc));
        prop_assert_eq!(a.mul(&b.mul(&c)), a.mul(&b).mul(&c));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.add(&a.neg()), MPoly::zero(RatField, vl.clone()));
    }

    #[test]
    fn discriminant_vanishes_iff_gcd_nonconstant(f in upoly_strategy(6)) {
        prop_assume!(f.degree().map_or(false, |d| d >= 1));
        let disc_zero = RatField.is_zero(&f.discriminant().unwrap());
        let gcd = f.gcd(&f.derivative()).unwrap();
        prop_assert_eq!(disc_zero, gcd.deg() > 0);
    }

    #[test]
    fn factor_desk_product_reconstructs(f in upoly_strategy(6)) {
        prop_assume!(!f.is_zero());
        let fac = factor_desk(&f).unwrap();
        prop_assert_eq!(fac.product(), f);
    }

    #[test]
    fn extension_arithmetic_axioms(
        a0 in -6i64..=6, a1 in -6i64..=6,
        b0 in -6i64..=6, b1 in -6i64..=6,
        c0 in -6i64..=6, c1 in -6i64..=6,
    ) {
        // K = Q[w]/(w^2 - w - 1), squarefree
        let k = quartica::exactalg::ext::ExtField::new(
            RatField,
            UPoly::from_coeff_slice(RatField, &[-1, -1, 1]),
            "w",
        ).unwrap();
        let mk = |x: i64, y: i64| vec![Rat::from_int(x), Rat::from_int(y)];
        let (a, b, c) = (mk(a0, a1), mk(b0, b1), mk(c0, c1));
        prop_assert_eq!(k.mul(&k.mul(&a, &b), &c), k.mul(&a, &k.mul(&b, &c)));
        if !k.is_zero(&a) {
            let inv = k.inv(&a).unwrap();
            prop_assert_eq!(k.mul(&a, &inv), k.one());
        }
    }
}

// ---- deterministic counted suites ----

/// A smooth cubic through three given rational points, found by seeded
/// search inside the solution space of the linear conditions.
fn cubic_through(
    rng: &mut StdRng,
    pts: &[CubicPoint<RatField>],
) -> Option<TernaryCubic<RatField>> {
    let monomials = quartica::cubiclaw::cubic::CUBIC_MONOMIALS;
    let rows: Vec<Vec<Rat>> = pts
        .iter()
        .map(|p| {
            monomials
                .iter()
                .map(|m| {
                    let mut acc = Rat::from_int(1);
                    for (i, &e) in m.iter().enumerate() {
                        acc = RatField.mul(&acc, &RatField.pow(&p.coords[i], e));
                    }
                    acc
                })
                .collect()
        })
        .collect();
    let kernel = linalg::kernel_basis(&RatField, &rows);
    for _ in 0..40 {
        let mut coeffs = vec![Rat::from_int(0); 10];
        for v in &kernel {
            let c = Rat::from_int(rng.gen_range(-3i64..=3));
            for (i, x) in v.iter().enumerate() {
                coeffs[i] = RatField.add(&coeffs[i], &RatField.mul(&c, x));
            }
        }
        let cubic = TernaryCubic::new(RatField, coeffs);
        if cubic.is_zero() {
            continue;
        }
        if !RatField.is_zero(&aronhold_invariants(&cubic).disc) {
            return Some(cubic);
        }
    }
    None
}

fn point(x: i64, y: i64, z: i64) -> CubicPoint<RatField> {
    ProjPoint::from_ints(&[x, y, z]).unwrap()
}

fn sample_pool(
    rng: &mut StdRng,
    group: &CubicGroup<RatField>,
    gens: &[CubicPoint<RatField>],
    size: usize,
) -> Vec<CubicPoint<RatField>> {
    let mut pool = gens.to_vec();
    pool.push(group.origin.clone());
    while pool.len() < size {
        let a = pool[rng.gen_range(0..pool.len())].clone();
        let b = pool[rng.gen_range(0..pool.len())].clone();
        let next = match rng.gen_range(0..3) {
            0 => group.add(&a, &b),
            1 => group.sub(&a, &b),
            _ => group.smul(2, &a),
        };
        if let Ok(p) = next {
            if !pool.contains(&p) {
                pool.push(p);
            } else {
                pool.push(group.origin.clone());
            }
        }
    }
    pool
}

/// Group axioms on at least 50 random triples per curve over at least 5
/// random smooth cubics with rational points.
#[test]
fn group_law_axioms_on_random_curves() {
    let mut rng = StdRng::seed_from_u64(0x5eed_cafe);
    let base_triples = [
        [point(1, -1, 0), point(1, 0, -1), point(0, 1, -1)],
        [point(0, 0, 1), point(1, 0, 1), point(-1, 0, 1)],
        [point(1, 1, 1), point(1, -1, 0), point(0, 1, 1)],
        [point(2, 1, 1), point(0, 1, -1), point(1, 0, 1)],
        [point(1, 2, 1), point(1, 0, -1), point(0, 1, 2)],
        [point(1, 1, 2), point(2, -1, 1), point(0, 1, -1)],
    ];
    let mut curves_tested = 0;
    for pts in &base_triples {
        let Some(cubic) = cubic_through(&mut rng, pts) else { continue };
        let group = CubicGroup::new(cubic, pts[0].clone()).unwrap();
        let pool = sample_pool(&mut rng, &group, pts, 8);
        for _ in 0..50 {
            let p = pool[rng.gen_range(0..pool.len())].clone();
            let q = pool[rng.gen_range(0..pool.len())].clone();
            let r = pool[rng.gen_range(0..pool.len())].clone();
            // identity and inverse
            assert_eq!(group.add(&p, &group.origin).unwrap(), p);
            let np = group.neg(&p).unwrap();
            assert_eq!(group.add(&p, &np).unwrap(), group.origin);
            // commutativity
            assert_eq!(group.add(&p, &q).unwrap(), group.add(&q, &p).unwrap());
            // associativity, both association orders computed independently
            let lhs = group.add(&group.add(&p, &q).unwrap(), &r).unwrap();
            let rhs = group.add(&p, &group.add(&q, &r).unwrap()).unwrap();
            assert_eq!(lhs, rhs);
        }
        curves_tested += 1;
    }
    assert!(curves_tested >= 5, "only {curves_tested} smooth curves found");
}

/// Dual-method flex oracle: the Hessian test agrees with
/// reduce(3p - line section) = origin on at least 30 sampled points.
#[test]
fn flex_test_agrees_with_class_reduction() {
    let mut rng = StdRng::seed_from_u64(0xf1e5);
    let base_triples = [
        [point(1, -1, 0), point(1, 0, -1), point(0, 1, -1)],
        [point(0, 0, 1), point(1, 0, 1), point(-1, 0, 1)],
        [point(1, 1, 1), point(1, -1, 0), point(0, 1, 1)],
    ];
    let mut checked = 0;
    for pts in &base_triples {
        let Some(cubic) = cubic_through(&mut rng, pts) else { continue };
        let group = CubicGroup::new(cubic.clone(), pts[0].clone()).unwrap();
        let pool = sample_pool(&mut rng, &group, pts, 12);
        for p in &pool {
            let by_hessian = is_flex(&cubic, p).unwrap();
            let class = DivisorClass { summands: vec![(p.clone(), 3)], hyperplane_multiple: 1 };
            let by_reduction = group.reduce_class(&class).unwrap() == group.origin;
            assert_eq!(by_hessian, by_reduction, "at {}", p.fmt_pretty());
            checked += 1;
        }
    }
    assert!(checked >= 30, "only {checked} points checked");
}

/// Dual-method 2-torsion oracle: the tangent-intersection criterion
/// agrees with the group-law order on at least 30 pairs, including pairs
/// that genuinely differ by 2-torsion.
#[test]
fn two_torsion_tangent_agrees_with_order() {
    let mut rng = StdRng::seed_from_u64(0x2202);
    // a curve with full rational 2-torsion: V^2 T = U (U - T)(U + T)
    let full_two = {
        let mut coeffs = vec![Rat::from_int(0); 10];
        coeffs[7] = Rat::from_int(1); // V^2 T
        coeffs[0] = Rat::from_int(-1); // U^3
        coeffs[5] = Rat::from_int(1); // U T^2
        TernaryCubic::new(RatField, coeffs)
    };
    let torsion_pts = [point(0, 1, 0), point(0, 0, 1), point(1, 0, 1), point(-1, 0, 1)];
    let mut checked = 0;
    let mut true_cases = 0;
    for i in 0..torsion_pts.len() {
        for j in 0..torsion_pts.len() {
            if i == j {
                continue;
            }
            let (p, q) = (&torsion_pts[i], &torsion_pts[j]);
            let (verdict, meet) = two_torsion_tangent(&full_two, p, q).unwrap();
            let group = CubicGroup::new(full_two.clone(), p.clone()).unwrap();
            let order_two = group.torsion_order(q, 12).unwrap() == Some(2);
            assert_eq!(verdict, order_two);
            if verdict {
                assert!(full_two.contains(&meet));
                true_cases += 1;
            }
            checked += 1;
        }
    }
    // generic pairs on random curves are almost never 2-torsion
    let base_triples = [
        [point(1, -1, 0), point(1, 0, -1), point(0, 1, -1)],
        [point(1, 1, 1), point(1, -1, 0), point(0, 1, 1)],
        [point(2, 1, 1), point(0, 1, -1), point(1, 0, 1)],
    ];
    for pts in &base_triples {
        let Some(cubic) = cubic_through(&mut rng, pts) else { continue };
        let group = CubicGroup::new(cubic.clone(), pts[0].clone()).unwrap();
        let pool = sample_pool(&mut rng, &group, pts, 8);
        let mut per_curve = 0;
        for _ in 0..60 {
            if per_curve >= 8 {
                break;
            }
            let p = pool[rng.gen_range(0..pool.len())].clone();
            let q = pool[rng.gen_range(0..pool.len())].clone();
            if p == q {
                continue;
            }
            let (verdict, _) = two_torsion_tangent(&cubic, &p, &q).unwrap();
            let g2 = CubicGroup::new(cubic.clone(), p.clone()).unwrap();
            let order_two = g2.torsion_order(&q, 12).unwrap() == Some(2);
            assert_eq!(verdict, order_two);
            checked += 1;
            per_curve += 1;
        }
    }
    assert!(checked >= 30, "only {checked} pairs checked");
    assert!(true_cases >= 6, "only {true_cases} genuine 2-torsion pairs");
}

/// The pencil-plane containment invariant: every plane of the pencil
/// contains the line, for sampled rational parameters.
#[test]
fn pencil_planes_contain_the_line() {
    use quartica::fibration::surface::fermat_line;
    use quartica::projgeom::plane::{pencil_plane, P1};
    let l = fermat_line();
    for t in [-3i64, -1, 0, 1, 2, 7] {
        let h = pencil_plane(&l, &P1::Finite(Rat::from_int(t)));
        let dual = h.dual_vector();
        for (u, v) in [(1i64, 0i64), (0, 1), (2, -3)] {
            let pt = l.point_at(&RatField, &Rat::from_int(u), &Rat::from_int(v));
            let ip = pt
                .iter()
                .zip(&dual)
                .fold(Rat::from_int(0), |acc, (a, b)| {
                    RatField.add(&acc, &RatField.mul(a, b))
                });
            assert!(RatField.is_zero(&ip));
        }
    }
}

/// Tangency of the tangent plane: restricting the quartic to any line
/// through the point inside the tangent plane gives a form with a double
/// root at the point (intersection multiplicity at least 2).
#[test]
fn tangent_plane_has_double_contact_along_sampled_lines() {
    use quartica::fibration::surface::{fermat_quartic};
    use quartica::projgeom::plane::tangent_plane_dual;
    let f = fermat_quartic();
    let p = ProjPoint::from_ints(&[1, 1, 1, 1]).unwrap();
    let dual = tangent_plane_dual(&f, &p).unwrap();
    // sample directions in the tangent plane
    let ker = linalg::kernel_basis(&RatField, &vec![dual]);
    for dir in &ker {
        if dir == &p.coords {
            continue;
        }
        // restrict f to the line p + s*dir: univariate in s with a double
        // root at s = 0
        let sv = vars(&["s"]);
        let s = MPoly::var(RatField, sv.clone(), 0);
        let images: Vec<MPoly<RatField>> = (0..4)
            .map(|i| {
                MPoly::constant(RatField, sv.clone(), p.coords[i].clone())
                    .add(&s.scale(&dir[i]))
            })
            .collect();
        let restricted = f.substitute(&images).unwrap();
        let up = restricted.as_univariate(0).unwrap();
        // multiplicity of the root s = 0 is at least 2
        assert!(RatField.is_zero(&up.coeff(0)));
        assert!(RatField.is_zero(&up.coeff(1)));
    }
}

/// Residual-cubic defining identity: the restriction of the quartic to the
/// pencil plane equals scalar * T * cubic, for 20 random rational
/// parameters.
#[test]
fn residual_cubic_identity_at_random_parameters() {
    use quartica::fibration::pencil::residual_cubic_at;
    use quartica::fibration::surface::fermat_surface;
    use quartica::projgeom::plane::{pencil_plane, restrict_form, P1};
    let s = fermat_surface();
    let mut rng = StdRng::seed_from_u64(0x7e5701);
    for _ in 0..20 {
        let t = Rat::new(rng.gen_range(-30i64..=30), rng.gen_range(1i64..=7));
        let param = P1::Finite(t.clone());
        let rc = residual_cubic_at(&s, &param).unwrap();
        let plane = pencil_plane(&s.line, &param);
        let restricted = restrict_form(&s.quartic, &plane).unwrap();
        let tvar = MPoly::monomial(
            RatField,
            restricted.vars.clone(),
            vec![0, 0, 1],
            Rat::from_int(1),
        );
        let product = rc.cubic.to_mpoly().mul(&tvar).scale(&rc.scalar);
        assert_eq!(product, restricted);
    }
}

/// Height-ratio experiment on a fibration whose tangent-third section is
/// free: the ratio tail is positive and stabilizes (bounded oscillation),
/// in contrast with the torsion section of the Fermat surface whose
/// ratios vanish identically.
#[test]
fn height_ratio_tail_positive_for_a_free_section() {
    use quartica::fibration::surface::QuarticSurfaceWithLine;
    use quartica::pointgen::height::height_ratio_experiment;
    use quartica::projgeom::line::LineInP3;
    // the bundled synthetic fixture: free at the default bound
    let f = MPoly::from_terms(
        vars(&["X", "Y", "Z", "W"]),
        &[
            (vec![1, 0, 3, 0], 1),
            (vec![1, 0, 1, 2], 1),
            (vec![1, 0, 0, 3], 1),
            (vec![0, 1, 3, 0], 1),
            (vec![0, 1, 2, 1], 1),
            (vec![0, 1, 0, 3], 1),
            (vec![2, 0, 1, 1], 1),
            (vec![0, 2, 2, 0], 1),
            (vec![4, 0, 0, 0], 1),
            (vec![0, 4, 0, 0], 1),
        ],
    );
    let line = LineInP3::from_int_points(&[0, 0, 1, 0], &[0, 0, 0, 1]).unwrap();
    let s = QuarticSurfaceWithLine::new(f, line).unwrap();
    let bases: Vec<(i64, i64)> = vec![(7, 1), (17, 1), (43, 1), (101, 1), (257, 1), (641, 1)];
    let rows = height_ratio_experiment(&s, &bases).unwrap();
    let ratios: Vec<f64> = rows.iter().filter_map(|r| r.ratio).collect();
    assert!(ratios.len() >= 5);
    // positive tail with bounded oscillation, tighter than the head
    let tail = &ratios[ratios.len() - 3..];
    assert!(tail.iter().all(|&r| r > 1.0), "tail not positive: {ratios:?}");
    let max = tail.iter().cloned().fold(f64::MIN, f64::max);
    let min = tail.iter().cloned().fold(f64::MAX, f64::min);
    let head_gap = (ratios[1] - ratios[0]).abs();
    assert!(max - min < 3.0, "tail oscillates: {ratios:?}");
    assert!(max - min < head_gap, "tail wider than the head: {ratios:?}");
}

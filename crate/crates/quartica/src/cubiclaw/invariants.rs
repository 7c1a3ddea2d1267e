//! The degree-4 and degree-6 invariants of a ternary cubic, its
//! discriminant and j-invariant.
//!
//! The degree-4 invariant is derived once, at first use, by the classical
//! omega-process: apply the four operators Omega_{123}, Omega_{124},
//! Omega_{134}, Omega_{234} to a product of four generic cubics and read
//! off the resulting polynomial in the ten generic coefficients. The
//! degree-6 invariant is the polarization of the degree-4 one along the
//! Hessian covariant. Both are then rescaled so that on the reference
//! cubic Y^2 Z - X^3 - p X Z^2 - q Z^3 they take the values -48p and
//! -864q; with that normalization
//!
//!   disc = (S^3 - T^2) / 1728,    j = S^3 / disc,
//!
//! which on the reference reproduces the classical -16(4p^3 + 27q^2) and
//! 1728 * 4p^3 / (4p^3 + 27q^2). The normalization is pinned by tests.

use std::sync::OnceLock;

use crate::exactalg::mpoly::{MPoly, VarList};
use crate::exactalg::rat::{Rat, RatField};
use crate::exactalg::ring::{Field, Ring};
use crate::cubiclaw::cubic::{TernaryCubic, CUBIC_MONOMIALS};

/// The derived invariant formulas: S as a polynomial in the ten generic
/// coefficients c0..c9 (CUBIC_MONOMIALS order), its ten partials, and the
/// scale factors fixed on the Weierstrass reference.
pub struct InvariantFormulas {
    pub c_vars: VarList,
    pub s_formula: MPoly<RatField>,
    pub s_partials: Vec<MPoly<RatField>>,
    /// raw S on the reference equals s_scale * p
    pub s_scale: Rat,
    /// raw T on the reference equals t_scale * q
    pub t_scale: Rat,
}

fn omega_apply(p: &MPoly<RatField>, copies: [usize; 3], var_of: &dyn Fn(usize, usize) -> usize) -> MPoly<RatField> {
    // sum over permutations sigma of {0,1,2} of sgn(sigma) *
    // d/d v_{copies[0], sigma(0)} d/d v_{copies[1], sigma(1)} d/d v_{copies[2], sigma(2)}
    const PERMS: [([usize; 3], i64); 6] = [
        ([0, 1, 2], 1),
        ([1, 2, 0], 1),
        ([2, 0, 1], 1),
        ([0, 2, 1], -1),
        ([2, 1, 0], -1),
        ([1, 0, 2], -1),
    ];
    let mut acc = MPoly::zero(RatField, p.vars.clone());
    for (perm, sign) in PERMS {
        let mut q = p.clone();
        for (slot, &coord) in perm.iter().enumerate() {
            q = q.partial(var_of(copies[slot], coord));
        }
        if sign < 0 {
            q = q.neg();
        }
        acc = acc.add(&q);
    }
    acc
}

fn derive_formulas() -> InvariantFormulas {
    // variables: c0..c9, then x_k, y_k, z_k for copies k = 1..4
    let mut names: Vec<String> = (0..10).map(|i| format!("c{i}")).collect();
    for k in 1..=4 {
        for coord in ["x", "y", "z"] {
            names.push(format!("{coord}{k}"));
        }
    }
    let all_vars: VarList = std::sync::Arc::new(names);
    let var_of = |copy: usize, coord: usize| -> usize { 10 + 3 * (copy - 1) + coord };

    // the generic cubic in copy k: sum_i c_i * monomial_i(x_k, y_k, z_k)
    let generic = |copy: usize| -> MPoly<RatField> {
        let mut p = MPoly::zero(RatField, all_vars.clone());
        for (i, m) in CUBIC_MONOMIALS.iter().enumerate() {
            let mut exp = vec![0u32; all_vars.len()];
            exp[i] = 1;
            for coord in 0..3 {
                exp[var_of(copy, coord)] = m[coord];
            }
            p = p.add(&MPoly::monomial(RatField, all_vars.clone(), exp, Rat::from_int(1)));
        }
        p
    };

    let mut prod = generic(1).mul(&generic(2));
    prod = prod.mul(&generic(3));
    prod = prod.mul(&generic(4));

    let vf: &dyn Fn(usize, usize) -> usize = &var_of;
    let mut s_raw = omega_apply(&prod, [1, 2, 3], vf);
    s_raw = omega_apply(&s_raw, [1, 2, 4], vf);
    s_raw = omega_apply(&s_raw, [1, 3, 4], vf);
    s_raw = omega_apply(&s_raw, [2, 3, 4], vf);

    // all point variables must be gone
    debug_assert!(s_raw
        .terms
        .keys()
        .all(|e| e[10..].iter().all(|&k| k == 0)));

    // restrict to the ten coefficient variables and normalize
    let c_vars: VarList = std::sync::Arc::new((0..10).map(|i| format!("c{i}")).collect());
    let mut s = MPoly::zero(RatField, c_vars.clone());
    for (e, c) in &s_raw.terms {
        s = s.add(&MPoly::monomial(RatField, c_vars.clone(), e[..10].to_vec(), c.clone()));
    }
    let s = s.primitive_normalized();
    assert!(!s.is_zero(), "omega process produced zero");
    let s_partials: Vec<MPoly<RatField>> = (0..10).map(|i| s.partial(i)).collect();

    // pin scales on Weierstrass references
    let eval_s = |coeffs: &[Rat]| -> Rat {
        let mut acc = Rat::from_int(0);
        for (e, c) in &s.terms {
            let mut t = c.clone();
            for (i, &k) in e.iter().enumerate() {
                t = RatField.mul(&t, &RatField.pow(&coeffs[i], k));
            }
            acc = RatField.add(&acc, &t);
        }
        acc
    };
    // reference with p = 1, q = 0: V^2 T - U^3 - U T^2
    let mut w1 = vec![Rat::from_int(0); 10];
    w1[0] = Rat::from_int(-1); // U^3
    w1[7] = Rat::from_int(1); // V^2 T
    w1[5] = Rat::from_int(-1); // U T^2
    let s_scale = eval_s(&w1);
    assert!(!RatField.is_zero(&s_scale), "degree-4 invariant vanished on reference");

    // T raw via polarization along the Hessian, on p = 0, q = 1:
    // V^2 T - U^3 - T^3
    let mut w2 = vec![Rat::from_int(0); 10];
    w2[0] = Rat::from_int(-1);
    w2[7] = Rat::from_int(1);
    w2[9] = Rat::from_int(-1); // T^3
    let cubic_w2 = TernaryCubic::new(RatField, w2.clone());
    let hess = cubic_w2.hessian();
    let mut t_scale = Rat::from_int(0);
    for i in 0..10 {
        let part = {
            let mut acc = Rat::from_int(0);
            for (e, c) in &s_partials[i].terms {
                let mut t = c.clone();
                for (j, &k) in e.iter().enumerate() {
                    t = RatField.mul(&t, &RatField.pow(&w2[j], k));
                }
                acc = RatField.add(&acc, &t);
            }
            acc
        };
        t_scale = RatField.add(&t_scale, &RatField.mul(&part, &hess.coeffs[i]));
    }
    assert!(!RatField.is_zero(&t_scale), "degree-6 invariant vanished on reference");

    InvariantFormulas { c_vars, s_formula: s, s_partials, s_scale, t_scale }
}

pub fn formulas() -> &'static InvariantFormulas {
    static CELL: OnceLock<InvariantFormulas> = OnceLock::new();
    CELL.get_or_init(derive_formulas)
}

fn eval_formula<F: Field>(ring: &F, formula: &MPoly<RatField>, coeffs: &[F::Elem]) -> F::Elem {
    let mut acc = ring.zero();
    for (e, c) in &formula.terms {
        let mut t = ring.from_rat(c);
        for (i, &k) in e.iter().enumerate() {
            if k > 0 {
                t = ring.mul(&t, &ring.pow(&coeffs[i], k));
            }
        }
        acc = ring.add(&acc, &t);
    }
    acc
}

/// The classical invariants of a ternary cubic under the normalization of
/// this crate: on Y^2 Z - X^3 - p X Z^2 - q Z^3 they are S = -48 p,
/// T = -864 q, disc = -16 (4 p^3 + 27 q^2), and j = S^3 / disc.
#[derive(Clone, Debug, PartialEq)]
pub struct AronholdInvariants<E> {
    pub s: E,
    pub t: E,
    pub disc: E,
    /// None when the cubic is singular (disc = 0).
    pub j: Option<E>,
}

pub fn aronhold_invariants<F: Field>(cubic: &TernaryCubic<F>) -> AronholdInvariants<F::Elem> {
    assert!(!cubic.is_zero(), "invariants of the zero cubic");
    let ring = &cubic.ring;
    let fm = formulas();

    let s_raw = eval_formula(ring, &fm.s_formula, &cubic.coeffs);
    let hess = cubic.hessian();
    let mut t_raw = ring.zero();
    for i in 0..10 {
        let part = eval_formula(ring, &fm.s_partials[i], &cubic.coeffs);
        t_raw = ring.add(&t_raw, &ring.mul(&part, &hess.coeffs[i]));
    }

    // S = (-48 / s_scale) * s_raw, T = (-864 / t_scale) * t_raw
    let s_factor = RatField
        .div(&Rat::from_int(-48), &fm.s_scale)
        .expect("nonzero scale");
    let t_factor = RatField
        .div(&Rat::from_int(-864), &fm.t_scale)
        .expect("nonzero scale");
    let s = ring.mul(&s_raw, &ring.from_rat(&s_factor));
    let t = ring.mul(&t_raw, &ring.from_rat(&t_factor));

    // disc = (S^3 - T^2)/1728
    let s3 = ring.mul(&ring.mul(&s, &s), &s);
    let t2 = ring.mul(&t, &t);
    let inv1728 = ring.from_rat(&Rat::new(1, 1728));
    let disc = ring.mul(&ring.sub(&s3, &t2), &inv1728);

    let j = if ring.is_zero(&disc) {
        None
    } else {
        Some(ring.div(&s3, &disc).expect("disc nonzero"))
    };

    AronholdInvariants { s, t, disc, j }
}

/// Shorthand: the discriminant alone.
pub fn cubic_discriminant<F: Field>(cubic: &TernaryCubic<F>) -> F::Elem {
    aronhold_invariants(cubic).disc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::mpoly::vars;

    fn cubic_q(terms: &[(usize, i64)]) -> TernaryCubic<RatField> {
        let mut coeffs = vec![Rat::from_int(0); 10];
        for &(i, c) in terms {
            coeffs[i] = Rat::from_int(c);
        }
        TernaryCubic::new(RatField, coeffs)
    }

    /// Substitute the Weierstrass coefficients (with symbolic p, q) into a
    /// coefficient formula, producing a polynomial in (p, q).
    fn eval_on_weierstrass(formula: &MPoly<RatField>) -> MPoly<RatField> {
        let pq = vars(&["p", "q"]);
        // coefficients of V^2 T - U^3 - p U T^2 - q T^3 in monomial order
        let zero = MPoly::zero(RatField, pq.clone());
        let one = MPoly::one(RatField, pq.clone());
        let p = MPoly::var(RatField, pq.clone(), 0);
        let q = MPoly::var(RatField, pq.clone(), 1);
        let mut images: Vec<MPoly<RatField>> = vec![zero; 10];
        images[0] = one.neg(); // U^3
        images[7] = one.clone(); // V^2 T
        images[5] = p.neg(); // U T^2
        images[9] = q.neg(); // T^3
        formula.substitute(&images).unwrap()
    }

    #[test]
    fn s_formula_on_weierstrass_is_a_multiple_of_p() {
        let fm = formulas();
        let on_w = eval_on_weierstrass(&fm.s_formula);
        let pq = vars(&["p", "q"]);
        let expected = MPoly::monomial(RatField, pq, vec![1, 0], fm.s_scale.clone());
        assert_eq!(on_w, expected);
    }

    #[test]
    fn normalized_invariants_match_weierstrass_reference() {
        // p = 2, q = 5: S = -96, T = -4320, disc = -16(32 + 675)
        let c = cubic_q(&[(0, -1), (7, 1), (5, -2), (9, -5)]);
        let inv = aronhold_invariants(&c);
        assert_eq!(inv.s, Rat::from_int(-96));
        assert_eq!(inv.t, Rat::from_int(-4320));
        assert_eq!(inv.disc, Rat::from_int(-16 * (4 * 8 + 27 * 25)));
        // j = S^3/disc
        let j = inv.j.unwrap();
        assert_eq!(
            j,
            RatField
                .div(&Rat::from_int(-96 * -96 * -96 * -1), &Rat::from_int(16 * (4 * 8 + 27 * 25)))
                .unwrap()
        );
    }

    #[test]
    fn fermat_cubic_has_j_zero() {
        let c = cubic_q(&[(0, 1), (6, 1), (9, 1)]);
        let inv = aronhold_invariants(&c);
        assert!(RatField.is_zero(&inv.s));
        assert!(!RatField.is_zero(&inv.disc));
        assert_eq!(inv.j, Some(Rat::from_int(0)));
    }

    #[test]
    fn singular_cubics_have_zero_discriminant() {
        // cuspidal V^2 T - U^3: S = T = 0
        let cusp = cubic_q(&[(7, 1), (0, -1)]);
        let inv = aronhold_invariants(&cusp);
        assert!(RatField.is_zero(&inv.s));
        assert!(RatField.is_zero(&inv.t));
        assert!(RatField.is_zero(&inv.disc));
        assert_eq!(inv.j, None);
        // triangle UVT
        let tri = cubic_q(&[(4, 1)]);
        assert!(RatField.is_zero(&cubic_discriminant(&tri)));
        // smooth Fermat is not singular
        let fermat = cubic_q(&[(0, 1), (6, 1), (9, 1)]);
        assert!(!RatField.is_zero(&cubic_discriminant(&fermat)));
    }

    #[test]
    fn hesse_pencil_discriminant_factors_as_expected() {
        // f_m = U^3 + V^3 + T^3 + 6m UVT: disc(f_m) = disc(f_0) * (1 + 8 m^3)^3
        let pencil_disc = |m: &Rat| -> Rat {
            let mut coeffs = vec![Rat::from_int(0); 10];
            coeffs[0] = Rat::from_int(1);
            coeffs[6] = Rat::from_int(1);
            coeffs[9] = Rat::from_int(1);
            coeffs[4] = RatField.mul(&Rat::from_int(6), m);
            cubic_discriminant(&TernaryCubic::new(RatField, coeffs))
        };
        let d0 = pencil_disc(&Rat::from_int(0));
        assert!(!RatField.is_zero(&d0));
        for m in [Rat::from_int(1), Rat::from_int(-2), Rat::new(1, 3), Rat::new(-1, 2)] {
            let got = pencil_disc(&m);
            // (1 + 8 m^3)^3
            let m3 = RatField.pow(&m, 3);
            let inner = RatField.add(&Rat::from_int(1), &RatField.mul(&Rat::from_int(8), &m3));
            let expected = RatField.mul(&d0, &RatField.pow(&inner, 3));
            assert_eq!(got, expected, "at m = {m}");
        }
        // m = -1/2 gives the triangle: discriminant zero
        assert!(RatField.is_zero(&pencil_disc(&Rat::new(-1, 2))));
    }

    #[test]
    fn invariance_under_unimodular_substitution() {
        // S and T are SL3-invariant: check on a sample change of variables
        let c = cubic_q(&[(0, 2), (6, -1), (9, 1), (4, 3), (2, -2)]);
        let inv = aronhold_invariants(&c);
        // substitution U -> U + 2V, V -> V + T, T -> T (determinant 1)
        let vl = crate::cubiclaw::cubic::cubic_vars();
        let u = MPoly::var(RatField, vl.clone(), 0);
        let v = MPoly::var(RatField, vl.clone(), 1);
        let t = MPoly::var(RatField, vl.clone(), 2);
        let images = [
            u.add(&v.scale(&Rat::from_int(2))),
            v.add(&t),
            t.clone(),
        ];
        let moved = c.to_mpoly().substitute(&images).unwrap();
        let moved_cubic = TernaryCubic::from_mpoly(&moved).unwrap();
        let inv2 = aronhold_invariants(&moved_cubic);
        assert_eq!(inv.s, inv2.s);
        assert_eq!(inv.t, inv2.t);
        assert_eq!(inv.disc, inv2.disc);
    }
}

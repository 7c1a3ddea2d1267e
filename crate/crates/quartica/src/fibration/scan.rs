//! The singular fiber census: find every parameter with a singular fiber,
//! classify each fiber twice (valuation-theoretically through the orders
//! of the invariants, and geometrically through its singular points), and
//! audit the total Euler number against chi = 24.

use rayon::prelude::*;

use crate::error::FibrationError;
use crate::exactalg::factor::{factor_desk, DESK_DEGREE_BOUND};
use crate::exactalg::rat::{Rat, RatField};
use crate::exactalg::ratfunc::RatFuncField;
use crate::exactalg::ring::{Field, Ring};
use crate::exactalg::upoly::UPoly;
use crate::exactalg::ExtField;
use crate::cubiclaw::classify::{classify_kodaira, KodairaType, SingularAnalysis};
use crate::cubiclaw::cubic::TernaryCubic;
use crate::cubiclaw::invariants::aronhold_invariants;
use crate::fibration::pencil::{
    binary_cubic_disc, residual_cubic_symbolic, trisection_coeffs,
};
use crate::fibration::surface::QuarticSurfaceWithLine;

pub use crate::fibration::pencil::FiberParamDesc as FiberParam;

#[derive(Clone, Debug)]
pub struct FiberReport {
    pub param: FiberParam,
    /// number of conjugate fibers sharing this description
    pub orbit_size: u32,
    pub kodaira: KodairaType,
    pub euler: u32,
    pub transverse_to_line: bool,
    /// per-fiber singular point data
    pub singular_points: SingularAnalysis,
    /// multiplicities of the trisection divisor at this fiber (sums to 3)
    pub trisection_profile: Vec<u32>,
}

#[derive(Clone, Debug)]
pub struct ScanReport {
    pub fibers: Vec<FiberReport>,
    /// sum of euler numbers weighted by orbit size
    pub euler_total: u32,
    /// number of singular fibers counted with orbit size
    pub fiber_count: u32,
    /// discriminant factors that could not be split at desk scale
    pub unresolved: Vec<String>,
}

impl ScanReport {
    pub fn is_complete(&self) -> bool {
        self.unresolved.is_empty() && self.euler_total == 24
    }

    pub fn transverse_count(&self) -> u32 {
        self.fibers
            .iter()
            .filter(|f| f.transverse_to_line)
            .map(|f| f.orbit_size)
            .sum()
    }
}

/// Data shared by the per-orbit classification tasks.
struct ScanContext {
    cubic_t: TernaryCubic<RatFuncField>,
    s_num: UPoly<RatField>,
    t_num: UPoly<RatField>,
    disc_num: UPoly<RatField>,
    tri_disc: UPoly<RatField>,
}

/// Valuation data of the invariants along a parameter orbit.
struct Valuations {
    disc: u32,
    s: Option<u32>, // None when S vanishes identically
    t: Option<u32>,
}

fn valuation_type(v: &Valuations) -> Result<KodairaType, FibrationError> {
    let s_ord = v.s;
    let t_ord = v.t;
    let nonzero = |o: Option<u32>| o == Some(0);
    let ty = if nonzero(s_ord) {
        // j has a pole: multiplicative reduction
        match v.disc {
            b @ 1..=3 => KodairaType::I(b),
            other => {
                return Err(FibrationError::TaxonomyViolation(format!(
                    "I_{other} is impossible for a plane cubic fiber"
                )))
            }
        }
    } else {
        match v.disc {
            2 => KodairaType::II,
            3 => KodairaType::III,
            4 => KodairaType::IV,
            other => {
                return Err(FibrationError::TaxonomyViolation(format!(
                    "additive fiber with discriminant order {other}"
                )))
            }
        }
    };
    // cross-check the expected invariant orders
    let ok = match ty {
        KodairaType::I(_) => true,
        KodairaType::II => s_ord.map_or(true, |o| o >= 1) && t_ord == Some(1),
        KodairaType::III => s_ord == Some(1) && t_ord.map_or(true, |o| o >= 2),
        KodairaType::IV => s_ord.map_or(true, |o| o >= 2) && t_ord == Some(2),
    };
    if !ok {
        return Err(FibrationError::TaxonomyViolation(format!(
            "invariant orders (disc {}, S {:?}, T {:?}) inconsistent with {ty}",
            v.disc, s_ord, t_ord
        )));
    }
    Ok(ty)
}

/// Full census of singular fibers, with the Euler audit.
pub fn singular_fiber_scan(
    surface: &QuarticSurfaceWithLine,
) -> Result<ScanReport, FibrationError> {
    let k = RatFuncField;
    // finite chart
    let rc = residual_cubic_symbolic(surface, false)?;
    let inv = aronhold_invariants(&rc.cubic);
    if k.is_zero(&inv.disc) {
        return Err(FibrationError::PencilDegenerate);
    }
    let disc_num = inv.disc.num.clone();
    let tri = trisection_coeffs(&rc.cubic);
    let tri_disc_elem = binary_cubic_disc(&k, &tri);
    if k.is_zero(&tri_disc_elem) {
        return Err(FibrationError::PencilDegenerate);
    }
    let ctx = ScanContext {
        cubic_t: rc.cubic.clone(),
        s_num: inv.s.num.clone(),
        t_num: inv.t.num.clone(),
        disc_num: disc_num.clone(),
        tri_disc: tri_disc_elem.num.clone(),
    };

    // infinity chart
    let rc_inf = residual_cubic_symbolic(surface, true)?;
    let inv_inf = aronhold_invariants(&rc_inf.cubic);
    let s_var = UPoly::var(RatField);
    let ord_inf_disc = inv_inf.disc.num.valuation(&s_var).map_err(FibrationError::Algebra)?;
    // chart consistency: the homogeneous discriminant has degree 24
    let deg_finite = disc_num.deg() as u32;
    if deg_finite + ord_inf_disc != 24 {
        return Err(FibrationError::TaxonomyViolation(format!(
            "discriminant degree audit failed: {deg_finite} + {ord_inf_disc} != 24"
        )));
    }

    // split the finite discriminant into parameter orbits
    let mut orbit_jobs: Vec<(UPoly<RatField>, u32)> = Vec::new();
    let mut unresolved: Vec<String> = Vec::new();
    for (sf, mult) in disc_num
        .squarefree_decomposition()
        .map_err(FibrationError::Algebra)?
    {
        if sf.deg() as u32 > DESK_DEGREE_BOUND {
            unresolved.push(format!("({})^{}", sf.fmt_with("t"), mult));
            continue;
        }
        match factor_desk(&sf) {
            Ok(fac) => {
                for (h, hm) in fac.factors {
                    debug_assert_eq!(hm, 1);
                    orbit_jobs.push((h, mult));
                }
            }
            Err(_) => unresolved.push(format!("({})^{}", sf.fmt_with("t"), mult)),
        }
    }

    // classify each orbit (parallel; deterministic merge below)
    let mut fibers: Vec<FiberReport> = orbit_jobs
        .par_iter()
        .map(|(h, mult)| classify_orbit(&ctx, h, *mult))
        .collect::<Result<Vec<_>, _>>()?;

    // the fiber at infinity
    if ord_inf_disc > 0 {
        let cubic_inf = rc_inf.cubic.map(&RatField, |c| {
            RatFuncField
                .eval_at(c, &Rat::from_int(0))
                .expect("polynomial coefficient")
        });
        let s_ord = ord_or_none(&inv_inf.s.num, &s_var)?;
        let t_ord = ord_or_none(&inv_inf.t.num, &s_var)?;
        let v = Valuations { disc: ord_inf_disc, s: s_ord, t: t_ord };
        let vt = valuation_type(&v)?;
        let (gt, analysis) = classify_kodaira(&cubic_inf)?;
        if gt != vt {
            return Err(FibrationError::TaxonomyViolation(format!(
                "valuation route says {vt}, geometry says {gt} at infinity"
            )));
        }
        let tri_inf = trisection_coeffs(&rc_inf.cubic);
        let tri_at: [Rat; 4] = [
            RatFuncField.eval_at(&tri_inf[0], &Rat::from_int(0)).map_err(FibrationError::Algebra)?,
            RatFuncField.eval_at(&tri_inf[1], &Rat::from_int(0)).map_err(FibrationError::Algebra)?,
            RatFuncField.eval_at(&tri_inf[2], &Rat::from_int(0)).map_err(FibrationError::Algebra)?,
            RatFuncField.eval_at(&tri_inf[3], &Rat::from_int(0)).map_err(FibrationError::Algebra)?,
        ];
        let profile = trisection_profile(&RatField, &tri_at)?;
        let transverse = profile.iter().all(|&m| m == 1);
        fibers.push(FiberReport {
            param: FiberParam::Infinity,
            orbit_size: 1,
            kodaira: vt,
            euler: vt.euler(),
            transverse_to_line: transverse,
            singular_points: analysis,
            trisection_profile: profile,
        });
    }

    fibers.sort_by(|a, b| {
        crate::fibration::pencil::param_sort_key(&a.param)
            .cmp(&crate::fibration::pencil::param_sort_key(&b.param))
    });

    let euler_total: u32 = fibers.iter().map(|f| f.euler * f.orbit_size).sum();
    let fiber_count: u32 = fibers.iter().map(|f| f.orbit_size).sum();

    if unresolved.is_empty() {
        if euler_total != 24 {
            return Err(FibrationError::EulerAuditFailed {
                got: euler_total as i64,
                unresolved: "none".into(),
            });
        }
        if fiber_count < 6 {
            return Err(FibrationError::TaxonomyViolation(format!(
                "only {fiber_count} singular fibers; at least 6 are required"
            )));
        }
        // cross-check: every fiber singular at a point of the line must be
        // non-transverse
        for f in &fibers {
            let singular_on_line = f
                .singular_points
                .orbits
                .iter()
                .any(|o| o.chart == "T=0,V=1" || o.chart == "[1,0,0]");
            if singular_on_line && f.transverse_to_line {
                return Err(FibrationError::TaxonomyViolation(format!(
                    "fiber at {} is singular on the line yet transverse",
                    f.param.fmt_pretty()
                )));
            }
        }
    }

    Ok(ScanReport { fibers, euler_total, fiber_count, unresolved })
}

fn ord_or_none(
    num: &UPoly<RatField>,
    factor: &UPoly<RatField>,
) -> Result<Option<u32>, FibrationError> {
    if num.is_zero() {
        return Ok(None);
    }
    Ok(Some(num.valuation(factor).map_err(FibrationError::Algebra)?))
}

fn classify_orbit(
    ctx: &ScanContext,
    h: &UPoly<RatField>,
    disc_ord: u32,
) -> Result<FiberReport, FibrationError> {
    let s_ord = ord_or_none(&ctx.s_num, h)?;
    let t_ord = ord_or_none(&ctx.t_num, h)?;
    debug_assert_eq!(ctx.disc_num.valuation(h).unwrap(), disc_ord);
    let v = Valuations { disc: disc_ord, s: s_ord, t: t_ord };
    let vt = valuation_type(&v)?;

    // geometric route over the orbit field
    let (param, gt, analysis, tri_profile) = if h.deg() == 1 {
        let root = RatField
            .div(&RatField.neg(&h.coeff(0)), &h.coeff(1))
            .map_err(FibrationError::Algebra)?;
        let cubic = ctx.cubic_t.map(&RatField, |c| {
            RatFuncField.eval_at(c, &root).expect("polynomial coefficient")
        });
        let (gt, analysis) = classify_kodaira(&cubic)?;
        let tri = trisection_coeffs(&cubic);
        let profile = trisection_profile(&RatField, &tri)?;
        (FiberParam::Rational(root), gt, analysis, profile)
    } else {
        let kf = ExtField::new(RatField, h.clone(), "t").map_err(FibrationError::Algebra)?;
        let cubic = ctx.cubic_t.map(&kf, |c| kf.from_poly(&c.num));
        let (gt, analysis) = classify_kodaira(&cubic)?;
        let tri = trisection_coeffs(&cubic);
        let profile = trisection_profile(&kf, &tri)?;
        (
            FiberParam::AlgebraicOrbit { minpoly: h.clone() },
            gt,
            analysis,
            profile,
        )
    };
    if gt != vt {
        return Err(FibrationError::TaxonomyViolation(format!(
            "valuation route says {vt}, geometry says {gt} at {}",
            param.fmt_pretty()
        )));
    }
    // transversality from the trisection discriminant
    let transverse = ctx.tri_disc.valuation(h).map_err(FibrationError::Algebra)? == 0;
    debug_assert_eq!(transverse, tri_profile.iter().all(|&m| m == 1));
    Ok(FiberReport {
        param,
        orbit_size: h.deg() as u32,
        kodaira: vt,
        euler: vt.euler(),
        transverse_to_line: transverse,
        singular_points: analysis,
        trisection_profile: tri_profile,
    })
}

/// Multiplicity profile of a binary cubic (the trisection divisor):
/// [1,1,1], [2,1] or [3], derived from gcd degrees and the degree drop.
fn trisection_profile<F: Field>(
    ring: &F,
    co: &[F::Elem; 4],
) -> Result<Vec<u32>, FibrationError> {
    let f = UPoly::new(
        ring.clone(),
        vec![co[3].clone(), co[2].clone(), co[1].clone(), co[0].clone()],
    );
    if f.is_zero() {
        return Err(FibrationError::TrisectionDegenerate);
    }
    let inf_mult = 3 - f.degree().unwrap_or(0) as u32; // multiplicity of [1:0]
    let mut profile: Vec<u32> = Vec::new();
    if inf_mult > 0 {
        profile.push(inf_mult);
    }
    if f.deg() > 0 {
        // finite multiplicities from the squarefree decomposition
        for (g, m) in f.squarefree_decomposition().map_err(FibrationError::Algebra)? {
            for _ in 0..g.deg() {
                profile.push(m);
            }
        }
    }
    profile.sort_unstable_by(|a, b| b.cmp(a));
    debug_assert_eq!(profile.iter().sum::<u32>(), 3);
    Ok(profile)
}

//! Serializable report structures for every pipeline product. All maps
//! are ordered and all numbers that must stay exact travel as strings, so
//! reports are byte-stable across runs and thread counts.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::cubiclaw::classify::{LocalSingularityType, SingularAnalysis};
use crate::exactalg::ring::Ring;
use crate::fibration::pencil::{BranchReport, FiberParamDesc, ResidualCubic};
use crate::fibration::scan::ScanReport;
use crate::fibration::surface::{QuarticSurfaceWithLine, SmoothnessCertificate};
use crate::lattice::gram::{GramMatrix, GramVerdict};
use crate::lattice::schubert::SchubertClass;
use crate::monodromy::{CaseVerdict, FixedTorsion};
use crate::pointgen::height::RatioRow;
use crate::pointgen::qr::GeneratedPoint;
use crate::pointgen::threefold::ConeTest;
use crate::exactalg::ratfunc::RatFuncField;
use crate::cubiclaw::cubic::CUBIC_MONOMIALS;

#[derive(Serialize, Clone, Debug)]
pub struct FiberParamJson {
    pub kind: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub minpoly: Option<String>,
    pub orbit_size: u32,
}

pub fn param_json(p: &FiberParamDesc) -> FiberParamJson {
    match p {
        FiberParamDesc::Rational(r) => FiberParamJson {
            kind: "rational",
            value: Some(r.to_string()),
            minpoly: None,
            orbit_size: 1,
        },
        FiberParamDesc::Infinity => FiberParamJson {
            kind: "infinity",
            value: None,
            minpoly: None,
            orbit_size: 1,
        },
        FiberParamDesc::AlgebraicOrbit { minpoly } => FiberParamJson {
            kind: "algebraic_orbit",
            value: None,
            minpoly: Some(minpoly.fmt_with("t")),
            orbit_size: minpoly.deg() as u32,
        },
    }
}

#[derive(Serialize, Clone, Debug)]
pub struct SingularOrbitJson {
    pub chart: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_coordinate_minpoly: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub second_coordinate_minpoly: Option<String>,
    pub count: u32,
    pub local_type: &'static str,
}

pub fn singular_orbits_json(a: &SingularAnalysis) -> Vec<SingularOrbitJson> {
    a.orbits
        .iter()
        .map(|o| SingularOrbitJson {
            chart: o.chart,
            first_coordinate_minpoly: o.first_minpoly.clone(),
            second_coordinate_minpoly: o.second_minpoly.clone(),
            count: o.count,
            local_type: o.local_type.tag(),
        })
        .collect()
}

#[derive(Serialize, Clone, Debug)]
pub struct FiberJson {
    pub param: FiberParamJson,
    pub kodaira: String,
    pub euler: u32,
    pub transverse_to_line: bool,
    pub singular_points_per_fiber: u32,
    pub singular_orbits: Vec<SingularOrbitJson>,
    pub trisection_profile: Vec<u32>,
}

#[derive(Serialize, Clone, Debug)]
pub struct CensusJson {
    pub fibers: Vec<FiberJson>,
    pub euler_total: u32,
    pub fiber_count: u32,
    pub transverse_count: u32,
    pub complete: bool,
    pub unresolved: Vec<String>,
}

pub fn census_json(r: &ScanReport) -> CensusJson {
    CensusJson {
        fibers: r
            .fibers
            .iter()
            .map(|f| FiberJson {
                param: param_json(&f.param),
                kodaira: f.kodaira.tag(),
                euler: f.euler,
                transverse_to_line: f.transverse_to_line,
                singular_points_per_fiber: f.singular_points.total_count(),
                singular_orbits: singular_orbits_json(&f.singular_points),
                trisection_profile: f.trisection_profile.clone(),
            })
            .collect(),
        euler_total: r.euler_total,
        fiber_count: r.fiber_count,
        transverse_count: r.transverse_count(),
        complete: r.is_complete(),
        unresolved: r.unresolved.clone(),
    }
}

#[derive(Serialize, Clone, Debug)]
pub struct BranchPointJson {
    pub param: FiberParamJson,
    pub weight: u32,
    pub profile: &'static str,
}

#[derive(Serialize, Clone, Debug)]
pub struct BranchJson {
    pub total: u32,
    pub points: Vec<BranchPointJson>,
}

pub fn branch_json(r: &BranchReport) -> BranchJson {
    BranchJson {
        total: r.total,
        points: r
            .points
            .iter()
            .map(|p| BranchPointJson {
                param: param_json(&p.param),
                weight: p.weight,
                profile: p.profile.tag(),
            })
            .collect(),
    }
}

/// The symbolic residual cubic: coefficient of each plane monomial as a
/// polynomial in the pencil parameter.
#[derive(Serialize, Clone, Debug)]
pub struct ResidualCubicJson {
    pub monomials: BTreeMap<String, String>,
    pub content_scalar: String,
}

pub fn residual_json(rc: &ResidualCubic<RatFuncField>) -> ResidualCubicJson {
    let k = RatFuncField;
    let mut monomials = BTreeMap::new();
    for (m, c) in CUBIC_MONOMIALS.iter().zip(&rc.cubic.coeffs) {
        if k.is_zero(c) {
            continue;
        }
        let name = monomial_name(m);
        monomials.insert(name, k.fmt_elem(c));
    }
    ResidualCubicJson { monomials, content_scalar: k.fmt_elem(&rc.scalar) }
}

fn monomial_name(m: &[u32; 3]) -> String {
    let names = ["U", "V", "T"];
    let mut parts = Vec::new();
    for (i, &e) in m.iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(names[i].to_string()),
            _ => parts.push(format!("{}^{}", names[i], e)),
        }
    }
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

#[derive(Serialize, Clone, Debug)]
pub struct SurfaceJson {
    pub quartic: String,
    pub line: String,
    pub smoothness: String,
}

pub fn surface_json(s: &QuarticSurfaceWithLine) -> SurfaceJson {
    SurfaceJson {
        quartic: s.quartic.fmt_pretty(),
        line: s.line.fmt_pretty(),
        smoothness: match &s.certificate {
            SmoothnessCertificate::Certified => "certified".into(),
            SmoothnessCertificate::SampledOnly(r) => format!("sampled-only ({r})"),
        },
    }
}

#[derive(Serialize, Clone, Debug)]
pub struct GramJson {
    pub labels: Vec<String>,
    pub entries: Vec<Vec<String>>,
    pub det: String,
    pub independent: Option<bool>,
    pub constraint_flags: Vec<String>,
}

pub fn gram_json(g: &GramMatrix, at: Option<&[crate::exactalg::rat::Rat]>) -> GramJson {
    let det = match at {
        Some(values) => g.determinant.eval(values).to_string(),
        None => g.determinant.fmt_pretty(),
    };
    GramJson {
        labels: g.labels.clone(),
        entries: g
            .entries
            .iter()
            .map(|row| {
                row.iter()
                    .map(|e| match at {
                        Some(values) => e.eval(values).to_string(),
                        None => e.fmt_pretty(),
                    })
                    .collect()
            })
            .collect(),
        det,
        independent: match g.verdict {
            GramVerdict::Independent => Some(true),
            GramVerdict::Degenerate => Some(false),
            GramVerdict::Symbolic => None,
        },
        constraint_flags: g.constraint_flags.clone(),
    }
}

#[derive(Serialize, Clone, Debug)]
pub struct SchubertJson {
    pub n: u32,
    pub d: u32,
    pub class: BTreeMap<String, String>,
    pub codim: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fano_curve_degree: Option<String>,
}

pub fn schubert_json(n: u32, d: u32, cls: &SchubertClass, fano: Option<String>) -> SchubertJson {
    let mut class = BTreeMap::new();
    for (&(a, b), v) in &cls.coeffs {
        class.insert(format!("{a},{b}"), v.to_string());
    }
    SchubertJson { n, d, class, codim: cls.pure_codim(), fano_curve_degree: fano }
}

#[derive(Serialize, Clone, Debug)]
pub struct FixedTorsionJson {
    pub kodaira: String,
    pub m: u64,
    pub order: u64,
    pub generators: Vec<Vec<u64>>,
    pub fixed_primitive: Vec<Vec<u64>>,
}

pub fn fixed_torsion_json(ty: &str, f: &FixedTorsion) -> FixedTorsionJson {
    FixedTorsionJson {
        kodaira: ty.to_string(),
        m: f.m,
        order: f.order,
        generators: f.generators.iter().map(|&(a, b)| vec![a, b]).collect(),
        fixed_primitive: f.fixed_primitive.iter().map(|&(a, b)| vec![a, b]).collect(),
    }
}

#[derive(Serialize, Clone, Debug)]
pub struct CaseVerdictJson {
    pub m: u64,
    pub allowed_transverse_types: Vec<String>,
    pub required_nontransverse_types: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub min_i2_count: Option<u32>,
    pub min_lines_meeting_l: u32,
    pub euler_equation_solvable: bool,
}

pub fn case_verdict_json(v: &CaseVerdict) -> CaseVerdictJson {
    CaseVerdictJson {
        m: v.m,
        allowed_transverse_types: v
            .allowed_transverse_types
            .iter()
            .map(|t| t.tag())
            .collect(),
        required_nontransverse_types: v
            .required_nontransverse_types
            .iter()
            .map(|t| t.tag())
            .collect(),
        min_i2_count: v.min_i2_count,
        min_lines_meeting_l: v.min_lines_meeting_l,
        euler_equation_solvable: v.euler_equation_solvable,
    }
}

#[derive(Serialize, Clone, Debug)]
pub struct GeneratedPointJson {
    pub kind: &'static str,
    pub index: u32,
    pub fiber_param: String,
    pub point: Vec<String>,
    pub max_abs_coord: String,
    pub height_log: f64,
}

pub fn generated_point_json(g: &GeneratedPoint) -> GeneratedPointJson {
    GeneratedPointJson {
        kind: g.kind.tag(),
        index: g.index,
        fiber_param: g.fiber_param.to_string(),
        point: g.ambient.0.iter().map(|c| c.to_string()).collect(),
        max_abs_coord: g.max_abs_coord.to_string(),
        height_log: g.height_log,
    }
}

#[derive(Serialize, Clone, Debug)]
pub struct RatioRowJson {
    pub base: Vec<String>,
    pub h_base: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub h_section: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ratio: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

pub fn ratio_row_json(r: &RatioRow) -> RatioRowJson {
    RatioRowJson {
        base: vec![r.base.0.to_string(), r.base.1.to_string()],
        h_base: r.h_base,
        h_section: r.h_section,
        ratio: r.ratio,
        note: r.note.clone(),
    }
}

#[derive(Serialize, Clone, Debug)]
pub struct ConeJson {
    pub is_cone: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub base_smooth: Option<bool>,
}

pub fn cone_json(c: &ConeTest) -> ConeJson {
    ConeJson { is_cone: c.is_cone, base_smooth: c.base_smooth }
}

#[derive(Serialize, Clone, Debug)]
pub struct TwoTorsionJson {
    pub verdict: bool,
    pub intersection_point: Vec<String>,
    pub intersection_on_curve: bool,
    pub specialization_orders: Vec<u32>,
}

/// One place that knows the tags, so reports never leak enum debug forms.
pub fn local_type_tag(t: LocalSingularityType) -> &'static str {
    t.tag()
}

/// Deterministic serialization: `serde_json::to_string_pretty` over these
/// structures, then one trailing newline.
pub fn to_json_string<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serialization");
    s.push('\n');
    s
}

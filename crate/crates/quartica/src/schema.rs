//! The JSON input schema shared by the library and the command line.
//!
//! Coefficients and coordinates cross the I/O boundary as decimal strings
//! ("p" or "p/q") so exactness survives serialization. A surface document
//! looks like
//!
//! ```json
//! {
//!   "surface": {"vars": ["X","Y","Z","W"],
//!                "terms": [{"exp": [4,0,0,0], "coeff": "1"}]},
//!   "line": {"points": [["1","1","0","0"], ["0","0","1","1"]]}
//! }
//! ```
//!
//! with optional `threefold`, `hyperplane` and `aux_lines` members for the
//! slice and three-lines payloads.

use serde::{Deserialize, Serialize};

use crate::error::{ErrorCode, FibrationError, GeomError};
use crate::exactalg::mpoly::{MPoly, VarList};
use crate::exactalg::rat::{Rat, RatField};
use crate::fibration::surface::QuarticSurfaceWithLine;
use crate::pointgen::threefold::SpaceLine;
use crate::pointgen::threelines::ThreeLineConfig;
use crate::projgeom::line::LineInP3;
use crate::projgeom::point::ProjPoint;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FormJson {
    pub vars: Vec<String>,
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TermJson {
    pub exp: Vec<u32>,
    pub coeff: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LineJson {
    pub points: Vec<Vec<String>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AuxLinesJson {
    pub q: LineJson,
    pub r: LineJson,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct InputDoc {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub surface: Option<FormJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub line: Option<LineJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub threefold: Option<FormJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hyperplane: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub aux_lines: Option<AuxLinesJson>,
}

/// A schema-level failure with its machine-readable code.
#[derive(Debug, Clone)]
pub struct SchemaError {
    pub code: ErrorCode,
    pub message: String,
}

impl std::fmt::Display for SchemaError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}: {}", self.code.as_str(), self.message)
    }
}

impl std::error::Error for SchemaError {}

fn bad(message: impl Into<String>) -> SchemaError {
    SchemaError { code: ErrorCode::BadSchema, message: message.into() }
}

pub fn parse_form(form: &FormJson, expect_vars: usize) -> Result<MPoly<RatField>, SchemaError> {
    if form.vars.len() != expect_vars {
        return Err(bad(format!(
            "expected {expect_vars} variables, got {}",
            form.vars.len()
        )));
    }
    let vars: VarList = std::sync::Arc::new(form.vars.clone());
    let mut poly = MPoly::zero(RatField, vars.clone());
    for term in &form.terms {
        if term.exp.len() != expect_vars {
            return Err(bad(format!(
                "exponent vector {:?} has wrong length",
                term.exp
            )));
        }
        let coeff = Rat::parse(&term.coeff).map_err(|e| bad(e.to_string()))?;
        poly = poly.add(&MPoly::monomial(RatField, vars.clone(), term.exp.clone(), coeff));
    }
    Ok(poly)
}

fn parse_point(coords: &[String], expect_len: usize) -> Result<Vec<Rat>, SchemaError> {
    if coords.len() != expect_len {
        return Err(bad(format!("point must have {expect_len} coordinates")));
    }
    coords
        .iter()
        .map(|c| Rat::parse(c).map_err(|e| bad(e.to_string())))
        .collect()
}

pub fn parse_line(line: &LineJson) -> Result<LineInP3, SchemaError> {
    if line.points.len() != 2 {
        return Err(bad("a line needs exactly two span points"));
    }
    let p1 = parse_point(&line.points[0], 4)?;
    let p2 = parse_point(&line.points[1], 4)?;
    let p1 = ProjPoint::new(RatField, p1).map_err(|e| bad(e.to_string()))?;
    let p2 = ProjPoint::new(RatField, p2).map_err(|e| bad(e.to_string()))?;
    LineInP3::new(p1, p2).map_err(|e| bad(e.to_string()))
}

fn lift_fibration_error(e: FibrationError) -> SchemaError {
    let code = match &e {
        FibrationError::Geom(GeomError::LineNotOnSurface) => ErrorCode::LineNotOnSurface,
        FibrationError::SurfaceSingular(_) => ErrorCode::SurfaceSingular,
        _ => ErrorCode::BadSchema,
    };
    SchemaError { code, message: e.to_string() }
}

/// Parse and validate a surface document: schema, line containment and the
/// smoothness certificate all run here, each with a distinct error code.
pub fn parse_surface(doc: &InputDoc) -> Result<QuarticSurfaceWithLine, SchemaError> {
    let form = doc.surface.as_ref().ok_or_else(|| bad("missing \"surface\""))?;
    let line = doc.line.as_ref().ok_or_else(|| bad("missing \"line\""))?;
    let quartic = parse_form(form, 4)?;
    let line = parse_line(line)?;
    QuarticSurfaceWithLine::new(quartic, line).map_err(lift_fibration_error)
}

/// Parse a three-lines document: the surface plus the two auxiliary lines.
pub fn parse_three_lines(doc: &InputDoc) -> Result<ThreeLineConfig, SchemaError> {
    let surface = parse_surface(doc)?;
    let aux = doc.aux_lines.as_ref().ok_or_else(|| bad("missing \"aux_lines\""))?;
    let lq = parse_line(&aux.q)?;
    let lr = parse_line(&aux.r)?;
    ThreeLineConfig::new(surface, lq, lr)
        .map_err(|e| SchemaError { code: ErrorCode::BadSchema, message: e.to_string() })
}

/// Parse a threefold document: the quartic form in five variables, a line
/// and the slicing hyperplane.
pub fn parse_threefold(
    doc: &InputDoc,
) -> Result<(MPoly<RatField>, SpaceLine, Vec<Rat>), SchemaError> {
    let form = doc
        .threefold
        .as_ref()
        .ok_or_else(|| bad("missing \"threefold\""))?;
    let line = doc.line.as_ref().ok_or_else(|| bad("missing \"line\""))?;
    let hp = doc
        .hyperplane
        .as_ref()
        .ok_or_else(|| bad("missing \"hyperplane\""))?;
    let threefold = parse_form(form, 5)?;
    if line.points.len() != 2 {
        return Err(bad("a line needs exactly two span points"));
    }
    let p1 = parse_point(&line.points[0], 5)?;
    let p2 = parse_point(&line.points[1], 5)?;
    let space_line = SpaceLine::new(p1, p2).map_err(|e| bad(e.to_string()))?;
    let hyperplane = parse_point(hp, 5)?;
    Ok((threefold, space_line, hyperplane))
}

/// Serialize a rational polynomial back into schema form.
pub fn form_to_json(poly: &MPoly<RatField>) -> FormJson {
    FormJson {
        vars: poly.vars.to_vec(),
        terms: poly
            .terms
            .iter()
            .rev()
            .map(|(e, c)| TermJson { exp: e.clone(), coeff: c.to_string() })
            .collect(),
    }
}

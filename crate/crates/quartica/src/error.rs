//! Error types shared across the crate.
//!
//! Every error carries a stable machine-readable code (see [`ErrorCode`])
//! so the CLI can surface failures without leaking internal formatting.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AlgebraError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("element is not invertible; gcd witness: {witness}")]
    NotInvertible { witness: String },
    #[error("zero polynomial has no discriminant")]
    ZeroPolynomial,
    #[error("incompatible variable lists: {0} vs {1}")]
    VariableMismatch(String, String),
    #[error("exact division failed: {0}")]
    InexactDivision(String),
    #[error("degree {0} exceeds the desk factorization bound {1}; factor manually")]
    DegreeAboveDeskBound(u32, u32),
    #[error("desk factorization gave up: {0}")]
    FactorSearchExhausted(String),
    #[error("modulus must be squarefree: gcd(m, m') = {0}")]
    ModulusNotSquarefree(String),
    #[error("{0}")]
    Precondition(String),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeomError {
    #[error("point does not lie on the hypersurface")]
    PointNotOnVariety,
    #[error("singular point: the gradient vanishes")]
    SingularPoint,
    #[error("form must be homogeneous")]
    NotHomogeneous,
    #[error("the two span points coincide")]
    DegenerateLine,
    #[error("line is not contained in the surface")]
    LineNotOnSurface,
    #[error("plane does not contain the line")]
    PlaneMissesLine,
    #[error("{0}")]
    Precondition(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FibrationError {
    #[error("surface fails the smoothness certificate: {0}")]
    SurfaceSingular(String),
    #[error("restriction is not divisible by the line form; line not on surface")]
    ResidualNotDivisible,
    #[error("trisection form vanishes identically: line is a fiber component")]
    TrisectionDegenerate,
    #[error("discriminant of the pencil vanishes identically")]
    PencilDegenerate,
    #[error("euler audit failed: classified {got} of 24; unresolved: {unresolved}")]
    EulerAuditFailed { got: i64, unresolved: String },
    #[error("fiber parameters outside desk factorization range: {0}")]
    UnresolvedFactors(String),
    #[error("fiber is singular at the base point")]
    FiberSingularAtBasePoint,
    #[error("kodaira taxonomy violated: {0}")]
    TaxonomyViolation(String),
    #[error("non-reduced cubic")]
    NonReducedCubic,
    #[error("{0}")]
    Precondition(String),
    #[error(transparent)]
    Geom(#[from] GeomError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PointGenError {
    #[error("base point class is torsion of order {order}; generator refuses to run")]
    TorsionObstruction { order: u32 },
    #[error("torsion appeared mid-run at index {index}; this indicates a bug")]
    TorsionMidRun { index: u32 },
    #[error("fiber skipped: section difference is torsion of order {order}")]
    FiberSkipped { order: u32 },
    #[error("slice is singular; choose a different 3-plane")]
    SliceSingular,
    #[error("3-plane does not contain the line")]
    HyperplaneMissesLine,
    #[error("{0}")]
    Precondition(String),
    #[error(transparent)]
    Fibration(#[from] FibrationError),
    #[error(transparent)]
    Geom(#[from] GeomError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Stable machine-readable codes for the CLI boundary.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum ErrorCode {
    BadSchema,
    LineNotOnSurface,
    SurfaceSingular,
    TorsionObstruction,
    FiberSingularAtBasePoint,
    UnresolvedFactors,
    SliceSingular,
    BadArguments,
    InternalError,
}

impl ErrorCode {
    pub fn as_str(self) -> &'static str {
        match self {
            ErrorCode::BadSchema => "BAD_SCHEMA",
            ErrorCode::LineNotOnSurface => "LINE_NOT_ON_SURFACE",
            ErrorCode::SurfaceSingular => "SURFACE_SINGULAR",
            ErrorCode::TorsionObstruction => "TORSION_OBSTRUCTION",
            ErrorCode::FiberSingularAtBasePoint => "FIBER_SINGULAR_AT_BASE_POINT",
            ErrorCode::UnresolvedFactors => "UNRESOLVED_FACTORS",
            ErrorCode::SliceSingular => "SLICE_SINGULAR",
            ErrorCode::BadArguments => "BAD_ARGUMENTS",
            ErrorCode::InternalError => "INTERNAL_ERROR",
        }
    }
}

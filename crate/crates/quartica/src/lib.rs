//! Exact-arithmetic engine for elliptic fibrations on quartic surfaces.
//!
//! Given a smooth quartic surface in P^3 together with a line it contains,
//! this crate builds the elliptic fibration defined by the pencil of planes
//! through the line, classifies its singular fibers with an Euler audit,
//! runs the chord–tangent group law on the residual plane cubics, checks
//! the torsion relations that obstruct rational-point generation, and
//! produces unbounded families of rational points when no obstruction is
//! present. Side chambers cover the local monodromy tables on torsion
//! points, intersection-form bookkeeping, Schubert-calculus line counts on
//! hypersurfaces, and hyperplane slicing of quartic threefolds.
//!
//! Everything is exact: rationals, polynomials over Q and Q(t), and simple
//! ring extensions of either. No floating point enters any computation;
//! logarithmic heights are exposed as floats for display only.

pub mod cubiclaw;
pub mod error;
pub mod fermat;
pub mod exactalg;
pub mod fibration;
pub mod lattice;
pub mod monodromy;
pub mod pointgen;
pub mod projgeom;
pub mod report;
pub mod schema;

pub use error::{AlgebraError, ErrorCode, FibrationError, GeomError, PointGenError};
pub use exactalg::{ExtField, Field, MPoly, Rat, RatField, RatFuncField, Ring, UPoly};

//! Exact arithmetic kernel: rationals, univariate and multivariate
//! polynomials, rational functions and simple ring extensions.

pub mod ext;
pub mod gf;
pub mod factor;
pub mod linalg;
pub mod mpoly;
pub mod rat;
pub mod ratfunc;
pub mod ring;
pub mod upoly;

pub use ext::ExtField;
pub use factor::{factor_desk, primitive_int_poly, rational_roots, Factorization, DESK_DEGREE_BOUND};
pub use mpoly::{vars, MPoly, VarList};
pub use rat::{Rat, RatField};
pub use ratfunc::{RatFuncElem, RatFuncField};
pub use ring::{Field, Ring};
pub use upoly::UPoly;

//! Projective primitives: points, lines in P^3, the pencil of planes
//! through a line, restriction of forms to planes, tangent planes.

pub mod line;
pub mod plane;
pub mod point;

pub use line::LineInP3;
pub use plane::{pencil_plane, restrict_form, tangent_plane_dual, PlaneParam, P1};
pub use point::{IntPoint, ProjPoint};

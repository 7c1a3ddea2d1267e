//! The elliptic fibration of a quartic surface with a line: residual
//! cubics, trisection divisors, branch loci, the singular fiber census.

pub mod pencil;
pub mod scan;
pub mod surface;

pub use pencil::{
    branch_analysis, fiber_at_line_point, residual_cubic_at, residual_cubic_symbolic,
    trisection_at, BranchPoint, BranchReport, FiberAtPoint, FiberParamDesc,
    RamificationProfile, ResidualCubic,
};
pub use scan::{singular_fiber_scan, FiberParam, FiberReport, ScanReport};
pub use surface::{
    fermat_line, fermat_quartic, fermat_surface, full_smoothness_check, line_on_surface,
    QuarticSurfaceWithLine, SmoothnessCertificate,
};

//! Rational-point generation on the fibration, naive heights, and the
//! hyperplane-slice reductions from quartic threefolds.

pub mod height;
pub mod qr;
pub mod threefold;
pub mod threelines;

pub use height::{height_ratio_experiment, naive_height, naive_height_exact, RatioRow};
pub use qr::{
    qr_sequence, torsion_precheck, verify_qr_relations, GeneratedKind, GeneratedPoint,
    TorsionVerdict, DEFAULT_TORSION_BOUND,
};
pub use threefold::{cone_test, slice_threefold, ConeTest, SpaceLine};
pub use threelines::{three_lines_sequence, ThreeLineConfig};

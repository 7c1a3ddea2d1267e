//! Plane cubic machinery: invariants, the chord-tangent group law,
//! divisor-class reduction, torsion and flex tests, Kodaira
//! classification of singular cubics.

pub mod classify;
pub mod cubic;
pub mod invariants;
pub mod law;

pub use classify::{classify_kodaira, KodairaType, LocalSingularityType};
pub use cubic::{cubic_vars, TernaryCubic, CUBIC_MONOMIALS};
pub use invariants::{aronhold_invariants, cubic_discriminant, AronholdInvariants};
pub use law::{
    is_flex, third_intersection, two_torsion_tangent, CubicGroup, CubicPoint, DivisorClass,
};

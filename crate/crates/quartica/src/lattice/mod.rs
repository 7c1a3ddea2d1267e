//! Intersection-number bookkeeping and the line-count engine.

pub mod gram;
pub mod schubert;

pub use gram::{general_gram, pushpull_check, quartic_gram, GramMatrix, GramVerdict};
pub use schubert::{fano_curve_degree, line_count_class, SchubertClass};

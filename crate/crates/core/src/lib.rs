//! Vacuum-fluctuation model of the fine-structure constant and of
//! photon propagation-time dispersion.

// `!(x > 0.0)` is used on purpose so that NaN is rejected too
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod constants;
pub mod dispersion;
pub mod numerics;
pub mod report;
pub mod species;
pub mod statmech;
pub mod tolerances;
pub mod vacuum;

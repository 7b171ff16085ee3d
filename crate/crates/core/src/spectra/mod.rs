//! Weight distributions: enumeration, code transforms, MacWilliams duality,
//! power moments, and the closed forms of the three-weight family.

mod distribution;
mod enumerate;
mod macwilliams;
mod pless;
mod tables;
mod transform;

pub use distribution::WeightDistribution;
pub use enumerate::{
    enumerate_distribution, enumerate_distribution_with, fold_codewords, weight_histogram, Budget,
    Codeword, DEFAULT_BUDGET,
};
pub use macwilliams::{
    dual_closed_form, dual_closed_form_distribution, dual_weight4_count, krawtchouk_column,
    macwilliams_transform,
};
pub use pless::{moment_holds, moment_rhs, pless_solve, power_moment, solve_linear};
pub use tables::{predicted_punctured, predicted_shortened, predicted_three_weight};
pub use transform::{
    count_nonzero_on, count_nonzero_on_direct, nonzero_on_histogram, puncture, shorten, PositionSet,
};

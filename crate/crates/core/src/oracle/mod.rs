//! Brute-force references for checking the algorithms.

pub mod brute;
pub mod coverage;
pub mod grid;
pub mod suites;

pub use brute::{
    brute_force_k_cover, brute_force_k_packing_radius, brute_force_max_packing, brute_force_two_cover, BruteCover,
};
pub use coverage::sampled_coverage_gap;
pub use grid::{grid_distance, GridGraph};
pub use suites::{property_suites, PropertyResult, Suite, SuiteReport};

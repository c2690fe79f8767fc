//! Randomized property suites, brute-force oracles and parameter scans.
//!
//! Every trial draws from its own generator keyed by
//! `(seed, property, cell, trial)`, so results are reproducible regardless of
//! how trials are scheduled. See [`run_property_suite`].

mod oracle;
mod properties;
mod registry;
mod rng;
mod sampling;
mod scans;
mod suite;

pub use oracle::{
    brute_force_thm3_oracle, extremal_thm3_instance, thm3_oracle_without_extremes, ExtremalConstruction, ORACLE_MAX_N,
    ORACLE_MIN_STEPS,
};
pub use properties::{property, REGISTRY};
pub use registry::{Check, Dims, Measure, Orders, Property, Trial};
pub use rng::{substream, TrialRng};
pub use sampling::{
    random_unitary, sample_commuting_pair, sample_density, sample_density_any_rank, sample_distribution,
    sample_distribution_floored, sample_hermitian, sample_joint, sample_joint_mixed, sample_nearby_density, sample_positive,
};
pub use scans::{
    alpha_limit_scan, default_tau_grid, fannes_comparison_scan, pinsker_tightness_scan, LimitQuantity, ScanInput, Table,
};
pub use suite::{
    run_properties, run_property_suite, run_property_suite_with, PropertySummary, SamplerConfig, SuiteReport,
    ViolationRecord, MAX_GRID_ALPHA,
};

//! Finite-dimensional Hermitian linear algebra: validated operator types,
//! spectral calculus on supports, trace distance, Jordan projectors, the
//! pinching map and two-point coarse graining.

mod hermitian;
mod maps;
mod spectral;

pub use hermitian::{DensityOperator, HermitianOperator, PositiveOperator, HERMITIAN_TOL, POSITIVITY_TOL, TRACE_TOL};
pub use maps::{
    coarse_grain_two_point, hs_inner, jordan_projectors, pinched_diagonal, pinching_map, trace_distance_quantum,
    OrthoProjector, PinchingBasis, PROJECTOR_TOL,
};
pub use spectral::{eigendecompose, power_on_support, SpectralDecomposition};

/// Largest supported Hilbert-space dimension.
pub const MAX_DIM: usize = 64;

/// Eigenvalues at or below this fraction of the largest magnitude are treated as zero.
pub const OPERATOR_SUPPORT_CUTOFF: f64 = 1e-12;

/// Eigenvalues closer than this fraction of the largest magnitude share a projector.
pub const CLUSTER_TOL: f64 = 1e-9;

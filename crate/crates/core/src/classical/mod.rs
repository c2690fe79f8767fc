//! Classical distributions and every finite-alphabet entropy, divergence and
//! coupling the bounds are stated for.

mod coupling;
mod distribution;
mod divergence;
mod entropy;

pub use coupling::{maximal_coupling, minimal_probability, qbar_construction};
pub use distribution::{Distribution, JointDistribution, WeightSet, NORMALIZATION_TOL, SUPPORT_CUTOFF};
pub use divergence::{f_divergence, relative_entropy, renyi_rel_entropy, tsallis_rel_entropy, Generator};
pub use entropy::{
    conditional_tsallis_entropy, error_probability, joint_tsallis_entropy, renyi_entropy, trace_distance_classical,
    tsallis_entropy,
};

pub(crate) use divergence::{f_term, renyi_from_tsallis};
pub(crate) use entropy::{renyi_of, tsallis_of, weight_pow};

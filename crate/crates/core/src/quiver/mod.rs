//! Exact-rational computations on doubled-quiver representation data:
//! moment map, symplectic form, gauge action, stability, cokernel counts,
//! nilpotency, dimension identities, point samplers, and the vertex
//! shrink/extend moves.

pub mod adhm;
pub mod checks;
pub mod doubled;
pub mod moves;
pub mod ratmat;
pub mod sample;

pub use adhm::{
    dimension_identity, symplectic_form, ADHMDatum, DimensionIdentity, GradedDims, GroupElement,
    StabilityReport,
};
pub use checks::{free_action_checks, FreeActionReport};
pub use doubled::{Arrow, DoubledQuiver};
pub use moves::{extend_i, extend_kernel_dim, shrink_i, ExtendOutcome};
pub use ratmat::{Rat, RatMat};
pub use sample::sample_lagrangian_point;

//! Exact combinatorial models of highest-weight crystals together with
//! exact-rational linear algebra on doubled-quiver representation data.
//!
//! The crate has four layers:
//! - [`cartan`]: symmetric generalized Cartan matrices, weights, the Weyl
//!   group, and truncated character tables.
//! - [`crystal`]: the crystal interface, tensor products, graph extraction,
//!   axiom checks, and the highest-weight characterization verifier.
//! - [`binfinity`]: the string model of the big highest-weight-free crystal
//!   and guarded generation of the finite highest-weight crystals inside it.
//! - [`quiver`]: moment maps, stability, cokernel statistics, samplers, and
//!   vertex moves for quiver representation data over the rationals.

pub mod binfinity;
pub mod cartan;
pub mod crystal;
pub mod error;
pub mod quiver;

pub use cartan::{CartanDatum, CharacterTable, TypeClass, WeightVector, WeylElement};
pub use error::{Error, Result};

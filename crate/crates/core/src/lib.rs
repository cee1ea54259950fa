//! Exact finite models of the complete lattice of sub-σ-fields of a finite
//! probability space.
//!
//! Every σ-field on a finite space with strictly positive atom weights is the
//! σ-field generated by a partition of the atoms, so the lattice of
//! sub-σ-fields is the partition lattice ordered by refinement. On top of that
//! lattice the crate provides:
//!
//! * [`space`]: probability spaces with exact rational weights, events, products;
//! * [`lattice`]: σ-fields as canonical partitions, meet, join, liminf/limsup,
//!   enumeration and modularity/distributivity diagnostics;
//! * [`operator`]: conditional expectations as exact projection matrices,
//!   commutation, type-L₂ subspaces and a strong-operator distance;
//! * [`independence`]: independence of σ-fields, tensor factorization,
//!   the product-lattice embedding and the tensor-intersection identity;
//! * [`noise`]: noise-type Boolean algebras, their closure and completion;
//! * [`scenario`]: dyadic towers and the classical counterexamples;
//! * [`format`]: the scenario and algebra text formats;
//! * [`suite`]: the seeded randomized + exhaustive property suite.
//!
//! All pass/fail decisions are made with exact arithmetic. Floating point only
//! appears in operator distances reported for convergence experiments.

pub mod error;
pub mod format;
pub mod independence;
pub mod lattice;
pub mod linalg;
pub mod noise;
pub mod operator;
pub mod random;
pub mod rational;
pub mod report;
pub mod scenario;
pub mod space;
pub mod suite;

pub use error::{Error, Result};
pub use lattice::{FieldSequence, SigmaField};
pub use operator::{CondExp, Vector};
pub use rational::Rational;
pub use space::{Event, Space};

/// Seed used when neither a flag nor `SIGMA_LAB_SEED` provides one.
pub const DEFAULT_SEED: u64 = 42;

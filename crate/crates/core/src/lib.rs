//! A finite universe of EPR complexes.
//!
//! Complexes are simple graphs on subsets of a global object set, ordered by
//! the induced-subgraph relation. On top of that order the crate computes
//! automorphism groups, Laplacian mode bases with low-pass projection, seeded
//! decay chains of basis complexes, and entropy and expansion diagnostics
//! along those chains.

pub mod cosmology;
pub mod generators;
pub mod macrotime;
pub mod rng;
pub mod spectral;
pub mod symmetry;
pub mod universe;

pub use cosmology::{
    expansion_series, flatness_score, phase_distance, spread, CosmologyError, ExpansionReport,
    PhaseMetric,
};
pub use macrotime::{
    entropy_series, generate_chain, validate_chain, DecayChain, DecayPolicy, EntropyReport,
    MacrotimeError, Measure,
};
pub use spectral::{SpectralBasis, SpectralError, StateVector};
pub use symmetry::{automorphisms, PermGroup, Permutation, SymmetryError, SymmetryScore};
pub use universe::{leq, meet, Aspect, EprComplex, LowerBoundSet, ObjectId, UniverseError};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

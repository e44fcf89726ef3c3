//! Automorphism groups of complexes and related group machinery.

mod frucht;
mod perm;
mod search;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::universe::EprComplex;

pub use frucht::{
    cyclic_group, frucht_realize, product_of_cyclic, symmetric_group, FruchtRealization,
    DEFAULT_FRUCHT_LIMIT,
};
pub use perm::{group_order, orbits, PermGroup, Permutation, StabilizerChain};
pub use search::{automorphisms, brute_force_automorphisms, BRUTE_FORCE_LIMIT};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymmetryError {
    #[error("images {0:?} do not form a permutation")]
    NotABijection(Vec<u32>),
    #[error("generator of degree {found} in a group of degree {expected}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("{objects} objects exceed the brute-force limit of {limit}")]
    TooLargeForBruteForce { objects: usize, limit: usize },
    #[error("group of order {order} exceeds the limit of {limit}")]
    GroupTooLarge {
        order: num_bigint::BigUint,
        limit: usize,
    },
    #[error("symmetry score of an empty complex")]
    EmptyComplex,
}

/// Orbit statistics of a complex's automorphism group.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SymmetryScore {
    pub orbit_count: usize,
    /// `1 - (orbit_count - 1) / (|obj| - 1)`; `1.0` for a single object.
    pub transitivity_fraction: f64,
}

pub fn symmetry_score(e: &EprComplex) -> Result<SymmetryScore, SymmetryError> {
    let n = e.len();
    if n == 0 {
        return Err(SymmetryError::EmptyComplex);
    }
    let orbit_count = automorphisms(e).orbits().len();
    let transitivity_fraction = if n == 1 {
        1.0
    } else {
        1.0 - (orbit_count - 1) as f64 / (n - 1) as f64
    };
    Ok(SymmetryScore {
        orbit_count,
        transitivity_fraction,
    })
}

//! Distance and expansion diagnostics on decay chains.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::macrotime::{monotone_fraction, ChainSpectrum, DecayChain, MacrotimeError};
use crate::spectral::StateVector;
use crate::symmetry::{symmetry_score, SymmetryError};
use crate::universe::{distances_from, EprComplex, ObjectId, UniverseError};

/// States whose norm differs from one by more than this are rejected.
pub const NORMALIZATION_TOLERANCE: f64 = 1e-9;
/// Spreads at or below this count as zero when choosing the baseline.
pub const ZERO_SPREAD_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CosmologyError {
    #[error("carrier is not a cycle")]
    NotACycleCarrier,
    #[error("position {position} outside a cycle of {n}")]
    PositionOutOfRange { position: usize, n: usize },
    #[error("carrier is disconnected")]
    Disconnected,
    #[error("state norm {0} is not 1")]
    NotNormalized(f64),
    #[error("state does not live on the carrier")]
    CarrierMismatch,
    #[error(transparent)]
    Universe(#[from] UniverseError),
    #[error(transparent)]
    Macrotime(#[from] MacrotimeError),
    #[error(transparent)]
    Symmetry(#[from] SymmetryError),
}

/// Mean over `modes` of the wrapped phase gap `|2 pi k (o1 - o2) / n|` of
/// the Fourier modes of the cycle `C_n`, each gap in `[0, pi]`.
pub fn phase_distance(n: usize, modes: &[usize], o1: usize, o2: usize) -> Result<f64, CosmologyError> {
    if n < 3 {
        return Err(CosmologyError::NotACycleCarrier);
    }
    for position in [o1, o2] {
        if position >= n {
            return Err(CosmologyError::PositionOutOfRange { position, n });
        }
    }
    if modes.is_empty() {
        return Ok(0.0);
    }
    let diff = (o1 + n - o2) % n;
    let total: f64 = modes
        .iter()
        .map(|&k| {
            let r = (k % n) * diff % n;
            2.0 * PI * r.min(n - r) as f64 / n as f64
        })
        .sum();
    Ok(total / modes.len() as f64)
}

/// Length of `e` as a cycle, with the cyclic order of its objects starting
/// from the least object.
pub fn cycle_order(e: &EprComplex) -> Result<Vec<ObjectId>, CosmologyError> {
    let adj = e.adjacency();
    let n = adj.len();
    if n < 3 || adj.iter().any(|a| a.len() != 2) || !e.is_connected() {
        return Err(CosmologyError::NotACycleCarrier);
    }
    let mut order = vec![0usize];
    let mut prev = usize::MAX;
    let mut cur = 0;
    while order.len() < n {
        let next = if adj[cur][0] != prev { adj[cur][0] } else { adj[cur][1] };
        prev = cur;
        cur = next;
        order.push(cur);
    }
    Ok(order.into_iter().map(|i| e.objects()[i]).collect())
}

/// [`phase_distance`] on a complex that must be a cycle; positions are
/// read along [`cycle_order`].
pub fn phase_distance_on(
    e: &EprComplex,
    modes: &[usize],
    o1: ObjectId,
    o2: ObjectId,
) -> Result<f64, CosmologyError> {
    let order = cycle_order(e)?;
    let pos = |o: ObjectId| {
        order
            .iter()
            .position(|&x| x == o)
            .ok_or(UniverseError::ObjectNotInComplex(o))
    };
    phase_distance(order.len(), modes, pos(o1)?, pos(o2)?)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PhaseMetric {
    pub carrier: usize,
    pub mode_set: Vec<usize>,
    pub values: Vec<Vec<f64>>,
}

pub fn phase_metric(n: usize, modes: &[usize]) -> Result<PhaseMetric, CosmologyError> {
    let values = (0..n)
        .map(|i| (0..n).map(|j| phase_distance(n, modes, i, j)).collect())
        .collect::<Result<Vec<Vec<f64>>, _>>()?;
    Ok(PhaseMetric {
        carrier: n,
        mode_set: modes.to_vec(),
        values,
    })
}

/// Root-mean-square graph distance of the probability mass of `s` from
/// `center`.
pub fn spread(s: &StateVector, e: &EprComplex, center: ObjectId) -> Result<f64, CosmologyError> {
    if s.objects.as_slice() != e.objects() {
        return Err(CosmologyError::CarrierMismatch);
    }
    let norm = s.norm();
    if (norm - 1.0).abs() > NORMALIZATION_TOLERANCE {
        return Err(CosmologyError::NotNormalized(norm));
    }
    let dist = distances_from(e, center)?;
    let mut total = 0.0;
    for (a, d) in s.amplitudes.iter().zip(&dist) {
        let d = d.ok_or(CosmologyError::Disconnected)? as f64;
        total += a * a * d * d;
    }
    Ok(total.sqrt())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExpansionReport {
    pub cutoff_series: Vec<usize>,
    pub spread_series: Vec<f64>,
    pub expansion_factor_series: Vec<f64>,
    /// Set when `sigma_0 == 0` and the first nonzero spread is the baseline.
    pub baseline_shifted: bool,
    pub baseline: f64,
    /// Share of block-crossing steps (`K_{i+1} < K_i`) where the spread does
    /// not decrease.
    pub monotone_fraction: f64,
}

/// Mean spread of projected deltas at the surviving objects, per step.
pub fn expansion_series(c: &DecayChain) -> Result<ExpansionReport, CosmologyError> {
    let spectrum = ChainSpectrum::new(c)?;
    let carrier = spectrum.initial().clone();
    let mut cutoffs = Vec::with_capacity(c.len());
    let mut spreads = Vec::with_capacity(c.len());
    for i in 0..c.len() {
        cutoffs.push(spectrum.cutoff(i)?);
        spreads.push(spectrum.mean_over_survivors(i, |s, o| spread(s, &carrier, o))?);
    }

    let first = spreads.first().copied().unwrap_or(0.0);
    let (baseline, shifted) = if first > ZERO_SPREAD_TOLERANCE {
        (first, false)
    } else {
        let nonzero = spreads.iter().copied().find(|&s| s > ZERO_SPREAD_TOLERANCE);
        (nonzero.unwrap_or(0.0), true)
    };
    let factors = spreads
        .iter()
        .map(|&s| if baseline > 0.0 { s / baseline } else { 1.0 })
        .collect();
    let crossing: Vec<f64> = (1..spreads.len())
        .filter(|&i| cutoffs[i] < cutoffs[i - 1])
        .map(|i| spreads[i] - spreads[i - 1])
        .collect();
    Ok(ExpansionReport {
        monotone_fraction: monotone_fraction(&crossing),
        cutoff_series: cutoffs,
        spread_series: spreads,
        expansion_factor_series: factors,
        baseline_shifted: shifted,
        baseline,
    })
}

/// Vertex-transitivity fraction: `1.0` for a maximally homogeneous complex.
pub fn flatness_score(e: &EprComplex) -> Result<f64, CosmologyError> {
    Ok(symmetry_score(e)?.transitivity_fraction)
}

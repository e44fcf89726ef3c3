//! Macro-time as a strictly decreasing chain of basis complexes inside
//! evolving aspects, and entropy measures along the chain.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rng::seeded_rng;
use crate::spectral::{delta_state, lowpass_project, SpectralBasis, SpectralError, StateVector};
use crate::universe::{leq, Aspect, EprComplex, ObjectId};

/// Entropy deltas at or above `-MONOTONE_TOLERANCE` count as non-decreasing.
pub const MONOTONE_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MacrotimeError {
    #[error("invalid decay policy: {0}")]
    InvalidPolicy(&'static str),
    #[error("{removals} removals x {steps} steps exhaust a basis of {basis} objects")]
    PolicyExhaustsBasis {
        removals: usize,
        steps: usize,
        basis: usize,
    },
    #[error("initial basis is not below the initial aspect")]
    BasisNotBelowAspect,
    #[error("step {index} outside a chain of length {len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("initial basis is disconnected")]
    DisconnectedInitialBasis,
    #[error("basis at step {0} is empty")]
    EmptyBasis(usize),
    #[error("unknown entropy measure {0:?}")]
    UnknownMeasure(String),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
}

/// Seeded detachment model: each step removes a fixed number of basis objects.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecayPolicy {
    pub removals_per_step: usize,
    pub steps: usize,
    pub seed: u64,
    /// Reattach each cut connection of a removed object to a random object
    /// outside the surviving basis.
    pub rewire_to_matter: bool,
}

impl DecayPolicy {
    pub fn new(removals_per_step: usize, steps: usize, seed: u64) -> Self {
        DecayPolicy {
            removals_per_step,
            steps,
            seed,
            rewire_to_matter: false,
        }
    }

    pub fn validate(&self, basis_size: usize) -> Result<(), MacrotimeError> {
        if self.removals_per_step == 0 {
            return Err(MacrotimeError::InvalidPolicy("removals_per_step must be at least 1"));
        }
        if self.steps == 0 {
            return Err(MacrotimeError::InvalidPolicy("steps must be at least 1"));
        }
        match self.removals_per_step.checked_mul(self.steps) {
            Some(total) if total < basis_size => Ok(()),
            _ => Err(MacrotimeError::PolicyExhaustsBasis {
                removals: self.removals_per_step,
                steps: self.steps,
                basis: basis_size,
            }),
        }
    }
}

/// Ambient aspects `A(t_0..t_J)` and basis complexes `E_M(t_0..t_J)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecayChain {
    pub ambient_aspects: Vec<Aspect>,
    pub basis_complexes: Vec<EprComplex>,
    /// `removed[i]` lists the objects detached between steps `i` and `i + 1`.
    pub removed: Vec<Vec<ObjectId>>,
    pub seed: u64,
}

impl DecayChain {
    /// Assembles a chain without checking it; see [`validate_chain`].
    pub fn from_parts(ambient_aspects: Vec<Aspect>, basis_complexes: Vec<EprComplex>, seed: u64) -> Self {
        let removed = basis_complexes
            .windows(2)
            .map(|w| {
                w[0].objects()
                    .iter()
                    .copied()
                    .filter(|&o| !w[1].contains(o))
                    .collect()
            })
            .collect();
        DecayChain {
            ambient_aspects,
            basis_complexes,
            removed,
            seed,
        }
    }

    pub fn len(&self) -> usize {
        self.basis_complexes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis_complexes.is_empty()
    }

    pub fn basis_sizes(&self) -> Vec<usize> {
        self.basis_complexes.iter().map(EprComplex::len).collect()
    }

    fn check_index(&self, index: usize) -> Result<(), MacrotimeError> {
        if index < self.len() {
            Ok(())
        } else {
            Err(MacrotimeError::IndexOutOfRange {
                index,
                len: self.len(),
            })
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("chain serializes")
    }
}

/// Runs the seeded decay. At each step `removals_per_step` basis objects are
/// drawn by a partial Fisher–Yates shuffle of the ascending survivor list,
/// and their connections to the surviving basis are cut from the aspect.
pub fn generate_chain(
    e0: &EprComplex,
    a0: &Aspect,
    policy: &DecayPolicy,
) -> Result<DecayChain, MacrotimeError> {
    policy.validate(e0.len())?;
    if !leq(e0, a0) {
        return Err(MacrotimeError::BasisNotBelowAspect);
    }
    let mut rng = seeded_rng(policy.seed);
    let n_phi = a0.n_phi();
    let universe: Vec<ObjectId> = a0.objects().to_vec();
    let mut edges: BTreeSet<(ObjectId, ObjectId)> = a0.edges().iter().copied().collect();
    let mut basis: Vec<ObjectId> = e0.objects().to_vec();

    let mut aspects = vec![a0.clone()];
    let mut bases = vec![e0.clone()];
    let mut removed_log = Vec::with_capacity(policy.steps);

    for _ in 0..policy.steps {
        let mut pool = basis.clone();
        for j in 0..policy.removals_per_step {
            let pick = rng.random_range(j..pool.len());
            pool.swap(j, pick);
        }
        let mut removed = pool[..policy.removals_per_step].to_vec();
        removed.sort_unstable();
        basis.retain(|o| removed.binary_search(o).is_err());

        let is_survivor = |o: &ObjectId| basis.binary_search(o).is_ok();
        let is_removed = |o: &ObjectId| removed.binary_search(o).is_ok();
        let cut: Vec<(ObjectId, ObjectId)> = edges
            .iter()
            .copied()
            .filter(|(a, b)| (is_removed(a) && is_survivor(b)) || (is_survivor(a) && is_removed(b)))
            .collect();
        for e in &cut {
            edges.remove(e);
        }
        if policy.rewire_to_matter {
            for &(a, b) in &cut {
                let r = if is_removed(&a) { a } else { b };
                let candidates: Vec<ObjectId> = universe
                    .iter()
                    .copied()
                    .filter(|&m| m != r && !is_survivor(&m) && !edges.contains(&(r.min(m), r.max(m))))
                    .collect();
                if !candidates.is_empty() {
                    let m = candidates[rng.random_range(0..candidates.len())];
                    edges.insert((r.min(m), r.max(m)));
                }
            }
        }

        let aspect = Aspect::new(EprComplex::from_sorted_unchecked(
            n_phi,
            universe.clone(),
            edges.iter().copied().collect(),
        ))
        .expect("covers the universe");
        let next = aspect.induced(&basis).expect("survivors lie in the universe");
        aspects.push(aspect);
        bases.push(next);
        removed_log.push(removed);
    }

    Ok(DecayChain {
        ambient_aspects: aspects,
        basis_complexes: bases,
        removed: removed_log,
        seed: policy.seed,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ViolationKind {
    /// Aspect and basis lists differ in length.
    LengthMismatch,
    NotStrictlyDecreasing,
    /// The basis is not an induced subcomplex of its predecessor.
    NotInducedSubcomplex,
    BasisNotBelowAspect,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainViolation {
    pub index: usize,
    pub kind: ViolationKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainValidation {
    pub violations: Vec<ChainViolation>,
}

impl ChainValidation {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn validate_chain(c: &DecayChain) -> ChainValidation {
    let mut violations = Vec::new();
    let mut flag = |index, kind| violations.push(ChainViolation { index, kind });
    if c.ambient_aspects.len() != c.basis_complexes.len() {
        flag(
            c.ambient_aspects.len().min(c.basis_complexes.len()),
            ViolationKind::LengthMismatch,
        );
    }
    for (i, basis) in c.basis_complexes.iter().enumerate() {
        if i > 0 {
            let prev = &c.basis_complexes[i - 1];
            if basis.len() >= prev.len() {
                flag(i, ViolationKind::NotStrictlyDecreasing);
            }
            if !leq(basis, prev) {
                flag(i, ViolationKind::NotInducedSubcomplex);
            }
        }
        if let Some(aspect) = c.ambient_aspects.get(i) {
            if !leq(basis, aspect) {
                flag(i, ViolationKind::BasisNotBelowAspect);
            }
        }
    }
    ChainValidation { violations }
}

/// Whether `f` is below the ambient aspect at step `i`.
pub fn exists_at(f: &EprComplex, c: &DecayChain, i: usize) -> Result<bool, MacrotimeError> {
    if i >= c.ambient_aspects.len() {
        return Err(MacrotimeError::IndexOutOfRange {
            index: i,
            len: c.ambient_aspects.len(),
        });
    }
    Ok(leq(f, &c.ambient_aspects[i]))
}

/// `log2(|E_M(t_0)| / |E_M(t_i)|)`.
pub fn resolution_entropy(c: &DecayChain, i: usize) -> Result<f64, MacrotimeError> {
    c.check_index(i)?;
    let initial = c.basis_complexes[0].len();
    let surviving = c.basis_complexes[i].len();
    if surviving == 0 {
        return Err(MacrotimeError::EmptyBasis(i));
    }
    Ok((initial as f64 / surviving as f64).log2())
}

/// The spectral basis of a chain's initial complex, shared by the diffusion
/// and spread measures.
#[derive(Debug, Clone)]
pub struct ChainSpectrum<'a> {
    chain: &'a DecayChain,
    basis: SpectralBasis,
}

impl<'a> ChainSpectrum<'a> {
    pub fn new(chain: &'a DecayChain) -> Result<Self, MacrotimeError> {
        let initial = chain
            .basis_complexes
            .first()
            .ok_or(MacrotimeError::EmptyBasis(0))?;
        if !initial.is_connected() {
            return Err(MacrotimeError::DisconnectedInitialBasis);
        }
        Ok(ChainSpectrum {
            chain,
            basis: SpectralBasis::of(initial)?,
        })
    }

    pub fn chain(&self) -> &DecayChain {
        self.chain
    }

    pub fn basis(&self) -> &SpectralBasis {
        &self.basis
    }

    pub fn initial(&self) -> &EprComplex {
        self.basis.carrier()
    }

    /// `K_i`: surviving object count rounded up to a degenerate-block edge.
    pub fn cutoff(&self, i: usize) -> Result<usize, MacrotimeError> {
        self.chain.check_index(i)?;
        let surviving = self.chain.basis_complexes[i].len();
        if surviving == 0 {
            return Err(MacrotimeError::EmptyBasis(i));
        }
        Ok(self.basis.block_aligned_cutoff(surviving.min(self.basis.dim())))
    }

    /// Normalized low-pass projection of the delta at `o`, over the initial
    /// basis's objects.
    pub fn projected_delta(&self, o: ObjectId, cutoff: usize) -> Result<StateVector, MacrotimeError> {
        let delta = delta_state(self.initial(), o)?;
        Ok(lowpass_project(&delta, &self.basis, cutoff)?)
    }

    /// Mean over surviving objects of `f(projected delta, object)`.
    pub fn mean_over_survivors<F, E>(&self, i: usize, mut f: F) -> Result<f64, E>
    where
        F: FnMut(&StateVector, ObjectId) -> Result<f64, E>,
        E: From<MacrotimeError>,
    {
        let cutoff = self.cutoff(i)?;
        let survivors = self.chain.basis_complexes[i].objects();
        let mut total = 0.0;
        for &o in survivors {
            total += f(&self.projected_delta(o, cutoff)?, o)?;
        }
        Ok(total / survivors.len() as f64)
    }

    pub fn diffusion_entropy(&self, i: usize) -> Result<f64, MacrotimeError> {
        self.mean_over_survivors(i, |s, _| Ok::<_, MacrotimeError>(s.entropy_bits()))
    }
}

/// Mean Shannon entropy (bits) of low-pass-projected deltas at the
/// surviving objects, with the cutoff set by the surviving basis size.
pub fn diffusion_entropy(c: &DecayChain, i: usize) -> Result<f64, MacrotimeError> {
    ChainSpectrum::new(c)?.diffusion_entropy(i)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Measure {
    Resolution,
    Diffusion,
}

impl Measure {
    pub fn name(self) -> &'static str {
        match self {
            Measure::Resolution => "resolution",
            Measure::Diffusion => "diffusion",
        }
    }
}

impl fmt::Display for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Measure {
    type Err = MacrotimeError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "resolution" => Ok(Measure::Resolution),
            "diffusion" => Ok(Measure::Diffusion),
            other => Err(MacrotimeError::UnknownMeasure(other.to_string())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EntropyReport {
    pub measure_name: String,
    pub values: Vec<f64>,
    pub deltas: Vec<f64>,
    pub monotone_fraction: f64,
}

impl EntropyReport {
    pub fn from_values(measure_name: &str, values: Vec<f64>) -> Self {
        let deltas: Vec<f64> = values.windows(2).map(|w| w[1] - w[0]).collect();
        EntropyReport {
            measure_name: measure_name.to_string(),
            monotone_fraction: monotone_fraction(&deltas),
            values,
            deltas,
        }
    }
}

/// Share of deltas `>= -MONOTONE_TOLERANCE`; `1.0` when there are none.
pub fn monotone_fraction(deltas: &[f64]) -> f64 {
    if deltas.is_empty() {
        return 1.0;
    }
    let ok = deltas.iter().filter(|&&d| d >= -MONOTONE_TOLERANCE).count();
    ok as f64 / deltas.len() as f64
}

pub fn entropy_series(c: &DecayChain, measure: Measure) -> Result<EntropyReport, MacrotimeError> {
    let values = match measure {
        Measure::Resolution => (0..c.len())
            .map(|i| resolution_entropy(c, i))
            .collect::<Result<Vec<_>, _>>()?,
        Measure::Diffusion => {
            let spectrum = ChainSpectrum::new(c)?;
            (0..c.len())
                .map(|i| spectrum.diffusion_entropy(i))
                .collect::<Result<Vec<_>, _>>()?
        }
    };
    Ok(EntropyReport::from_values(measure.name(), values))
}

/// [`entropy_series`] with the measure given by name.
pub fn entropy_series_named(c: &DecayChain, measure: &str) -> Result<EntropyReport, MacrotimeError> {
    entropy_series(c, measure.parse()?)
}

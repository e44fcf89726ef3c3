//! Laplacian eigenbases, finite Fourier sums and low-pass projection.
//!
//! A complex's combinatorial Laplacian `L = D - A` supplies the mode basis.
//! On a cycle its eigenspaces are exactly the discrete Fourier modes.

mod jacobi;

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};
use std::ops::Range;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::universe::{EprComplex, ObjectId};

pub use jacobi::DEFAULT_MAX_SWEEPS;

/// Eigenvalues closer than this belong to one degenerate block.
pub const DEGENERACY_TOLERANCE: f64 = 1e-8;
/// Largest asymmetry `|m_ij - m_ji|` accepted by [`eigendecompose`].
pub const SYMMETRY_TOLERANCE: f64 = 1e-12;
const SIGN_THRESHOLD: f64 = 1e-8;

pub const TIE_BREAK_TAG: &str = "jacobi-cyclic; ascending (value, index); blocks |dl|<1e-8 \
     re-orthogonalized by modified Gram-Schmidt in index order; sign: first |component|>1e-8 positive";

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpectralError {
    #[error("matrix is not symmetric: |m[{i}][{j}] - m[{j}][{i}]| = {gap:e}")]
    NotSymmetric { i: usize, j: usize, gap: f64 },
    #[error("matrix data of length {len} is not square")]
    NotSquare { len: usize },
    #[error("jacobi iteration did not converge within {sweeps} sweeps")]
    ConvergenceFailure { sweeps: usize },
    #[error("object {0} is not in the carrier")]
    ObjectNotInComplex(ObjectId),
    #[error("state and basis live on different carriers")]
    CarrierMismatch,
    #[error("cutoff {cutoff} outside 1..={dim}")]
    BadCutoff { cutoff: usize, dim: usize },
    #[error("projection annihilates the state")]
    ZeroProjection,
}

/// Dense symmetric matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct SymMatrix {
    n: usize,
    data: Vec<f64>,
}

impl SymMatrix {
    pub fn from_row_major(n: usize, data: Vec<f64>) -> Result<Self, SpectralError> {
        if data.len() != n * n {
            return Err(SpectralError::NotSquare { len: data.len() });
        }
        Ok(SymMatrix { n, data })
    }

    pub fn zeros(n: usize) -> Self {
        SymMatrix {
            n,
            data: vec![0.0; n * n],
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.n + j] = v;
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    fn check_symmetric(&self) -> Result<(), SpectralError> {
        for i in 0..self.n {
            for j in i + 1..self.n {
                let gap = (self.get(i, j) - self.get(j, i)).abs();
                if gap.is_nan() || gap > SYMMETRY_TOLERANCE {
                    return Err(SpectralError::NotSymmetric { i, j, gap });
                }
            }
        }
        Ok(())
    }
}

/// `L = D - A` over the local positions of `e`.
pub fn laplacian(e: &EprComplex) -> SymMatrix {
    let mut l = SymMatrix::zeros(e.len());
    for (a, b) in e.local_edges() {
        l.set(a, b, -1.0);
        l.set(b, a, -1.0);
        l.set(a, a, l.get(a, a) + 1.0);
        l.set(b, b, l.get(b, b) + 1.0);
    }
    l
}

/// Sorted eigenpairs of a symmetric matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Eigensystem {
    pub eigenvalues: Vec<f64>,
    /// `eigenvectors[k]` pairs with `eigenvalues[k]`; pairwise orthonormal.
    pub eigenvectors: Vec<Vec<f64>>,
    /// Index ranges of degenerate blocks, covering `0..n` in order.
    pub blocks: Vec<Range<usize>>,
}

pub fn eigendecompose(m: &SymMatrix) -> Result<Eigensystem, SpectralError> {
    eigendecompose_with(m, DEFAULT_MAX_SWEEPS)
}

pub fn eigendecompose_with(m: &SymMatrix, max_sweeps: usize) -> Result<Eigensystem, SpectralError> {
    m.check_symmetric()?;
    let n = m.dim();
    let raw = jacobi::jacobi(m, max_sweeps)?;

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| raw.values[i].total_cmp(&raw.values[j]).then(i.cmp(&j)));
    let eigenvalues: Vec<f64> = order.iter().map(|&k| raw.values[k]).collect();
    let mut eigenvectors: Vec<Vec<f64>> = order
        .iter()
        .map(|&k| (0..n).map(|i| raw.vectors[i * n + k]).collect())
        .collect();

    let mut blocks = Vec::new();
    let mut start = 0;
    for k in 1..=n {
        if k == n || eigenvalues[k] - eigenvalues[k - 1] >= DEGENERACY_TOLERANCE {
            blocks.push(start..k);
            start = k;
        }
    }
    for block in &blocks {
        for k in block.clone() {
            for j in block.start..k {
                let (head, tail) = eigenvectors.split_at_mut(k);
                let proj = dot(&head[j], &tail[0]);
                tail[0].iter_mut().zip(&head[j]).for_each(|(x, y)| *x -= proj * y);
            }
            let norm = dot(&eigenvectors[k], &eigenvectors[k]).sqrt();
            eigenvectors[k].iter_mut().for_each(|x| *x /= norm);
        }
    }
    for v in &mut eigenvectors {
        if let Some(&lead) = v.iter().find(|x| x.abs() > SIGN_THRESHOLD) {
            if lead < 0.0 {
                v.iter_mut().for_each(|x| *x = -*x);
            }
        }
    }
    Ok(Eigensystem {
        eigenvalues,
        eigenvectors,
        blocks,
    })
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Laplacian eigenbasis of a carrier complex.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralBasis {
    carrier: EprComplex,
    system: Eigensystem,
    id: u64,
}

impl SpectralBasis {
    pub fn of(carrier: &EprComplex) -> Result<Self, SpectralError> {
        let system = eigendecompose(&laplacian(carrier))?;
        Ok(SpectralBasis {
            id: carrier_id(carrier.objects()),
            carrier: carrier.clone(),
            system,
        })
    }

    pub fn carrier(&self) -> &EprComplex {
        &self.carrier
    }

    pub fn dim(&self) -> usize {
        self.system.eigenvalues.len()
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.system.eigenvalues
    }

    pub fn eigenvectors(&self) -> &[Vec<f64>] {
        &self.system.eigenvectors
    }

    pub fn blocks(&self) -> &[Range<usize>] {
        &self.system.blocks
    }

    pub fn tie_break_tag(&self) -> &'static str {
        TIE_BREAK_TAG
    }

    pub fn id(&self) -> u64 {
        self.id
    }

    /// Smallest block boundary `>= k`, so a cutoff never splits a
    /// degenerate eigenspace.
    pub fn block_aligned_cutoff(&self, k: usize) -> usize {
        self.blocks()
            .iter()
            .map(|b| b.end)
            .find(|&end| end >= k)
            .unwrap_or(self.dim())
    }

    pub fn report(&self, with_vectors: bool) -> SpectralReport {
        SpectralReport {
            eigenvalues: self.system.eigenvalues.clone(),
            eigenvectors: with_vectors.then(|| self.system.eigenvectors.clone()),
            tie_break_tag: TIE_BREAK_TAG.to_string(),
        }
    }
}

fn carrier_id(objects: &[ObjectId]) -> u64 {
    let mut h = DefaultHasher::new();
    objects.hash(&mut h);
    h.finish()
}

/// Serialized form of a basis.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectralReport {
    pub eigenvalues: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eigenvectors: Option<Vec<Vec<f64>>>,
    pub tie_break_tag: String,
}

/// Real amplitudes over the objects of a carrier.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StateVector {
    pub objects: Vec<ObjectId>,
    pub amplitudes: Vec<f64>,
}

impl StateVector {
    pub fn new(objects: Vec<ObjectId>, amplitudes: Vec<f64>) -> Self {
        assert_eq!(objects.len(), amplitudes.len());
        StateVector {
            objects,
            amplitudes,
        }
    }

    pub fn norm(&self) -> f64 {
        dot(&self.amplitudes, &self.amplitudes).sqrt()
    }

    pub fn overlap(&self, other: &StateVector) -> f64 {
        dot(&self.amplitudes, &other.amplitudes)
    }

    pub fn normalized(&self) -> Option<StateVector> {
        let n = self.norm();
        (n > 0.0 && n.is_finite()).then(|| StateVector {
            objects: self.objects.clone(),
            amplitudes: self.amplitudes.iter().map(|a| a / n).collect(),
        })
    }

    /// `|a_o|^2 / ||a||^2`.
    pub fn probabilities(&self) -> Vec<f64> {
        let total = dot(&self.amplitudes, &self.amplitudes);
        self.amplitudes.iter().map(|a| a * a / total).collect()
    }

    /// Shannon entropy in bits of the probability mass.
    pub fn entropy_bits(&self) -> f64 {
        shannon_entropy_bits(&self.probabilities())
    }
}

pub fn shannon_entropy_bits(p: &[f64]) -> f64 {
    p.iter()
        .filter(|&&x| x > 0.0)
        .fold(0.0, |acc, &x| acc - x * x.log2())
}

/// Indicator of `o` on the objects of `e`.
pub fn delta_state(e: &EprComplex, o: ObjectId) -> Result<StateVector, SpectralError> {
    let pos = e.position(o).ok_or(SpectralError::ObjectNotInComplex(o))?;
    let mut amplitudes = vec![0.0; e.len()];
    amplitudes[pos] = 1.0;
    Ok(StateVector::new(e.objects().to_vec(), amplitudes))
}

/// Mode coefficients of a state.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FourierSum {
    pub coefficients: Vec<f64>,
    pub basis_id: u64,
}

impl FourierSum {
    pub fn norm_squared(&self) -> f64 {
        dot(&self.coefficients, &self.coefficients)
    }
}

fn check_carrier(s: &StateVector, basis: &SpectralBasis) -> Result<(), SpectralError> {
    if s.objects.as_slice() == basis.carrier.objects() {
        Ok(())
    } else {
        Err(SpectralError::CarrierMismatch)
    }
}

/// `c_k = <v_k, s>`.
pub fn fourier_expand(s: &StateVector, basis: &SpectralBasis) -> Result<FourierSum, SpectralError> {
    check_carrier(s, basis)?;
    Ok(FourierSum {
        coefficients: basis
            .eigenvectors()
            .iter()
            .map(|v| dot(v, &s.amplitudes))
            .collect(),
        basis_id: basis.id,
    })
}

/// `s = sum_k c_k v_k`.
pub fn resum(sum: &FourierSum, basis: &SpectralBasis) -> Result<StateVector, SpectralError> {
    if sum.basis_id != basis.id || sum.coefficients.len() != basis.dim() {
        return Err(SpectralError::CarrierMismatch);
    }
    Ok(StateVector::new(
        basis.carrier.objects().to_vec(),
        synthesize(basis, &sum.coefficients, basis.dim()),
    ))
}

fn synthesize(basis: &SpectralBasis, coefficients: &[f64], modes: usize) -> Vec<f64> {
    let mut out = vec![0.0; basis.dim()];
    for (c, v) in coefficients.iter().zip(basis.eigenvectors()).take(modes) {
        out.iter_mut().zip(v).for_each(|(o, x)| *o += c * x);
    }
    out
}

/// A low-pass reconstruction before and after renormalization.
#[derive(Debug, Clone, PartialEq)]
pub struct LowpassProjection {
    pub state: StateVector,
    /// Block-aligned number of retained modes.
    pub cutoff: usize,
    /// Norm of the reconstruction before renormalization.
    pub retained_norm: f64,
}

/// Keeps the lowest `k` modes (rounded up to a whole degenerate block).
pub fn lowpass_projection(
    s: &StateVector,
    basis: &SpectralBasis,
    k: usize,
) -> Result<LowpassProjection, SpectralError> {
    let dim = basis.dim();
    if k == 0 || k > dim {
        return Err(SpectralError::BadCutoff { cutoff: k, dim });
    }
    let sum = fourier_expand(s, basis)?;
    let cutoff = basis.block_aligned_cutoff(k);
    let raw = StateVector::new(
        s.objects.clone(),
        synthesize(basis, &sum.coefficients, cutoff),
    );
    let retained_norm = raw.norm();
    let state = raw.normalized().ok_or(SpectralError::ZeroProjection)?;
    Ok(LowpassProjection {
        state,
        cutoff,
        retained_norm,
    })
}

/// Normalized reconstruction from the lowest `k` modes.
pub fn lowpass_project(
    s: &StateVector,
    basis: &SpectralBasis,
    k: usize,
) -> Result<StateVector, SpectralError> {
    Ok(lowpass_projection(s, basis, k)?.state)
}

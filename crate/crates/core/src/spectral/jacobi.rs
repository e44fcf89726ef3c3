//! Cyclic Jacobi diagonalization of dense symmetric matrices.

use super::{SpectralError, SymMatrix};

pub const DEFAULT_MAX_SWEEPS: usize = 100;

/// Unsorted eigenvalues and the column-eigenvector matrix (row-major,
/// `vectors[i * n + k]` is component `i` of eigenvector `k`).
pub(crate) struct RawEigen {
    pub values: Vec<f64>,
    pub vectors: Vec<f64>,
}

/// Sweeps plane rotations over every off-diagonal pair until the
/// off-diagonal mass is negligible relative to the matrix norm.
pub(crate) fn jacobi(m: &SymMatrix, max_sweeps: usize) -> Result<RawEigen, SpectralError> {
    let n = m.dim();
    let mut a = m.data().to_vec();
    let mut v = vec![0.0; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }
    let norm: f64 = a.iter().map(|x| x * x).sum::<f64>().sqrt();
    let tol = f64::EPSILON * norm.max(f64::MIN_POSITIVE);

    for _ in 0..max_sweeps {
        let off: f64 = (0..n)
            .flat_map(|p| (p + 1..n).map(move |q| (p, q)))
            .map(|(p, q)| a[p * n + q] * a[p * n + q])
            .sum::<f64>()
            .sqrt();
        if off <= tol {
            return Ok(RawEigen {
                values: (0..n).map(|i| a[i * n + i]).collect(),
                vectors: v,
            });
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq.abs() <= f64::MIN_POSITIVE {
                    continue;
                }
                let theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                rotate(&mut a, &mut v, n, p, q, c, s);
            }
        }
    }
    Err(SpectralError::ConvergenceFailure { sweeps: max_sweeps })
}

/// Applies `A <- J^T A J` and `V <- V J` for the rotation in plane `(p, q)`.
fn rotate(a: &mut [f64], v: &mut [f64], n: usize, p: usize, q: usize, c: f64, s: f64) {
    for k in 0..n {
        let akp = a[k * n + p];
        let akq = a[k * n + q];
        a[k * n + p] = c * akp - s * akq;
        a[k * n + q] = s * akp + c * akq;
    }
    for k in 0..n {
        let apk = a[p * n + k];
        let aqk = a[q * n + k];
        a[p * n + k] = c * apk - s * aqk;
        a[q * n + k] = s * apk + c * aqk;
    }
    a[p * n + q] = 0.0;
    a[q * n + p] = 0.0;
    for k in 0..n {
        let vkp = v[k * n + p];
        let vkq = v[k * n + q];
        v[k * n + p] = c * vkp - s * vkq;
        v[k * n + q] = s * vkp + c * vkq;
    }
}

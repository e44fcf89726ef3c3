//! Decay chains on cycles checked against a direct discrete-Fourier oracle
//! that never touches the Laplacian eigensolver.

use std::f64::consts::PI;

use epr_universe::cosmology::{expansion_series, phase_distance, spread};
use epr_universe::generators::{cycle, gnp, path};
use epr_universe::macrotime::{
    entropy_series, exists_at, generate_chain, validate_chain, DecayChain, DecayPolicy, Measure,
};
use epr_universe::spectral::{delta_state, StateVector};
use epr_universe::universe::{Aspect, EprComplex, ObjectId};
use epr_universe::SpectralBasis;

/// Low-pass delta on `C_n` keeping frequencies `|k| <= m` where the cutoff
/// `k_modes = 2m + 1` (or `n` for everything), normalized.
fn dft_projected_delta(n: usize, k_modes: usize) -> Vec<f64> {
    if k_modes >= n {
        let mut d = vec![0.0; n];
        d[0] = 1.0;
        return d;
    }
    let m = (k_modes - 1) / 2;
    let raw: Vec<f64> = (0..n)
        .map(|x| {
            (1.0 + 2.0 * (1..=m).map(|k| (2.0 * PI * (k * x) as f64 / n as f64).cos()).sum::<f64>())
                / n as f64
        })
        .collect();
    let norm = raw.iter().map(|v| v * v).sum::<f64>().sqrt();
    raw.into_iter().map(|v| v / norm).collect()
}

fn oracle_entropy(psi: &[f64]) -> f64 {
    psi.iter()
        .map(|a| a * a)
        .filter(|&p| p > 0.0)
        .map(|p| -p * p.log2())
        .sum()
}

fn oracle_spread(psi: &[f64]) -> f64 {
    let n = psi.len();
    psi.iter()
        .enumerate()
        .map(|(x, a)| {
            let d = x.min(n - x) as f64;
            a * a * d * d
        })
        .sum::<f64>()
        .sqrt()
}

fn c64_chain(seed: u64) -> DecayChain {
    let e = cycle(64);
    generate_chain(&e, &Aspect::isolated_extension(&e), &DecayPolicy::new(4, 7, seed)).unwrap()
}

/// Values computed offline with a numpy FFT projection; cutoffs are the
/// basis sizes 64, 60, ..., 36 rounded up to the odd block edges.
const FROZEN_ENTROPY: [f64; 8] = [
    0.0,
    0.5143244222525588,
    0.9540294004289634,
    1.2782875098195559,
    1.53035712160066,
    1.7316453864667474,
    1.8954372516619777,
    2.0322990499835987,
];
const FROZEN_SPREAD: [f64; 8] = [
    0.0,
    2.2098762833705226,
    2.2551666633185135,
    2.3338482438645722,
    2.42562293066445,
    2.5304092628946777,
    2.6505992108758845,
    2.7900049345096622,
];

#[test]
fn dft_oracle_reproduces_frozen_values() {
    for (i, k) in [64, 61, 57, 53, 49, 45, 41, 37].into_iter().enumerate() {
        let psi = dft_projected_delta(64, k);
        assert!((oracle_entropy(&psi) - FROZEN_ENTROPY[i]).abs() < 1e-10);
        assert!((oracle_spread(&psi) - FROZEN_SPREAD[i]).abs() < 1e-10);
    }
}

#[test]
fn seed_42_diffusion_series_matches_oracle() {
    let c = c64_chain(42);
    assert_eq!(c.basis_sizes(), vec![64, 60, 56, 52, 48, 44, 40, 36]);
    let r = entropy_series(&c, Measure::Diffusion).unwrap();
    for (got, want) in r.values.iter().zip(FROZEN_ENTROPY) {
        assert!((got - want).abs() < 1e-9, "{got} vs {want}");
    }
    assert!(r.deltas.iter().all(|&d| d > 0.0));
    assert_eq!(r.monotone_fraction, 1.0);
}

#[test]
fn seed_42_spread_series_matches_oracle() {
    let c = c64_chain(42);
    let r = expansion_series(&c).unwrap();
    assert_eq!(r.cutoff_series, vec![64, 61, 57, 53, 49, 45, 41, 37]);
    for (got, want) in r.spread_series.iter().zip(FROZEN_SPREAD) {
        assert!((got - want).abs() < 1e-9, "{got} vs {want}");
    }
    assert!(r.baseline_shifted);
    assert_eq!(r.expansion_factor_series[1], 1.0);
    assert_eq!(r.monotone_fraction, 1.0);
}

#[test]
fn uniform_spread_closed_form() {
    // K = 1 on C_64: mass 1/64 at distances 0, 1..31 twice, 32
    let sum_sq: f64 = 2.0 * (1..=31).map(|d| (d * d) as f64).sum::<f64>() + 32.0 * 32.0;
    let closed = (sum_sq / 64.0).sqrt();
    let e = cycle(64);
    let c = generate_chain(&e, &Aspect::isolated_extension(&e), &DecayPolicy::new(9, 7, 3)).unwrap();
    assert_eq!(c.basis_sizes().last(), Some(&1));
    let r = expansion_series(&c).unwrap();
    assert_eq!(*r.cutoff_series.last().unwrap(), 1);
    assert!((r.spread_series.last().unwrap() - closed).abs() < 1e-9);
}

#[test]
fn validation_over_policy_grid() {
    let starts: Vec<EprComplex> = vec![cycle(20), path(15), gnp(18, 0.3, 2)];
    for e in &starts {
        for (removals, steps) in [(1, 1), (1, 10), (2, 5), (3, 4)] {
            for seed in 0..5 {
                for rewire in [false, true] {
                    let mut policy = DecayPolicy::new(removals, steps, seed);
                    policy.rewire_to_matter = rewire;
                    let c = generate_chain(e, &Aspect::isolated_extension(e), &policy).unwrap();
                    assert!(validate_chain(&c).is_valid());
                    for i in 0..c.len() {
                        assert!(exists_at(&c.basis_complexes[i], &c, i).unwrap());
                    }
                    let r = entropy_series(&c, Measure::Resolution).unwrap();
                    assert!(r.deltas.iter().all(|&d| d >= 0.0));
                }
            }
        }
    }
}

#[test]
fn deleted_edge_existence_trace() {
    let c = c64_chain(42);
    let i = 1;
    let removed = &c.removed[i - 1];
    let before = &c.basis_complexes[i - 1];
    let &(a, b) = before
        .edges()
        .iter()
        .find(|(a, b)| removed.contains(a) != removed.contains(b))
        .expect("some cut edge");
    let f = EprComplex::new(64, [a, b], [(a, b)]).unwrap();
    assert!(!exists_at(&f, &c, i).unwrap());
    assert!(exists_at(&f, &c, i - 1).unwrap());
}

#[test]
fn phase_distance_exhaustive_small_cycles() {
    fn gcd(a: usize, b: usize) -> usize {
        if b == 0 { a } else { gcd(b, a % b) }
    }
    for n in 3..=16 {
        let modes: Vec<usize> = (0..n).filter(|&k| k == 0 || gcd(k, n) == 1).take(3).collect();
        for o1 in 0..n {
            for o2 in 0..n {
                let d = phase_distance(n, &modes, o1, o2).unwrap();
                assert_eq!(d, phase_distance(n, &modes, o2, o1).unwrap());
                assert_eq!(d == 0.0, o1 == o2, "n={n} {o1} {o2}");
                assert!((0.0..=PI).contains(&d));
            }
        }
    }
}

#[test]
fn spread_zero_only_for_centered_delta() {
    let e = cycle(9);
    let b = SpectralBasis::of(&e).unwrap();
    for o in 0..9u32 {
        let d = delta_state(&e, ObjectId(o)).unwrap();
        assert_eq!(spread(&d, &e, ObjectId(o)).unwrap(), 0.0);
        assert!(spread(&d, &e, ObjectId((o + 1) % 9)).unwrap() > 0.0);
        for k in [1, 3, 5] {
            let p = epr_universe::spectral::lowpass_project(&d, &b, k).unwrap();
            assert!(spread(&p, &e, ObjectId(o)).unwrap() > 1e-10);
        }
    }
    let mixed = StateVector::new(e.objects().to_vec(), {
        let mut v = vec![0.0; 9];
        v[0] = 0.6;
        v[1] = 0.8;
        v
    });
    assert!(spread(&mixed, &e, ObjectId(0)).unwrap() > 0.0);
}

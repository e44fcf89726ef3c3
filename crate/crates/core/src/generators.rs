//! Named complexes on the universe `0..n`.

use rand::Rng;

use crate::rng::seeded_rng;
use crate::universe::{EprComplex, ObjectId};

fn on_universe(n: usize, edges: Vec<(usize, usize)>) -> EprComplex {
    EprComplex::new(
        n,
        (0..n).map(ObjectId::from),
        edges.into_iter().map(|(a, b)| (ObjectId::from(a), ObjectId::from(b))),
    )
    .expect("generated edges are simple")
}

/// Cycle `C_n`; for `n < 3` this degenerates to a path.
pub fn cycle(n: usize) -> EprComplex {
    let mut edges: Vec<(usize, usize)> = (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect();
    if n >= 3 {
        edges.push((0, n - 1));
    }
    on_universe(n, edges)
}

pub fn complete(n: usize) -> EprComplex {
    let edges = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    on_universe(n, edges)
}

pub fn path(n: usize) -> EprComplex {
    on_universe(n, (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect())
}

/// Star with center 0 and `n - 1` leaves.
pub fn star(n: usize) -> EprComplex {
    on_universe(n, (1..n).map(|i| (0, i)).collect())
}

pub fn edgeless(n: usize) -> EprComplex {
    on_universe(n, Vec::new())
}

/// Outer 5-cycle 0..5, inner pentagram 5..10, spokes i -- i+5.
pub fn petersen() -> EprComplex {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
        edges.push((i, i + 5));
    }
    on_universe(10, edges)
}

/// Erdős–Rényi `G(n, p)`: each pair `(i, j)`, `i < j`, visited in
/// lexicographic order, is kept when a uniform draw in `[0, 1)` is below `p`.
pub fn gnp(n: usize, p: f64, seed: u64) -> EprComplex {
    let mut rng = seeded_rng(seed);
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.random::<f64>() < p {
                edges.push((i, j));
            }
        }
    }
    on_universe(n, edges)
}

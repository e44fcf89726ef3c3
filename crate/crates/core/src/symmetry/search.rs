//! Automorphism groups by individualization and equitable refinement.
//!
//! The search fixes a base path `b_0, b_1, ...` of individualized vertices.
//! For each level `k`, deepest first, it looks for an automorphism fixing
//! `b_0..b_k` pointwise except for sending `b_k` to each other vertex of its
//! target cell, skipping vertices already in the orbit of `b_k` under the
//! generators found so far. The resulting coset representatives generate the
//! full group.

use num_bigint::BigUint;

use super::perm::{PermGroup, Permutation};
use super::SymmetryError;
use crate::universe::EprComplex;

/// Largest complex accepted by [`brute_force_automorphisms`].
pub const BRUTE_FORCE_LIMIT: usize = 10;

type Partition = Vec<Vec<usize>>;

struct Graph {
    adj: Vec<Vec<usize>>,
}

impl Graph {
    fn new(e: &EprComplex) -> Self {
        Graph { adj: e.adjacency() }
    }

    fn n(&self) -> usize {
        self.adj.len()
    }

    fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj[a].binary_search(&b).is_ok()
    }

    fn is_automorphism(&self, images: &[u32]) -> bool {
        self.adj.iter().enumerate().all(|(a, nbrs)| {
            nbrs.iter()
                .all(|&b| self.has_edge(images[a] as usize, images[b] as usize))
        })
    }

    /// Coarsest equitable refinement. Every decision depends only on cell
    /// positions and neighbour counts, so `refine(p^g) == refine(p)^g` for
    /// every automorphism `g`.
    fn refine(&self, mut cells: Partition) -> Partition {
        let mut count = vec![0usize; self.n()];
        loop {
            let mut changed = false;
            let mut s = 0;
            while s < cells.len() {
                for &u in &cells[s] {
                    for &w in &self.adj[u] {
                        count[w] += 1;
                    }
                }
                let mut next: Partition = Vec::with_capacity(cells.len());
                for cell in cells.drain(..) {
                    let first = count[cell[0]];
                    if cell.len() == 1 || cell.iter().all(|&v| count[v] == first) {
                        next.push(cell);
                        continue;
                    }
                    changed = true;
                    let mut keyed: Vec<(usize, usize)> = cell.iter().map(|&v| (count[v], v)).collect();
                    keyed.sort_unstable();
                    let mut start = 0;
                    for i in 1..=keyed.len() {
                        if i == keyed.len() || keyed[i].0 != keyed[start].0 {
                            next.push(keyed[start..i].iter().map(|&(_, v)| v).collect());
                            start = i;
                        }
                    }
                }
                cells = next;
                count.iter_mut().for_each(|c| *c = 0);
                s += 1;
            }
            if !changed {
                return cells;
            }
        }
    }
}

fn individualize(cells: &Partition, v: usize) -> Partition {
    let mut out = Vec::with_capacity(cells.len() + 1);
    for cell in cells {
        if cell.len() > 1 && cell.contains(&v) {
            out.push(vec![v]);
            out.push(cell.iter().copied().filter(|&w| w != v).collect());
        } else {
            out.push(cell.clone());
        }
    }
    out
}

/// First smallest non-singleton cell.
fn target_cell(cells: &Partition) -> Option<usize> {
    cells
        .iter()
        .enumerate()
        .filter(|(_, c)| c.len() > 1)
        .min_by_key(|&(i, c)| (c.len(), i))
        .map(|(i, _)| i)
}

fn same_shape(a: &Partition, b: &Partition) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x.len() == y.len())
}

struct Search<'a> {
    graph: &'a Graph,
    /// `path[k]` is the partition after individualizing `b_0..b_{k-1}`.
    path: Vec<Partition>,
    targets: Vec<usize>,
}

impl Search<'_> {
    fn extend(&self, level: usize, right: Partition) -> Option<Permutation> {
        let left = &self.path[level];
        if level == self.targets.len() {
            let mut images = vec![0u32; self.graph.n()];
            for (l, r) in left.iter().zip(&right) {
                images[l[0]] = r[0] as u32;
            }
            return self
                .graph
                .is_automorphism(&images)
                .then(|| Permutation::from_images_unchecked(images));
        }
        let t = self.targets[level];
        let mut candidates = right[t].clone();
        candidates.sort_unstable();
        for w in candidates {
            let next = self.graph.refine(individualize(&right, w));
            if same_shape(&next, &self.path[level + 1]) {
                if let Some(p) = self.extend(level + 1, next) {
                    return Some(p);
                }
            }
        }
        None
    }
}

fn orbit_of(point: usize, gens: &[Permutation], n: usize) -> Vec<bool> {
    let mut seen = vec![false; n];
    seen[point] = true;
    let mut stack = vec![point];
    while let Some(p) = stack.pop() {
        for g in gens {
            let q = g.apply(p);
            if !seen[q] {
                seen[q] = true;
                stack.push(q);
            }
        }
    }
    seen
}

/// Generators of the automorphism group of `e`, acting on local positions
/// (point `i` is `e.objects()[i]`).
pub fn automorphisms(e: &EprComplex) -> PermGroup {
    let graph = Graph::new(e);
    let n = graph.n();
    if n == 0 {
        return PermGroup::trivial(0);
    }
    let mut path = vec![graph.refine(vec![(0..n).collect()])];
    let mut targets = Vec::new();
    let mut base = Vec::new();
    while let Some(t) = target_cell(path.last().expect("nonempty")) {
        let b = *path.last().expect("nonempty")[t].iter().min().expect("nonempty cell");
        targets.push(t);
        base.push(b);
        let next = graph.refine(individualize(path.last().expect("nonempty"), b));
        path.push(next);
    }

    let search = Search {
        graph: &graph,
        path,
        targets,
    };
    let mut generators: Vec<Permutation> = Vec::new();
    for k in (0..base.len()).rev() {
        let b = base[k];
        let mut cell = search.path[k][search.targets[k]].clone();
        cell.sort_unstable();
        let mut orbit = orbit_of(b, &generators, n);
        for v in cell {
            if orbit[v] {
                continue;
            }
            let right = graph.refine(individualize(&search.path[k], v));
            if !same_shape(&right, &search.path[k + 1]) {
                continue;
            }
            if let Some(g) = search.extend(k + 1, right) {
                generators.push(g);
                orbit = orbit_of(b, &generators, n);
            }
        }
    }
    PermGroup::new(n, generators).expect("generators share the domain")
}

/// Every automorphism of `e` by exhaustive backtracking. The returned group
/// lists all non-identity elements as generators and caches the element
/// count as its order.
pub fn brute_force_automorphisms(e: &EprComplex) -> Result<PermGroup, SymmetryError> {
    let n = e.len();
    if n > BRUTE_FORCE_LIMIT {
        return Err(SymmetryError::TooLargeForBruteForce {
            objects: n,
            limit: BRUTE_FORCE_LIMIT,
        });
    }
    let graph = Graph::new(e);
    let mut matrix = vec![vec![false; n]; n];
    for (a, nbrs) in graph.adj.iter().enumerate() {
        for &b in nbrs {
            matrix[a][b] = true;
        }
    }
    let mut elements = Vec::new();
    let mut images = Vec::with_capacity(n);
    let mut used = vec![false; n];
    enumerate(&matrix, &graph, &mut images, &mut used, &mut elements);
    let order = BigUint::from(elements.len());
    let generators = elements.into_iter().filter(|p| !p.is_identity()).collect();
    PermGroup::with_known_order(n, generators, order)
}

fn enumerate(
    matrix: &[Vec<bool>],
    graph: &Graph,
    images: &mut Vec<u32>,
    used: &mut [bool],
    out: &mut Vec<Permutation>,
) {
    let i = images.len();
    if i == matrix.len() {
        out.push(Permutation::from_images_unchecked(images.clone()));
        return;
    }
    for v in 0..matrix.len() {
        if used[v] || graph.adj[v].len() != graph.adj[i].len() {
            continue;
        }
        let consistent = (0..i).all(|j| matrix[i][j] == matrix[v][images[j] as usize]);
        if !consistent {
            continue;
        }
        used[v] = true;
        images.push(v as u32);
        enumerate(matrix, graph, images, used, out);
        images.pop();
        used[v] = false;
    }
}

//! Permutations, permutation groups and stabilizer chains.

use std::collections::{HashSet, VecDeque};
use std::sync::OnceLock;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use super::SymmetryError;
use crate::universe::{EprComplex, ObjectId};

/// A bijection of `0..degree`, stored as its image array.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u32).collect(),
        }
    }

    pub fn from_images(images: Vec<u32>) -> Result<Self, SymmetryError> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            match seen.get_mut(i as usize) {
                Some(s) if !*s => *s = true,
                _ => return Err(SymmetryError::NotABijection(images)),
            }
        }
        Ok(Permutation { images })
    }

    pub(crate) fn from_images_unchecked(images: Vec<u32>) -> Self {
        Permutation { images }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    /// Composition applying `self` first, then `other`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: self.images.iter().map(|&i| other.images[i as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j as usize] = i as u32;
        }
        Permutation { images: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j as usize)
    }

    pub fn first_moved(&self) -> Option<usize> {
        self.images
            .iter()
            .enumerate()
            .find(|&(i, &j)| i != j as usize)
            .map(|(i, _)| i)
    }

    /// Reads the permutation as acting on the objects of `carrier`, where
    /// point `i` is `carrier.objects()[i]`.
    pub fn object_images(&self, carrier: &EprComplex) -> Vec<ObjectId> {
        self.images
            .iter()
            .map(|&i| carrier.objects()[i as usize])
            .collect()
    }

    /// Whether the permutation maps edges of `carrier` onto edges; with equal
    /// edge counts this also forces non-edges onto non-edges.
    pub fn preserves_edges(&self, carrier: &EprComplex) -> bool {
        if self.degree() != carrier.len() {
            return false;
        }
        let objs = carrier.objects();
        carrier.local_edges().all(|(a, b)| {
            carrier.has_edge(objs[self.apply(a)], objs[self.apply(b)])
        })
    }
}

impl TryFrom<Vec<u32>> for Permutation {
    type Error = SymmetryError;
    fn try_from(v: Vec<u32>) -> Result<Self, Self::Error> {
        Permutation::from_images(v)
    }
}

impl From<Permutation> for Vec<u32> {
    fn from(p: Permutation) -> Self {
        p.images
    }
}

/// A permutation group on `0..degree` given by generators.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(try_from = "RawGroup", into = "RawGroup")]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    order_cache: OnceLock<BigUint>,
}

#[derive(Serialize, Deserialize)]
struct RawGroup {
    degree: usize,
    generators: Vec<Permutation>,
}

impl TryFrom<RawGroup> for PermGroup {
    type Error = SymmetryError;
    fn try_from(raw: RawGroup) -> Result<Self, Self::Error> {
        PermGroup::new(raw.degree, raw.generators)
    }
}

impl From<PermGroup> for RawGroup {
    fn from(g: PermGroup) -> Self {
        RawGroup {
            degree: g.degree,
            generators: g.generators,
        }
    }
}

impl PartialEq for PermGroup {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree && self.generators == other.generators
    }
}

impl PermGroup {
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Self, SymmetryError> {
        if let Some(g) = generators.iter().find(|g| g.degree() != degree) {
            return Err(SymmetryError::DegreeMismatch {
                expected: degree,
                found: g.degree(),
            });
        }
        Ok(PermGroup {
            degree,
            generators,
            order_cache: OnceLock::new(),
        })
    }

    pub fn trivial(degree: usize) -> Self {
        PermGroup::new(degree, Vec::new()).expect("no generators")
    }

    /// A group whose order was established independently, e.g. by
    /// exhaustive enumeration. [`Self::order`] returns it without sifting.
    pub fn with_known_order(
        degree: usize,
        generators: Vec<Permutation>,
        order: BigUint,
    ) -> Result<Self, SymmetryError> {
        let g = PermGroup::new(degree, generators)?;
        let _ = g.order_cache.set(order);
        Ok(g)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    /// Exact group order, from the cache or a stabilizer chain.
    pub fn order(&self) -> BigUint {
        self.order_cache
            .get_or_init(|| StabilizerChain::build(self).order())
            .clone()
    }

    /// Orbits of the generated group, each ascending, ordered by least point.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut parent: Vec<usize> = (0..self.degree).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for g in &self.generators {
            for i in 0..self.degree {
                let (a, b) = (find(&mut parent, i), find(&mut parent, g.apply(i)));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
        let mut orbits: Vec<Vec<usize>> = Vec::new();
        let mut slot = vec![usize::MAX; self.degree];
        for i in 0..self.degree {
            let root = find(&mut parent, i);
            if slot[root] == usize::MAX {
                slot[root] = orbits.len();
                orbits.push(Vec::new());
            }
            orbits[slot[root]].push(i);
        }
        orbits
    }

    /// All elements in breadth-first order from the identity.
    pub fn elements(&self, limit: usize) -> Result<Vec<Permutation>, SymmetryError> {
        let id = Permutation::identity(self.degree);
        let mut seen = HashSet::from([id.clone()]);
        let mut out = vec![id.clone()];
        let mut queue = VecDeque::from([id]);
        while let Some(x) = queue.pop_front() {
            for g in &self.generators {
                let y = x.then(g);
                if seen.insert(y.clone()) {
                    if out.len() == limit {
                        return Err(SymmetryError::GroupTooLarge {
                            order: self.order(),
                            limit,
                        });
                    }
                    out.push(y.clone());
                    queue.push_back(y);
                }
            }
        }
        Ok(out)
    }
}

/// Order of the group generated by `g`.
pub fn group_order(g: &PermGroup) -> BigUint {
    g.order()
}

/// Orbit partition of the domain of `g`.
pub fn orbits(g: &PermGroup) -> Vec<Vec<usize>> {
    g.orbits()
}

#[derive(Debug, Clone)]
struct Level {
    point: usize,
    /// Indices into the strong generating set of generators fixing all
    /// earlier base points.
    gens: Vec<usize>,
    orbit: Vec<usize>,
    /// `transversal[p] = (u, u^-1)` with `u` mapping the base point to `p`.
    transversal: Vec<Option<(Permutation, Permutation)>>,
}

/// Base and strong generating set, built by deterministic Schreier–Sims.
#[derive(Debug, Clone)]
pub struct StabilizerChain {
    degree: usize,
    strong: Vec<Permutation>,
    levels: Vec<Level>,
}

impl StabilizerChain {
    pub fn build(group: &PermGroup) -> Self {
        let degree = group.degree();
        let mut strong: Vec<Permutation> = Vec::new();
        for g in group.generators() {
            if !g.is_identity() && !strong.contains(g) {
                strong.push(g.clone());
            }
        }
        let mut base: Vec<usize> = Vec::new();
        for g in &strong {
            if base.iter().all(|&b| g.apply(b) == b) {
                base.push(g.first_moved().expect("non-identity"));
            }
        }
        let mut chain = StabilizerChain {
            degree,
            strong,
            levels: Vec::new(),
        };
        chain.rebuild(&base);

        let mut i = chain.levels.len() as isize - 1;
        while i >= 0 {
            let l = i as usize;
            match chain.find_nontrivial_schreier_residue(l) {
                None => i -= 1,
                Some((residue, drop)) => {
                    if drop == base.len() {
                        base.push(residue.first_moved().expect("non-identity residue"));
                    }
                    chain.strong.push(residue);
                    chain.rebuild(&base);
                    i = drop as isize;
                }
            }
        }
        chain
    }

    fn rebuild(&mut self, base: &[usize]) {
        self.levels = (0..base.len())
            .map(|l| self.compute_level(base, l))
            .collect();
    }

    fn compute_level(&self, base: &[usize], l: usize) -> Level {
        let point = base[l];
        let gens: Vec<usize> = (0..self.strong.len())
            .filter(|&s| base[..l].iter().all(|&b| self.strong[s].apply(b) == b))
            .collect();
        let mut transversal = vec![None; self.degree];
        let id = Permutation::identity(self.degree);
        transversal[point] = Some((id.clone(), id));
        let mut orbit = vec![point];
        let mut k = 0;
        while k < orbit.len() {
            let p = orbit[k];
            k += 1;
            for &s in &gens {
                let q = self.strong[s].apply(p);
                if transversal[q].is_none() {
                    let u = transversal[p].as_ref().expect("orbit point").0.then(&self.strong[s]);
                    let inv = u.inverse();
                    transversal[q] = Some((u, inv));
                    orbit.push(q);
                }
            }
        }
        Level {
            point,
            gens,
            orbit,
            transversal,
        }
    }

    fn find_nontrivial_schreier_residue(&self, l: usize) -> Option<(Permutation, usize)> {
        let level = &self.levels[l];
        for &p in &level.orbit {
            let (u_p, _) = level.transversal[p].as_ref().expect("orbit point");
            for &s in &level.gens {
                let q = self.strong[s].apply(p);
                let (_, u_q_inv) = level.transversal[q].as_ref().expect("orbit closed");
                let h = u_p.then(&self.strong[s]).then(u_q_inv);
                if h.is_identity() {
                    continue;
                }
                let (residue, drop) = self.sift(h, l + 1);
                if !residue.is_identity() {
                    return Some((residue, drop));
                }
            }
        }
        None
    }

    /// Strips `h` through the levels from `start`; returns the residue and
    /// the level at which it fell out (the chain length if it passed all).
    fn sift(&self, mut h: Permutation, start: usize) -> (Permutation, usize) {
        for (l, level) in self.levels.iter().enumerate().skip(start) {
            let pt = h.apply(level.point);
            match &level.transversal[pt] {
                None => return (h, l),
                Some((_, inv)) => h = h.then(inv),
            }
        }
        (h, self.levels.len())
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.point).collect()
    }

    pub fn strong_generators(&self) -> &[Permutation] {
        &self.strong
    }

    pub fn basic_orbit_lengths(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    /// Product of the basic orbit lengths.
    pub fn order(&self) -> BigUint {
        self.levels
            .iter()
            .fold(BigUint::from(1u8), |acc, l| acc * BigUint::from(l.orbit.len()))
    }

    /// Membership test by sifting.
    pub fn contains(&self, p: &Permutation) -> bool {
        if p.degree() != self.degree {
            return false;
        }
        let (residue, _) = self.sift(p.clone(), 0);
        residue.is_identity()
    }
}

//! Graphs with a prescribed automorphism group.
//!
//! The Cayley digraph of the group on its generating set has one vertex per
//! element and an arc `g -> g*s` coloured by generator `s`. Each arc becomes
//! the path `g - head - tail - g*s`; `head` carries a pendant path of length
//! `i + 2` naming generator `i` and `tail` carries a single pendant vertex
//! marking the direction. Left multiplication preserves every gadget, and
//! the gadgets leave no other symmetry.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use super::perm::{PermGroup, Permutation};
use super::SymmetryError;
use crate::universe::{EprComplex, ObjectId};

/// Largest group order accepted by default.
pub const DEFAULT_FRUCHT_LIMIT: usize = 720;

#[derive(Debug, Clone)]
pub struct FruchtRealization {
    pub complex: EprComplex,
    /// Group elements in the order of their Cayley vertices `0..|G|`.
    pub elements: Vec<Permutation>,
    /// The generators used as arc colours, identity and repeats removed.
    pub colours: Vec<Permutation>,
    /// Per arc: source, target, colour index and the gadget's vertices
    /// `[head, tail, tail_leaf, tag_1, ..., tag_{i+2}]`.
    arcs: Vec<Arc>,
}

#[derive(Debug, Clone)]
struct Arc {
    source: usize,
    target: usize,
    colour: usize,
    gadget: Vec<usize>,
}

impl FruchtRealization {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// The automorphism of the realization induced by left multiplication
    /// with element `k`, acting on positions of `self.complex`.
    pub fn induced_automorphism(&self, k: usize) -> Permutation {
        let h = &self.elements[k];
        let index: HashMap<&Permutation, usize> =
            self.elements.iter().enumerate().map(|(i, g)| (g, i)).collect();
        let left: Vec<usize> = self.elements.iter().map(|g| index[&h.then(g)]).collect();
        let arc_index: HashMap<(usize, usize), usize> = self
            .arcs
            .iter()
            .enumerate()
            .map(|(i, a)| ((a.source, a.colour), i))
            .collect();

        let mut images = vec![0u32; self.complex.len()];
        for (g, &hg) in left.iter().enumerate() {
            images[g] = hg as u32;
        }
        for arc in &self.arcs {
            let image = &self.arcs[arc_index[&(left[arc.source], arc.colour)]];
            debug_assert_eq!(image.target, left[arc.target]);
            for (&from, &to) in arc.gadget.iter().zip(&image.gadget) {
                images[from] = to as u32;
            }
        }
        Permutation::from_images_unchecked(images)
    }
}

/// Builds a complex whose automorphism group is isomorphic to `group`.
pub fn frucht_realize(group: &PermGroup, limit: usize) -> Result<FruchtRealization, SymmetryError> {
    let order = group.order();
    if order > BigUint::from(limit) {
        return Err(SymmetryError::GroupTooLarge { order, limit });
    }
    let elements = group.elements(order.to_usize().expect("bounded by limit"))?;
    let index: HashMap<&Permutation, usize> =
        elements.iter().enumerate().map(|(i, g)| (g, i)).collect();

    let mut colours: Vec<Permutation> = Vec::new();
    for g in group.generators() {
        if !g.is_identity() && !colours.contains(g) {
            colours.push(g.clone());
        }
    }

    let mut next = elements.len();
    let mut alloc = |count: usize| {
        let start = next;
        next += count;
        (start..next).collect::<Vec<usize>>()
    };
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut arcs = Vec::new();
    for (source, g) in elements.iter().enumerate() {
        for (colour, s) in colours.iter().enumerate() {
            let target = index[&g.then(s)];
            let gadget = alloc(3 + colour + 2);
            let (head, tail, leaf) = (gadget[0], gadget[1], gadget[2]);
            edges.extend([(source, head), (head, tail), (tail, target), (tail, leaf)]);
            let mut prev = head;
            for &v in &gadget[3..] {
                edges.push((prev, v));
                prev = v;
            }
            arcs.push(Arc {
                source,
                target,
                colour,
                gadget,
            });
        }
    }

    let n = next;
    let complex = EprComplex::new(
        n,
        (0..n).map(ObjectId::from),
        edges.into_iter().map(|(a, b)| (ObjectId::from(a), ObjectId::from(b))),
    )
    .expect("gadget edges are simple");
    Ok(FruchtRealization {
        complex,
        elements,
        colours,
        arcs,
    })
}

/// Cyclic group `Z_n` acting regularly on `0..n`.
pub fn cyclic_group(n: usize) -> PermGroup {
    let gens = if n > 1 {
        vec![Permutation::from_images_unchecked(
            (0..n as u32).map(|i| (i + 1) % n as u32).collect(),
        )]
    } else {
        Vec::new()
    };
    PermGroup::new(n.max(1), gens).expect("consistent degree")
}

/// Direct product of cyclic groups acting on disjoint blocks of points.
pub fn product_of_cyclic(factors: &[usize]) -> PermGroup {
    let degree: usize = factors.iter().sum::<usize>().max(1);
    let mut gens = Vec::new();
    let mut offset = 0;
    for &n in factors {
        if n > 1 {
            let mut images: Vec<u32> = (0..degree as u32).collect();
            for i in 0..n {
                images[offset + i] = (offset + (i + 1) % n) as u32;
            }
            gens.push(Permutation::from_images_unchecked(images));
        }
        offset += n;
    }
    PermGroup::new(degree, gens).expect("consistent degree")
}

/// Symmetric group `S_n` from an `n`-cycle and a transposition.
pub fn symmetric_group(n: usize) -> PermGroup {
    if n < 2 {
        return PermGroup::trivial(n.max(1));
    }
    let cyc = (0..n as u32).map(|i| (i + 1) % n as u32).collect();
    let mut swap: Vec<u32> = (0..n as u32).collect();
    swap.swap(0, 1);
    PermGroup::new(
        n,
        vec![
            Permutation::from_images_unchecked(cyc),
            Permutation::from_images_unchecked(swap),
        ],
    )
    .expect("consistent degree")
}

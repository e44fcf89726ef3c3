//! The finite universe of EPR complexes: graphs on subsets of a global
//! object set, ordered by the induced-subgraph relation.

use std::collections::VecDeque;
use std::fmt;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Default cap on the number of free vertex pairs when enumerating aspects.
pub const DEFAULT_ENUMERATION_LIMIT: usize = 20;

/// Largest global object set that [`enumerate_universe`] accepts.
pub const MAX_ENUMERABLE_UNIVERSE: usize = 7;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum UniverseError {
    #[error("self-loop at object {0}")]
    SelfLoop(ObjectId),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(ObjectId, ObjectId),
    #[error("edge endpoint {0} is not an object of the complex")]
    EndpointOutsideObjects(ObjectId),
    #[error("object {object} lies outside the universe of {n_phi} objects")]
    ObjectOutsideUniverse { object: ObjectId, n_phi: usize },
    #[error("object {0} listed twice")]
    DuplicateObject(ObjectId),
    #[error("complex covers {covered} of {n_phi} objects and is not an aspect")]
    NotAnAspect { covered: usize, n_phi: usize },
    #[error("{free_pairs} free pairs exceed the enumeration limit of {limit} (count = {count})")]
    EnumerationTooLarge {
        free_pairs: usize,
        limit: usize,
        count: BigUint,
    },
    #[error("part {0} is not below the aspect")]
    PartNotBelowAspect(usize),
    #[error("object {0} is not in the complex")]
    ObjectNotInComplex(ObjectId),
    #[error("universe of {n_phi} objects is too large to enumerate (limit {limit})")]
    UniverseTooLarge { n_phi: usize, limit: usize },
    #[error("malformed complex json: {0}")]
    Json(String),
}

/// Dense label of an object in the global set `0..n_phi`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ObjectId(pub u32);

impl ObjectId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl From<u32> for ObjectId {
    fn from(v: u32) -> Self {
        ObjectId(v)
    }
}

impl From<usize> for ObjectId {
    fn from(v: usize) -> Self {
        ObjectId(u32::try_from(v).expect("object index exceeds u32"))
    }
}

impl From<i32> for ObjectId {
    fn from(v: i32) -> Self {
        ObjectId(u32::try_from(v).expect("negative object index"))
    }
}

impl fmt::Display for ObjectId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A finite simple graph whose vertices are a subset of the global object set.
///
/// Objects are stored ascending and edges as `(a, b)` with `a < b` in
/// lexicographic order, so derived equality and hashing are structural.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawComplex", into = "RawComplex")]
pub struct EprComplex {
    n_phi: usize,
    objects: Vec<ObjectId>,
    edges: Vec<(ObjectId, ObjectId)>,
}

#[derive(Serialize, Deserialize)]
struct RawComplex {
    n_phi: usize,
    objects: Vec<ObjectId>,
    edges: Vec<[ObjectId; 2]>,
}

impl TryFrom<RawComplex> for EprComplex {
    type Error = UniverseError;

    fn try_from(raw: RawComplex) -> Result<Self, Self::Error> {
        EprComplex::new(raw.n_phi, raw.objects, raw.edges.into_iter().map(|[a, b]| (a, b)))
    }
}

impl From<EprComplex> for RawComplex {
    fn from(c: EprComplex) -> Self {
        RawComplex {
            n_phi: c.n_phi,
            objects: c.objects,
            edges: c.edges.into_iter().map(|(a, b)| [a, b]).collect(),
        }
    }
}

impl EprComplex {
    /// Validates and canonicalizes a complex.
    pub fn new<O, P>(
        n_phi: usize,
        objects: impl IntoIterator<Item = O>,
        edges: impl IntoIterator<Item = (P, P)>,
    ) -> Result<Self, UniverseError>
    where
        O: Into<ObjectId>,
        P: Into<ObjectId>,
    {
        let mut objs: Vec<ObjectId> = objects.into_iter().map(Into::into).collect();
        objs.sort_unstable();
        for w in objs.windows(2) {
            if w[0] == w[1] {
                return Err(UniverseError::DuplicateObject(w[0]));
            }
        }
        if let Some(&last) = objs.last() {
            if last.index() >= n_phi {
                return Err(UniverseError::ObjectOutsideUniverse { object: last, n_phi });
            }
        }

        let mut es = Vec::new();
        for (a, b) in edges {
            let (a, b) = (a.into(), b.into());
            if a == b {
                return Err(UniverseError::SelfLoop(a));
            }
            for o in [a, b] {
                if objs.binary_search(&o).is_err() {
                    return Err(UniverseError::EndpointOutsideObjects(o));
                }
            }
            es.push((a.min(b), a.max(b)));
        }
        es.sort_unstable();
        for w in es.windows(2) {
            if w[0] == w[1] {
                return Err(UniverseError::DuplicateEdge(w[0].0, w[0].1));
            }
        }
        Ok(EprComplex {
            n_phi,
            objects: objs,
            edges: es,
        })
    }

    /// Builds a complex from parts already known to be canonical.
    pub(crate) fn from_sorted_unchecked(
        n_phi: usize,
        objects: Vec<ObjectId>,
        edges: Vec<(ObjectId, ObjectId)>,
    ) -> Self {
        debug_assert!(objects.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(edges.windows(2).all(|w| w[0] < w[1]));
        EprComplex {
            n_phi,
            objects,
            edges,
        }
    }

    /// The empty complex: the bottom element of the order.
    pub fn empty(n_phi: usize) -> Self {
        EprComplex {
            n_phi,
            objects: Vec::new(),
            edges: Vec::new(),
        }
    }

    pub fn n_phi(&self) -> usize {
        self.n_phi
    }

    pub fn objects(&self) -> &[ObjectId] {
        &self.objects
    }

    pub fn edges(&self) -> &[(ObjectId, ObjectId)] {
        &self.edges
    }

    /// Number of objects.
    pub fn len(&self) -> usize {
        self.objects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn contains(&self, o: ObjectId) -> bool {
        self.objects.binary_search(&o).is_ok()
    }

    /// Position of `o` in the ascending object list.
    pub fn position(&self, o: ObjectId) -> Option<usize> {
        self.objects.binary_search(&o).ok()
    }

    pub fn has_edge(&self, a: ObjectId, b: ObjectId) -> bool {
        a != b && self.edges.binary_search(&(a.min(b), a.max(b))).is_ok()
    }

    /// Adjacency lists over local positions (indices into [`Self::objects`]).
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.objects.len()];
        for &(a, b) in &self.edges {
            let (i, j) = (self.local(a), self.local(b));
            adj[i].push(j);
            adj[j].push(i);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        adj
    }

    /// Edges as pairs of local positions.
    pub fn local_edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().map(|&(a, b)| (self.local(a), self.local(b)))
    }

    fn local(&self, o: ObjectId) -> usize {
        self.objects
            .binary_search(&o)
            .expect("edge endpoint is an object")
    }

    /// Induced subcomplex on `subset`, which must lie inside the object set.
    pub fn induced(&self, subset: &[ObjectId]) -> Result<EprComplex, UniverseError> {
        let mut objs = subset.to_vec();
        objs.sort_unstable();
        objs.dedup();
        if let Some(&o) = objs.iter().find(|&&o| !self.contains(o)) {
            return Err(UniverseError::ObjectNotInComplex(o));
        }
        let edges = self
            .edges
            .iter()
            .copied()
            .filter(|(a, b)| objs.binary_search(a).is_ok() && objs.binary_search(b).is_ok())
            .collect();
        Ok(EprComplex::from_sorted_unchecked(self.n_phi, objs, edges))
    }

    /// Number of connected components; zero for the empty complex.
    pub fn component_count(&self) -> usize {
        let adj = self.adjacency();
        let mut seen = vec![false; adj.len()];
        let mut count = 0;
        for start in 0..adj.len() {
            if seen[start] {
                continue;
            }
            count += 1;
            seen[start] = true;
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                for &w in &adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
        }
        count
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() == 1
    }

    /// Compact, byte-deterministic JSON.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("complex serializes")
    }

    pub fn from_json(s: &str) -> Result<Self, UniverseError> {
        serde_json::from_str(s).map_err(|e| UniverseError::Json(e.to_string()))
    }
}

/// Validating constructor, see [`EprComplex::new`].
pub fn make_complex<O, P>(
    n_phi: usize,
    objects: impl IntoIterator<Item = O>,
    edges: impl IntoIterator<Item = (P, P)>,
) -> Result<EprComplex, UniverseError>
where
    O: Into<ObjectId>,
    P: Into<ObjectId>,
{
    EprComplex::new(n_phi, objects, edges)
}

/// `e <= f`: `e` is exactly the subgraph of `f` induced on `obj(e)`.
pub fn leq(e: &EprComplex, f: &EprComplex) -> bool {
    if e.n_phi != f.n_phi || e.len() > f.len() || e.edge_count() > f.edge_count() {
        return false;
    }
    if !e.objects.iter().all(|&o| f.contains(o)) {
        return false;
    }
    if !e.edges.iter().all(|&(a, b)| f.has_edge(a, b)) {
        return false;
    }
    let induced = f
        .edges
        .iter()
        .filter(|&&(a, b)| e.contains(a) && e.contains(b))
        .count();
    induced == e.edge_count()
}

pub fn is_aspect(e: &EprComplex) -> bool {
    e.len() == e.n_phi
}

/// A complex whose object set is the whole universe: a maximal element.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "EprComplex", into = "EprComplex")]
pub struct Aspect(EprComplex);

impl Aspect {
    pub fn new(complex: EprComplex) -> Result<Self, UniverseError> {
        if is_aspect(&complex) {
            Ok(Aspect(complex))
        } else {
            Err(UniverseError::NotAnAspect {
                covered: complex.len(),
                n_phi: complex.n_phi,
            })
        }
    }

    /// Extends `complex` to an aspect by adding every missing object as an
    /// isolated vertex.
    pub fn isolated_extension(complex: &EprComplex) -> Self {
        let objects = (0..complex.n_phi).map(ObjectId::from).collect();
        Aspect(EprComplex::from_sorted_unchecked(
            complex.n_phi,
            objects,
            complex.edges.clone(),
        ))
    }

    pub fn complex(&self) -> &EprComplex {
        &self.0
    }

    pub fn into_complex(self) -> EprComplex {
        self.0
    }
}

impl TryFrom<EprComplex> for Aspect {
    type Error = UniverseError;
    fn try_from(c: EprComplex) -> Result<Self, Self::Error> {
        Aspect::new(c)
    }
}

impl From<Aspect> for EprComplex {
    fn from(a: Aspect) -> Self {
        a.0
    }
}

impl std::ops::Deref for Aspect {
    type Target = EprComplex;
    fn deref(&self) -> &EprComplex {
        &self.0
    }
}

fn binomial2(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Vertex pairs of the universe that are not both inside `e`, in
/// lexicographic order. These are the pairs an extending aspect may choose.
fn free_pairs(e: &EprComplex) -> Vec<(ObjectId, ObjectId)> {
    let mut out = Vec::new();
    for a in 0..e.n_phi {
        for b in a + 1..e.n_phi {
            let (a, b) = (ObjectId::from(a), ObjectId::from(b));
            if !(e.contains(a) && e.contains(b)) {
                out.push((a, b));
            }
        }
    }
    out
}

/// `|{A aspect : e <= A}| = 2^(C(N,2) - C(m,2))`.
pub fn count_aspects_extending(e: &EprComplex) -> BigUint {
    let free = binomial2(e.n_phi) - binomial2(e.len());
    BigUint::from(1u8) << free
}

/// Every aspect above `e`, each exactly once. Aspect `k` in the output adds
/// the free pairs selected by the bits of `k`.
pub fn aspects_extending(e: &EprComplex, limit: usize) -> Result<Vec<Aspect>, UniverseError> {
    let pairs = free_pairs(e);
    if pairs.len() > limit {
        return Err(UniverseError::EnumerationTooLarge {
            free_pairs: pairs.len(),
            limit,
            count: count_aspects_extending(e),
        });
    }
    let objects: Vec<ObjectId> = (0..e.n_phi).map(ObjectId::from).collect();
    let total = 1usize << pairs.len();
    let mut out = Vec::with_capacity(total);
    for mask in 0..total {
        let mut edges = e.edges.clone();
        edges.extend(
            pairs
                .iter()
                .enumerate()
                .filter(|(bit, _)| mask >> bit & 1 == 1)
                .map(|(_, &p)| p),
        );
        edges.sort_unstable();
        out.push(Aspect(EprComplex::from_sorted_unchecked(
            e.n_phi,
            objects.clone(),
            edges,
        )));
    }
    Ok(out)
}

/// The join in `aspect`: the subgraph of the aspect induced on the union of
/// the parts' objects.
pub fn join_in_aspect(aspect: &Aspect, parts: &[EprComplex]) -> Result<EprComplex, UniverseError> {
    let mut union = Vec::new();
    for (i, part) in parts.iter().enumerate() {
        if !leq(part, aspect) {
            return Err(UniverseError::PartNotBelowAspect(i));
        }
        union.extend_from_slice(&part.objects);
    }
    aspect.induced(&union)
}

/// All maximal common lower bounds of a pair of complexes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LowerBoundSet {
    /// Sorted by object count descending, then object list ascending.
    pub bounds: Vec<EprComplex>,
    pub unique: bool,
    /// Index of the deterministic pick; always 0 given the ordering.
    pub selected: usize,
}

impl LowerBoundSet {
    pub fn selected(&self) -> &EprComplex {
        &self.bounds[self.selected]
    }
}

/// Maximal common lower bounds of `e` and `a`.
///
/// A common lower bound is fixed by its object set `S`, which must lie in
/// both complexes with `e[S] == a[S]`. Such sets are the independent sets of
/// the graph of pairs on which `e` and `a` disagree, so the maximal bounds
/// are its maximal independent sets.
pub fn meet(e: &EprComplex, a: &EprComplex) -> LowerBoundSet {
    if e.n_phi != a.n_phi {
        return LowerBoundSet {
            bounds: vec![EprComplex::empty(e.n_phi)],
            unique: true,
            selected: 0,
        };
    }
    let common: Vec<ObjectId> = e
        .objects
        .iter()
        .copied()
        .filter(|&o| a.contains(o))
        .collect();
    let n = common.len();
    // compatible[i][j]: e and a agree on the pair
    let mut compatible = vec![vec![false; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let agree = e.has_edge(common[i], common[j]) == a.has_edge(common[i], common[j]);
            compatible[i][j] = agree;
            compatible[j][i] = agree;
        }
    }

    let mut cliques = Vec::new();
    bron_kerbosch(
        &compatible,
        &mut Vec::new(),
        (0..n).collect(),
        Vec::new(),
        &mut cliques,
    );

    let mut bounds: Vec<EprComplex> = cliques
        .into_iter()
        .map(|c| {
            let objs: Vec<ObjectId> = c.into_iter().map(|i| common[i]).collect();
            e.induced(&objs).expect("common objects lie in e")
        })
        .collect();
    bounds.sort_by(|x, y| y.len().cmp(&x.len()).then_with(|| x.objects.cmp(&y.objects)));
    LowerBoundSet {
        unique: bounds.len() == 1,
        bounds,
        selected: 0,
    }
}

fn bron_kerbosch(
    adj: &[Vec<bool>],
    r: &mut Vec<usize>,
    mut p: Vec<usize>,
    mut x: Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if p.is_empty() {
        if x.is_empty() {
            out.push(r.clone());
        }
        return;
    }
    let pivot = p
        .iter()
        .chain(x.iter())
        .copied()
        .max_by_key(|&u| p.iter().filter(|&&v| adj[u][v]).count())
        .expect("p is nonempty");
    let candidates: Vec<usize> = p.iter().copied().filter(|&v| !adj[pivot][v]).collect();
    for v in candidates {
        r.push(v);
        let np = p.iter().copied().filter(|&w| adj[v][w]).collect();
        let nx = x.iter().copied().filter(|&w| adj[v][w]).collect();
        bron_kerbosch(adj, r, np, nx, out);
        r.pop();
        p.retain(|&w| w != v);
        x.push(v);
    }
}

/// Breadth-first distances from `center` over local positions; `None` marks
/// unreachable objects.
pub fn distances_from(e: &EprComplex, center: ObjectId) -> Result<Vec<Option<usize>>, UniverseError> {
    let start = e
        .position(center)
        .ok_or(UniverseError::ObjectNotInComplex(center))?;
    let adj = e.adjacency();
    let mut dist = vec![None; adj.len()];
    dist[start] = Some(0);
    let mut queue = VecDeque::from([start]);
    while let Some(v) = queue.pop_front() {
        let d = dist[v].expect("queued vertices have a distance");
        for &w in &adj[v] {
            if dist[w].is_none() {
                dist[w] = Some(d + 1);
                queue.push_back(w);
            }
        }
    }
    Ok(dist)
}

/// Shortest-path edge count, `None` when `o2` is unreachable from `o1`.
pub fn graph_distance(
    e: &EprComplex,
    o1: ObjectId,
    o2: ObjectId,
) -> Result<Option<usize>, UniverseError> {
    let target = e.position(o2).ok_or(UniverseError::ObjectNotInComplex(o2))?;
    Ok(distances_from(e, o1)?[target])
}

/// Every complex over a universe of `n_phi` objects, grouped by object
/// subset (subset bitmask ascending), then by edge bitmask.
pub fn enumerate_universe(n_phi: usize) -> Result<Vec<EprComplex>, UniverseError> {
    if n_phi > MAX_ENUMERABLE_UNIVERSE {
        return Err(UniverseError::UniverseTooLarge {
            n_phi,
            limit: MAX_ENUMERABLE_UNIVERSE,
        });
    }
    let mut out = Vec::new();
    for subset in 0u32..(1 << n_phi) {
        let objects: Vec<ObjectId> = (0..n_phi as u32)
            .filter(|b| subset >> b & 1 == 1)
            .map(ObjectId)
            .collect();
        let mut pairs = Vec::new();
        for i in 0..objects.len() {
            for j in i + 1..objects.len() {
                pairs.push((objects[i], objects[j]));
            }
        }
        for mask in 0u64..(1 << pairs.len()) {
            let edges = pairs
                .iter()
                .enumerate()
                .filter(|(bit, _)| mask >> bit & 1 == 1)
                .map(|(_, &p)| p)
                .collect();
            out.push(EprComplex::from_sorted_unchecked(n_phi, objects.clone(), edges));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(n: usize, objs: &[u32], edges: &[(u32, u32)]) -> EprComplex {
        EprComplex::new(n, objs.iter().copied(), edges.iter().copied()).unwrap()
    }

    #[test]
    fn construction_canonicalizes() {
        let e = c(3, &[2, 0, 1], &[(2, 1), (0, 1)]);
        assert_eq!(e.objects(), &[ObjectId(0), ObjectId(1), ObjectId(2)]);
        assert_eq!(e.edges(), &[(ObjectId(0), ObjectId(1)), (ObjectId(1), ObjectId(2))]);
        let single = c(1, &[0], &[]);
        assert_eq!(single.len(), 1);
        assert_eq!(single.edge_count(), 0);
    }

    #[test]
    fn construction_errors() {
        assert_eq!(
            EprComplex::new(2, [0u32, 1], [(0u32, 0u32)]),
            Err(UniverseError::SelfLoop(ObjectId(0)))
        );
        assert_eq!(
            EprComplex::new(3, [0u32, 1], [(0u32, 1u32), (1, 0)]),
            Err(UniverseError::DuplicateEdge(ObjectId(0), ObjectId(1)))
        );
        assert_eq!(
            EprComplex::new(3, [0u32, 1], [(0u32, 2u32)]),
            Err(UniverseError::EndpointOutsideObjects(ObjectId(2)))
        );
        assert!(matches!(
            EprComplex::new(2, [0u32, 5], Vec::<(u32, u32)>::new()),
            Err(UniverseError::ObjectOutsideUniverse { .. })
        ));
        assert_eq!(
            EprComplex::new(2, [1u32, 1], Vec::<(u32, u32)>::new()),
            Err(UniverseError::DuplicateObject(ObjectId(1)))
        );
    }

    #[test]
    fn leq_examples() {
        let edge = c(3, &[0, 1], &[(0, 1)]);
        let tri = c(3, &[0, 1, 2], &[(0, 1), (0, 2), (1, 2)]);
        let edgeless = c(3, &[0, 1], &[]);
        assert!(leq(&edge, &tri));
        assert!(!leq(&edgeless, &tri));
        assert!(leq(&tri, &tri));
        assert!(!leq(&tri, &edge));
        assert!(leq(&EprComplex::empty(3), &tri));
    }

    #[test]
    fn aspect_predicate() {
        assert!(is_aspect(&c(3, &[0, 1, 2], &[(0, 1), (0, 2), (1, 2)])));
        assert!(is_aspect(&c(3, &[0, 1, 2], &[])));
        assert!(!is_aspect(&c(3, &[0, 2], &[])));
        assert!(Aspect::new(c(3, &[0, 2], &[])).is_err());
    }

    #[test]
    fn aspect_counts() {
        let tri = c(4, &[0, 1, 2], &[(0, 1), (0, 2), (1, 2)]);
        assert_eq!(count_aspects_extending(&tri), BigUint::from(8u32));
        assert_eq!(aspects_extending(&tri, 20).unwrap().len(), 8);

        let full = c(4, &[0, 1, 2, 3], &[(0, 3)]);
        assert_eq!(count_aspects_extending(&full), BigUint::from(1u32));
        assert_eq!(aspects_extending(&full, 20).unwrap()[0].complex(), &full);

        let single = c(4, &[2], &[]);
        let all = aspects_extending(&single, 20).unwrap();
        assert_eq!(all.len(), 64);
        let mut distinct = all.clone();
        distinct.sort_by(|a, b| a.edges().cmp(b.edges()));
        distinct.dedup();
        assert_eq!(distinct.len(), 64);
        assert!(all.iter().all(|a| leq(&single, a)));
    }

    #[test]
    fn enumeration_limit_reports_count() {
        let single = c(8, &[0], &[]);
        match aspects_extending(&single, 20) {
            Err(UniverseError::EnumerationTooLarge {
                free_pairs, count, ..
            }) => {
                assert_eq!(free_pairs, 28);
                assert_eq!(count, BigUint::from(1u64 << 28));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn join_examples() {
        let tri = Aspect::new(c(3, &[0, 1, 2], &[(0, 1), (0, 2), (1, 2)])).unwrap();
        let j = join_in_aspect(&tri, &[c(3, &[0], &[]), c(3, &[1], &[])]).unwrap();
        assert_eq!(j, c(3, &[0, 1], &[(0, 1)]));

        let path = Aspect::new(c(3, &[0, 1, 2], &[(0, 1), (1, 2)])).unwrap();
        let j = join_in_aspect(&path, &[c(3, &[0], &[]), c(3, &[2], &[])]).unwrap();
        assert_eq!(j, c(3, &[0, 2], &[]));

        let e = c(3, &[1, 2], &[(1, 2)]);
        assert_eq!(join_in_aspect(&path, std::slice::from_ref(&e)).unwrap(), e);

        let bad = c(3, &[0, 2], &[(0, 2)]);
        assert_eq!(
            join_in_aspect(&path, &[e, bad]),
            Err(UniverseError::PartNotBelowAspect(1))
        );
    }

    #[test]
    fn meet_examples() {
        let tri = c(4, &[0, 1, 2], &[(0, 1), (0, 2), (1, 2)]);
        let k4 = c(4, &[0, 1, 2, 3], &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        let m = meet(&tri, &k4);
        assert!(m.unique);
        assert_eq!(m.bounds, vec![tri.clone()]);

        let edge = c(3, &[0, 1], &[(0, 1)]);
        let edgeless = c(3, &[0, 1, 2], &[]);
        let m = meet(&edge, &edgeless);
        assert!(!m.unique);
        assert_eq!(m.bounds, vec![c(3, &[0], &[]), c(3, &[1], &[])]);
        assert_eq!(m.selected(), &c(3, &[0], &[]));

        let disjoint = meet(&c(3, &[0], &[]), &c(3, &[1], &[]));
        assert!(disjoint.unique);
        assert!(disjoint.selected().is_empty());
    }

    #[test]
    fn distances() {
        let c6 = c(6, &[0, 1, 2, 3, 4, 5], &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (0, 5)]);
        assert_eq!(graph_distance(&c6, ObjectId(2), ObjectId(2)), Ok(Some(0)));
        assert_eq!(graph_distance(&c6, ObjectId(0), ObjectId(3)), Ok(Some(3)));
        let two = c(4, &[0, 1, 2, 3], &[(0, 1), (2, 3)]);
        assert_eq!(graph_distance(&two, ObjectId(0), ObjectId(3)), Ok(None));
        assert_eq!(
            graph_distance(&two, ObjectId(0), ObjectId(9)),
            Err(UniverseError::ObjectNotInComplex(ObjectId(9)))
        );
    }

    #[test]
    fn universe_size() {
        assert_eq!(enumerate_universe(4).unwrap().len(), 113);
        assert_eq!(enumerate_universe(0).unwrap().len(), 1);
        assert!(enumerate_universe(8).is_err());
    }

    #[test]
    fn json_format_is_stable() {
        let e = c(4, &[0, 1, 3], &[(3, 1), (0, 1)]);
        assert_eq!(
            e.to_json(),
            r#"{"n_phi":4,"objects":[0,1,3],"edges":[[0,1],[1,3]]}"#
        );
        assert_eq!(EprComplex::from_json(&e.to_json()).unwrap(), e);
        assert!(EprComplex::from_json(r#"{"n_phi":2,"objects":[0,1],"edges":[[1,1]]}"#).is_err());
    }
}

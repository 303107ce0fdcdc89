//! Simple undirected graphs with stable opaque vertex ids, rotation systems,
//! faces and FVS instances.

mod instance;
mod plane;

pub(crate) use instance::check_ham_order;
pub use instance::{HamCycle, Instance};
pub use plane::{faces, faces_half_edges, PlaneGraph, Rotation};

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Opaque vertex identifier. Ids come from a monotone counter and are
/// never reused within one graph lineage.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexId(pub u32);

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Normalised undirected edge, smaller id first.
pub type Edge = (VertexId, VertexId);

pub fn edge(u: VertexId, v: VertexId) -> Edge {
    if u <= v {
        (u, v)
    } else {
        (v, u)
    }
}

/// Simple undirected graph. No self-loops, no parallel edges.
#[derive(Clone, Debug, Default)]
pub struct Graph {
    adj: BTreeMap<VertexId, BTreeSet<VertexId>>,
    next_id: u32,
    m: usize,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.adj == other.adj
    }
}

impl Eq for Graph {}

impl Graph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Graph on `n` fresh isolated vertices.
    pub fn with_vertices(n: usize) -> (Self, Vec<VertexId>) {
        let mut g = Self::new();
        let ids = (0..n).map(|_| g.add_vertex()).collect();
        (g, ids)
    }

    /// Builds a graph from an edge list over ids `0..n`.
    pub fn from_edges(n: usize, edges: &[(u32, u32)]) -> Result<Self> {
        let (mut g, ids) = Self::with_vertices(n);
        for &(a, b) in edges {
            let (a, b) = (a as usize, b as usize);
            if a >= n || b >= n {
                return Err(Error::VertexNotPresent(VertexId(a.max(b) as u32)));
            }
            g.add_edge(ids[a], ids[b])?;
        }
        Ok(g)
    }

    pub fn add_vertex(&mut self) -> VertexId {
        let id = VertexId(self.next_id);
        self.next_id += 1;
        self.adj.insert(id, BTreeSet::new());
        id
    }

    /// Inserts a vertex with a caller-chosen id (used by parsers and replay).
    pub fn insert_vertex(&mut self, id: VertexId) -> bool {
        self.next_id = self.next_id.max(id.0 + 1);
        if self.adj.contains_key(&id) {
            return false;
        }
        self.adj.insert(id, BTreeSet::new());
        true
    }

    pub fn next_id(&self) -> u32 {
        self.next_id
    }

    /// Raises the id counter so later allocations start at `at_least`.
    pub fn reserve_ids(&mut self, at_least: u32) {
        self.next_id = self.next_id.max(at_least);
    }

    /// Adds edge `uv`. Returns `false` if it already existed.
    pub fn add_edge(&mut self, u: VertexId, v: VertexId) -> Result<bool> {
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        self.require(u)?;
        self.require(v)?;
        let fresh = self.adj.get_mut(&u).unwrap().insert(v);
        if fresh {
            self.adj.get_mut(&v).unwrap().insert(u);
            self.m += 1;
        }
        Ok(fresh)
    }

    pub fn remove_edge(&mut self, u: VertexId, v: VertexId) -> Result<()> {
        if !self.has_edge(u, v) {
            return Err(Error::EdgeNotPresent(u, v));
        }
        self.adj.get_mut(&u).unwrap().remove(&v);
        self.adj.get_mut(&v).unwrap().remove(&u);
        self.m -= 1;
        Ok(())
    }

    pub fn remove_vertex(&mut self, v: VertexId) -> Result<()> {
        let nbrs = self.adj.remove(&v).ok_or(Error::VertexNotPresent(v))?;
        for w in &nbrs {
            self.adj.get_mut(w).unwrap().remove(&v);
        }
        self.m -= nbrs.len();
        Ok(())
    }

    fn require(&self, v: VertexId) -> Result<()> {
        if self.adj.contains_key(&v) {
            Ok(())
        } else {
            Err(Error::VertexNotPresent(v))
        }
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.adj.contains_key(&v)
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.adj.get(&u).is_some_and(|s| s.contains(&v))
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adj.get(&v).map_or(0, |s| s.len())
    }

    pub fn neighbors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.adj.get(&v).into_iter().flat_map(|s| s.iter().copied())
    }

    pub fn neighbor_set(&self, v: VertexId) -> &BTreeSet<VertexId> {
        static EMPTY: BTreeSet<VertexId> = BTreeSet::new();
        self.adj.get(&v).unwrap_or(&EMPTY)
    }

    /// Vertices in increasing id order.
    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.adj.keys().copied()
    }

    /// Edges `(u, v)` with `u < v`, lexicographically sorted.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.adj
            .iter()
            .flat_map(|(&u, s)| s.range(u..).map(move |&v| (u, v)))
    }

    pub fn max_degree(&self) -> usize {
        self.adj.values().map(|s| s.len()).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        self.adj.values().map(|s| s.len()).min().unwrap_or(0)
    }

    /// `Some(r)` if every vertex has degree `r`. The empty graph is not regular.
    pub fn check_regular(&self) -> Option<usize> {
        let mut it = self.adj.values().map(|s| s.len());
        let r = it.next()?;
        it.all(|d| d == r).then_some(r)
    }

    /// True if every vertex has degree `r` (vacuously true when empty).
    pub fn is_regular(&self, r: usize) -> bool {
        self.adj.values().all(|s| s.len() == r)
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<VertexId>> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for s in self.vertices() {
            if seen.contains(&s) {
                continue;
            }
            seen.insert(s);
            let mut comp = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                for w in self.neighbors(v) {
                    if seen.insert(w) {
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Subgraph induced by `keep`; ids are preserved.
    pub fn induced(&self, keep: &BTreeSet<VertexId>) -> Graph {
        let mut g = Graph { next_id: self.next_id, ..Graph::default() };
        for &v in keep {
            if self.contains(v) {
                g.adj.insert(v, BTreeSet::new());
            }
        }
        for (u, v) in self.edges() {
            if keep.contains(&u) && keep.contains(&v) {
                g.add_edge(u, v).unwrap();
            }
        }
        g
    }

    /// `G - removed`.
    pub fn without(&self, removed: &BTreeSet<VertexId>) -> Graph {
        let keep = self.vertices().filter(|v| !removed.contains(v)).collect();
        self.induced(&keep)
    }

    /// True if the graph has no cycle.
    pub fn is_forest(&self) -> bool {
        self.m + self.components().len() == self.n()
    }

    /// Replaces edge `uv` by a path `u - w - v` and returns the new vertex `w`.
    pub fn subdivide_in_place(&mut self, u: VertexId, v: VertexId) -> Result<VertexId> {
        self.remove_edge(u, v)?;
        let w = self.add_vertex();
        self.add_edge(u, w)?;
        self.add_edge(w, v)?;
        Ok(w)
    }

    /// Merges `v` into `u`. Parallel edges collapse and an edge `uv`
    /// disappears. Returns the surviving vertex `u`.
    pub fn identify_in_place(&mut self, u: VertexId, v: VertexId) -> Result<VertexId> {
        if u == v {
            return Err(Error::IdentifySame);
        }
        self.require(u)?;
        let nbrs: Vec<VertexId> = self.neighbors(v).collect();
        self.remove_vertex(v)?;
        for w in nbrs {
            if w != u {
                self.add_edge(u, w)?;
            }
        }
        Ok(u)
    }

    /// Pure variant of [`Graph::subdivide_in_place`].
    pub fn subdivide_edge(&self, u: VertexId, v: VertexId) -> Result<(Graph, VertexId)> {
        let mut g = self.clone();
        let w = g.subdivide_in_place(u, v)?;
        Ok((g, w))
    }

    /// Pure variant of [`Graph::identify_in_place`].
    pub fn identify(&self, u: VertexId, v: VertexId) -> Result<Graph> {
        let mut g = self.clone();
        g.identify_in_place(u, v)?;
        Ok(g)
    }

    /// Repeatedly deletes vertices of degree at most one. Returns the
    /// stripped graph and the removed vertices in removal order.
    pub fn strip_low_degree(&self) -> (Graph, Vec<VertexId>) {
        let mut g = self.clone();
        let mut removed = Vec::new();
        let mut queue: VecDeque<VertexId> = g.vertices().filter(|&v| g.degree(v) <= 1).collect();
        while let Some(v) = queue.pop_front() {
            if !g.contains(v) || g.degree(v) > 1 {
                continue;
            }
            let nbrs: Vec<VertexId> = g.neighbors(v).collect();
            g.remove_vertex(v).unwrap();
            removed.push(v);
            for w in nbrs {
                if g.degree(w) <= 1 {
                    queue.push_back(w);
                }
            }
        }
        (g, removed)
    }

    /// Adds a disjoint copy of `part` (a subset of this graph's vertices)
    /// with fresh ids allocated in increasing order of the originals.
    pub fn copy_disjoint(&mut self, part: &[VertexId]) -> BTreeMap<VertexId, VertexId> {
        let mut sorted = part.to_vec();
        sorted.sort();
        let map: BTreeMap<VertexId, VertexId> = sorted.iter().map(|&v| (v, self.add_vertex())).collect();
        for &v in &sorted {
            let nbrs: Vec<VertexId> = self.neighbors(v).filter(|w| map.contains_key(w)).collect();
            for w in nbrs {
                if v < w {
                    self.add_edge(map[&v], map[&w]).unwrap();
                }
            }
        }
        map
    }

    /// Order-preserving relabeling onto ids `0..n`, with the id map.
    pub fn compact(&self) -> (Graph, BTreeMap<VertexId, VertexId>) {
        let map: BTreeMap<VertexId, VertexId> =
            self.vertices().enumerate().map(|(i, v)| (v, VertexId(i as u32))).collect();
        let (mut g, _) = Graph::with_vertices(self.n());
        for (a, b) in self.edges() {
            g.add_edge(map[&a], map[&b]).unwrap();
        }
        (g, map)
    }

    /// Dense index of vertices (sorted ids) for array-based algorithms.
    pub fn index(&self) -> (Vec<VertexId>, BTreeMap<VertexId, usize>) {
        let verts: Vec<VertexId> = self.vertices().collect();
        let idx = verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        (verts, idx)
    }

    /// Adjacency lists over dense indices.
    pub fn dense_adjacency(&self) -> (Vec<VertexId>, Vec<Vec<usize>>) {
        let (verts, idx) = self.index();
        let adj = verts
            .iter()
            .map(|v| self.neighbors(*v).map(|w| idx[&w]).collect())
            .collect();
        (verts, adj)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Graph {
        let edges: Vec<(u32, u32)> = (0..n as u32).map(|i| (i, (i + 1) % n as u32)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    #[test]
    fn subdivide_triangle() {
        let g = cycle(3);
        let (h, w) = g.subdivide_edge(VertexId(0), VertexId(1)).unwrap();
        assert_eq!((h.n(), h.m()), (4, 4));
        assert_eq!(h.degree(w), 2);
        assert_eq!(w, VertexId(3));
        assert!(!h.has_edge(VertexId(0), VertexId(1)));
    }

    #[test]
    fn subdivide_missing_edge() {
        let g = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(
            g.subdivide_edge(VertexId(0), VertexId(2)).unwrap_err(),
            Error::EdgeNotPresent(VertexId(0), VertexId(2))
        );
    }

    #[test]
    fn identify_collapses_parallel_edges() {
        let g = Graph::from_edges(4, &[(0, 2), (1, 2), (1, 3)]).unwrap();
        let h = g.identify(VertexId(0), VertexId(1)).unwrap();
        assert_eq!(h.n(), 3);
        assert_eq!(h.m(), 2);
        assert_eq!(h.degree(VertexId(0)), 2);
        assert_eq!(g.identify(VertexId(1), VertexId(1)).unwrap_err(), Error::IdentifySame);
    }

    #[test]
    fn strip_path_to_empty() {
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let (h, removed) = g.strip_low_degree();
        assert!(h.is_empty());
        assert_eq!(removed.len(), 4);
    }

    #[test]
    fn strip_keeps_cycle_drops_tail() {
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4)]).unwrap();
        let (h, removed) = g.strip_low_degree();
        assert_eq!(h.n(), 3);
        assert_eq!(removed, vec![VertexId(4), VertexId(3)]);
    }

    #[test]
    fn regularity() {
        assert_eq!(cycle(5).check_regular(), Some(2));
        let g = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(g.check_regular(), None);
        assert_eq!(Graph::new().check_regular(), None);
    }

    #[test]
    fn copy_disjoint_preserves_structure() {
        let mut g = cycle(4);
        let part: Vec<VertexId> = g.vertices().collect();
        let map = g.copy_disjoint(&part);
        assert_eq!((g.n(), g.m()), (8, 8));
        assert_eq!(g.components().len(), 2);
        assert!(g.has_edge(map[&VertexId(0)], map[&VertexId(1)]));
    }
}

use std::collections::{BTreeMap, BTreeSet};

use super::{Graph, VertexId};
use crate::error::{Error, Result};

/// Combinatorial embedding: the clockwise cyclic order of neighbours
/// around every vertex.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Rotation {
    cw: BTreeMap<VertexId, Vec<VertexId>>,
}

impl Rotation {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_map(cw: BTreeMap<VertexId, Vec<VertexId>>) -> Self {
        Self { cw }
    }

    pub fn into_map(self) -> BTreeMap<VertexId, Vec<VertexId>> {
        self.cw
    }

    pub fn order(&self, v: VertexId) -> &[VertexId] {
        self.cw.get(&v).map_or(&[], |l| l.as_slice())
    }

    pub fn set_order(&mut self, v: VertexId, order: Vec<VertexId>) {
        self.cw.insert(v, order);
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.cw.keys().copied()
    }

    fn pos(&self, v: VertexId, w: VertexId) -> usize {
        self.cw[&v]
            .iter()
            .position(|&x| x == w)
            .unwrap_or_else(|| panic!("{w} is not in the rotation of {v}"))
    }

    /// Neighbour following `w` clockwise around `v`.
    pub fn cw_next(&self, v: VertexId, w: VertexId) -> VertexId {
        let l = &self.cw[&v];
        l[(self.pos(v, w) + 1) % l.len()]
    }

    /// Neighbour following `w` counter-clockwise around `v`.
    pub fn ccw_next(&self, v: VertexId, w: VertexId) -> VertexId {
        let l = &self.cw[&v];
        l[(self.pos(v, w) + l.len() - 1) % l.len()]
    }

    /// Places `w` immediately clockwise after `reference` around `v`.
    pub fn insert_cw(&mut self, v: VertexId, w: VertexId, reference: VertexId) {
        let p = self.pos(v, reference);
        self.cw.get_mut(&v).unwrap().insert(p + 1, w);
    }

    /// Places `w` immediately counter-clockwise before `reference` around `v`.
    pub fn insert_ccw(&mut self, v: VertexId, w: VertexId, reference: VertexId) {
        let p = self.pos(v, reference);
        self.cw.get_mut(&v).unwrap().insert(p, w);
    }

    pub fn push(&mut self, v: VertexId, w: VertexId) {
        self.cw.entry(v).or_default().push(w);
    }

    /// Replaces neighbour `old` of `v` by `new` in place.
    pub fn replace(&mut self, v: VertexId, old: VertexId, new: VertexId) {
        let p = self.pos(v, old);
        self.cw.get_mut(&v).unwrap()[p] = new;
    }

    pub fn remove_vertex(&mut self, v: VertexId) {
        if let Some(nbrs) = self.cw.remove(&v) {
            for w in nbrs {
                if let Some(l) = self.cw.get_mut(&w) {
                    l.retain(|&x| x != v);
                }
            }
        }
    }

    /// Half-edge following `(v, w)` along its face.
    pub fn next_half_edge(&self, v: VertexId, w: VertexId) -> (VertexId, VertexId) {
        (w, self.ccw_next(w, v))
    }

    /// Checks that every list is a permutation of the vertex's neighbours.
    pub fn matches(&self, g: &Graph) -> Result<()> {
        if self.cw.len() != g.n() {
            return Err(Error::BadRotation("vertex sets differ".into()));
        }
        for v in g.vertices() {
            let l = self.cw.get(&v).ok_or_else(|| Error::BadRotation(format!("no rotation at {v}")))?;
            let set: BTreeSet<VertexId> = l.iter().copied().collect();
            if set.len() != l.len() || &set != g.neighbor_set(v) {
                return Err(Error::BadRotation(format!("rotation at {v} does not match its neighbours")));
            }
        }
        Ok(())
    }
}

/// All faces of a rotation system as half-edge cycles, over every component.
pub fn faces_half_edges(rot: &Rotation) -> Vec<Vec<(VertexId, VertexId)>> {
    let mut seen: BTreeSet<(VertexId, VertexId)> = BTreeSet::new();
    let mut out = Vec::new();
    for v in rot.vertices() {
        for &w in rot.order(v) {
            if seen.contains(&(v, w)) {
                continue;
            }
            let mut face = Vec::new();
            let mut he = (v, w);
            while seen.insert(he) {
                face.push(he);
                he = rot.next_half_edge(he.0, he.1);
            }
            out.push(face);
        }
    }
    out
}

/// Faces of a connected plane graph, each as its boundary walk.
/// A graph with a single vertex and no edges has one face.
pub fn faces(pg: &PlaneGraph) -> Result<Vec<Vec<VertexId>>> {
    if !pg.graph.is_connected() {
        return Err(Error::FacesDisconnected);
    }
    if pg.graph.m() == 0 {
        return Ok(pg.graph.vertices().map(|v| vec![v]).collect());
    }
    Ok(faces_half_edges(&pg.rotation)
        .into_iter()
        .map(|f| f.into_iter().map(|(v, _)| v).collect())
        .collect())
}

/// A graph together with a planar rotation system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaneGraph {
    pub graph: Graph,
    pub rotation: Rotation,
}

impl PlaneGraph {
    /// Validates that `rotation` matches `graph` and has genus zero on
    /// every component.
    pub fn new(graph: Graph, rotation: Rotation) -> Result<Self> {
        rotation.matches(&graph)?;
        let pg = Self { graph, rotation };
        if !pg.euler_ok() {
            return Err(Error::BadRotation("Euler characteristic is not 2".into()));
        }
        Ok(pg)
    }

    /// Embeds `graph` with the planarity tester.
    pub fn embed(graph: Graph) -> Result<Self> {
        let rotation = crate::oracle::planarity::planar_embedding(&graph).ok_or(Error::NotPlanar)?;
        Self::new(graph, rotation)
    }

    /// `V - E + F = 2` on each component (an isolated vertex has one face).
    pub fn euler_ok(&self) -> bool {
        let comps = self.graph.components();
        let mut comp_of = BTreeMap::new();
        for (i, c) in comps.iter().enumerate() {
            for &v in c {
                comp_of.insert(v, i);
            }
        }
        let mut f = vec![0i64; comps.len()];
        for face in faces_half_edges(&self.rotation) {
            f[comp_of[&face[0].0]] += 1;
        }
        let mut e = vec![0i64; comps.len()];
        for (u, _) in self.graph.edges() {
            e[comp_of[&u]] += 1;
        }
        comps.iter().enumerate().all(|(i, c)| {
            let faces = if e[i] == 0 { 1 } else { f[i] };
            c.len() as i64 - e[i] + faces == 2
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k4_plane() -> PlaneGraph {
        let g = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (2, 3), (3, 1)]).unwrap();
        let v = |i| VertexId(i);
        let mut rot = Rotation::new();
        rot.set_order(v(0), vec![v(1), v(2), v(3)]);
        rot.set_order(v(1), vec![v(0), v(3), v(2)]);
        rot.set_order(v(2), vec![v(0), v(1), v(3)]);
        rot.set_order(v(3), vec![v(0), v(2), v(1)]);
        PlaneGraph::new(g, rot).unwrap()
    }

    #[test]
    fn k4_has_four_triangular_faces() {
        let f = faces(&k4_plane()).unwrap();
        assert_eq!(f.len(), 4);
        assert!(f.iter().all(|face| face.len() == 3));
    }

    #[test]
    fn wrong_rotation_rejected() {
        let pg = k4_plane();
        let mut rot = pg.rotation.clone();
        let v = |i| VertexId(i);
        rot.set_order(v(0), vec![v(1), v(3), v(2)]);
        assert!(PlaneGraph::new(pg.graph.clone(), rot).is_err());
    }

    #[test]
    fn faces_of_disconnected_graph() {
        let g = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        let pg = PlaneGraph::embed(g).unwrap();
        assert_eq!(faces(&pg).unwrap_err(), Error::FacesDisconnected);
    }
}

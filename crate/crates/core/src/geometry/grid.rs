//! Straight-line grid drawings through a canonical ordering of a
//! triangulated embedding (shift method).

use std::collections::{BTreeMap, BTreeSet};

use super::{rotation_from_coords, Drawing, Point};
use crate::error::{Error, Result};
use crate::graph::{Graph, PlaneGraph, Rotation, VertexId};

/// Integer straight-line drawing of a plane graph.
#[derive(Clone, Debug)]
pub struct GridEmbedding {
    /// The graph with the rotation read off the drawing.
    pub plane: PlaneGraph,
    pub coords: BTreeMap<VertexId, (i64, i64)>,
}

impl GridEmbedding {
    /// Validates the drawing: distinct points, no crossings, and for three or
    /// more vertices `0 <= x <= 2n - 4`, `0 <= y <= n - 2`.
    pub fn new(graph: Graph, coords: BTreeMap<VertexId, (i64, i64)>) -> Result<Self> {
        if coords.len() != graph.n() || graph.vertices().any(|v| !coords.contains_key(&v)) {
            return Err(Error::Certification("coordinates do not cover the vertex set".into()));
        }
        let points = to_points(&coords);
        if !super::straight_line_crossing_free(&graph, &points) {
            return Err(Error::Certification("grid drawing has a crossing".into()));
        }
        let rotation = rotation_from_coords(&graph, &points, &BTreeMap::new());
        let plane = PlaneGraph::new(graph, rotation)?;
        let emb = Self { plane, coords };
        if !emb.within_bounds() {
            return Err(Error::Certification("grid drawing exceeds the (2n-4) x (n-2) box".into()));
        }
        Ok(emb)
    }

    pub fn graph(&self) -> &Graph {
        &self.plane.graph
    }

    pub fn within_bounds(&self) -> bool {
        let n = self.coords.len() as i64;
        if n < 3 {
            return true;
        }
        self.coords.values().all(|&(x, y)| (0..=2 * n - 4).contains(&x) && (0..=n - 2).contains(&y))
    }

    pub fn points(&self) -> BTreeMap<VertexId, Point> {
        to_points(&self.coords)
    }

    pub fn drawing(&self) -> Drawing {
        Drawing::new(self.plane.graph.clone(), self.points())
    }
}

fn to_points(c: &BTreeMap<VertexId, (i64, i64)>) -> BTreeMap<VertexId, Point> {
    c.iter().map(|(&v, &(x, y))| (v, Point::from_ints(x, y))).collect()
}

/// Embeds `g` with the planarity tester, then draws it on the grid.
pub fn grid_embed_graph(g: &Graph) -> Result<GridEmbedding> {
    grid_embed(&PlaneGraph::embed(g.clone())?)
}

/// Draws a plane graph on the `(2n-4) x (n-2)` grid with straight edges.
pub fn grid_embed(pg: &PlaneGraph) -> Result<GridEmbedding> {
    let g = &pg.graph;
    let coords = if g.n() < 4 {
        let defaults = [(0, 0), (2, 0), (1, 1)];
        g.vertices().zip(defaults).collect()
    } else {
        let mut t = Triangulation { rot: pg.rotation.clone(), g: g.clone() };
        let outer = t.triangulate();
        let order = canonical_ordering(&t.rot, &outer);
        shift_positions(&order)
    };
    GridEmbedding::new(g.clone(), coords)
}

struct Triangulation {
    rot: Rotation,
    g: Graph,
}

impl Triangulation {
    fn add(&mut self, v1: VertexId, v3: VertexId, v2: VertexId) {
        // v3 goes clockwise after v2 at v1, and counter-clockwise before v2 at v3
        self.rot.insert_cw(v1, v3, v2);
        self.rot.insert_ccw(v3, v1, v2);
        self.g.add_edge(v1, v3).expect("triangulation edge");
    }

    fn next(&self, v: VertexId, w: VertexId) -> VertexId {
        self.rot.next_half_edge(v, w).1
    }

    /// Makes the embedding a triangulation and returns an outer triangle.
    fn triangulate(&mut self) -> [VertexId; 3] {
        let comps = self.g.components();
        for pair in comps.windows(2) {
            let (a, b) = (pair[0][0], pair[1][0]);
            self.connect(a, b);
        }
        let mut outer: Vec<VertexId> = Vec::new();
        let mut faces = Vec::new();
        let mut visited = BTreeSet::new();
        let verts: Vec<VertexId> = self.g.vertices().collect();
        for v in verts {
            let nbrs = self.rot.order(v).to_vec();
            for w in nbrs {
                let f = self.make_biconnected(v, w, &mut visited);
                if !f.is_empty() {
                    if f.len() > outer.len() {
                        outer = f.clone();
                    }
                    faces.push(f);
                }
            }
        }
        for f in &faces {
            self.triangulate_face(f[0], f[1]);
        }
        let (v1, v2) = (outer[0], outer[1]);
        let v3 = self.rot.ccw_next(v2, v1);
        [v1, v2, v3]
    }

    fn connect(&mut self, v: VertexId, w: VertexId) {
        for (a, b) in [(v, w), (w, v)] {
            match self.rot.order(a).first().copied() {
                Some(r) => self.rot.insert_ccw(a, b, r),
                None => self.rot.push(a, b),
            }
        }
        self.g.add_edge(v, w).expect("component link");
    }

    fn make_biconnected(
        &mut self,
        start: VertexId,
        out: VertexId,
        counted: &mut BTreeSet<(VertexId, VertexId)>,
    ) -> Vec<VertexId> {
        if !counted.insert((start, out)) {
            return Vec::new();
        }
        let (mut v1, mut v2) = (start, out);
        let mut face = vec![start];
        let mut seen = BTreeSet::from([start]);
        let mut v3 = self.next(v1, v2);
        while v2 != start || v3 != out {
            if seen.contains(&v2) {
                self.add(v1, v3, v2);
                counted.insert((v2, v3));
                counted.insert((v3, v1));
                v2 = v1;
            } else {
                seen.insert(v2);
                face.push(v2);
            }
            v1 = v2;
            let n = self.rot.next_half_edge(v2, v3);
            v2 = n.0;
            v3 = n.1;
            counted.insert((v1, v2));
        }
        face
    }

    fn triangulate_face(&mut self, mut v1: VertexId, mut v2: VertexId) {
        let mut v3 = self.next(v1, v2);
        let mut v4 = self.next(v2, v3);
        if v1 == v2 || v1 == v3 {
            return;
        }
        while v1 != v4 {
            if self.g.has_edge(v1, v3) {
                v1 = v2;
                v2 = v3;
                v3 = v4;
            } else {
                self.add(v1, v3, v2);
                v2 = v3;
                v3 = v4;
            }
            v4 = self.next(v2, v3);
        }
    }
}

type Ordering = Vec<(VertexId, Vec<VertexId>)>;

fn canonical_ordering(rot: &Rotation, outer: &[VertexId; 3]) -> Ordering {
    let (v1, v2) = (outer[0], outer[1]);
    let mut chords: BTreeMap<VertexId, i64> = BTreeMap::new();
    let mut marked = BTreeSet::new();
    let mut ready: BTreeSet<VertexId> = outer.iter().copied().collect();
    let mut ccw_nbr: BTreeMap<VertexId, VertexId> = BTreeMap::new();
    let mut cw_nbr: BTreeMap<VertexId, VertexId> = BTreeMap::new();
    let mut prev = v2;
    for &w in &outer[2..] {
        ccw_nbr.insert(prev, w);
        prev = w;
    }
    ccw_nbr.insert(prev, v1);
    let mut prev = v1;
    for idx in (1..outer.len()).rev() {
        cw_nbr.insert(prev, outer[idx]);
        prev = outer[idx];
    }

    let is_outer_nbr = |cw: &BTreeMap<VertexId, VertexId>, ccw: &BTreeMap<VertexId, VertexId>, x, y| {
        match (ccw.get(&x), cw.get(&x)) {
            (None, c) => c == Some(&y),
            (Some(a), None) => *a == y,
            (Some(a), Some(c)) => *a == y || *c == y,
        }
    };
    let on_outer = |marked: &BTreeSet<VertexId>, ccw: &BTreeMap<VertexId, VertexId>, x: VertexId| {
        !marked.contains(&x) && (ccw.contains_key(&x) || x == v1)
    };

    for &v in outer {
        for &nbr in rot.order(v) {
            if on_outer(&marked, &ccw_nbr, nbr) && !is_outer_nbr(&cw_nbr, &ccw_nbr, v, nbr) {
                *chords.entry(v).or_default() += 1;
                ready.remove(&v);
            }
        }
    }

    let n = rot.vertices().count();
    let mut ordering: Ordering = vec![(v1, Vec::new()); n];
    ordering[1] = (v2, Vec::new());
    ready.remove(&v1);
    ready.remove(&v2);

    for k in (2..n).rev() {
        let v = ready.pop_first().expect("canonical ordering stalled");
        marked.insert(v);
        let (mut wp, mut wq) = (None, None);
        for &nbr in rot.order(v) {
            if marked.contains(&nbr) {
                continue;
            }
            if on_outer(&marked, &ccw_nbr, nbr) {
                if nbr == v1 {
                    wp = Some(v1);
                } else if nbr == v2 {
                    wq = Some(v2);
                } else if cw_nbr.get(&nbr) == Some(&v) {
                    wp = Some(nbr);
                } else {
                    wq = Some(nbr);
                }
            }
            if wp.is_some() && wq.is_some() {
                break;
            }
        }
        let (wp, wq) = (wp.expect("wp"), wq.expect("wq"));
        let mut path = vec![wp];
        let mut nbr = wp;
        while nbr != wq {
            let next = rot.ccw_next(v, nbr);
            path.push(next);
            cw_nbr.insert(nbr, next);
            ccw_nbr.insert(next, nbr);
            nbr = next;
        }
        if path.len() == 2 {
            for w in [wp, wq] {
                let c = chords.entry(w).or_default();
                *c -= 1;
                if *c == 0 {
                    ready.insert(w);
                }
            }
        } else {
            let inner: BTreeSet<VertexId> = path[1..path.len() - 1].iter().copied().collect();
            for &w in &inner {
                ready.insert(w);
                for &nb in rot.order(w) {
                    if on_outer(&marked, &ccw_nbr, nb) && !is_outer_nbr(&cw_nbr, &ccw_nbr, w, nb) {
                        *chords.entry(w).or_default() += 1;
                        ready.remove(&w);
                        if !inner.contains(&nb) {
                            *chords.entry(nb).or_default() += 1;
                            ready.remove(&nb);
                        }
                    }
                }
            }
        }
        ordering[k] = (v, path);
    }
    ordering
}

fn shift_positions(order: &Ordering) -> BTreeMap<VertexId, (i64, i64)> {
    let mut left: BTreeMap<VertexId, Option<VertexId>> = BTreeMap::new();
    let mut right: BTreeMap<VertexId, Option<VertexId>> = BTreeMap::new();
    let mut dx: BTreeMap<VertexId, i64> = BTreeMap::new();
    let mut y: BTreeMap<VertexId, i64> = BTreeMap::new();
    let (v1, v2, v3) = (order[0].0, order[1].0, order[2].0);
    dx.insert(v1, 0);
    y.insert(v1, 0);
    right.insert(v1, Some(v3));
    left.insert(v1, None);
    dx.insert(v2, 1);
    y.insert(v2, 0);
    right.insert(v2, None);
    left.insert(v2, None);
    dx.insert(v3, 1);
    y.insert(v3, 1);
    right.insert(v3, Some(v2));
    left.insert(v3, None);

    for (vk, contour) in &order[3..] {
        let vk = *vk;
        let wp = contour[0];
        let wp1 = contour[1];
        let wq = contour[contour.len() - 1];
        let wq1 = contour[contour.len() - 2];
        let multi = contour.len() > 2;
        *dx.get_mut(&wp1).unwrap() += 1;
        *dx.get_mut(&wq).unwrap() += 1;
        let span: i64 = contour[1..].iter().map(|w| dx[w]).sum();
        let dvk = (-y[&wp] + span + y[&wq]).div_euclid(2);
        dx.insert(vk, dvk);
        y.insert(vk, (y[&wp] + span + y[&wq]).div_euclid(2));
        dx.insert(wq, span - dvk);
        if multi {
            *dx.get_mut(&wp1).unwrap() -= dvk;
        }
        right.insert(wp, Some(vk));
        right.insert(vk, Some(wq));
        if multi {
            left.insert(vk, Some(wp1));
            right.insert(wq1, None);
        } else {
            left.insert(vk, None);
        }
    }

    let mut pos = BTreeMap::new();
    pos.insert(v1, (0, y[&v1]));
    let mut stack = vec![v1];
    while let Some(parent) = stack.pop() {
        for tree in [&left, &right] {
            if let Some(Some(child)) = tree.get(&parent) {
                let cx = pos[&parent].0 + dx[child];
                pos.insert(*child, (cx, y[child]));
                stack.push(*child);
            }
        }
    }
    pos
}

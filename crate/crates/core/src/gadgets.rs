//! The gadgets R, L, D and Y_p, gadget insertion, and exhaustive gadget
//! certification.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{rotation_from_coords, straight_line_crossing_free, Point};
use crate::graph::{Graph, Instance, Rotation, VertexId};
use crate::oracle::fvs::{all_minimum_fvs, fvs_exact_exhaustive, EXHAUSTIVE_LIMIT};
use crate::oracle::hamilton::find_hamiltonian_cycle;
use crate::oracle::planarity::is_planar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GadgetKind {
    R,
    L,
    D,
    Y(usize),
}

impl fmt::Display for GadgetKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GadgetKind::R => write!(f, "R"),
            GadgetKind::L => write!(f, "L"),
            GadgetKind::D => write!(f, "D"),
            GadgetKind::Y(p) => write!(f, "Y{p}"),
        }
    }
}

impl std::str::FromStr for GadgetKind {
    type Err = Error;

    /// Accepts `R`, `L`, `D`, `Y5` or `Y:5`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Precondition(format!("unknown gadget kind {s:?}"));
        match s {
            "R" | "r" => Ok(GadgetKind::R),
            "L" | "l" => Ok(GadgetKind::L),
            "D" | "d" => Ok(GadgetKind::D),
            _ => {
                let rest = s.strip_prefix(['Y', 'y']).ok_or_else(bad)?;
                let p = rest.trim_start_matches(':').parse().map_err(|_| bad())?;
                Ok(GadgetKind::Y(p))
            }
        }
    }
}

/// A gadget with boundary vertices `x`, `y` and a Hamiltonian x-y path.
#[derive(Clone, Debug)]
pub struct Gadget {
    pub kind: GadgetKind,
    pub graph: Graph,
    pub x: VertexId,
    pub y: VertexId,
    /// Interior neighbours of `x` and of `y`.
    pub x_inner: Vec<VertexId>,
    pub y_inner: Vec<VertexId>,
    pub ham_path: Vec<VertexId>,
    pub k_delta: u64,
    /// Straight-line drawing, present for the planar gadgets R, L, D, Y3.
    pub coords: Option<BTreeMap<VertexId, (i64, i64)>>,
    pub rotation: Option<Rotation>,
    pub names: BTreeMap<VertexId, String>,
}

impl Gadget {
    pub fn vertex(&self, name: &str) -> VertexId {
        *self
            .names
            .iter()
            .find(|(_, n)| n.as_str() == name)
            .unwrap_or_else(|| panic!("no vertex named {name}"))
            .0
    }

    /// Gadget vertices other than `x` and `y`, in id order.
    pub fn interior(&self) -> Vec<VertexId> {
        self.graph.vertices().filter(|&v| v != self.x && v != self.y).collect()
    }
}

struct Builder {
    g: Graph,
    names: BTreeMap<String, VertexId>,
    coords: BTreeMap<VertexId, (i64, i64)>,
}

impl Builder {
    fn new() -> Self {
        Self { g: Graph::new(), names: BTreeMap::new(), coords: BTreeMap::new() }
    }

    fn vertex(&mut self, name: &str, at: Option<(i64, i64)>) -> VertexId {
        let v = self.g.add_vertex();
        self.names.insert(name.to_string(), v);
        if let Some(p) = at {
            self.coords.insert(v, p);
        }
        v
    }

    fn id(&self, name: &str) -> VertexId {
        self.names[name]
    }

    fn edges(&mut self, list: &[(&str, &str)]) {
        for (a, b) in list {
            let (a, b) = (self.id(a), self.id(b));
            self.g.add_edge(a, b).unwrap();
        }
    }

    fn path(&self, names: &[&str]) -> Vec<VertexId> {
        names.iter().map(|n| self.id(n)).collect()
    }

    fn finish(self, kind: GadgetKind, x_inner: &[&str], y_inner: &[&str], path: Vec<VertexId>, k_delta: u64) -> Result<Gadget> {
        let x = self.id("x");
        let y = self.id("y");
        let (coords, rotation) = if self.coords.len() == self.g.n() {
            let pts: BTreeMap<VertexId, Point> =
                self.coords.iter().map(|(&v, &(a, b))| (v, Point::from_ints(a, b))).collect();
            if !straight_line_crossing_free(&self.g, &pts) {
                return Err(Error::Certification(format!("drawing of {kind} has a crossing")));
            }
            let rot = rotation_from_coords(&self.g, &pts, &BTreeMap::new());
            crate::graph::PlaneGraph::new(self.g.clone(), rot.clone())?;
            (Some(self.coords.clone()), Some(rot))
        } else {
            (None, None)
        };
        let gadget = Gadget {
            kind,
            x,
            y,
            x_inner: x_inner.iter().map(|n| self.id(n)).collect(),
            y_inner: y_inner.iter().map(|n| self.id(n)).collect(),
            ham_path: path,
            k_delta,
            coords,
            rotation,
            names: self.names.iter().map(|(n, &v)| (v, n.clone())).collect(),
            graph: self.g,
        };
        if !is_hamiltonian_path(&gadget.graph, &gadget.ham_path, x, y) {
            return Err(Error::Certification(format!("stored path of {kind} is not a Hamiltonian x-y path")));
        }
        Ok(gadget)
    }
}

/// True if `path` runs from `a` to `b` through every vertex of `g` once.
pub fn is_hamiltonian_path(g: &Graph, path: &[VertexId], a: VertexId, b: VertexId) -> bool {
    let distinct: BTreeSet<VertexId> = path.iter().copied().collect();
    path.len() == g.n()
        && distinct.len() == path.len()
        && path.first() == Some(&a)
        && path.last() == Some(&b)
        && path.iter().all(|&v| g.contains(v))
        && path.windows(2).all(|w| g.has_edge(w[0], w[1]))
}

/// The wheel C4*K1 with rim a1..a4 and centre c.
pub fn c4k1() -> Graph {
    Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 0), (4, 0), (4, 1), (4, 2), (4, 3)]).unwrap()
}

fn build_r() -> Result<Gadget> {
    let mut b = Builder::new();
    b.vertex("x", Some((-4, -3)));
    b.vertex("y", Some((4, -3)));
    b.vertex("x'", Some((-2, -3)));
    b.vertex("y'", Some((2, -3)));
    b.vertex("a1", Some((-1, 1)));
    b.vertex("a2", Some((1, 1)));
    b.vertex("a3", Some((1, -1)));
    b.vertex("a4", Some((-1, -1)));
    b.vertex("c", Some((0, 0)));
    b.edges(&[
        ("a1", "a2"), ("a2", "a3"), ("a3", "a4"), ("a4", "a1"),
        ("c", "a1"), ("c", "a2"), ("c", "a3"), ("c", "a4"),
        ("x'", "a1"), ("x'", "a4"), ("y'", "a2"), ("y'", "a3"),
        ("x'", "y'"), ("x", "x'"), ("y", "y'"),
    ]);
    let path = b.path(&["x", "x'", "a1", "a4", "c", "a2", "a3", "y'", "y"]);
    b.finish(GadgetKind::R, &["x'"], &["y'"], path, 3)
}

fn build_l() -> Result<Gadget> {
    let mut b = Builder::new();
    b.vertex("x", Some((-2, 1)));
    b.vertex("y", Some((8, 1)));
    for (name, at) in [
        ("p1", (0, 2)), ("p2", (2, 2)), ("p3", (2, 0)), ("p4", (0, 0)), ("c1", (1, 1)),
        ("q1", (4, 2)), ("q2", (6, 2)), ("q3", (6, 0)), ("q4", (4, 0)), ("c2", (5, 1)),
    ] {
        b.vertex(name, Some(at));
    }
    b.edges(&[
        ("p1", "p2"), ("p2", "p3"), ("p3", "p4"), ("p4", "p1"),
        ("c1", "p1"), ("c1", "p2"), ("c1", "p3"), ("c1", "p4"),
        ("q1", "q2"), ("q2", "q3"), ("q3", "q4"), ("q4", "q1"),
        ("c2", "q1"), ("c2", "q2"), ("c2", "q3"), ("c2", "q4"),
        ("p2", "q1"), ("p3", "q4"),
        ("x", "p1"), ("x", "p4"), ("y", "q2"), ("y", "q3"),
    ]);
    let path = b.path(&["x", "p4", "c1", "p1", "p2", "p3", "q4", "c2", "q1", "q2", "q3", "y"]);
    b.finish(GadgetKind::L, &["p1", "p4"], &["q2", "q3"], path, 4)
}

fn build_d() -> Result<Gadget> {
    let mut b = Builder::new();
    b.vertex("x", Some((9, 1)));
    b.vertex("y", Some((-9, 1)));
    for (name, at) in [
        ("x'", (6, 1)), ("y'", (-6, 1)), ("z", (0, -6)),
        ("c0", (0, 4)), ("c1", (3, 2)), ("c2", (3, -2)), ("c3", (0, -4)), ("c4", (-3, -2)), ("c5", (-3, 2)),
        ("v1", (0, 2)), ("v2", (1, -1)), ("v3", (-1, -1)),
    ] {
        b.vertex(name, Some(at));
    }
    b.edges(&[
        ("c0", "c1"), ("c1", "c2"), ("c2", "c3"), ("c3", "c4"), ("c4", "c5"), ("c5", "c0"),
        ("v1", "v2"), ("v2", "v3"), ("v3", "v1"),
        ("v1", "c0"), ("v1", "c1"), ("v1", "c5"),
        ("v2", "c1"), ("v2", "c2"), ("v2", "c3"),
        ("v3", "c3"), ("v3", "c4"), ("v3", "c5"),
        ("z", "c2"), ("z", "c3"), ("z", "c4"),
        ("x'", "x"), ("x'", "z"), ("x'", "c0"), ("x'", "c1"), ("x'", "c2"),
        ("y'", "y"), ("y'", "z"), ("y'", "c0"), ("y'", "c4"), ("y'", "c5"),
    ]);
    let path = b.path(&["x", "x'", "c0", "v1", "c1", "c2", "v2", "v3", "c3", "z", "c4", "c5", "y'", "y"]);
    b.finish(GadgetKind::D, &["x'"], &["y'"], path, 6)
}

fn build_y(p: usize) -> Result<Gadget> {
    if p < 3 {
        return Err(Error::GadgetParameter);
    }
    // only Y3 is planar; it gets a drawing
    let c = |a: i64, b: i64| if p == 3 { Some((a, b)) } else { None };
    let mut b = Builder::new();
    b.vertex("x", c(0, 32));
    b.vertex("y", c(0, -7));
    b.vertex("x'", c(0, 24));
    b.vertex("y'", c(0, -4));
    let a_at = [(-24, -16), (24, -16), (0, 12)];
    let b_at = [(-8, -8), (8, -8), (0, 4)];
    for i in 0..p {
        let at = if p == 3 { Some(a_at[i]) } else { None };
        b.vertex(&format!("a{i}"), at);
    }
    for i in 0..p {
        let at = if p == 3 { Some(b_at[i]) } else { None };
        b.vertex(&format!("b{i}"), at);
    }
    let an: Vec<String> = (0..p).map(|i| format!("a{i}")).collect();
    let bn: Vec<String> = (0..p).map(|i| format!("b{i}")).collect();
    let mut e: Vec<(String, String)> = vec![("x".into(), "x'".into()), ("y".into(), "y'".into())];
    for i in 0..p {
        e.push(("x'".into(), an[i].clone()));
        e.push(("y'".into(), bn[i].clone()));
        e.push((an[i].clone(), bn[i].clone()));
        for j in i + 1..p {
            e.push((an[i].clone(), an[j].clone()));
            e.push((bn[i].clone(), bn[j].clone()));
        }
    }
    let refs: Vec<(&str, &str)> = e.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
    b.edges(&refs);
    let mut names: Vec<&str> = vec!["x", "x'"];
    names.extend(an.iter().map(|s| s.as_str()));
    names.extend(bn.iter().rev().map(|s| s.as_str()));
    names.extend(["y'", "y"]);
    let path = b.path(&names);
    b.finish(GadgetKind::Y(p), &["x'"], &["y'"], path, 2 * p as u64 - 2)
}

/// Builds a gadget. `Y(p)` requires `p >= 3`.
pub fn build_gadget(kind: GadgetKind) -> Result<Gadget> {
    match kind {
        GadgetKind::R => build_r(),
        GadgetKind::L => build_l(),
        GadgetKind::D => build_d(),
        GadgetKind::Y(p) => build_y(p),
    }
}

/// Record of one insertion: the host ids given to each gadget vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Insertion {
    pub map: BTreeMap<VertexId, VertexId>,
    /// Fresh host vertices, in gadget id order.
    pub created: Vec<VertexId>,
}

impl Insertion {
    pub fn host(&self, gadget: &Gadget, name: &str) -> VertexId {
        self.map[&gadget.vertex(name)]
    }

    /// The gadget's Hamiltonian path in host ids.
    pub fn path(&self, gadget: &Gadget) -> Vec<VertexId> {
        gadget.ham_path.iter().map(|v| self.map[v]).collect()
    }
}

/// Adds a copy of `gadget` to `g`, identifying `x` with `u` and `y` with `v`.
pub fn insert_gadget_in_place(g: &mut Graph, gadget: &Gadget, u: VertexId, v: VertexId) -> Result<Insertion> {
    for w in [u, v] {
        if !g.contains(w) {
            return Err(Error::VertexNotPresent(w));
        }
    }
    if u == v && gadget.kind != GadgetKind::R {
        return Err(Error::Precondition(format!("{}-insertion needs two distinct vertices", gadget.kind)));
    }
    let mut map = BTreeMap::new();
    map.insert(gadget.x, u);
    map.insert(gadget.y, v);
    let mut created = Vec::new();
    for w in gadget.interior() {
        let id = g.add_vertex();
        map.insert(w, id);
        created.push(id);
    }
    for (a, b) in gadget.graph.edges() {
        g.add_edge(map[&a], map[&b])?;
    }
    Ok(Insertion { map, created })
}

/// Pure insertion on an instance: the budget grows by `k_delta` and any
/// Hamiltonian witness is dropped.
pub fn insert_gadget(inst: &Instance, gadget: &Gadget, u: VertexId, v: VertexId) -> Result<(Instance, Insertion)> {
    let mut g = inst.graph.clone();
    let ins = insert_gadget_in_place(&mut g, gadget, u, v)?;
    Ok((Instance::new(g, inst.k + gadget.k_delta), ins))
}

/// Exhaustively computed gadget properties.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GadgetReport {
    pub kind: String,
    pub min_fvs: usize,
    /// No minimum solution contains `x`.
    pub excludes_x: bool,
    pub excludes_y: bool,
    /// Some minimum solution avoids `x`, `y` and disconnects them.
    pub separating: bool,
    /// Some minimum solution contains an interior neighbour of `x` or `y`.
    pub contains_inner: bool,
    pub ham_xy: bool,
    pub planar: bool,
}

pub fn certify_gadget(g: &Gadget) -> Result<GadgetReport> {
    if g.graph.n() > EXHAUSTIVE_LIMIT {
        return Err(Error::UseSampled);
    }
    let (min_fvs, sols) = all_minimum_fvs(&g.graph)?;
    let excludes_x = sols.iter().all(|s| !s.contains(&g.x));
    let excludes_y = sols.iter().all(|s| !s.contains(&g.y));
    let separating = sols.iter().any(|s| {
        let set: BTreeSet<VertexId> = s.iter().copied().collect();
        !set.contains(&g.x) && !set.contains(&g.y) && {
            let rest = g.graph.without(&set);
            !rest.components().iter().any(|c| c.contains(&g.x) && c.contains(&g.y))
        }
    });
    let inner: BTreeSet<VertexId> = g.x_inner.iter().chain(&g.y_inner).copied().collect();
    let contains_inner = sols.iter().any(|s| s.iter().any(|v| inner.contains(v)));
    // a Hamiltonian x-y path is a Hamiltonian cycle through an extra vertex joined to x and y
    let mut closed = g.graph.clone();
    let w = closed.add_vertex();
    closed.add_edge(w, g.x)?;
    closed.add_edge(w, g.y)?;
    let ham_xy = find_hamiltonian_cycle(&closed)?.is_some();
    Ok(GadgetReport {
        kind: g.kind.to_string(),
        min_fvs,
        excludes_x,
        excludes_y,
        separating,
        contains_inner,
        ham_xy,
        planar: is_planar(&g.graph),
    })
}

/// True iff `opt(G') = opt(G) + k_delta` for the insertion at `u, v`.
pub fn verify_insertion_equivalence(host: &Graph, gadget: &Gadget, u: VertexId, v: VertexId) -> Result<bool> {
    let mut g2 = host.clone();
    insert_gadget_in_place(&mut g2, gadget, u, v)?;
    if g2.n() > EXHAUSTIVE_LIMIT {
        return Err(Error::UseBranchReduce);
    }
    let before = fvs_exact_exhaustive(host)?.size as u64;
    let after = fvs_exact_exhaustive(&g2)?.size as u64;
    Ok(after == before + gadget.k_delta)
}

/// Deletion set of size `2p - 2` in `Y_p` leaving two disjoint edges and the
/// isolated `x`, `y`: drop `x'`, `y'`, all of `A` but `a0, a1`, and all of
/// `B` but `b2, b3`. Needs `p >= 4`.
pub fn y_two_k2_solution(g: &Gadget) -> Result<Vec<VertexId>> {
    let GadgetKind::Y(p) = g.kind else {
        return Err(Error::Precondition("not a Y gadget".into()));
    };
    if p < 4 {
        return Err(Error::Precondition(format!("Y{p} has no such solution; p must be at least 4")));
    }
    let mut out = vec![g.vertex("x'"), g.vertex("y'")];
    out.extend((2..p).map(|i| g.vertex(&format!("a{i}"))));
    out.extend((0..p).filter(|&i| i != 2 && i != 3).map(|i| g.vertex(&format!("b{i}"))));
    out.sort();
    Ok(out)
}

/// True if `h` is the disjoint union of two edges and two isolated vertices.
pub fn is_two_k2_plus_two_k1(h: &Graph) -> bool {
    let mut sizes: Vec<(usize, usize)> = h
        .components()
        .iter()
        .map(|c| {
            let set: BTreeSet<VertexId> = c.iter().copied().collect();
            (c.len(), h.induced(&set).m())
        })
        .collect();
    sizes.sort();
    sizes == vec![(1, 0), (1, 0), (2, 1), (2, 1)]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes() {
        let r = build_gadget(GadgetKind::R).unwrap();
        assert_eq!((r.graph.n(), r.graph.m()), (9, 15));
        let l = build_gadget(GadgetKind::L).unwrap();
        assert_eq!((l.graph.n(), l.graph.m()), (12, 22));
        let d = build_gadget(GadgetKind::D).unwrap();
        assert_eq!((d.graph.n(), d.graph.m()), (14, 31));
        for p in 3..=7 {
            let y = build_gadget(GadgetKind::Y(p)).unwrap();
            assert_eq!((y.graph.n(), y.graph.m()), (2 * p + 4, p * p + 2 * p + 2));
        }
    }

    #[test]
    fn degrees() {
        let r = build_gadget(GadgetKind::R).unwrap();
        for v in r.graph.vertices() {
            let want = if v == r.x || v == r.y { 1 } else { 4 };
            assert_eq!(r.graph.degree(v), want);
        }
        let d = build_gadget(GadgetKind::D).unwrap();
        for v in d.interior() {
            assert_eq!(d.graph.degree(v), 5);
        }
        let y = build_gadget(GadgetKind::Y(5)).unwrap();
        for v in y.interior() {
            assert_eq!(y.graph.degree(v), 6);
        }
    }

    #[test]
    fn small_p_rejected() {
        assert_eq!(build_gadget(GadgetKind::Y(2)).unwrap_err(), Error::GadgetParameter);
    }

    #[test]
    fn kind_round_trip() {
        for k in [GadgetKind::R, GadgetKind::L, GadgetKind::D, GadgetKind::Y(5)] {
            assert_eq!(k.to_string().parse::<GadgetKind>().unwrap(), k);
        }
        assert_eq!("Y:4".parse::<GadgetKind>().unwrap(), GadgetKind::Y(4));
    }

    #[test]
    fn r_insertion_at_single_vertex() {
        let g = Graph::from_edges(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        let r = build_gadget(GadgetKind::R).unwrap();
        let inst = Instance::new(g, 1);
        let (out, ins) = insert_gadget(&inst, &r, VertexId(0), VertexId(0)).unwrap();
        assert_eq!(out.k, 4);
        assert_eq!(out.graph.n(), 10);
        assert_eq!(out.graph.degree(VertexId(0)), 4);
        assert_eq!(ins.created.len(), 7);
        assert!(verify_insertion_equivalence(&inst.graph, &r, VertexId(0), VertexId(0)).unwrap());
    }

    #[test]
    fn distinct_vertices_required_except_r() {
        let (g, ids) = Graph::with_vertices(2);
        let l = build_gadget(GadgetKind::L).unwrap();
        assert!(matches!(
            insert_gadget(&Instance::new(g.clone(), 0), &l, ids[0], ids[0]),
            Err(Error::Precondition(_))
        ));
        assert_eq!(
            insert_gadget(&Instance::new(g, 0), &l, ids[0], VertexId(9)).unwrap_err(),
            Error::VertexNotPresent(VertexId(9))
        );
    }
}

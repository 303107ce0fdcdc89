//! Graph families used as fixtures: cycles, antiprisms, grids, medial
//! graphs and random 4-regular or planar max-degree-4 graphs.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::Result;
use crate::graph::{edge, faces_half_edges, Graph, PlaneGraph, VertexId};

pub fn cycle(n: usize) -> Graph {
    let e: Vec<(u32, u32)> = (0..n as u32).map(|i| (i, (i + 1) % n as u32)).collect();
    Graph::from_edges(n, &e).unwrap()
}

pub fn complete(n: usize) -> Graph {
    let mut e = Vec::new();
    for i in 0..n as u32 {
        for j in i + 1..n as u32 {
            e.push((i, j));
        }
    }
    Graph::from_edges(n, &e).unwrap()
}

/// The antiprism on `2n` vertices (`n >= 3`): 4-regular, planar,
/// Hamiltonian.
pub fn antiprism(n: usize) -> Graph {
    let n32 = n as u32;
    let mut e = Vec::new();
    for i in 0..n32 {
        let j = (i + 1) % n32;
        e.push((i, j));
        e.push((n32 + i, n32 + j));
        e.push((i, n32 + i));
        e.push((i, n32 + j));
    }
    Graph::from_edges(2 * n, &e).unwrap()
}

/// `rows x cols` grid graph, vertex `r * cols + c`.
pub fn grid(rows: usize, cols: usize) -> Graph {
    let mut e = Vec::new();
    let id = |r: usize, c: usize| (r * cols + c) as u32;
    for r in 0..rows {
        for c in 0..cols {
            if c + 1 < cols {
                e.push((id(r, c), id(r, c + 1)));
            }
            if r + 1 < rows {
                e.push((id(r, c), id(r + 1, c)));
            }
        }
    }
    Graph::from_edges(rows * cols, &e).unwrap()
}

/// Medial graph: one vertex per edge, adjacent when consecutive on a face.
/// 4-regular and planar; `None` if the result would need parallel edges.
pub fn medial(g: &Graph) -> Result<Option<Graph>> {
    let pg = PlaneGraph::embed(g.clone())?;
    let edges: Vec<_> = g.edges().collect();
    let idx = |a: VertexId, b: VertexId| edges.binary_search(&edge(a, b)).unwrap() as u32;
    let mut out: Vec<(u32, u32)> = Vec::new();
    for f in faces_half_edges(&pg.rotation) {
        for i in 0..f.len() {
            let (a, b) = f[i];
            let (c, d) = f[(i + 1) % f.len()];
            out.push((idx(a, b), idx(c, d)));
        }
    }
    let mut m = Graph::from_edges(0, &[])?;
    let ids: Vec<VertexId> = (0..edges.len()).map(|_| m.add_vertex()).collect();
    for (a, b) in out {
        if a == b || !m.add_edge(ids[a as usize], ids[b as usize])? {
            return Ok(None);
        }
    }
    Ok(m.is_regular(4).then_some(m))
}

/// Random simple 4-regular graph on `n` vertices (configuration model with
/// restarts). Not necessarily planar or connected.
pub fn random_four_regular<R: Rng>(n: usize, rng: &mut R) -> Graph {
    assert!(n >= 5);
    loop {
        let mut stubs: Vec<u32> = (0..n as u32).flat_map(|v| [v; 4]).collect();
        stubs.shuffle(rng);
        let (mut g, ids) = Graph::with_vertices(n);
        let mut ok = true;
        for p in stubs.chunks(2) {
            let (a, b) = (ids[p[0] as usize], ids[p[1] as usize]);
            if a == b || !g.add_edge(a, b).unwrap() {
                ok = false;
                break;
            }
        }
        if ok {
            return g;
        }
    }
}

/// Random connected 4-regular graph.
pub fn random_connected_four_regular<R: Rng>(n: usize, rng: &mut R) -> Graph {
    loop {
        let g = random_four_regular(n, rng);
        if g.is_connected() {
            return g;
        }
    }
}

/// Random connected planar graph of maximum degree 4: a grid with random
/// edges removed (keeping connectivity) and random cell diagonals added
/// where degrees allow.
pub fn random_planar_max4<R: Rng>(rows: usize, cols: usize, rng: &mut R) -> Graph {
    let mut g = grid(rows, cols);
    let id = |r: usize, c: usize| VertexId((r * cols + c) as u32);
    let mut edges: Vec<_> = g.edges().collect();
    edges.shuffle(rng);
    for (a, b) in edges {
        if rng.gen_bool(0.3) {
            g.remove_edge(a, b).unwrap();
            if !g.is_connected() {
                g.add_edge(a, b).unwrap();
            }
        }
    }
    for r in 0..rows.saturating_sub(1) {
        for c in 0..cols.saturating_sub(1) {
            if !rng.gen_bool(0.4) {
                continue;
            }
            let (a, b) = if rng.gen_bool(0.5) {
                (id(r, c), id(r + 1, c + 1))
            } else {
                (id(r, c + 1), id(r + 1, c))
            };
            if g.degree(a) < 4 && g.degree(b) < 4 {
                g.add_edge(a, b).unwrap();
            }
        }
    }
    g
}

/// Random connected planar graph of minimum degree 3: a grid with one
/// random diagonal per cell and an apex joined to the boundary, then random
/// edge deletions that keep the degree bound and connectivity.
pub fn random_planar_min3<R: Rng>(rows: usize, cols: usize, rng: &mut R) -> Graph {
    assert!(rows >= 2 && cols >= 2);
    let mut g = grid(rows, cols);
    let id = |r: usize, c: usize| VertexId((r * cols + c) as u32);
    for r in 0..rows - 1 {
        for c in 0..cols - 1 {
            if rng.gen_bool(0.5) {
                g.add_edge(id(r, c), id(r + 1, c + 1)).unwrap();
            } else {
                g.add_edge(id(r, c + 1), id(r + 1, c)).unwrap();
            }
        }
    }
    let apex = g.add_vertex();
    for r in 0..rows {
        for c in 0..cols {
            if r == 0 || c == 0 || r == rows - 1 || c == cols - 1 {
                g.add_edge(apex, id(r, c)).unwrap();
            }
        }
    }
    let mut edges: Vec<_> = g.edges().collect();
    edges.shuffle(rng);
    for (a, b) in edges {
        if g.degree(a) > 3 && g.degree(b) > 3 && rng.gen_bool(0.5) {
            g.remove_edge(a, b).unwrap();
            if !g.is_connected() {
                g.add_edge(a, b).unwrap();
            }
        }
    }
    g
}

/// Random connected 4-regular planar graph: the medial graph of
/// [`random_planar_min3`], which is simple because every base vertex has
/// degree at least 3.
pub fn random_four_regular_planar<R: Rng>(rows: usize, cols: usize, rng: &mut R) -> Graph {
    let g = random_planar_min3(rows, cols, rng);
    medial(&g).unwrap().expect("medial of a min-degree-3 plane graph is simple")
}

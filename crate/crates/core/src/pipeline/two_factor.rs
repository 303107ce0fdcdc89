//! 2-factors of 4-regular graphs and the cycle-merging construction.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::stages::path_around;
use super::trace::Recorder;
use crate::error::{Error, Result};
use crate::gadgets::GadgetKind;
use crate::graph::{edge, faces_half_edges, Edge, Graph, PlaneGraph, VertexId};

/// A spanning set of vertex-disjoint cycles.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TwoFactor {
    pub cycles: Vec<Vec<VertexId>>,
}

impl TwoFactor {
    pub fn len(&self) -> usize {
        self.cycles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cycles.is_empty()
    }

    pub fn edges(&self) -> BTreeSet<Edge> {
        self.cycles
            .iter()
            .flat_map(|c| (0..c.len()).map(move |i| edge(c[i], c[(i + 1) % c.len()])))
            .collect()
    }

    fn cycle_of(&self) -> BTreeMap<VertexId, usize> {
        let mut m = BTreeMap::new();
        for (i, c) in self.cycles.iter().enumerate() {
            for &v in c {
                m.insert(v, i);
            }
        }
        m
    }

    /// Checks that the cycles span `g`, are disjoint, have length at least
    /// three and use only edges of `g`.
    pub fn validate(&self, g: &Graph) -> Result<()> {
        let bad = |m: String| Error::Certification(format!("2-factor: {m}"));
        let mut seen = BTreeSet::new();
        for c in &self.cycles {
            if c.len() < 3 {
                return Err(bad(format!("cycle of length {}", c.len())));
            }
            for i in 0..c.len() {
                if !seen.insert(c[i]) {
                    return Err(bad(format!("vertex {} covered twice", c[i])));
                }
                let w = c[(i + 1) % c.len()];
                if !g.has_edge(c[i], w) {
                    return Err(bad(format!("{}-{w} is not an edge", c[i])));
                }
            }
        }
        if seen.len() != g.n() || g.vertices().any(|v| !seen.contains(&v)) {
            return Err(bad("does not span the graph".into()));
        }
        Ok(())
    }
}

fn require_connected_4_regular(g: &Graph) -> Result<()> {
    if let Some(v) = g.vertices().find(|&v| g.degree(v) != 4) {
        return Err(Error::PreconditionAt { vertex: v, msg: format!("degree {} in a graph required to be 4-regular", g.degree(v)) });
    }
    if !g.is_connected() {
        return Err(Error::Precondition("connected required".into()));
    }
    Ok(())
}

/// Euler circuit of a connected graph with all degrees even, as a closed
/// vertex walk (first vertex repeated at the end).
fn euler_circuit(g: &Graph) -> Vec<VertexId> {
    let (verts, adj) = g.dense_adjacency();
    let n = verts.len();
    let mut ids: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let mut inc: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for v in 0..n {
        for &w in &adj[v] {
            if v < w {
                let id = ids.len();
                ids.insert((v, w), id);
                inc[v].push((w, id));
                inc[w].push((v, id));
            }
        }
    }
    let mut used = vec![false; ids.len()];
    let mut ptr = vec![0usize; n];
    let mut stack = vec![0usize];
    let mut walk = Vec::new();
    while let Some(&v) = stack.last() {
        while ptr[v] < inc[v].len() && used[inc[v][ptr[v]].1] {
            ptr[v] += 1;
        }
        if ptr[v] == inc[v].len() {
            walk.push(verts[v]);
            stack.pop();
        } else {
            let (w, id) = inc[v][ptr[v]];
            used[id] = true;
            stack.push(w);
        }
    }
    walk.reverse();
    walk
}

/// 2-factor of a connected 4-regular graph: orient the edges along an Euler
/// circuit, then split the resulting 2-in 2-out digraph with a perfect
/// matching between out-copies and in-copies.
pub fn compute_two_factor(g: &Graph) -> Result<TwoFactor> {
    require_connected_4_regular(g)?;
    let walk = euler_circuit(g);
    let mut outs: BTreeMap<VertexId, Vec<VertexId>> = BTreeMap::new();
    let mut ins: BTreeMap<VertexId, Vec<VertexId>> = BTreeMap::new();
    for w in walk.windows(2) {
        outs.entry(w[0]).or_default().push(w[1]);
        ins.entry(w[1]).or_default().push(w[0]);
    }
    // the bipartite out/in graph is 2-regular; alternate edges along each cycle
    let mut succ: BTreeMap<VertexId, VertexId> = BTreeMap::new();
    let mut taken: BTreeSet<(VertexId, VertexId)> = BTreeSet::new();
    for &start in outs.keys() {
        if succ.contains_key(&start) {
            continue;
        }
        let mut v = start;
        let mut w = outs[&start][0];
        loop {
            succ.insert(v, w);
            taken.insert((v, w));
            // the other arc into w is left out, its tail takes its other arc
            let other_in = ins[&w].iter().copied().find(|&t| (t, w) != (v, w)).unwrap();
            let t = other_in;
            if succ.contains_key(&t) {
                break;
            }
            let next = outs[&t].iter().copied().find(|&x| x != w).unwrap();
            v = t;
            w = next;
        }
    }
    let mut cycles = Vec::new();
    let mut seen = BTreeSet::new();
    for &s in succ.keys() {
        if seen.contains(&s) {
            continue;
        }
        let mut c = vec![s];
        seen.insert(s);
        let mut v = succ[&s];
        while v != s {
            seen.insert(v);
            c.push(v);
            v = succ[&v];
        }
        cycles.push(c);
    }
    let tf = TwoFactor { cycles };
    tf.validate(g)?;
    Ok(tf)
}

/// Which case of the merge construction fired.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum MergeCase {
    /// One L-insertion, `k + 4`.
    Case1,
    /// Two L-insertions, `k + 8`.
    Case2,
}

struct FaceIndex {
    of_edge: BTreeMap<Edge, BTreeSet<usize>>,
}

impl FaceIndex {
    fn new(pg: &PlaneGraph) -> Self {
        let mut of_edge: BTreeMap<Edge, BTreeSet<usize>> = BTreeMap::new();
        for (i, f) in faces_half_edges(&pg.rotation).into_iter().enumerate() {
            for (a, b) in f {
                of_edge.entry(edge(a, b)).or_default().insert(i);
            }
        }
        Self { of_edge }
    }

    fn cofacial(&self, e: Edge, f: Edge) -> bool {
        match (self.of_edge.get(&e), self.of_edge.get(&f)) {
            (Some(a), Some(b)) => !a.is_disjoint(b),
            _ => false,
        }
    }
}

fn cycle_nbrs(cycle: &[VertexId], u: VertexId) -> [VertexId; 2] {
    let n = cycle.len();
    let i = cycle.iter().position(|&x| x == u).unwrap();
    [cycle[(i + 1) % n], cycle[(i + n - 1) % n]]
}

enum Plan {
    One { u: VertexId, v: VertexId, a: VertexId, b: VertexId },
    Two { u: VertexId, v: VertexId, a: VertexId, w: VertexId, b: VertexId },
}

fn plan_merge(g: &Graph, tf: &TwoFactor, faces: &FaceIndex) -> Option<(Plan, usize, usize)> {
    let of = tf.cycle_of();
    let pairs: Vec<Edge> = g.edges().filter(|(u, v)| of[u] != of[v]).collect();
    for &(u0, v0) in &pairs {
        let (i, j) = (of[&u0], of[&v0]);
        let (ci, cj) = (&tf.cycles[i], &tf.cycles[j]);
        for a in cycle_nbrs(ci, u0) {
            for b in cycle_nbrs(cj, v0) {
                if faces.cofacial(edge(u0, a), edge(v0, b)) {
                    return Some((Plan::One { u: u0, v: v0, a, b }, i, j));
                }
            }
        }
        for (u, v, cu, cv, iu, iv) in [(u0, v0, ci, cj, i, j), (v0, u0, cj, ci, j, i)] {
            let nb = cycle_nbrs(cu, u);
            let Some(w) = g.neighbors(u).find(|&x| x != v && !nb.contains(&x)) else {
                continue;
            };
            let et = edge(u, w);
            for a in nb {
                if !faces.cofacial(edge(u, a), et) {
                    continue;
                }
                for b in cycle_nbrs(cv, v) {
                    if faces.cofacial(et, edge(v, b)) {
                        return Some((Plan::Two { u, v, a, w, b }, iu, iv));
                    }
                }
            }
        }
    }
    None
}

/// Merges two cycles of `tf` into one. Returns the new 2-factor and the case
/// used. The graph stays 4-regular and planar.
pub(crate) fn merge_in_place(rec: &mut Recorder, tf: &TwoFactor) -> Result<(TwoFactor, MergeCase)> {
    if tf.len() < 2 {
        return Err(Error::AlreadyHamiltonian);
    }
    let pg = PlaneGraph::embed(rec.g.clone())?;
    let faces = FaceIndex::new(&pg);
    let (plan, i, j) = plan_merge(&rec.g, tf, &faces)
        .ok_or_else(|| Error::Certification("no merge configuration found on any incident face".into()))?;
    let (merged, case) = match plan {
        Plan::One { u, v, a, b } => {
            let z = rec.subdivide(u, a)?;
            let z2 = rec.subdivide(v, b)?;
            let (ins, gadget) = rec.insert(GadgetKind::L, z, z2)?;
            let mut c = path_around(&tf.cycles[i], u, a);
            c.extend(ins.path(&gadget));
            let mut back = path_around(&tf.cycles[j], v, b);
            back.reverse();
            c.extend(back);
            (c, MergeCase::Case1)
        }
        Plan::Two { u, v, a, w, b } => {
            let z = rec.subdivide(u, a)?;
            let t1 = rec.subdivide(u, w)?;
            let t2 = rec.subdivide(t1, w)?;
            let z2 = rec.subdivide(v, b)?;
            let (ins1, g1) = rec.insert(GadgetKind::L, z, t1)?;
            let (ins2, g2) = rec.insert(GadgetKind::L, t2, z2)?;
            let mut c = path_around(&tf.cycles[i], u, a);
            c.extend(ins1.path(&g1));
            c.extend(ins2.path(&g2));
            let mut back = path_around(&tf.cycles[j], v, b);
            back.reverse();
            c.extend(back);
            (c, MergeCase::Case2)
        }
    };
    let mut cycles: Vec<Vec<VertexId>> = Vec::with_capacity(tf.len() - 1);
    for (x, c) in tf.cycles.iter().enumerate() {
        if x == i.min(j) {
            cycles.push(merged.clone());
        } else if x != i && x != j {
            cycles.push(c.clone());
        }
    }
    let out = TwoFactor { cycles };
    out.validate(&rec.g)?;
    Ok((out, case))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k5() -> Graph {
        let mut e = Vec::new();
        for i in 0..5 {
            for j in i + 1..5 {
                e.push((i, j));
            }
        }
        Graph::from_edges(5, &e).unwrap()
    }

    #[test]
    fn two_factor_of_k5() {
        let tf = compute_two_factor(&k5()).unwrap();
        tf.validate(&k5()).unwrap();
        assert_eq!(tf.cycles.iter().map(|c| c.len()).sum::<usize>(), 5);
    }

    #[test]
    fn rejects_bad_input() {
        let c: Vec<(u32, u32)> = (0..5).map(|i| (i, (i + 1) % 5)).collect();
        assert!(matches!(compute_two_factor(&Graph::from_edges(5, &c).unwrap()), Err(Error::PreconditionAt { .. })));
        let mut two = k5();
        let map = two.copy_disjoint(&k5().vertices().collect::<Vec<_>>());
        assert_eq!(map.len(), 5);
        assert_eq!(compute_two_factor(&two).unwrap_err(), Error::Precondition("connected required".into()));
    }
}

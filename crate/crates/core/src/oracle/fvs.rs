//! Exhaustive minimum feedback vertex set for small graphs.

use std::collections::BTreeSet;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};

/// Largest graph the exhaustive solver accepts.
pub const EXHAUSTIVE_LIMIT: usize = 26;

/// A minimum feedback vertex set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FvsSolution {
    pub size: usize,
    pub set: Vec<VertexId>,
}

/// True if `G - set` is a forest.
pub fn is_fvs(g: &Graph, set: &BTreeSet<VertexId>) -> bool {
    g.without(set).is_forest()
}

struct Masked {
    verts: Vec<VertexId>,
    edges: Vec<(u8, u8)>,
    full: u32,
}

impl Masked {
    fn new(g: &Graph) -> Self {
        let (verts, idx) = g.index();
        let edges = g.edges().map(|(u, v)| (idx[&u] as u8, idx[&v] as u8)).collect();
        let n = verts.len();
        let full = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
        Self { verts, edges, full }
    }

    fn n(&self) -> usize {
        self.verts.len()
    }

    /// Is the subgraph induced by `kept` acyclic?
    fn acyclic(&self, kept: u32) -> bool {
        let mut parent = [0u8; 32];
        for (i, p) in parent.iter_mut().enumerate() {
            *p = i as u8;
        }
        fn find(p: &mut [u8; 32], mut x: u8) -> u8 {
            while p[x as usize] != x {
                p[x as usize] = p[p[x as usize] as usize];
                x = p[x as usize];
            }
            x
        }
        let mut used = 0u32;
        let budget = kept.count_ones().saturating_sub(1);
        for &(a, b) in &self.edges {
            if kept >> a & 1 == 0 || kept >> b & 1 == 0 {
                continue;
            }
            used += 1;
            if used > budget {
                return false;
            }
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra == rb {
                return false;
            }
            parent[ra as usize] = rb;
        }
        true
    }

    fn to_set(&self, mask: u32) -> Vec<VertexId> {
        (0..self.n()).filter(|&i| mask >> i & 1 == 1).map(|i| self.verts[i]).collect()
    }

    /// Lexicographically first deletion set of size `k` whose removal
    /// leaves a forest, scanning combinations in lexicographic order.
    fn first_of_size(&self, k: usize) -> Option<u32> {
        let n = self.n();
        if k > n {
            return None;
        }
        if k == 0 {
            return self.acyclic(self.full).then_some(0);
        }
        (0..=n - k).into_par_iter().find_map_first(|first| {
            let mut found = None;
            for_each_combination(first + 1, n, k - 1, |rest| {
                let del = rest | 1 << first;
                if self.acyclic(self.full & !del) {
                    found = Some(del);
                    false
                } else {
                    true
                }
            });
            found
        })
    }

    fn all_of_size(&self, k: usize) -> Vec<u32> {
        let n = self.n();
        if k == 0 {
            return if self.acyclic(self.full) { vec![0] } else { vec![] };
        }
        (0..=n.saturating_sub(k))
            .into_par_iter()
            .flat_map_iter(|first| {
                let mut out = Vec::new();
                for_each_combination(first + 1, n, k - 1, |rest| {
                    let del = rest | 1 << first;
                    if self.acyclic(self.full & !del) {
                        out.push(del);
                    }
                    true
                });
                out
            })
            .collect()
    }
}

/// Calls `f` on every `k`-subset of `lo..n` as a bitmask, in lexicographic
/// order, until `f` returns false.
fn for_each_combination(lo: usize, n: usize, k: usize, mut f: impl FnMut(u32) -> bool) {
    if k == 0 {
        f(0);
        return;
    }
    if lo + k > n {
        return;
    }
    let mut idx: Vec<usize> = (lo..lo + k).collect();
    loop {
        let mask = idx.iter().fold(0u32, |m, &i| m | 1 << i);
        if !f(mask) {
            return;
        }
        let mut i = k;
        while i > 0 && idx[i - 1] == n - k + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return;
        }
        let i = i - 1;
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Greedy FVS size: strip degree <= 1, delete a maximum-degree vertex, repeat.
fn greedy_upper_bound(g: &Graph) -> usize {
    let mut h = g.strip_low_degree().0;
    let mut count = 0;
    while !h.is_empty() {
        let v = h.vertices().max_by_key(|&v| (h.degree(v), std::cmp::Reverse(v))).unwrap();
        h.remove_vertex(v).unwrap();
        count += 1;
        h = h.strip_low_degree().0;
    }
    count
}

fn check_size(g: &Graph) -> Result<()> {
    if g.n() > EXHAUSTIVE_LIMIT {
        Err(Error::UseBranchReduce)
    } else {
        Ok(())
    }
}

/// Minimum FVS by subset enumeration. Among minimum solutions the
/// lexicographically smallest (by sorted vertex ids) is returned.
pub fn fvs_exact_exhaustive(g: &Graph) -> Result<FvsSolution> {
    check_size(g)?;
    let mg = Masked::new(g);
    let mut best_k = greedy_upper_bound(g);
    let mut best = mg.first_of_size(best_k).expect("greedy bound is feasible");
    // existence is monotone in k, so walking down until failure finds the optimum
    while best_k > 0 {
        match mg.first_of_size(best_k - 1) {
            Some(mask) => {
                best_k -= 1;
                best = mask;
            }
            None => break,
        }
    }
    Ok(FvsSolution { size: best_k, set: mg.to_set(best) })
}

/// Minimum FVS size together with every minimum solution.
pub fn all_minimum_fvs(g: &Graph) -> Result<(usize, Vec<Vec<VertexId>>)> {
    let opt = fvs_exact_exhaustive(g)?.size;
    let mg = Masked::new(g);
    let mut sols: Vec<Vec<VertexId>> = mg.all_of_size(opt).into_iter().map(|m| mg.to_set(m)).collect();
    sols.sort();
    Ok((opt, sols))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete(n: usize) -> Graph {
        let mut e = Vec::new();
        for i in 0..n as u32 {
            for j in i + 1..n as u32 {
                e.push((i, j));
            }
        }
        Graph::from_edges(n, &e).unwrap()
    }

    #[test]
    fn combinations_in_lex_order() {
        let mut seen = Vec::new();
        for_each_combination(0, 5, 3, |m| {
            seen.push(m);
            true
        });
        assert_eq!(seen.len(), 10);
        assert_eq!(seen[0], 0b00111);
        assert_eq!(seen[1], 0b01011);
        assert_eq!(*seen.last().unwrap(), 0b11100);
    }

    #[test]
    fn complete_graphs() {
        for n in 1..=7 {
            assert_eq!(fvs_exact_exhaustive(&complete(n)).unwrap().size, n.saturating_sub(2));
        }
    }

    #[test]
    fn k4_has_six_minimum_solutions() {
        let (opt, sols) = all_minimum_fvs(&complete(4)).unwrap();
        assert_eq!(opt, 2);
        assert_eq!(sols.len(), 6);
    }

    #[test]
    fn lexicographically_smallest() {
        let g = Graph::from_edges(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        assert_eq!(fvs_exact_exhaustive(&g).unwrap().set, vec![VertexId(0)]);
    }

    #[test]
    fn too_large() {
        let (g, _) = Graph::with_vertices(27);
        assert_eq!(fvs_exact_exhaustive(&g).unwrap_err(), Error::UseBranchReduce);
    }
}

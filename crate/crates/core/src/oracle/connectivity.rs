//! Vertex connectivity through unit-capacity max-flow.

use crate::graph::Graph;

struct Flow {
    head: Vec<Vec<usize>>,
    to: Vec<usize>,
    cap: Vec<u32>,
}

impl Flow {
    fn new(n: usize) -> Self {
        Self { head: vec![Vec::new(); n], to: Vec::new(), cap: Vec::new() }
    }

    fn arc(&mut self, a: usize, b: usize, c: u32) {
        self.head[a].push(self.to.len());
        self.to.push(b);
        self.cap.push(c);
        self.head[b].push(self.to.len());
        self.to.push(a);
        self.cap.push(0);
    }

    fn augment(&mut self, s: usize, t: usize) -> bool {
        let mut via = vec![usize::MAX; self.head.len()];
        let mut seen = vec![false; self.head.len()];
        let mut q = std::collections::VecDeque::from([s]);
        seen[s] = true;
        while let Some(v) = q.pop_front() {
            if v == t {
                break;
            }
            for &e in &self.head[v] {
                let w = self.to[e];
                if self.cap[e] > 0 && !seen[w] {
                    seen[w] = true;
                    via[w] = e;
                    q.push_back(w);
                }
            }
        }
        if !seen[t] {
            return false;
        }
        let mut v = t;
        while v != s {
            let e = via[v];
            self.cap[e] -= 1;
            self.cap[e ^ 1] += 1;
            v = self.to[e ^ 1];
        }
        true
    }
}

/// Number of internally vertex-disjoint paths between non-adjacent `s` and
/// `t`, capped at `limit`.
fn local_connectivity(n: usize, adj: &[Vec<usize>], s: usize, t: usize, limit: usize) -> usize {
    // vertex v splits into 2v (in) and 2v+1 (out)
    let big = n as u32 + 1;
    let mut f = Flow::new(2 * n);
    for v in 0..n {
        let c = if v == s || v == t { big } else { 1 };
        f.arc(2 * v, 2 * v + 1, c);
        for &w in &adj[v] {
            f.arc(2 * v + 1, 2 * w, 1);
        }
    }
    let mut k = 0;
    while k < limit && f.augment(2 * s + 1, 2 * t) {
        k += 1;
    }
    k
}

/// True if removing any `c - 1` vertices leaves `g` connected (and `g` has
/// more than `c` vertices).
pub fn vertex_connectivity_at_least(g: &Graph, c: usize) -> bool {
    if c == 0 {
        return true;
    }
    let n = g.n();
    if n <= c || g.min_degree() < c {
        return false;
    }
    let (_, adj) = g.dense_adjacency();
    for s in 0..n {
        for t in s + 1..n {
            if adj[s].contains(&t) {
                continue;
            }
            if local_connectivity(n, &adj, s, t, c) < c {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycle_is_two_connected() {
        let e: Vec<(u32, u32)> = (0..6).map(|i| (i, (i + 1) % 6)).collect();
        let g = Graph::from_edges(6, &e).unwrap();
        assert!(vertex_connectivity_at_least(&g, 2));
        assert!(!vertex_connectivity_at_least(&g, 3));
    }

    #[test]
    fn cut_vertex() {
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)]).unwrap();
        assert!(vertex_connectivity_at_least(&g, 1));
        assert!(!vertex_connectivity_at_least(&g, 2));
    }

    #[test]
    fn octahedron_is_four_connected() {
        let mut e = Vec::new();
        for i in 0..6u32 {
            for j in i + 1..6 {
                if j != i + 3 || i >= 3 {
                    e.push((i, j));
                }
            }
        }
        let g = Graph::from_edges(6, &e).unwrap();
        assert_eq!(g.m(), 12);
        assert!(vertex_connectivity_at_least(&g, 4));
        assert!(!vertex_connectivity_at_least(&g, 5));
    }
}

//! Hamiltonian cycle search, p-Hamiltonian-ordered checks and Ore's
//! condition.

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};

/// Largest graph on which every p-tuple is checked.
pub const HAM_ORDERED_EXHAUSTIVE_LIMIT: usize = 20;

/// Backtracking states allowed per search before giving up.
pub const STATE_CAP: u64 = 10_000_000;

/// True if `order` is a Hamiltonian cycle of `g`.
pub fn verify_witness(g: &Graph, order: &[VertexId]) -> bool {
    crate::graph::HamCycle::new(g, order.to_vec()).is_ok()
}

struct Dense {
    verts: Vec<VertexId>,
    adj: Vec<u64>,
    full: u64,
}

impl Dense {
    fn new(g: &Graph) -> Result<Self> {
        if g.n() > 64 {
            return Err(Error::Precondition("Hamiltonian search supports at most 64 vertices".into()));
        }
        let (verts, adj) = g.dense_adjacency();
        let adj = adj.iter().map(|l| l.iter().fold(0u64, |m, &j| m | 1 << j)).collect();
        let n = verts.len();
        let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        Ok(Self { verts, adj, full })
    }

    /// Hamiltonian cycle starting at `tuple[0]` that meets the tuple
    /// vertices in the given order.
    fn ordered_cycle(&self, tuple: &[usize]) -> Result<Option<Vec<usize>>> {
        let n = self.verts.len();
        let mut pos = vec![usize::MAX; n];
        let mut tmask = 0u64;
        for (i, &t) in tuple.iter().enumerate() {
            pos[t] = i;
            tmask |= 1 << t;
        }
        let mut st = OrderedSearch { d: self, pos, tmask, tuple, states: 0, path: vec![tuple[0]] };
        if st.rec(1u64 << tuple[0], 1)? {
            Ok(Some(st.path))
        } else {
            Ok(None)
        }
    }

    fn reaches_all(&self, from: usize, allowed: u64, target: u64) -> bool {
        let mut seen = 1u64 << from;
        let mut frontier = seen;
        while frontier != 0 {
            let v = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let nb = self.adj[v] & allowed & !seen;
            seen |= nb;
            frontier |= nb;
        }
        seen & target == target
    }
}

struct OrderedSearch<'a> {
    d: &'a Dense,
    pos: Vec<usize>,
    tmask: u64,
    tuple: &'a [usize],
    states: u64,
    path: Vec<usize>,
}

impl OrderedSearch<'_> {
    fn rec(&mut self, visited: u64, next: usize) -> Result<bool> {
        self.states += 1;
        if self.states > STATE_CAP {
            return Err(Error::Undecided);
        }
        let cur = *self.path.last().unwrap();
        let start = self.tuple[0];
        if visited == self.d.full {
            return Ok(next == self.tuple.len() && self.d.adj[cur] >> start & 1 == 1);
        }
        let rem = self.d.full & !visited;
        let ends = (1u64 << cur) | (1u64 << start);
        let mut r = rem;
        while r != 0 {
            let v = r.trailing_zeros() as usize;
            r &= r - 1;
            if (self.d.adj[v] & (rem | ends)).count_ones() < 2 {
                return Ok(false);
            }
        }
        if !self.d.reaches_all(cur, rem | (1 << cur), rem) {
            return Ok(false);
        }
        let mut cand = self.d.adj[cur] & rem;
        while cand != 0 {
            let w = cand.trailing_zeros() as usize;
            cand &= cand - 1;
            let mut nx = next;
            if self.tmask >> w & 1 == 1 {
                if self.pos[w] != next {
                    continue;
                }
                nx += 1;
            }
            self.path.push(w);
            if self.rec(visited | 1 << w, nx)? {
                return Ok(true);
            }
            self.path.pop();
        }
        Ok(false)
    }
}

/// Finds a Hamiltonian cycle by backtracking (at most 64 vertices).
pub fn find_hamiltonian_cycle(g: &Graph) -> Result<Option<Vec<VertexId>>> {
    if g.n() < 3 {
        return Ok(None);
    }
    let d = Dense::new(g)?;
    Ok(d.ordered_cycle(&[0])?.map(|p| p.into_iter().map(|i| d.verts[i]).collect()))
}

/// How tuples are chosen by [`check_ham_ordered`].
#[derive(Clone, Copy, Debug)]
pub enum TupleMode {
    Exhaustive,
    Sampled { samples: usize, seed: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HamOrderedReport {
    pub holds: bool,
    pub counterexample: Option<Vec<VertexId>>,
    /// Tuples searched; each stands for its `p` cyclic rotations.
    pub tuples_checked: usize,
}

/// Checks that every p-tuple of distinct vertices lies on some Hamiltonian
/// cycle in the given cyclic order. A tuple and its rotations describe the
/// same requirement, so only rotations starting at the tuple minimum are
/// searched.
pub fn check_ham_ordered(g: &Graph, p: usize, mode: TupleMode) -> Result<HamOrderedReport> {
    let n = g.n();
    if p < 1 || p > n {
        return Err(Error::Precondition(format!("tuple size {p} must be between 1 and {n}")));
    }
    let d = Dense::new(g)?;
    let tuples: Vec<Vec<usize>> = match mode {
        TupleMode::Exhaustive => {
            if n > HAM_ORDERED_EXHAUSTIVE_LIMIT {
                return Err(Error::UseSampled);
            }
            let mut out = Vec::new();
            for first in 0..n {
                let mut t = vec![first];
                extend_tuples(n, p, first, &mut t, &mut out);
            }
            out
        }
        TupleMode::Sampled { samples, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..samples)
                .map(|_| {
                    let mut t = sample(&mut rng, n, p).into_vec();
                    let m = t.iter().enumerate().min_by_key(|(_, &v)| v).unwrap().0;
                    t.rotate_left(m);
                    t
                })
                .collect()
        }
    };
    let failure = tuples
        .par_iter()
        .map(|t| d.ordered_cycle(t).map(|c| (t, c.is_some())))
        .find_map_first(|r| match r {
            Ok((_, true)) => None,
            Ok((t, false)) => Some(Ok(t.clone())),
            Err(e) => Some(Err(e)),
        })
        .transpose()?;
    Ok(HamOrderedReport {
        holds: failure.is_none(),
        counterexample: failure.map(|t| t.into_iter().map(|i| d.verts[i]).collect()),
        tuples_checked: tuples.len(),
    })
}

fn extend_tuples(n: usize, p: usize, first: usize, t: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if t.len() == p {
        out.push(t.clone());
        return;
    }
    for v in first + 1..n {
        if !t.contains(&v) {
            t.push(v);
            extend_tuples(n, p, first, t, out);
            t.pop();
        }
    }
}

/// Non-adjacent pair violating `deg(v) + deg(w) >= |V| + 2p - 6`, if any.
pub fn ore_violation(g: &Graph, p: usize) -> Option<(VertexId, VertexId)> {
    let bound = g.n() as i64 + 2 * p as i64 - 6;
    let verts: Vec<VertexId> = g.vertices().collect();
    for (i, &v) in verts.iter().enumerate() {
        for &w in &verts[i + 1..] {
            if !g.has_edge(v, w) && ((g.degree(v) + g.degree(w)) as i64) < bound {
                return Some((v, w));
            }
        }
    }
    None
}

/// Ore-type sufficient condition for being p-Hamiltonian-ordered.
pub fn check_ore_condition(g: &Graph, p: usize) -> bool {
    ore_violation(g, p).is_none()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Graph {
        let e: Vec<(u32, u32)> = (0..n as u32).map(|i| (i, (i + 1) % n as u32)).collect();
        Graph::from_edges(n, &e).unwrap()
    }

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
    fn cycles_are_hamiltonian() {
        let c = find_hamiltonian_cycle(&cycle(7)).unwrap().unwrap();
        assert!(verify_witness(&cycle(7), &c));
    }

    #[test]
    fn star_is_not() {
        let g = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(find_hamiltonian_cycle(&g).unwrap(), None);
    }

    #[test]
    fn cycle_is_3_but_not_4_ordered() {
        let g = cycle(6);
        assert!(check_ham_ordered(&g, 3, TupleMode::Exhaustive).unwrap().holds);
        let r = check_ham_ordered(&g, 4, TupleMode::Exhaustive).unwrap();
        assert!(!r.holds);
        assert!(r.counterexample.is_some());
    }

    #[test]
    fn complete_graph_is_fully_ordered() {
        let r = check_ham_ordered(&complete(6), 6, TupleMode::Exhaustive).unwrap();
        assert!(r.holds);
        // 6!/6 canonical tuples
        assert_eq!(r.tuples_checked, 120);
    }

    #[test]
    fn large_graph_needs_sampling() {
        assert_eq!(check_ham_ordered(&cycle(21), 3, TupleMode::Exhaustive).unwrap_err(), Error::UseSampled);
        let r = check_ham_ordered(&cycle(21), 3, TupleMode::Sampled { samples: 10, seed: 1 }).unwrap();
        assert!(r.holds);
    }

    #[test]
    fn ore_on_complete_and_cycle() {
        assert!(check_ore_condition(&complete(5), 5));
        assert!(!check_ore_condition(&cycle(6), 3));
    }
}

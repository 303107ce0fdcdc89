//! Branch-and-reduce minimum feedback vertex set for mid-sized graphs.
//!
//! Works on a multigraph kernel where vertices may be marked undeletable.
//! Undeletable neighbours are contracted, degree <= 1 vertices vanish and
//! degree-2 vertices are bypassed. Search is iterative deepening on the
//! solution size with two lower bounds (vertex-disjoint cycles and a degree
//! count) for pruning.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::time::{Duration, Instant};

use super::fvs::{is_fvs, FvsSolution};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Resource limit for one solve.
#[derive(Clone, Copy, Debug)]
pub struct Budget {
    pub max_nodes: u64,
    pub time: Option<Duration>,
}

impl Default for Budget {
    fn default() -> Self {
        Self { max_nodes: 50_000_000, time: None }
    }
}

#[derive(Clone, Debug)]
struct Kernel {
    adj: Vec<BTreeMap<usize, u32>>,
    alive: Vec<bool>,
    keep: Vec<bool>,
    deleted: Vec<usize>,
}

impl Kernel {
    fn new(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut k = Kernel {
            adj: vec![BTreeMap::new(); n],
            alive: vec![true; n],
            keep: vec![false; n],
            deleted: Vec::new(),
        };
        for &(a, b) in edges {
            k.add(a, b, 1);
        }
        k
    }

    fn add(&mut self, a: usize, b: usize, mult: u32) {
        *self.adj[a].entry(b).or_insert(0) += mult;
        if a != b {
            *self.adj[b].entry(a).or_insert(0) += mult;
        }
    }

    fn degree(&self, v: usize) -> u32 {
        self.adj[v].iter().map(|(&w, &c)| if w == v { 2 * c } else { c }).sum()
    }

    fn remove(&mut self, v: usize) {
        let nbrs: Vec<usize> = self.adj[v].keys().copied().collect();
        for w in nbrs {
            if w != v {
                self.adj[w].remove(&v);
            }
        }
        self.adj[v].clear();
        self.alive[v] = false;
    }

    fn delete(&mut self, v: usize) {
        self.deleted.push(v);
        self.remove(v);
    }

    fn live(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.alive.len()).filter(|&v| self.alive[v])
    }

    fn is_empty(&self) -> bool {
        !self.alive.iter().any(|&a| a)
    }

    /// Applies reduction rules to exhaustion. Returns false if infeasible.
    fn reduce(&mut self) -> bool {
        let mut changed = true;
        while changed {
            changed = false;
            for v in 0..self.alive.len() {
                if !self.alive[v] {
                    continue;
                }
                if self.adj[v].contains_key(&v) {
                    if self.keep[v] {
                        return false;
                    }
                    self.delete(v);
                    changed = true;
                    continue;
                }
                if self.keep[v] {
                    let kept_nbr = self.adj[v].keys().copied().find(|&u| self.keep[u]);
                    if let Some(u) = kept_nbr {
                        // contract u into v; extra parallel copies become loops
                        let moved: Vec<(usize, u32)> = self.adj[u].iter().map(|(&w, &c)| (w, c)).collect();
                        self.remove(u);
                        for (w, c) in moved {
                            if w == v {
                                if c > 1 {
                                    return false;
                                }
                            } else {
                                self.add(v, w, c);
                            }
                        }
                        changed = true;
                        continue;
                    }
                    let doubled = self.adj[v].iter().find(|(_, &c)| c >= 2).map(|(&u, _)| u);
                    if let Some(u) = doubled {
                        self.delete(u);
                        changed = true;
                        continue;
                    }
                }
                let d = self.degree(v);
                if d <= 1 {
                    self.remove(v);
                    changed = true;
                } else if d == 2 {
                    let nbrs: Vec<(usize, u32)> = self.adj[v].iter().map(|(&w, &c)| (w, c)).collect();
                    if nbrs.len() == 1 {
                        let u = nbrs[0].0;
                        if !self.keep[u] {
                            self.delete(u);
                        } else if !self.keep[v] {
                            self.delete(v);
                        } else {
                            return false;
                        }
                        changed = true;
                    } else {
                        let (a, b) = (nbrs[0].0, nbrs[1].0);
                        // a deletable v between two undeletable vertices must stay
                        if self.keep[v] || !self.keep[a] || !self.keep[b] {
                            self.remove(v);
                            self.add(a, b, 1);
                            changed = true;
                        }
                    }
                }
            }
        }
        true
    }

    fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.alive.len()];
        let mut out = Vec::new();
        for s in self.live() {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut q = VecDeque::from([s]);
            while let Some(v) = q.pop_front() {
                for &w in self.adj[v].keys() {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        q.push_back(w);
                    }
                }
            }
            out.push(comp);
        }
        out
    }

    /// Per component, the fewest deletable vertices whose degree surplus can
    /// cover the cyclomatic excess.
    fn degree_bound(&self) -> Option<usize> {
        let mut total = 0;
        for comp in self.components() {
            let n = comp.len() as i64;
            let m: i64 = comp.iter().map(|&v| self.degree(v) as i64).sum::<i64>() / 2;
            let need = m - n + 1;
            if need <= 0 {
                continue;
            }
            let mut surplus: Vec<i64> = comp
                .iter()
                .filter(|&&v| !self.keep[v])
                .map(|&v| self.degree(v) as i64 - 1)
                .collect();
            surplus.sort_unstable_by(|a, b| b.cmp(a));
            let mut acc = 0;
            let mut t = 0;
            for s in surplus {
                if acc >= need {
                    break;
                }
                acc += s;
                t += 1;
            }
            if acc < need {
                return None;
            }
            total += t;
        }
        Some(total)
    }

    /// Greedy packing of vertex-disjoint short cycles.
    fn cycle_packing_bound(&self) -> usize {
        let mut blocked = vec![false; self.alive.len()];
        let mut count = 0;
        for s in self.live() {
            if blocked[s] {
                continue;
            }
            if let Some(cycle) = self.short_cycle_through(s, &blocked) {
                for v in cycle {
                    blocked[v] = true;
                }
                count += 1;
            }
        }
        count
    }

    /// BFS from `s` for a cycle through `s` avoiding blocked vertices.
    fn short_cycle_through(&self, s: usize, blocked: &[bool]) -> Option<Vec<usize>> {
        if let Some(&c) = self.adj[s].get(&s) {
            if c > 0 {
                return Some(vec![s]);
            }
        }
        for (&w, &c) in &self.adj[s] {
            if c >= 2 && !blocked[w] {
                return Some(vec![s, w]);
            }
        }
        let n = self.alive.len();
        let mut parent = vec![usize::MAX; n];
        let mut branch = vec![usize::MAX; n];
        let mut q = VecDeque::new();
        parent[s] = s;
        for &w in self.adj[s].keys() {
            if !blocked[w] && w != s {
                parent[w] = s;
                branch[w] = w;
                q.push_back(w);
            }
        }
        while let Some(v) = q.pop_front() {
            for &w in self.adj[v].keys() {
                if blocked[w] || w == s || w == parent[v] {
                    continue;
                }
                if parent[w] == usize::MAX {
                    parent[w] = v;
                    branch[w] = branch[v];
                    q.push_back(w);
                } else if branch[w] != branch[v] {
                    let mut cyc = vec![s];
                    let mut x = v;
                    while x != s {
                        cyc.push(x);
                        x = parent[x];
                    }
                    let mut y = w;
                    while y != s {
                        cyc.push(y);
                        y = parent[y];
                    }
                    return Some(cyc);
                }
            }
        }
        None
    }

    fn lower_bound(&self) -> Option<usize> {
        let d = self.degree_bound()?;
        Some(d.max(self.cycle_packing_bound()))
    }
}

struct Search {
    nodes: u64,
    budget: Budget,
    start: Instant,
}

impl Search {
    fn tick(&mut self) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget.max_nodes {
            return Err(Error::Undecided);
        }
        if self.nodes % 1024 == 0 {
            if let Some(t) = self.budget.time {
                if self.start.elapsed() > t {
                    return Err(Error::Undecided);
                }
            }
        }
        Ok(())
    }

    fn run(&mut self, mut k: Kernel, limit: usize) -> Result<Option<Vec<usize>>> {
        self.tick()?;
        if !k.reduce() || k.deleted.len() > limit {
            return Ok(None);
        }
        if k.is_empty() {
            return Ok(Some(k.deleted));
        }
        let room = limit - k.deleted.len();
        match k.lower_bound() {
            Some(lb) if lb <= room => {}
            _ => return Ok(None),
        }
        if room == 0 {
            return Ok(None);
        }
        // a double edge between deletable vertices forces one endpoint
        let double = k.live().find_map(|a| {
            k.adj[a]
                .iter()
                .find(|(&b, &c)| b > a && c >= 2)
                .map(|(&b, _)| (a, b))
        });
        if let Some((a, b)) = double {
            let mut left = k.clone();
            left.delete(a);
            if let Some(s) = self.run(left, limit)? {
                return Ok(Some(s));
            }
            let mut right = k;
            right.keep[a] = true;
            right.delete(b);
            return self.run(right, limit);
        }
        let v = k
            .live()
            .filter(|&v| !k.keep[v])
            .max_by_key(|&v| (k.degree(v), std::cmp::Reverse(v)))
            .expect("cyclic kernel has a deletable vertex");
        let mut with = k.clone();
        with.delete(v);
        if let Some(s) = self.run(with, limit)? {
            return Ok(Some(s));
        }
        let mut without = k;
        without.keep[v] = true;
        self.run(without, limit)
    }
}

/// Minimum FVS by branch-and-reduce with iterative deepening.
///
/// Fails with [`Error::Undecided`] if the node or time budget runs out.
pub fn fvs_branch_reduce(g: &Graph, budget: Budget) -> Result<FvsSolution> {
    let (verts, idx) = g.index();
    let edges: Vec<(usize, usize)> = g.edges().map(|(u, v)| (idx[&u], idx[&v])).collect();
    let kernel = Kernel::new(verts.len(), &edges);
    let mut search = Search { nodes: 0, budget, start: Instant::now() };
    let mut probe = kernel.clone();
    let start = if probe.reduce() { probe.deleted.len() + probe.lower_bound().unwrap_or(0) } else { 0 };
    for limit in start..=verts.len() {
        if let Some(sol) = search.run(kernel.clone(), limit)? {
            let set: BTreeSet<_> = sol.iter().map(|&i| verts[i]).collect();
            if !is_fvs(g, &set) {
                return Err(Error::Certification("branch-reduce produced a non-solution".into()));
            }
            return Ok(FvsSolution { size: set.len(), set: set.into_iter().collect() });
        }
    }
    unreachable!("deleting every vertex is always a solution")
}

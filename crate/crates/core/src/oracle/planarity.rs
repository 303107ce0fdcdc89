//! Left-right planarity test with embedding extraction.
//!
//! All three DFS passes (orientation, testing, embedding) run on explicit
//! stacks so deep graphs do not overflow the call stack.

use std::collections::BTreeMap;

use crate::graph::{Graph, Rotation};

#[derive(Clone, Copy, Default, Debug)]
struct Interval {
    low: Option<usize>,
    high: Option<usize>,
}

impl Interval {
    fn empty(&self) -> bool {
        self.low.is_none() && self.high.is_none()
    }
}

#[derive(Clone, Copy, Default, Debug)]
struct ConflictPair {
    id: usize,
    left: Interval,
    right: Interval,
}

impl ConflictPair {
    fn swap(&mut self) {
        std::mem::swap(&mut self.left, &mut self.right);
    }
}

struct Lr {
    n: usize,
    adjs: Vec<Vec<(usize, usize)>>,
    oriented: Vec<bool>,
    height: Vec<Option<i64>>,
    parent_edge: Vec<Option<usize>>,
    roots: Vec<usize>,
    // oriented edges
    src: Vec<usize>,
    dst: Vec<usize>,
    out: Vec<Vec<usize>>,
    lowpt: Vec<i64>,
    lowpt2: Vec<i64>,
    nesting: Vec<i64>,
    ordered: Vec<Vec<usize>>,
    // testing
    stack: Vec<ConflictPair>,
    next_pair_id: usize,
    stack_bottom: Vec<Option<usize>>,
    lowpt_edge: Vec<usize>,
    reference: Vec<Option<usize>>,
    side: Vec<i64>,
}

/// Returns a planar rotation system for `g`, or `None` if `g` is not planar.
pub fn planar_embedding(g: &Graph) -> Option<Rotation> {
    let (verts, adj) = g.dense_adjacency();
    let rot = lr_embedding(verts.len(), &adj)?;
    let mut out = BTreeMap::new();
    for (i, order) in rot.into_iter().enumerate() {
        out.insert(verts[i], order.into_iter().map(|j| verts[j]).collect());
    }
    Some(Rotation::from_map(out))
}

pub fn is_planar(g: &Graph) -> bool {
    planar_embedding(g).is_some()
}

/// Planarity test over dense adjacency lists. Returns clockwise orders.
pub fn lr_embedding(n: usize, adj: &[Vec<usize>]) -> Option<Vec<Vec<usize>>> {
    let m: usize = adj.iter().map(|l| l.len()).sum::<usize>() / 2;
    if n > 2 && m > 3 * n - 6 {
        return None;
    }
    let mut uid = BTreeMap::new();
    let mut adjs = vec![Vec::new(); n];
    for v in 0..n {
        for &w in &adj[v] {
            let key = (v.min(w), v.max(w));
            let next = uid.len();
            let id = *uid.entry(key).or_insert(next);
            adjs[v].push((w, id));
        }
    }
    let mut lr = Lr {
        n,
        adjs,
        oriented: vec![false; m],
        height: vec![None; n],
        parent_edge: vec![None; n],
        roots: Vec::new(),
        src: Vec::with_capacity(m),
        dst: Vec::with_capacity(m),
        out: vec![Vec::new(); n],
        lowpt: Vec::with_capacity(m),
        lowpt2: Vec::with_capacity(m),
        nesting: Vec::with_capacity(m),
        ordered: Vec::new(),
        stack: Vec::new(),
        next_pair_id: 0,
        stack_bottom: vec![None; m],
        lowpt_edge: vec![usize::MAX; m],
        reference: vec![None; m],
        side: vec![1; m],
    };
    for v in 0..n {
        if lr.height[v].is_none() {
            lr.height[v] = Some(0);
            lr.roots.push(v);
            lr.dfs_orientation(v);
        }
    }
    lr.sort_adjacency();
    for r in lr.roots.clone() {
        if !lr.dfs_testing(r) {
            return None;
        }
    }
    for e in 0..lr.src.len() {
        let s = lr.sign(e);
        lr.nesting[e] *= s;
    }
    lr.sort_adjacency();
    Some(lr.embed())
}

impl Lr {
    fn sort_adjacency(&mut self) {
        self.ordered = (0..self.n)
            .map(|v| {
                let mut l = self.out[v].clone();
                l.sort_by_key(|&e| self.nesting[e]);
                l
            })
            .collect();
    }

    fn h(&self, v: usize) -> i64 {
        self.height[v].expect("height set")
    }

    fn dfs_orientation(&mut self, root: usize) {
        let mut dfs = vec![root];
        let mut ind = vec![0usize; self.n];
        // edge whose initial work is done (tree edge waiting for its child)
        let mut pending: Vec<Option<usize>> = vec![None; self.n];
        while let Some(v) = dfs.pop() {
            let e = self.parent_edge[v];
            while ind[v] < self.adjs[v].len() {
                let (w, id) = self.adjs[v][ind[v]];
                let vw;
                if let Some(done) = pending[v].take() {
                    vw = done;
                } else {
                    if self.oriented[id] {
                        ind[v] += 1;
                        continue;
                    }
                    self.oriented[id] = true;
                    vw = self.src.len();
                    self.src.push(v);
                    self.dst.push(w);
                    self.out[v].push(vw);
                    self.lowpt.push(self.h(v));
                    self.lowpt2.push(self.h(v));
                    self.nesting.push(0);
                    if self.height[w].is_none() {
                        self.parent_edge[w] = Some(vw);
                        self.height[w] = Some(self.h(v) + 1);
                        pending[v] = Some(vw);
                        dfs.push(v);
                        dfs.push(w);
                        break;
                    } else {
                        self.lowpt[vw] = self.h(w);
                    }
                }
                self.nesting[vw] = 2 * self.lowpt[vw];
                if self.lowpt2[vw] < self.h(v) {
                    self.nesting[vw] += 1;
                }
                if let Some(e) = e {
                    if self.lowpt[vw] < self.lowpt[e] {
                        self.lowpt2[e] = self.lowpt[e].min(self.lowpt2[vw]);
                        self.lowpt[e] = self.lowpt[vw];
                    } else if self.lowpt[vw] > self.lowpt[e] {
                        self.lowpt2[e] = self.lowpt2[e].min(self.lowpt[vw]);
                    } else {
                        self.lowpt2[e] = self.lowpt2[e].min(self.lowpt2[vw]);
                    }
                }
                ind[v] += 1;
            }
        }
    }

    fn new_pair(&mut self) -> ConflictPair {
        self.next_pair_id += 1;
        ConflictPair { id: self.next_pair_id, ..Default::default() }
    }

    fn top_id(&self) -> Option<usize> {
        self.stack.last().map(|p| p.id)
    }

    fn conflicting(&self, i: &Interval, b: usize) -> bool {
        !i.empty() && self.lowpt[i.high.expect("non-empty interval has high")] > self.lowpt[b]
    }

    fn lowest(&self, p: &ConflictPair) -> i64 {
        if p.left.empty() {
            return self.lowpt[p.right.low.unwrap()];
        }
        if p.right.empty() {
            return self.lowpt[p.left.low.unwrap()];
        }
        self.lowpt[p.left.low.unwrap()].min(self.lowpt[p.right.low.unwrap()])
    }

    fn dfs_testing(&mut self, root: usize) -> bool {
        let mut dfs = vec![root];
        let mut ind = vec![0usize; self.n];
        let mut skip_init = vec![false; self.src.len()];
        while let Some(v) = dfs.pop() {
            let e = self.parent_edge[v];
            let mut skip_final = false;
            while ind[v] < self.ordered[v].len() {
                let ei = self.ordered[v][ind[v]];
                let w = self.dst[ei];
                if !skip_init[ei] {
                    self.stack_bottom[ei] = self.top_id();
                    if Some(ei) == self.parent_edge[w] {
                        dfs.push(v);
                        dfs.push(w);
                        skip_init[ei] = true;
                        skip_final = true;
                        break;
                    } else {
                        self.lowpt_edge[ei] = ei;
                        let mut p = self.new_pair();
                        p.right = Interval { low: Some(ei), high: Some(ei) };
                        self.stack.push(p);
                    }
                }
                if self.lowpt[ei] < self.h(v) {
                    if ei == self.ordered[v][0] {
                        let e = e.expect("non-root vertex has parent edge");
                        self.lowpt_edge[e] = self.lowpt_edge[ei];
                    } else if !self.add_constraints(ei, e.expect("non-root vertex has parent edge")) {
                        return false;
                    }
                }
                ind[v] += 1;
            }
            if !skip_final {
                if let Some(e) = e {
                    self.remove_back_edges(e);
                }
            }
        }
        true
    }

    fn add_constraints(&mut self, ei: usize, e: usize) -> bool {
        let mut p = self.new_pair();
        loop {
            let mut q = match self.stack.pop() {
                Some(q) => q,
                None => return false,
            };
            if !q.left.empty() {
                q.swap();
            }
            if !q.left.empty() {
                return false;
            }
            if self.lowpt[q.right.low.unwrap()] > self.lowpt[e] {
                if p.right.empty() {
                    p.right = q.right;
                } else {
                    self.reference[p.right.low.unwrap()] = q.right.high;
                }
                p.right.low = q.right.low;
            } else {
                self.reference[q.right.low.unwrap()] = Some(self.lowpt_edge[e]);
            }
            if self.top_id() == self.stack_bottom[ei] {
                break;
            }
        }
        while let Some(top) = self.stack.last().copied() {
            if !(self.conflicting(&top.left, ei) || self.conflicting(&top.right, ei)) {
                break;
            }
            let mut q = self.stack.pop().unwrap();
            if self.conflicting(&q.right, ei) {
                q.swap();
            }
            if self.conflicting(&q.right, ei) {
                return false;
            }
            if let Some(low) = p.right.low {
                self.reference[low] = q.right.high;
            }
            if q.right.low.is_some() {
                p.right.low = q.right.low;
            }
            if p.left.empty() {
                p.left = q.left;
            } else if let Some(low) = p.left.low {
                self.reference[low] = q.left.high;
            }
            p.left.low = q.left.low;
        }
        if !(p.left.empty() && p.right.empty()) {
            self.stack.push(p);
        }
        true
    }

    fn remove_back_edges(&mut self, e: usize) {
        let u = self.src[e];
        let hu = self.h(u);
        while let Some(top) = self.stack.last() {
            if self.lowest(top) != hu {
                break;
            }
            let p = self.stack.pop().unwrap();
            if let Some(low) = p.left.low {
                self.side[low] = -1;
            }
        }
        if let Some(mut p) = self.stack.pop() {
            while let Some(high) = p.left.high {
                if self.dst[high] != u {
                    break;
                }
                p.left.high = self.reference[high];
            }
            if p.left.high.is_none() {
                if let Some(low) = p.left.low {
                    self.reference[low] = p.right.low;
                    self.side[low] = -1;
                    p.left.low = None;
                }
            }
            while let Some(high) = p.right.high {
                if self.dst[high] != u {
                    break;
                }
                p.right.high = self.reference[high];
            }
            if p.right.high.is_none() {
                if let Some(low) = p.right.low {
                    self.reference[low] = p.left.low;
                    self.side[low] = -1;
                    p.right.low = None;
                }
            }
            self.stack.push(p);
        }
        if self.lowpt[e] < hu {
            let top = *self.stack.last().expect("return edge implies a conflict pair");
            let (hl, hr) = (top.left.high, top.right.high);
            self.reference[e] = match (hl, hr) {
                (Some(l), None) => Some(l),
                (Some(l), Some(r)) if self.lowpt[l] > self.lowpt[r] => Some(l),
                _ => hr,
            };
        }
    }

    fn sign(&mut self, e: usize) -> i64 {
        let mut dfs = vec![e];
        let mut old_ref: BTreeMap<usize, usize> = BTreeMap::new();
        while let Some(x) = dfs.pop() {
            if let Some(r) = self.reference[x] {
                dfs.push(x);
                dfs.push(r);
                old_ref.insert(x, r);
                self.reference[x] = None;
            } else if let Some(&r) = old_ref.get(&x) {
                self.side[x] *= self.side[r];
            }
        }
        self.side[e]
    }

    fn embed(&mut self) -> Vec<Vec<usize>> {
        let mut cw: Vec<Vec<usize>> = vec![Vec::new(); self.n];
        let mut leftmost: Vec<Option<usize>> = vec![None; self.n];
        for v in 0..self.n {
            for &e in &self.ordered[v] {
                cw[v].push(self.dst[e]);
            }
            leftmost[v] = cw[v].first().copied();
        }
        let pos = |l: &Vec<usize>, x: usize| l.iter().position(|&y| y == x).expect("reference neighbour");
        let mut left_ref = vec![usize::MAX; self.n];
        let mut right_ref = vec![usize::MAX; self.n];
        for r in self.roots.clone() {
            let mut dfs = vec![r];
            let mut ind = vec![0usize; self.n];
            while let Some(v) = dfs.pop() {
                while ind[v] < self.ordered[v].len() {
                    let ei = self.ordered[v][ind[v]];
                    ind[v] += 1;
                    let w = self.dst[ei];
                    if Some(ei) == self.parent_edge[w] {
                        // v becomes the leftmost neighbour of w
                        match leftmost[w] {
                            Some(lm) => {
                                let p = pos(&cw[w], lm);
                                cw[w].insert(p, v);
                            }
                            None => cw[w].push(v),
                        }
                        leftmost[w] = Some(v);
                        left_ref[v] = w;
                        right_ref[v] = w;
                        dfs.push(v);
                        dfs.push(w);
                        break;
                    } else if self.side[ei] == 1 {
                        let p = pos(&cw[w], right_ref[w]);
                        cw[w].insert(p + 1, v);
                    } else {
                        let lr = left_ref[w];
                        let p = pos(&cw[w], lr);
                        cw[w].insert(p, v);
                        if leftmost[w] == Some(lr) {
                            leftmost[w] = Some(v);
                        }
                        left_ref[w] = v;
                    }
                }
            }
        }
        cw
    }
}

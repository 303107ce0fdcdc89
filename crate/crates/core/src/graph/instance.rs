use std::collections::BTreeSet;

use super::{Graph, VertexId};
use crate::error::{Error, Result};

/// Hamiltonian cycle given as a cyclic vertex order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HamCycle(Vec<VertexId>);

impl HamCycle {
    /// Validates that `order` visits every vertex of `g` once and that
    /// consecutive vertices (cyclically) are adjacent.
    pub fn new(g: &Graph, order: Vec<VertexId>) -> Result<Self> {
        check_ham_order(g, &order).map_err(Error::Certification)?;
        Ok(Self(order))
    }

    pub fn order(&self) -> &[VertexId] {
        &self.0
    }

    pub fn into_order(self) -> Vec<VertexId> {
        self.0
    }

    /// Cycle edges as normalised pairs.
    pub fn edges(&self) -> Vec<(VertexId, VertexId)> {
        let n = self.0.len();
        (0..n).map(|i| super::edge(self.0[i], self.0[(i + 1) % n])).collect()
    }
}

pub(crate) fn check_ham_order(g: &Graph, order: &[VertexId]) -> std::result::Result<(), String> {
    if g.n() < 3 {
        return Err(format!("a Hamiltonian cycle needs at least 3 vertices, graph has {}", g.n()));
    }
    if order.len() != g.n() {
        return Err(format!("witness has {} vertices, graph has {}", order.len(), g.n()));
    }
    let set: BTreeSet<VertexId> = order.iter().copied().collect();
    if set.len() != order.len() {
        return Err("witness repeats a vertex".into());
    }
    if let Some(v) = order.iter().find(|v| !g.contains(**v)) {
        return Err(format!("witness vertex {v} is not in the graph"));
    }
    for i in 0..order.len() {
        let (a, b) = (order[i], order[(i + 1) % order.len()]);
        if !g.has_edge(a, b) {
            return Err(format!("witness step {a}-{b} is not an edge"));
        }
    }
    Ok(())
}

/// A Feedback Vertex Set instance: does `graph` have an FVS of size at most `k`?
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub graph: Graph,
    pub k: u64,
    pub witness: Option<HamCycle>,
}

impl Instance {
    pub fn new(graph: Graph, k: u64) -> Self {
        Self { graph, k, witness: None }
    }

    pub fn with_witness(mut self, order: Vec<VertexId>) -> Result<Self> {
        self.witness = Some(HamCycle::new(&self.graph, order)?);
        Ok(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn witness_validation() {
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let v = |i| VertexId(i);
        assert!(HamCycle::new(&g, vec![v(0), v(1), v(2), v(3)]).is_ok());
        assert!(HamCycle::new(&g, vec![v(0), v(2), v(1), v(3)]).is_err());
        assert!(HamCycle::new(&g, vec![v(0), v(1), v(2)]).is_err());
    }
}

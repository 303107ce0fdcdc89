//! Replayable reduction traces.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gadgets::{build_gadget, insert_gadget_in_place, Gadget, GadgetKind, Insertion};
use crate::graph::{Graph, VertexId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Op {
    /// Delete vertices of degree at most one.
    Strip,
    /// Subdivide one edge.
    Subdivide,
    /// Insert a gadget at two attachment vertices.
    Insert,
    /// Add a disjoint copy of the whole graph; the budget doubles.
    Copy,
    /// Join with a clique on three times the vertex count and add `x`, `y`.
    Lift,
}

/// One ledger entry.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Step {
    pub op: Op,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gadget: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub attach: Vec<VertexId>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub subdivided: Vec<[VertexId; 2]>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub created: Vec<VertexId>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub removed: Vec<VertexId>,
    pub k_delta: u64,
}

impl Step {
    fn bare(op: Op) -> Self {
        Self {
            op,
            gadget: None,
            attach: Vec::new(),
            subdivided: Vec::new(),
            created: Vec::new(),
            removed: Vec::new(),
            k_delta: 0,
        }
    }
}

/// Class flags of a stage output, each re-verified before emission.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certified {
    pub regular: Option<usize>,
    pub planar: bool,
    pub witness: bool,
    pub even: bool,
    /// `p` for which the Ore-type degree condition was checked.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ordered: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StageRecord {
    pub name: String,
    pub steps: Vec<Step>,
    pub k_after: u64,
    pub n_after: usize,
    pub m_after: usize,
    pub certified: Certified,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceInput {
    pub n: usize,
    pub m: usize,
    pub k: u64,
    /// Input edges on vertex ids `0..n`.
    pub edges: Vec<[u32; 2]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceOutput {
    pub n: usize,
    pub m: usize,
    pub k: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionTrace {
    pub input: TraceInput,
    pub stages: Vec<StageRecord>,
    pub output: TraceOutput,
}

impl ReductionTrace {
    pub fn k_delta_total(&self) -> u64 {
        self.stages.iter().flat_map(|s| &s.steps).map(|s| s.k_delta).sum()
    }
}

/// Gadgets built once per run.
#[derive(Default)]
pub(crate) struct GadgetCache {
    built: BTreeMap<GadgetKind, Gadget>,
}

impl GadgetCache {
    pub(crate) fn get(&mut self, kind: GadgetKind) -> Result<&Gadget> {
        if !self.built.contains_key(&kind) {
            self.built.insert(kind, build_gadget(kind)?);
        }
        Ok(&self.built[&kind])
    }
}

/// Performs graph edits and records each one as a [`Step`].
pub(crate) struct Recorder {
    pub g: Graph,
    pub k: u64,
    pub steps: Vec<Step>,
    pub gadgets: GadgetCache,
}

impl Recorder {
    pub(crate) fn new(g: Graph, k: u64) -> Self {
        Self { g, k, steps: Vec::new(), gadgets: GadgetCache::default() }
    }

    pub(crate) fn strip(&mut self) -> Vec<VertexId> {
        let (g, removed) = self.g.strip_low_degree();
        if !removed.is_empty() {
            self.g = g;
            self.steps.push(Step { removed: removed.clone(), ..Step::bare(Op::Strip) });
        }
        removed
    }

    pub(crate) fn subdivide(&mut self, a: VertexId, b: VertexId) -> Result<VertexId> {
        let z = self.g.subdivide_in_place(a, b)?;
        self.steps.push(Step { subdivided: vec![[a, b]], created: vec![z], ..Step::bare(Op::Subdivide) });
        Ok(z)
    }

    pub(crate) fn insert(&mut self, kind: GadgetKind, u: VertexId, v: VertexId) -> Result<(Insertion, Gadget)> {
        let gadget = self.gadgets.get(kind)?.clone();
        let ins = insert_gadget_in_place(&mut self.g, &gadget, u, v)?;
        self.k += gadget.k_delta;
        self.steps.push(Step {
            gadget: Some(kind.to_string()),
            attach: vec![u, v],
            created: ins.created.clone(),
            k_delta: gadget.k_delta,
            ..Step::bare(Op::Insert)
        });
        Ok((ins, gadget))
    }

    pub(crate) fn copy(&mut self) -> BTreeMap<VertexId, VertexId> {
        let verts: Vec<VertexId> = self.g.vertices().collect();
        let map = self.g.copy_disjoint(&verts);
        let k_delta = self.k;
        self.k += k_delta;
        self.steps.push(Step { created: map.values().copied().collect(), k_delta, ..Step::bare(Op::Copy) });
        map
    }

    /// Returns the clique vertices followed by `x` and `y`.
    pub(crate) fn lift(&mut self) -> Vec<VertexId> {
        let created = lift_in_place(&mut self.g);
        let k_delta = (created.len() as u64 - 2) / 3 * 3;
        self.k += k_delta;
        self.steps.push(Step { created: created.clone(), k_delta, ..Step::bare(Op::Lift) });
        created
    }

    pub(crate) fn finish(&mut self, name: &str, certified: Certified) -> StageRecord {
        StageRecord {
            name: name.to_string(),
            steps: std::mem::take(&mut self.steps),
            k_after: self.k,
            n_after: self.g.n(),
            m_after: self.g.m(),
            certified,
        }
    }
}

fn lift_in_place(g: &mut Graph) -> Vec<VertexId> {
    let base: Vec<VertexId> = g.vertices().collect();
    let h: Vec<VertexId> = (0..3 * base.len()).map(|_| g.add_vertex()).collect();
    let x = g.add_vertex();
    let y = g.add_vertex();
    for (i, &a) in h.iter().enumerate() {
        for &b in &h[i + 1..] {
            g.add_edge(a, b).unwrap();
        }
        for &v in &base {
            g.add_edge(a, v).unwrap();
        }
        g.add_edge(a, x).unwrap();
        g.add_edge(a, y).unwrap();
    }
    g.add_edge(x, y).unwrap();
    let mut out = h;
    out.push(x);
    out.push(y);
    out
}

fn mismatch(stage: &str, i: usize, what: impl std::fmt::Display) -> Error {
    Error::Certification(format!("stage {stage}, step {i}: {what}"))
}

/// Applies one step to `(g, k)`, checking ids and the budget increase.
pub(crate) fn apply_step(
    g: &mut Graph,
    k: &mut u64,
    step: &Step,
    gadgets: &mut GadgetCache,
    stage: &str,
    i: usize,
) -> Result<()> {
    let bad = |what: String| mismatch(stage, i, what);
    match step.op {
        Op::Strip => {
            let (h, removed) = g.strip_low_degree();
            if removed != step.removed {
                return Err(bad("strip removed a different vertex list".into()));
            }
            *g = h;
            if step.k_delta != 0 {
                return Err(bad(format!("strip must not change k, got {}", step.k_delta)));
            }
        }
        Op::Subdivide => {
            let [[a, b]] = step.subdivided[..] else {
                return Err(bad("subdivide needs exactly one edge".into()));
            };
            let z = g.subdivide_in_place(a, b).map_err(|e| bad(e.to_string()))?;
            if step.created != [z] {
                return Err(bad(format!("subdivision created {z}, trace says {:?}", step.created)));
            }
            if step.k_delta != 0 {
                return Err(bad(format!("subdivision must not change k, got {}", step.k_delta)));
            }
        }
        Op::Insert => {
            let name = step.gadget.as_deref().ok_or_else(|| bad("insert without gadget".into()))?;
            let kind: GadgetKind = name.parse().map_err(|e: Error| bad(e.to_string()))?;
            let [u, v] = step.attach[..] else {
                return Err(bad("insert needs two attachment vertices".into()));
            };
            let gadget = gadgets.get(kind).map_err(|e| bad(e.to_string()))?;
            if step.k_delta != gadget.k_delta {
                return Err(bad(format!("{kind} adds {} to k, trace says {}", gadget.k_delta, step.k_delta)));
            }
            let ins = insert_gadget_in_place(g, gadget, u, v).map_err(|e| bad(e.to_string()))?;
            if ins.created != step.created {
                return Err(bad("insertion created different vertex ids".into()));
            }
        }
        Op::Copy => {
            if step.k_delta != *k {
                return Err(bad(format!("copy doubles k and must add {k}, trace says {}", step.k_delta)));
            }
            let verts: Vec<VertexId> = g.vertices().collect();
            let map = g.copy_disjoint(&verts);
            if map.values().copied().collect::<Vec<_>>() != step.created {
                return Err(bad("copy created different vertex ids".into()));
            }
        }
        Op::Lift => {
            let want = 3 * g.n() as u64;
            if step.k_delta != want {
                return Err(bad(format!("lift adds {want} to k, trace says {}", step.k_delta)));
            }
            let created = lift_in_place(g);
            if created != step.created {
                return Err(bad("lift created different vertex ids".into()));
            }
        }
    }
    *k += step.k_delta;
    Ok(())
}

/// Rebuilds the trace's input graph.
pub fn input_graph(t: &TraceInput) -> Result<Graph> {
    if t.edges.len() != t.m {
        return Err(Error::Certification(format!("trace input lists {} edges, header says {}", t.edges.len(), t.m)));
    }
    let edges: Vec<(u32, u32)> = t.edges.iter().map(|e| (e[0], e[1])).collect();
    Graph::from_edges(t.n, &edges)
}

/// Graph and budget after each stage of the trace, replayed from its input.
pub fn replay(trace: &ReductionTrace) -> Result<Vec<(Graph, u64)>> {
    let mut g = input_graph(&trace.input)?;
    let mut k = trace.input.k;
    let mut gadgets = GadgetCache::default();
    let mut out = Vec::new();
    for stage in &trace.stages {
        for (i, step) in stage.steps.iter().enumerate() {
            apply_step(&mut g, &mut k, step, &mut gadgets, &stage.name, i)?;
        }
        if k != stage.k_after {
            return Err(Error::Certification(format!(
                "stage {}: replayed k is {k}, trace says {}",
                stage.name, stage.k_after
            )));
        }
        if g.n() != stage.n_after || g.m() != stage.m_after {
            return Err(Error::Certification(format!(
                "stage {}: replayed size is ({}, {}), trace says ({}, {})",
                stage.name,
                g.n(),
                g.m(),
                stage.n_after,
                stage.m_after
            )));
        }
        out.push((g.clone(), k));
    }
    Ok(out)
}

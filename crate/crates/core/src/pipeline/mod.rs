//! The staged reduction compiler and trace verification.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{HamCycle, Instance};
use crate::oracle::hamilton::verify_witness;
use crate::oracle::planarity::is_planar;

mod stages;
pub mod trace;
mod two_factor;

pub use stages::{
    certify, eliminate_degree_two, evenize, five_regularize, ham_ordered_lift, hamiltonize, hamiltonize_with_report,
    merge_step, p_regularize, pair_degree_three, pair_degree_three_with_report, scan_order, strip, ChainSummary,
    Hamiltonized, PairingReport, StageResult,
};
pub use trace::{input_graph, replay, Certified, Op, ReductionTrace, StageRecord, Step, TraceInput, TraceOutput};
pub use two_factor::{compute_two_factor, MergeCase, TwoFactor};

/// Target graph class of a reduction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Target {
    FourRegPlanar,
    FourRegPlanarHam,
    FiveRegPlanarHam,
    /// `p`-regular Hamiltonian, `p >= 4`.
    PRegHam(usize),
    /// `p`-Hamiltonian-ordered, `p >= 3`.
    HamOrdered(usize),
}

impl FromStr for Target {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Precondition(format!("unknown target {s:?}"));
        let param = |rest: &str, min: usize| -> Result<usize> {
            let p: usize = rest.parse().map_err(|_| bad())?;
            if p < min {
                return Err(Error::Precondition(format!("target {s:?} needs p >= {min}")));
            }
            Ok(p)
        };
        match s {
            "4reg-planar" => Ok(Target::FourRegPlanar),
            "4reg-planar-ham" => Ok(Target::FourRegPlanarHam),
            "5reg-planar-ham" => Ok(Target::FiveRegPlanarHam),
            _ => {
                if let Some(rest) = s.strip_prefix("preg-ham:") {
                    Ok(Target::PRegHam(param(rest, 4)?))
                } else if let Some(rest) = s.strip_prefix("ham-ordered:") {
                    Ok(Target::HamOrdered(param(rest, 3)?))
                } else {
                    Err(bad())
                }
            }
        }
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Target::FourRegPlanar => write!(f, "4reg-planar"),
            Target::FourRegPlanarHam => write!(f, "4reg-planar-ham"),
            Target::FiveRegPlanarHam => write!(f, "5reg-planar-ham"),
            Target::PRegHam(p) => write!(f, "preg-ham:{p}"),
            Target::HamOrdered(p) => write!(f, "ham-ordered:{p}"),
        }
    }
}

/// Output size against the input order, for the quadratic size bound.
#[derive(Clone, Debug, Serialize)]
pub struct SizeReport {
    pub input_n: usize,
    /// Order and size after the last planar stage.
    pub planar_n: usize,
    pub planar_m: usize,
    /// `planar_n / input_n²` and `planar_m / input_n²`.
    pub vertex_constant: f64,
    pub edge_constant: f64,
}

/// Everything a pipeline run produces.
#[derive(Clone, Debug)]
pub struct PipelineResult {
    pub instance: Instance,
    pub trace: ReductionTrace,
    pub size: SizeReport,
    pub pairing: Option<PairingReport>,
    pub merges: Vec<MergeCase>,
}

/// Relabels an instance (graph and witness) onto ids `0..n`, so that a
/// trace can rebuild it.
pub fn compact_instance(inst: &Instance) -> Result<Instance> {
    let (g, map) = inst.graph.compact();
    let mut out = Instance::new(g, inst.k);
    if let Some(w) = &inst.witness {
        out.witness = Some(HamCycle::new(&out.graph, w.order().iter().map(|v| map[v]).collect())?);
    }
    Ok(out)
}

struct Run {
    cur: Instance,
    stages: Vec<StageRecord>,
    planar: Option<(usize, usize)>,
}

impl Run {
    fn push(&mut self, r: StageResult) {
        if r.record.certified.planar {
            self.planar = Some((r.instance.graph.n(), r.instance.graph.m()));
        }
        self.cur = r.instance;
        self.stages.push(r.record);
    }
}

/// Runs the stages needed for `target`, recording every step.
pub fn run_pipeline(inst: &Instance, target: Target) -> Result<PipelineResult> {
    let input = compact_instance(inst)?;
    let mut run = Run { cur: input.clone(), stages: Vec::new(), planar: None };
    let mut pairing = None;
    let mut merges = Vec::new();
    let chain_to = match target {
        Target::FourRegPlanar => Some(0),
        Target::FourRegPlanarHam | Target::PRegHam(4) => Some(1),
        Target::FiveRegPlanarHam | Target::PRegHam(_) => Some(2),
        Target::HamOrdered(_) if input.witness.is_some() => None,
        Target::HamOrdered(_) => Some(1),
    };
    if let Some(depth) = chain_to {
        let g = &input.graph;
        if !is_planar(g) || g.max_degree() > 4 {
            let msg = if input.witness.is_none() && matches!(target, Target::HamOrdered(_)) {
                "target needs a Hamiltonian witness, or a planar input of maximum degree 4"
            } else {
                "target needs a planar input of maximum degree 4"
            };
            return Err(Error::Precondition(msg.into()));
        }
        run.push(strip(&run.cur)?);
        if run.cur.graph.is_empty() {
            return Err(Error::Precondition("nothing remains after stripping; the optimum is 0".into()));
        }
        run.push(eliminate_degree_two(&run.cur)?);
        let (r, report) = pair_degree_three_with_report(&run.cur)?;
        pairing = report;
        run.push(r);
        if depth >= 1 {
            let h = hamiltonize_with_report(&run.cur)?;
            merges = h.merges;
            run.push(h.result);
        }
        if depth >= 2 {
            run.push(evenize(&run.cur)?);
            run.push(five_regularize(&run.cur)?);
        }
    }
    match target {
        Target::PRegHam(p) if p > 5 => {
            for r in p_regularize(&run.cur, p)? {
                run.push(r);
            }
        }
        Target::HamOrdered(p) => {
            for r in ham_ordered_lift(&run.cur, p)? {
                run.push(r);
            }
        }
        _ => {}
    }
    let input_n = input.graph.n();
    let (planar_n, planar_m) = run.planar.unwrap_or((0, 0));
    let sq = (input_n * input_n).max(1) as f64;
    let size = SizeReport {
        input_n,
        planar_n,
        planar_m,
        vertex_constant: planar_n as f64 / sq,
        edge_constant: planar_m as f64 / sq,
    };
    let trace = ReductionTrace {
        input: TraceInput {
            n: input.graph.n(),
            m: input.graph.m(),
            k: input.k,
            edges: input.graph.edges().map(|(a, b)| [a.0, b.0]).collect(),
        },
        stages: run.stages,
        output: TraceOutput { n: run.cur.graph.n(), m: run.cur.graph.m(), k: run.cur.k },
    };
    Ok(PipelineResult { instance: run.cur, trace, size, pairing, merges })
}

/// What [`verify_trace`] checked.
#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub stages: usize,
    pub steps: usize,
    pub k: u64,
    pub n: usize,
    pub m: usize,
    pub witness_checked: bool,
}

/// Replays `trace`, re-certifies each stage's flags and compares the result
/// with `output` (which uses the compact numbering the writer emits).
/// `input`, if given, must equal the trace's embedded input.
pub fn verify_trace(trace: &ReductionTrace, output: &Instance, input: Option<&Instance>) -> Result<VerifyReport> {
    let fail = |m: String| Err(Error::Certification(m));
    if let Some(inp) = input {
        let (g, _) = inp.graph.compact();
        if g != input_graph(&trace.input)? || inp.k != trace.input.k {
            return fail("input graph or budget differs from the trace".into());
        }
    }
    let states = replay(trace)?;
    let (mut last, mut k) = (input_graph(&trace.input)?, trace.input.k);
    for (stage, (g, kk)) in trace.stages.iter().zip(&states) {
        let c = &stage.certified;
        let claims = Certified { witness: false, ..c.clone() };
        certify(g, None, claims).map_err(|e| Error::Certification(format!("stage {}: {e}", stage.name)))?;
        last = g.clone();
        k = *kk;
    }
    if trace.output.n != last.n() || trace.output.m != last.m() || trace.output.k != k {
        return fail("trace output header disagrees with the replay".into());
    }
    let (compact, _) = last.compact();
    if compact != output.graph {
        return fail("output graph differs from the replayed graph".into());
    }
    if output.k != k {
        return fail(format!("output budget {} differs from the replayed {k}", output.k));
    }
    let want_witness = trace.stages.last().is_some_and(|s| s.certified.witness);
    if want_witness {
        match &output.witness {
            Some(w) if verify_witness(&output.graph, w.order()) => {}
            _ => return fail("final stage claims a Hamiltonian witness but none verifies".into()),
        }
    }
    Ok(VerifyReport {
        stages: trace.stages.len(),
        steps: trace.stages.iter().map(|s| s.steps.len()).sum(),
        k,
        n: last.n(),
        m: last.m(),
        witness_checked: want_witness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{antiprism, cycle, grid, random_planar_max4};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn check(g: crate::graph::Graph, target: Target) -> PipelineResult {
        let r = run_pipeline(&Instance::new(g, 1), target).unwrap();
        let out = compact_instance(&r.instance).unwrap();
        verify_trace(&r.trace, &out, None).unwrap();
        assert_eq!(r.trace.k_delta_total() + 1, r.instance.k);
        r
    }

    #[test]
    fn targets_parse() {
        for s in ["4reg-planar", "4reg-planar-ham", "5reg-planar-ham", "preg-ham:7", "ham-ordered:5"] {
            assert_eq!(s.parse::<Target>().unwrap().to_string(), s);
        }
        assert!("preg-ham:3".parse::<Target>().is_err());
        assert!("ham-ordered:x".parse::<Target>().is_err());
    }

    #[test]
    fn c3_chain() {
        let r = check(cycle(3), Target::FourRegPlanar);
        assert_eq!((r.instance.graph.n(), r.instance.k), (24, 10));
        let r = check(cycle(3), Target::FiveRegPlanarHam);
        assert!(r.instance.graph.is_regular(5));
        assert!(r.instance.witness.is_some());
    }

    #[test]
    fn planar_chain_on_fixtures() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for g in [cycle(4), grid(3, 3), antiprism(4), random_planar_max4(3, 4, &mut rng)] {
            let r = check(g, Target::FourRegPlanarHam);
            assert!(r.instance.graph.is_regular(4));
        }
    }

    #[test]
    fn higher_targets() {
        let r = check(cycle(3), Target::PRegHam(6));
        assert!(r.instance.graph.is_regular(6));
        let inst = Instance::new(cycle(4), 1).with_witness((0..4).map(crate::graph::VertexId).collect()).unwrap();
        let r = run_pipeline(&inst, Target::HamOrdered(5)).unwrap();
        assert_eq!(r.trace.stages.len(), 2);
        verify_trace(&r.trace, &compact_instance(&r.instance).unwrap(), Some(&inst)).unwrap();
    }
}

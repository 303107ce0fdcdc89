//! The individual reduction stages.

use serde::Serialize;

use super::trace::{Certified, Recorder, StageRecord};
use super::two_factor::{compute_two_factor, merge_in_place, MergeCase, TwoFactor};
use crate::error::{Error, Result};
use crate::gadgets::GadgetKind;
use crate::geometry::route::Router;
use crate::geometry::{
    dissolve_crossings, find_crossings, grid_embed_graph, Dissolved, Element, GridEmbedding, RoutedConnection,
};
use crate::graph::{edge, Graph, HamCycle, Instance, PlaneGraph, VertexId};
use crate::oracle::hamilton::{check_ore_condition, verify_witness};
use crate::oracle::planarity::is_planar;

/// Output of one stage: the new instance and its ledger entry.
#[derive(Clone, Debug)]
pub struct StageResult {
    pub instance: Instance,
    pub record: StageRecord,
}

/// Re-checks every claimed flag on `g`.
pub fn certify(g: &Graph, witness: Option<&[VertexId]>, claims: Certified) -> Result<Certified> {
    let fail = |m: String| Err(Error::Certification(m));
    if let Some(r) = claims.regular {
        if !g.is_regular(r) {
            return fail(format!("output is not {r}-regular"));
        }
    }
    if claims.planar {
        if !is_planar(g) {
            return fail("output is not planar".into());
        }
        if g.n() > 0 && g.is_connected() && !PlaneGraph::embed(g.clone())?.euler_ok() {
            return fail("embedding fails the Euler face audit".into());
        }
    }
    if claims.witness && !witness.is_some_and(|w| verify_witness(g, w)) {
        return fail("Hamiltonian witness does not verify".into());
    }
    if claims.even && g.n() % 2 != 0 {
        return fail(format!("output has odd order {}", g.n()));
    }
    if let Some(p) = claims.ordered {
        if !check_ore_condition(g, p) {
            return fail(format!("degree condition for p = {p} fails"));
        }
    }
    Ok(claims)
}

fn finish(mut rec: Recorder, name: &str, witness: Option<Vec<VertexId>>, claims: Certified) -> Result<StageResult> {
    let certified = certify(&rec.g, witness.as_deref(), claims)?;
    let record = rec.finish(name, certified);
    let mut instance = Instance::new(rec.g, rec.k);
    if let Some(w) = witness {
        instance.witness = Some(HamCycle::new(&instance.graph, w)?);
    }
    Ok(StageResult { instance, record })
}

fn planar_claim(regular: Option<usize>) -> Certified {
    Certified { regular, planar: true, ..Certified::default() }
}

fn require_planar(g: &Graph) -> Result<()> {
    if is_planar(g) {
        Ok(())
    } else {
        Err(Error::NotPlanar)
    }
}

fn require_connected(g: &Graph) -> Result<()> {
    let comps = g.components();
    if comps.len() > 1 {
        return Err(Error::PreconditionAt { vertex: comps[1][0], msg: "graph must be connected".into() });
    }
    Ok(())
}

fn require_degrees(g: &Graph, lo: usize, hi: usize) -> Result<()> {
    match g.vertices().find(|&v| g.degree(v) < lo || g.degree(v) > hi) {
        Some(v) => Err(Error::PreconditionAt {
            vertex: v,
            msg: format!("degree {} outside {lo}..={hi}", g.degree(v)),
        }),
        None => Ok(()),
    }
}

fn require_witness(inst: &Instance) -> Result<Vec<VertexId>> {
    let w = inst.witness.as_ref().ok_or_else(|| Error::Precondition("Hamiltonian witness required".into()))?;
    if !verify_witness(&inst.graph, w.order()) {
        return Err(Error::Precondition("Hamiltonian witness does not verify".into()));
    }
    Ok(w.order().to_vec())
}

/// Removes vertices of degree at most one, repeatedly. The witness, if any,
/// survives only when nothing was removed.
pub fn strip(inst: &Instance) -> Result<StageResult> {
    let mut rec = Recorder::new(inst.graph.clone(), inst.k);
    let removed = rec.strip();
    let witness = if removed.is_empty() { inst.witness.as_ref().map(|w| w.order().to_vec()) } else { None };
    let claims = Certified { witness: witness.is_some(), planar: is_planar(&inst.graph), ..Certified::default() };
    finish(rec, "strip", witness, claims)
}

/// R-insertion at `(v, v)` for every degree-two vertex.
pub fn eliminate_degree_two(inst: &Instance) -> Result<StageResult> {
    let g = &inst.graph;
    require_planar(g)?;
    require_connected(g)?;
    require_degrees(g, 2, 4)?;
    let mut rec = Recorder::new(g.clone(), inst.k);
    let twos: Vec<VertexId> = g.vertices().filter(|&v| g.degree(v) == 2).collect();
    for v in twos {
        rec.insert(GadgetKind::R, v, v)?;
    }
    if let Some(v) = rec.g.vertices().find(|&v| !(3..=4).contains(&rec.g.degree(v))) {
        return Err(Error::Certification(format!("vertex {v} has degree {} after elimination", rec.g.degree(v))));
    }
    finish(rec, "eliminate_degree_two", None, planar_claim(None))
}

/// One routed connection and what dissolving it produced.
#[derive(Clone, Debug, Serialize)]
pub struct ChainSummary {
    pub from: VertexId,
    pub to: VertexId,
    pub crossings: usize,
    pub fragments: usize,
}

/// Geometry produced while pairing degree-three vertices.
#[derive(Clone, Debug)]
pub struct PairingReport {
    pub grid: GridEmbedding,
    pub routes: Vec<RoutedConnection>,
    pub dissolved: Dissolved,
    pub chains: Vec<ChainSummary>,
}

/// Degree-three vertices in scan order: by column, then by row.
pub fn scan_order(grid: &GridEmbedding, g: &Graph) -> Vec<VertexId> {
    let mut v: Vec<VertexId> = g.vertices().filter(|&v| g.degree(v) == 3).collect();
    v.sort_by_key(|w| (grid.coords[w], *w));
    v
}

/// Pairs consecutive degree-three vertices, routes each pair through the grid
/// drawing, dissolves the crossings and replaces every fragment by an
/// R-insertion.
pub fn pair_degree_three(inst: &Instance) -> Result<StageResult> {
    pair_degree_three_with_report(inst).map(|(r, _)| r)
}

pub fn pair_degree_three_with_report(inst: &Instance) -> Result<(StageResult, Option<PairingReport>)> {
    let g = &inst.graph;
    require_planar(g)?;
    require_degrees(g, 3, 4)?;
    let threes = g.vertices().filter(|&v| g.degree(v) == 3).count();
    if threes % 2 != 0 {
        return Err(Error::Handshake);
    }
    let mut rec = Recorder::new(g.clone(), inst.k);
    if threes == 0 {
        return Ok((finish(rec, "pair_degree_three", None, planar_claim(Some(4)))?, None));
    }
    let grid = grid_embed_graph(g)?;
    let order = scan_order(&grid, g);
    let mut router = Router::new(grid.drawing());
    for pair in order.chunks(2) {
        router.add(pair[0], pair[1])?;
    }
    let drawing = router.into_drawing();
    let crossings = find_crossings(&drawing)?;
    for c in &crossings {
        match (c.a, c.b) {
            (Element::Route(_), Element::Route(_)) => {
                return Err(Error::Certification("two routed connections cross".into()));
            }
            (Element::Edge(..), Element::Edge(..)) => {
                return Err(Error::Certification("grid drawing has crossing edges".into()));
            }
            _ => {}
        }
    }
    let dissolved = dissolve_crossings(&drawing, &crossings)?;
    if !dissolved.crossing_free() {
        return Err(Error::Certification("dissolved drawing still has crossings".into()));
    }
    for ((u, v), made) in &dissolved.subdivisions {
        let mut prev = *u;
        for &d in made {
            let z = rec.subdivide(prev, *v)?;
            if z != d {
                return Err(Error::Certification(format!("dissolution vertex {d} replayed as {z}")));
            }
            prev = z;
        }
    }
    let mut chains = Vec::new();
    for (route, frags) in drawing.routes.iter().zip(&dissolved.fragments) {
        for f in frags {
            rec.insert(GadgetKind::R, f.from, f.to)?;
        }
        chains.push(ChainSummary {
            from: route.from,
            to: route.to,
            crossings: frags.len() - 1,
            fragments: frags.len(),
        });
    }
    let result = finish(rec, "pair_degree_three", None, planar_claim(Some(4)))?;
    let report = PairingReport { grid, routes: drawing.routes.clone(), dissolved, chains };
    Ok((result, Some(report)))
}

/// Merges two cycles of `tf`; see [`MergeCase`] for the budget increase.
pub fn merge_step(inst: &Instance, tf: &TwoFactor) -> Result<(StageResult, TwoFactor, MergeCase)> {
    tf.validate(&inst.graph)?;
    let mut rec = Recorder::new(inst.graph.clone(), inst.k);
    let (next, case) = merge_in_place(&mut rec, tf)?;
    let witness = (next.len() == 1).then(|| next.cycles[0].clone());
    let regular = inst.graph.is_regular(4).then_some(4);
    let claims = Certified { witness: witness.is_some(), ..planar_claim(regular) };
    Ok((finish(rec, "merge_step", witness, claims)?, next, case))
}

/// Result of [`hamiltonize`] with the merge cases used, in order.
#[derive(Clone, Debug)]
pub struct Hamiltonized {
    pub result: StageResult,
    pub initial_cycles: usize,
    pub merges: Vec<MergeCase>,
}

/// Merges the cycles of a 2-factor until one Hamiltonian cycle remains.
pub fn hamiltonize(inst: &Instance) -> Result<StageResult> {
    hamiltonize_with_report(inst).map(|h| h.result)
}

pub fn hamiltonize_with_report(inst: &Instance) -> Result<Hamiltonized> {
    let g = &inst.graph;
    require_planar(g)?;
    let mut tf = compute_two_factor(g)?;
    let initial_cycles = tf.len();
    let mut rec = Recorder::new(g.clone(), inst.k);
    let mut merges = Vec::new();
    while tf.len() > 1 {
        let (next, case) = merge_in_place(&mut rec, &tf)?;
        if next.len() + 1 != tf.len() {
            return Err(Error::Certification("merge did not reduce the cycle count by one".into()));
        }
        tf = next;
        merges.push(case);
    }
    if merges.len() > g.n() / 3 {
        return Err(Error::Certification(format!("{} merges for {} vertices", merges.len(), g.n())));
    }
    let witness = tf.cycles.into_iter().next();
    let claims = Certified { witness: true, ..planar_claim(Some(4)) };
    let result = finish(rec, "hamiltonize", witness, claims)?;
    Ok(Hamiltonized { result, initial_cycles, merges })
}

/// `cycle` as a path from `u` to its neighbour `a` on the cycle, not using
/// the edge `ua`.
pub(crate) fn path_around(cycle: &[VertexId], u: VertexId, a: VertexId) -> Vec<VertexId> {
    let n = cycle.len();
    let i = cycle.iter().position(|&x| x == u).unwrap();
    if cycle[(i + 1) % n] == a {
        (0..n).map(|s| cycle[(i + n - s) % n]).collect()
    } else {
        (0..n).map(|s| cycle[(i + s) % n]).collect()
    }
}

/// Doubles an odd-order instance into an even one: `(G*, 2k + 8)` with
/// `|V*| = 2|V| + 24`. Even orders pass through unchanged.
pub fn evenize(inst: &Instance) -> Result<StageResult> {
    let c = require_witness(inst)?;
    let g = &inst.graph;
    let mut rec = Recorder::new(g.clone(), inst.k);
    let regular = g.is_regular(4).then_some(4);
    let planar = is_planar(g);
    let claims = Certified { regular, planar, witness: true, even: true, ordered: None };
    if g.n() % 2 == 0 {
        return finish(rec, "evenize", Some(c), claims);
    }
    let n = c.len();
    let (a, b) = (0..n).map(|i| edge(c[i], c[(i + 1) % n])).min().unwrap();
    let map = rec.copy();
    let (a2, b2) = (map[&a], map[&b]);
    let v = rec.subdivide(a, b)?;
    let w = rec.subdivide(v, b)?;
    let v2 = rec.subdivide(a2, b2)?;
    let w2 = rec.subdivide(v2, b2)?;
    let (ins1, l1) = rec.insert(GadgetKind::L, v, v2)?;
    let (ins2, l2) = rec.insert(GadgetKind::L, w, w2)?;
    let copy: Vec<VertexId> = c.iter().map(|x| map[x]).collect();
    let mut out = path_around(&c, b, a);
    out.extend(ins1.path(&l1));
    out.extend(path_around(&copy, a2, b2));
    let mut back = ins2.path(&l2);
    back.reverse();
    out.extend(back);
    finish(rec, "evenize", Some(out), claims)
}

fn insert_along_witness(rec: &mut Recorder, c: &[VertexId], kind: GadgetKind) -> Result<Vec<VertexId>> {
    let mut out = Vec::new();
    for pair in c.chunks(2) {
        let (ins, gadget) = rec.insert(kind, pair[0], pair[1])?;
        out.extend(ins.path(&gadget));
    }
    Ok(out)
}

/// D-insertion at every other witness edge: 4-regular to 5-regular,
/// `k + 3n`, `7n` vertices.
pub fn five_regularize(inst: &Instance) -> Result<StageResult> {
    let c = require_witness(inst)?;
    let g = &inst.graph;
    if g.n() % 2 != 0 {
        return Err(Error::EvenizeFirst);
    }
    require_degrees(g, 4, 4)?;
    let planar = is_planar(g);
    let mut rec = Recorder::new(g.clone(), inst.k);
    let out = insert_along_witness(&mut rec, &c, GadgetKind::D)?;
    let claims = Certified { regular: Some(5), planar, witness: true, even: true, ordered: None };
    finish(rec, "five_regularize", Some(out), claims)
}

/// Y_r rounds from the current regularity `r` up to `target_p`, one stage
/// per round.
pub fn p_regularize(inst: &Instance, target_p: usize) -> Result<Vec<StageResult>> {
    require_witness(inst)?;
    let r = inst
        .graph
        .check_regular()
        .ok_or_else(|| Error::Precondition("regular graph required".into()))?;
    if r < 4 || r > target_p {
        return Err(Error::Precondition(format!("regularity {r} cannot be raised to {target_p}")));
    }
    if inst.graph.n() % 2 != 0 {
        return Err(Error::EvenizeFirst);
    }
    let mut cur = inst.clone();
    let mut out = Vec::new();
    for r in r..target_p {
        let c = require_witness(&cur)?;
        let mut rec = Recorder::new(cur.graph.clone(), cur.k);
        let w = insert_along_witness(&mut rec, &c, GadgetKind::Y(r))?;
        let claims = Certified { regular: Some(r + 1), planar: false, witness: true, even: true, ordered: None };
        let res = finish(rec, "p_regularize", Some(w), claims)?;
        cur = res.instance.clone();
        out.push(res);
    }
    Ok(out)
}

/// Lifts from `start_p`-Hamiltonian-ordered to `target_p`: one join with
/// `K_{3n}` plus two vertices per step, `k + 3n`, `4n + 2` vertices.
pub fn ham_ordered_lift(inst: &Instance, target_p: usize) -> Result<Vec<StageResult>> {
    let mut c = require_witness(inst)?;
    if target_p < 3 {
        return Err(Error::Precondition(format!("p must be at least 3, got {target_p}")));
    }
    let mut cur = inst.clone();
    let mut out = Vec::new();
    for p in 3..target_p {
        let mut rec = Recorder::new(cur.graph.clone(), cur.k);
        let created = rec.lift();
        let (h, xy) = created.split_at(created.len() - 2);
        let mut w = c.clone();
        w.push(h[0]);
        w.extend(xy);
        w.extend(&h[1..]);
        let claims = Certified { witness: true, ordered: Some(p + 1), ..Certified::default() };
        let res = finish(rec, "ham_ordered_lift", Some(w.clone()), claims)?;
        cur = res.instance.clone();
        c = w;
        out.push(res);
    }
    Ok(out)
}

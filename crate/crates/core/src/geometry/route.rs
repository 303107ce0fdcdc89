//! Routed connections between grid vertices, exact crossing detection and
//! dissolution of crossings into new vertices.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::{rat, segment_meet, slope, Meet, Point};
use crate::error::{Error, Result};
use crate::graph::{edge, Edge, Graph, VertexId};

/// A polyline from `from` to `to` built for a fixed epsilon.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RoutedConnection {
    pub from: VertexId,
    pub to: VertexId,
    #[serde(serialize_with = "ser_rat")]
    pub epsilon: BigRational,
    pub waypoints: Vec<Point>,
}

fn ser_rat<S: serde::Serializer>(r: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&super::fraction(r))
}

impl RoutedConnection {
    pub fn segments(&self) -> impl Iterator<Item = (&Point, &Point)> {
        self.waypoints.windows(2).map(|w| (&w[0], &w[1]))
    }
}

/// Graph edges drawn straight plus routed polylines.
#[derive(Clone, Debug)]
pub struct Drawing {
    pub graph: Graph,
    pub coords: BTreeMap<VertexId, Point>,
    pub routes: Vec<RoutedConnection>,
}

impl Drawing {
    pub fn new(graph: Graph, coords: BTreeMap<VertexId, Point>) -> Self {
        Self { graph, coords, routes: Vec::new() }
    }

    pub fn vertices_distinct(&self) -> bool {
        let set: BTreeSet<&Point> = self.coords.values().collect();
        set.len() == self.coords.len()
    }

    fn segments(&self) -> Vec<Seg> {
        let mut out = Vec::new();
        for (u, v) in self.graph.edges() {
            out.push(Seg::new(
                self.coords[&u].clone(),
                self.coords[&v].clone(),
                Element::Edge(u, v),
                0,
                [Some(u), Some(v)],
            ));
        }
        for (i, r) in self.routes.iter().enumerate() {
            out.extend(route_segments(r, Element::Route(i)));
        }
        out
    }
}

fn route_segments(r: &RoutedConnection, owner: Element) -> Vec<Seg> {
    let last = r.waypoints.len() - 2;
    r.segments()
        .enumerate()
        .map(|(k, (a, b))| {
            let ends = [(k == 0).then_some(r.from), (k == last).then_some(r.to)];
            Seg::new(a.clone(), b.clone(), owner, k, ends)
        })
        .collect()
}

/// A drawn element: a straight graph edge or a routed connection.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Element {
    Edge(VertexId, VertexId),
    Route(usize),
}

/// A proper crossing of two elements in the relative interior of a segment
/// of each.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Crossing {
    pub a: Element,
    pub a_segment: usize,
    pub b: Element,
    pub b_segment: usize,
    pub point: Point,
}

#[derive(Clone, Debug)]
struct Seg {
    a: Point,
    b: Point,
    owner: Element,
    index: usize,
    /// Vertex sitting at `a` / `b`, `None` for bends.
    ends: [Option<VertexId>; 2],
    bbox: [f64; 4],
}

impl Seg {
    fn new(a: Point, b: Point, owner: Element, index: usize, ends: [Option<VertexId>; 2]) -> Self {
        let (ax, ay) = a.to_f64();
        let (bx, by) = b.to_f64();
        // pad generously; the exact test decides
        let pad = 1e-6 * (1.0 + ax.abs().max(ay.abs()).max(bx.abs()).max(by.abs()));
        let bbox = [ax.min(bx) - pad, ay.min(by) - pad, ax.max(bx) + pad, ay.max(by) + pad];
        Self { a, b, owner, index, ends, bbox }
    }

    fn boxes_meet(&self, o: &Seg) -> bool {
        self.bbox[0] <= o.bbox[2] && o.bbox[0] <= self.bbox[2] && self.bbox[1] <= o.bbox[3] && o.bbox[1] <= self.bbox[3]
    }

    fn endpoint_at(&self, p: &Point) -> Option<Option<VertexId>> {
        if &self.a == p {
            Some(self.ends[0])
        } else if &self.b == p {
            Some(self.ends[1])
        } else {
            None
        }
    }
}

enum Contact {
    Nothing,
    Shared,
    Proper(Point),
    Degenerate,
}

fn classify(s: &Seg, t: &Seg) -> Contact {
    if s.owner == t.owner || !s.boxes_meet(t) {
        return Contact::Nothing;
    }
    match segment_meet(&s.a, &s.b, &t.a, &t.b) {
        Meet::None => Contact::Nothing,
        Meet::Overlap => Contact::Degenerate,
        Meet::Point(p) => match (s.endpoint_at(&p), t.endpoint_at(&p)) {
            (None, None) => Contact::Proper(p),
            (Some(Some(v)), Some(Some(w))) if v == w => Contact::Shared,
            // a vertex on an element, a bend on an element, or two bends
            _ => Contact::Degenerate,
        },
    }
}

fn crossing(s: &Seg, t: &Seg, point: Point) -> Crossing {
    let (s, t) = if (s.owner, s.index) <= (t.owner, t.index) { (s, t) } else { (t, s) };
    Crossing { a: s.owner, a_segment: s.index, b: t.owner, b_segment: t.index, point }
}

fn finish(mut found: Vec<Crossing>) -> Result<Vec<Crossing>> {
    found.sort();
    let mut at: BTreeSet<&Point> = BTreeSet::new();
    for c in &found {
        if !at.insert(&c.point) {
            return Err(Error::EpsilonRegime);
        }
    }
    Ok(found)
}

/// All proper crossings, checking every pair of segments.
pub fn find_crossings_brute(d: &Drawing) -> Result<Vec<Crossing>> {
    let segs = d.segments();
    let mut found = Vec::new();
    for i in 0..segs.len() {
        for j in i + 1..segs.len() {
            match classify(&segs[i], &segs[j]) {
                Contact::Nothing | Contact::Shared => {}
                Contact::Proper(p) => found.push(crossing(&segs[i], &segs[j], p)),
                Contact::Degenerate => return Err(Error::EpsilonRegime),
            }
        }
    }
    finish(found)
}

/// All proper crossings, sweeping segments by x-extent. Touching at a
/// vertex, overlaps, contacts at bends and crossings of three or more
/// segments in one point are rejected as an epsilon regime violation.
pub fn find_crossings(d: &Drawing) -> Result<Vec<Crossing>> {
    let mut segs = d.segments();
    segs.sort_by(|s, t| s.bbox[0].total_cmp(&t.bbox[0]));
    let mut found = Vec::new();
    for i in 0..segs.len() {
        for j in i + 1..segs.len() {
            if segs[j].bbox[0] > segs[i].bbox[2] {
                break;
            }
            match classify(&segs[i], &segs[j]) {
                Contact::Nothing | Contact::Shared => {}
                Contact::Proper(p) => found.push(crossing(&segs[i], &segs[j], p)),
                Contact::Degenerate => return Err(Error::EpsilonRegime),
            }
        }
    }
    finish(found)
}

/// Routes `v` to `w` for a given epsilon in `(0, 1/3)`. The endpoints are
/// swapped if needed so that the route starts at the earlier vertex in
/// scan order (by column, then row).
pub fn route_connection(d: &Drawing, v: VertexId, w: VertexId, eps: &BigRational) -> Result<RoutedConnection> {
    let third = rat(1, 3);
    if !eps.is_positive() || eps >= &third || v == w {
        return Err(Error::EpsilonInvalid);
    }
    let (pv, pw) = match (d.coords.get(&v), d.coords.get(&w)) {
        (Some(a), Some(b)) => (a, b),
        _ => return Err(Error::VertexNotPresent(if d.coords.contains_key(&v) { w } else { v })),
    };
    let ((from, p), (to, q)) = if (&pv.x, &pv.y) <= (&pw.x, &pw.y) { ((v, pv), (w, pw)) } else { ((w, pw), (v, pv)) };
    let half = rat(1, 2);
    let mut pts = Vec::new();
    if p.x == q.x {
        let col = &p.x - &third - eps;
        pts.push(p.clone());
        pts.push(Point::new(col.clone(), &p.y + &half));
        pts.push(Point::new(col, &q.y - &half));
        pts.push(q.clone());
    } else {
        let out = &p.x + &third - eps;
        let inn = &q.x - &third + eps;
        pts.push(p.clone());
        pts.push(Point::new(out.clone(), &p.y - &half));
        pts.push(Point::new(out, &q.y - &half));
        pts.push(Point::new(inn, &q.y - &half));
        pts.push(q.clone());
    }
    pts.dedup();
    let r = RoutedConnection { from, to, epsilon: eps.clone(), waypoints: pts };
    let hits_vertex = d.coords.iter().any(|(&u, c)| {
        u != from && u != to && r.segments().any(|(a, b)| super::on_segment(a, b, c))
    });
    if hits_vertex {
        return Err(Error::EpsilonInvalid);
    }
    Ok(r)
}

/// Candidate epsilons in the order they are tried: 1/4, then 1/q for the
/// primes q = 5, 7, 11, ...
pub fn epsilon_candidates() -> impl Iterator<Item = BigRational> {
    std::iter::once(rat(1, 4)).chain(
        (5u64..)
            .filter(|&q| (2..).take_while(|d| d * d <= q).all(|d| q % d != 0))
            .map(|q| BigRational::new(BigInt::one(), BigInt::from(q))),
    )
}

/// Epsilon candidates tried per route before giving up.
const EPSILON_ATTEMPTS: usize = 4096;

/// Incremental router: keeps every drawn segment, the slopes in use and the
/// crossing points found so far.
pub(crate) struct Router {
    drawing: Drawing,
    segs: Vec<Seg>,
    slopes: BTreeSet<BigRational>,
    points: BTreeSet<Point>,
}

impl Router {
    pub(crate) fn new(drawing: Drawing) -> Self {
        let segs = drawing.segments();
        let slopes = segs.iter().filter_map(|s| slope(&s.a, &s.b)).collect();
        let mut r = Self { drawing: Drawing { routes: Vec::new(), ..drawing.clone() }, segs: Vec::new(), slopes, points: BTreeSet::new() };
        r.segs = r.drawing.segments();
        for route in drawing.routes {
            let segs = route_segments(&route, Element::Route(r.drawing.routes.len()));
            r.segs.extend(segs);
            r.drawing.routes.push(route);
        }
        r
    }

    /// Crossing points of `cand` if it is admissible.
    fn admissible(&self, cand: &RoutedConnection) -> Option<Vec<Point>> {
        let segs = route_segments(cand, Element::Route(usize::MAX));
        for s in &segs {
            let axis = s.a.x == s.b.x || s.a.y == s.b.y;
            if !axis && self.slopes.contains(&slope(&s.a, &s.b).unwrap()) {
                return None;
            }
        }
        let mut pts = Vec::new();
        for s in &segs {
            for t in &self.segs {
                match classify(s, t) {
                    Contact::Nothing | Contact::Shared => {}
                    Contact::Degenerate => return None,
                    Contact::Proper(p) => {
                        if matches!(t.owner, Element::Route(_)) || self.points.contains(&p) || pts.contains(&p) {
                            return None;
                        }
                        pts.push(p);
                    }
                }
            }
        }
        Some(pts)
    }

    pub(crate) fn pick(&self, v: VertexId, w: VertexId) -> Result<(RoutedConnection, Vec<Point>)> {
        for eps in epsilon_candidates().take(EPSILON_ATTEMPTS) {
            let cand = match route_connection(&self.drawing, v, w, &eps) {
                Ok(c) => c,
                Err(Error::EpsilonInvalid) => continue,
                Err(e) => return Err(e),
            };
            if let Some(pts) = self.admissible(&cand) {
                return Ok((cand, pts));
            }
        }
        Err(Error::EpsilonInvalid)
    }

    /// Routes `v` to `w` with the first admissible epsilon.
    pub(crate) fn add(&mut self, v: VertexId, w: VertexId) -> Result<&RoutedConnection> {
        let (route, pts) = self.pick(v, w)?;
        let idx = self.drawing.routes.len();
        for s in route_segments(&route, Element::Route(idx)) {
            if let Some(m) = slope(&s.a, &s.b) {
                self.slopes.insert(m);
            }
            self.segs.push(s);
        }
        self.points.extend(pts);
        self.drawing.routes.push(route);
        Ok(&self.drawing.routes[idx])
    }

    pub(crate) fn into_drawing(self) -> Drawing {
        self.drawing
    }
}

/// First epsilon, in [`epsilon_candidates`] order, for which the route from
/// `v` to `w` avoids every slope already drawn, passes through no vertex,
/// has no bend on another element, crosses no other route and creates no
/// crossing at an existing crossing point.
pub fn pick_epsilon(d: &Drawing, v: VertexId, w: VertexId) -> Result<BigRational> {
    Ok(Router::new(d.clone()).pick(v, w)?.0.epsilon)
}

/// A piece of a routed connection between consecutive endpoints.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Fragment {
    pub from: VertexId,
    pub to: VertexId,
    pub points: Vec<Point>,
}

/// A drawing after every crossing has become a vertex.
#[derive(Clone, Debug)]
pub struct Dissolved {
    pub graph: Graph,
    pub coords: BTreeMap<VertexId, Point>,
    /// Per routed connection, its fragments in order.
    pub fragments: Vec<Vec<Fragment>>,
    /// Per subdivided edge, the new vertices in order from its smaller
    /// endpoint.
    pub subdivisions: Vec<(Edge, Vec<VertexId>)>,
    /// Vertices created at crossings, in creation order.
    pub created: Vec<VertexId>,
}

impl Dissolved {
    /// Re-checks the skeleton: graph edges straight, fragments as drawn, and
    /// no two elements meeting except at a shared endpoint.
    pub fn crossing_free(&self) -> bool {
        let mut d = Drawing::new(self.graph.clone(), self.coords.clone());
        for f in self.fragments.iter().flatten() {
            d.routes.push(RoutedConnection { from: f.from, to: f.to, epsilon: BigRational::zero(), waypoints: f.points.clone() });
        }
        d.vertices_distinct() && matches!(find_crossings(&d), Ok(c) if c.is_empty())
    }

    /// Degree of `v` counting fragments as edges.
    pub fn skeleton_degree(&self, v: VertexId) -> usize {
        self.graph.degree(v)
            + self.fragments.iter().flatten().filter(|f| f.from == v).count()
            + self.fragments.iter().flatten().filter(|f| f.to == v).count()
    }
}

fn along(a: &Point, p: &Point) -> BigRational {
    // squared distance orders points on a segment starting at `a`
    let dx = &p.x - &a.x;
    let dy = &p.y - &a.y;
    &dx * &dx + &dy * &dy
}

/// Turns every crossing into a vertex. Crossed graph edges are subdivided at
/// the crossing point; a crossing of two graph edges yields one vertex of
/// degree four. Routed connections are cut into fragments at their crossings.
pub fn dissolve_crossings(d: &Drawing, crossings: &[Crossing]) -> Result<Dissolved> {
    let mut on_edge: BTreeMap<Edge, Vec<Point>> = BTreeMap::new();
    let mut on_route: BTreeMap<usize, Vec<(usize, Point)>> = BTreeMap::new();
    for c in crossings {
        for (el, seg) in [(c.a, c.a_segment), (c.b, c.b_segment)] {
            match el {
                Element::Edge(u, v) => {
                    if !d.graph.has_edge(u, v) {
                        return Err(Error::EdgeNotPresent(u, v));
                    }
                    on_edge.entry(edge(u, v)).or_default().push(c.point.clone());
                }
                Element::Route(i) => {
                    if i >= d.routes.len() {
                        return Err(Error::Precondition(format!("no routed connection {i}")));
                    }
                    on_route.entry(i).or_default().push((seg, c.point.clone()));
                }
            }
        }
    }
    let mut graph = d.graph.clone();
    let mut coords = d.coords.clone();
    let mut at: BTreeMap<Point, VertexId> = BTreeMap::new();
    let mut created = Vec::new();
    let mut subdivisions = Vec::new();
    for (e, mut pts) in on_edge {
        let start = coords[&e.0].clone();
        pts.sort_by(|p, q| along(&start, p).cmp(&along(&start, q)));
        graph.remove_edge(e.0, e.1)?;
        let mut prev = e.0;
        let mut made = Vec::new();
        for p in pts {
            let x = match at.get(&p) {
                Some(&x) => x,
                None => {
                    let x = graph.add_vertex();
                    coords.insert(x, p.clone());
                    at.insert(p, x);
                    created.push(x);
                    x
                }
            };
            graph.add_edge(prev, x)?;
            made.push(x);
            prev = x;
        }
        graph.add_edge(prev, e.1)?;
        subdivisions.push((e, made));
    }
    let mut fragments = Vec::new();
    for (i, r) in d.routes.iter().enumerate() {
        let mut cuts = on_route.remove(&i).unwrap_or_default();
        cuts.sort_by(|(s, p), (t, q)| {
            s.cmp(t).then_with(|| along(&r.waypoints[*s], p).cmp(&along(&r.waypoints[*t], q)))
        });
        let mut frags = Vec::new();
        let mut cur = Fragment { from: r.from, to: r.from, points: vec![r.waypoints[0].clone()] };
        let mut cut_iter = cuts.into_iter().peekable();
        for s in 0..r.waypoints.len() - 1 {
            while let Some((_, p)) = cut_iter.next_if(|(seg, _)| *seg == s) {
                let x = match at.get(&p) {
                    Some(&x) => x,
                    None => {
                        let x = graph.add_vertex();
                        coords.insert(x, p.clone());
                        at.insert(p.clone(), x);
                        created.push(x);
                        x
                    }
                };
                cur.points.push(p.clone());
                cur.to = x;
                frags.push(std::mem::replace(&mut cur, Fragment { from: x, to: x, points: vec![p] }));
            }
            cur.points.push(r.waypoints[s + 1].clone());
        }
        cur.to = r.to;
        frags.push(cur);
        fragments.push(frags);
    }
    Ok(Dissolved { graph, coords, fragments, subdivisions, created })
}

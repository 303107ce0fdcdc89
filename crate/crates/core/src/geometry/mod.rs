//! Exact planar geometry: rational points, segment predicates, integer grid
//! embeddings and the routing / crossing-dissolution machinery used to pair
//! degree-3 vertices.

mod grid;
pub(crate) mod route;
pub mod svg;

pub use grid::{grid_embed, grid_embed_graph, GridEmbedding};
pub use route::{
    dissolve_crossings, epsilon_candidates, find_crossings, find_crossings_brute, pick_epsilon, route_connection,
    Crossing, Dissolved, Drawing, Element, Fragment, RoutedConnection,
};

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::ser::SerializeTuple;
use serde::{Serialize, Serializer};

use crate::graph::{Graph, Rotation, VertexId};

/// Exact rational point.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Point {
    pub x: BigRational,
    pub y: BigRational,
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl Point {
    pub fn new(x: BigRational, y: BigRational) -> Self {
        Self { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        Self { x: rat(x, 1), y: rat(y, 1) }
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.x.to_f64().unwrap_or(f64::NAN), self.y.to_f64().unwrap_or(f64::NAN))
    }

    /// Coordinates as `"num/den"` strings.
    pub fn fraction_strings(&self) -> [String; 2] {
        [fraction(&self.x), fraction(&self.y)]
    }

    fn sub(&self, o: &Point) -> (BigRational, BigRational) {
        (&self.x - &o.x, &self.y - &o.y)
    }
}

pub fn fraction(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", fraction(&self.x), fraction(&self.y))
    }
}

impl Serialize for Point {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut t = s.serialize_tuple(2)?;
        t.serialize_element(&fraction(&self.x))?;
        t.serialize_element(&fraction(&self.y))?;
        t.end()
    }
}

fn cross(a: &(BigRational, BigRational), b: &(BigRational, BigRational)) -> BigRational {
    &a.0 * &b.1 - &a.1 * &b.0
}

/// Sign of the turn `a -> b -> c`: 1 left, -1 right, 0 collinear.
pub fn orient(a: &Point, b: &Point, c: &Point) -> i32 {
    let v = cross(&b.sub(a), &c.sub(a));
    if v.is_positive() {
        1
    } else if v.is_negative() {
        -1
    } else {
        0
    }
}

/// How two closed segments meet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Meet {
    None,
    Point(Point),
    Overlap,
}

fn between(a: &BigRational, b: &BigRational, x: &BigRational) -> bool {
    (a <= x && x <= b) || (b <= x && x <= a)
}

/// True if `p` lies on the closed segment `ab`.
pub fn on_segment(a: &Point, b: &Point, p: &Point) -> bool {
    orient(a, b, p) == 0 && between(&a.x, &b.x, &p.x) && between(&a.y, &b.y, &p.y)
}

/// Exact intersection of closed segments `ab` and `cd`.
pub fn segment_meet(a: &Point, b: &Point, c: &Point, d: &Point) -> Meet {
    if a == b {
        return if on_segment(c, d, a) { Meet::Point(a.clone()) } else { Meet::None };
    }
    if c == d {
        return if on_segment(a, b, c) { Meet::Point(c.clone()) } else { Meet::None };
    }
    let (o1, o2) = (orient(a, b, c), orient(a, b, d));
    let (o3, o4) = (orient(c, d, a), orient(c, d, b));
    if o1 == 0 && o2 == 0 {
        // collinear: compare along the dominant axis
        let key = |p: &Point| if a.x != b.x { p.x.clone() } else { p.y.clone() };
        let (mut s1, mut e1) = (key(a), key(b));
        if s1 > e1 {
            std::mem::swap(&mut s1, &mut e1);
        }
        let (mut s2, mut e2) = (key(c), key(d));
        if s2 > e2 {
            std::mem::swap(&mut s2, &mut e2);
        }
        let lo = if s1 > s2 { s1 } else { s2 };
        let hi = if e1 < e2 { e1 } else { e2 };
        return match lo.cmp(&hi) {
            Ordering::Greater => Meet::None,
            Ordering::Less => Meet::Overlap,
            Ordering::Equal => {
                let p = [a, b, c, d].into_iter().find(|p| key(p) == lo).unwrap().clone();
                Meet::Point(p)
            }
        };
    }
    if o1 * o2 > 0 || o3 * o4 > 0 {
        return Meet::None;
    }
    let r = b.sub(a);
    let s = d.sub(c);
    let t = cross(&c.sub(a), &s) / cross(&r, &s);
    Meet::Point(Point::new(&a.x + &t * &r.0, &a.y + &t * &r.1))
}

/// Slope of a non-vertical segment, `None` for vertical ones.
pub fn slope(a: &Point, b: &Point) -> Option<BigRational> {
    if a.x == b.x {
        None
    } else {
        Some((&b.y - &a.y) / (&b.x - &a.x))
    }
}

fn half(d: &(BigRational, BigRational)) -> u8 {
    if d.1.is_positive() || (d.1.is_zero() && d.0.is_positive()) {
        0
    } else {
        1
    }
}

/// Counter-clockwise angular order of direction vectors starting at +x.
fn ccw_cmp(a: &(BigRational, BigRational), b: &(BigRational, BigRational)) -> Ordering {
    half(a).cmp(&half(b)).then_with(|| {
        let c = cross(a, b);
        if c.is_positive() {
            Ordering::Less
        } else if c.is_negative() {
            Ordering::Greater
        } else {
            Ordering::Equal
        }
    })
}

/// Clockwise rotation read off a drawing. `bends` maps a normalised edge
/// to its interior polyline points listed from the smaller endpoint.
pub fn rotation_from_coords(
    g: &Graph,
    coords: &BTreeMap<VertexId, Point>,
    bends: &BTreeMap<(VertexId, VertexId), Vec<Point>>,
) -> Rotation {
    let mut rot = Rotation::new();
    for v in g.vertices() {
        let p = &coords[&v];
        let mut dirs: Vec<(VertexId, (BigRational, BigRational))> = g
            .neighbors(v)
            .map(|w| {
                let e = crate::graph::edge(v, w);
                let toward = match bends.get(&e).filter(|b| !b.is_empty()) {
                    Some(b) if v == e.0 => &b[0],
                    Some(b) => b.last().unwrap(),
                    None => &coords[&w],
                };
                (w, toward.sub(p))
            })
            .collect();
        dirs.sort_by(|a, b| ccw_cmp(&b.1, &a.1));
        rot.set_order(v, dirs.into_iter().map(|(w, _)| w).collect());
    }
    rot
}

/// Straight-line drawing check: distinct vertex points, edges meet only at
/// shared endpoints, no vertex inside an edge.
pub fn straight_line_crossing_free(g: &Graph, coords: &BTreeMap<VertexId, Point>) -> bool {
    let mut d = Drawing::new(g.clone(), coords.clone());
    d.routes.clear();
    if !d.vertices_distinct() {
        return false;
    }
    matches!(find_crossings(&d), Ok(c) if c.is_empty())
}

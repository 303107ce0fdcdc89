//! Minimal SVG rendering of drawings.

use std::fmt::Write;

use super::{Dissolved, Drawing, Point};

const SCALE: f64 = 40.0;
const MARGIN: f64 = 20.0;

struct Frame {
    min_x: f64,
    max_y: f64,
    w: f64,
    h: f64,
}

impl Frame {
    fn of<'a>(pts: impl Iterator<Item = &'a Point>) -> Self {
        let (mut lx, mut ly, mut hx, mut hy) = (f64::MAX, f64::MAX, f64::MIN, f64::MIN);
        for p in pts {
            let (x, y) = p.to_f64();
            lx = lx.min(x);
            ly = ly.min(y);
            hx = hx.max(x);
            hy = hy.max(y);
        }
        if lx > hx {
            (lx, ly, hx, hy) = (0.0, 0.0, 0.0, 0.0);
        }
        Self { min_x: lx, max_y: hy, w: (hx - lx) * SCALE + 2.0 * MARGIN, h: (hy - ly) * SCALE + 2.0 * MARGIN }
    }

    fn map(&self, p: &Point) -> (f64, f64) {
        let (x, y) = p.to_f64();
        ((x - self.min_x) * SCALE + MARGIN, (self.max_y - y) * SCALE + MARGIN)
    }
}

fn polyline(out: &mut String, f: &Frame, pts: &[Point], color: &str) {
    let coords: Vec<String> = pts
        .iter()
        .map(|p| {
            let (x, y) = f.map(p);
            format!("{x:.2},{y:.2}")
        })
        .collect();
    let _ = writeln!(out, r#"<polyline points="{}" fill="none" stroke="{color}" stroke-width="1.5"/>"#, coords.join(" "));
}

fn render(f: &Frame, edges: &[Vec<Point>], routes: &[Vec<Point>], verts: &[(String, Point)]) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{:.0}" height="{:.0}">"#,
        f.w, f.h
    );
    for e in edges {
        polyline(&mut out, f, e, "black");
    }
    for r in routes {
        polyline(&mut out, f, r, "crimson");
    }
    for (label, p) in verts {
        let (x, y) = f.map(p);
        let _ = writeln!(out, r#"<circle cx="{x:.2}" cy="{y:.2}" r="3"/>"#);
        let _ = writeln!(out, r#"<text x="{:.2}" y="{:.2}" font-size="9">{label}</text>"#, x + 4.0, y - 4.0);
    }
    out.push_str("</svg>\n");
    out
}

/// Renders graph edges in black and routed connections in red.
pub fn drawing_svg(d: &Drawing) -> String {
    let f = Frame::of(d.coords.values());
    let edges: Vec<Vec<Point>> =
        d.graph.edges().map(|(u, v)| vec![d.coords[&u].clone(), d.coords[&v].clone()]).collect();
    let routes: Vec<Vec<Point>> = d.routes.iter().map(|r| r.waypoints.clone()).collect();
    let verts: Vec<(String, Point)> = d.coords.iter().map(|(v, p)| (v.to_string(), p.clone())).collect();
    render(&f, &edges, &routes, &verts)
}

/// Renders a dissolved drawing with fragments in red.
pub fn dissolved_svg(d: &Dissolved) -> String {
    let f = Frame::of(d.coords.values());
    let edges: Vec<Vec<Point>> =
        d.graph.edges().map(|(u, v)| vec![d.coords[&u].clone(), d.coords[&v].clone()]).collect();
    let routes: Vec<Vec<Point>> = d.fragments.iter().flatten().map(|fr| fr.points.clone()).collect();
    let verts: Vec<(String, Point)> = d.coords.iter().map(|(v, p)| (v.to_string(), p.clone())).collect();
    render(&f, &edges, &routes, &verts)
}

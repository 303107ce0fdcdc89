//! Graph text format and trace JSON.
//!
//! ```text
//! c comment
//! p fvs <n> <m>
//! k <budget>            (optional, default 0)
//! e <u> <v>             (m lines, 1-based)
//! h <v1> <v2> ... <vn>  (optional Hamiltonian cycle)
//! ```

use std::collections::BTreeMap;
use std::fmt::Write;

use crate::error::{Error, Result};
use crate::graph::{check_ham_order, Graph, HamCycle, Instance, VertexId};
use crate::pipeline::ReductionTrace;

fn nums<T: std::str::FromStr>(line: usize, parts: &[&str], what: &str) -> Result<Vec<T>> {
    parts
        .iter()
        .map(|s| s.parse().map_err(|_| Error::format(line, format!("{what}: {s:?} is not a non-negative integer"))))
        .collect()
}

/// Parses the graph format. Vertex `i` of the file becomes id `i - 1`.
pub fn parse_graph(text: &str) -> Result<Instance> {
    let mut header: Option<(usize, usize)> = None;
    let mut g = Graph::new();
    let mut k = 0u64;
    let mut witness: Option<(usize, Vec<VertexId>)> = None;
    let mut edges = 0usize;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let parts: Vec<&str> = raw.split_whitespace().collect();
        let Some((&tag, rest)) = parts.split_first() else {
            continue;
        };
        if tag == "c" {
            continue;
        }
        if tag == "p" {
            if header.is_some() {
                return Err(Error::format(line, "second header line"));
            }
            if rest.len() != 3 || rest[0] != "fvs" {
                return Err(Error::format(line, "header must be `p fvs <n> <m>`"));
            }
            let v: Vec<usize> = nums(line, &rest[1..], "header")?;
            header = Some((v[0], v[1]));
            let (gg, _) = Graph::with_vertices(v[0]);
            g = gg;
            continue;
        }
        let Some((n, _)) = header else {
            return Err(Error::format(line, "expected header `p fvs <n> <m>` first"));
        };
        let vertex = |x: usize| -> Result<VertexId> {
            if x == 0 || x > n {
                Err(Error::format(line, format!("vertex {x} outside 1..={n}")))
            } else {
                Ok(VertexId(x as u32 - 1))
            }
        };
        match tag {
            "k" => {
                let v: Vec<u64> = nums(line, rest, "budget")?;
                let [b] = v[..] else {
                    return Err(Error::format(line, "budget line must be `k <int>`"));
                };
                k = b;
            }
            "e" => {
                let v: Vec<usize> = nums(line, rest, "edge")?;
                let [a, b] = v[..] else {
                    return Err(Error::format(line, "edge line must be `e <u> <v>`"));
                };
                let (a, b) = (vertex(a)?, vertex(b)?);
                if a == b {
                    return Err(Error::format(line, "self-loop"));
                }
                if !g.add_edge(a, b)? {
                    return Err(Error::format(line, "duplicate edge"));
                }
                edges += 1;
            }
            "h" => {
                if witness.is_some() {
                    return Err(Error::format(line, "second witness line"));
                }
                let v: Vec<usize> = nums(line, rest, "witness")?;
                let order = v.into_iter().map(vertex).collect::<Result<Vec<_>>>()?;
                witness = Some((line, order));
            }
            _ => return Err(Error::format(line, format!("unknown line type {tag:?}"))),
        }
    }
    let Some((_, m)) = header else {
        return Err(Error::format(0, "missing header `p fvs <n> <m>`"));
    };
    if edges != m {
        return Err(Error::format(0, format!("header announces {m} edges, found {edges}")));
    }
    let mut inst = Instance::new(g, k);
    if let Some((line, order)) = witness {
        check_ham_order(&inst.graph, &order).map_err(|e| Error::format(line, format!("witness: {e}")))?;
        inst.witness = Some(HamCycle::new(&inst.graph, order)?);
    }
    Ok(inst)
}

/// Writes the graph format, numbering vertices 1.. in increasing id order.
pub fn write_graph(inst: &Instance) -> String {
    let g = &inst.graph;
    let num: BTreeMap<VertexId, usize> = g.vertices().enumerate().map(|(i, v)| (v, i + 1)).collect();
    let mut out = String::new();
    let _ = writeln!(out, "p fvs {} {}", g.n(), g.m());
    let _ = writeln!(out, "k {}", inst.k);
    for (a, b) in g.edges() {
        let _ = writeln!(out, "e {} {}", num[&a], num[&b]);
    }
    if let Some(w) = &inst.witness {
        let s: Vec<String> = w.order().iter().map(|v| num[v].to_string()).collect();
        let _ = writeln!(out, "h {}", s.join(" "));
    }
    out
}

/// Writes only the witness line of an instance.
pub fn write_witness(inst: &Instance) -> Option<String> {
    let num: BTreeMap<VertexId, usize> = inst.graph.vertices().enumerate().map(|(i, v)| (v, i + 1)).collect();
    inst.witness.as_ref().map(|w| {
        let s: Vec<String> = w.order().iter().map(|v| num[v].to_string()).collect();
        format!("h {}\n", s.join(" "))
    })
}

pub fn trace_to_json(t: &ReductionTrace) -> String {
    let mut s = serde_json::to_string_pretty(t).expect("trace serializes");
    s.push('\n');
    s
}

pub fn trace_from_json(text: &str) -> Result<ReductionTrace> {
    serde_json::from_str(text).map_err(|e| Error::format(e.line(), format!("trace JSON: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_c3() {
        let i = parse_graph("p fvs 3 3\ne 1 2\ne 2 3\ne 1 3\n").unwrap();
        assert_eq!((i.graph.n(), i.graph.m(), i.k), (3, 3, 0));
        let i = parse_graph("c x\np fvs 3 3\nk 4\ne 1 2\ne 2 3\ne 1 3\nh 1 2 3\n").unwrap();
        assert_eq!(i.k, 4);
        assert!(i.witness.is_some());
    }

    #[test]
    fn errors_carry_lines() {
        let e = parse_graph("p fvs 2 1\ne 1 1\n").unwrap_err();
        assert_eq!(e, Error::Format { line: 2, msg: "self-loop".into() });
        let e = parse_graph("p fvs 3 2\ne 1 2\ne 2 1\n").unwrap_err();
        assert_eq!(e, Error::Format { line: 3, msg: "duplicate edge".into() });
        assert!(matches!(parse_graph("e 1 2\n"), Err(Error::Format { line: 1, .. })));
        assert!(matches!(parse_graph("p fvs 3 2\ne 1 2\ne 2 3\nh 1 2 3\n"), Err(Error::Format { line: 4, .. })));
        assert!(matches!(parse_graph("p fvs 3 2\ne 1 2\n"), Err(Error::Format { .. })));
        assert!(matches!(parse_graph("p fvs 3 1\ne 1 4\n"), Err(Error::Format { line: 2, .. })));
    }

    #[test]
    fn round_trip() {
        let text = "p fvs 4 4\nk 2\ne 1 2\ne 1 4\ne 2 3\ne 3 4\nh 1 2 3 4\n";
        let i = parse_graph(text).unwrap();
        assert_eq!(write_graph(&i), text);
        assert_eq!(parse_graph(&write_graph(&i)).unwrap(), i);
    }
}

//! Oracles against values frozen from networkx and brute force
//! (`tests/fixtures/gen_oracle_fixtures.py`).

use std::collections::BTreeSet;

use hamfvs::graph::{Graph, VertexId};
use hamfvs::oracle::branch::{fvs_branch_reduce, Budget};
use hamfvs::oracle::connectivity::vertex_connectivity_at_least;
use hamfvs::oracle::fvs::{fvs_exact_exhaustive, is_fvs};
use hamfvs::oracle::hamilton::{find_hamiltonian_cycle, verify_witness};
use hamfvs::oracle::planarity::is_planar;
use serde::Deserialize;

#[derive(Deserialize)]
struct Fixture {
    name: String,
    n: usize,
    edges: Vec<[u32; 2]>,
    planar: bool,
    connectivity: usize,
    min_fvs: usize,
    hamiltonian: Option<bool>,
}

fn fixtures() -> Vec<(Fixture, Graph)> {
    let text = include_str!("fixtures/oracle_fixtures.json");
    let list: Vec<Fixture> = serde_json::from_str(text).unwrap();
    list.into_iter()
        .map(|f| {
            let e: Vec<(u32, u32)> = f.edges.iter().map(|e| (e[0], e[1])).collect();
            let g = Graph::from_edges(f.n, &e).unwrap();
            (f, g)
        })
        .collect()
}

#[test]
fn planarity_matches_networkx() {
    for (f, g) in fixtures() {
        assert_eq!(is_planar(&g), f.planar, "{}", f.name);
    }
}

#[test]
fn connectivity_matches_networkx() {
    for (f, g) in fixtures() {
        assert!(vertex_connectivity_at_least(&g, f.connectivity), "{}", f.name);
        assert!(!vertex_connectivity_at_least(&g, f.connectivity + 1), "{}", f.name);
    }
}

#[test]
fn fvs_matches_brute_force() {
    for (f, g) in fixtures() {
        let ex = fvs_exact_exhaustive(&g).unwrap();
        let br = fvs_branch_reduce(&g, Budget::default()).unwrap();
        assert_eq!(ex.size, f.min_fvs, "{}", f.name);
        assert_eq!(br.size, f.min_fvs, "{}", f.name);
        for s in [ex.set, br.set] {
            assert!(is_fvs(&g, &s.into_iter().collect::<BTreeSet<VertexId>>()), "{}", f.name);
        }
    }
}

#[test]
fn hamiltonicity_matches_brute_force() {
    for (f, g) in fixtures() {
        let Some(want) = f.hamiltonian else { continue };
        let got = find_hamiltonian_cycle(&g).unwrap();
        assert_eq!(got.is_some(), want, "{}", f.name);
        if let Some(c) = got {
            assert!(verify_witness(&g, &c));
        }
    }
}

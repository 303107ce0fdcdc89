"""Regenerates oracle_fixtures.json from networkx and brute force.

Planarity and vertex connectivity come from networkx; minimum FVS and
Hamiltonicity from plain enumeration. None of it shares code with the
Rust oracles.
"""
import itertools
import json

import networkx as nx


def min_fvs(g):
    nodes = list(g.nodes)
    for size in range(len(nodes) + 1):
        for s in itertools.combinations(nodes, size):
            h = g.copy()
            h.remove_nodes_from(s)
            if nx.is_forest(h) if h.number_of_nodes() else True:
                return size
    return len(nodes)


def hamiltonian(g):
    nodes = sorted(g.nodes)
    n = len(nodes)
    if n < 3:
        return False
    first = nodes[0]
    for perm in itertools.permutations(nodes[1:]):
        if perm[0] > perm[-1]:
            continue
        cyc = (first,) + perm
        if all(g.has_edge(cyc[i], cyc[(i + 1) % n]) for i in range(n)):
            return True
    return False


def graphs():
    yield "K5", nx.complete_graph(5)
    yield "K33", nx.complete_bipartite_graph(3, 3)
    yield "petersen", nx.petersen_graph()
    yield "octahedron", nx.octahedral_graph()
    yield "cube", nx.hypercube_graph(3)
    yield "wheel7", nx.wheel_graph(7)
    yield "grid3x3", nx.grid_2d_graph(3, 3)
    yield "C7", nx.cycle_graph(7)
    yield "K4", nx.complete_graph(4)
    yield "star5", nx.star_graph(5)
    yield "prism4", nx.circular_ladder_graph(4)
    yield "K6", nx.complete_graph(6)
    yield "K15", nx.complete_bipartite_graph(1, 5)
    yield "frucht", nx.frucht_graph()
    for seed in range(16):
        n = 6 + seed % 5
        yield f"gnp{seed}", nx.gnp_random_graph(n, 0.45, seed=seed)


def main():
    out = []
    for name, g in graphs():
        g = nx.convert_node_labels_to_integers(g, ordering="sorted")
        planar, _ = nx.check_planarity(g)
        conn = nx.node_connectivity(g) if nx.is_connected(g) else 0
        ham = hamiltonian(g) if g.number_of_nodes() <= 10 else None
        out.append({
            "name": name,
            "n": g.number_of_nodes(),
            "edges": sorted([min(u, v), max(u, v)] for u, v in g.edges),
            "planar": planar,
            "connectivity": conn,
            "min_fvs": min_fvs(g),
            "hamiltonian": ham,
        })
    with open("oracle_fixtures.json", "w") as f:
        json.dump(out, f, indent=1)
        f.write("\n")


if __name__ == "__main__":
    main()

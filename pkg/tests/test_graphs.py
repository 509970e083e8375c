import json

import networkx as nx
import numpy as np
import pytest

from subspace_lab.grassmann import Grassmannian, is_complement, join_dim
from subspace_lab.graphs import (
    UNREACHABLE,
    Graph,
    bfs_distances,
    build_distant_graph,
    build_grassmann_graph,
    components,
    diameter,
    export,
    stats,
    to_graph6,
)

from conftest import grassmannian


@pytest.mark.parametrize(
    "p,m,distant_deg,grassmann_deg",
    [(2, 1, 2, 2), (3, 1, 3, 3), (2, 2, 16, 18), (3, 2, 81, 48), (2, 3, 512, 98)],
)
def test_regular_degrees(p, m, distant_deg, grassmann_deg):
    G = grassmannian(p, m)
    # q^{m^2} complements; q·[m]_q·[m]_q neighbours in the Grassmann graph
    assert build_distant_graph(G).regular_degree() == distant_deg == p ** (m * m)
    qm = (p**m - 1) // (p - 1)
    assert build_grassmann_graph(G).regular_degree() == grassmann_deg == p * qm * qm


def test_distant_edges_are_complements(G22):
    g = build_distant_graph(G22)
    for i, X in enumerate(G22):
        for j, Y in enumerate(G22):
            assert g.has_edge(i, j) == is_complement(X, Y)


def test_grassmann_edges_match_join_dimension(G22):
    g = build_grassmann_graph(G22)
    for i, X in enumerate(G22):
        for j, Y in enumerate(G22):
            assert g.has_edge(i, j) == (join_dim(X, Y) == 3)
    assert not g.has_loops()


def test_dim_two_line_is_complete(gf2):
    G = Grassmannian(gf2, 1)
    for g in (build_distant_graph(G), build_grassmann_graph(G)):
        assert g.edges() == [(0, 1), (0, 2), (1, 2)]
        assert to_graph6(g) == b"Bw"


def test_dim_zero_graph(gf2):
    G = Grassmannian(gf2, 0)
    g = build_distant_graph(G)
    assert len(g) == 1 and g.has_loops()
    assert export(g, "graph6") == b"@\n"
    assert diameter(g) == 0


@pytest.mark.parametrize("p,m", [(2, 2), (3, 2), (2, 3)])
def test_graph6_matches_networkx(p, m):
    G = grassmannian(p, m)
    for g in (build_distant_graph(G), build_grassmann_graph(G)):
        ref = nx.to_graph6_bytes(nx.from_numpy_array(g.dense.astype(int)), header=False).strip()
        assert to_graph6(g) == ref
        back = nx.from_graph6_bytes(to_graph6(g))
        assert np.array_equal(nx.to_numpy_array(back, nodelist=range(len(g))).astype(bool), g.dense)


def test_dot_export(G22):
    g = build_distant_graph(G22)
    text = export(g, "dot").decode()
    assert text.startswith("graph distant {")
    edges = [line for line in text.splitlines() if " -- " in line]
    assert len(edges) == g.edge_count == 35 * 16 // 2
    assert '[label="{\\"n\\":4' in text


def test_json_export(G32):
    g = build_grassmann_graph(G32)
    obj = json.loads(export(g, "json"))
    assert obj["vertices"] == 130 and obj["q"] == 3 and obj["m"] == 2
    assert all(len(nb) == 48 for nb in obj["adjacency"])
    assert obj["adjacency"][5] == g.neighbors(5).tolist()


def test_bad_export_format(G22):
    with pytest.raises(ValueError):
        export(build_distant_graph(G22), "gexf")


def test_bfs_against_networkx(G32):
    g = build_distant_graph(G32)
    ref = nx.single_source_shortest_path_length(nx.from_numpy_array(g.dense.astype(int)), 7)
    dist = bfs_distances(g, 7)
    assert {v: int(d) for v, d in enumerate(dist)} == ref
    with pytest.raises(IndexError):
        bfs_distances(g, 130)


@pytest.mark.parametrize("p,m,d_distant,d_grassmann", [(2, 1, 1, 1), (3, 1, 1, 1), (2, 2, 2, 2), (3, 2, 2, 2), (2, 3, 2, 3)])
def test_diameters(p, m, d_distant, d_grassmann):
    G = grassmannian(p, m)
    assert diameter(build_distant_graph(G)) == d_distant
    assert diameter(build_grassmann_graph(G)) == d_grassmann


def test_disconnected_graph():
    dense = np.zeros((4, 4), dtype=bool)
    dense[0, 1] = dense[1, 0] = True
    g = Graph(None, "custom", dense)
    assert diameter(g) is None
    assert components(g) == 3
    assert bfs_distances(g, 0).tolist() == [0, 1, UNREACHABLE, UNREACHABLE]
    assert stats(g)["diameter"] == "disconnected"


def test_graph_rejects_asymmetric():
    with pytest.raises(ValueError):
        Graph(None, "x", np.triu(np.ones((3, 3), dtype=bool), 1))


def test_stats(G22):
    st = stats(build_distant_graph(G22))
    assert st == {"q": 2, "m": 2, "vertices": 35, "kind": "distant", "regular_degree": 16, "diameter": 2, "components": 1}


def test_packed_rows_roundtrip(G32):
    g = build_grassmann_graph(G32)
    assert g.adjacency.dtype == np.uint64 and g.adjacency.shape == (130, 3)
    for v in (0, 63, 64, 129):
        assert np.array_equal(np.flatnonzero(g.dense[v]), [w for w in range(130) if g.has_edge(v, w)])

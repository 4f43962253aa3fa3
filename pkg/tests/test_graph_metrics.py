import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from regideal import regular_graph as rg
from regideal.grammar import parse_ideal
from regideal.graph_metrics import (
    all_pairs_distances,
    bfs_distances,
    is_connected_predicate,
    shortest_path,
)

from conftest import ring


def metrics(text):
    R = ring(text)
    g = rg.build_digraph(R)
    u = rg.underlying(g)
    return R, u, all_pairs_distances(u)


def test_reduced_three_fields():
    _, _, m = metrics("F2 x F3 x F5")
    assert m.connected and m.radius == 3 and m.diameter == 3
    assert m.center == tuple(range(6))


def test_extremal_pair():
    R, u, m = metrics("F2 x Z4 x Z4")
    assert m.diameter == 5
    a, b = u.index[parse_ideal(R, "1,(2),(2)")], u.index[parse_ideal(R, "0,(2),(2)")]
    assert m.distance(a, b) == 5
    path = shortest_path(u, a, b)
    assert len(path) == 6 and all(u.adjacency[x, y] for x, y in zip(path, path[1:]))


def test_disconnected_has_no_infinite_integers():
    R, u, m = metrics("Z4 x Z4")
    assert len(u) == 7 and not m.connected
    rows = m.distance_rows()
    assert any(d is None for row in rows for d in row)
    assert all(d is None or 0 <= d < 7 for row in rows for d in row)


def test_predicate_examples():
    assert is_connected_predicate(ring("F2 x Z4 x F3"))
    assert not is_connected_predicate(ring("Z4 x Z9 x Z4"))
    assert not is_connected_predicate(ring("F2 x Z4"))


def test_empty_graph():
    _, _, m = metrics("F3")
    assert m.radius is None and not m.connected


@settings(max_examples=25, deadline=None)
@given(st.lists(st.sampled_from(["F2", "F3", "Z4", "Z9", "F2[x]/x^3"]), min_size=2, max_size=4))
def test_matrix_bfs_matches_queue_bfs(terms):
    R, u, m = metrics(" x ".join(terms))
    for s in range(len(u)):
        assert bfs_distances(u, s) == m.distance_rows()[s]
    D = m.dist
    assert (D == D.T).all() and (np.diag(D) == 0).all()
    if m.connected:
        assert m.radius <= m.diameter <= 2 * m.radius
        n = len(u)
        for k in range(n):
            via = D[:, [k]] + D[[k], :]
            assert (D <= via).all()

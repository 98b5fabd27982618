from __future__ import annotations

import json
import random

import networkx as nx
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from macq.algebra import ONE, Q, T, ZERO, MPoly
from macq.errors import DisconnectedError
from macq.graphs import (
    Multigraph,
    all_multigraphs,
    connected_subgraph_gen,
    dhar_check,
    gparking_enumerate,
    increasing_tree_poly,
    increasing_trees,
    inversion_poly,
    inversion_poly_recursive,
    is_parking,
    joint_cumulant,
    kappa_statistic,
    level,
    moments_from_cumulants,
    parking_gen,
    parking_weight,
    random_multigraph,
    sandpile_gen,
    sandpile_recurrent,
    sandpile_to_parking,
    set_partitions,
    simplify,
    spanning_trees,
    tutte,
    tutte_at,
    tutte_at_1q,
    tutte_cumulant_form,
    tutte_recursion,
)

K3 = Multigraph(3, [(1, 2), (2, 3), (1, 3)])

x_, y_ = sympy.symbols("x y")


def nx_tutte(g: Multigraph) -> MPoly:
    """networkx Tutte polynomial mapped to our slots (x -> t, y -> q)."""
    G = nx.MultiGraph()
    G.add_nodes_from(g.vertices)
    G.add_edges_from(g.edges)
    poly = sympy.Poly(sympy.expand(nx.tutte_polynomial(G)), x_, y_)
    return MPoly({(b, a, 0): int(c) for (a, b), c in poly.terms()})


def kirchhoff(g: Multigraph) -> int:
    """Spanning tree count by the matrix-tree theorem (loops ignored)."""
    idx = {v: k for k, v in enumerate(g.vertices)}
    n = len(idx)
    L = sympy.zeros(n, n)
    for a, b in g.edges:
        if a == b:
            continue
        i, j = idx[a], idx[b]
        L[i, i] += 1
        L[j, j] += 1
        L[i, j] -= 1
        L[j, i] -= 1
    return int(L[1:, 1:].det()) if n > 1 else 1


@st.composite
def graphs(draw, max_vertices=5, max_edges=7):
    n = draw(st.integers(1, max_vertices))
    m = draw(st.integers(0, max_edges))
    edges = [(draw(st.integers(1, n)), draw(st.integers(1, n))) for _ in range(m)]
    return Multigraph(n, edges)


# ---------------------------------------------------------------------------
# the multigraph type


def test_normalisation_and_counts():
    g = Multigraph(3, [(2, 1), (1, 2), (3, 3)])
    assert g.edges == ((1, 2), (1, 2), (3, 3))
    assert g.mult(2, 1) == 2 and g.loops_at(3) == 1 and g.loop_count == 1
    assert g.degree(3) == 2 and g.nonloop_degree(3) == 0
    assert not g.is_connected()
    assert simplify(g).edges == ((1, 2),)
    with pytest.raises(ValueError):
        Multigraph(2, [(1, 3)])


def test_json_roundtrip():
    g = Multigraph(3, [(1, 2), (2, 2)], root=2)
    assert Multigraph.from_json(json.dumps(g.to_json())) == g


def test_induced_and_relabel():
    g = Multigraph(3, [(1, 2), (2, 3), (1, 1)])
    assert Multigraph.induced(g, [1, 2]).edges == ((1, 1), (1, 2))
    assert g.relabel({1: 3, 2: 2, 3: 1}).edges == ((1, 2), (2, 3), (3, 3))


# ---------------------------------------------------------------------------
# I_G and the Tutte polynomial


def test_k3_values():
    assert inversion_poly(K3) == 2 + Q
    assert tutte(K3) == T**2 + T + Q
    assert tutte(K3).format(names={"t": "x", "q": "y"}) == "y + x + x^2"
    assert tutte_at(K3, 1, 1) == 3


def test_small_values():
    assert inversion_poly(Multigraph(1)) == 1
    assert inversion_poly(Multigraph(1, [(1, 1), (1, 1)])) == Q**2
    assert inversion_poly(Multigraph(2, [(1, 2)] * 3)) == 1 + Q + Q**2
    assert inversion_poly(Multigraph(2)) == 0
    assert tutte(Multigraph(2)) == 0


def test_connected_subgraph_generating_function_of_k3():
    # subsets keeping K3 connected: the three spanning paths and K3 itself
    assert connected_subgraph_gen(K3) == 3 * Q**2 + Q**3


@settings(max_examples=80, deadline=None)
@given(graphs())
def test_tutte_matches_networkx(g):
    if g.is_connected():
        assert tutte(g) == nx_tutte(g)
    else:
        assert tutte(g) == 0


@settings(max_examples=80, deadline=None)
@given(graphs())
def test_all_routes_agree(g):
    expected = tutte_at_1q(g)
    assert inversion_poly(g) == expected
    assert inversion_poly_recursive(g) == expected
    assert tutte_cumulant_form(g) == expected
    assert tutte_recursion(g) == expected


@settings(max_examples=60, deadline=None)
@given(graphs())
def test_tree_count_is_kirchhoff(g):
    if g.is_connected():
        assert tutte_at(g, 1, 1) == kirchhoff(g)
        assert sum(1 for _ in spanning_trees(g)) == kirchhoff(simplify(g))


def test_root_independence():
    g = Multigraph(4, [(1, 2), (2, 3), (3, 4), (4, 1), (1, 3), (2, 2)])
    values = {inversion_poly(g.with_root(r)) for r in g.vertices}
    assert len(values) == 1


def test_kappa_statistic_counts_tree_inversions_on_k3():
    stats = sorted(kappa_statistic(tree, K3) for tree in spanning_trees(K3))
    assert stats == [0, 0, 1]


# ---------------------------------------------------------------------------
# parking functions and sandpiles


def test_k3_parking_and_sandpile():
    assert set(gparking_enumerate(K3)) == {(0, 0), (0, 1), (1, 0)}
    assert set(sandpile_recurrent(K3)) == {(0, 1), (1, 0), (1, 1)}
    assert parking_gen(K3) == 2 + Q
    assert sandpile_gen(K3) == 2 + Q


def test_parking_validation():
    assert is_parking(K3, (0, 1))
    assert not is_parking(K3, (1, 1))
    assert parking_weight(K3, (0, 0)) == 1
    with pytest.raises(DisconnectedError):
        list(gparking_enumerate(Multigraph(2)))
    with pytest.raises(DisconnectedError):
        list(sandpile_recurrent(Multigraph(2)))


def test_sandpile_duality_with_parking():
    g = Multigraph(3, [(1, 2), (1, 2), (2, 3), (1, 3), (3, 3)])
    parking = set(gparking_enumerate(g))
    for u in sandpile_recurrent(g):
        assert sandpile_to_parking(g, u) in parking
        assert level(g, u) == parking_weight(g, sandpile_to_parking(g, u))
        assert dhar_check(g, u)


@settings(max_examples=50, deadline=None)
@given(graphs(max_vertices=4, max_edges=6))
def test_parking_and_sandpile_generating_functions(g):
    if not g.is_connected():
        return
    assert parking_gen(g) == tutte_at_1q(g)
    assert sandpile_gen(g) == tutte_at_1q(g)


# ---------------------------------------------------------------------------
# set partitions, cumulants and increasing trees

BELL = [1, 1, 2, 5, 15, 52, 203]


@pytest.mark.parametrize("n", range(0, 7))
def test_bell_numbers(n):
    parts = list(set_partitions(n))
    assert len(parts) == BELL[n]
    assert len(set(parts)) == BELL[n]


def test_cumulant_inversion():
    rng = random.Random(7)
    ground = [1, 2, 3, 4]
    moments = {}
    for pi in set_partitions(ground):
        for block in pi:
            moments.setdefault(frozenset(block), rng.randint(-9, 9))
    # the one-block cumulant of a set is recovered, and moments come back
    kappa = {b: joint_cumulant(moments.__getitem__, sorted(b)) for b in moments}
    assert moments_from_cumulants(kappa.__getitem__, ground) == moments[frozenset(ground)]
    assert joint_cumulant(moments.__getitem__, [1]) == moments[frozenset({1})]
    a, b = frozenset({1}), frozenset({2})
    assert joint_cumulant(moments.__getitem__, [1, 2]) == moments[a | b] - moments[a] * moments[b]


def test_increasing_trees():
    assert sum(1 for _ in increasing_trees(4)) == 6
    assert increasing_tree_poly([1, 1]) == 2 + Q
    assert increasing_tree_poly([2]) == 1 + Q
    assert increasing_tree_poly([]) == 1


def test_increasing_tree_poly_equals_inversion_poly_of_weighted_complete_graph():
    # a_i parallel edges between i and every smaller vertex
    a = [2, 1, 3]
    n = len(a) + 1
    edges = [(j, i) for i in range(2, n + 1) for j in range(1, i) for _ in range(a[i - 2])]
    assert increasing_tree_poly(a) == inversion_poly(Multigraph(n, edges))


def test_sweep_generators():
    graphs_ = list(all_multigraphs(2, 2))
    assert all(g.is_connected() for g in graphs_)
    assert len(graphs_) == 4  # one edge; two parallel; edge + either loop
    rng = random.Random(1)
    for _ in range(20):
        assert random_multigraph(rng, 5, 8).is_connected()

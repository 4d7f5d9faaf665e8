from __future__ import annotations

import itertools
import random

import networkx as nx
import pytest

from fermenc.catalog import CELLS, GOLDENS, worked_example
from fermenc.hardware import (
    HardwareCell,
    PatchGraph,
    Unreachable,
    canonical_edge,
    pauli_cost,
    steiner_cost,
    support_cost,
    tile,
)
from fermenc.poly_f2 import parse_poly

from oracles import brute_steiner


def _graph(g: nx.Graph) -> PatchGraph:
    site = {v: (v, (0,)) for v in g.nodes}
    adj = {site[v]: tuple(sorted(site[u] for u in g.adj[v])) for v in g.nodes}
    return PatchGraph(tuple(site.values()), adj)


def random_graphs(count: int, seed: int = 7):
    rng = random.Random(seed)
    for _ in range(count):
        n = rng.randint(2, 12)
        g = nx.gnp_random_graph(n, rng.uniform(0.15, 0.5), seed=rng.randrange(1 << 30))
        terms = rng.sample(range(n), rng.randint(1, min(4, n)))
        yield g, terms


def test_steiner_matches_brute_force():
    for g, terms in random_graphs(50):
        pg = _graph(g)
        want = brute_steiner({v: list(g.adj[v]) for v in g.nodes}, set(terms))
        sites = [(t, (0,)) for t in terms]
        if want is None:
            with pytest.raises(Unreachable):
                steiner_cost(pg, sites)
        else:
            assert steiner_cost(pg, sites) == want


def test_steiner_small_cases():
    square = tile(HardwareCell.build(1, [(0, 0, (1, 0)), (0, 0, (0, 1))], 2), ((0, 0), (2, 2)))
    assert steiner_cost(square, [(0, (1, 1))]) == 0
    assert steiner_cost(square, [(0, (1, 1)), (0, (2, 1))]) == 1
    # corner plus its two neighbours
    assert steiner_cost(square, [(0, (1, 1)), (0, (2, 1)), (0, (1, 2))]) == 2


def test_steiner_monotone_in_terminals():
    for g, terms in random_graphs(30, seed=11):
        pg = _graph(g)
        try:
            full = steiner_cost(pg, [(t, (0,)) for t in terms])
        except Unreachable:
            continue
        for r in range(1, len(terms)):
            for sub in itertools.combinations(terms, r):
                assert steiner_cost(pg, [(t, (0,)) for t in sub]) <= full
        assert full >= len(terms) - 1


def test_tile_square2():
    cell = CELLS["square2"]
    one = tile(cell, ((0, 0), (0, 0)))
    assert len(one.vertices) == 2 and one.num_edges == 1
    nine = tile(cell, ((-1, -1), (1, 1)))
    assert len(nine.vertices) == 18
    # square lattice: every qubit has four neighbours
    assert len(nine.adjacency[(0, (0, 0))]) == cell.degree(0) == 4
    assert len(nine.adjacency[(1, (0, 0))]) == cell.degree(1) == 4


def test_tile_without_intra_cell_edges():
    cell = HardwareCell.build(2, [(0, 1, (1, 0))], 2)
    g = tile(cell, ((0, 0), (0, 0)))
    assert g.num_edges == 0


def test_edges_are_canonical():
    assert canonical_edge(1, 0, (1, 0)) == canonical_edge(0, 1, (-1, 0))
    with pytest.raises(ValueError):
        HardwareCell.build(2, [(0, 2, (0, 0))], 2)
    with pytest.raises(ValueError):
        canonical_edge(0, 0, (0, 0))


def test_pauli_cost_examples():
    sys, sigma = worked_example()
    cell = CELLS["square2"]
    assert pauli_cost(sigma.column(0), cell) == 1
    single = (parse_poly("1", 2), parse_poly("0", 2), parse_poly("0", 2), parse_poly("0", 2))
    assert pauli_cost(single, cell) == 0
    costs = [pauli_cost(c, cell) for c in GOLDENS["square1-on-square2"].sigma.columns()]
    assert max(costs) == 2


def test_cost_is_translation_invariant():
    cell = CELLS["kagome3"]
    sites = [(0, (0, 0)), (2, (1, 0)), (1, (0, 1))]
    moved = [(q, (a + 3, b - 2)) for q, (a, b) in sites]
    assert support_cost(sites, cell) == support_cost(moved, cell)


def test_margin_monotone():
    cell = CELLS["heavy-hex5"]
    sites = [(0, (0, 0)), (4, (1, 1)), (2, (0, 1))]
    costs = [support_cost(sites, cell, margin) for margin in range(0, 4)]
    assert all(a >= b for a, b in zip(costs, costs[1:]))
    assert costs[-1] >= len(sites) - 1


def test_catalog_cells_are_connected():
    for cell in CELLS.values():
        g = tile(cell, ((-2, -2), (2, 2)))
        inner = [(q, (0, 0)) for q in range(cell.n)] + [(0, (1, 0)), (0, (0, 1))]
        assert steiner_cost(g, inner) >= len(inner) - 1

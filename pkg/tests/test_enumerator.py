from __future__ import annotations

import itertools
import random

import numpy as np
import pytest

from fermenc.catalog import CELLS, worked_example
from fermenc.enumerator import SearchParams, commutation_partition, enumerate_candidates
from fermenc.hardware import HardwareCell
from fermenc.poly_f2 import LPoly
from fermenc.symplectic import qubit_form

from oracles import brute_candidates


def _key(cands, i):
    return frozenset(
        (cands.site(int(s)), int(l)) for s, l in zip(cands.sites[i], cands.letters[i]) if s >= 0
    )


LONE = HardwareCell.build(1, [], 2, "lone")
CHAIN = HardwareCell.build(2, [(0, 1, (0,)), (1, 0, (1,))], 1, "chain")


def test_single_qubit_letters():
    cands = enumerate_candidates(LONE, SearchParams(range=0, max_weight=1, max_cost=0))
    assert len(cands) == 3
    assert sorted(cands.label(i) for i in range(3)) == ["X0@(0, 0)", "Y0@(0, 0)", "Z0@(0, 0)"]
    assert list(cands.cost) == [0, 0, 0]


def test_square2_home_pair():
    cands = enumerate_candidates(CELLS["square2"], SearchParams(range=0, max_weight=2, max_cost=2))
    zz = frozenset({((0, (0, 0)), 2), ((1, (0, 0)), 2)})
    idx = [i for i in range(len(cands)) if _key(cands, i) == zz]
    assert len(idx) == 1 and cands.cost[idx[0]] == 1
    assert len(cands) == 15


def test_cost_below_weight_bound_is_empty():
    cands = enumerate_candidates(CELLS["square2"], SearchParams(range=1, min_weight=3, max_weight=3, max_cost=1))
    assert len(cands) == 0


@pytest.mark.parametrize(
    "cell,params",
    [
        (CHAIN, SearchParams(range=1, max_weight=3, max_cost=2)),
        (CELLS["square2"], SearchParams(range=1, max_weight=2, max_cost=1)),
        (CELLS["hex2"], SearchParams(range=1, max_weight=3, max_cost=2, min_weight=2)),
        (CELLS["lieb3"], SearchParams(range=0, max_weight=3, max_cost=3)),
    ],
)
def test_complete_against_brute_force(cell, params):
    cands = enumerate_candidates(cell, params)
    got = {_key(cands, i): int(cands.cost[i]) for i in range(len(cands))}
    assert len(got) == len(cands)
    assert got == brute_candidates(cell, params)
    assert cands.min_slack is None or cands.min_slack >= 0


def test_ordering():
    cands = enumerate_candidates(CELLS["square2"], SearchParams())
    keys = [(int(cands.cost[i]), int(cands.weight[i])) for i in range(len(cands))]
    assert keys == sorted(keys)
    assert cands.cutoff(2) == int(np.sum(cands.cost < 2))


def test_signatures_match_polynomial_form():
    cands = enumerate_candidates(CELLS["square2"], SearchParams())
    rng = random.Random(3)
    for anchor in rng.sample(range(len(cands)), 8):
        sig = cands.signature(anchor)
        a = cands.column(anchor)
        for c in rng.sample(range(len(cands)), 40):
            poly = qubit_form(a, cands.column(c))
            for ki, k in enumerate(cands.window):
                bit = int((sig[c, ki // 64] >> np.uint64(ki % 64)) & np.uint64(1))
                assert bit == poly.coefficient(k)
    selfsig = cands.self_signature()
    for c in rng.sample(range(len(cands)), 40):
        poly = qubit_form(cands.column(c), cands.column(c))
        for ki, k in enumerate(cands.window):
            assert int((selfsig[c, ki // 64] >> np.uint64(ki % 64)) & np.uint64(1)) == poly.coefficient(k)


def test_partition_examples():
    cands = enumerate_candidates(LONE, SearchParams(range=1, max_weight=1, max_cost=0))
    x = next(i for i in range(len(cands)) if cands.label(i) == "X0@(0, 0)")
    z = next(i for i in range(len(cands)) if cands.label(i) == "Z0@(0, 0)")
    part = commutation_partition(cands, x)
    assert x in part[(0, 0)][0]
    for k, (comm, anti) in part.items():
        assert (z in anti) == (k == (0, 0))


def test_partition_worked_example():
    sys, sigma = worked_example()
    cands = enumerate_candidates(CELLS["square2"], SearchParams())
    cols = [tuple(c) for c in sigma.columns()]
    index = {tuple(cands.column(i)): i for i in range(len(cands))}
    v, ex = index[cols[0]], index[cols[1]]
    part = commutation_partition(cands, v)
    # omega(V, Ex shifted) has polynomial 1 + x
    anti_at = {k for k, (_, anti) in part.items() if ex in anti}
    assert anti_at == {(0, 0), (1, 0)}


CLIFFORDS = [dict(zip((1, 2, 3), p)) for p in itertools.permutations((1, 2, 3))]


def _relabel(col, n, perms):
    xs, zs = [[] for _ in range(n)], [[] for _ in range(n)]
    for q in range(n):
        for t in col[q].terms | col[q + n].terms:
            letter = (t in col[q].terms) | 2 * (t in col[q + n].terms)
            new = perms[q][letter]
            if new & 1:
                xs[q].append(t)
            if new & 2:
                zs[q].append(t)
    dims = col[0].dims
    return tuple(LPoly.from_terms(t, dims) for t in xs + zs)


def test_clifford_relabelling_preserves_commutation():
    cands = enumerate_candidates(CELLS["square2"], SearchParams())
    rng = random.Random(5)
    for _ in range(60):
        perms = [rng.choice(CLIFFORDS) for _ in range(2)]
        a, b = (cands.column(i) for i in rng.sample(range(len(cands)), 2))
        assert qubit_form(_relabel(a, 2, perms), _relabel(b, 2, perms)) == qubit_form(a, b)


def test_every_candidate_has_canonical_relabelling():
    cands = enumerate_candidates(CELLS["square2"], SearchParams(max_cost=1))
    canon = {tuple(cands.column(i)): i for i in range(len(cands)) if cands.canonical[i]}
    for i in range(len(cands)):
        col = cands.column(i)
        images = {_relabel(col, 2, [p, r]) for p in CLIFFORDS for r in CLIFFORDS}
        assert any(img in canon and cands.cost[canon[img]] == cands.cost[i] for img in images)


def test_params_validation():
    with pytest.raises(ValueError):
        SearchParams(min_weight=0)
    with pytest.raises(ValueError):
        SearchParams(max_weight=1, min_weight=2)
    with pytest.raises(ValueError):
        SearchParams(range=-1)


def test_candidate_limit():
    with pytest.raises(ValueError):
        enumerate_candidates(CELLS["square2"], SearchParams(candidate_limit=10))

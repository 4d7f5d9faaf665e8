from __future__ import annotations

import itertools
import random

import pytest

from fermenc.catalog import SYSTEMS, worked_example
from fermenc.poly_f2 import LPoly, PolyMatrix, dagger_matrix, parse_poly
from fermenc.symplectic import (
    FermionicSystem,
    OddColumnError,
    check_encoding,
    column_weight,
    comm_mismatches,
    fermi_comm_matrix,
    hermitian_square,
    parse_phase,
    partial_check,
    qubit_comm_matrix,
    unused_qubits,
)

from oracles import monomials_commute, paulis_commute


def _shift(t, k):
    return tuple(a + b for a, b in zip(t, k))


def _random_even_column(rng: random.Random, rows: int, dims: int, max_terms: int = 4) -> list[LPoly]:
    while True:
        cells = list(itertools.product(range(-1, 2), repeat=dims))
        size = rng.choice(range(2, max_terms + 1, 2))
        slots = rng.sample([(r, c) for r in range(rows) for c in cells], size)
        col = [LPoly.from_terms([c for r2, c in slots if r2 == r], dims) for r in range(rows)]
        if sum(len(p) for p in col) == size:
            return col


def _random_pauli_column(rng: random.Random, n: int, dims: int, max_sites: int = 3) -> list[LPoly]:
    cells = list(itertools.product(range(-1, 2), repeat=dims))
    sites = rng.sample([(q, c) for q in range(n) for c in cells], rng.randint(1, max_sites))
    xs = [[] for _ in range(n)]
    zs = [[] for _ in range(n)]
    for q, c in sites:
        letter = rng.randint(1, 3)
        if letter & 1:
            xs[q].append(c)
        if letter & 2:
            zs[q].append(c)
    return [LPoly.from_terms(t, dims) for t in xs + zs]


def test_worked_example_matrix():
    sys, sigma = worked_example()
    m = fermi_comm_matrix(sys)
    want = PolyMatrix.from_strings(
        [
            ("0", "1+x", "1+y"),
            ("1+x^-1", "x+x^-1", "1+y+x^-1+yx^-1"),
            ("1+y^-1", "1+y^-1+x+y^-1x", "y+y^-1"),
        ],
        2,
    )
    assert m == want
    assert qubit_comm_matrix(sigma) == want
    assert check_encoding(sys, sigma)


def test_zero_sigma_fails():
    sys, sigma = worked_example()
    assert not check_encoding(sys, PolyMatrix.zeros(4, 3, 2))


def test_partial_check_examples():
    sys, sigma = worked_example()
    cols = sigma.columns()
    assert partial_check(sys, cols, 0)
    assert partial_check(sys, cols, 1)
    assert not partial_check(sys, [cols[0], cols[0], cols[2]], 1)


def test_column_weight_examples():
    sys, sigma = worked_example()
    assert column_weight([LPoly.zero(2)] * 4) == 0
    assert column_weight(sigma.column(0)) == 2


def test_flipped_bit_reports_coefficient():
    sys, sigma = worked_example()
    bad = sigma.with_column(0, (parse_poly("1", 2),) + sigma.column(0)[1:])
    found = comm_mismatches(sys, bad)
    assert found and all(i <= j for i, j, _ in found)
    assert (0, 0, (0, 0)) not in found  # self-commutation is insensitive to the flip
    assert not check_encoding(sys, bad)


def test_equal_columns_zero_constant_term():
    col = (parse_poly("x", 2), parse_poly("1", 2), parse_poly("1+y", 2), parse_poly("0", 2))
    m = qubit_comm_matrix(PolyMatrix.from_columns([col, col], 2))
    assert m[0, 1].coefficient((0, 0)) == 0


def test_zero_single_column():
    m = qubit_comm_matrix(PolyMatrix.zeros(4, 1, 2))
    assert not m[0, 0]


def test_disjoint_support_commutes():
    tau = PolyMatrix.from_strings([("1", "0"), ("1", "0"), ("0", "1"), ("0", "1")], 1)
    sys = FermionicSystem(2, tau, ("A", "B"), (3, 3))
    assert not fermi_comm_matrix(sys)[0, 1]


def test_odd_column_rejected():
    with pytest.raises(OddColumnError):
        FermionicSystem(1, PolyMatrix.from_strings([("1",), ("0",)], 2), ("g",), (0,))


def test_phase_labels():
    assert [parse_phase(t) for t in ("+1", "+i", "-1", "-i")] == [0, 1, 2, 3]
    with pytest.raises(ValueError):
        parse_phase("2")


def test_hermitian_squares():
    # E = -i g g' and V = -i g gbar square to +1
    for sys in SYSTEMS.values():
        assert all(hermitian_square(sys, j) == 1 for j in range(sys.num_ops))


def test_unused_qubits():
    sigma = PolyMatrix.from_strings([("1",), ("0",), ("0",), ("0",)], 2)
    assert unused_qubits(sigma) == [1]


@pytest.mark.parametrize("seed", range(12))
def test_fermi_matrix_against_jordan_wigner(seed):
    rng = random.Random(seed)
    dims = rng.choice([1, 2])
    modes = rng.choice([1, 2])
    cols = [_random_even_column(rng, 2 * modes, dims) for _ in range(rng.randint(1, 3))]
    sys = FermionicSystem(modes, PolyMatrix.from_columns(cols, dims), tuple(f"f{j}" for j in range(len(cols))), (3,) * len(cols))
    m = fermi_comm_matrix(sys)
    assert dagger_matrix(m) == m
    for i, j in itertools.product(range(len(cols)), repeat=2):
        for k in itertools.product(range(-2, 3), repeat=dims):
            a = {(r, _shift(t, k)) for r, p in enumerate(cols[i]) for t in p.terms}
            b = {(r, t) for r, p in enumerate(cols[j]) for t in p.terms}
            assert m[i, j].coefficient(k) == (0 if monomials_commute(a, b) else 1)


@pytest.mark.parametrize("seed", range(12))
def test_qubit_matrix_against_tensor_products(seed):
    rng = random.Random(100 + seed)
    dims = rng.choice([1, 2])
    n = rng.choice([1, 2])
    cols = [_random_pauli_column(rng, n, dims) for _ in range(rng.randint(1, 3))]
    m = qubit_comm_matrix(PolyMatrix.from_columns(cols, dims))
    assert dagger_matrix(m) == m

    def letters(col, k):
        out = {}
        for q in range(n):
            for t in col[q].terms:
                out[(q, _shift(t, k))] = out.get((q, _shift(t, k)), 0) | 1
            for t in col[q + n].terms:
                out[(q, _shift(t, k))] = out.get((q, _shift(t, k)), 0) | 2
        return out

    for i, j in itertools.product(range(len(cols)), repeat=2):
        for k in itertools.product(range(-2, 3), repeat=dims):
            expect = 0 if paulis_commute(letters(cols[i], k), letters(cols[j], (0,) * dims)) else 1
            assert m[i, j].coefficient(k) == expect


@pytest.mark.parametrize("name", sorted(SYSTEMS))
def test_translation_covariance(name):
    sys = SYSTEMS[name]
    m = fermi_comm_matrix(sys)
    shift = (1, -1)
    j = sys.num_ops - 1
    moved = PolyMatrix.from_columns(
        [c if jj != j else tuple(p.translate(shift) for p in c) for jj, c in enumerate(sys.tau.columns())], 2
    )
    m2 = fermi_comm_matrix(FermionicSystem(sys.modes, moved, sys.op_names, sys.op_phases))
    for i in range(sys.num_ops):
        if i != j:
            assert m2[i, j] == m[i, j].translate(shift)
    assert m2[j, j] == m[j, j]

from __future__ import annotations

import random

import numpy as np
import pytest

from fermenc import gf2
from fermenc.catalog import GOLDENS, SYSTEMS, worked_example
from fermenc.poly_f2 import PolyMatrix, parse_poly
from fermenc.stabilizer import (
    Detect,
    InvariantError,
    Patch,
    PhasedMajorana,
    PhasedPauli,
    analyze,
    box,
    distance2_check,
    distance2_from_polynomials,
    fix_signs,
    has_minus_identity,
    hermitian_pauli,
    instantiate,
    kernel_f2,
    solve_sign_system,
    stabilizer_generators,
    superselection_generators,
)
from fermenc.symplectic import FermionicSystem, qubit_form

from oracles import jw_majoranas, kernel_brute, majorana_matrix, pauli_matrix, span


def _key(p: PhasedPauli) -> int:
    return p.x | (p.z << p.n)


# linear algebra


def test_kernel_against_enumeration():
    rng = random.Random(1)
    for _ in range(100):
        rows, cols = rng.randint(1, 10), rng.randint(1, 14)
        density = rng.uniform(0.1, 0.6)
        m = [[int(rng.random() < density) for _ in range(cols)] for _ in range(rows)]
        basis = kernel_f2(m)
        assert span(basis, cols) == kernel_brute(m)
        assert len(basis) == cols - gf2.rank([sum(b << j for j, b in enumerate(r)) for r in m])


def test_kernel_examples():
    assert kernel_f2([[1, 0, 0], [0, 1, 0], [0, 0, 1]]) == []
    assert kernel_f2([[1, 1, 0], [0, 0, 1]]) == [[1, 1, 0]]


def test_solve_random_systems():
    rng = random.Random(2)
    for _ in range(200):
        nv, ne = rng.randint(1, 8), rng.randint(1, 8)
        rows = [rng.getrandbits(nv) for _ in range(ne)]
        rhs = [rng.getrandbits(1) for _ in range(ne)]
        x = gf2.solve(rows, rhs)
        feasible = [v for v in range(1 << nv) if all(gf2.popcount(r & v) % 2 == b for r, b in zip(rows, rhs))]
        if feasible:
            assert x is not None and x in feasible
        else:
            assert x is None


def test_sign_system_examples():
    assert solve_sign_system([[1, 1, 0]], [0]) == [1, 1, 1]
    assert solve_sign_system([[1, 0]], [1]) == [-1, 1]
    with pytest.raises(InvariantError):
        solve_sign_system([[1, 0], [1, 0]], [0, 1])


# phases


def test_pauli_chains_against_matrices():
    rng = random.Random(3)
    for _ in range(200):
        n = rng.randint(1, 4)
        chain = [PhasedPauli(rng.getrandbits(n), rng.getrandbits(n), rng.randrange(4), n) for _ in range(rng.randint(1, 8))]
        prod = chain[0]
        mat = pauli_matrix(chain[0].x, chain[0].z, chain[0].phase, n)
        for p in chain[1:]:
            prod = prod * p
            mat = mat @ pauli_matrix(p.x, p.z, p.phase, n)
        assert np.allclose(mat, pauli_matrix(prod.x, prod.z, prod.phase, n))
        a, b = chain[0], chain[-1]
        ma, mb = pauli_matrix(a.x, a.z, 0, n), pauli_matrix(b.x, b.z, 0, n)
        assert a.commutes(b) == np.allclose(ma @ mb, mb @ ma)


def test_majorana_chains_against_matrices():
    rng = random.Random(4)
    for _ in range(200):
        modes = rng.randint(1, 4)
        slots = 2 * modes
        gam = jw_majoranas(slots)
        chain = [PhasedMajorana(rng.getrandbits(slots), rng.randrange(4), slots) for _ in range(rng.randint(1, 8))]
        prod = chain[0]
        mat = majorana_matrix(chain[0].bits, chain[0].phase, gam)
        for g in chain[1:]:
            prod = prod * g
            mat = mat @ majorana_matrix(g.bits, g.phase, gam)
        assert np.allclose(mat, majorana_matrix(prod.bits, prod.phase, gam))


def test_hermitian_pauli():
    rng = random.Random(5)
    for _ in range(50):
        n = rng.randint(1, 4)
        p = hermitian_pauli(rng.getrandbits(n), rng.getrandbits(n), n)
        m = pauli_matrix(p.x, p.z, p.phase, n)
        assert np.allclose(m, m.conj().T)
        assert p.sign() in (1, -1) or not p.is_scalar


# patches


def test_instantiate_shapes():
    tau = SYSTEMS["square1"].tau
    two = [(0, 0), (0, 1), (1, 0), (1, 1)]
    m = instantiate(tau, two)
    assert m.shape == (8, 12)
    one = instantiate(tau, [(0, 0)])
    assert one.shape == (2, 3)
    assert one.truncated == (True, True, False)
    zero = instantiate(PolyMatrix.zeros(2, 3, 2), box(1, 2))
    assert all(c == 0 for c in zero.columns)


def test_worked_example_generators_commute_with_sigma():
    sys, sigma = worked_example()
    gens = stabilizer_generators(sys, sigma)
    assert gens
    patch = Patch(sys, sigma)
    for g in gens:
        col = patch.pauli_to_column(g)
        for c in sigma.columns():
            assert not qubit_form(col, c)


def test_injective_tau_has_no_stabilizers():
    tau = PolyMatrix.from_strings([("1",), ("1",)], 2)
    sys = FermionicSystem(1, tau, ("V",), (3,))
    sigma = PolyMatrix.from_strings([("0",), ("1",)], 2)
    assert stabilizer_generators(sys, sigma) == []
    assert superselection_generators(sys, sigma) == []


def test_sign_fix_makes_scalar_stabilizer_positive():
    # C is the Majorana product V0 V1 but is encoded as the identity, so V0 V1 C is a scalar stabilizer
    tau = PolyMatrix.from_strings([("1", "0", "1"), ("0", "1", "1"), ("1", "0", "1"), ("0", "1", "1")], 1)
    sys = FermionicSystem(2, tau, ("V0", "V1", "C"), (3, 3, 3))
    sigma = PolyMatrix.from_strings([("0", "0", "0"), ("1", "1", "0")], 1)
    signs = fix_signs(sys, sigma, 0)
    patch = Patch(sys, sigma, 0, signs)
    (v,) = patch.joint_kernel()
    assert patch.stabilizer(v).sign() == 1
    flipped = (-signs[0],) + signs[1:]
    assert Patch(sys, sigma, 0, flipped).stabilizer(v).sign() == -1
    assert not has_minus_identity(stabilizer_generators(sys, sigma, 1, fix_signs(sys, sigma, 1)))


def test_superselection_of_repeated_column():
    tau = PolyMatrix.from_strings([("1", "0"), ("0", "1"), ("1", "0"), ("0", "1")], 1)
    sys = FermionicSystem(2, tau, ("V0", "V1"), (3, 3))
    sigma = PolyMatrix.from_strings([("0", "0"), ("1", "1")], 1)
    patch = Patch(sys, sigma, 1)
    gens = superselection_generators(sys, sigma, 1)
    assert len(gens) == len(patch.region)
    for g in gens:
        col = patch.majorana_to_column(g)
        lo = min(t for p in col for t in p.terms)
        shift = tuple(-a for a in lo)
        assert tuple(p.translate(shift) for p in col) == tuple(parse_poly(t, 1) for t in ("1", "1", "1", "1"))
    # each generator is exactly the product of the two operators placed in one cell
    products = set()
    for r in patch.region:
        a = patch.labels.index((r, 0))
        b = patch.labels.index((r, 1))
        products.add(patch.majoranas[a] * patch.majoranas[b])
    assert set(gens) == products


def test_superselection_stable_across_regions():
    g = GOLDENS["square1-on-square2"]
    sys = SYSTEMS[g.system]
    small = superselection_generators(sys, g.sigma, 1)
    large = superselection_generators(sys, g.sigma, 2)
    assert small == [] and large == []
    assert distance2_check(sys, g.sigma, 1) == distance2_check(sys, g.sigma, 2)


def test_golden_stabilizer_column_in_patch_group():
    g = GOLDENS["square1-on-square2"]
    sys = SYSTEMS[g.system]
    rep = analyze(sys, g.sigma, 1)
    keys = [_key(p) for p in rep.generators]
    col = tuple(parse_poly(t, 2) for t in g.stabilizers[0])
    p = rep.patch.column_to_pauli(col)
    assert p is not None and gf2.in_span(_key(p), keys)


# the listed stabilizer columns that fail to commute with their own encoded operators
MISPRINTED = {
    ("square1-on-tilted-sq2", 0),
    ("spinful-sq2-on-hex-bilayer4", 0),
    ("spinful-sq2-on-hex-bilayer4", 1),
    ("spinful-sq2-on-sq-bilayer4", 0),
    ("spinful-sq2-on-sq-bilayer4", 1),
    ("kagome-alt3-fermi-on-trunc-sq4", 0),
}


@pytest.mark.parametrize("name", sorted(GOLDENS))
def test_golden_stabilizers(name):
    g = GOLDENS[name]
    sys = SYSTEMS[g.system]
    rep = analyze(sys, g.sigma, 1)
    for _, col in rep.shapes:
        assert not any(qubit_form(col, c) for c in g.sigma.columns())
    for i, listed in enumerate(g.stabilizers):
        col = tuple(parse_poly(t, 2) for t in listed)
        commutes = not any(qubit_form(col, c) for c in g.sigma.columns())
        assert commutes == ((name, i) not in MISPRINTED)
    assert not has_minus_identity(rep.generators)
    flag = distance2_check(sys, g.sigma, 1, rep.generators)
    assert flag.value == g.error_detecting
    assert distance2_from_polynomials(rep.columns, g.sigma) == flag


def test_distance_examples():
    assert distance2_check(SYSTEMS["square1"], GOLDENS["square1-on-square2"].sigma) == Detect.YES
    assert distance2_check(SYSTEMS["square1"], GOLDENS["square1-on-hex-bilayer4"].sigma) == Detect.YES_STAR
    assert distance2_check(SYSTEMS["hex2-fermi"], GOLDENS["hex2-fermi-on-lieb3"].sigma) == Detect.NO


def test_minus_identity_detection():
    z = PhasedPauli(0, 1, 0, 1)
    minus_z = PhasedPauli(0, 1, 2, 1)
    assert has_minus_identity([z, minus_z])
    assert not has_minus_identity([z, z])

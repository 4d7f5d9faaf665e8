from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fermenc.poly_f2 import (
    LPoly,
    PolyMatrix,
    PolySyntaxError,
    dagger_matrix,
    matmul,
    parse_poly,
    translate,
    vec_inner,
)


def P(text: str, dims: int = 2) -> LPoly:
    return parse_poly(text, dims)


def test_parse_examples():
    assert P("1+x").terms == {(0, 0), (1, 0)}
    assert P("0").terms == frozenset()
    assert parse_poly("x+x", 1).terms == frozenset()
    assert P("x^-1y").terms == {(-1, 1)}
    assert P("x^2 y^-3 + 1").terms == {(2, -3), (0, 0)}


@pytest.mark.parametrize("bad", ["1+", "x^", "q", "x^y", "2x", "(1+x)"])
def test_parse_errors_are_positioned(bad):
    with pytest.raises(PolySyntaxError) as e:
        parse_poly(bad, 2)
    assert 0 <= e.value.pos <= len(bad)


def test_variable_out_of_range():
    with pytest.raises(PolySyntaxError):
        parse_poly("y", 1)


def test_add_examples():
    assert P("1") + P("1") == P("0")
    assert LPoly.from_terms([(0, 0), (1, 0)], 2) + LPoly.from_terms([(1, 0), (0, 1)], 2) == P("1+y")
    assert P("1+x") + P("1+y") == P("x+y")


def test_mul_examples():
    assert P("1+x") * P("1+x") == P("1+x^2")
    assert P("1") * P("x+y^-1") == P("x+y^-1")
    assert P("1+x") * P("1+y") == P("1+x+y+xy")


def test_dagger_examples():
    assert P("1+x").dagger() == P("1+x^-1")
    assert P("1").dagger() == P("1")
    assert P("xy^-1").dagger() == P("x^-1y")


def test_translate_examples():
    assert translate(P("1"), (1, 0)) == P("x")
    assert translate(P("1+y"), (0, -1)) == P("y^-1+1")


def test_str_round_trip():
    for text in ["0", "1", "1+x", "x^-1y+xy^2", "x+y+xy"]:
        assert P(str(P(text))) == P(text)


def test_matrix_identity_and_dagger():
    a = PolyMatrix.from_strings([("1+x", "y"), ("0", "x^-1")], 2)
    eye = PolyMatrix.identity(2, 2)
    assert matmul(eye, a) == a
    assert dagger_matrix(dagger_matrix(a)) == a


polys = st.lists(st.tuples(st.integers(-2, 2), st.integers(-2, 2)), max_size=6).map(lambda t: LPoly.from_terms(t, 2))
shifts = st.tuples(st.integers(-3, 3), st.integers(-3, 3))


@settings(max_examples=150, deadline=None)
@given(polys, polys, polys)
def test_ring_axioms(a, b, c):
    zero, one = LPoly.zero(2), LPoly.one(2)
    assert a + b == b + a
    assert (a + b) + c == a + (b + c)
    assert a + zero == a and a + a == zero
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * one == a


@settings(max_examples=150, deadline=None)
@given(polys, polys, shifts)
def test_dagger_and_translation(a, b, k):
    assert (a * b).dagger() == a.dagger() * b.dagger()
    assert a.dagger().dagger() == a
    assert translate(translate(a, k), tuple(-x for x in k)) == a
    assert translate(a * b, k) == translate(a, k) * b


@settings(max_examples=100, deadline=None)
@given(st.lists(polys, min_size=2, max_size=2), st.lists(polys, min_size=2, max_size=2))
def test_vec_inner_hermitian(u, v):
    assert vec_inner(u, v).dagger() == vec_inner(v, u)


@settings(max_examples=60, deadline=None)
@given(st.lists(polys, min_size=4, max_size=4), st.lists(polys, min_size=4, max_size=4))
def test_matmul_dagger_reverses(ea, eb):
    a = PolyMatrix.from_columns([ea[:2], ea[2:]], 2)
    b = PolyMatrix.from_columns([eb[:2], eb[2:]], 2)
    assert dagger_matrix(matmul(a, b)) == matmul(dagger_matrix(b), dagger_matrix(a))

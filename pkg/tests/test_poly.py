from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from golodlab import (
    NOT_HOMOGENEOUS,
    QQ,
    ZERO_DEGREE,
    FieldSpec,
    HomogeneousIdeal,
    PolyParseError,
    derivative_ideal,
    parse_poly,
)
from golodlab.errors import GolodlabError, RingMismatchError

from conftest import ring


def test_parse_basic():
    S = ring("xy")
    p = parse_poly("x^2 + 2*x*y", S)
    assert len(p.terms) == 2
    assert p.terms[(2, 0)] == Fraction(1)
    assert p.terms[(1, 1)] == Fraction(2)


def test_parse_zero():
    S = ring("xy")
    assert parse_poly("0", S).is_zero()
    assert parse_poly("x - x", S).is_zero()


def test_parse_characteristic_reduction():
    S = ring("x", field=FieldSpec.prime(3))
    assert parse_poly("3*x^3", S).is_zero()
    p = parse_poly("x^3", S)
    assert p.terms[(3,)] == 1


def test_parse_errors_have_positions():
    S = ring("xy")
    with pytest.raises(PolyParseError) as e:
        parse_poly("x^2 + z", S)
    assert e.value.position == 6
    with pytest.raises(PolyParseError):
        parse_poly("x +", S)
    with pytest.raises(PolyParseError):
        parse_poly("x y", S)  # implicit multiplication is not in the grammar
    with pytest.raises(PolyParseError):
        parse_poly("1/2", ring("x", field=FieldSpec.prime(2)))


def test_arith_examples():
    S = ring("xy")
    x, y = S.variable(0), S.variable(1)
    assert (x + y) * (x - y) == parse_poly("x^2 - y^2", S)
    p = parse_poly("x^2 + 3*x*y", S)
    assert (p + p.scale(QQ.of(-1))).is_zero()
    S2 = ring("xy", field=FieldSpec.prime(2))
    q = parse_poly("x + y", S2)
    assert q * q == parse_poly("x^2 + y^2", S2)


def test_ring_mismatch():
    a = parse_poly("x", ring("xy"))
    b = parse_poly("x", ring("xz"))
    with pytest.raises(RingMismatchError):
        a + b


def test_weighted_degree():
    S = ring("xy")
    assert parse_poly("x^2*y", S).weighted_degree() == 3
    W = ring("xy", [2, 1])
    assert parse_poly("x + y^2", W).weighted_degree() == 2
    assert parse_poly("x + y", W).weighted_degree() is NOT_HOMOGENEOUS
    assert parse_poly("0", W).weighted_degree() is ZERO_DEGREE


def test_partial_derivative():
    S = ring("x")
    assert parse_poly("x^3", S).partial_derivative(0) == parse_poly("3*x^2", S)
    F3 = ring("x", field=FieldSpec.prime(3))
    assert parse_poly("x^3", F3).partial_derivative(0).is_zero()
    S2 = ring("xy")
    assert parse_poly("x^2*y", S2).partial_derivative(1) == parse_poly("x^2", S2)


def test_derivative_ideal_examples():
    S = ring("x")
    dI = derivative_ideal(HomogeneousIdeal(S, [parse_poly("x^3", S)]))
    assert [str(g) for g in dI.gens] == ["3*x^2"]
    S2 = ring("xy")
    dI = derivative_ideal(HomogeneousIdeal(S2, [parse_poly("x^2", S2), parse_poly("y^2", S2)]))
    assert sorted(str(g) for g in dI.gens) == ["2*x", "2*y"]
    dI = derivative_ideal(HomogeneousIdeal(S2, [parse_poly("x*y", S2)]))
    assert sorted(str(g) for g in dI.gens) == ["x", "y"]


def test_nonhomogeneous_ideal_generator_rejected():
    S = ring("xy")
    with pytest.raises(GolodlabError):
        HomogeneousIdeal(S, [parse_poly("x + y^2", S)])


# -- property tests ---------------------------------------------------------

coeffs = st.integers(min_value=-9, max_value=9)
exps = st.integers(min_value=0, max_value=5)


def polys(S, nterms=4):
    term = st.tuples(st.tuples(*([exps] * S.nvars)), coeffs)
    return st.lists(term, max_size=nterms).map(
        lambda ts: S.from_terms((m, S.field.of(c)) for m, c in ts)
    )


@given(data=st.data())
@settings(max_examples=60, deadline=None)
def test_printer_parser_round_trip(data):
    S = ring("xyz")
    p = data.draw(polys(S))
    assert parse_poly(str(p), S) == p


@given(data=st.data())
@settings(max_examples=60, deadline=None)
def test_round_trip_with_fractions(data):
    S = ring("xy")
    p = data.draw(polys(S))
    q = p.scale(Fraction(1, 3))
    assert parse_poly(str(q), S) == q


@given(data=st.data())
@settings(max_examples=40, deadline=None)
def test_leibniz(data):
    S = ring("xyz")
    p = data.draw(polys(S))
    q = data.draw(polys(S))
    for i in range(S.nvars):
        lhs = (p * q).partial_derivative(i)
        rhs = p * q.partial_derivative(i) + q * p.partial_derivative(i)
        assert lhs == rhs


@given(data=st.data())
@settings(max_examples=40, deadline=None)
def test_euler_weighted(data):
    W = ring("xyz", [1, 2, 3])
    d = data.draw(st.integers(min_value=1, max_value=7))
    monos = W.monomials_of_degree(d)
    if not monos:
        return
    cs = data.draw(st.lists(coeffs, min_size=len(monos), max_size=len(monos)))
    p = W.from_terms((m, W.field.of(c)) for m, c in zip(monos, cs))
    euler = W.zero_poly()
    for i in range(W.nvars):
        euler = euler + (W.variable(i) * p.partial_derivative(i)).scale(W.field.of(W.weights[i]))
    assert euler == p.scale(W.field.of(d))

import pytest

from golodlab import (
    QQ,
    FieldSpec,
    HomogeneousIdeal,
    WeightedPolyRing,
    parse_poly,
    quotient_algebra,
    residue_field,
)
from golodlab.cli import shift_module


def ring(varnames, weights=None, field=QQ):
    names = list(varnames)
    return WeightedPolyRing(field, names, weights or [1] * len(names))


def ideal(S, *texts):
    return HomogeneousIdeal(S, [parse_poly(t, S) for t in texts])


def quotient(texts, varnames="xy", weights=None, dcap=8, field=QQ):
    S = ring(varnames, weights, field)
    return S, quotient_algebra(S, ideal(S, *texts), dcap)


def shifted_k(A, s=1):
    return shift_module(residue_field(A), s)


@pytest.fixture
def S2():
    return ring("xy")


@pytest.fixture
def S1():
    return ring("x")

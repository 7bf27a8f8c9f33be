import pytest

from golodlab import TruncatedSeries
from golodlab.errors import GolodlabError, InternalInvariantError

from oracles import naive_series_quotient


def test_mul_and_flags():
    a = TruncatedSeries([1, 1, 1], [True, True, False])
    b = TruncatedSeries([1, 2, 3])
    c = a.mul(b)
    assert c.coeffs == [1, 3, 6]
    assert c.complete == [True, True, False]


def test_inverse_geometric():
    s = TruncatedSeries([1, -1, 0, 0, 0, 0])
    assert s.inverse().coeffs == [1, 1, 1, 1, 1, 1]
    with pytest.raises(GolodlabError):
        TruncatedSeries([2, 1]).inverse()


def test_division_matches_long_division_oracle():
    num, den = [1, 2, 1, 0, 0, 0, 0], [1, 0, -3, -2, 0, 0, 0]
    q = TruncatedSeries(num).div(TruncatedSeries(den))
    assert q.coeffs == naive_series_quotient(num, den, 7)
    assert q.coeffs == [1, 2, 4, 8, 16, 32, 64]


def test_agreement_and_difference():
    a = TruncatedSeries([1, 2, 3, 9], [True, True, True, False])
    b = TruncatedSeries([1, 2, 3, 4])
    assert a.agrees_with(b)
    assert a.first_complete_difference(b) is None
    c = TruncatedSeries([1, 2, 4, 4])
    assert a.first_complete_difference(c) == 2


def test_termwise_bound_invariant():
    bound = TruncatedSeries([1, 2, 3])
    TruncatedSeries([1, 2, 3]).assert_termwise_at_most(bound)
    TruncatedSeries([1, 1, 0], [True, False, False]).assert_termwise_at_most(bound)
    with pytest.raises(InternalInvariantError):
        TruncatedSeries([1, 2, 4]).assert_termwise_at_most(bound)


def test_format_line():
    s = TruncatedSeries([1, 2, 4, 8, 16], [True] * 5)
    assert s.format("P") == "P(t) = 1 + 2t + 4t^2 + 8t^3 + 16t^4 [complete through t^4]"
    t = TruncatedSeries([1, 1], [True, False])
    assert "complete through t^0" in t.format("P")


def test_shift_and_scalar():
    s = TruncatedSeries([1, 1, 1, 1])
    assert s.shift(1).coeffs == [0, 1, 1, 1]
    assert s.add_scalar(-1).coeffs == [0, 1, 1, 1]

import random

from golodlab import QQ, FieldSpec
from golodlab.linalg import (
    SpanBuilder,
    matrix_times_vector,
    nullspace,
    rank,
    solve,
    vec_is_zero,
)


def _mat(field, rows):
    return [[field.of(c) for c in row] for row in rows]


def test_rank_and_nullspace_basics():
    A = _mat(QQ, [[1, 2, 3], [2, 4, 6], [0, 1, 1]])
    assert rank(QQ, A) == 2
    ns = nullspace(QQ, A, 3)
    assert len(ns) == 1
    assert vec_is_zero(QQ, matrix_times_vector(QQ, A, ns[0]))


def test_solve_consistent_and_inconsistent():
    A = _mat(QQ, [[1, 1], [0, 1]])
    x = solve(QQ, A, [QQ.of(3), QQ.of(1)], 2)
    assert x == [QQ.of(2), QQ.of(1)]
    B = _mat(QQ, [[1, 1], [1, 1]])
    assert solve(QQ, B, [QQ.of(0), QQ.of(1)], 2) is None


def test_solve_pivot_rules_agree_on_solvability():
    rng = random.Random(7)
    F = FieldSpec.prime(101)
    for _ in range(30):
        m, n = rng.randint(1, 5), rng.randint(1, 5)
        A = [[F.of(rng.randint(-4, 4)) for _ in range(n)] for _ in range(m)]
        xs = [F.of(rng.randint(-4, 4)) for _ in range(n)]
        b = matrix_times_vector(F, A, xs)
        for rule in ("first", "last"):
            x = solve(F, A, b, n, pivot_rule=rule)
            assert x is not None
            assert matrix_times_vector(F, A, x) == b


def test_nullspace_random_consistency():
    rng = random.Random(11)
    for field in (QQ, FieldSpec.prime(101)):
        for _ in range(25):
            m, n = rng.randint(1, 6), rng.randint(1, 6)
            A = [[field.of(rng.randint(-3, 3)) for _ in range(n)] for _ in range(m)]
            ns = nullspace(field, A, n)
            assert rank(field, A) + len(ns) == n
            for v in ns:
                assert vec_is_zero(field, matrix_times_vector(field, A, v))


def test_span_builder_membership():
    sb = SpanBuilder(QQ, 3)
    assert sb.add([QQ.of(1), QQ.of(1), QQ.of(0)])
    assert sb.add([QQ.of(0), QQ.of(1), QQ.of(1)])
    assert not sb.add([QQ.of(1), QQ.of(2), QQ.of(1)])
    assert sb.contains([QQ.of(2), QQ.of(3), QQ.of(1)])
    assert not sb.contains([QQ.of(0), QQ.of(0), QQ.of(1)])
    assert sb.rank == 2


def test_nullspace_deterministic():
    A = _mat(QQ, [[1, 2, 0, 1], [0, 0, 1, 1]])
    assert nullspace(QQ, A, 4) == nullspace(QQ, A, 4)

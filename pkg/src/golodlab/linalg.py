"""Exact dense linear algebra over a FieldSpec.

Matrices are lists of rows (lists of field elements).  Everything is
deterministic: pivots are chosen by fixed scan order so reruns give
byte-identical bases.
"""
from __future__ import annotations

from .fields import FieldSpec


def zero_vector(field: FieldSpec, n: int) -> list:
    z = field.zero()
    return [z] * n


def vec_add(field: FieldSpec, u: list, v: list) -> list:
    return [field.add(a, b) for a, b in zip(u, v)]


def vec_scale(field: FieldSpec, c, v: list) -> list:
    return [field.mul(c, a) for a in v]

def vec_is_zero(field: FieldSpec, v: list) -> bool:
    return all(field.is_zero(a) for a in v)


class SpanBuilder:
    """Incrementally maintained reduced row space; supports membership tests.

    Rows are kept fully reduced (RREF discipline), so ``reduce`` returns the
    canonical residual of a vector modulo the span.
    """

    def __init__(self, field: FieldSpec, width: int):
        self.field = field
        self.width = width
        self.rows: list[list] = []
        self.pivots: list[int] = []

    @property
    def rank(self) -> int:
        return len(self.rows)

    def reduce(self, vec: list) -> list:
        F = self.field
        v = list(vec)
        for row, p in zip(self.rows, self.pivots):
            c = v[p]
            if F.is_zero(c):
                continue
            for j in range(p, self.width):
                rj = row[j]
                if not F.is_zero(rj):
                    v[j] = F.sub(v[j], F.mul(c, rj))
        return v

    def contains(self, vec: list) -> bool:
        return vec_is_zero(self.field, self.reduce(vec))

    def add(self, vec: list) -> bool:
        """Reduce and insert; returns True when the vector enlarged the span."""
        F = self.field
        v = self.reduce(vec)
        pivot = next((j for j, a in enumerate(v) if not F.is_zero(a)), None)
        if pivot is None:
            return False
        inv = F.inv(v[pivot])
        v = [F.mul(inv, a) for a in v]
        # back-substitute into existing rows to keep full reduction
        for row in self.rows:
            c = row[pivot]
            if F.is_zero(c):
                continue
            for j in range(pivot, self.width):
                vj = v[j]
                if not F.is_zero(vj):
                    row[j] = F.sub(row[j], F.mul(c, vj))
        # insert keeping pivot columns sorted (determinism of iteration)
        at = 0
        while at < len(self.pivots) and self.pivots[at] < pivot:
            at += 1
        self.rows.insert(at, v)
        self.pivots.insert(at, pivot)
        return True

    def basis(self) -> list[list]:
        return [list(r) for r in self.rows]


def rank(field: FieldSpec, matrix: list[list]) -> int:
    if not matrix:
        return 0
    sb = SpanBuilder(field, len(matrix[0]))
    for row in matrix:
        sb.add(row)
    return sb.rank


def _rref(field: FieldSpec, matrix: list[list], ncols: int, pivot_rule: str = "first"):
    """Return (rref rows, pivot column list).  ``pivot_rule`` picks which
    candidate row supplies the pivot: "first" or "last" nonzero."""
    F = field
    rows = [list(r) for r in matrix]
    m = len(rows)
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        choices = [i for i in range(r, m) if not F.is_zero(rows[i][col])]
        if not choices:
            continue
        i = choices[0] if pivot_rule == "first" else choices[-1]
        rows[r], rows[i] = rows[i], rows[r]
        inv = F.inv(rows[r][col])
        rows[r] = [F.mul(inv, a) for a in rows[r]]
        for k in range(m):
            if k == r:
                continue
            c = rows[k][col]
            if F.is_zero(c):
                continue
            rk, rr = rows[k], rows[r]
            for j in range(col, ncols):
                aj = rr[j]
                if not F.is_zero(aj):
                    rk[j] = F.sub(rk[j], F.mul(c, aj))
        pivots.append(col)
        r += 1
        if r == m:
            break
    return rows[:r], pivots


def nullspace(field: FieldSpec, matrix: list[list], ncols: int) -> list[list]:
    """Deterministic kernel basis of the linear map given by ``matrix`` acting
    on column vectors (one basis vector per free column, free coordinate 1)."""
    F = field
    if not matrix:
        return [[F.one() if j == i else F.zero() for j in range(ncols)] for i in range(ncols)]
    rows, pivots = _rref(F, matrix, ncols)
    pivot_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        v = zero_vector(F, ncols)
        v[free] = F.one()
        for row, p in zip(rows, pivots):
            c = row[free]
            if not F.is_zero(c):
                v[p] = F.neg(c)
        basis.append(v)
    return basis


def solve(field: FieldSpec, matrix: list[list], rhs: list, ncols: int, pivot_rule: str = "first"):
    """One solution x of matrix @ x = rhs (free coordinates zero), or None.

    With a fixed matrix and pivot rule the solution depends linearly on rhs.
    """
    F = field
    if not matrix:
        return zero_vector(F, ncols) if vec_is_zero(F, rhs) else None
    aug = [list(r) + [b] for r, b in zip(matrix, rhs)]
    rows, pivots = _rref(F, aug, ncols + 1, pivot_rule)
    x = zero_vector(F, ncols)
    for row, p in zip(rows, pivots):
        if p == ncols:
            return None  # pivot in the rhs column: inconsistent
        x[p] = row[ncols]
    return x


def matrix_times_vector(field: FieldSpec, matrix: list[list], vec: list) -> list:
    F = field
    out = []
    for row in matrix:
        acc = F.zero()
        for a, b in zip(row, vec):
            if not (F.is_zero(a) or F.is_zero(b)):
                acc = F.add(acc, F.mul(a, b))
        out.append(acc)
    return out


def matrix_product(field: FieldSpec, A: list[list], B: list[list]) -> list[list]:
    F = field
    if not B:
        return [[] for _ in A]
    ncols = len(B[0])
    out = []
    for row in A:
        acc = zero_vector(F, ncols)
        for a, brow in zip(row, B):
            if F.is_zero(a):
                continue
            for j, b in enumerate(brow):
                if not F.is_zero(b):
                    acc[j] = F.add(acc[j], F.mul(a, b))
        out.append(acc)
    return out


def transpose(matrix: list[list], ncols: int) -> list[list]:
    if not matrix:
        return [[] for _ in range(ncols)]
    return [list(col) for col in zip(*matrix)]


def extend_to_basis(field: FieldSpec, span_vectors: list[list], candidates: list[list], width: int) -> list[int]:
    """Indices of candidates greedily completing span_vectors to a larger span."""
    sb = SpanBuilder(field, width)
    for v in span_vectors:
        sb.add(v)
    chosen = []
    for i, v in enumerate(candidates):
        if sb.add(v):
            chosen.append(i)
    return chosen

"""Truncated minimal graded free resolutions by degreewise kernel computation.

A homological step's Betti row is exact inside the degree window; the
``step_complete`` flag certifies that nothing exists beyond the window
(possible when the algebra is a certified-finite object, or when an explicit
syzygy degree bound is supplied, as for polynomial rings).
"""
from __future__ import annotations

from .algebra import (
    FiniteGradedAlgebra,
    FiniteGradedModule,
    GradedAlgebraMap,
    HomogeneousIdeal,
    min_gens_module,
    polynomial_ring_algebra,
    presented_module,
    residue_field,
)
from .errors import CapError, GolodlabError, InternalInvariantError
from .groebner import buchberger
from .linalg import SpanBuilder, nullspace, rank, solve, vec_is_zero, zero_vector
from .poly import Poly, WeightedPolyRing
from .series import TruncatedSeries

DEFAULT_H_CAP = 6


class FreeModule:
    """Graded free module over A on generators of given internal degrees."""

    def __init__(self, algebra: FiniteGradedAlgebra, gen_degrees: list[int]):
        self.algebra = algebra
        self.gen_degrees = list(gen_degrees)

    def dim(self, d: int) -> int:
        return sum(self.algebra.dim(d - a) for a in self.gen_degrees)

    def offsets(self, d: int) -> list[int]:
        offs, acc = [], 0
        for a in self.gen_degrees:
            offs.append(acc)
            acc += self.algebra.dim(d - a)
        return offs

    def act(self, e: int, d: int, avec: list, fvec: list) -> list:
        """Multiply an element of F at degree d by an algebra vector of degree e."""
        A = self.algebra
        F = A.field
        out = zero_vector(F, self.dim(d + e))
        offs_d = self.offsets(d)
        offs_de = self.offsets(d + e)
        for j, a in enumerate(self.gen_degrees):
            nd = A.dim(d - a)
            if nd == 0:
                continue
            block = fvec[offs_d[j]: offs_d[j] + nd]
            if all(F.is_zero(c) for c in block):
                continue
            prod = A.mul(e, d - a, avec, block)
            base = offs_de[j]
            for t, c in enumerate(prod):
                if not F.is_zero(c):
                    out[base + t] = F.add(out[base + t], c)
        return out

    def generator_vector(self, j: int, d: int) -> list:
        """The j-th generator as a vector in the degree-d piece (d = its degree)."""
        A = self.algebra
        v = zero_vector(A.field, self.dim(d))
        v[self.offsets(d)[j]] = A.field.one()
        return v


class BettiTable:
    """beta_{i,j} with per-step completeness status."""

    def __init__(self, rows: list[dict[int, int]], step_complete: list[bool], d_cap: int):
        self.rows = rows
        self.step_complete = list(step_complete)
        self.d_cap = d_cap

    @property
    def h_cap(self) -> int:
        return len(self.rows) - 1

    def total(self, i: int) -> int:
        return sum(self.rows[i].values())

    def poincare(self) -> TruncatedSeries:
        return TruncatedSeries([self.total(i) for i in range(len(self.rows))], self.step_complete)

    def to_json(self) -> dict:
        return {
            "rows": [sorted(row.items()) for row in self.rows],
            "step_complete": list(self.step_complete),
            "d_cap": self.d_cap,
        }

    def format(self) -> str:
        lines = ["  i | " + " ".join(f"j={j}" for j in range(self.d_cap + 1))]
        for i, row in enumerate(self.rows):
            mark = " " if self.step_complete[i] else "?"
            lines.append(
                f"{i:>3}{mark}| " + " ".join(f"{row.get(j, 0):>3}" for j in range(self.d_cap + 1))
            )
        return "\n".join(lines)


class ResolutionData:
    def __init__(self, algebra: FiniteGradedAlgebra, module: FiniteGradedModule,
                 h_cap: int, d_cap: int):
        self.algebra = algebra
        self.module = module
        self.h_cap = h_cap
        self.d_cap = d_cap
        self.steps: list[dict] = []          # {"degrees": [...], "images": [...]}
        self.step_complete: list[bool] = []
        self.finished_at: int | None = None  # first step whose kernel vanished in-window
        self.window_exhausted_at: int | None = None
        self._frees: list[FreeModule] = []
        self._matrices: dict = {}

    def free(self, i: int) -> FreeModule:
        return self._frees[i]

    def betti(self) -> BettiTable:
        rows = []
        for step in self.steps:
            row: dict[int, int] = {}
            for a in step["degrees"]:
                row[a] = row.get(a, 0) + 1
            rows.append(row)
        while len(rows) <= self.h_cap:
            rows.append({})
        flags = list(self.step_complete)
        while len(flags) <= self.h_cap:
            flags.append(flags[-1] if flags else True)
        return BettiTable(rows[: self.h_cap + 1], flags[: self.h_cap + 1], self.d_cap)

    def matrix(self, i: int, d: int) -> list[list]:
        """Matrix of d_i at internal degree d (rows = target basis, cols = source)."""
        key = (i, d)
        if key in self._matrices:
            return self._matrices[key]
        A = self.algebra
        F = A.field
        src = self.free(i)
        if i == 0:
            trg_dim = self.module.dim(d)
        else:
            trg_dim = self.free(i - 1).dim(d)
        cols = []
        offs = src.offsets(d)
        for j, a in enumerate(src.gen_degrees):
            nd = A.dim(d - a)
            img = self.steps[i]["images"][j]
            for b in range(nd):
                avec = A.basis_vector(d - a, b)
                if i == 0:
                    col = self.module.act(d - a, a, avec, img)
                else:
                    col = self.free(i - 1).act(d - a, a, avec, img)
                cols.append(col)
        del offs
        mat = [[cols[c][r] for c in range(len(cols))] for r in range(trg_dim)]
        self._matrices[key] = mat
        return mat

    def max_gen_degree(self, i: int) -> int:
        degs = self.steps[i]["degrees"]
        return max(degs) if degs else 0


def minimal_resolution(A: FiniteGradedAlgebra, M: FiniteGradedModule,
                       h_cap: int, d_cap: int,
                       syzygy_bound: int | None = None) -> ResolutionData:
    """Degreewise kernel resolution of M over A through (h_cap, d_cap).

    ``syzygy_bound``: a caller-certified internal degree beyond which no step
    of the minimal resolution has a generator (used for polynomial rings).
    """
    if h_cap < 1 or d_cap < 1:
        raise CapError("caps must be positive")
    if d_cap > A.dcap or d_cap > M.dcap:
        raise CapError("resolution window exceeds the stored window of the algebra or module")
    res = ResolutionData(A, M, h_cap, d_cap)

    gens0 = min_gens_module(M)
    res.steps.append({"degrees": [d for d, _, _ in gens0], "images": [v for _, v, _ in gens0]})
    res._frees.append(FreeModule(A, res.steps[0]["degrees"]))
    if syzygy_bound is not None:
        step0_complete = max((d for d, _, _ in gens0), default=0) <= min(d_cap, syzygy_bound)
    else:
        step0_complete = M.complete
    res.step_complete.append(step0_complete)

    for i in range(h_cap):
        src = res.free(i)
        found: list[tuple[int, list]] = []
        kernel_seen = False
        for d in range(d_cap + 1):
            nsrc = src.dim(d)
            if nsrc == 0:
                continue
            mat = res.matrix(i, d)
            ker = nullspace(A.field, mat, nsrc) if mat else [
                [A.field.one() if t == s else A.field.zero() for t in range(nsrc)]
                for s in range(nsrc)
            ]
            if not ker:
                continue
            kernel_seen = True
            sb = SpanBuilder(A.field, nsrc)
            for gd, gvec in found:
                e = d - gd
                if e < 1 or A.dim(e) == 0:
                    continue
                for b in range(A.dim(e)):
                    sb.add(src.act(e, gd, A.basis_vector(e, b), gvec))
            for v in ker:
                if sb.add(v):
                    found.append((d, v))

        prev_ok = res.step_complete[-1]
        if syzygy_bound is not None:
            visible = syzygy_bound <= d_cap
        elif A.complete:
            visible = res.max_gen_degree(i) + A.top() <= d_cap
        else:
            visible = False
        step_ok = prev_ok and visible

        if not found:
            if not kernel_seen and step_ok:
                res.finished_at = i + 1
                # resolution provably ends here: remaining rows are exact zeros
                remaining = h_cap - i
                for _ in range(remaining):
                    res.steps.append({"degrees": [], "images": []})
                    res._frees.append(FreeModule(A, []))
                    res.step_complete.append(step_ok)
                return res
            if kernel_seen:
                raise InternalInvariantError("nonzero kernel produced no generators")
            res.window_exhausted_at = i + 1
        res.steps.append({"degrees": [d for d, _ in found], "images": [v for _, v in found]})
        res._frees.append(FreeModule(A, res.steps[-1]["degrees"]))
        res.step_complete.append(step_ok)
    return res


def default_caps(max_m_gen_degree: int, max_module_gen_degree: int,
                 h_cap: int | None = None) -> tuple[int, int]:
    h = h_cap if h_cap is not None else DEFAULT_H_CAP
    return h, h * max(1, max_m_gen_degree) + max(0, max_module_gen_degree) + 2


def poincare_series(table: BettiTable) -> TruncatedSeries:
    return table.poincare()


def hilbert_series(X, length: int | None = None) -> TruncatedSeries:
    """Dimension series of an algebra or module; exact inside its window."""
    dims = X.hilbert()
    n = length if length is not None else len(dims)
    if n <= len(dims):
        return TruncatedSeries(dims[:n])
    if X.complete:
        return TruncatedSeries(dims + [0] * (n - len(dims)))
    return TruncatedSeries(dims + [0] * (n - len(dims)),
                           [True] * len(dims) + [False] * (n - len(dims)))


# ---------------------------------------------------------------------------
# resolutions over the polynomial ring (finite, with certified window)
# ---------------------------------------------------------------------------


def syzygy_degree_bound(S: WeightedPolyRing, I: HomogeneousIdeal) -> int:
    """Internal degree beyond which the minimal S-resolution of S/I is silent.

    Uses regularity of the leading-term ideal: every Betti degree of S/I is at
    most deg(lcm of the Groebner leading monomials) - 1 + (number of variables),
    via the Taylor complex of the initial ideal.
    """
    gb = buchberger(I)
    if not gb.polys:
        return 0
    lcm = (0,) * S.nvars
    for lm in gb.leading_monomials:
        lcm = S.mono_lcm(lcm, lm)
    return S.mono_degree(lcm) + S.nvars


def resolution_over_poly_ring(S: WeightedPolyRing, I: HomogeneousIdeal,
                              h_cap: int | None = None) -> ResolutionData:
    """Finite minimal graded free resolution of S/I over S."""
    bound = syzygy_degree_bound(S, I)
    h = h_cap if h_cap is not None else S.nvars + 1
    d_cap = max(bound, 2 * max(S.weights))
    SA = polynomial_ring_algebra(S, d_cap)
    M = presented_module(SA, [0], [[g] for g in I.gens], name="S/I")
    res = minimal_resolution(SA, M, h, d_cap, syzygy_bound=bound)
    if res.finished_at is None:
        raise InternalInvariantError(
            f"polynomial-ring resolution did not terminate within {h} steps"
        )
    if res.finished_at - 1 > S.nvars:
        raise InternalInvariantError("resolution longer than the number of variables")
    return res


def presented_module_resolution(S: WeightedPolyRing, gen_degrees: list[int],
                                relations: list[list[Poly]],
                                h_cap: int | None = None,
                                d_cap: int | None = None) -> ResolutionData:
    """Minimal S-resolution of a presented module.

    The window is heuristic for multi-generator presentations; completeness is
    claimed only when the resolution terminates with an in-window zero kernel.
    """
    entries = [p for col in relations for p in col if not p.is_zero()]
    lcm = (0,) * S.nvars
    for p in entries:
        lcm = S.mono_lcm(lcm, p.leading_monomial())
    bound = max(gen_degrees, default=0) + S.mono_degree(lcm) + S.nvars
    h = h_cap if h_cap is not None else S.nvars + 1
    d = d_cap if d_cap is not None else max(bound, 2 * max(S.weights))
    SA = polynomial_ring_algebra(S, d)
    M = presented_module(SA, gen_degrees, relations, name="M")
    return minimal_resolution(SA, M, h, d, syzygy_bound=bound if d >= bound else None)


def poly_differential_entries(res: ResolutionData, i: int) -> list[list[Poly]]:
    """Differential d_i of a polynomial-ring resolution as a polynomial matrix.

    Entry [j][k] pairs generator j of F_i with generator k of F_{i-1}.
    """
    A = res.algebra
    if A.kind() != "quotient" or A.provenance["ideal"].gens:
        raise GolodlabError("polynomial entries need a resolution over the plain polynomial ring")
    S: WeightedPolyRing = A.provenance["ring"]
    std = A.provenance["std"]
    src = res.free(i)
    prev = res.free(i - 1)
    out = []
    for j, a in enumerate(src.gen_degrees):
        img = res.steps[i]["images"][j]
        offs = prev.offsets(a)
        row = []
        for k, b in enumerate(prev.gen_degrees):
            nd = A.dim(a - b)
            terms = {}
            for t in range(nd):
                c = img[offs[k] + t]
                if not A.field.is_zero(c):
                    terms[std[a - b][t]] = c
            row.append(Poly(S, terms))
        out.append(row)
    return out


# ---------------------------------------------------------------------------
# comparison maps and largeness
# ---------------------------------------------------------------------------


class TorComparison:
    def __init__(self, f: GradedAlgebraMap, res_src: ResolutionData, res_dst: ResolutionData,
                 matrices: list[dict[int, list[list]]]):
        self.map = f
        self.res_src = res_src
        self.res_dst = res_dst
        self.matrices = matrices  # per homological i: internal degree -> matrix

    def ranks(self) -> list[dict[int, int]]:
        F = self.map.dst.field
        return [{d: rank(F, mat) for d, mat in sorted(per.items())} for per in self.matrices]

    def surjective_at(self, i: int) -> bool:
        dst_row: dict[int, int] = {}
        for a in self.res_dst.steps[i]["degrees"]:
            dst_row[a] = dst_row.get(a, 0) + 1
        F = self.map.dst.field
        for d, count in dst_row.items():
            mat = self.matrices[i].get(d)
            if mat is None or rank(F, mat) < count:
                return False
        return True


def tor_comparison(f: GradedAlgebraMap, h_cap: int, d_cap: int,
                   pivot_rule: str = "first") -> TorComparison:
    """Comparison map Tor^src_i(k,k) -> Tor^dst_i(k,k) lifted through minimal
    resolutions of the residue fields."""
    A, B = f.src, f.dst
    res_a = minimal_resolution(A, residue_field(A), h_cap, d_cap)
    res_b = minimal_resolution(B, residue_field(B), h_cap, min(d_cap, B.dcap))
    FA = A.field

    # phi[i][j] = image in G_i (at the degree of generator j of F_i)
    phi: list[list[list]] = [[res_b.free(0).generator_vector(0, 0)]]
    steps = min(len(res_a.steps), len(res_b.steps)) - 1
    for i in range(1, steps + 1):
        src = res_a.free(i)
        cur: list[list] = []
        for j, a in enumerate(src.gen_degrees):
            img = res_a.steps[i]["images"][j]  # vector in F_{i-1} at degree a
            prev = res_a.free(i - 1)
            offs = prev.offsets(a)
            rhs = zero_vector(FA, res_b.free(i - 1).dim(a))
            for jp, ap in enumerate(prev.gen_degrees):
                nd = A.dim(a - ap)
                for t in range(nd):
                    c = img[offs[jp] + t]
                    if FA.is_zero(c):
                        continue
                    avec = [FA.mul(c, x) for x in f.apply(a - ap, A.basis_vector(a - ap, t))]
                    contrib = res_b.free(i - 1).act(a - ap, ap, avec, phi[i - 1][jp])
                    rhs = [FA.add(x, y) for x, y in zip(rhs, contrib)]
            mat = res_b.matrix(i, a)
            x = solve(B.field, mat, rhs, res_b.free(i).dim(a), pivot_rule=pivot_rule)
            if x is None:
                raise InternalInvariantError(
                    f"comparison lift failed at step {i}, degree {a}: window exactness broken"
                )
            cur.append(x)
        phi.append(cur)

    matrices: list[dict[int, list[list]]] = []
    for i in range(len(phi)):
        per: dict[int, list[list]] = {}
        src_degs = res_a.steps[i]["degrees"] if i else [0]
        dst_degs = res_b.steps[i]["degrees"] if i else [0]
        for d in sorted(set(src_degs) | set(dst_degs)):
            rows_idx = [t for t, b in enumerate(dst_degs) if b == d]
            cols_idx = [t for t, a in enumerate(src_degs) if a == d]
            gi = res_b.free(i)
            mat = []
            for rt in rows_idx:
                row = []
                for ct in cols_idx:
                    vec = phi[i][ct]
                    # unit-coefficient component of generator rt inside G_i at degree d
                    off = gi.offsets(d)[rt]
                    row.append(vec[off])
                mat.append(row)
            per[d] = mat
        matrices.append(per)
    return TorComparison(f, res_a, res_b, matrices)


class LargenessResult:
    def __init__(self, surjective_up_to: int | None, fails_at: int | None,
                 comparison: TorComparison):
        self.surjective_up_to = surjective_up_to
        self.fails_at = fails_at
        self.comparison = comparison

    @property
    def is_large_in_window(self) -> bool:
        return self.fails_at is None

    def describe(self) -> str:
        if self.fails_at is None:
            return f"SurjectiveUpTo({self.surjective_up_to})"
        return f"FailsAt({self.fails_at})"


def largeness_test(f: GradedAlgebraMap, h_cap: int, d_cap: int) -> LargenessResult:
    comp = tor_comparison(f, h_cap, d_cap)
    # well-definedness: a second pivoting rule must induce identical matrices
    comp2 = tor_comparison(f, h_cap, d_cap, pivot_rule="last")
    if comp.matrices != comp2.matrices:
        raise InternalInvariantError("Tor comparison depends on the lifting choice")
    for i in range(len(comp.matrices)):
        if not comp.surjective_at(i):
            return LargenessResult(None, i, comp)
    return LargenessResult(len(comp.matrices) - 1, None, comp)

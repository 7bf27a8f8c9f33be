"""Finite graded algebras and modules, given degreewise by bases and
multiplication/action matrices, plus the constructions used throughout:
quotient rings, trivial extensions, fibre products, module transport.

Degree windows are explicit.  ``complete=True`` on an algebra or module is a
certificate that every piece beyond the stored window is zero; operations
that need the whole object refuse to run without it instead of silently
truncating.
"""
from __future__ import annotations

from .errors import CapError, GolodlabError, InternalInvariantError
from .fields import FieldSpec
from .groebner import GroebnerBasis, buchberger, is_unit_ideal, normal_form, standard_monomials
from .linalg import (
    SpanBuilder,
    matrix_times_vector,
    nullspace,
    solve,
    vec_is_zero,
    zero_vector,
)
from .poly import HomogeneousIdeal, Poly, WeightedPolyRing


class _Coords:
    """Coordinates with respect to an independent family inside k^width.

    The family is extended to a full basis by greedy standard vectors once;
    afterwards ``coords`` is a single matrix-vector product plus a residual
    check that the input really lies in the family's span.
    """

    def __init__(self, field: FieldSpec, vectors: list[list], width: int):
        from .linalg import _rref

        self.field = field
        self.nvecs = len(vectors)
        self.width = width
        self.vectors = [list(v) for v in vectors]
        cols = [list(v) for v in self.vectors]
        sb = SpanBuilder(field, width)
        for v in cols:
            if not sb.add(v):
                raise InternalInvariantError("coordinate family is dependent")
        for j in range(width):
            e = zero_vector(field, width)
            e[j] = field.one()
            if sb.add(e):
                cols.append(e)
        n = width
        aug = [[cols[j][i] for j in range(n)] + [field.one() if k == i else field.zero() for k in range(n)]
               for i in range(n)]
        rows, pivots = _rref(field, aug, 2 * n)
        if pivots[:n] != list(range(n)):
            raise InternalInvariantError("coordinate matrix not invertible")
        self._proj = [rows[i][n:] for i in range(self.nvecs)]

    def coords(self, v: list, strict: bool = True) -> list:
        out = matrix_times_vector(self.field, self._proj, v)
        if strict:
            F = self.field
            recon = zero_vector(F, self.width)
            for c, vec in zip(out, self.vectors):
                if F.is_zero(c):
                    continue
                for j, a in enumerate(vec):
                    if not F.is_zero(a):
                        recon[j] = F.add(recon[j], F.mul(c, a))
            if recon != list(v):
                raise InternalInvariantError("vector lies outside the expected subspace")
        return out


def _coords_for(field: FieldSpec, vectors: list[list], width: int) -> _Coords:
    return _Coords(field, vectors, width)


class GradedAlgebraMap:
    """Degreewise linear map between graded algebras, given by matrices
    (rows = target basis, columns = source basis)."""

    def __init__(self, src: "FiniteGradedAlgebra", dst: "FiniteGradedAlgebra",
                 mats: dict[int, list[list]], name: str = "f"):
        self.src = src
        self.dst = dst
        self.mats = mats
        self.name = name

    def dcap(self) -> int:
        return min(self.src.dcap, self.dst.dcap)

    def apply(self, d: int, vec: list) -> list:
        mat = self.mats.get(d)
        if mat is None:
            return zero_vector(self.dst.field, self.dst.dim(d))
        return matrix_times_vector(self.dst.field, mat, vec)

    def is_surjective_in(self, d: int) -> bool:
        from .linalg import rank

        target = self.dst.dim(d)
        if target == 0:
            return True
        mat = self.mats.get(d)
        if mat is None or not mat or not mat[0]:
            return False
        cols = [[row[j] for row in mat] for j in range(len(mat[0]))]
        return rank(self.dst.field, cols) == target

    def check_unital(self):
        unit = self.apply(0, self.src.unit_vector())
        if unit != self.dst.unit_vector():
            raise InternalInvariantError(f"map {self.name} does not preserve the unit")

    def check_multiplicative(self):
        A, B = self.src, self.dst
        for d in range(A.dcap + 1):
            for e in range(A.dcap + 1 - d):
                if d + e > self.dcap():
                    continue
                for i in range(A.dim(d)):
                    vi = A.basis_vector(d, i)
                    for j in range(A.dim(e)):
                        vj = A.basis_vector(e, j)
                        lhs = self.apply(d + e, A.mul(d, e, vi, vj))
                        rhs = B.mul(d, e, self.apply(d, vi), self.apply(e, vj))
                        if lhs != rhs:
                            raise InternalInvariantError(
                                f"map {self.name} not multiplicative at degrees ({d},{e})"
                            )


class FiniteGradedAlgebra:
    """Connected graded k-algebra known degreewise up to ``dcap``."""

    def __init__(self, field: FieldSpec, dcap: int, dims: list[int], mult: dict,
                 labels: list[list[str]], provenance: dict, complete: bool):
        if dims[0] != 1:
            raise GolodlabError("algebra must be connected: dim A_0 = 1")
        self.field = field
        self.dcap = dcap
        self.dims = dims
        self._mult = mult  # (d, e) -> [i][j] -> vector in A_{d+e}
        self.labels = labels
        self.provenance = provenance
        self.complete = complete
        self._max_ideal_data: MaxIdealData | None = None

    # -- basic queries ------------------------------------------------------
    def dim(self, d: int) -> int:
        if d < 0:
            return 0
        if d <= self.dcap:
            return self.dims[d]
        if self.complete:
            return 0
        raise CapError(f"degree {d} beyond window D_cap={self.dcap} of incomplete algebra")

    def top(self) -> int:
        return max((d for d in range(self.dcap + 1) if self.dims[d]), default=0)

    def unit_vector(self) -> list:
        return [self.field.one()]

    def basis_vector(self, d: int, i: int) -> list:
        v = zero_vector(self.field, self.dim(d))
        v[i] = self.field.one()
        return v

    def mul_basis(self, d: int, e: int, i: int, j: int) -> list:
        table = self._mult.get((d, e))
        if table is None:
            return zero_vector(self.field, self.dim(d + e))
        return table[i][j]

    def mul(self, d: int, e: int, v: list, w: list) -> list:
        F = self.field
        out = zero_vector(F, self.dim(d + e))
        table = self._mult.get((d, e))
        if table is None:
            return out
        for i, a in enumerate(v):
            if F.is_zero(a):
                continue
            row = table[i]
            for j, b in enumerate(w):
                if F.is_zero(b):
                    continue
                c = F.mul(a, b)
                tv = row[j]
                for t, x in enumerate(tv):
                    if not F.is_zero(x):
                        out[t] = F.add(out[t], F.mul(c, x))
        return out

    def hilbert(self) -> list[int]:
        return list(self.dims)

    def kind(self) -> str:
        return self.provenance.get("kind", "abstract")

    # -- verification helpers (used by tests) ---------------------------------
    def verify_laws(self):
        F = self.field
        for d in range(self.dcap + 1):
            for i in range(self.dim(d)):
                v = self.basis_vector(d, i)
                if self.mul(0, d, self.unit_vector(), v) != v or self.mul(d, 0, v, self.unit_vector()) != v:
                    raise InternalInvariantError("unit law fails")
        for d in range(1, self.dcap + 1):
            for e in range(1, self.dcap + 1 - d):
                for f in range(1, self.dcap + 1 - d - e):
                    for i in range(self.dim(d)):
                        vi = self.basis_vector(d, i)
                        for j in range(self.dim(e)):
                            vj = self.basis_vector(e, j)
                            ij = self.mul(d, e, vi, vj)
                            for k in range(self.dim(f)):
                                vk = self.basis_vector(f, k)
                                lhs = self.mul(d + e, f, ij, vk)
                                rhs = self.mul(d, e + f, vi, self.mul(e, f, vj, vk))
                                if lhs != rhs:
                                    raise InternalInvariantError(
                                        f"associativity fails at degrees ({d},{e},{f})"
                                    )

    def verify_commutative(self):
        for d in range(self.dcap + 1):
            for e in range(self.dcap + 1 - d):
                for i in range(self.dim(d)):
                    for j in range(self.dim(e)):
                        ij = self.mul_basis(d, e, i, j)
                        ji = self.mul_basis(e, d, j, i)
                        if ij != ji:
                            raise InternalInvariantError("multiplication not commutative")

    def max_ideal(self) -> "MaxIdealData":
        if self._max_ideal_data is None:
            self._max_ideal_data = min_gens(self)
        return self._max_ideal_data

    def __repr__(self):
        tag = self.kind()
        return f"<{tag} algebra dims={self.dims} complete={self.complete}>"


class FiniteGradedModule:
    """Graded module over a FiniteGradedAlgebra, degrees 0..dcap."""

    def __init__(self, algebra: FiniteGradedAlgebra, dims: list[int], action: dict,
                 labels: list[list[str]], complete: bool, name: str = "M"):
        self.algebra = algebra
        self.field = algebra.field
        self.dims = dims
        self._action = action  # (e, d) -> [i over A_e][j over M_d] -> vector in M_{d+e}
        self.labels = labels
        self.complete = complete
        self.name = name

    @property
    def dcap(self) -> int:
        return len(self.dims) - 1

    def dim(self, d: int) -> int:
        if d < 0:
            return 0
        if d <= self.dcap:
            return self.dims[d]
        if self.complete:
            return 0
        raise CapError(f"degree {d} beyond module window of incomplete module")

    def top(self) -> int:
        return max((d for d in range(self.dcap + 1) if self.dims[d]), default=0)

    def is_zero(self) -> bool:
        return all(x == 0 for x in self.dims)

    def basis_vector(self, d: int, i: int) -> list:
        v = zero_vector(self.field, self.dim(d))
        v[i] = self.field.one()
        return v

    def act_basis(self, e: int, d: int, i: int, j: int) -> list:
        table = self._action.get((e, d))
        if table is None:
            return zero_vector(self.field, self.dim(d + e))
        return table[i][j]

    def act(self, e: int, d: int, avec: list, mvec: list) -> list:
        F = self.field
        out = zero_vector(F, self.dim(d + e))
        table = self._action.get((e, d))
        if table is None:
            return out
        for i, a in enumerate(avec):
            if F.is_zero(a):
                continue
            row = table[i]
            for j, b in enumerate(mvec):
                if F.is_zero(b):
                    continue
                c = F.mul(a, b)
                tv = row[j]
                for t, x in enumerate(tv):
                    if not F.is_zero(x):
                        out[t] = F.add(out[t], F.mul(c, x))
        return out

    def hilbert(self) -> list[int]:
        return list(self.dims)

    def verify_laws(self):
        A = self.algebra
        for d in range(self.dcap + 1):
            for i in range(self.dim(d)):
                v = self.basis_vector(d, i)
                if self.act(0, d, A.unit_vector(), v) != v:
                    raise InternalInvariantError("module unit law fails")
        for e in range(1, A.dcap + 1):
            for f in range(1, A.dcap + 1 - e):
                for d in range(self.dcap + 1 - e - f):
                    for i in range(A.dim(e)):
                        vi = A.basis_vector(e, i)
                        for j in range(A.dim(f)):
                            vj = A.basis_vector(f, j)
                            prod = A.mul(e, f, vi, vj)
                            for k in range(self.dim(d)):
                                vk = self.basis_vector(d, k)
                                lhs = self.act(e + f, d, prod, vk)
                                rhs = self.act(e, d + f, vi, self.act(f, d, vj, vk))
                                if lhs != rhs:
                                    raise InternalInvariantError("module associativity fails")

    def __repr__(self):
        return f"<module {self.name} dims={self.dims} complete={self.complete}>"


class MaxIdealData:
    """Minimal generators of the maximal ideal: (degree, vector, label) triples."""

    def __init__(self, algebra: FiniteGradedAlgebra, gens: list[tuple[int, list, str]], complete: bool):
        self.algebra = algebra
        self.gens = gens
        self.complete = complete

    @property
    def count(self) -> int:
        return len(self.gens)

    def degrees(self) -> list[int]:
        return [d for d, _, _ in self.gens]

    def __repr__(self):
        ", ".join(lbl for _, _, lbl in self.gens)
        return f"<m-gens {[lbl for _, _, lbl in self.gens]} complete={self.complete}>"


# ---------------------------------------------------------------------------
# minimal generators
# ---------------------------------------------------------------------------


def _scan_bound(obj) -> tuple[int, bool]:
    if obj.complete:
        return obj.top(), True
    return obj.dcap, False


def min_gens(A: FiniteGradedAlgebra) -> MaxIdealData:
    """Degreewise complement of (m^2)_d inside m_d, greedy in stored order."""
    bound, complete = _scan_bound(A)
    if A.kind() == "quotient":
        # m is generated by the variable classes, all in degree <= max weight
        bound, complete = min(A.dcap, max(A.provenance["ring"].weights, default=0)), True
    gens: list[tuple[int, list, str]] = []
    for d in range(1, bound + 1):
        nd = A.dim(d)
        if nd == 0:
            continue
        sb = SpanBuilder(A.field, nd)
        for e in range(1, d):
            table = A._mult.get((e, d - e))
            if table is None:
                continue
            for row in table:
                for v in row:
                    sb.add(v)
        for i in range(nd):
            if sb.add(A.basis_vector(d, i)):
                gens.append((d, A.basis_vector(d, i), A.labels[d][i] if A.labels else f"a[{d},{i}]"))
    return MaxIdealData(A, gens, complete)


def min_gens_module(M: FiniteGradedModule) -> list[tuple[int, list, str]]:
    """Minimal generators of M: degreewise complement of (mM)_d in M_d."""
    A = M.algebra
    bound, _ = _scan_bound(M)
    gens: list[tuple[int, list, str]] = []
    for d in range(bound + 1):
        nd = M.dim(d)
        if nd == 0:
            continue
        sb = SpanBuilder(M.field, nd)
        for e in range(1, d + 1):
            if e > A.dcap:
                break
            table = M._action.get((e, d - e))
            if table is None:
                continue
            for row in table:
                for v in row:
                    sb.add(v)
        for i in range(nd):
            if sb.add(M.basis_vector(d, i)):
                label = M.labels[d][i] if M.labels else f"m[{d},{i}]"
                gens.append((d, M.basis_vector(d, i), label))
    return gens


# ---------------------------------------------------------------------------
# quotient algebras  R = S/I
# ---------------------------------------------------------------------------


def quotient_algebra(S: WeightedPolyRing, I: HomogeneousIdeal, dcap: int) -> FiniteGradedAlgebra:
    """S/I realized degreewise through standard monomials."""
    maxw = max(S.weights)
    if dcap < 2 * maxw:
        raise CapError(f"D_cap={dcap} too small: need at least {2 * maxw} to see m and m^2")
    if is_unit_ideal(I):
        raise GolodlabError("quotient by the unit ideal is the zero ring")
    gb = buchberger(I)
    std = [standard_monomials(gb, d) for d in range(dcap + 1)]
    dims = [len(s) for s in std]
    index = [{m: i for i, m in enumerate(s)} for s in std]
    F = S.field

    def class_vector(p: Poly, d: int) -> list:
        v = zero_vector(F, dims[d])
        for mono, c in normal_form(p, gb).terms.items():
            v[index[d][mono]] = c
        return v

    mult: dict = {}
    for d in range(dcap + 1):
        if dims[d] == 0:
            continue
        for e in range(dcap + 1 - d):
            if dims[e] == 0 or dims[d + e] == 0:
                continue
            table = []
            for m1 in std[d]:
                row = []
                for m2 in std[e]:
                    prod = Poly(S, {S.mono_mul(m1, m2): F.one()})
                    row.append(class_vector(prod, d + e))
                table.append(row)
            mult[(d, e)] = table

    # Artinian certificate: a run of max-weight consecutive zero dimensions
    # forces all later pieces to vanish (standard monomials are closed under
    # division, so any higher one would have a divisor inside the zero run).
    complete = False
    for d0 in range(dcap + 2 - maxw):
        if all(dims[d0 + i] == 0 for i in range(maxw)):
            complete = True
            if any(dims[d] for d in range(d0, dcap + 1)):
                raise InternalInvariantError("zero window followed by nonzero dimension")
            break

    labels = [[S.mono_str(m) for m in std[d]] for d in range(dcap + 1)]
    provenance = {"kind": "quotient", "ring": S, "ideal": I, "gb": gb, "std": std, "index": index}
    return FiniteGradedAlgebra(F, dcap, dims, mult, labels, provenance, complete)


def poly_class_vector(A: FiniteGradedAlgebra, p: Poly) -> tuple[int, list]:
    """(degree, coordinate vector) of a polynomial's class in a quotient algebra."""
    if A.kind() != "quotient":
        raise GolodlabError("polynomial classes only exist in quotient algebras")
    from .poly import NOT_HOMOGENEOUS

    gb: GroebnerBasis = A.provenance["gb"]
    r = normal_form(p, gb)
    d = r.weighted_degree()
    if d is NOT_HOMOGENEOUS:
        raise GolodlabError("class of a non-homogeneous polynomial requested")
    if r.is_zero():
        raise GolodlabError("polynomial lies in the ideal; class is zero")
    if d > A.dcap:
        raise CapError(f"degree {d} beyond window {A.dcap}")
    v = zero_vector(A.field, A.dims[d])
    for mono, c in r.terms.items():
        v[A.provenance["index"][d][mono]] = c
    return d, v


def polynomial_ring_algebra(S: WeightedPolyRing, dcap: int) -> FiniteGradedAlgebra:
    """The polynomial ring itself, as an (incomplete) graded algebra window."""
    return quotient_algebra(S, HomogeneousIdeal(S, []), dcap)


# ---------------------------------------------------------------------------
# modules
# ---------------------------------------------------------------------------


def residue_field(A: FiniteGradedAlgebra) -> FiniteGradedModule:
    dims = [1] + [0] * A.dcap
    action = {(0, 0): [[[A.field.one()]]]}
    return FiniteGradedModule(A, dims, action, [["1"]] + [[] for _ in range(A.dcap)], True, name="k")


def algebra_as_module(A: FiniteGradedAlgebra) -> FiniteGradedModule:
    action = {}
    for (d, e), table in A._mult.items():
        action[(d, e)] = table
    return FiniteGradedModule(A, list(A.dims), action, A.labels, A.complete, name="A")


def direct_sum(M: FiniteGradedModule, N: FiniteGradedModule) -> FiniteGradedModule:
    if M.algebra is not N.algebra:
        raise GolodlabError("direct sum needs modules over the same algebra")
    A = M.algebra
    F = A.field
    dcap = min(M.dcap, N.dcap)
    dims = [M.dim(d) + N.dim(d) for d in range(dcap + 1)]
    action: dict = {}
    for e in range(A.dcap + 1):
        for d in range(dcap + 1 - e):
            if A.dim(e) == 0 or dims[d] == 0 or dims[d + e] == 0:
                continue
            table = []
            for i in range(A.dim(e)):
                row = []
                for j in range(dims[d]):
                    if j < M.dim(d):
                        part = M.act_basis(e, d, i, j)
                        vec = list(part) + [F.zero()] * N.dim(d + e)
                    else:
                        part = N.act_basis(e, d, i, j - M.dim(d))
                        vec = [F.zero()] * M.dim(d + e) + list(part)
                    row.append(vec)
                table.append(row)
            action[(e, d)] = table
    labels = [
        [f"l.{s}" for s in (M.labels[d] if M.labels else [])]
        + [f"r.{s}" for s in (N.labels[d] if N.labels else [])]
        for d in range(dcap + 1)
    ]
    return FiniteGradedModule(A, dims, action, labels, M.complete and N.complete,
                              name=f"{M.name}(+){N.name}")


def restrict_module(f: GradedAlgebraMap, M: FiniteGradedModule) -> FiniteGradedModule:
    """M over f's target becomes a module over f's source via a.m = f(a).m."""
    if M.algebra is not f.dst:
        raise GolodlabError("module is not over the map's target")
    A = f.src
    F = A.field
    dcap = min(M.dcap, f.dcap())
    dims = [M.dim(d) for d in range(dcap + 1)]
    action: dict = {}
    for e in range(A.dcap + 1):
        if e > f.dcap():
            break
        for d in range(dcap + 1 - e):
            if A.dim(e) == 0 or dims[d] == 0 or dims[d + e] == 0:
                continue
            table = []
            for i in range(A.dim(e)):
                img = f.apply(e, A.basis_vector(e, i))
                row = [M.act(e, d, img, M.basis_vector(d, j)) for j in range(dims[d])]
                table.append(row)
            action[(e, d)] = table
    # the dims are M's own, so M's finiteness certificate carries over
    return FiniteGradedModule(A, dims, action, M.labels[: dcap + 1], M.complete,
                              name=f"{M.name}|{f.name}")


def submodule_from_subspaces(ambient: FiniteGradedModule, subspaces: dict[int, list[list]],
                             name: str = "N") -> FiniteGradedModule:
    """Submodule given by per-degree bases (vectors in ambient coordinates).

    Raises if the subspaces are not closed under the algebra action.
    """
    A = ambient.algebra
    F = A.field
    dcap = ambient.dcap
    bases = {d: [list(v) for v in subspaces.get(d, [])] for d in range(dcap + 1)}
    dims = [len(bases[d]) for d in range(dcap + 1)]
    coords = {d: _coords_for(F, bases[d], ambient.dim(d)) for d in range(dcap + 1) if dims[d]}
    action: dict = {}
    for e in range(A.dcap + 1):
        for d in range(dcap + 1 - e):
            if A.dim(e) == 0 or dims[d] == 0:
                continue
            table = []
            for i in range(A.dim(e)):
                av = A.basis_vector(e, i)
                row = []
                for w in bases[d]:
                    img = ambient.act(e, d, av, w)
                    if dims[d + e] == 0:
                        if not vec_is_zero(F, img):
                            raise InternalInvariantError("subspaces not action-closed")
                        row.append([])
                    else:
                        row.append(coords[d + e].coords(img))
                table.append(row)
            action[(e, d)] = table
    labels = [[f"{name}[{d},{i}]" for i in range(dims[d])] for d in range(dcap + 1)]
    return FiniteGradedModule(A, dims, action, labels, ambient.complete, name=name)


def generated_subspaces(ambient: FiniteGradedModule, gens: list[tuple[int, list]]) -> dict[int, list[list]]:
    """Per-degree bases of the submodule generated by homogeneous elements."""
    A = ambient.algebra
    out: dict[int, list[list]] = {}
    for d in range(ambient.dcap + 1):
        nd = ambient.dim(d)
        if nd == 0:
            out[d] = []
            continue
        sb = SpanBuilder(A.field, nd)
        for gd, gvec in gens:
            e = d - gd
            if e < 0 or A.dim(e) == 0:
                continue
            for i in range(A.dim(e)):
                sb.add(ambient.act(e, gd, A.basis_vector(e, i), gvec))
        out[d] = sb.basis()
    return out


def ideal_as_module(A: FiniteGradedAlgebra, gens: list[tuple[int, list]],
                    name: str = "I") -> FiniteGradedModule:
    """The ideal of A generated by homogeneous elements, with induced grading."""
    ambient = algebra_as_module(A)
    return submodule_from_subspaces(ambient, generated_subspaces(ambient, gens), name=name)


def ideal_module_from_polys(A: FiniteGradedAlgebra, polys: list[Poly], name: str = "I") -> FiniteGradedModule:
    gens = [poly_class_vector(A, p) for p in polys if not p.is_zero()]
    return ideal_as_module(A, gens, name=name)


def presented_module(A: FiniteGradedAlgebra, gen_degrees: list[int],
                     relations: list[list[Poly]], name: str = "M") -> FiniteGradedModule:
    """Cokernel of a graded presentation over a quotient algebra.

    ``relations`` are columns: each is a vector of polynomials, entry i pairing
    with the generator of degree gen_degrees[i]; entries must make the column
    homogeneous.
    """
    if A.kind() != "quotient":
        raise GolodlabError("presentations are only supported over quotient algebras")
    from .poly import NOT_HOMOGENEOUS, ZERO_DEGREE

    S: WeightedPolyRing = A.provenance["ring"]
    gb: GroebnerBasis = A.provenance["gb"]
    std = A.provenance["std"]
    F = A.field
    dcap = A.dcap
    s = len(gen_degrees)
    if s == 0:
        raise GolodlabError("module needs at least one generator")

    # free-module graded pieces: blocks per generator
    def free_dim(d: int) -> int:
        return sum(len(std[d - a]) if 0 <= d - a <= dcap else 0 for a in gen_degrees)

    def free_offsets(d: int) -> list[int]:
        offs, acc = [], 0
        for a in gen_degrees:
            offs.append(acc)
            acc += len(std[d - a]) if 0 <= d - a <= dcap else 0
        return offs

    # validate and record relation column degrees
    rel_degrees = []
    for col in relations:
        if len(col) != s:
            raise GolodlabError("relation column length must match generator count")
        degs = set()
        for a, p in zip(gen_degrees, col):
            wd = p.weighted_degree()
            if wd is NOT_HOMOGENEOUS:
                raise GolodlabError("relation entries must be homogeneous")
            if wd is not ZERO_DEGREE:
                degs.add(wd + a)
        if len(degs) > 1:
            raise GolodlabError("relation column is not homogeneous")
        rel_degrees.append(degs.pop() if degs else None)

    def nf_block_vector(col: list[Poly], mult_mono, d: int) -> list:
        """Coordinates in the free piece of degree d of mono * column."""
        vec = zero_vector(F, free_dim(d))
        offs = free_offsets(d)
        for i, (a, p) in enumerate(zip(gen_degrees, col)):
            if p.is_zero():
                continue
            q = normal_form(Poly(S, {S.mono_mul(m, mult_mono): c for m, c in p.terms.items()}), gb)
            idx = {m: t for t, m in enumerate(std[d - a])}
            for mono, c in q.terms.items():
                vec[offs[i] + idx[mono]] = c
        return vec

    rel_span: dict[int, SpanBuilder] = {}
    for d in range(dcap + 1):
        sb = SpanBuilder(F, free_dim(d))
        for col, b in zip(relations, rel_degrees):
            if b is None or d < b:
                continue
            for mono in std[d - b]:
                sb.add(nf_block_vector(col, mono, d))
        rel_span[d] = sb

    reps: dict[int, list[list]] = {}
    for d in range(dcap + 1):
        nd = free_dim(d)
        chosen = []
        sb = rel_span[d]
        probe = SpanBuilder(F, nd)
        for r in sb.basis():
            probe.add(r)
        for i in range(nd):
            e = zero_vector(F, nd)
            e[i] = F.one()
            if probe.add(e):
                chosen.append(e)
        reps[d] = chosen
    dims = [len(reps[d]) for d in range(dcap + 1)]

    basis_with_rels = {
        d: _coords_for(F, rel_span[d].basis() + reps[d], free_dim(d))
        for d in range(dcap + 1) if free_dim(d)
    }

    def project(d: int, vec: list) -> list:
        if dims[d] == 0:
            return []
        c = basis_with_rels[d].coords(vec)
        return c[len(rel_span[d].basis()):]

    action: dict = {}
    for e in range(dcap + 1):
        if A.dim(e) == 0:
            continue
        for d in range(dcap + 1 - e):
            if dims[d] == 0 or free_dim(d + e) == 0:
                continue
            table = []
            offs_de = free_offsets(d + e)
            for i_a in range(A.dim(e)):
                amono = std[e][i_a]
                row = []
                for rep in reps[d]:
                    img = zero_vector(F, free_dim(d + e))
                    offs_d = free_offsets(d)
                    for i, a in enumerate(gen_degrees):
                        nloc = len(std[d - a]) if 0 <= d - a <= dcap else 0
                        idx_de = {m: t for t, m in enumerate(std[d + e - a])} if 0 <= d + e - a <= dcap else {}
                        for t in range(nloc):
                            c = rep[offs_d[i] + t]
                            if F.is_zero(c):
                                continue
                            prod = normal_form(
                                Poly(S, {S.mono_mul(amono, std[d - a][t]): c}), gb
                            )
                            for mono, cc in prod.terms.items():
                                img[offs_de[i] + idx_de[mono]] = F.add(
                                    img[offs_de[i] + idx_de[mono]], cc
                                )
                    row.append(project(d + e, img) if dims[d + e] else [])
                table.append(row)
            if dims[d + e]:
                action[(e, d)] = table
    labels = [[f"{name}[{d},{i}]" for i in range(dims[d])] for d in range(dcap + 1)]
    maxgen = max(gen_degrees)
    complete = A.complete and (maxgen + A.top() <= dcap if A.complete else False)
    return FiniteGradedModule(A, dims, action, labels, complete, name=name)


# ---------------------------------------------------------------------------
# trivial extension  A = R (x) M  with M.M = 0
# ---------------------------------------------------------------------------


def trivial_extension(R: FiniteGradedAlgebra, M: FiniteGradedModule) -> FiniteGradedAlgebra:
    if M.algebra is not R:
        raise GolodlabError("module must be over the base ring")
    if M.dim(0) != 0:
        raise GolodlabError("trivial extension needs M generated in degrees >= 1 (M_0 = 0)")
    F = R.field
    dcap = min(R.dcap, M.dcap)
    dims = [R.dim(d) + M.dim(d) for d in range(dcap + 1)]

    def pad(rvec, mvec, d):
        return list(rvec) + list(mvec)

    mult: dict = {}
    for d in range(dcap + 1):
        if dims[d] == 0:
            continue
        for e in range(dcap + 1 - d):
            if dims[e] == 0 or dims[d + e] == 0:
                continue
            rd, md = R.dim(d), M.dim(d)
            re_, me = R.dim(e), M.dim(e)
            table = []
            for i in range(dims[d]):
                row = []
                for j in range(dims[e]):
                    if i < rd and j < re_:
                        rr = R.mul_basis(d, e, i, j)
                        row.append(pad(rr, zero_vector(F, M.dim(d + e)), d + e))
                    elif i < rd and j >= re_:
                        mm = M.act_basis(d, e, i, j - re_)
                        row.append(pad(zero_vector(F, R.dim(d + e)), mm, d + e))
                    elif i >= rd and j < re_:
                        mm = M.act_basis(e, d, j, i - rd)
                        row.append(pad(zero_vector(F, R.dim(d + e)), mm, d + e))
                    else:
                        row.append(zero_vector(F, dims[d + e]))
                table.append(row)
            mult[(d, e)] = table

    labels = [
        list(R.labels[d]) + [f"m.{s}" for s in (M.labels[d] if M.labels else [f"[{i}]" for i in range(M.dim(d))])]
        for d in range(dcap + 1)
    ]
    complete = R.complete and M.complete
    A = FiniteGradedAlgebra(F, dcap, dims, mult, labels,
                            {"kind": "trivial-extension"}, complete)

    p_mats = {}
    j_mats = {}
    for d in range(dcap + 1):
        rd, md = R.dim(d), M.dim(d)
        p_mats[d] = [[F.one() if c == r else F.zero() for c in range(rd + md)] for r in range(rd)]
        j_mats[d] = [[F.one() if c == r else F.zero() for c in range(rd)] for r in range(rd + md)]
    section = GradedAlgebraMap(A, R, p_mats, name="p")
    inclusion = GradedAlgebraMap(R, A, j_mats, name="j")
    kernel_subspaces = {
        d: [
            [F.one() if t == R.dim(d) + i else F.zero() for t in range(dims[d])]
            for i in range(M.dim(d))
        ]
        for d in range(dcap + 1)
    }
    A.provenance.update({
        "base": R,
        "module": M,
        "section": section,
        "inclusion": inclusion,
        "kernel_subspaces": kernel_subspaces,
    })
    return A


# ---------------------------------------------------------------------------
# quotients by ideal subspaces, fibre products
# ---------------------------------------------------------------------------


def quotient_by_subspaces(A: FiniteGradedAlgebra, subspaces: dict[int, list[list]]):
    """(S0, eps) with S0 = A / ideal-given-by-subspaces and eps the projection."""
    F = A.field
    dcap = A.dcap
    if subspaces.get(0):
        raise GolodlabError("ideal must be proper: no degree-0 part")
    reps: dict[int, list[list]] = {}
    proj: dict[int, list[list]] = {}
    for d in range(dcap + 1):
        nd = A.dim(d)
        sub = [list(v) for v in subspaces.get(d, [])]
        sb = SpanBuilder(F, nd)
        for v in sub:
            sb.add(v)
        sub = sb.basis()
        chosen = []
        probe = SpanBuilder(F, nd)
        for v in sub:
            probe.add(v)
        for i in range(nd):
            e = zero_vector(F, nd)
            e[i] = F.one()
            if probe.add(e):
                chosen.append(e)
        reps[d] = chosen
        if nd:
            co = _coords_for(F, sub + chosen, nd)
            rows = []
            for r in range(len(chosen)):
                row = []
                for i in range(nd):
                    e = zero_vector(F, nd)
                    e[i] = F.one()
                    row.append(co.coords(e)[len(sub) + r])
                rows.append(row)
            proj[d] = rows
        else:
            proj[d] = []
    dims = [len(reps[d]) for d in range(dcap + 1)]
    mult: dict = {}
    for d in range(dcap + 1):
        if dims[d] == 0:
            continue
        for e in range(dcap + 1 - d):
            if dims[e] == 0 or dims[d + e] == 0:
                continue
            table = []
            for vi in reps[d]:
                row = []
                for vj in reps[e]:
                    row.append(matrix_times_vector(F, proj[d + e], A.mul(d, e, vi, vj)))
                table.append(row)
            mult[(d, e)] = table
    labels = [[f"q[{d},{i}]" for i in range(dims[d])] for d in range(dcap + 1)]
    S0 = FiniteGradedAlgebra(F, dcap, dims, mult, labels, {"kind": "quotient-of-abstract"}, A.complete)
    eps = GradedAlgebraMap(A, S0, proj, name="eps")
    return S0, eps


def fibre_product(R1: FiniteGradedAlgebra, R2: FiniteGradedAlgebra,
                  eps1: GradedAlgebraMap, eps2: GradedAlgebraMap) -> FiniteGradedAlgebra:
    """R1 x_{S0} R2 as degreewise kernels of eps1 - eps2."""
    if eps1.src is not R1 or eps2.src is not R2:
        raise GolodlabError("surjection sources must be the two factors")
    S0a, S0b = eps1.dst, eps2.dst
    if S0a is not S0b:
        raise GolodlabError("surjections must share a target")
    F = R1.field
    dcap = min(R1.dcap, R2.dcap, eps1.dcap(), eps2.dcap())
    for d in range(dcap + 1):
        if not eps1.is_surjective_in(d) or not eps2.is_surjective_in(d):
            raise GolodlabError(f"surjection fails in degree {d}")

    embed: dict[int, list[list]] = {}
    for d in range(dcap + 1):
        n1, n2, ns = R1.dim(d), R2.dim(d), S0a.dim(d)
        width = n1 + n2
        if width == 0:
            embed[d] = []
            continue
        mat = []
        m1 = eps1.mats.get(d) or [[F.zero()] * n1 for _ in range(ns)]
        m2 = eps2.mats.get(d) or [[F.zero()] * n2 for _ in range(ns)]
        for r in range(ns):
            mat.append(list(m1[r]) + [F.neg(c) for c in m2[r]])
        embed[d] = nullspace(F, mat, width) if mat else [
            [F.one() if j == i else F.zero() for j in range(width)] for i in range(width)
        ]

    # normalize the unit: degree-0 kernel is one-dimensional, spanned by (1, 1)
    if len(embed[0]) != 1:
        raise InternalInvariantError("fibre product not connected")
    v0 = embed[0][0]
    scale = F.inv(v0[0])
    embed[0] = [[F.mul(scale, c) for c in v0]]
    if embed[0][0] != [F.one(), F.one()]:
        raise InternalInvariantError("degree-0 kernel is not the diagonal unit")

    dims = [len(embed[d]) for d in range(dcap + 1)]
    coords = {d: _coords_for(F, embed[d], R1.dim(d) + R2.dim(d)) for d in range(dcap + 1) if dims[d]}

    def split(d: int, vec: list):
        return vec[: R1.dim(d)], vec[R1.dim(d):]

    mult: dict = {}
    for d in range(dcap + 1):
        if dims[d] == 0:
            continue
        for e in range(dcap + 1 - d):
            if dims[e] == 0 or dims[d + e] == 0:
                continue
            table = []
            for vi in embed[d]:
                a1, a2 = split(d, vi)
                row = []
                for vj in embed[e]:
                    b1, b2 = split(e, vj)
                    z = list(R1.mul(d, e, a1, b1)) + list(R2.mul(d, e, a2, b2))
                    row.append(coords[d + e].coords(z))
                table.append(row)
            mult[(d, e)] = table

    labels = [[f"f[{d},{i}]" for i in range(dims[d])] for d in range(dcap + 1)]
    complete = R1.complete and R2.complete
    A = FiniteGradedAlgebra(F, dcap, dims, mult, labels, {"kind": "fibre-product"}, complete)

    p1_mats, p2_mats = {}, {}
    for d in range(dcap + 1):
        rows1, rows2 = [], []
        for r in range(R1.dim(d)):
            rows1.append([embed[d][c][r] for c in range(dims[d])])
        for r in range(R2.dim(d)):
            rows2.append([embed[d][c][R1.dim(d) + r] for c in range(dims[d])])
        p1_mats[d], p2_mats[d] = rows1, rows2
    p1 = GradedAlgebraMap(A, R1, p1_mats, name="p")
    p2 = GradedAlgebraMap(A, R2, p2_mats, name="p'")
    A.provenance.update({"factors": (R1, R2), "eps": (eps1, eps2), "embed": embed,
                         "sections": (p1, p2)})

    if R1 is R2 and eps1 is eps2:
        j_mats = {}
        for d in range(dcap + 1):
            cols = []
            for i in range(R1.dim(d)):
                b = R1.basis_vector(d, i)
                cols.append(coords[d].coords(list(b) + list(b)) if dims[d] else [])
            j_mats[d] = [[cols[i][r] for i in range(R1.dim(d))] for r in range(dims[d])]
        j = GradedAlgebraMap(R1, A, j_mats, name="j")
        kerdict1, kerdict2 = {}, {}
        for d in range(dcap + 1):
            kerdict1[d] = nullspace(F, p1_mats[d], dims[d]) if p1_mats[d] else \
                ([[F.one() if jj == i else F.zero() for jj in range(dims[d])] for i in range(dims[d])])
            kerdict2[d] = nullspace(F, p2_mats[d], dims[d]) if p2_mats[d] else \
                ([[F.one() if jj == i else F.zero() for jj in range(dims[d])] for i in range(dims[d])])
        A.provenance.update({"diagonal": j, "kernel_subspaces": (kerdict1, kerdict2)})
        # the two section kernels must annihilate each other (retract hypothesis)
        for d in range(1, dcap + 1):
            for e in range(1, dcap + 1 - d):
                for u in kerdict1[d]:
                    for w in kerdict2[e]:
                        if not vec_is_zero(F, A.mul(d, e, u, w)):
                            raise InternalInvariantError("fibre kernels do not satisfy I.I' = 0")
    return A


def iterated_fibre(R: FiniteGradedAlgebra, ideal_subspaces: dict[int, list[list]],
                   copies: int) -> FiniteGradedAlgebra:
    """A_n = R x_{R/I} ... x_{R/I} R  (n = copies >= 2), degreewise kernels."""
    if copies < 2:
        raise GolodlabError("iterated fibre product needs at least 2 copies")
    F = R.field
    dcap = R.dcap
    S0, eps = quotient_by_subspaces(R, ideal_subspaces)

    embed: dict[int, list[list]] = {}
    for d in range(dcap + 1):
        nr, ns = R.dim(d), S0.dim(d)
        width = copies * nr
        if width == 0:
            embed[d] = []
            continue
        mat = []
        ep = eps.mats.get(d) or [[F.zero()] * nr for _ in range(ns)]
        for block in range(copies - 1):
            for r in range(ns):
                row = [F.zero()] * width
                for c in range(nr):
                    row[block * nr + c] = ep[r][c]
                    row[(block + 1) * nr + c] = F.sub(row[(block + 1) * nr + c], ep[r][c])
                mat.append(row)
        embed[d] = nullspace(F, mat, width) if mat else \
            [[F.one() if j == i else F.zero() for j in range(width)] for i in range(width)]

    if len(embed[0]) != 1:
        raise InternalInvariantError("iterated fibre not connected")
    v0 = embed[0][0]
    scale = F.inv(v0[0])
    embed[0] = [[F.mul(scale, c) for c in v0]]

    dims = [len(embed[d]) for d in range(dcap + 1)]
    coords = {d: _coords_for(F, embed[d], copies * R.dim(d)) for d in range(dcap + 1) if dims[d]}

    mult: dict = {}
    for d in range(dcap + 1):
        if dims[d] == 0:
            continue
        nr_d = R.dim(d)
        for e in range(dcap + 1 - d):
            if dims[e] == 0 or dims[d + e] == 0:
                continue
            nr_e = R.dim(e)
            table = []
            for vi in embed[d]:
                row = []
                for vj in embed[e]:
                    z: list = []
                    for b in range(copies):
                        z += R.mul(d, e, vi[b * nr_d:(b + 1) * nr_d], vj[b * nr_e:(b + 1) * nr_e])
                    row.append(coords[d + e].coords(z))
                table.append(row)
            mult[(d, e)] = table

    labels = [[f"f{copies}[{d},{i}]" for i in range(dims[d])] for d in range(dcap + 1)]
    A = FiniteGradedAlgebra(F, dcap, dims, mult, labels,
                            {"kind": "iterated-fibre", "copies": copies}, R.complete)

    sections = []
    for b in range(copies):
        mats = {}
        for d in range(dcap + 1):
            nr = R.dim(d)
            mats[d] = [[embed[d][c][b * nr + r] for c in range(dims[d])] for r in range(nr)]
        sections.append(GradedAlgebraMap(A, R, mats, name=f"p{b + 1}"))
    j_mats = {}
    for d in range(dcap + 1):
        nr = R.dim(d)
        cols = []
        for i in range(nr):
            v = R.basis_vector(d, i)
            cols.append(coords[d].coords(list(v) * copies) if dims[d] else [])
        j_mats[d] = [[cols[i][r] for i in range(nr)] for r in range(dims[d])]
    A.provenance.update({
        "base": R, "quotient": S0, "eps": eps, "sections": tuple(sections),
        "diagonal": GradedAlgebraMap(R, A, j_mats, name="j"), "embed": embed,
    })
    return A


def quotient_surjection(A: FiniteGradedAlgebra, B: FiniteGradedAlgebra, name: str = "f") -> GradedAlgebraMap:
    """Natural surjection S/I -> S/J for I contained in J (same ring, same caps)."""
    if A.kind() != "quotient" or B.kind() != "quotient":
        raise GolodlabError("natural surjection needs two quotient algebras")
    S: WeightedPolyRing = A.provenance["ring"]
    if B.provenance["ring"] != S:
        raise GolodlabError("quotients of different polynomial rings")
    gbB = B.provenance["gb"]
    for g in A.provenance["ideal"].gens:
        if not normal_form(g, gbB).is_zero():
            raise GolodlabError("ideals not nested: no induced surjection")
    F = S.field
    mats = {}
    for d in range(min(A.dcap, B.dcap) + 1):
        idx = B.provenance["index"][d]
        rows = [[F.zero()] * A.dim(d) for _ in range(B.dim(d))]
        for c, mono in enumerate(A.provenance["std"][d]):
            img = normal_form(Poly(S, {mono: F.one()}), gbB)
            for m2, coef in img.terms.items():
                rows[idx[m2]][c] = coef
        mats[d] = rows
    return GradedAlgebraMap(A, B, mats, name=name)

"""Massey products on Koszul homology via exhaustive defining-system search.

Every defining system is an instantiation of a symbolic family: the degree-one
slots carry the chosen representatives plus arbitrary boundary shifts, and
each higher slot carries one particular solution (depending polynomially on
the lower free parameters) plus an arbitrary cycle shift.  The final element's
homology class is then a polynomial in the parameters; it vanishes for every
defining system exactly when that polynomial is identically zero (over the
rationals by density; over F_p the fallback is a full grid sweep, which is the
honest pointwise reading of the definition).
"""
from __future__ import annotations

from itertools import product as iter_product

from .errors import GolodlabError, InternalInvariantError
from .koszul import Chain, KoszulComplex, koszul_mul, koszul_right_mul

PARAM_BUDGET = 10_000
MONO_BUDGET = 10_000
GRID_BUDGET = 10_000


class MasseyResult:
    def __init__(self, kind: str, **data):
        self.kind = kind  # Vanishes | NonVanishing | NoDefiningSystem | Inconclusive
        self.data = data

    def __repr__(self):
        return f"MasseyResult({self.kind})"

    def to_json(self) -> dict:
        out = {"kind": self.kind}
        for k, v in sorted(self.data.items()):
            if isinstance(v, (int, str, bool, list, tuple, dict, type(None))):
                out[k] = v if not isinstance(v, tuple) else list(v)
        return out


class _Sym:
    """dict: parameter monomial -> Chain; monomials are sorted ((idx, exp), ...)."""

    __slots__ = ("complex", "l", "terms")

    def __init__(self, complex_: KoszulComplex, l: int, terms: dict):
        self.complex = complex_
        self.l = l
        self.terms = {m: c for m, c in terms.items() if not c.is_zero()}

    def monomial_count(self) -> int:
        return len(self.terms)


def _mono_mul(m1: tuple, m2: tuple) -> tuple:
    acc: dict[int, int] = {}
    for i, e in m1:
        acc[i] = acc.get(i, 0) + e
    for i, e in m2:
        acc[i] = acc.get(i, 0) + e
    return tuple(sorted(acc.items()))


def _sym_add(x: _Sym, y: _Sym) -> _Sym:
    K = x.complex
    terms = dict(x.terms)
    for m, c in y.terms.items():
        terms[m] = K.add(terms[m], c) if m in terms else c
    return _Sym(K, x.l, terms)


def _sym_scale(x: _Sym, c) -> _Sym:
    K = x.complex
    return _Sym(K, x.l, {m: K.scale(c, ch) for m, ch in x.terms.items()})


def _sym_bar(x: _Sym) -> _Sym:
    sign = -1 if (x.l + 1) % 2 else 1
    return _sym_scale(x, x.complex.algebra.field.of(sign))


def _sym_mul(left: _Sym, right: _Sym, KR: KoszulComplex) -> _Sym:
    """left*right where right always lives in the ring complex.  When the left
    factor is a module chain this is the right-module action."""
    KC = left.complex
    out: dict = {}
    for m1, c1 in left.terms.items():
        for m2, c2 in right.terms.items():
            if KC.is_ring_complex:
                prod = koszul_mul(KR, c1, KR, c2)
            else:
                prod = koszul_right_mul(KC, c1, KR, c2)
            if prod.is_zero():
                continue
            m = _mono_mul(m1, m2)
            out[m] = KC.add(out[m], prod) if m in out else prod
    return _Sym(KC, left.l + right.l, out)


def _sym_eval(x: _Sym, point: dict[int, object]):
    K = x.complex
    F = K.algebra.field
    acc = K.zero_chain(x.l)
    for mono, chain in x.terms.items():
        val = F.one()
        for i, e in mono:
            v = point.get(i, F.zero())
            for _ in range(e):
                val = F.mul(val, v)
        if not F.is_zero(val):
            acc = K.add(acc, K.scale(val, chain))
    return acc


def massey_product(KR: KoszulComplex, KM: KoszulComplex | None,
                   vs: list[tuple[int, int, int]], mode: str = "ring",
                   mono_budget: int = MONO_BUDGET,
                   grid_budget: int = GRID_BUDGET) -> MasseyResult:
    """<v_1, ..., v_n> with the universal quantification over defining systems.

    ``vs`` indexes homology basis elements: in module mode v_1 refers to the
    module complex KM and the rest to KR (homological degree >= 1); in ring
    mode all refer to KR (degree >= 1).
    """
    n = len(vs)
    if n < 2:
        raise GolodlabError("Massey products need at least two arguments")
    if mode not in ("ring", "module"):
        raise GolodlabError("mode must be 'ring' or 'module'")
    if mode == "module" and KM is None:
        raise GolodlabError("module mode needs the module complex")
    N = KM if mode == "module" else KR
    for t, (l, _, _) in enumerate(vs):
        if (t > 0 or mode == "ring") and l < 1:
            raise GolodlabError("ring-complex arguments must have homological degree >= 1")

    def slot_complex(i: int) -> KoszulComplex:
        return N if i == 0 else KR

    hom_deg = {}
    for i in range(n):
        for j in range(i + 1, n + 1):
            hom_deg[(i, j)] = sum(vs[t][0] for t in range(i, j)) + (j - i - 1)

    params: list[dict] = []
    a: dict[tuple[int, int], _Sym] = {}

    # level 1: representatives plus arbitrary boundary shifts
    for i in range(1, n + 1):
        C = slot_complex(i - 1)
        l, d, idx = vs[i - 1]
        base = C.homology_rep(l, d, idx)
        terms = {(): base}
        for b in C.boundary_basis_chains(l):
            p = len(params)
            params.append({"slot": (i - 1, i), "kind": "boundary"})
            terms[((p, 1),)] = b
        a[(i - 1, i)] = _Sym(C, l, terms)

    # higher levels
    for ell in range(2, n):
        for i in range(0, n - ell + 1):
            j = i + ell
            if (i, j) == (0, n):
                continue
            C = slot_complex(i)
            rhs = _Sym(C, hom_deg[(i, j)] - 1, {})
            for k in range(i + 1, j):
                rhs = _sym_add(rhs, _sym_mul(_sym_bar(a[(i, k)]), a[(k, j)], KR))
            # obstruction: every parameter component must bound
            for mono, chain in sorted(rhs.terms.items()):
                if chain.l >= 1 and not C.differential(chain).is_zero():
                    raise InternalInvariantError("Massey right side is not a cycle")
                if C.class_coords(chain):
                    return MasseyResult(
                        "NoDefiningSystem", level=ell, slot=(i, j),
                        reason="lower-order obstruction does not bound for the polynomial "
                               "family of systems",
                    )
            terms = {}
            for mono, chain in rhs.terms.items():
                part = C.solve_boundary(chain)
                if part is None:
                    raise InternalInvariantError("boundary with no preimage")
                terms[mono] = part
            for z in C.cycle_basis_chains(hom_deg[(i, j)]):
                p = len(params)
                params.append({"slot": (i, j), "kind": "cycle"})
                terms[((p, 1),)] = z
            sym = _Sym(C, hom_deg[(i, j)], terms)
            if sym.monomial_count() > mono_budget or len(params) > PARAM_BUDGET:
                return MasseyResult("Inconclusive", level=ell,
                                    reason="defining-system search budget exceeded")
            a[(i, j)] = sym

    final = _Sym(N, hom_deg[(0, n)] - 1, {})
    for k in range(1, n):
        final = _sym_add(final, _sym_mul(_sym_bar(a[(0, k)]), a[(k, n)], KR))
    if final.monomial_count() > mono_budget:
        return MasseyResult("Inconclusive", level=n, reason="final element exceeded budget")

    class_monos: dict[tuple, dict] = {}
    for mono, chain in sorted(final.terms.items()):
        if chain.l >= 1 and not N.differential(chain).is_zero():
            raise InternalInvariantError("Massey final element is not a cycle")
        cc = N.class_coords(chain)
        if cc:
            class_monos[mono] = cc
    if not class_monos:
        return MasseyResult("Vanishes", params=len(params),
                            monomials=sum(s.monomial_count() for s in a.values()))

    # hunt a concrete witness point
    F = KR.algebra.field
    degs: dict[int, int] = {}
    for mono in class_monos:
        for i, e in mono:
            degs[i] = max(degs.get(i, 0), e)
    active = sorted(degs)
    p = F.characteristic
    # over the rationals the grid {0..deg}^params is decisive by density;
    # over F_p the honest sweep is the whole field
    ranges = [range(degs[i] + 1) if p == 0 else range(p) for i in active]
    count = 0
    for values in iter_product(*ranges):
        count += 1
        if count > grid_budget:
            return MasseyResult("Inconclusive", level=n,
                                reason="witness grid budget exceeded")
        point = {i: F.of(v) for i, v in zip(active, values)}
        total: dict = {}
        for mono, cc in class_monos.items():
            val = F.one()
            for i, e in mono:
                v = point.get(i, F.zero())
                for _ in range(e):
                    val = F.mul(val, v)
            if F.is_zero(val):
                continue
            for key, vec in cc.items():
                cur = total.setdefault(key, [F.zero()] * len(vec))
                for t, c in enumerate(vec):
                    cur[t] = F.add(cur[t], F.mul(val, c))
        if any(any(not F.is_zero(c) for c in vec) for vec in total.values()):
            system = {slot: _sym_eval(sym, point) for slot, sym in a.items()}
            _verify_system(KR, N, vs, system, n)
            witness_class = {f"l={k[0]},d={k[1]}": [str(c) for c in v]
                             for k, v in sorted(total.items())}
            return MasseyResult("NonVanishing", point={str(i): str(point[i]) for i in point},
                                witness_class=witness_class, params=len(params),
                                system_slots=sorted(system))
    if p == 0:
        raise InternalInvariantError(
            "nonzero class polynomial vanished on its full rational grid"
        )
    return MasseyResult("Vanishes", params=len(params), note="pointwise over the finite field")


def _verify_system(KR: KoszulComplex, N: KoszulComplex, vs, system: dict, n: int):
    """Re-check conditions (the class conditions and the matrix equation) on a
    concrete defining system; internal error on failure."""
    for i in range(1, n + 1):
        C = N if i == 1 else KR
        l, d, idx = vs[i - 1]
        chain = system[(i - 1, i)]
        cc = C.class_coords(chain)
        expected_vec = None
        for key, vec in cc.items():
            if key != (l, d):
                if any(not C.algebra.field.is_zero(c) for c in vec):
                    raise InternalInvariantError("representative class drifted")
            else:
                expected_vec = vec
        if expected_vec is None or any(
            (t == idx) != (not C.algebra.field.is_zero(c)) for t, c in enumerate(expected_vec)
        ):
            raise InternalInvariantError("defining system violates the class condition")
    for (i, j), chain in system.items():
        if j - i < 2:
            continue
        C = N if i == 0 else KR
        rhs = C.zero_chain(chain.l - 1)
        for k in range(i + 1, j):
            left = system[(i, k)]
            sign = C.algebra.field.of(-1 if (left.l + 1) % 2 else 1)
            lk = (N if i == 0 else KR).scale(sign, left)
            if i == 0:
                rhs = C.add(rhs, koszul_right_mul(N, lk, KR, system[(k, j)]))
            else:
                rhs = C.add(rhs, koszul_mul(KR, lk, KR, system[(k, j)]))
        if C.differential(chain) != rhs:
            raise InternalInvariantError("defining system violates the matrix equation")

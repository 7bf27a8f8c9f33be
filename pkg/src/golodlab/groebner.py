"""Buchberger's algorithm for homogeneous ideals in weighted rings.

Single fixed order (grevlex refined by weighted degree), degree-by-degree
pair processing, reduced deterministic output.
"""
from __future__ import annotations

import heapq

from .errors import GolodlabError, RingMismatchError
from .poly import HomogeneousIdeal, Poly, WeightedPolyRing


class MonomialOrder:
    """The one supported order: grevlex-by-weighted-degree."""

    kind = "grevlex-by-weighted-degree"

    def key(self, ring: WeightedPolyRing, mono: tuple):
        return ring.mono_key(mono)

    def __repr__(self):
        return self.kind


GREVLEX = MonomialOrder()


class GroebnerBasis:
    """Reduced Groebner basis: monic, tail-reduced, sorted by leading monomial."""

    __slots__ = ("ring", "order", "polys", "leading_monomials")

    def __init__(self, ring: WeightedPolyRing, order: MonomialOrder, polys: list[Poly]):
        self.ring = ring
        self.order = order
        self.polys = polys
        self.leading_monomials = [p.leading_monomial() for p in polys]

    def __len__(self):
        return len(self.polys)

    def __repr__(self):
        return "GB{" + ", ".join(str(p) for p in self.polys) + "}"


def _reduce_full(p: Poly, basis: list[Poly], lms: list[tuple]) -> Poly:
    """Total normal form: no term of the result is divisible by any basis LM."""
    ring = p.ring
    F = ring.field
    remainder_terms: dict = {}
    work = dict(p.terms)
    while work:
        mono = max(work, key=ring.mono_key)
        coeff = work.pop(mono)
        reducer = None
        for g, lm in zip(basis, lms):
            if ring.mono_divides(lm, mono):
                reducer = g
                break
        if reducer is None:
            remainder_terms[mono] = coeff
            continue
        shift = ring.mono_div(mono, reducer.leading_monomial())
        factor = F.div(coeff, reducer.leading_coefficient())
        for m2, c2 in reducer.terms.items():
            m = ring.mono_mul(m2, shift)
            if m == mono:
                continue
            cur = F.sub(work.get(m, F.zero()), F.mul(factor, c2))
            if F.is_zero(cur):
                work.pop(m, None)
            else:
                work[m] = cur
    return Poly(ring, remainder_terms)


def _spoly(f: Poly, g: Poly) -> Poly:
    ring = f.ring
    F = ring.field
    lmf, lmg = f.leading_monomial(), g.leading_monomial()
    lcm = ring.mono_lcm(lmf, lmg)
    mf = ring.mono_div(lcm, lmf)
    mg = ring.mono_div(lcm, lmg)
    pf = Poly(ring, {ring.mono_mul(m, mf): c for m, c in f.terms.items()}).scale(F.inv(f.leading_coefficient()))
    pg = Poly(ring, {ring.mono_mul(m, mg): c for m, c in g.terms.items()}).scale(F.inv(g.leading_coefficient()))
    return pf - pg


def buchberger(ideal: HomogeneousIdeal, order: MonomialOrder = GREVLEX) -> GroebnerBasis:
    """Reduced Groebner basis; cached on the ideal."""
    if ideal._groebner is not None:
        return ideal._groebner
    ring = ideal.ring
    basis: list[Poly] = []
    lms: list[tuple] = []
    for g in ideal.gens:
        r = _reduce_full(g, basis, lms)
        if not r.is_zero():
            basis.append(r.monic())
            lms.append(basis[-1].leading_monomial())

    # pair queue keyed by the weighted degree of the S-polynomial
    heap: list[tuple[int, int, int]] = []
    def push_pairs(j: int):
        lmj = lms[j]
        for i in range(j):
            lcm = ring.mono_lcm(lms[i], lmj)
            if lcm == ring.mono_mul(lms[i], lmj):
                continue  # coprime leading terms reduce to zero
            heapq.heappush(heap, (ring.mono_degree(lcm), i, j))

    for j in range(len(basis)):
        push_pairs(j)
    while heap:
        _, i, j = heapq.heappop(heap)
        s = _spoly(basis[i], basis[j])
        r = _reduce_full(s, basis, lms)
        if r.is_zero():
            continue
        basis.append(r.monic())
        lms.append(basis[-1].leading_monomial())
        push_pairs(len(basis) - 1)

    # minimalize: drop members whose LM is divisible by another member's LM
    keep = []
    for i, lm in enumerate(lms):
        if any(k != i and ring.mono_divides(lms[k], lm) for k in keep):
            continue
        keep = [k for k in keep if not ring.mono_divides(lm, lms[k])]
        keep.append(i)
    minimal = [basis[i] for i in keep]
    # tail-reduce each against the others
    reduced: list[Poly] = []
    for i, p in enumerate(minimal):
        others = minimal[:i] + minimal[i + 1:]
        r = _reduce_full(p, others, [q.leading_monomial() for q in others])
        reduced.append(r.monic())
    reduced.sort(key=lambda p: ring.mono_key(p.leading_monomial()))
    gb = GroebnerBasis(ring, order, reduced)
    ideal._groebner = gb
    return gb


def normal_form(p: Poly, gb: GroebnerBasis) -> Poly:
    if p.ring != gb.ring:
        raise RingMismatchError("polynomial and basis from different rings")
    return _reduce_full(p, gb.polys, gb.leading_monomials)


def ideal_contains(p: Poly, ideal: HomogeneousIdeal) -> bool:
    return normal_form(p, buchberger(ideal)).is_zero()


def is_unit_ideal(ideal: HomogeneousIdeal) -> bool:
    gb = buchberger(ideal)
    zero = (0,) * ideal.ring.nvars
    return any(lm == zero for lm in gb.leading_monomials)


def standard_monomials(gb: GroebnerBasis, d: int) -> list[tuple]:
    """Monomials of weighted degree d outside the leading-term ideal,
    sorted descending in the order (deterministic)."""
    if d < 0:
        raise GolodlabError("degree must be nonnegative")
    ring = gb.ring
    out = []
    for mono in ring.monomials_of_degree(d):
        if not any(ring.mono_divides(lm, mono) for lm in gb.leading_monomials):
            out.append(mono)
    return out

"""Exact coefficient fields: the rationals and prime fields F_p.

Elements are plain ``fractions.Fraction`` values over the rationals and
canonical residues ``0 <= a < p`` (plain ints) over F_p, so field elements
stay hashable and cheap.  A ``FieldSpec`` bundles the arithmetic.
"""
from __future__ import annotations

from fractions import Fraction

from .errors import GolodlabError

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

PRIME_LIMIT = 2**31


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in _MR_BASES:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class FieldSpec:
    """Either the rationals (kind ``"rationals"``) or F_p (kind ``"prime-field"``)."""

    __slots__ = ("kind", "p")

    def __init__(self, kind: str, p: int | None = None):
        if kind == "rationals":
            if p is not None:
                raise GolodlabError("rationals take no characteristic")
        elif kind == "prime-field":
            if p is None or not (2 <= p < PRIME_LIMIT):
                raise GolodlabError(f"prime-field characteristic must lie in [2, 2^31): got {p}")
            if not _is_prime(p):
                raise GolodlabError(f"{p} is not prime")
        else:
            raise GolodlabError(f"unknown field kind {kind!r}")
        self.kind = kind
        self.p = p

    # -- constructors -------------------------------------------------
    @staticmethod
    def rationals() -> "FieldSpec":
        return FieldSpec("rationals")

    @staticmethod
    def prime(p: int) -> "FieldSpec":
        return FieldSpec("prime-field", p)

    @property
    def characteristic(self) -> int:
        return self.p or 0

    # -- element arithmetic -------------------------------------------
    def zero(self):
        return 0 if self.p else Fraction(0)

    def one(self):
        return 1 if self.p else Fraction(1)

    def of(self, numer: int, denom: int = 1):
        """Field element numer/denom; raises if denom is not invertible."""
        if self.p:
            d = denom % self.p
            if d == 0:
                raise GolodlabError(f"denominator {denom} not invertible mod {self.p}")
            return numer * pow(d, -1, self.p) % self.p
        return Fraction(numer, denom)

    def add(self, a, b):
        return (a + b) % self.p if self.p else a + b

    def sub(self, a, b):
        return (a - b) % self.p if self.p else a - b

    def mul(self, a, b):
        return a * b % self.p if self.p else a * b

    def neg(self, a):
        return -a % self.p if self.p else -a

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero field element")
        return pow(a, -1, self.p) if self.p else 1 / a

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def is_zero(self, a) -> bool:
        return not a

    def format(self, a) -> str:
        return str(a)

    # -- misc ----------------------------------------------------------
    def __eq__(self, other):
        return isinstance(other, FieldSpec) and self.kind == other.kind and self.p == other.p

    def __hash__(self):
        return hash((self.kind, self.p))

    def __repr__(self):
        return "QQ" if self.kind == "rationals" else f"GF({self.p})"

    def describe(self) -> str:
        return "q" if self.kind == "rationals" else f"p:{self.p}"


QQ = FieldSpec.rationals()

"""Sparse weighted-homogeneous polynomial arithmetic over QQ or F_p.

Monomials are exponent tuples; polynomials are maps monomial -> nonzero
coefficient.  Everything is exact and immutable after construction.
"""
from __future__ import annotations

from typing import Iterable

from .errors import GolodlabError, PolyParseError, RingMismatchError
from .fields import FieldSpec

# exponent arithmetic is kept inside machine range so violation is loud,
# not silent wraparound at some platform-dependent width
EXP_BOUND = 2**31


class _DegreeMarker:
    __slots__ = ("name",)

    def __init__(self, name: str):
        self.name = name

    def __repr__(self):
        return self.name


NOT_HOMOGENEOUS = _DegreeMarker("NotHomogeneous")
ZERO_DEGREE = _DegreeMarker("ZeroDegree")


class WeightedPolyRing:
    """k[X_1..X_n] with positive integer weights deg(X_i) = a_i."""

    __slots__ = ("field", "var_names", "weights", "nvars", "_var_index")

    def __init__(self, field: FieldSpec, var_names: list[str], weights: list[int]):
        if len(var_names) != len(set(var_names)):
            raise GolodlabError("variable names must be unique")
        if len(weights) != len(var_names):
            raise GolodlabError("need one weight per variable")
        if any(w <= 0 or not isinstance(w, int) for w in weights):
            raise GolodlabError("weights must be positive integers")
        self.field = field
        self.var_names = list(var_names)
        self.weights = list(weights)
        self.nvars = len(var_names)
        self._var_index = {v: i for i, v in enumerate(var_names)}

    def __eq__(self, other):
        return (
            isinstance(other, WeightedPolyRing)
            and self.field == other.field
            and self.var_names == other.var_names
            and self.weights == other.weights
        )

    def __hash__(self):
        return hash((self.field, tuple(self.var_names), tuple(self.weights)))

    def __repr__(self):
        vw = ", ".join(f"{v}:{w}" for v, w in zip(self.var_names, self.weights))
        return f"{self.field!r}[{vw}]"

    # -- monomial helpers ----------------------------------------------
    def mono_degree(self, mono: tuple) -> int:
        return sum(e * w for e, w in zip(mono, self.weights))

    def mono_mul(self, m1: tuple, m2: tuple) -> tuple:
        out = tuple(a + b for a, b in zip(m1, m2))
        if any(e >= EXP_BOUND for e in out):
            raise GolodlabError("monomial exponent overflow")
        return out

    def mono_divides(self, m1: tuple, m2: tuple) -> bool:
        return all(a <= b for a, b in zip(m1, m2))

    def mono_div(self, m1: tuple, m2: tuple) -> tuple:
        return tuple(a - b for a, b in zip(m1, m2))

    def mono_lcm(self, m1: tuple, m2: tuple) -> tuple:
        return tuple(max(a, b) for a, b in zip(m1, m2))

    def mono_key(self, mono: tuple):
        """Sort key realizing grevlex refined by weighted degree (larger key = larger monomial)."""
        return (
            self.mono_degree(mono),
            sum(mono),
            tuple(-e for e in reversed(mono)),
        )

    def mono_str(self, mono: tuple) -> str:
        parts = []
        for name, e in zip(self.var_names, mono):
            if e == 1:
                parts.append(name)
            elif e > 1:
                parts.append(f"{name}^{e}")
        return "*".join(parts) if parts else "1"

    def monomials_of_degree(self, d: int) -> list[tuple]:
        """All monomials of weighted degree d, sorted descending in the monomial order."""
        out: list[tuple] = []

        def rec(i: int, remaining: int, prefix: list[int]):
            if i == self.nvars - 1:
                w = self.weights[i]
                if remaining % w == 0:
                    out.append(tuple(prefix + [remaining // w]))
                return
            w = self.weights[i]
            for e in range(remaining // w + 1):
                rec(i + 1, remaining - e * w, prefix + [e])

        if d >= 0:
            rec(0, d, [])
        out.sort(key=self.mono_key, reverse=True)
        return out

    # -- polynomial constructors ----------------------------------------
    def zero_poly(self) -> "Poly":
        return Poly(self, {})

    def one(self) -> "Poly":
        return Poly(self, {(0,) * self.nvars: self.field.one()})

    def variable(self, i: int) -> "Poly":
        mono = tuple(1 if j == i else 0 for j in range(self.nvars))
        return Poly(self, {mono: self.field.one()})

    def from_terms(self, terms: Iterable[tuple[tuple, object]]) -> "Poly":
        acc: dict = {}
        F = self.field
        for mono, c in terms:
            if len(mono) != self.nvars:
                raise GolodlabError("exponent vector has wrong length")
            cur = F.add(acc.get(mono, F.zero()), c)
            if F.is_zero(cur):
                acc.pop(mono, None)
            else:
                acc[mono] = cur
        return Poly(self, acc)


class Poly:
    """Immutable sparse polynomial attached to a WeightedPolyRing."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: WeightedPolyRing, terms: dict):
        self.ring = ring
        self.terms = terms  # mono -> nonzero coefficient; never mutated

    # -- predicates ------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        return isinstance(other, Poly) and self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    def _check(self, other: "Poly"):
        if self.ring != other.ring:
            raise RingMismatchError("polynomials live in different rings")

    # -- ring operations ---------------------------------------------------
    def __add__(self, other: "Poly") -> "Poly":
        self._check(other)
        F = self.ring.field
        acc = dict(self.terms)
        for m, c in other.terms.items():
            cur = F.add(acc.get(m, F.zero()), c)
            if F.is_zero(cur):
                acc.pop(m, None)
            else:
                acc[m] = cur
        return Poly(self.ring, acc)

    def __neg__(self) -> "Poly":
        F = self.ring.field
        return Poly(self.ring, {m: F.neg(c) for m, c in self.terms.items()})

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other: "Poly") -> "Poly":
        self._check(other)
        R, F = self.ring, self.ring.field
        acc: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = R.mono_mul(m1, m2)
                cur = F.add(acc.get(m, F.zero()), F.mul(c1, c2))
                if F.is_zero(cur):
                    acc.pop(m, None)
                else:
                    acc[m] = cur
        return Poly(R, acc)

    def scale(self, c) -> "Poly":
        F = self.ring.field
        if F.is_zero(c):
            return Poly(self.ring, {})
        return Poly(self.ring, {m: F.mul(c, v) for m, v in self.terms.items()})

    def __pow__(self, n: int) -> "Poly":
        if n < 0:
            raise GolodlabError("negative polynomial power")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    # -- grading -----------------------------------------------------------
    def weighted_degree(self):
        """Common weighted degree, NOT_HOMOGENEOUS, or ZERO_DEGREE for 0."""
        if not self.terms:
            return ZERO_DEGREE
        degs = {self.ring.mono_degree(m) for m in self.terms}
        if len(degs) > 1:
            return NOT_HOMOGENEOUS
        return degs.pop()

    def is_homogeneous(self) -> bool:
        return self.weighted_degree() is not NOT_HOMOGENEOUS

    def homogeneous_component(self, d: int) -> "Poly":
        R = self.ring
        return Poly(R, {m: c for m, c in self.terms.items() if R.mono_degree(m) == d})

    # -- calculus ------------------------------------------------------------
    def partial_derivative(self, i: int) -> "Poly":
        R, F = self.ring, self.ring.field
        acc: dict = {}
        for m, c in self.terms.items():
            e = m[i]
            if e == 0:
                continue
            coeff = F.mul(c, F.of(e))
            if F.is_zero(coeff):
                continue  # characteristic kills the exponent
            dm = tuple(x - 1 if j == i else x for j, x in enumerate(m))
            acc[dm] = F.add(acc.get(dm, F.zero()), coeff) if dm in acc else coeff
            if F.is_zero(acc[dm]):
                del acc[dm]
        return Poly(R, acc)

    # -- leading data (in the ring's weighted-grevlex order) -----------------
    def leading_monomial(self) -> tuple:
        if not self.terms:
            raise GolodlabError("zero polynomial has no leading monomial")
        return max(self.terms, key=self.ring.mono_key)

    def leading_coefficient(self):
        return self.terms[self.leading_monomial()]

    def monic(self) -> "Poly":
        c = self.leading_coefficient()
        return self.scale(self.ring.field.inv(c))

    def sorted_terms(self) -> list[tuple[tuple, object]]:
        return sorted(self.terms.items(), key=lambda t: self.ring.mono_key(t[0]), reverse=True)

    # -- printing --------------------------------------------------------------
    def __str__(self) -> str:
        if not self.terms:
            return "0"
        F = self.ring.field
        chunks: list[str] = []
        for mono, c in self.sorted_terms():
            mstr = self.ring.mono_str(mono)
            cs = F.format(c)
            neg = cs.startswith("-")
            if neg:
                cs = cs[1:]
            if mstr == "1":
                body = cs
            elif cs == "1":
                body = mstr
            else:
                body = f"{cs}*{mstr}"
            if not chunks:
                chunks.append(f"-{body}" if neg else body)
            else:
                chunks.append(f"- {body}" if neg else f"+ {body}")
        return " ".join(chunks)

    __repr__ = __str__


# ---------------------------------------------------------------------------
# parsing
# ---------------------------------------------------------------------------

_TOKEN_KINDS = {"+": "plus", "-": "minus", "*": "star", "^": "caret", "(": "lpar", ")": "rpar", "/": "slash"}


def _tokenize(text: str) -> list[tuple[str, object, int]]:
    tokens = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch in _TOKEN_KINDS:
            tokens.append((_TOKEN_KINDS[ch], ch, i))
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(("int", int(text[i:j]), i))
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(("ident", text[i:j], i))
            i = j
            continue
        raise PolyParseError(f"unexpected character {ch!r}", i)
    tokens.append(("end", None, n))
    return tokens


class _Parser:
    """Recursive descent for:  expr := term (('+'|'-') term)* ;
    term := sign* factor ('*' factor)* ; factor := atom ('^' nat)? ;
    atom := rational | ident | '(' expr ')'.

    Implicit multiplication is rejected (there is no rule joining adjacent
    atoms), and '/' is only admitted inside a numeric literal so printed
    rational coefficients round-trip.
    """

    def __init__(self, ring: WeightedPolyRing, text: str):
        self.ring = ring
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos]

    def take(self, kind: str):
        tok = self.tokens[self.pos]
        if tok[0] != kind:
            raise PolyParseError(f"expected {kind}, found {tok[1]!r}", tok[2])
        self.pos += 1
        return tok

    def parse(self) -> Poly:
        p = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            raise PolyParseError(f"unexpected trailing token {tok[1]!r}", tok[2])
        return p

    def expr(self) -> Poly:
        p = self.term()
        while self.peek()[0] in ("plus", "minus"):
            op = self.take(self.peek()[0])
            q = self.term()
            p = p + q if op[0] == "plus" else p - q
        return p

    def term(self) -> Poly:
        sign = 1
        while self.peek()[0] in ("plus", "minus"):
            if self.take(self.peek()[0])[0] == "minus":
                sign = -sign
        p = self.factor()
        while self.peek()[0] == "star":
            self.take("star")
            p = p * self.factor()
        return p.scale(self.ring.field.of(sign))

    def factor(self) -> Poly:
        p = self.atom()
        if self.peek()[0] == "caret":
            self.take("caret")
            tok = self.take("int")
            p = p ** tok[1]
        return p

    def atom(self) -> Poly:
        kind, value, at = self.peek()
        if kind == "int":
            self.take("int")
            numer, denom = value, 1
            if self.peek()[0] == "slash":
                self.take("slash")
                denom_tok = self.take("int")
                denom = denom_tok[1]
                if denom == 0:
                    raise PolyParseError("zero denominator", denom_tok[2])
            try:
                c = self.ring.field.of(numer, denom)
            except GolodlabError as exc:
                raise PolyParseError(str(exc), at) from exc
            return self.ring.one().scale(c)
        if kind == "ident":
            self.take("ident")
            idx = self.ring._var_index.get(value)
            if idx is None:
                raise PolyParseError(f"unknown variable {value!r}", at)
            return self.ring.variable(idx)
        if kind == "lpar":
            self.take("lpar")
            p = self.expr()
            self.take("rpar")
            return p
        raise PolyParseError(f"expected a polynomial atom, found {value!r}", at)


def parse_poly(text: str, ring: WeightedPolyRing) -> Poly:
    return _Parser(ring, text).parse()


# ---------------------------------------------------------------------------
# ideals
# ---------------------------------------------------------------------------


class HomogeneousIdeal:
    """Ideal given by weighted-homogeneous generators (zero generators dropped)."""

    __slots__ = ("ring", "gens", "_groebner")

    def __init__(self, ring: WeightedPolyRing, gens: list[Poly]):
        for g in gens:
            if g.ring != ring:
                raise RingMismatchError("generator from a different ring")
            if g.weighted_degree() is NOT_HOMOGENEOUS:
                raise GolodlabError(f"ideal generator {g} is not weighted-homogeneous")
        self.ring = ring
        self.gens = [g for g in gens if not g.is_zero()]
        self._groebner = None  # cache set by groebner.buchberger

    def generator_degrees(self) -> list[int]:
        return [g.weighted_degree() for g in self.gens]

    def __repr__(self):
        return "(" + ", ".join(str(g) for g in self.gens) + ")"


def derivative_ideal(ideal: HomogeneousIdeal) -> HomogeneousIdeal:
    """Ideal generated by all partials of the listed generators.

    For the membership tests downstream this equals the ideal of all
    derivatives of all elements in characteristic zero (Euler + Leibniz).
    """
    ring = ideal.ring
    seen: dict = {}
    out: list[Poly] = []
    for g in ideal.gens:
        for i in range(ring.nvars):
            d = g.partial_derivative(i)
            if d.is_zero():
                continue
            key = frozenset(d.monic().terms.items())
            if key not in seen:
                seen[key] = True
                out.append(d)
    return HomogeneousIdeal(ring, out)

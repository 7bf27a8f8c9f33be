"""Truncated integer power series with per-coefficient completeness flags.

A flag of True means the coefficient is exact; False means it is only a
lower bound / unreliable because some contributing computation was cut by
the degree or homology window.  Arithmetic propagates flags pessimistically.
"""
from __future__ import annotations

from .errors import GolodlabError, InternalInvariantError


class TruncatedSeries:
    __slots__ = ("coeffs", "complete")

    def __init__(self, coeffs: list[int], complete: list[bool] | None = None):
        self.coeffs = list(coeffs)
        self.complete = list(complete) if complete is not None else [True] * len(coeffs)
        if len(self.complete) != len(self.coeffs):
            raise GolodlabError("flag/coefficient length mismatch")

    # -- constructors ----------------------------------------------------
    @staticmethod
    def from_polynomial(poly_coeffs: list[int], length: int) -> "TruncatedSeries":
        cs = list(poly_coeffs) + [0] * max(0, length - len(poly_coeffs))
        return TruncatedSeries(cs[:length])

    @staticmethod
    def one(length: int) -> "TruncatedSeries":
        return TruncatedSeries.from_polynomial([1], length)

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i]

    def __eq__(self, other):
        return (
            isinstance(other, TruncatedSeries)
            and self.coeffs == other.coeffs
            and self.complete == other.complete
        )

    def truncate(self, length: int) -> "TruncatedSeries":
        if length > len(self.coeffs):
            raise GolodlabError("cannot extend a truncated series")
        return TruncatedSeries(self.coeffs[:length], self.complete[:length])

    # -- arithmetic -------------------------------------------------------
    def _common_len(self, other: "TruncatedSeries") -> int:
        return min(len(self.coeffs), len(other.coeffs))

    def add(self, other: "TruncatedSeries") -> "TruncatedSeries":
        n = self._common_len(other)
        return TruncatedSeries(
            [self.coeffs[i] + other.coeffs[i] for i in range(n)],
            [self.complete[i] and other.complete[i] for i in range(n)],
        )

    def sub(self, other: "TruncatedSeries") -> "TruncatedSeries":
        n = self._common_len(other)
        return TruncatedSeries(
            [self.coeffs[i] - other.coeffs[i] for i in range(n)],
            [self.complete[i] and other.complete[i] for i in range(n)],
        )

    def add_scalar(self, c: int) -> "TruncatedSeries":
        out = TruncatedSeries(self.coeffs, self.complete)
        out.coeffs[0] += c
        return out

    def mul(self, other: "TruncatedSeries") -> "TruncatedSeries":
        n = self._common_len(other)
        coeffs = [0] * n
        flags = [True] * n
        for i in range(n):
            acc = 0
            ok = True
            for j in range(i + 1):
                acc += self.coeffs[j] * other.coeffs[i - j]
                ok = ok and self.complete[j] and other.complete[i - j]
            coeffs[i] = acc
            flags[i] = ok
        return TruncatedSeries(coeffs, flags)

    def shift(self, k: int = 1) -> "TruncatedSeries":
        """Multiply by t^k."""
        n = len(self.coeffs)
        coeffs = [0] * min(k, n) + self.coeffs[: max(0, n - k)]
        flags = [True] * min(k, n) + self.complete[: max(0, n - k)]
        return TruncatedSeries(coeffs, flags)

    def inverse(self) -> "TruncatedSeries":
        """Formal inverse; requires constant term +-1 so integrality is kept."""
        if not self.coeffs or self.coeffs[0] not in (1, -1):
            raise GolodlabError("series inverse needs constant term +-1")
        n = len(self.coeffs)
        a0 = self.coeffs[0]
        inv = [0] * n
        inv[0] = a0
        flags = [self.complete[0]] * n
        for i in range(1, n):
            acc = 0
            ok = self.complete[0]
            for j in range(1, i + 1):
                acc += self.coeffs[j] * inv[i - j]
                ok = ok and self.complete[j] and flags[i - j]
            inv[i] = -a0 * acc
            flags[i] = ok
        return TruncatedSeries(inv, flags)

    def div(self, denominator: "TruncatedSeries") -> "TruncatedSeries":
        return self.mul(denominator.inverse())

    # -- comparisons -------------------------------------------------------
    def agrees_with(self, other: "TruncatedSeries", through: int | None = None) -> bool:
        """Equality of coefficients where both sides are complete (optionally
        only through the given index)."""
        n = self._common_len(other)
        if through is not None:
            n = min(n, through + 1)
        return all(
            self.coeffs[i] == other.coeffs[i]
            for i in range(n)
            if self.complete[i] and other.complete[i]
        )

    def first_complete_difference(self, other: "TruncatedSeries"):
        """Smallest i where both coefficients are complete yet differ, else None."""
        n = self._common_len(other)
        for i in range(n):
            if self.complete[i] and other.complete[i] and self.coeffs[i] != other.coeffs[i]:
                return i
        return None

    def assert_termwise_at_most(self, bound: "TruncatedSeries", what: str = "series"):
        """Lower-bound coefficients may never exceed the bound's complete ones."""
        n = self._common_len(bound)
        for i in range(n):
            if bound.complete[i] and self.coeffs[i] > bound.coeffs[i]:
                raise InternalInvariantError(
                    f"{what}: coefficient {i} is {self.coeffs[i]} > bound {bound.coeffs[i]}"
                )

    # -- output -------------------------------------------------------------
    def complete_through(self) -> int:
        """Largest index i with all coefficients 0..i complete (-1 if none)."""
        k = -1
        for i, flag in enumerate(self.complete):
            if not flag:
                break
            k = i
        return k

    def format(self, name: str = "P") -> str:
        chunks = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                chunks.append(str(c))
            elif i == 1:
                chunks.append(f"{c}t" if c != 1 else "t")
            else:
                chunks.append(f"{c}t^{i}" if c != 1 else f"t^{i}")
        body = " + ".join(chunks) if chunks else "0"
        k = self.complete_through()
        status = f"[complete through t^{k}]" if k >= 0 else "[no complete coefficients]"
        return f"{name}(t) = {body} {status}"

    def to_json(self) -> dict:
        return {"coeffs": list(self.coeffs), "complete": list(self.complete)}

    def __repr__(self):
        return self.format("series")

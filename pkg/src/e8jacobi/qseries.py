"""Truncated q-expansions with exact rational coefficients.

A QSeries holds orders q^0 .. q^(trunc-1).  Binary operations truncate to the
shorter operand — exactness is never traded for extra orders.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .lattice import sigma


class QSeries:
    __slots__ = ("trunc", "coeffs")

    def __init__(self, coeffs, trunc: int | None = None):
        coeffs = [Fraction(c) for c in coeffs]
        if trunc is None:
            trunc = len(coeffs)
        if len(coeffs) < trunc:
            coeffs += [Fraction(0)] * (trunc - len(coeffs))
        self.trunc = trunc
        self.coeffs = tuple(coeffs[:trunc])

    @classmethod
    def constant(cls, value, trunc: int) -> "QSeries":
        return cls([Fraction(value)], trunc)

    def __getitem__(self, n: int) -> Fraction:
        if not 0 <= n < self.trunc:
            raise IndexError(f"order q^{n} beyond truncation {self.trunc}")
        return self.coeffs[n]

    def truncate(self, trunc: int) -> "QSeries":
        if trunc > self.trunc:
            raise ValueError(f"cannot extend truncation {self.trunc} to {trunc}")
        return QSeries(self.coeffs[:trunc], trunc)

    def __add__(self, other):
        other = _coerce(other, self.trunc)
        n = min(self.trunc, other.trunc)
        return QSeries([self.coeffs[i] + other.coeffs[i] for i in range(n)], n)

    def __sub__(self, other):
        other = _coerce(other, self.trunc)
        n = min(self.trunc, other.trunc)
        return QSeries([self.coeffs[i] - other.coeffs[i] for i in range(n)], n)

    def __neg__(self):
        return QSeries([-c for c in self.coeffs], self.trunc)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        n = min(self.trunc, other.trunc)
        out = [Fraction(0)] * n
        for i, a in enumerate(self.coeffs[:n]):
            if not a:
                continue
            for j in range(n - i):
                b = other.coeffs[j]
                if b:
                    out[i + j] += a * b
        return QSeries(out, n)

    __radd__ = __add__
    __rmul__ = __mul__

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "QSeries":
        c = Fraction(c)
        return QSeries([a * c for a in self.coeffs], self.trunc)

    def shift(self, k: int) -> "QSeries":
        """Multiply by q^k (k >= 0)."""
        return QSeries([Fraction(0)] * k + list(self.coeffs), self.trunc + k)

    def valuation(self) -> int | None:
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        return None

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(Fraction(1, 1) / Fraction(other))
        v = other.valuation()
        if v is None:
            raise ZeroDivisionError("division by identically-zero series")
        if v:
            sv = self.valuation()
            if sv is None:
                return QSeries([], min(self.trunc, other.trunc) - v)
            if sv < v:
                raise ValueError(f"quotient would have a pole: valuations {sv} < {v}")
            return self._shifted_div(other, v)
        return self._shifted_div(other, 0)

    def _shifted_div(self, other: "QSeries", v: int) -> "QSeries":
        n = min(self.trunc, other.trunc) - v
        lead = other.coeffs[v]
        out: list[Fraction] = []
        for i in range(n):
            acc = self.coeffs[i + v]
            for j in range(1, i + 1):
                acc -= other.coeffs[v + j] * out[i - j]
            out.append(acc / lead)
        return QSeries(out, n)

    def __pow__(self, e: int):
        assert e >= 0
        out = QSeries.constant(1, self.trunc)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = QSeries.constant(other, self.trunc)
        n = min(self.trunc, other.trunc)
        return self.coeffs[:n] == other.coeffs[:n]

    def __hash__(self):
        return hash((self.trunc, self.coeffs))

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def __repr__(self):
        parts: list[str] = []
        for n, c in enumerate(self.coeffs):
            if not c:
                continue
            mag = abs(c)
            if n == 0:
                body = str(mag)
            else:
                power = "q" if n == 1 else f"q^{n}"
                body = power if mag == 1 else f"{mag}*{power}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(("+ " if c > 0 else "- ") + body)
        lead = " ".join(parts) if parts else "0"
        return f"{lead} + O(q^{self.trunc})"


def _coerce(x, trunc: int) -> QSeries:
    if isinstance(x, QSeries):
        return x
    return QSeries.constant(x, trunc)


@lru_cache(maxsize=None)
def eisenstein(k: int, trunc: int) -> QSeries:
    """Normalized Eisenstein series E2, E4 or E6 (constant term 1)."""
    if k not in (2, 4, 6):
        raise ValueError(f"eisenstein weight must be 2, 4 or 6, got {k}")
    front = {2: -24, 4: 240, 6: -504}[k]
    coeffs = [Fraction(1)] + [Fraction(front * sigma(n, k - 1)) for n in range(1, trunc)]
    return QSeries(coeffs, trunc)


@lru_cache(maxsize=None)
def discriminant(trunc: int) -> QSeries:
    """Delta = (E4^3 - E6^2)/1728 = q - 24q^2 + 252q^3 - ..."""
    e4 = eisenstein(4, trunc)
    e6 = eisenstein(6, trunc)
    return (e4 ** 3 - e6 ** 2) / 1728


def eta_power_24(trunc: int) -> QSeries:
    """q * prod_{n>=1} (1 - q^n)^24, the product-side oracle for discriminant."""
    out = QSeries.constant(1, trunc)
    for n in range(1, trunc):
        factor = [Fraction(0)] * trunc
        factor[0] = Fraction(1)
        if n < trunc:
            factor[n] = Fraction(-1)
        out = out * QSeries(factor, trunc) ** 24
    return out.shift(1).truncate(trunc)

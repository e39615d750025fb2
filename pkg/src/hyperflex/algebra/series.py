"""Power series with exact rational coefficients known modulo x^N."""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Sequence

from ..errors import ConvergenceError, DomainError


class TruncatedSeries:
    __slots__ = ("coeffs", "prec")

    def __init__(self, coeffs: Sequence = (), prec: int = 0):
        if prec < 0:
            raise DomainError("negative precision")
        cs = [Fraction(c) for c in list(coeffs)[:prec]]
        cs += [Fraction(0)] * (prec - len(cs))
        self.coeffs = tuple(cs)
        self.prec = prec

    @classmethod
    def zero(cls, prec: int) -> "TruncatedSeries":
        return cls((), prec)

    @classmethod
    def monomial(cls, n: int, prec: int, c=1) -> "TruncatedSeries":
        return cls([0] * n + [c], prec)

    def __getitem__(self, n: int) -> Fraction:
        if n >= self.prec:
            raise IndexError(f"coefficient x^{n} is beyond the precision O(x^{self.prec})")
        return self.coeffs[n]

    def valuation(self) -> int:
        """Index of the first nonzero coefficient, or the precision if none is known."""
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        return self.prec

    def truncate(self, n: int) -> "TruncatedSeries":
        return TruncatedSeries(self.coeffs, min(n, self.prec))

    def agrees_with(self, other: "TruncatedSeries") -> bool:
        n = min(self.prec, other.prec)
        return self.coeffs[:n] == other.coeffs[:n]

    def __eq__(self, other):
        return (
            isinstance(other, TruncatedSeries)
            and self.prec == other.prec
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.coeffs, self.prec))

    def __add__(self, other):
        if not isinstance(other, TruncatedSeries):
            other = TruncatedSeries([other], self.prec)
        n = min(self.prec, other.prec)
        return TruncatedSeries([self.coeffs[i] + other.coeffs[i] for i in range(n)], n)

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries([-c for c in self.coeffs], self.prec)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, TruncatedSeries):
            c = Fraction(other)
            return TruncatedSeries([a * c for a in self.coeffs], self.prec)
        va, vb = self.valuation(), other.valuation()
        n = min(self.prec + vb, other.prec + va)
        out = [Fraction(0)] * n
        a, b = self.coeffs, other.coeffs
        for i in range(va, min(len(a), n)):
            ai = a[i]
            if not ai:
                continue
            for j in range(vb, min(len(b), n - i)):
                out[i + j] += ai * b[j]
        return TruncatedSeries(out, n)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = TruncatedSeries([1], self.prec)
        for _ in range(k):
            result = result * self
        return result

    def shift(self, k: int) -> "TruncatedSeries":
        """Multiply by x^k."""
        return TruncatedSeries([0] * k + list(self.coeffs), self.prec + k)

    def inverse(self) -> "TruncatedSeries":
        if self.prec == 0:
            return self
        a0 = self.coeffs[0]
        if not a0:
            raise DomainError("series with zero constant term is not invertible")
        inv0 = 1 / a0
        b = [inv0]
        for n in range(1, self.prec):
            s = sum(self.coeffs[k] * b[n - k] for k in range(1, n + 1))
            b.append(-inv0 * s)
        return TruncatedSeries(b, self.prec)

    def __truediv__(self, other):
        if isinstance(other, TruncatedSeries):
            return self * other.inverse()
        return self * (1 / Fraction(other))

    def derivative(self) -> "TruncatedSeries":
        return TruncatedSeries(
            [i * c for i, c in enumerate(self.coeffs)][1:], max(self.prec - 1, 0)
        )

    def integral(self) -> "TruncatedSeries":
        """Antiderivative with zero constant term; precision rises by one."""
        return TruncatedSeries(
            [0] + [c / (i + 1) for i, c in enumerate(self.coeffs)], self.prec + 1
        )

    def __repr__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}" if i == 0 else f"{c}*x^{i}")
        body = " + ".join(terms) if terms else "0"
        return f"{body} + O(x^{self.prec})"

    def to_strings(self) -> list[str]:
        return [f"{c.numerator}/{c.denominator}" for c in self.coeffs]


def series_solve_fixed_point(
    rule: Callable[[TruncatedSeries], TruncatedSeries],
    seed: TruncatedSeries,
    order: int,
) -> TruncatedSeries:
    """Iterate z <- rule(z) modulo x^order until it stabilizes.

    The valuation of the correction must rise strictly at every step, which
    bounds the number of iterations by ``order``.
    """
    z = TruncatedSeries(seed.coeffs, order)
    last_val = -1
    for _ in range(order + 1):
        nxt = rule(z)
        if nxt.prec < order:
            raise ConvergenceError(f"update rule lost precision ({nxt.prec} < {order})")
        nxt = nxt.truncate(order)
        corr = nxt - z
        v = corr.valuation()
        if v >= order:
            return nxt
        if v <= last_val:
            raise ConvergenceError(
                f"correction valuation did not increase ({last_val} -> {v})"
            )
        last_val = v
        z = nxt
    raise ConvergenceError("no fixed point within the iteration bound")  # pragma: no cover

"""p-adic valuations, Newton polygons and residual polynomials."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..errors import DomainError
from .poly import Poly
from .rings import PrimeField, is_prime


def valuation(x, p: int) -> int | float:
    """p-adic valuation of an int or Fraction; +inf for zero."""
    if not x:
        return float("inf")
    x = Fraction(x)
    v = 0
    n, d = x.numerator, x.denominator
    while n % p == 0:
        n //= p
        v += 1
    while d % p == 0:
        d //= p
        v -= 1
    return v


def unit_part(x, p: int) -> Fraction:
    x = Fraction(x)
    return x / Fraction(p) ** valuation(x, p)


@dataclass(frozen=True)
class Segment:
    slope: Fraction
    length: int
    start: tuple[int, int]  # (exponent, valuation) of the left endpoint

    @property
    def end(self) -> tuple[int, int]:
        return (self.start[0] + self.length, self.start[1] + self.slope * self.length)

    @property
    def ramification(self) -> int:
        """Denominator e of the slope -h/e in lowest terms."""
        return self.slope.denominator

    @property
    def residual_degree(self) -> int:
        return self.length // self.ramification


@dataclass(frozen=True)
class NewtonPolygon:
    p: int
    segments: tuple[Segment, ...]

    @property
    def slopes(self) -> list[Fraction]:
        return [s.slope for s in self.segments]

    def total_length(self) -> int:
        return sum(s.length for s in self.segments)

    def root_valuations(self) -> list[Fraction]:
        """Valuations of the nonzero roots, with multiplicity."""
        out = []
        for s in self.segments:
            out += [-s.slope] * s.length
        return out

    def value_at(self, i: int) -> Fraction:
        for s in self.segments:
            if s.start[0] <= i <= s.start[0] + s.length:
                return s.start[1] + s.slope * (i - s.start[0])
        raise DomainError(f"{i} is outside the polygon")


def _cross(o, a, b) -> Fraction:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def newton_polygon(f: Poly, p: int) -> NewtonPolygon:
    """Lower convex hull of (i, v_p(c_i)); segments ordered by increasing slope."""
    if not f:
        raise DomainError("Newton polygon of the zero polynomial")
    if not is_prime(p):
        raise DomainError(f"{p} is not prime")
    pts = [(i, valuation(c, p)) for i, c in enumerate(f.coeffs) if c]
    hull: list[tuple[int, int]] = []
    for pt in pts:
        # pop while the turn is not strictly counter-clockwise (keeps only vertices)
        while len(hull) >= 2 and _cross(hull[-2], hull[-1], pt) <= 0:
            hull.pop()
        hull.append(pt)
    segs = []
    for a, b in zip(hull, hull[1:]):
        segs.append(Segment(Fraction(b[1] - a[1], b[0] - a[0]), b[0] - a[0], a))
    return NewtonPolygon(p, tuple(segs))


def residual_polynomial(f: Poly, p: int, segment: Segment) -> Poly:
    """Residual polynomial over F_p attached to a segment of the Newton polygon.

    For slope -h/e the lattice points of the segment sit at exponents
    i0, i0+e, ..., i0+L; their coefficients divided by p^(height on the
    segment) and reduced mod p give the coefficients, in order.  Points
    strictly above the segment contribute zero.
    """
    poly = newton_polygon(f, p)
    if segment not in poly.segments:
        raise DomainError("segment is not on the Newton polygon")
    e = segment.ramification
    i0, v0 = segment.start
    F = PrimeField(p)
    coeffs = []
    for j in range(segment.residual_degree + 1):
        i = i0 + j * e
        height = v0 + segment.slope * (i - i0)
        c = f[i]
        if c and valuation(c, p) == height:
            coeffs.append(F.reduce(Fraction(c) / Fraction(p) ** int(height)))
        else:
            coeffs.append(0)
    return Poly(coeffs, F)

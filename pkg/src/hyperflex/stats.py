"""Finite-field sweeps, the height box, the rank/point-count arithmetic and the JSON report."""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .algebra.rings import PrimeField, is_prime
from .errors import DomainError
from .family import FamilyPoint, coordinate_bounds, is_smooth, point_count, weil_envelope


def decimal(q: Fraction, digits: int = 6) -> str:
    q = Fraction(q)
    sign = "-" if q < 0 else ""
    n = round(abs(q) * 10**digits)
    whole, frac = divmod(n, 10**digits)
    return f"{sign}{whole}.{frac:0{digits}d}"


@dataclass(frozen=True)
class SweepSlice:
    first: int
    total: int
    smooth: int
    max_points: int
    argmax: tuple | None
    min_points: int | None


def _sweep_slice(p: int, first: int) -> SweepSlice:
    F = PrimeField(p)
    smooth = 0
    best, arg, low = -1, None, None
    total = 0
    for rest in itertools.product(range(p), repeat=5):
        b = FamilyPoint(first, *rest)
        total += 1
        if not is_smooth(b, F):
            continue
        smooth += 1
        n = point_count(b, F)
        if n > best:
            best, arg = n, tuple(b)
        if low is None or n < low:
            low = n
    return SweepSlice(first, total, smooth, best, arg, low)


@lru_cache(maxsize=None)
def sweep(p: int, workers: int | None = None) -> tuple[SweepSlice, ...]:
    """All of F_p^6 partitioned by the first coordinate; slices merge in order of that coordinate."""
    if not is_prime(p):
        raise DomainError(f"{p} is not prime")
    firsts = range(p)
    if workers == 1:
        return tuple(_sweep_slice(p, f) for f in firsts)
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return tuple(pool.map(_sweep_slice, [p] * p, firsts))


@dataclass(frozen=True)
class DensityReport:
    p: int
    total: int
    smooth: int

    @property
    def density(self) -> Fraction:
        return Fraction(self.smooth, self.total)

    def to_json(self) -> dict:
        return {
            "prime": self.p,
            "total": self.total,
            "smooth": self.smooth,
            "density": f"{self.density.numerator}/{self.density.denominator}",
            "decimal": decimal(self.density),
        }


def density_good_reduction(p: int, workers: int | None = None) -> DensityReport:
    slices = sweep(p, workers)
    total = sum(s.total for s in slices)
    if total != p**6:
        raise ArithmeticError("sweep did not cover F_p^6")
    return DensityReport(p, total, sum(s.smooth for s in slices))


def max_points(p: int, workers: int | None = None) -> tuple[int, FamilyPoint, int]:
    """(max #C_b(F_p) over smooth b, a witness, min over smooth b)."""
    slices = [s for s in sweep(p, workers) if s.smooth]
    best = max(slices, key=lambda s: (s.max_points, -s.first))
    low = min(s.min_points for s in slices)
    return best.max_points, FamilyPoint(*best.argmax), low


def max_points_F7(workers: int | None = None) -> tuple[int, FamilyPoint]:
    n, witness, _ = max_points(7, workers)
    return n, witness


@dataclass(frozen=True)
class ChabautyReport:
    S: Fraction
    delta_low: Fraction
    d7: Fraction
    majority_low: Fraction
    max_f7: int
    point_cap: int

    def to_json(self) -> dict:
        f = lambda q: f"{q.numerator}/{q.denominator}"  # noqa: E731
        return {
            "selmer_bound": f(self.S),
            "delta_low": f(self.delta_low),
            "d7": f(self.d7),
            "majority_low": f(self.majority_low),
            "majority_low_decimal": decimal(self.majority_low),
            "max_points_F7": self.max_f7,
            "point_cap": self.point_cap,
        }


def chabauty_combine(S, d7, max_f7: int) -> ChabautyReport:
    """delta >= (8 - S)/7 from delta + (1 - delta) 2^3 <= S; cap = max #C(F_7) + 2*rank with rank <= 2."""
    S, d7 = Fraction(S), Fraction(d7)
    if S < 1:
        raise DomainError("the Selmer average is at least 1")
    if not 0 <= d7 <= 1:
        raise DomainError("d7 is a density")
    delta = min(max((8 - S) / 7, Fraction(0)), Fraction(1))
    majority = max(Fraction(0), delta + d7 - 1)
    return ChabautyReport(S, delta, d7, majority, max_f7, max_f7 + 4)


@dataclass(frozen=True)
class BoxCount:
    a: int
    count: int

    @property
    def ratio(self) -> float:
        return self.count / (64 * self.a ** (7 / 12))

    def to_json(self) -> dict:
        return {"height": str(self.a), "count": self.count, "ratio": f"{self.ratio:.6f}"}


def box_count(a: int) -> BoxCount:
    n = 1
    for N in coordinate_bounds(a):
        n *= 2 * N + 1
    return BoxCount(a, n)


def serre_weil_max(q: int = 7) -> int:
    return weil_envelope(q)[1]


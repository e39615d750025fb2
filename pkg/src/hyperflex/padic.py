"""The residue disk at infinity: branch series, regular differentials, logarithm, rho o log.

In the chart y = 1 the curve reads

    z = x^4 + p2 x^2 z + p5 x z^2 + p8 z^3 + p6 x^2 z^2 + p9 x z^3 + p12 z^4,

and x is a local parameter at (0:1:0).  When the reduction mod p is smooth with
a single F_p-point, every Q_p-point lies in this disk and corresponds to a
unique x in pZ_p.

Valuation claims are made stratum by stratum on v(x) = m: a term c_n x^n has
valuation v(c_n) + n m, and for integral b every log coefficient satisfies
v(c_n) >= -v(n) >= -floor(log_p n), which bounds the unseen tail.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .algebra.newton import unit_part, valuation
from .algebra.poly import Poly
from .algebra.rings import PrimeField, is_prime
from .algebra.series import TruncatedSeries, series_solve_fixed_point
from .errors import DomainError, InconclusiveError, ScopeError
from .family import FamilyPoint, is_smooth, point_count

INF = float("inf")


@dataclass(frozen=True)
class BranchSeries:
    b: FamilyPoint
    z: TruncatedSeries

    @property
    def prec(self) -> int:
        return self.z.prec

    def residual(self) -> TruncatedSeries:
        """z - (right-hand side) evaluated on the branch; zero mod x^prec."""
        return self.z - branch_rule(self.b, self.prec)(self.z)


def branch_rule(b: FamilyPoint, N: int):
    p2, p5, p6, p8, p9, p12 = (Fraction(c) for c in b)
    x = TruncatedSeries.monomial(1, N)
    x2 = x * x
    x4 = TruncatedSeries.monomial(4, N)

    def rule(z: TruncatedSeries) -> TruncatedSeries:
        z2 = z * z
        z3 = z2 * z
        return (
            x4
            + x2 * z * p2
            + x * z2 * p5
            + z3 * p8
            + x2 * z2 * p6
            + x * z3 * p9
            + z3 * z * p12
        )

    return rule


def solve_branch(b: FamilyPoint, N: int) -> BranchSeries:
    if N < 5:
        raise DomainError("branch precision must be at least 5")
    z = series_solve_fixed_point(branch_rule(b, N), TruncatedSeries.zero(N), N)
    return BranchSeries(b, z)


def _z_partial(b: FamilyPoint, z: TruncatedSeries) -> TruncatedSeries:
    # d/dz of z - x^4 - p2 x^2 z - ...; constant term 1
    p2, p5, p6, p8, p9, p12 = (Fraction(c) for c in b)
    N = z.prec
    x = TruncatedSeries.monomial(1, N)
    x2 = x * x
    z2 = z * z
    return (
        1
        - x2 * p2
        - x * z * (2 * p5)
        - z2 * (3 * p8)
        - x2 * z * (2 * p6)
        - x * z2 * (3 * p9)
        - z2 * z * (4 * p12)
    )


def omega_basis(b: FamilyPoint, N: int) -> tuple[TruncatedSeries, ...]:
    """(omega1, x omega1, z omega1) as series in x, each known mod x^N."""
    z = solve_branch(b, max(N, 5)).z.truncate(N)
    w1 = _z_partial(b, z).inverse().truncate(N)
    x = TruncatedSeries.monomial(1, N)
    return w1, (x * w1).truncate(N), (z * w1).truncate(N)


@dataclass(frozen=True)
class LogSeries:
    components: tuple[TruncatedSeries, TruncatedSeries, TruncatedSeries]
    p: int
    prec: int

    def tail_bound_violations(self) -> list[tuple[int, int]]:
        """(component, n) pairs where v_p(c_n) < -v_p(n)."""
        bad = []
        for j, s in enumerate(self.components):
            for n in range(1, s.prec):
                c = s[n]
                if c and valuation(c, self.p) < -valuation(n, self.p):
                    bad.append((j + 1, n))
        return bad

    def to_json(self) -> dict:
        return {
            "prime": self.p,
            "order": self.prec,
            "components": [s.to_strings() for s in self.components],
        }


def formal_log(b: FamilyPoint, p: int, N: int) -> LogSeries:
    """Term-by-term antiderivatives of the omega basis, known mod x^N."""
    if not is_prime(p):
        raise DomainError(f"{p} is not prime")
    omegas = omega_basis(b, N - 1)
    comps = tuple(w.integral().truncate(N) for w in omegas)
    return LogSeries(comps, p, N)


def rho(v: Sequence, p: int) -> tuple[int, int, int]:
    """Reduction to P^2(F_p): clear the minimal p-power, reduce, scale the first nonzero entry to 1."""
    vals = [valuation(Fraction(c), p) for c in v]
    mu = min(vals)
    if mu == INF:
        raise DomainError("the zero vector has no projective class")
    red = [
        int(PrimeField(p).reduce(unit_part(Fraction(c), p))) if w == mu else 0
        for c, w in zip(v, vals)
    ]
    return _normalize(red, p)


def _normalize(vec, p: int) -> tuple[int, ...]:
    lead = next(c for c in vec if c % p)
    inv = pow(lead, -1, p)
    return tuple(c * inv % p for c in vec)


# -- stratified valuation analysis ----------------------------------------------


def _floor_log(n: int, p: int) -> int:
    k = 0
    while p ** (k + 1) <= n:
        k += 1
    return k


@dataclass(frozen=True)
class _Terms:
    """Nonzero coefficients (n, v_p(c_n), unit residue mod p) and the tail model."""

    terms: tuple[tuple[int, int, int], ...]
    p: int
    tail_from: int | None  # None: the series is an exact polynomial

    @classmethod
    def build(cls, coeffs: Sequence, p: int, tail_from: int | None) -> "_Terms":
        F = PrimeField(p)
        terms = tuple(
            (n, valuation(Fraction(c), p), F.reduce(unit_part(Fraction(c), p)))
            for n, c in enumerate(coeffs)
            if c
        )
        return cls(terms, p, tail_from)

    def tail(self, m: int) -> float:
        if self.tail_from is None:
            return INF
        N = self.tail_from
        return N * m - _floor_log(N, self.p)

    def leading(self, m: int):
        """(mu, tied terms) for the minimum known valuation at v(x) = m, or None if all terms vanish."""
        if not self.terms:
            return None
        mu = min(v + n * m for n, v, _ in self.terms)
        tied = [(n, r) for n, v, r in self.terms if v + n * m == mu]
        return mu, tied

    def threshold(self) -> int:
        """m beyond which the lowest-order term dominates strictly (against the tail too)."""
        if not self.terms:
            raise InconclusiveError("no nonzero coefficient below the working precision")
        n0, v0, _ = self.terms[0]
        m = 1
        for n, v, _ in self.terms[1:]:
            # need v0 + n0 m < v + n m
            m = max(m, (v0 - v) // (n - n0) + 1)
        if self.tail_from is not None:
            N = self.tail_from
            if N <= n0:
                raise InconclusiveError("precision does not exceed the leading term")
            m = max(m, (v0 + _floor_log(N, self.p)) // (N - n0) + 1)
        return m


def _crossing(a0: int, n0: int, a1: int, n1: int) -> int:
    """m beyond which the sign of (a0 + n0 m) - (a1 + n1 m) is constant."""
    if n0 == n1:
        return 1
    return max(1, abs(a1 - a0) // abs(n0 - n1) + 1)


def _component_at(t: _Terms, m: int, u: int):
    """Exact (valuation, residue) of the component at x = p^m u, or (lower bound, None)."""
    lead = t.leading(m)
    tail = t.tail(m)
    if lead is None or lead[0] >= tail:
        return tail, None
    mu, tied = lead
    s = sum(r * pow(u, n, t.p) for n, r in tied) % t.p
    if s == 0:
        raise InconclusiveError(
            f"leading terms cancel at v(x)={m}, u={u}; valuation not decided by first-order data"
        )
    return mu, s


def _check_scope(b: FamilyPoint, p: int) -> None:
    if not is_prime(p):
        raise DomainError(f"{p} is not prime")
    if any(Fraction(c).denominator != 1 for c in b):
        raise ScopeError("the disk analysis needs an integral family point")
    F = PrimeField(p)
    if not is_smooth(b, F):
        raise ScopeError(f"bad reduction at {p}")
    n = point_count(b, F)
    if n != 1:
        raise ScopeError(f"#C(F_{p}) = {n}; the analysis covers a single residue disk")


def _log_terms(b: FamilyPoint, p: int, N: int) -> tuple[LogSeries, list[_Terms]]:
    log = formal_log(b, p, N)
    bad = log.tail_bound_violations()
    if bad:
        raise ScopeError(f"tail bound fails at {bad[:3]}")
    return log, [_Terms.build(s.coeffs, p, N) for s in log.components]


def rho_log_image(b: FamilyPoint, p: int, N: int = 13) -> tuple[set, dict]:
    """The set rho(log(P)) over P != P_inf in the disk, with a per-stratum certificate."""
    _check_scope(b, p)
    _, comps = _log_terms(b, p, N)
    M = max(t.threshold() for t in comps)
    lows = [(t.terms[0][1], t.terms[0][0]) for t in comps]
    for i in range(3):
        for j in range(i + 1, 3):
            M = max(M, _crossing(*lows[i], *lows[j]))
    units = range(1, p)
    image: set = set()
    strata = []
    for m in range(1, M + 1):
        pts = set()
        vals_seen = None
        for u in units:
            data = [_component_at(t, m, u) for t in comps]
            exact = [v for v, r in data if r is not None]
            if not exact:
                raise InconclusiveError(f"no component valuation decided at v(x)={m}")
            mu = min(exact)
            vec = []
            for v, r in data:
                if r is None:
                    if v <= mu:
                        raise InconclusiveError(
                            f"tail bound {v} does not clear the minimum {mu} at v(x)={m}"
                        )
                    vec.append(0)
                else:
                    vec.append(r if v == mu else 0)
            pts.add(_normalize(vec, p))
            vals_seen = [v if r is not None else f">={v}" for v, r in data]
        image |= pts
        strata.append(
            {
                "m": m,
                "valuations": vals_seen,
                "points": sorted(list(pt) for pt in pts),
                "stable_beyond": m == M,
            }
        )
    cert = {
        "prime": p,
        "order": N,
        "tail_bound": "v(c_n x^n) >= n*m - floor(log_p n) for n >= order",
        "stabilization_m": M,
        "strata": strata,
        "note": "x = 0 is the base point, where log vanishes",
    }
    return image, cert


def _residual_has_root(tied, p: int) -> str:
    """'none', 'simple' or 'multiple' for the residual sum over units of F_p."""
    F = PrimeField(p)
    top = max(n for n, _ in tied)
    cs = [0] * (top + 1)
    for n, r in tied:
        cs[n] = (cs[n] + r) % p
    S = Poly(cs, F)
    dS = S.derivative()
    found = "none"
    for u in range(1, p):
        if S(u) % p == 0:
            if dS(u) % p:
                return "simple"
            found = "multiple"
    return found


def series_has_disk_root(coeffs: Sequence, p: int, tail_from: int | None) -> tuple[bool, list]:
    """Decide whether sum c_n x^n has a root x != 0 with v(x) >= 1.

    ``tail_from`` is the precision of a truncation whose coefficients obey the
    integrality tail bound, or None when ``coeffs`` is the whole polynomial.
    """
    t = _Terms.build(coeffs, p, tail_from)
    M = t.threshold()
    strata = []
    for m in range(1, M + 1):
        mu, tied = t.leading(m)
        if mu >= t.tail(m):
            raise InconclusiveError(f"tail reaches the leading valuation at v(x)={m}")
        kind = "dominant" if len(tied) == 1 else _residual_has_root(tied, p)
        strata.append({"m": m, "valuation": mu, "terms": [n for n, _ in tied], "residual_root": kind})
        if kind == "simple":
            return True, strata
        if kind == "multiple":
            raise InconclusiveError(f"repeated residual root at v(x)={m}")
    return False, strata


def torsion_disk_check(b: FamilyPoint, p: int, N: int = 13) -> bool:
    """True iff the third log component has no root x != 0 in pZ_p."""
    return torsion_disk_certificate(b, p, N)[0]


def torsion_disk_certificate(b: FamilyPoint, p: int, N: int = 13) -> tuple[bool, dict]:
    _check_scope(b, p)
    log, comps = _log_terms(b, p, N)
    has_root, strata = series_has_disk_root(log.components[2].coeffs, p, N)
    return not has_root, {"prime": p, "order": N, "component": 3, "strata": strata}


def sieve_lower_bound(selmer_eq_bound, image_size: int) -> Fraction:
    """1 - s - k s: density of curves whose only rational point is P_inf under the sieve."""
    s = Fraction(selmer_eq_bound)
    if s < 0:
        raise DomainError("the Selmer equidistribution bound must be nonnegative")
    if not 0 <= image_size <= 7:
        raise DomainError("image size must lie in [0, 7] (points of P^2(F_2))")
    return 1 - s - image_size * s

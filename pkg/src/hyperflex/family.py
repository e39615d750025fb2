"""The hyperflex family y^3 = x^4 + (p2 x^2 + p5 x + p8) y + p6 x^2 + p9 x + p12.

Construction, height, minimality, weighted scaling, enumeration by height,
the divided discriminant, smoothness over fields and point counts over
finite fields.
"""

from __future__ import annotations

import itertools
import json
from functools import lru_cache
from typing import Iterator, NamedTuple

from .algebra.factor import factor
from .algebra.forms import TernaryForm
from .algebra.poly import Poly
from .algebra.resultant import macaulay_resultant_ternary, resultant_univariate
from .algebra.rings import QQ, ZZ, Domain, ExtensionField, PolynomialRing, PrimeField
from .errors import DomainError

WEIGHTS = (2, 5, 6, 8, 9, 12)
NAMES = ("p2", "p5", "p6", "p8", "p9", "p12")

# disc(F) = Res(F_x, F_y, F_z) / 4^((3^3 + 1)/4) for a ternary quartic F
DISC_NORMALIZATION = 2**14


class FamilyPoint(NamedTuple):
    p2: object
    p5: object
    p6: object
    p8: object
    p9: object
    p12: object

    @classmethod
    def parse(cls, text: str) -> "FamilyPoint":
        """Parse the text form "p2,p5,p6,p8,p9,p12"."""
        parts = [s.strip() for s in text.split(",")]
        if len(parts) != 6:
            raise DomainError(f"expected six comma-separated integers, got {text!r}")
        try:
            return cls(*(int(s) for s in parts))
        except ValueError as exc:
            raise DomainError(f"not an integer tuple: {text!r}") from exc

    @classmethod
    def from_json(cls, data) -> "FamilyPoint":
        if isinstance(data, str):
            data = json.loads(data)
        try:
            return cls(*(int(data[k]) for k in NAMES))
        except (KeyError, ValueError, TypeError) as exc:
            raise DomainError(f"bad FamilyPoint JSON: {data!r}") from exc

    def to_json(self) -> dict:
        return {k: str(v) for k, v in zip(NAMES, self)}

    def to_text(self) -> str:
        return ",".join(str(v) for v in self)

    def scale(self, lam) -> "FamilyPoint":
        """Weighted action (p_i) -> (lam^i p_i)."""
        return FamilyPoint(*(c * lam**w for c, w in zip(self, WEIGHTS)))

    def reduce(self, dom: Domain) -> "FamilyPoint":
        return FamilyPoint(*(dom.reduce(c) for c in self))

    def is_zero(self) -> bool:
        return not any(self)


def homogenize(b: FamilyPoint, dom: Domain = ZZ) -> TernaryForm:
    """y^3 z - x^4 - (p2 x^2 z + p5 x z^2 + p8 z^3) y - (p6 x^2 z^2 + p9 x z^3 + p12 z^4)."""
    p2, p5, p6, p8, p9, p12 = b
    terms = {
        (0, 3, 1): 1,
        (4, 0, 0): -1,
        (2, 1, 1): -p2,
        (1, 1, 2): -p5,
        (0, 1, 3): -p8,
        (2, 0, 2): -p6,
        (1, 0, 3): -p9,
        (0, 0, 4): -p12,
    }
    return TernaryForm(4, terms, dom)


def trigonal_form(b: FamilyPoint, dom: Domain = ZZ) -> tuple[Poly, Poly]:
    """(P, Q) with the affine curve y^3 - P(x) y - Q(x) = 0."""
    p2, p5, p6, p8, p9, p12 = b
    P = Poly([p8, p5, p2], dom)
    Q = Poly([p12, p9, p6, 0, 1], dom)
    return P, Q


# -- height and minimality --------------------------------------------------


def height_less_than(b: FamilyPoint, a: int) -> bool:
    """ht(b) < a, decided exactly as |p_i|^72 < a^i for every weight i."""
    if a < 1:
        raise DomainError("height bound must be a positive integer")
    return all(abs(c) ** 72 < a**w for c, w in zip(b, WEIGHTS))


def iroot(n: int, k: int) -> int:
    """floor(n ** (1/k)) for n >= 0."""
    if n < 0:
        raise DomainError("negative radicand")
    if n < 2:
        return n
    lo, hi = 1, 1 << (n.bit_length() // k + 1)
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if mid**k <= n:
            lo = mid
        else:
            hi = mid - 1
    return lo


def _primes_upto(n: int) -> list[int]:
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0:2] = b"\x00\x00"
    for i in range(2, iroot(n, 2) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(sieve[i * i :: i]))
    return [i for i, flag in enumerate(sieve) if flag]


def is_minimal(b: FamilyPoint) -> bool:
    """No prime q has q^i | p_i for all i, and p5 > 0 or (p5 = 0 and p9 >= 0)."""
    if b.is_zero():
        raise DomainError("the zero family point has no minimal form")
    if not (b.p5 > 0 or (b.p5 == 0 and b.p9 >= 0)):
        return False
    bound = min(iroot(abs(c), w) for c, w in zip(b, WEIGHTS) if c)
    for q in _primes_upto(bound):
        if all(c % q**w == 0 for c, w in zip(b, WEIGHTS)):
            return False
    return True


# -- enumeration by height ----------------------------------------------------


def coordinate_bounds(a: int) -> tuple[int, ...]:
    """N_i = max{n >= 0 : n^72 < a^i} for each weight."""
    if a < 1:
        raise DomainError("height bound must be a positive integer")
    return tuple(iroot(a**w - 1, 72) for w in WEIGHTS)


def enumerate_family(a: int, minimal_only: bool = False) -> Iterator[FamilyPoint]:
    """All integral b with ht(b) < a, in lexicographic order of (p2, ..., p12)."""
    ranges = [range(-n, n + 1) for n in coordinate_bounds(a)]
    make = FamilyPoint._make
    for t in itertools.product(*ranges):
        b = make(t)
        if minimal_only and (b.is_zero() or not is_minimal(b)):
            continue
        yield b


# -- discriminant -------------------------------------------------------------


def resultant_of_partials(F: TernaryForm):
    return macaulay_resultant_ternary(*F.gradient())


def discriminant(b: FamilyPoint) -> int:
    """Divided discriminant Res(F_x, F_y, F_z) / 2^14 of the homogenized quartic."""
    res = resultant_of_partials(homogenize(FamilyPoint(*(int(c) for c in b))))
    q, r = divmod(res, DISC_NORMALIZATION)
    if r:
        raise ArithmeticError(f"resultant of partials {res} is not divisible by 2^14")
    return q


# -- smoothness ----------------------------------------------------------------


def singular_x_conditions(P: Poly, Q: Poly) -> tuple[Poly, Poly]:
    """Res_y(F, F_y) and Res_y(F, F_x) for F = y^3 - P y - Q.

    F is monic in y, so both resultants specialize at every x0: they vanish
    there exactly when F(x0, y) shares a root with F_y(x0, y), resp. F_x(x0, y).
    """
    dP, dQ = P.derivative(), Q.derivative()
    r_y = Q * Q * 27 - P * P * P * 4
    # F_x = alpha*y + beta with alpha = -P', beta = -Q'
    r_x = -(dQ * dQ * dQ) + P * dQ * dP * dP - Q * dP * dP * dP
    return r_y, r_x


def _has_common_y(P0, Q0, dP0, dQ0, K: Domain) -> bool:
    F = Poly([-Q0, -P0, 0, 1], K)
    Fy = Poly([-P0, 0, 3], K)
    Fx = Poly([-dQ0, -dP0], K)
    g = F.gcd(Fy) if Fy else F
    if Fx:
        g = g.gcd(Fx)
    return g.degree() >= 1


def _is_smooth_finite(b: FamilyPoint, dom: Domain) -> bool:
    P, Q = trigonal_form(b, dom)
    r_y, r_x = singular_x_conditions(P, Q)
    h = r_y.gcd(r_x) if (r_y or r_x) else r_y
    if h.degree() < 1:
        return True
    dP, dQ = P.derivative(), Q.derivative()
    _, facs = factor(h)
    for g, _ in facs:
        if g.degree() == 1:
            K = dom
            x0 = dom.reduce(-g.coeffs[0])
        else:
            K = ExtensionField(dom, g, check=False)
            x0 = K.gen()
        vals = [f.change_domain(K)(x0) for f in (P, Q, dP, dQ)]
        if _has_common_y(*vals, K):
            return False
    return True


def _is_smooth_generic(b: FamilyPoint, dom: Domain) -> bool:
    # F, F_y + t F_x for four distinct t: a common x-root of all four
    # resultants forces a y-root shared by F, F_y and F_x (F has at most 3 roots).
    P, Q = trigonal_form(b, dom)
    dP, dQ = P.derivative(), Q.derivative()
    R = PolynomialRing(dom, "x")
    F = Poly([-Q, -P, R.zero, R.one], R)
    if dom.order is None:
        ts = [dom.reduce(t) for t in range(4)]
    else:
        ts = list(itertools.islice(dom.elements(), 4))
    h = None
    for t in ts:
        G = Poly([-(P + dQ * t), -(dP * t), Poly([3], dom)], R)
        r = resultant_univariate(F, G)
        h = r if h is None else h.gcd(r)
        if h.degree() < 1:
            return True
    return False


def is_smooth(b: FamilyPoint, dom: Domain = QQ) -> bool:
    """True iff the projective curve has no singular point over the algebraic closure.

    The point at infinity (0:1:0) is smooth in every characteristic (F_z = 1
    there), so only affine points are examined.
    """
    if isinstance(dom, (PrimeField, ExtensionField)):
        return _is_smooth_finite(b.reduce(dom), dom)
    if dom.characteristic == 0 and dom.is_field:
        return _is_smooth_generic(FamilyPoint(*(QQ.reduce(c) for c in b)), QQ)
    raise DomainError(f"smoothness over {dom} is not supported")


def is_smooth_generic(b: FamilyPoint, dom: Domain) -> bool:
    """The resultant-pencil test on its own (needs at least 4 field elements)."""
    if dom.order is not None and dom.order < 4:
        raise DomainError("the pencil test needs four distinct field elements")
    return _is_smooth_generic(b.reduce(dom), dom)


# -- point counting ---------------------------------------------------------------


@lru_cache(maxsize=None)
def _prime_root_table(p: int) -> tuple[tuple[int, ...], ...]:
    """table[P0][Q0] = #{y in F_p : y^3 - P0 y - Q0 = 0}."""
    table = [[0] * p for _ in range(p)]
    for y in range(p):
        y3 = y * y * y
        for P0 in range(p):
            table[P0][(y3 - P0 * y) % p] += 1
    return tuple(tuple(r) for r in table)


def point_count(b: FamilyPoint, dom: Domain) -> int:
    """Number of projective points over a finite field, including (0:1:0)."""
    b = b.reduce(dom)
    P, Q = trigonal_form(b, dom)
    if isinstance(dom, PrimeField):
        p = dom.p
        table = _prime_root_table(p)
        return 1 + sum(table[P(x)][Q(x)] for x in range(p))
    elems = list(dom.elements())
    counts: dict = {}
    for y in elems:
        y3 = y * y * y
        for P0 in elems:
            key = (dom.key(P0), dom.key(y3 - P0 * y))
            counts[key] = counts.get(key, 0) + 1
    return 1 + sum(counts.get((dom.key(P(x)), dom.key(Q(x))), 0) for x in elems)


def weil_envelope(q: int, genus: int = 3) -> tuple[int, int]:
    """Serre-Weil interval [q + 1 - g*m, q + 1 + g*m] with m = floor(2 sqrt q)."""
    m = iroot(4 * q, 2)
    return q + 1 - genus * m, q + 1 + genus * m

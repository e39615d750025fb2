"""Bitangents y = a x + beta of a family member and their degree-27 slope polynomial.

A line y = a x + beta is bitangent exactly when Q + P (a x + beta) - (a x + beta)^3,
a monic quartic in x, is the square (x^2 + c x + d)^2.  Matching the x^3 and x^2
coefficients fixes c and d; the x^1 and x^0 coefficients leave two conditions
r1(a, beta), r2(a, beta), and eliminating beta gives a polynomial of degree 27
in the slope a.

Vertical lines never occur: x = x0 meets the curve in y^3 - P(x0) y - Q(x0) = 0,
three points counted with multiplicity in the affine part, and the fourth
intersection is the hyperflex at infinity, which x = x0 crosses transversally.
Together with the line at infinity this accounts for all 28 bitangents.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .algebra.factor import factor, squarefree_decomposition
from .algebra.newton import newton_polygon, residual_polynomial
from .algebra.poly import Poly
from .algebra.resultant import resultant_univariate
from .algebra.rings import QQ, PolynomialRing, PrimeField
from .errors import DegenerateFamilyMemberError
from .family import FamilyPoint, discriminant, trigonal_form

QA = PolynomialRing(QQ, "a")
QAB = PolynomialRing(QA, "beta")

BITANGENT_DEGREE = 27


@dataclass(frozen=True)
class TangencySystem:
    """r1, r2 as polynomials in beta whose coefficients are polynomials in a."""

    r1: Poly
    r2: Poly
    c: Poly = field(repr=False, default=None)
    d: Poly = field(repr=False, default=None)

    def evaluate(self, a, beta) -> tuple:
        def ev(r):
            return sum((coef(a) * beta**k for k, coef in enumerate(r.coeffs)), 0)

        return ev(self.r1), ev(self.r2)

    def total_degree(self) -> int:
        return max(
            k + coef.degree() for r in (self.r1, self.r2) for k, coef in enumerate(r.coeffs)
        )


def substituted_quartic(b: FamilyPoint) -> Poly:
    """Q(x) + P(x)(a x + beta) - (a x + beta)^3 as a polynomial in x over QQ[a][beta]."""
    P, Q = trigonal_form(b, QQ)
    a = Poly([0, 1], QQ)
    beta = Poly([QA.zero, QA.one], QA)
    to_b = lambda c: Poly([Poly([c], QQ)], QA)  # noqa: E731
    line = Poly([beta, Poly([a], QA)], QAB)
    Px = Poly([to_b(c) for c in P.coeffs], QAB)
    Qx = Poly([to_b(c) for c in Q.coeffs], QAB)
    return Qx + Px * line - line * line * line


def tangency_system(b: FamilyPoint) -> TangencySystem:
    q = substituted_quartic(b)
    if q.degree() != 4 or q.lc() != QAB.one:
        raise ArithmeticError("substituted quartic is not monic of degree 4")
    half = Fraction(1, 2)
    c = q[3] * half
    d = (q[2] - c * c) * half
    r1 = q[1] - c * d * 2
    r2 = q[0] - d * d
    return TangencySystem(r1, r2, c, d)


@dataclass(frozen=True)
class BitangentResultant:
    poly: Poly
    monic: bool

    @property
    def degree(self) -> int:
        return self.poly.degree()

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "coefficients": [_fmt(c) for c in self.poly.coeffs],
            "monic": self.monic,
        }


def _fmt(c: Fraction) -> str:
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def bitangent_resultant(b: FamilyPoint, monic: bool = True) -> BitangentResultant:
    """Res_beta(r1, r2); with ``monic`` the constant factor is divided out."""
    if discriminant(b) == 0:
        raise DegenerateFamilyMemberError(f"{b.to_text()} is singular (zero discriminant)")
    sys_ = tangency_system(b)
    res = resultant_univariate(sys_.r1, sys_.r2)
    if res.degree() != BITANGENT_DEGREE:
        raise DegenerateFamilyMemberError(
            f"slope resultant has degree {res.degree()}, expected {BITANGENT_DEGREE}"
        )
    if monic:
        res = res.monic()
    return BitangentResultant(res, monic)


def reduce_mod_p(f: Poly, p: int) -> Poly | None:
    """Reduction of a rational polynomial mod p, or None if a denominator is divisible by p."""
    if any(Fraction(c).denominator % p == 0 for c in f.coeffs):
        return None
    return Poly(f.coeffs, PrimeField(p))


def _poly_str(f: Poly, var: str) -> str:
    return str(f).replace("x", var)


def prime_report(f: Poly, p: int) -> dict:
    """Factorization data for f mod p; Newton data at every prime."""
    out: dict = {"prime": p}
    fp = reduce_mod_p(f, p)
    if fp is None or fp.degree() != f.degree():
        out["status"] = "bad reduction"
    else:
        lc, facs = factor(fp)
        out["factorization"] = [
            {"factor": _poly_str(g, "a"), "multiplicity": m} for g, m in facs
        ]
        squarefree = all(m == 1 for g, m in facs)
        out["squarefree"] = squarefree
        if squarefree:
            out["status"] = "unramified"
            out["pattern"] = sorted(g.degree() for g, _ in facs)
        else:
            out["status"] = "ramified"
            out["reduction_pattern"] = sorted(
                (g.degree(), m) for g, m in facs
            )
    out.update(newton_report(f, p))
    return out


def newton_report(f: Poly, p: int) -> dict:
    """Newton polygon, residual polynomials and the factor-degree constraints over Q_p.

    For a side of slope -h/e each residual factor psi of multiplicity one
    gives a Q_p-irreducible factor of degree e*deg(psi) (Ore); when every side
    is regular the factorization over Q_p is read off completely.
    """
    poly = newton_polygon(f, p)
    sides = []
    regular = True
    factor_degrees = []
    for seg in poly.segments:
        res = residual_polynomial(f, p, seg)
        _, facs = factor(res)
        e = seg.ramification
        side_regular = all(m == 1 for _, m in facs)
        regular &= side_regular
        if side_regular:
            factor_degrees += [e * g.degree() for g, _ in facs]
        sides.append(
            {
                "slope": _fmt(seg.slope),
                "length": seg.length,
                "ramification": e,
                "residual": _poly_str(res, "y"),
                "residual_factors": [
                    {"factor": _poly_str(g, "y"), "multiplicity": m} for g, m in facs
                ],
                "regular": side_regular,
                "factor_degree_divisor": e,
            }
        )
    out = {"newton_polygon": sides, "regular": regular}
    lead = f.valuation()
    if regular:
        degrees = sorted(factor_degrees + [1] * lead)
        out["qp_factor_degrees"] = degrees
        out["irreducible_over_Qp"] = len(degrees) == 1
    else:
        out["qp_factor_degrees"] = None
        out["irreducible_over_Qp"] = None
        out["gap"] = "some side has a repeated residual factor; first-order data does not decide"
    return out


def galois_pattern_report(b: FamilyPoint, primes) -> dict:
    res = bitangent_resultant(b).poly
    return galois_pattern_for_poly(res, primes)


def galois_pattern_for_poly(f: Poly, primes) -> dict:
    reports = [prime_report(f, p) for p in primes]
    return {
        "degree": f.degree(),
        "primes": reports,
    }


def is_squarefree_mod(f: Poly, p: int) -> bool:
    fp = reduce_mod_p(f, p)
    if fp is None:
        return False
    return all(m == 1 for _, m in squarefree_decomposition(fp))


# The polynomial displayed for the curve y^3 + y = x^4 + x + 1.
REFERENCE_CURVE = FamilyPoint(0, 0, 0, -1, 1, 1)
REFERENCE_RESULTANT = {
    0: 4096,
    1: 12288,
    3: -126976,
    6: 110592,
    7: -165888,
    9: -40704,
    10: 70656,
    11: -34560,
    15: 17280,
    18: 1344,
    19: 480,
    27: 1,
}


def reference_resultant() -> Poly:
    return Poly([REFERENCE_RESULTANT.get(i, 0) for i in range(28)], QQ)

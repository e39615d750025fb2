"""Exact arithmetic: domains, polynomials, resultants, factorization, series, Newton polygons."""

from .factor import degree_pattern, factor, is_irreducible, roots, squarefree_decomposition
from .forms import TernaryForm
from .newton import NewtonPolygon, Segment, newton_polygon, residual_polynomial, valuation
from .poly import Poly
from .resultant import det, macaulay_resultant_ternary, resultant_univariate
from .rings import GF, QQ, ZZ, ExtensionField, FFElement, PolynomialRing, PrimeField
from .series import TruncatedSeries, series_solve_fixed_point

factor_univariate = factor

__all__ = [
    "GF", "QQ", "ZZ", "ExtensionField", "FFElement", "PolynomialRing", "PrimeField",
    "Poly", "TernaryForm", "TruncatedSeries", "NewtonPolygon", "Segment",
    "det", "resultant_univariate", "macaulay_resultant_ternary",
    "factor", "factor_univariate", "degree_pattern", "is_irreducible", "roots",
    "squarefree_decomposition", "newton_polygon", "residual_polynomial", "valuation",
    "series_solve_fixed_point",
]

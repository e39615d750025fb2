"""Determinants, Sylvester resultants and the Macaulay resultant of three ternary forms."""

from __future__ import annotations

import random

from ..errors import DegenerateSpecializationError, DomainError
from .forms import TernaryForm, monomials
from .poly import Poly
from .rings import Domain

MACAULAY_ATTEMPTS = 16
MACAULAY_SEED = 1729


def det(rows, dom: Domain):
    """Exact determinant: Gaussian elimination over fields, Bareiss otherwise."""
    m = [list(r) for r in rows]
    n = len(m)
    if n == 0:
        return dom.one
    red = dom.reduce
    sign = 1
    if dom.is_field:
        acc = dom.one
        for k in range(n):
            piv = next((i for i in range(k, n) if m[i][k]), None)
            if piv is None:
                return dom.zero
            if piv != k:
                m[k], m[piv] = m[piv], m[k]
                sign = -sign
            pk = m[k][k]
            acc = red(acc * pk)
            inv = dom.inv(pk)
            rowk = m[k]
            for i in range(k + 1, n):
                if m[i][k]:
                    f = red(m[i][k] * inv)
                    rowi = m[i]
                    for j in range(k + 1, n):
                        if rowk[j]:
                            rowi[j] = red(rowi[j] - f * rowk[j])
        return red(acc * sign)
    prev = dom.one
    for k in range(n - 1):
        if not m[k][k]:
            piv = next((i for i in range(k + 1, n) if m[i][k]), None)
            if piv is None:
                return dom.zero
            m[k], m[piv] = m[piv], m[k]
            sign = -sign
        pk = m[k][k]
        rowk = m[k]
        for i in range(k + 1, n):
            rowi = m[i]
            a = rowi[k]
            for j in range(k + 1, n):
                rowi[j] = dom.exquo(rowi[j] * pk - a * rowk[j], prev)
        prev = pk
    return m[n - 1][n - 1] if sign > 0 else -m[n - 1][n - 1]


def sylvester_matrix(f: Poly, g: Poly) -> list[list]:
    m, n = f.degree(), g.degree()
    zero = f.dom.zero
    size = m + n
    rows = []
    fc = list(reversed(f.coeffs))
    gc = list(reversed(g.coeffs))
    for i in range(n):
        rows.append([zero] * i + fc + [zero] * (size - m - 1 - i))
    for i in range(m):
        rows.append([zero] * i + gc + [zero] * (size - n - 1 - i))
    return rows


def resultant_univariate(f: Poly, g: Poly):
    """Sylvester resultant Res(f, g) over the common coefficient domain."""
    if f.dom != g.dom:
        raise DomainError("polynomials over different domains")
    dom = f.dom
    if not f and not g:
        raise DomainError("resultant of two zero polynomials")
    if not f or not g:
        return dom.zero
    if f.degree() == 0:
        return dom.reduce(f.coeffs[0] ** g.degree()) if g.degree() else dom.one
    if g.degree() == 0:
        return dom.reduce(g.coeffs[0] ** f.degree())
    return det(sylvester_matrix(f, g), dom)


def _macaulay_matrices(forms: list[TernaryForm]):
    degs = [f.degree for f in forms]
    D = sum(degs) - 2
    mons = monomials(D)
    index = {m: i for i, m in enumerate(mons)}
    dom = forms[0].dom
    zero = dom.zero
    rows = []
    big = []
    for mono in mons:
        hits = [i for i in range(3) if mono[i] >= degs[i]]
        i = hits[0]
        shift = list(mono)
        shift[i] -= degs[i]
        row = [zero] * len(mons)
        for (a, b, c), coef in forms[i].terms.items():
            row[index[(a + shift[0], b + shift[1], c + shift[2])]] = coef
        rows.append(row)
        big.append(len(hits) > 1)
    keep = [k for k, flag in enumerate(big) if flag]
    minor = [[rows[r][c] for c in keep] for r in keep]
    return rows, minor


def _raw_macaulay(forms: list[TernaryForm]):
    dom = forms[0].dom
    rows, minor = _macaulay_matrices(forms)
    denom = det(minor, dom)
    if not denom:
        return None
    return dom.exquo(det(rows, dom), denom)


def random_unimodular(rng: random.Random, bound: int = 3) -> list[list[int]]:
    while True:
        a = [[rng.randint(-bound, bound) for _ in range(3)] for _ in range(3)]
        d = (
            a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1])
            - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
            + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0])
        )
        if d == 1:
            return a


def macaulay_resultant_ternary(
    f1: TernaryForm,
    f2: TernaryForm,
    f3: TernaryForm,
    attempts: int = MACAULAY_ATTEMPTS,
    seed: int = MACAULAY_SEED,
):
    """Res(f1, f2, f3), normalized so that Res(x^a, y^b, z^c) = 1.

    Computed as det(M)/det(M') from the degree d1+d2+d3-2 Macaulay matrix.
    When the extraneous minor M' vanishes, the forms are moved by random
    determinant-one integer coordinate changes, which leave the resultant
    unchanged.
    """
    forms = [f1, f2, f3]
    if len({f.dom for f in forms}) != 1:
        raise DomainError("forms over different domains")
    if any(f.degree < 1 for f in forms):
        raise DomainError("forms must have positive degree")
    value = _raw_macaulay(forms)
    if value is not None:
        return value
    rng = random.Random(seed)
    for _ in range(attempts):
        a = random_unimodular(rng)
        value = _raw_macaulay([f.substitute(a) for f in forms])
        if value is not None:
            return value
    raise DegenerateSpecializationError(
        f"Macaulay minor vanished after {attempts} coordinate changes"
    )

"""Factorization of univariate polynomials over finite fields.

Squarefree split, then distinct-degree split, then Cantor-Zassenhaus
equal-degree splitting driven by a seeded generator, so that repeated
calls return bit-identical results.
"""

from __future__ import annotations

import itertools
import random

from .poly import Poly
from .rings import Domain

DEFAULT_SEED = 20240607


def _x(dom: Domain) -> Poly:
    return Poly.x(dom)


def _sort_key(f: Poly):
    dom = f.dom
    return (f.degree(), tuple(dom.key(c) for c in reversed(f.coeffs)))


def is_irreducible(f: Poly) -> bool:
    """Ben-Or test over a finite field."""
    dom = f.dom
    n = f.degree()
    if n < 1:
        return False
    if n == 1:
        return True
    f = f.monic()
    q = dom.order
    x = _x(dom)
    h = x
    for _ in range(n // 2):
        h = h.pow_mod(q, f)
        if (h - x).gcd(f).degree() > 0:
            return False
    return True


def smallest_irreducible(dom: Domain, k: int) -> Poly:
    """Lexicographically smallest monic irreducible of degree k over dom."""
    elems = sorted(dom.elements(), key=dom.key)
    for tail in itertools.product(elems, repeat=k):
        f = Poly(list(reversed(tail)) + [dom.one], dom)
        if is_irreducible(f):
            return f
    raise ValueError("no irreducible polynomial found")  # pragma: no cover


def _pth_root(f: Poly) -> Poly:
    dom = f.dom
    p = dom.characteristic
    return Poly([dom.frobenius_root(c) for c in f.coeffs[::p]], dom)


def squarefree_decomposition(f: Poly) -> list[tuple[Poly, int]]:
    """Monic squarefree factors with multiplicities (characteristic p aware)."""
    dom = f.dom
    p = dom.characteristic
    f = f.monic()
    out: dict[int, Poly] = {}

    def merge(g: Poly, m: int):
        if g.degree() > 0:
            out[m] = out[m] * g if m in out else g

    def rec(f: Poly, mult: int):
        if f.degree() < 1:
            return
        df = f.derivative()
        if not df:
            rec(_pth_root(f), mult * p)
            return
        c = f.gcd(df)
        w = f // c
        i = 1
        while w.degree() > 0:
            y = w.gcd(c)
            merge(w // y, i * mult)
            w, c = y, c // y
            i += 1
        if c.degree() > 0:
            rec(_pth_root(c), mult * p)

    rec(f, 1)
    return sorted(((g.monic(), m) for m, g in out.items()), key=lambda t: (t[1], _sort_key(t[0])))


def distinct_degree(f: Poly) -> list[tuple[Poly, int]]:
    """Split a monic squarefree f into products of irreducibles of equal degree."""
    dom = f.dom
    q = dom.order
    x = _x(dom)
    out = []
    h = x
    d = 0
    while f.degree() >= 2 * (d + 1):
        d += 1
        h = h.pow_mod(q, f)
        g = (h - x).gcd(f)
        if g.degree() > 0:
            out.append((g, d))
            f = f // g
            h = h % f
    if f.degree() > 0:
        out.append((f, f.degree()))
    return out


def _trace_map(r: Poly, f: Poly, n_bits: int) -> Poly:
    t = r
    acc = r
    for _ in range(n_bits - 1):
        t = (t * t) % f
        acc = acc + t
    return acc % f


def equal_degree(f: Poly, d: int, rng: random.Random) -> list[Poly]:
    """Cantor-Zassenhaus split of a monic squarefree f whose factors all have degree d."""
    n = f.degree()
    if n == d:
        return [f]
    dom = f.dom
    q = dom.order
    p = dom.characteristic
    while True:
        r = Poly([dom.random(rng) for _ in range(n)], dom)
        if r.degree() < 1:
            continue
        if p == 2:
            k = (q.bit_length() - 1) * d
            g = _trace_map(r, f, k).gcd(f)
        else:
            g = (r.pow_mod((q**d - 1) // 2, f) - dom.one).gcd(f)
        if 0 < g.degree() < n:
            return equal_degree(g, d, rng) + equal_degree(f // g, d, rng)


def factor(f: Poly, seed: int = DEFAULT_SEED) -> tuple[object, list[tuple[Poly, int]]]:
    """Return (leading coefficient, [(monic irreducible, multiplicity), ...]).

    Factors are sorted by degree, then by coefficients from the top down.
    """
    if not f:
        raise ValueError("cannot factor the zero polynomial")
    dom = f.dom
    if not dom.is_field or dom.order is None:
        raise ValueError("factorization is only implemented over finite fields")
    rng = random.Random(seed)
    lc = f.lc()
    result = []
    for g, m in squarefree_decomposition(f):
        for h, d in distinct_degree(g):
            for irr in equal_degree(h, d, rng):
                result.append((irr, m))
    result.sort(key=lambda t: (_sort_key(t[0]), t[1]))
    return lc, result


def expand_factors(lc, factors: list[tuple[Poly, int]], dom: Domain) -> Poly:
    acc = Poly([lc], dom)
    for g, m in factors:
        acc = acc * g**m
    return acc


def degree_pattern(f: Poly) -> list[int]:
    """Sorted degrees of the irreducible factors, repeated by multiplicity."""
    _, facs = factor(f)
    return sorted(g.degree() for g, m in facs for _ in range(m))


def roots(f: Poly) -> list:
    """Distinct roots in the coefficient field, sorted by field key."""
    _, facs = factor(f)
    dom = f.dom
    rts = [dom.reduce(-g.coeffs[0]) for g, _ in facs if g.degree() == 1]
    return sorted(rts, key=dom.key)

"""Dense univariate polynomials over a coefficient domain."""

from __future__ import annotations

import json
from fractions import Fraction

from .rings import QQ, ZZ, Domain, PrimeField


class Poly:
    """Immutable dense polynomial; ``coeffs[i]`` is the coefficient of x**i."""

    __slots__ = ("coeffs", "dom")

    def __init__(self, coeffs=(), dom: Domain = ZZ):
        red = dom.reduce
        cs = [red(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs = tuple(cs)
        self.dom = dom

    @classmethod
    def _raw(cls, coeffs, dom):
        # coeffs already reduced; only strip trailing zeros
        cs = list(coeffs)
        while cs and not cs[-1]:
            cs.pop()
        obj = cls.__new__(cls)
        obj.coeffs = tuple(cs)
        obj.dom = dom
        return obj

    @classmethod
    def x(cls, dom: Domain = ZZ) -> "Poly":
        return cls([dom.zero, dom.one], dom)

    @classmethod
    def monomial(cls, n: int, c=1, dom: Domain = ZZ) -> "Poly":
        return cls([dom.zero] * n + [c], dom)

    # -- basic queries -------------------------------------------------

    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def lc(self):
        return self.coeffs[-1] if self.coeffs else self.dom.zero

    def __getitem__(self, i: int):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else self.dom.zero

    def __bool__(self):
        return bool(self.coeffs)

    def __len__(self):
        return len(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if not self.coeffs:
            return not other
        return len(self.coeffs) == 1 and self.coeffs[0] == other

    def __hash__(self):
        return hash(self.coeffs)

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == self.dom.one

    def valuation(self) -> int:
        """Order of vanishing at 0 (infinite for zero is reported as -1)."""
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        return -1

    # -- arithmetic ------------------------------------------------------

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly) and other.dom == self.dom:
            return other
        return Poly([other], self.dom)

    def __add__(self, other):
        other = self._coerce(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        red = self.dom.reduce
        out = list(a)
        for i, c in enumerate(b):
            out[i] = red(out[i] + c)
        return Poly._raw(out, self.dom)

    __radd__ = __add__

    def __neg__(self):
        red = self.dom.reduce
        return Poly._raw([red(-c) for c in self.coeffs], self.dom)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not (isinstance(other, Poly) and other.dom == self.dom):
            c = self.dom.reduce(other)
            red = self.dom.reduce
            return Poly._raw([red(a * c) for a in self.coeffs], self.dom)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly._raw((), self.dom)
        dom = self.dom
        if isinstance(dom, PrimeField) or dom is ZZ or dom is QQ:
            out = [0] * (len(a) + len(b) - 1)
            for i, ai in enumerate(a):
                if ai:
                    for j, bj in enumerate(b):
                        out[i + j] += ai * bj
            if isinstance(dom, PrimeField):
                p = dom.p
                out = [c % p for c in out]
            elif dom is QQ:
                out = [Fraction(c) for c in out]
            return Poly._raw(out, dom)
        out = [dom.zero] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    out[i + j] = out[i + j] + ai * bj
        return Poly._raw(out, dom)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result = Poly([self.dom.one], self.dom)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __divmod__(self, other):
        other = self._coerce(other)
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        dom = self.dom
        rem = list(self.coeffs)
        db = other.degree()
        lcb = other.lc()
        if dom.is_field:
            inv_lc = dom.inv(lcb)
            div = lambda c: dom.reduce(c * inv_lc)  # noqa: E731
        else:
            div = lambda c: dom.exquo(c, lcb)  # noqa: E731
        if len(rem) <= db:
            return Poly._raw((), dom), self
        quot = [dom.zero] * (len(rem) - db)
        bc = other.coeffs
        red = dom.reduce
        for k in range(len(rem) - 1, db - 1, -1):
            c = rem[k]
            if not c:
                continue
            q = div(c)
            quot[k - db] = q
            for j in range(db + 1):
                rem[k - db + j] = red(rem[k - db + j] - q * bc[j])
        return Poly._raw(quot, dom), Poly._raw(rem[:db], dom)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exquo(self, other) -> "Poly":
        q, r = divmod(self, other)
        if r:
            raise ArithmeticError("inexact polynomial division")
        return q

    def __call__(self, x):
        """Horner evaluation; x may be any object compatible with the coefficients."""
        acc = self.dom.zero
        for c in reversed(self.coeffs):
            acc = acc * x + c
        if isinstance(acc, int) and isinstance(self.dom, PrimeField):
            return acc % self.dom.p
        return acc

    def compose(self, g: "Poly") -> "Poly":
        acc = Poly._raw((), self.dom)
        for c in reversed(self.coeffs):
            acc = acc * g + c
        return acc

    def derivative(self) -> "Poly":
        return Poly([i * c for i, c in enumerate(self.coeffs)][1:], self.dom)

    def monic(self) -> "Poly":
        if not self.coeffs:
            return self
        return self * self.dom.inv(self.lc())

    def map_coeffs(self, fn, dom: Domain) -> "Poly":
        return Poly([fn(c) for c in self.coeffs], dom)

    def change_domain(self, dom: Domain) -> "Poly":
        return Poly(self.coeffs, dom)

    def shift(self, n: int) -> "Poly":
        """Multiply by x**n."""
        if not self.coeffs:
            return self
        return Poly._raw((self.dom.zero,) * n + self.coeffs, self.dom)

    def pow_mod(self, n: int, m: "Poly") -> "Poly":
        result = Poly([self.dom.one], self.dom) % m
        base = self % m
        while n:
            if n & 1:
                result = (result * base) % m
            n >>= 1
            if n:
                base = (base * base) % m
        return result

    def gcd(self, other: "Poly") -> "Poly":
        """Monic gcd over a field."""
        if not self.dom.is_field:
            raise ArithmeticError("gcd is only implemented over fields")
        a, b = self, self._coerce(other)
        while b:
            a, b = b, a % b
        return a.monic()

    def content(self):
        """Gcd of coefficients over ZZ, or the positive rational making the
        coefficients coprime integers over QQ."""
        from math import gcd, lcm

        if not self.coeffs:
            return 0
        if self.dom is ZZ:
            g = 0
            for c in self.coeffs:
                g = gcd(g, c)
            return g
        if self.dom is QQ:
            num = 0
            den = 1
            for c in self.coeffs:
                num = gcd(num, c.numerator)
                den = lcm(den, c.denominator)
            return Fraction(num, den)
        raise ArithmeticError("content needs ZZ or QQ coefficients")

    def primitive(self) -> "Poly":
        c = self.content()
        if not c:
            return self
        if self.lc() < 0:
            c = -c
        return Poly([x / c if self.dom is QQ else x // c for x in self.coeffs], self.dom)

    # -- presentation ----------------------------------------------------

    def __repr__(self):
        return f"Poly({self}, {self.dom})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            if not mono:
                terms.append(f"{c}" if not isinstance(c, Poly) else f"({c})")
            elif c == 1:
                terms.append(mono)
            else:
                cs = f"({c})" if isinstance(c, Poly) else f"{c}"
                terms.append(f"{cs}*{mono}")
        return " + ".join(terms)

    def to_json(self) -> str:
        """JSON array of decimal coefficient strings, low to high."""
        return json.dumps(coeff_strings(self))

    @classmethod
    def from_json(cls, text, dom: Domain = QQ) -> "Poly":
        data = json.loads(text) if isinstance(text, str) else text
        return cls([Fraction(s) for s in data], dom)


def coeff_strings(f: Poly) -> list[str]:
    out = []
    for c in f.coeffs:
        if hasattr(c, "res"):
            raise ValueError("extension-field coefficients have no decimal form")
        out.append(str(c))
    return out

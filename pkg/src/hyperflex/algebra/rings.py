"""Coefficient domains for exact polynomial arithmetic.

Elements are plain Python objects that support ``+ - *`` and truthiness
(zero is falsy).  A domain knows how to normalize, invert and divide its
elements exactly; :class:`~hyperflex.algebra.poly.Poly` delegates to it.

Integers are ``int``, rationals are ``Fraction``, prime-field residues are
``int`` in ``range(p)`` and extension-field elements are :class:`FFElement`.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Iterator


class Domain:
    name = "?"
    is_field = False
    characteristic = 0
    order: int | None = None

    zero: object = 0
    one: object = 1

    def reduce(self, x):
        return x

    def from_int(self, n: int):
        return self.reduce(n)

    def inv(self, x):
        raise ArithmeticError(f"{x!r} is not invertible in {self.name}")

    def exquo(self, a, b):
        """Exact quotient a/b; raises ArithmeticError if b does not divide a."""
        if not b:
            raise ZeroDivisionError("division by zero")
        return a * self.inv(b)

    def key(self, x):
        return x

    def __repr__(self):
        return self.name


class IntegerRing(Domain):
    name = "ZZ"

    def reduce(self, x):
        if isinstance(x, Fraction):
            if x.denominator != 1:
                raise ValueError(f"{x} is not an integer")
            return x.numerator
        return int(x)

    def inv(self, x):
        if x in (1, -1):
            return x
        raise ArithmeticError(f"{x} is not a unit in ZZ")

    def exquo(self, a, b):
        q, r = divmod(a, b)
        if r:
            raise ArithmeticError(f"{b} does not divide {a}")
        return q

    def __eq__(self, other):
        return isinstance(other, IntegerRing)

    def __hash__(self):
        return hash("ZZ")


class RationalField(Domain):
    name = "QQ"
    is_field = True

    def reduce(self, x):
        return x if isinstance(x, Fraction) else Fraction(x)

    def inv(self, x):
        if not x:
            raise ZeroDivisionError("division by zero")
        return 1 / Fraction(x)

    def exquo(self, a, b):
        return Fraction(a) / b

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")


ZZ = IntegerRing()
QQ = RationalField()


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


class PrimeField(Domain):
    """F_p with elements stored as ints in range(p)."""

    is_field = True

    def __init__(self, p: int):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.characteristic = p
        self.order = p
        self.degree = 1
        self.name = f"GF({p})"

    def reduce(self, x):
        if isinstance(x, Fraction):
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        return x % self.p

    def inv(self, x):
        x %= self.p
        if not x:
            raise ZeroDivisionError("division by zero in " + self.name)
        return pow(x, -1, self.p)

    def exquo(self, a, b):
        return a * self.inv(b) % self.p

    def elements(self) -> Iterator[int]:
        return iter(range(self.p))

    def random(self, rng: random.Random):
        return rng.randrange(self.p)

    def frobenius_root(self, x):
        return x

    def to_json(self):
        return {"p": self.p, "k": 1, "modulus": ["0", "1"]}

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))


class FFElement:
    """Element of an extension field: a residue polynomial below the modulus degree."""

    __slots__ = ("field", "res")

    def __init__(self, field: "ExtensionField", res):
        self.field = field
        self.res = res  # Poly over field.base, degree < field.degree

    def _lift(self, other):
        # None when other lives in a larger field; the reflected operator handles it
        if isinstance(other, FFElement) and other.field is self.field:
            return other
        try:
            return self.field.reduce(other)
        except (TypeError, ValueError):
            return None

    def __add__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return FFElement(self.field, self.res + other.res)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return FFElement(self.field, self.res - other.res)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return other - self

    def __neg__(self):
        return FFElement(self.field, -self.res)

    def __mul__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return FFElement(self.field, (self.res * other.res) % self.field.modulus)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            return self.field.inv(self) ** (-n)
        result = self.field.one
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __truediv__(self, other):
        return self * self.field.inv(self._lift(other))

    def __bool__(self):
        return bool(self.res)

    def __eq__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return self.res == other.res

    def __hash__(self):
        return hash(self.res.coeffs)

    def __repr__(self):
        return f"[{self.res}]"


class ExtensionField(Domain):
    """The field base[t]/(modulus) for a monic irreducible modulus over a finite field."""

    is_field = True

    def __init__(self, base: Domain, modulus, check: bool = True):
        from .poly import Poly

        if not isinstance(modulus, Poly):
            modulus = Poly(modulus, base)
        if modulus.dom != base:
            raise ValueError("modulus must be defined over the base field")
        if modulus.degree() < 1:
            raise ValueError("modulus must have positive degree")
        modulus = modulus.monic()
        if check:
            from .factor import is_irreducible

            if not is_irreducible(modulus):
                raise ValueError(f"modulus {modulus} is reducible over {base}")
        self.base = base
        self.modulus = modulus
        self.degree = modulus.degree()
        self.characteristic = base.characteristic
        self.order = base.order ** self.degree
        self.name = f"{base.name}[t]/({modulus})"
        self.zero = FFElement(self, Poly([], base))
        self.one = FFElement(self, Poly([base.one], base))

    @property
    def p(self) -> int:
        return self.characteristic

    def gen(self) -> FFElement:
        from .poly import Poly

        return FFElement(self, Poly([self.base.zero, self.base.one], self.base) % self.modulus)

    def reduce(self, x):
        from .poly import Poly

        if isinstance(x, FFElement) and (x.field is self or x.field == self):
            return x
        return FFElement(self, Poly([self.base.reduce(x)], self.base))

    def element(self, coeffs) -> FFElement:
        from .poly import Poly

        return FFElement(self, Poly(list(coeffs), self.base) % self.modulus)

    def inv(self, x):
        if not x:
            raise ZeroDivisionError("division by zero in " + self.name)
        # extended Euclid on residue and modulus
        from .poly import Poly

        r0, r1 = self.modulus, x.res
        s0, s1 = Poly([], self.base), Poly([self.base.one], self.base)
        while r1:
            q, r = divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, s0 - q * s1
        # r0 is a nonzero constant
        c = self.base.inv(r0.coeffs[0])
        return FFElement(self, (s0 * c) % self.modulus)

    def exquo(self, a, b):
        return a * self.inv(b)

    def key(self, x):
        res = x.res
        keys = [self.base.key(c) for c in res.coeffs]
        keys += [self.base.key(self.base.zero)] * (self.degree - len(keys))
        return tuple(reversed(keys))

    def elements(self) -> Iterator[FFElement]:
        import itertools

        for digits in itertools.product(list(self.base.elements()), repeat=self.degree):
            yield self.element(digits)

    def random(self, rng: random.Random):
        return self.element([self.base.random(rng) for _ in range(self.degree)])

    def frobenius_root(self, x):
        """The unique p-th root of x (Frobenius is bijective on a finite field)."""
        return x ** (self.order // self.characteristic)

    def to_json(self):
        if not isinstance(self.base, PrimeField):
            raise ValueError("only extensions of a prime field serialize as {p, k, modulus}")
        return {
            "p": self.characteristic,
            "k": self.degree,
            "modulus": [str(c) for c in self.modulus.coeffs],
        }

    def __eq__(self, other):
        return (
            isinstance(other, ExtensionField)
            and other.base == self.base
            and other.modulus == self.modulus
        )

    def __hash__(self):
        return hash(("ext", self.base, self.modulus.coeffs))


class PolynomialRing(Domain):
    """K[a] used as a coefficient domain (for nested bivariate work)."""

    def __init__(self, base: Domain, var: str = "a"):
        from .poly import Poly

        self.base = base
        self.var = var
        self.characteristic = base.characteristic
        self.name = f"{base.name}[{var}]"
        self.zero = Poly([], base)
        self.one = Poly([base.one], base)

    def reduce(self, x):
        from .poly import Poly

        if isinstance(x, Poly):
            return x
        return Poly([x], self.base)

    def inv(self, x):
        if x.degree() == 0:
            return x.__class__([self.base.inv(x.coeffs[0])], self.base)
        raise ArithmeticError(f"{x} is not a unit")

    def exquo(self, a, b):
        q, r = divmod(a, b)
        if r:
            raise ArithmeticError(f"{b} does not divide {a}")
        return q

    def key(self, x):
        return tuple(self.base.key(c) for c in x.coeffs)

    def __eq__(self, other):
        return isinstance(other, PolynomialRing) and other.base == self.base

    def __hash__(self):
        return hash(("poly", self.base))


def GF(p: int, k: int = 1, modulus=None) -> Domain:
    """Finite field with p**k elements.

    Without an explicit modulus the lexicographically smallest monic
    irreducible of degree k is used, so the construction is reproducible.
    """
    base = PrimeField(p)
    if k == 1 and modulus is None:
        return base
    if modulus is not None:
        return ExtensionField(base, modulus)
    from .factor import smallest_irreducible

    return ExtensionField(base, smallest_irreducible(base, k), check=False)


def field_from_json(data: dict) -> Domain:
    p, k = int(data["p"]), int(data["k"])
    if k == 1:
        return PrimeField(p)
    return ExtensionField(PrimeField(p), [int(c) for c in data["modulus"]])

"""Homogeneous ternary forms stored as {(i, j, k): coefficient} for x^i y^j z^k."""

from __future__ import annotations

from dataclasses import dataclass, field

from .rings import ZZ, Domain


def monomials(d: int) -> list[tuple[int, int, int]]:
    """Degree-d monomials in x, y, z in descending lexicographic order."""
    return [(i, j, d - i - j) for i in range(d, -1, -1) for j in range(d - i, -1, -1)]


@dataclass(frozen=True)
class TernaryForm:
    degree: int
    terms: dict = field(default_factory=dict)
    dom: Domain = ZZ

    def __post_init__(self):
        clean = {}
        for mono, c in self.terms.items():
            if sum(mono) != self.degree:
                raise ValueError(f"monomial {mono} is not of degree {self.degree}")
            c = self.dom.reduce(c)
            if c:
                clean[tuple(mono)] = c
        object.__setattr__(self, "terms", clean)

    def __getitem__(self, mono):
        return self.terms.get(tuple(mono), self.dom.zero)

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return (
            isinstance(other, TernaryForm)
            and self.degree == other.degree
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.degree, frozenset(self.terms.items())))

    def coefficient_table(self) -> list:
        return [self[m] for m in monomials(self.degree)]

    def __add__(self, other: "TernaryForm") -> "TernaryForm":
        if other.degree != self.degree:
            raise ValueError("degree mismatch")
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, self.dom.zero) + c
        return TernaryForm(self.degree, out, self.dom)

    def scale(self, c) -> "TernaryForm":
        return TernaryForm(self.degree, {m: v * c for m, v in self.terms.items()}, self.dom)

    def __mul__(self, other: "TernaryForm") -> "TernaryForm":
        out: dict = {}
        for (a, b, c), u in self.terms.items():
            for (d, e, f), v in other.terms.items():
                key = (a + d, b + e, c + f)
                out[key] = out.get(key, self.dom.zero) + u * v
        return TernaryForm(self.degree + other.degree, out, self.dom)

    def partial(self, var: int) -> "TernaryForm":
        out = {}
        for mono, c in self.terms.items():
            e = mono[var]
            if e:
                m = list(mono)
                m[var] -= 1
                out[tuple(m)] = c * e
        return TernaryForm(self.degree - 1, out, self.dom)

    def gradient(self) -> tuple["TernaryForm", "TernaryForm", "TernaryForm"]:
        return self.partial(0), self.partial(1), self.partial(2)

    def __call__(self, x, y, z):
        acc = self.dom.zero
        for (i, j, k), c in self.terms.items():
            acc = acc + c * x**i * y**j * z**k
        return acc

    def substitute(self, matrix) -> "TernaryForm":
        """f(A (x, y, z)^T): each variable becomes the matching row of A as a linear form."""
        lin = [
            TernaryForm(1, {(1, 0, 0): row[0], (0, 1, 0): row[1], (0, 0, 1): row[2]}, self.dom)
            for row in matrix
        ]
        powers = [[TernaryForm(0, {(0, 0, 0): self.dom.one}, self.dom)] for _ in range(3)]
        for v in range(3):
            for _ in range(self.degree):
                powers[v].append(powers[v][-1] * lin[v])
        acc = TernaryForm(self.degree, {}, self.dom)
        for (i, j, k), c in self.terms.items():
            acc = acc + (powers[0][i] * powers[1][j] * powers[2][k]).scale(c)
        return acc

    def change_domain(self, dom: Domain) -> "TernaryForm":
        return TernaryForm(self.degree, dict(self.terms), dom)

    def __repr__(self):
        parts = [f"{c}*x^{i}y^{j}z^{k}" for (i, j, k), c in sorted(self.terms.items(), reverse=True)]
        return f"TernaryForm({self.degree}: {' + '.join(parts) or '0'})"

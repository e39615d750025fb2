"""E6 root lattice, its Weyl group, and the quadratic space Lambda/2Lambda.

Vectors are written in simple-root coordinates with Bourbaki numbering
(chain 1-3-4-5-6, node 2 attached to 4).  Weyl group elements are integer
matrices stored as a tuple of columns, so that ``M e_j`` is column j.
Classes of Lambda/2Lambda are 6-bit integers (bit j = coordinate j).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product

from .algebra.poly import Poly
from .algebra.resultant import det
from .algebra.rings import ZZ, PolynomialRing

RANK = 6
BOURBAKI_EDGES = ((1, 3), (3, 4), (4, 5), (5, 6), (2, 4))

Matrix = tuple  # tuple of 6 column tuples


def cartan_matrix() -> tuple[tuple[int, ...], ...]:
    g = [[2 if i == j else 0 for j in range(RANK)] for i in range(RANK)]
    for a, b in BOURBAKI_EDGES:
        g[a - 1][b - 1] = g[b - 1][a - 1] = -1
    return tuple(tuple(r) for r in g)


GRAM = cartan_matrix()


def form(u, v, gram=GRAM) -> int:
    return sum(u[i] * gram[i][j] * v[j] for i in range(len(u)) for j in range(len(v)))


def identity() -> Matrix:
    return tuple(tuple(int(i == j) for i in range(RANK)) for j in range(RANK))


def reflection(i: int) -> Matrix:
    """Simple reflection s_i (0-based) : e_j -> e_j - (e_j, a_i) a_i."""
    cols = []
    for j in range(RANK):
        col = [int(k == j) for k in range(RANK)]
        col[i] -= GRAM[i][j]
        cols.append(tuple(col))
    return tuple(cols)


def apply(m: Matrix, v) -> tuple[int, ...]:
    out = [0] * RANK
    for j, c in enumerate(v):
        if c:
            col = m[j]
            for k in range(RANK):
                out[k] += c * col[k]
    return tuple(out)


def compose(a: Matrix, b: Matrix) -> Matrix:
    """The matrix of a∘b."""
    return tuple(apply(a, col) for col in b)


def rows(m: Matrix) -> list[list[int]]:
    return [[m[j][i] for j in range(RANK)] for i in range(RANK)]


def _times_reflection(w: Matrix, i: int) -> Matrix:
    # columns of w s_i: col_j - G[i][j] col_i; only i and its neighbours change
    ci = w[i]
    cols = list(w)
    for j in range(RANK):
        g = GRAM[i][j]
        if g:
            cols[j] = tuple(a - g * b for a, b in zip(w[j], ci))
    return tuple(cols)


# -- root system ------------------------------------------------------------------


@dataclass(frozen=True)
class E6RootSystem:
    gram: tuple
    roots: tuple  # sorted tuple of coordinate tuples

    @property
    def simple_roots(self) -> list[tuple[int, ...]]:
        return [tuple(int(i == j) for i in range(RANK)) for j in range(RANK)]


@lru_cache(maxsize=None)
def build_root_system() -> E6RootSystem:
    """Closure of the simple roots under the simple reflections."""
    gens = [reflection(i) for i in range(RANK)]
    seeds = [tuple(int(i == j) for i in range(RANK)) for j in range(RANK)]
    seen = set(seeds)
    queue = deque(seeds)
    while queue:
        v = queue.popleft()
        for s in gens:
            w = apply(s, v)
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return E6RootSystem(GRAM, tuple(sorted(seen)))


# -- Weyl group --------------------------------------------------------------------


@lru_cache(maxsize=None)
def weyl_group() -> tuple[Matrix, ...]:
    """Breadth-first closure of the simple reflections, deduplicated by matrix equality."""
    start = identity()
    seen = {start}
    order = [start]
    queue = deque([start])
    while queue:
        w = queue.popleft()
        for i in range(RANK):
            u = _times_reflection(w, i)
            if u not in seen:
                seen.add(u)
                order.append(u)
                queue.append(u)
    return tuple(order)


def coxeter_element(order=(0, 1, 2, 3, 4, 5)) -> Matrix:
    """Product of the six simple reflections in the given order (Bourbaki by default)."""
    w = identity()
    for i in order:
        w = compose(w, reflection(i))
    return w


def matrix_order(m: Matrix, limit: int = 1000) -> int:
    ident = identity()
    acc = m
    for k in range(1, limit + 1):
        if acc == ident:
            return k
        acc = compose(acc, m)
    raise ArithmeticError("order exceeds limit")


def characteristic_polynomial(m: Matrix) -> Poly:
    """det(t I - M) computed exactly over ZZ[t]."""
    R = PolynomialRing(ZZ, "t")
    r = rows(m)
    mat = [
        [Poly([-r[i][j], 1 if i == j else 0], ZZ) for j in range(RANK)] for i in range(RANK)
    ]
    return det(mat, R)


def det_one_minus(m: Matrix) -> int:
    r = rows(m)
    return det([[int(i == j) - r[i][j] for j in range(RANK)] for i in range(RANK)], ZZ)


def cyclotomic(n: int) -> Poly:
    """n-th cyclotomic polynomial over ZZ by exact division of t^n - 1."""
    f = Poly([-1] + [0] * (n - 1) + [1], ZZ)
    for d in range(1, n):
        if n % d == 0:
            f = f.exquo(cyclotomic(d))
    return f


def coxeter_checks(order=(0, 1, 2, 3, 4, 5)) -> tuple[int, Poly]:
    """(det(I - w_cox), characteristic polynomial of w_cox)."""
    w = coxeter_element(order)
    return det_one_minus(w), characteristic_polynomial(w)


def dual_index(gram=GRAM) -> int:
    """|det Gram| = [Lambda^vee : Lambda]."""
    return abs(det([list(r) for r in gram], ZZ))


# -- Lambda / 2 Lambda ----------------------------------------------------------------

Mod2Matrix = tuple  # 6 column bitmasks


def bits(v: int) -> tuple[int, ...]:
    return tuple((v >> j) & 1 for j in range(RANK))


def to_bits(v) -> int:
    return sum((c & 1) << j for j, c in enumerate(v))


def reduce_mod2(m: Matrix) -> Mod2Matrix:
    return tuple(to_bits(col) for col in m)


def apply_mod2(m: Mod2Matrix, v: int) -> int:
    out = 0
    j = 0
    while v:
        if v & 1:
            out ^= m[j]
        v >>= 1
        j += 1
    return out


def image_table(m: Mod2Matrix) -> list[int]:
    """Images of all 64 classes, built by linearity from the columns."""
    out = [0] * (1 << RANK)
    for j in range(RANK):
        step = 1 << j
        col = m[j]
        for v in range(step):
            out[v | step] = out[v] ^ col
    return out


def mod2_identity() -> Mod2Matrix:
    return tuple(1 << j for j in range(RANK))


class ModTwoQuadraticSpace:
    """The 64 classes of Lambda/2Lambda with pairing (l, m) mod 2 and q(l) = (-1)^((l,l)/2)."""

    def __init__(self, gram=GRAM):
        self.gram = gram
        self.classes = tuple(range(1 << RANK))
        self._q = tuple(
            -1 if (form(bits(v), bits(v), gram) // 2) % 2 else 1 for v in self.classes
        )
        self._pair = tuple(
            tuple(form(bits(u), bits(v), gram) & 1 for v in self.classes) for u in self.classes
        )

    def pairing(self, u: int, v: int) -> int:
        return self._pair[u][v]

    def q(self, v: int) -> int:
        return self._q[v]

    def counts(self) -> dict:
        plus = sum(1 for v in self.classes if v and self.q(v) == 1)
        minus = sum(1 for v in self.classes if self.q(v) == -1)
        return {"plus": plus, "minus": minus, "plus_total": plus + 1}

    def refinement_holds(self) -> bool:
        return all(
            self.q(u ^ v) == (-1) ** self.pairing(u, v) * self.q(u) * self.q(v)
            for u in self.classes
            for v in self.classes
        )

    def preserves_q(self, m: Mod2Matrix) -> bool:
        qt = self._q
        return all(qt[w] == qt[v] for v, w in enumerate(image_table(m)))

    def pairing_matrix_invertible(self) -> bool:
        return _rank_f2([to_bits(r) for r in self.gram]) == RANK


SPACE = ModTwoQuadraticSpace()


def _rank_f2(vectors) -> int:
    """Rank of a list of bitmask vectors over F_2."""
    basis: list[int] = []
    for v in vectors:
        for b in basis:
            v = min(v, v ^ b)
        if v:
            basis.append(v)
    return len(basis)


def _kernel_f2(row_masks: list[int], n: int) -> list[int]:
    """Basis of {x in F_2^n : <row, x> = 0 for all rows} via row reduction."""
    pivots: dict[int, int] = {}
    for r in row_masks:
        for col, pr in pivots.items():
            if (r >> col) & 1:
                r ^= pr
        if r:
            col = (r & -r).bit_length() - 1
            for c2 in list(pivots):
                if (pivots[c2] >> col) & 1:
                    pivots[c2] ^= r
            pivots[col] = r
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        x = 1 << f
        for col, pr in pivots.items():
            if (pr >> f) & 1:
                x |= 1 << col
        basis.append(x)
    return basis


def fixed_space_mod2(matrices) -> list[int]:
    """Basis of the common fixed space of the given mod-2 matrices (kernel of M - I)."""
    row_masks = []
    for m in matrices:
        for i in range(RANK):
            # row i of (M - I): bit j set iff entry (i, j) is 1
            r = 0
            for j in range(RANK):
                if ((m[j] >> i) & 1) ^ (i == j):
                    r |= 1 << j
            row_masks.append(r)
    return _kernel_f2(row_masks, RANK)


def w_mod2_fixed_space(subset) -> list[int]:
    """Common fixed space in Lambda/2Lambda of a nonempty set of integer Weyl matrices."""
    subset = list(subset)
    if not subset:
        raise ValueError("subset must be nonempty")
    return fixed_space_mod2({reduce_mod2(m) for m in subset})


def span_f2(basis: list[int]) -> set[int]:
    out = {0}
    for b in basis:
        out |= {v ^ b for v in out}
    return out


# -- centralizer of W in GL(Lambda/2Lambda) ---------------------------------------------


def _mat_mul_f2(a: Mod2Matrix, b: Mod2Matrix) -> Mod2Matrix:
    return tuple(apply_mod2(a, col) for col in b)


def _transpose_f2(a: Mod2Matrix) -> Mod2Matrix:
    return tuple(sum(((a[j] >> i) & 1) << j for j in range(RANK)) for i in range(RANK))


def commutant_basis(generators) -> list[Mod2Matrix]:
    """Basis of {X : X g = g X for all g} over F_2 (X as 36 unknowns x_{ij})."""
    gens = list(generators)
    n = RANK * RANK
    eqs = []

    def var(i, j):  # entry (row i, col j) of X
        return 1 << (i * RANK + j)

    for g in gens:
        gm = [[(g[j] >> i) & 1 for j in range(RANK)] for i in range(RANK)]
        for i in range(RANK):
            for j in range(RANK):
                # (X g)_{ij} - (g X)_{ij} = sum_k x_{ik} g_{kj} - g_{ik} x_{kj}
                e = 0
                for k in range(RANK):
                    if gm[k][j]:
                        e ^= var(i, k)
                    if gm[i][k]:
                        e ^= var(k, j)
                eqs.append(e)
    sols = _kernel_f2(eqs, n)
    out = []
    for s in sols:
        cols = tuple(
            sum(((s >> (i * RANK + j)) & 1) << i for i in range(RANK)) for j in range(RANK)
        )
        out.append(cols)
    return out


def _is_invertible_f2(m: Mod2Matrix) -> bool:
    return _rank_f2(list(m)) == RANK


def preserves_pairing(m: Mod2Matrix, gram=GRAM) -> bool:
    g2 = tuple(to_bits(col) for col in gram)
    return _mat_mul_f2(_transpose_f2(m), _mat_mul_f2(g2, m)) == g2


def pairing_centralizer(generators, max_dim: int = 20) -> list[Mod2Matrix]:
    """Invertible, pairing-preserving F_2-matrices commuting with every generator."""
    basis = commutant_basis(generators)
    if len(basis) > max_dim:
        raise ValueError(f"commutant has dimension {len(basis)}; too large to enumerate")
    out = []
    for coeffs in product((0, 1), repeat=len(basis)):
        m = [0] * RANK
        for c, b in zip(coeffs, basis):
            if c:
                m = [x ^ y for x, y in zip(m, b)]
        m = tuple(m)
        if _is_invertible_f2(m) and preserves_pairing(m):
            out.append(m)
    return out


def pairing_centralizer_of_W() -> list[Mod2Matrix]:
    return pairing_centralizer([reduce_mod2(reflection(i)) for i in range(RANK)])


# -- image of W in Aut(Lambda/2Lambda, q) ---------------------------------------------------


def orthogonal_group_order(q: int = 2, n: int = 3) -> int:
    """|O^-_{2n}(q)| = 2 q^{n(n-1)} (q^n + 1) prod_{i<n} (q^{2i} - 1)."""
    acc = 2 * q ** (n * (n - 1)) * (q**n + 1)
    for i in range(1, n):
        acc *= q ** (2 * i) - 1
    return acc


@lru_cache(maxsize=None)
def weyl_mod2() -> tuple[Mod2Matrix, ...]:
    return tuple(reduce_mod2(w) for w in weyl_group())


def aut_image_checks() -> dict:
    group = weyl_group()
    image = set(weyl_mod2())
    return {
        "injective": len(image) == len(group),
        "image_order": len(image),
        "target_order": orthogonal_group_order(),
        "preserves_q": all(SPACE.preserves_q(m) for m in image),
    }


# -- orbits, the S0/S1 witness, and the fixing proportion -----------------------------------


def orbits_mod2(generators, classes) -> list[set[int]]:
    remaining = set(classes)
    out = []
    while remaining:
        start = min(remaining)
        orbit = {start}
        queue = deque([start])
        while queue:
            v = queue.popleft()
            for g in generators:
                u = apply_mod2(g, v)
                if u not in orbit:
                    orbit.add(u)
                    queue.append(u)
        out.append(orbit)
        remaining -= orbit
    return out


def fixes_nonzero(m: Mod2Matrix) -> bool:
    # M - I is singular over F_2
    return _rank_f2([c ^ (1 << j) for j, c in enumerate(m)]) < RANK


def orbit_and_section_checks() -> dict:
    sp = SPACE
    gens = [reduce_mod2(reflection(i)) for i in range(RANK)]
    plus = [v for v in sp.classes if v and sp.q(v) == 1]
    minus = [v for v in sp.classes if sp.q(v) == -1]
    transitive_27 = len(orbits_mod2(gens, plus)) == 1
    transitive_36 = len(orbits_mod2(gens, minus)) == 1

    witness = True
    for v in minus:
        s0 = [w for w in plus if sp.pairing(v, w) == 0]
        s1 = [w for w in plus if sp.pairing(v, w) == 1]
        witness &= bool(s0) and bool(s1)

    roots_mod2 = {to_bits(r) for r in build_root_system().roots}

    group = weyl_mod2()
    fixing = sum(1 for m in group if fixes_nonzero(m))
    cox = reduce_mod2(coxeter_element())
    return {
        "transitive_27": transitive_27,
        "transitive_36": transitive_36,
        "s0_s1_witness": witness,
        "roots_mod2_count": len(roots_mod2),
        "roots_cover_minus": roots_mod2 == set(minus),
        "fixing_count": fixing,
        "weyl_order": len(group),
        "fixing_proportion": Fraction(fixing, len(group)),
        "C_ne_W": fixing < len(group),
        "coxeter_fixes_nothing": not fixes_nonzero(cox),
    }


def verify() -> dict:
    """Everything the ``e6 verify`` subcommand reports."""
    rs = build_root_system()
    W = weyl_group()
    dcox, _ = coxeter_checks()
    orb = orbit_and_section_checks()
    aut = aut_image_checks()
    counts = SPACE.counts()
    cent = pairing_centralizer_of_W()
    return {
        "roots": len(rs.roots),
        "weyl_order": len(W),
        "det_one_minus_coxeter": dcox,
        "q_counts": {"plus": counts["plus"], "minus": counts["minus"]},
        "w_fixed_space_dim": len(w_mod2_fixed_space([reflection(i) for i in range(RANK)])),
        "centralizer_trivial": cent == [mod2_identity()],
        "aut_image_order": aut["image_order"],
        "dual_index": dual_index(),
        "fixing_proportion": f"{orb['fixing_proportion'].numerator}/{orb['fixing_proportion'].denominator}",
        "transitive_27": orb["transitive_27"],
        "transitive_36": orb["transitive_36"],
    }

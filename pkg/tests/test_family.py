from __future__ import annotations

import math
import random
from functools import reduce

import pytest

from hyperflex.algebra import GF, QQ, ZZ, PrimeField, macaulay_resultant_ternary
from hyperflex.errors import DomainError
from hyperflex.family import (
    DISC_NORMALIZATION,
    FamilyPoint,
    coordinate_bounds,
    discriminant,
    enumerate_family,
    height_less_than,
    homogenize,
    is_minimal,
    is_smooth,
    is_smooth_generic,
    point_count,
    trigonal_form,
    weil_envelope,
)
from hyperflex.stats import box_count

CURVE = FamilyPoint(0, 0, 0, -1, 1, 1)
ZERO = FamilyPoint(0, 0, 0, 0, 0, 0)


def random_point(rng, bound=4):
    return FamilyPoint(*(rng.randint(-bound, bound) for _ in range(6)))


def brute_point_count(b, K):
    """Projective points of the homogenized quartic by direct evaluation."""
    F = homogenize(b).change_domain(K)
    els = list(K.elements())
    pts = [(x, y, K.one) for x in els for y in els]
    pts += [(x, K.one, K.zero) for x in els] + [(K.one, K.zero, K.zero)]
    return sum(1 for v in pts if not K.reduce(F(*v)))


# -- FamilyPoint ----------------------------------------------------------------------


def test_parse_and_json_roundtrip():
    b = FamilyPoint.parse("0, 0, 0, -1, 1, 1")
    assert b == CURVE
    assert FamilyPoint.from_json(b.to_json()) == b
    assert b.to_json()["p8"] == "-1"
    for bad in ("1,2,3", "a,b,c,d,e,f", ""):
        with pytest.raises(DomainError):
            FamilyPoint.parse(bad)


def test_homogenize_at_infinity():
    rng = random.Random(1)
    for _ in range(20):
        F = homogenize(random_point(rng))
        at_z0 = {m: c for m, c in F.terms.items() if m[2] == 0 and c}
        assert at_z0 == {(4, 0, 0): -1}
        assert F(0, 1, 0) == 0
        Fx, Fy, Fz = F.gradient()
        assert Fz(0, 1, 0) == 1  # smooth at infinity in every characteristic


def test_trigonal_form_shape():
    P, Q = trigonal_form(FamilyPoint(1, 2, 3, 4, 5, 6))
    assert P.coeffs == (4, 2, 1)
    assert Q.coeffs == (6, 5, 3, 0, 1)


# -- height, minimality, enumeration --------------------------------------------------


def test_height_examples():
    assert height_less_than(CURVE, 2)
    assert not height_less_than(FamilyPoint(1, 0, 0, 0, 0, 0), 1)
    rng = random.Random(2)
    for _ in range(30):
        b, lam, a = random_point(rng), rng.randint(1, 4), rng.randint(1, 50)
        assert height_less_than(b.scale(lam), lam**72 * a) == height_less_than(b, a)


def test_minimal_examples():
    assert is_minimal(CURVE)
    assert CURVE.scale(2) == FamilyPoint(0, 0, 0, -(2**8), 2**9, 2**12)
    assert not is_minimal(CURVE.scale(2))
    assert not is_minimal(FamilyPoint(0, -1, 0, 1, 0, 1))
    with pytest.raises(DomainError):
        is_minimal(ZERO)


def test_minimal_against_brute_force():
    rng = random.Random(3)
    for _ in range(200):
        b = random_point(rng, 40)
        if b.is_zero():
            continue
        sign_ok = b.p5 > 0 or (b.p5 == 0 and b.p9 >= 0)
        divisible = any(
            all(c % q**w == 0 for c, w in zip(b, (2, 5, 6, 8, 9, 12))) for q in range(2, 41)
        )
        assert is_minimal(b) == (sign_ok and not divisible)


def test_enumerate_small_boxes():
    assert list(enumerate_family(1)) == [ZERO]
    stream = list(enumerate_family(10**4))
    assert stream == sorted(stream)
    assert all(height_less_than(b, 10**4) for b in stream)
    assert len(stream) == box_count(10**4).count
    minimal = list(enumerate_family(10**4, minimal_only=True))
    assert minimal and all(is_minimal(b) for b in minimal)


@pytest.mark.parametrize("a", [10**4, 10**6, 10**9])
def test_enumerate_length_equals_box(a):
    assert sum(1 for _ in enumerate_family(a)) == box_count(a).count


def test_enumerate_coordinate_bounds_closed_form():
    a = 2**72
    bounds = coordinate_bounds(a)
    assert bounds[0] == 3  # p2 in [-3, 3]
    for N, w in zip(bounds, (2, 5, 6, 8, 9, 12)):
        assert N**72 < a**w <= (N + 1) ** 72
    assert box_count(a).count == math.prod(2 * N + 1 for N in bounds)


# -- discriminant ------------------------------------------------------------------------


def test_discriminant_examples():
    assert discriminant(ZERO) == 0
    assert discriminant(CURVE) == 1815566443


def test_discriminant_weighted_homogeneity_100():
    rng = random.Random(72)
    for _ in range(100):
        b = random_point(rng, 3)
        lam = rng.choice([-2, -1, 2, 3])
        assert discriminant(b.scale(lam)) == lam**72 * discriminant(b)


def test_resultant_of_partials_scales_by_27():
    rng = random.Random(27)
    for _ in range(10):
        F = homogenize(random_point(rng, 3))
        lam = rng.choice([2, 3, -2])
        base = macaulay_resultant_ternary(*F.gradient())
        assert macaulay_resultant_ternary(*F.scale(lam).gradient()) == lam**27 * base


def test_discriminant_normalization_is_exact_and_primitive():
    rng = random.Random(200)
    values = []
    for _ in range(200):
        b = random_point(rng, 5)
        res = macaulay_resultant_ternary(*homogenize(b).gradient())
        assert res % DISC_NORMALIZATION == 0
        values.append(res // DISC_NORMALIZATION)
    g = reduce(math.gcd, values)
    assert g == 1


@pytest.mark.parametrize("p", [5, 7, 11, 13])
def test_smooth_iff_discriminant_nonzero_mod_p(p):
    rng = random.Random(p)
    F = PrimeField(p)
    singular = 0
    for _ in range(500):
        b = FamilyPoint(*(rng.randrange(p) for _ in range(6)))
        smooth = is_smooth(b, F)
        singular += not smooth
        assert smooth == (discriminant(b) % p != 0), b
    assert singular > 0


# -- smoothness --------------------------------------------------------------------------


def test_smooth_examples():
    assert is_smooth(CURVE, PrimeField(2))
    assert is_smooth(CURVE, QQ)
    for K in (QQ, PrimeField(2), PrimeField(3), GF(2, 2), PrimeField(7)):
        assert not is_smooth(ZERO, K)


def test_smooth_over_q_matches_discriminant():
    rng = random.Random(9)
    hits = 0
    for _ in range(60):
        b = random_point(rng, 2)
        if rng.random() < 0.3:
            b = FamilyPoint(b.p2, b.p5, 0, b.p8, 0, 0)  # often singular at the origin
        s = is_smooth(b, QQ)
        hits += not s
        assert s == (discriminant(b) != 0)
    assert hits > 0


def test_solver_agrees_with_pencil_test_over_extension():
    K = GF(2, 3)
    rng = random.Random(4)
    for _ in range(40):
        b = FamilyPoint(*(rng.randrange(2) for _ in range(6)))
        assert is_smooth(b, K) == is_smooth_generic(b, K)


def test_pencil_needs_four_elements():
    with pytest.raises(DomainError):
        is_smooth_generic(CURVE, PrimeField(3))


def test_smooth_rejects_integer_ring():
    with pytest.raises(DomainError):
        is_smooth(CURVE, ZZ)


def test_singular_point_witness_over_f3():
    # y^3 = x^4 + ... with a node placed at the origin mod 3: P(0)=Q(0)=Q'(0)=0
    b = FamilyPoint(1, 0, 1, 0, 0, 0)
    F = PrimeField(3)
    assert not is_smooth(b, F)
    assert homogenize(b).change_domain(F)(0, 0, 1) == 0


# -- point counts ------------------------------------------------------------------------


def test_point_count_examples():
    assert point_count(CURVE, PrimeField(2)) == 1
    assert point_count(ZERO, PrimeField(2)) == 3


@pytest.mark.parametrize("q", [(2, 1), (3, 1), (5, 1), (7, 1), (2, 2), (3, 2)])
def test_point_count_matches_brute_force(q):
    K = GF(*q)
    rng = random.Random(q[0] * 10 + q[1])
    for _ in range(25):
        b = FamilyPoint(*(rng.randrange(q[0]) for _ in range(6)))
        assert point_count(b, K) == brute_point_count(b, K)


def test_weil_envelope():
    assert weil_envelope(7) == (8 - 15, 8 + 15)
    assert weil_envelope(2) == (3 - 6, 3 + 6)


def test_smooth_counts_in_weil_envelope_f7_sample():
    F = PrimeField(7)
    lo, hi = weil_envelope(7)
    rng = random.Random(7)
    for _ in range(300):
        b = FamilyPoint(*(rng.randrange(7) for _ in range(6)))
        if is_smooth(b, F):
            assert lo <= point_count(b, F) <= hi

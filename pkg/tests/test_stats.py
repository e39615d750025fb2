from __future__ import annotations

import itertools
import math
from fractions import Fraction

import pytest

from hyperflex import stats
from hyperflex.algebra import PrimeField
from hyperflex.errors import DomainError
from hyperflex.family import FamilyPoint, discriminant, homogenize, is_smooth, is_smooth_generic, weil_envelope

# frozen regression value of the exhaustive p = 7 sweep (two independent smoothness tests agree)
SMOOTH_F7 = 100842


def brute_projective_count(b, p):
    F = homogenize(b)
    pts = [(x, y, 1) for x in range(p) for y in range(p)]
    pts += [(x, 1, 0) for x in range(p)] + [(1, 0, 0)]
    return sum(1 for v in pts if F(*v) % p == 0)


@pytest.mark.parametrize("p, smooth", [(2, 32), (3, 486), (5, 12500)])
def test_density_small_primes(p, smooth):
    rep = stats.density_good_reduction(p, workers=1)
    assert (rep.total, rep.smooth) == (p**6, smooth)
    assert rep.density == Fraction(p - 1, p)


def test_density_small_primes_by_discriminant_oracle():
    # independent of both smoothness routines: nonvanishing of the integer discriminant mod p
    for p in (2, 3):
        n = sum(
            1
            for v in itertools.product(range(p), repeat=6)
            if discriminant(FamilyPoint(*v)) % p
        )
        assert n == stats.density_good_reduction(p, workers=1).smooth


def test_density_at_5_by_pencil_test():
    F = PrimeField(5)
    n = sum(1 for v in itertools.product(range(5), repeat=6) if is_smooth_generic(FamilyPoint(*v), F))
    assert n == 12500


def test_partition_independence():
    serial = stats.sweep(5, 1)
    pooled = stats.sweep(5, 2)
    assert serial == pooled
    assert [s.first for s in serial] == list(range(5))


def test_density_f7():
    rep = stats.density_good_reduction(7)
    assert rep.total == 7**6 == 117649
    assert rep.smooth == SMOOTH_F7
    assert rep.density == Fraction(6, 7)
    assert rep.to_json()["decimal"] == "0.857143"


def test_max_points_f7():
    n, witness, low = stats.max_points(7)
    assert n == 19
    assert is_smooth(witness, PrimeField(7))
    assert brute_projective_count(witness, 7) == 19
    lo, hi = weil_envelope(7)
    assert lo <= low and n <= hi
    assert low >= 1  # the point at infinity is always rational
    assert stats.max_points_F7() == (n, witness)
    assert stats.serre_weil_max(7) == 23


def test_max_points_small_primes_against_brute_force():
    for p in (2, 3):
        F = PrimeField(p)
        best = max(
            brute_projective_count(FamilyPoint(*v), p)
            for v in itertools.product(range(p), repeat=6)
            if is_smooth(FamilyPoint(*v), F)
        )
        assert stats.max_points(p, workers=1)[0] == best


def test_chabauty_examples():
    r = stats.chabauty_combine(3, Fraction(6, 7), 19)
    assert r.delta_low == Fraction(5, 7)
    assert r.majority_low == Fraction(4, 7)
    assert r.point_cap == 23
    assert stats.chabauty_combine(3, Fraction(6, 7), 22).point_cap == 26
    assert stats.chabauty_combine(8, Fraction(1, 2), 5).delta_low == 0
    one = stats.chabauty_combine(1, Fraction(2, 3), 5)
    assert one.delta_low == 1 and one.majority_low == Fraction(2, 3)
    assert r.to_json()["majority_low_decimal"] == "0.571429"


def test_chabauty_monotone():
    prev = None
    for S in [Fraction(k, 4) for k in range(4, 40)]:
        d = stats.chabauty_combine(S, Fraction(6, 7), 19).delta_low
        assert 0 <= d <= 1
        if prev is not None:
            assert d <= prev
        prev = d


def test_chabauty_errors():
    with pytest.raises(DomainError):
        stats.chabauty_combine(Fraction(1, 2), Fraction(1, 2), 5)
    with pytest.raises(DomainError):
        stats.chabauty_combine(3, Fraction(3, 2), 5)


def test_sweep_rejects_composite():
    with pytest.raises(DomainError):
        stats.density_good_reduction(6, workers=1)


def test_box_count():
    assert stats.box_count(1).count == 1
    assert stats.box_count(10**4).count == 14175
    big = stats.box_count(10**12)
    assert big.count == 665777385
    assert abs(big.ratio - 1) <= 0.15
    assert math.isclose(big.ratio, 1.040277, abs_tol=1e-6)


def test_decimal_formatting():
    assert stats.decimal(Fraction(4, 7)) == "0.571429"
    assert stats.decimal(Fraction(-1, 3), 3) == "-0.333"
    assert stats.decimal(Fraction(2)) == "2.000000"

import random
from fractions import Fraction

import pytest

from ultranorm.errors import SubFromFinite
from ultranorm.logval import (INF, KIND_Z, KIND_Z_INV_P, KIND_Z_SQRT2,
                              LogValue, ValueGroup, compare,
                              divisible_closure_member, lv, parse_logvalue)

def _sqrt2_bounds():
    # Pell convergents: p^2 - 2q^2 alternates +-1, so consecutive ones
    # straddle sqrt(2); forty steps is far sharper than any test quantity
    p, q = 3, 2
    for _ in range(40):
        p, q = p + 2 * q, p + q
    if p * p - 2 * q * q == 1:
        return Fraction(p + 2 * q, p + q), Fraction(p, q)
    return Fraction(p, q), Fraction(p + 2 * q, p + q)


SQ_LO, SQ_HI = _sqrt2_bounds()
assert SQ_LO < SQ_HI and SQ_LO ** 2 < 2 < SQ_HI ** 2


def interval_sign(v: LogValue):
    """Sign via interval arithmetic with rational sqrt(2) bounds; None if
    the interval straddles zero (only possible for the exact zero)."""
    if v.b >= 0:
        lo = v.a + v.b * SQ_LO
        hi = v.a + v.b * SQ_HI
    else:
        lo = v.a + v.b * SQ_HI
        hi = v.a + v.b * SQ_LO
    if lo > 0:
        return 1
    if hi < 0:
        return -1
    return None


def test_compare_examples():
    assert compare(lv(Fraction(1, 2)), lv(0, Fraction(1, 2))) < 0
    assert compare(lv(0), lv(0)) == 0
    assert compare(lv(3), INF) < 0
    assert compare(INF, INF) == 0


def test_arith_examples():
    assert lv(1) + lv(0, 1) == lv(1, 1)
    assert lv(Fraction(1, 3)).scale(3) == lv(1)
    assert lv(2) + INF == INF
    assert INF - lv(5) == INF
    with pytest.raises(SubFromFinite):
        lv(1) - INF


def test_compare_agrees_with_interval_oracle():
    rng = random.Random(20817)
    for _ in range(1000):
        u = lv(Fraction(rng.randint(-50, 50), rng.randint(1, 20)),
               Fraction(rng.randint(-50, 50), rng.randint(1, 20)))
        v = lv(Fraction(rng.randint(-50, 50), rng.randint(1, 20)),
               Fraction(rng.randint(-50, 50), rng.randint(1, 20)))
        got = compare(u, v)
        expected = interval_sign(u - v)
        if expected is None:
            assert (u.a, u.b) == (v.a, v.b) and got == 0
        else:
            assert got == expected


def test_order_respects_addition():
    rng = random.Random(5150)
    for _ in range(300):
        u = lv(Fraction(rng.randint(-9, 9), rng.randint(1, 9)),
               Fraction(rng.randint(-9, 9), rng.randint(1, 9)))
        v = lv(Fraction(rng.randint(-9, 9), rng.randint(1, 9)),
               Fraction(rng.randint(-9, 9), rng.randint(1, 9)))
        w = lv(Fraction(rng.randint(-9, 9), rng.randint(1, 9)),
               Fraction(rng.randint(-9, 9), rng.randint(1, 9)))
        if u < v:
            assert u + w < v + w


def test_infinity_absorbing_and_maximal():
    rng = random.Random(99)
    for _ in range(50):
        u = lv(rng.randint(-5, 5), rng.randint(-5, 5))
        assert u + INF == INF
        assert u < INF


def test_divisible_closure():
    Z = ValueGroup(KIND_Z)
    assert divisible_closure_member(lv(Fraction(3, 4)), Z)
    assert not divisible_closure_member(lv(0, 1), Z)
    assert divisible_closure_member(lv(0), Z)
    Z3 = ValueGroup(KIND_Z_INV_P, 3)
    assert divisible_closure_member(lv(Fraction(7, 12)), Z3)
    assert not divisible_closure_member(lv(1, Fraction(1, 2)), Z3)
    ZS = ValueGroup(KIND_Z_SQRT2)
    assert divisible_closure_member(lv(Fraction(1, 3), Fraction(5, 7)), ZS)


def test_group_membership():
    Z3 = ValueGroup(KIND_Z_INV_P, 3)
    assert Z3.contains(lv(Fraction(5, 9)))
    assert not Z3.contains(lv(Fraction(1, 2)))
    assert not Z3.contains(lv(0, 1))
    assert Z3.dense
    assert not ValueGroup(KIND_Z).dense
    assert ValueGroup(KIND_Z_SQRT2).contains(lv(2, -3))


def test_json_and_text_round_trip():
    vals = [lv(Fraction(3, 4), Fraction(-1, 2)), lv(5), INF, lv(0, 1)]
    for v in vals:
        assert LogValue.from_json(v.to_json()) == v
        assert parse_logvalue(str(v)) == v
    assert parse_logvalue("1/2+3/4*sqrt2") == lv(Fraction(1, 2), Fraction(3, 4))
    assert parse_logvalue("sqrt2") == lv(0, 1)
    assert parse_logvalue("inf") == INF

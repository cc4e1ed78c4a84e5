import random
from fractions import Fraction

import pytest

from conftest import random_element, random_poly, random_ratfun
from ultranorm import fields, ratfun
from ultranorm.errors import DivisionByZero, ZeroPolynomial
from ultranorm.logval import LogValue, lv


def brute_force_newton_slopes(points):
    """Independent oracle: lower hull via the all-pairs test.  A segment
    between two points is on the lower hull iff every point lies on or
    above its line; slopes are returned negated (root valuations),
    increasing, with horizontal spans as multiplicities."""
    segments = []
    for i, (x1, y1) in enumerate(points):
        for x2, y2 in points[i + 1:]:
            below = False
            for x, y in points:
                if x1 < x < x2:
                    # y versus the chord at x
                    lhs = (y - y1).scale(x2 - x1)
                    rhs = (y2 - y1).scale(x - x1)
                    if lhs < rhs:
                        below = True
                        break
            if not below:
                segments.append((x1, x2, (y1 - y2).scale(Fraction(1, x2 - x1))))
    # keep only maximal non-overlapping chords of the hull itself
    segments.sort()
    slopes = []
    cursor = points[0][0]
    for x1, x2, s in segments:
        if x1 == cursor:
            target = max((b for a, b, t in segments if a == cursor and t == s),
                         default=x2)
            slopes.append((s, target - cursor))
            cursor = target
    merged = []
    for s, m in reversed(slopes):
        if merged and merged[-1][0] == s:
            merged[-1] = (s, merged[-1][1] + m)
        else:
            merged.append((s, m))
    return merged


def test_combine_examples(laurent3):
    t = ratfun.RatFun.variable(laurent3)
    lam = ratfun.RatFun.constant(fields.monomial(laurent3, Fraction(1)))
    inv = (t - lam).invert()
    assert inv.num.degree == 0 and inv.den.degree == 1
    s = t + lam
    assert s.num.degree == 1
    f = random_ratfun(random.Random(5), laurent3)
    prod = f * f.invert()
    one = ratfun.RatFun.constant(fields.one(laurent3))
    assert prod.equals(one)
    with pytest.raises(DivisionByZero):
        ratfun.RatFun.from_poly(ratfun.Poly.zero(laurent3)).invert()


def test_recenter_examples(laurent3):
    z = fields.monomial(laurent3, Fraction(1))
    t = ratfun.Poly.variable(laurent3)
    assert ratfun.recenter(t, z) == ratfun.Poly(
        laurent3, (z, fields.one(laurent3)))
    sq = ratfun.recenter(t * t, z)
    # t^2 + 2zt + z^2
    assert sq.coeffs[0] == z * z
    assert sq.coeffs[1] == fields.from_int(laurent3, 2) * z
    assert sq.coeffs[2] == fields.one(laurent3)


def test_recenter_inverse_shift(laurent3):
    rng = random.Random(808)
    for _ in range(40):
        P = random_poly(rng, laurent3, max_deg=4)
        lam = random_element(rng, laurent3)
        back = ratfun.recenter(ratfun.recenter(P, lam), -lam)
        assert back == P


def test_recenter_preserves_degree_and_leading(laurent3):
    rng = random.Random(809)
    for _ in range(40):
        P = random_poly(rng, laurent3, max_deg=4)
        lam = random_element(rng, laurent3)
        Q = ratfun.recenter(P, lam)
        assert Q.degree == P.degree
        assert Q.coeffs[-1] == P.coeffs[-1]


def test_newton_polygon_example(padic2):
    # P = t^2 + 2t + 8 over the 2-adics: hull through (0,3),(1,1),(2,0)
    P = ratfun.Poly(padic2, tuple(fields.from_int(padic2, c)
                                  for c in (8, 2, 1)))
    points = [(i, fields.valuation(c)) for i, c in enumerate(P.coeffs)]
    oracle = brute_force_newton_slopes(points)
    np_ = ratfun.newton_polygon(P)
    assert list(np_.slopes) == oracle
    assert [(s.a, mult) for s, mult in np_.slopes] == [(1, 1), (2, 1)]


def test_newton_polygon_degenerate(laurent3):
    lam = fields.monomial(laurent3, Fraction(5, 3))
    linear = ratfun.Poly.linear(laurent3, lam)
    np_ = ratfun.newton_polygon(linear)
    assert np_.slopes == ((lv(Fraction(5, 3)), 1),)
    cube = ratfun.Poly.variable(laurent3)
    cube = cube * cube * cube
    assert ratfun.newton_polygon(cube).slopes == ()
    with pytest.raises(ZeroPolynomial):
        ratfun.newton_polygon(ratfun.Poly.zero(laurent3))


def test_newton_polygon_of_product_is_multiset_union(laurent3):
    rng = random.Random(2718)
    for _ in range(200):
        P = random_poly(rng, laurent3, max_deg=3)
        Q = random_poly(rng, laurent3, max_deg=3)
        lhs = sorted(((s.a, s.b) for s in
                      ratfun.newton_polygon(P * Q).multiset()))
        rhs = sorted(((s.a, s.b) for s in
                      ratfun.newton_polygon(P).multiset() +
                      ratfun.newton_polygon(Q).multiset()))
        assert lhs == rhs


def test_cross_multiplication_equality(laurent3):
    rng = random.Random(1618)
    for _ in range(50):
        f = random_ratfun(rng, laurent3)
        r = random_poly(rng, laurent3, max_deg=2)
        scaled = ratfun.RatFun(f.num * r, f.den * r)
        assert f.equals(scaled)

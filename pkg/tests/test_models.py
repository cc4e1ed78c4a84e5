import math
import random
from fractions import Fraction

import pytest

from conftest import random_element
from ultranorm import fields, models
from ultranorm.errors import (DecompositionMismatch, UnsupportedDenominator,
                              ValueNotInGroup, ZeroDivisorAtPrecision,
                              ZeroElement)
from ultranorm.logval import INF, lv

# ---------------------------------------------------------------------------
# Q-series
# ---------------------------------------------------------------------------


def brute_force_norm_exponent(x):
    """Independent scan: multiply coefficients by literal (j!)^j powers
    and test integrality, walking n downward from the lowest degree."""
    n = min(deg for deg, _ in x.terms)
    while True:
        ok = True
        for deg, a in x.terms:
            j = deg - n
            if j < 0 or (a * Fraction(math.factorial(j)) ** j).denominator != 1:
                ok = False
                break
        if ok:
            return n
        n -= 1


def test_qseries_norm_examples():
    assert models.qseries_norm(models.qseries([(1, 1)])) == 1
    half = models.qseries([(0, Fraction(1, 2))])
    assert brute_force_norm_exponent(half) == -2
    assert models.qseries_norm(half) == -2
    q = models.qseries([(2, Fraction(1, 4))])
    assert brute_force_norm_exponent(q) == 0
    assert models.qseries_norm(q) == 0
    with pytest.raises(ZeroElement):
        models.qseries_norm(models.qseries([]))


def test_qseries_norm_matches_brute_force():
    rng = random.Random(6174)
    for _ in range(120):
        terms = []
        for _ in range(rng.randint(1, 4)):
            terms.append((rng.randint(-3, 6),
                          Fraction(rng.randint(-20, 20), rng.randint(1, 36))))
        x = models.qseries(terms)
        if x.is_zero:
            continue
        assert models.qseries_norm(x) == brute_force_norm_exponent(x)


def test_qseries_spectral_ball():
    assert models.qseries_spectral_ball(models.qseries([(0, Fraction(1, 2))]))
    assert not models.qseries_spectral_ball(models.qseries([(-1, 1)]))
    assert models.qseries_spectral_ball(models.qseries([]))


def test_witness_table_examples():
    table = dict(models.qseries_unbounded_witness(100))
    assert table[1] == 2
    assert table[10] == 4
    assert table[100] == 12


def test_witness_table_growth():
    table = models.qseries_unbounded_witness(2000)
    js = [j for _, j in table]
    assert all(a <= b for a, b in zip(js, js[1:]))
    assert js[-1] > js[0]
    for k, j in table:
        assert j * (j - bin(j).count("1")) >= k
        if j:
            assert (j - 1) * ((j - 1) - bin(j - 1).count("1")) < k
        assert j <= 2 + 2 * math.isqrt(k) + 1  # j(k)^2/k stays bounded


def test_qseries_submultiplicative():
    rng = random.Random(300300)
    done = 0
    while done < 300:
        x = models.qseries([(rng.randint(-3, 5),
                             Fraction(rng.randint(-8, 8), rng.choice([1, 2, 3, 4, 6, 8, 24])))
                            for _ in range(rng.randint(1, 3))])
        y = models.qseries([(rng.randint(-3, 5),
                             Fraction(rng.randint(-8, 8), rng.choice([1, 2, 3, 4, 6, 8, 24])))
                            for _ in range(rng.randint(1, 3))])
        prod = x * y
        if x.is_zero or y.is_zero or prod.is_zero:
            continue
        done += 1
        assert models.qseries_norm(prod) >= \
            models.qseries_norm(x) + models.qseries_norm(y)


# ---------------------------------------------------------------------------
# Annulus
# ---------------------------------------------------------------------------

SQRT2 = lv(0, 1)


def test_annulus_radius_guard(padic2):
    with pytest.raises(ValueNotInGroup):
        models.annulus_element(padic2, lv(Fraction(3, 2)),
                               [(0, fields.one(padic2))])


def test_annulus_invert_examples(padic2):
    one = models.annulus_element(padic2, SQRT2, [(0, fields.one(padic2))])
    T = models.annulus_element(padic2, SQRT2, [(1, fields.one(padic2))])
    Tinv = models.annulus_invert(T, lv(5))
    assert Tinv.terms == ((-1, fields.one(padic2)),)
    assert Tinv.prec == INF  # monomial: exact inverse
    assert models.annulus_invert(one, lv(9)).terms == one.terms

    # x = T - lam with v(lam) = 1 < sqrt2: lam dominates
    lam = fields.from_int(padic2, 2)
    x = models.annulus_element(padic2, SQRT2,
                               [(1, fields.one(padic2)), (0, -lam)])
    y = models.annulus_invert(x, lv(5))
    residual = x * y - one
    assert residual.norm_exponent() > lv(5)
    # K terms with K the least integer with K*(sqrt2 - 1) > 5: K = 13
    assert len(y.terms) == 13
    with pytest.raises(ZeroDivisorAtPrecision):
        models.annulus_invert(
            models.annulus_element(padic2, SQRT2, []), lv(3))


def _random_annulus(rng, field):
    terms = []
    for _ in range(rng.randint(1, 4)):
        n = rng.randint(-4, 4)
        c = random_element(rng, field, allow_zero=True)
        terms.append((n, c))
    x = models.annulus_element(field, SQRT2, terms)
    if x.is_zero:
        return models.annulus_element(field, SQRT2, [(0, fields.one(field))])
    return x


def test_annulus_multiplicative(padic2):
    rng = random.Random(2854)
    for _ in range(300):
        x = _random_annulus(rng, padic2)
        y = _random_annulus(rng, padic2)
        prod = x * y
        assert not prod.is_zero  # unique dominance never cancels the minimum
        assert prod.norm_exponent() == x.norm_exponent() + y.norm_exponent()


def test_annulus_random_inversions(padic2):
    rng = random.Random(11235)
    one = models.annulus_element(padic2, SQRT2, [(0, fields.one(padic2))])
    for _ in range(100):
        x = _random_annulus(rng, padic2)
        prec = lv(rng.randint(1, 8))
        y = models.annulus_invert(x, prec)
        residual = x * y - one
        assert residual.norm_exponent() > prec


# ---------------------------------------------------------------------------
# Multivariate
# ---------------------------------------------------------------------------


def test_multivar_norm_data_examples(padic2):
    T1 = models.variable(padic2, 1)
    T2 = models.variable(padic2, 2)
    T3 = models.variable(padic2, 3)
    two = models.multivar(padic2, [((), fields.from_int(padic2, 2))])
    x = T1 + two * T2
    assert models.multivar_norm_data(x) == (lv(0), 2)
    ratio = models.MultiVarRatio(T3, T1)
    assert models.multivar_norm_data(ratio) == (lv(0), 3)
    const = models.multivar(padic2, [((), fields.from_int(padic2, 8))])
    assert models.multivar_norm_data(const) == (lv(3), 0)
    with pytest.raises(ZeroElement):
        models.multivar_norm_data(models.multivar(padic2, []))


def test_depth_cancels_common_monomials(padic2):
    T1 = models.variable(padic2, 1)
    T3 = models.variable(padic2, 3)
    assert models.depth(models.MultiVarRatio(T1 * T3, T3)) == 1
    assert models.depth(models.MultiVarRatio(T3, T3)) == 0


def test_project_examples(padic2):
    T1 = models.variable(padic2, 1)
    T2 = models.variable(padic2, 2)
    x = T1 + T2 + T1 * T2 * T2
    assert models.project(1, x).terms == T1.terms
    assert models.project(2, x).terms == x.terms  # idempotence at depth
    assert models.project(0, x).is_zero
    with pytest.raises(UnsupportedDenominator):
        models.project(1, models.MultiVarRatio(T1, T1 + T2))
    # monomial denominators fold into Laurent polynomials
    folded = models.project(1, models.MultiVarRatio(T1 * T1, T1))
    assert folded.terms == T1.terms


def _random_multivar(rng, field, width=3):
    terms = []
    for _ in range(rng.randint(1, 4)):
        exps = tuple(rng.randint(-2, 2) for _ in range(rng.randint(0, width)))
        c = random_element(rng, field, allow_zero=True)
        terms.append((exps, c))
    x = models.multivar(field, terms)
    if x.is_zero:
        return models.variable(field, 1)
    return x


def test_project_composition_and_monotone_chain(padic2):
    rng = random.Random(31415)
    for _ in range(200):
        x = _random_multivar(rng, padic2)
        k1, k2 = rng.randint(0, 4), rng.randint(0, 4)
        lhs = models.project(k1, models.project(k2, x))
        assert lhs.terms == models.project(min(k1, k2), x).terms
        d = models.depth(x)
        assert models.project(d, x).terms == x.terms
        # alpha valuations rise (norms fall) as variables are stripped
        prev = None
        for k in range(d, -1, -1):
            pk = models.project(k, x)
            if pk.is_zero:
                break
            va = models.alpha_valuation(pk)
            if prev is not None:
                assert va >= prev
            prev = va


def test_norm_upper_examples(padic2):
    T1 = models.variable(padic2, 1)
    T2 = models.variable(padic2, 2)
    assert models.multivar_norm_upper(T2, [T2]) == lv(-2)  # bound 2^2
    assert models.multivar_norm_upper(T1 + T2, [T1, T2]) == lv(-2)
    with pytest.raises(DecompositionMismatch):
        models.multivar_norm_upper(T1, [T2])


def test_norm_upper_dominates_alpha(padic2):
    rng = random.Random(2020)
    for _ in range(200):
        x = _random_multivar(rng, padic2)
        parts = []
        rest = x
        for exps, c in x.terms[:-1]:
            if rng.random() < 0.5:
                part = models.multivar(padic2, [(exps, c)])
                parts.append(part)
                rest = rest - part
        parts.append(rest)
        parts = [p for p in parts if not p.is_zero]
        bound = models.multivar_norm_upper(x, parts)
        assert models.alpha_valuation(x) >= bound  # alpha(x) <= 2^-bound

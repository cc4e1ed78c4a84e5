"""Shared random generators for the property suites.

Everything is driven by seeded random.Random instances so failures are
reproducible; no global random state is touched.
"""

from fractions import Fraction

import pytest

from ultranorm import fields, ratfun
from ultranorm.fp import fp_rational_u_power, fp_rational_const


def random_laurent(rng, field, max_terms=3, allow_zero=False):
    terms = []
    for _ in range(rng.randint(1, max_terms)):
        k = rng.randint(0, 2)
        e = Fraction(rng.randint(-6, 6), field.p ** k)
        if field.rational_coefs:
            c = fp_rational_u_power(field.p, rng.randint(0, 2)) * \
                fp_rational_const(field.p, rng.randint(1, field.p - 1))
        else:
            from ultranorm.fp import fp_scalar
            c = fp_scalar(field.p, rng.randint(1, field.p - 1))
        terms.append((e, c))
    x = fields.LaurentElement(field, tuple(terms))
    if not allow_zero:
        while x.is_zero:
            x = random_laurent(rng, field, max_terms, allow_zero=True)
            if not x.is_zero:
                break
        if x.is_zero:
            return fields.one(field)
    return x


def random_padic(rng, field, allow_zero=False):
    num = rng.randint(-40, 40)
    if not allow_zero and num == 0:
        num = 1
    den = rng.randint(1, 40)
    return fields.from_rational(field, Fraction(num, den))


def random_element(rng, field, allow_zero=False):
    if field.flavor == fields.FLAVOR_PADIC:
        return random_padic(rng, field, allow_zero)
    return random_laurent(rng, field, allow_zero=allow_zero)


def random_poly(rng, field, max_deg=3, allow_zero=False):
    deg = rng.randint(0, max_deg)
    coeffs = [random_element(rng, field, allow_zero=True)
              for _ in range(deg + 1)]
    p = ratfun.Poly(field, tuple(coeffs))
    if p.is_zero and not allow_zero:
        return ratfun.Poly.constant(fields.one(field))
    return p


def random_ratfun(rng, field, max_deg=3):
    num = random_poly(rng, field, max_deg)
    den = random_poly(rng, field, max_deg)
    return ratfun.RatFun(num, den)


@pytest.fixture
def laurent3():
    return fields.laurent_field(3)


@pytest.fixture
def laurent3u():
    return fields.laurent_field(3, rational_coefs=True)


@pytest.fixture
def padic2():
    return fields.padic_field(2)

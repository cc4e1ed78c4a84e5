"""Concrete Banach-ring models with exactly computable norm data.

Three models live here:

* Q-series: Laurent polynomials over Q where the degree-j coefficient of
  the unit ball must lie in (1/(j!)^j) Z.  The norm exponent is reported
  in place of the norm itself (base-2 rescaling of the classical e^-n
  convention, which changes no statement about this model), so no
  transcendental constants appear anywhere.  Rational multiples of the
  unit ball are unbounded, which the witness table exhibits.

* Annulus: truncated Laurent series in T over a coefficient field, at a
  log-radius with nonzero sqrt(2) part.  Irrational radius means the
  minimum of v(coef) + n*s is attained at a unique term, so the norm is
  multiplicative on the nose and truncated inversion carries an exact
  residual bound.

* Multivariate: Laurent polynomials in T_1, T_2, ... with the weight
  2^depth attached to the highest variable in play.  Only upper bounds
  (from explicit decompositions) and the spectral lower bound are
  computed; the defining infimum ranges over all finite decompositions
  and admits no algorithm here.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from . import fields
from .errors import (DecompositionMismatch, DivisionByZero, ValueNotInGroup,
                     ZeroDivisorAtPrecision, ZeroElement)
from .logval import INF, LogValue, lv

# ---------------------------------------------------------------------------
# Q-series model
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class QSeriesElement:
    """Finite Laurent polynomial in T over exact rationals."""

    terms: Tuple[Tuple[int, Fraction], ...]  # (degree, coefficient), ascending

    def __post_init__(self):
        merged: Dict[int, Fraction] = {}
        for n, a in self.terms:
            merged[n] = merged.get(n, Fraction(0)) + Fraction(a)
        cleaned = tuple(sorted((n, a) for n, a in merged.items() if a != 0))
        object.__setattr__(self, "terms", cleaned)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, o):
        return QSeriesElement(self.terms + o.terms)

    def __mul__(self, o):
        out: Dict[int, Fraction] = {}
        for n, a in self.terms:
            for m, b in o.terms:
                out[n + m] = out.get(n + m, Fraction(0)) + a * b
        return QSeriesElement(tuple(out.items()))

    def __neg__(self):
        return QSeriesElement(tuple((n, -a) for n, a in self.terms))


def qseries(terms) -> QSeriesElement:
    return QSeriesElement(tuple((int(n), Fraction(a)) for n, a in terms))


def _factor_trial(n: int) -> Dict[int, int]:
    out: Dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def _legendre(n: int, q: int) -> int:
    """v_q(n!) by Legendre's formula."""
    v = 0
    power = q
    while power <= n:
        v += n // power
        power *= q
    return v


def _coefficient_admissible(a: Fraction, j: int) -> bool:
    """Whether a lies in (1/(j!)^j) Z, i.e. a * (j!)^j is an integer."""
    if j < 0:
        return False
    den = a.denominator
    if den == 1:
        return True
    for q, e in _factor_trial(den).items():
        if j * _legendre(j, q) < e:
            return False
    return True


def qseries_in_unit_ball(x: QSeriesElement) -> bool:
    return all(n >= 0 and _coefficient_admissible(a, n) for n, a in x.terms)


def qseries_norm(x: QSeriesElement) -> int:
    """The norm exponent: the largest n such that T^-n x is in the unit
    ball (norm = 2^-n in the rescaled convention)."""
    if x.is_zero:
        raise ZeroElement("the zero element has no norm exponent")
    n = x.terms[0][0]  # lowest degree; beyond it a negative power appears
    while not all(_coefficient_admissible(a, j - n) for j, a in x.terms):
        n -= 1
    return n


def qseries_spectral_ball(x: QSeriesElement) -> bool:
    """Unit ball of the spectral seminorm: no negative-degree terms."""
    return all(n >= 0 for n, _ in x.terms)


def _bits(j: int) -> int:
    return bin(j).count("1")


def witness_exponent(k: int) -> int:
    """j(k) = min{ j >= 0 : j*(j - s_2(j)) >= k }, the norm exponent of
    the constant 2^-k; j*v_2(j!) = j*(j - s_2(j)) by Legendre."""
    j = 0
    while j * (j - _bits(j)) < k:
        j += 1
    return j


def qseries_unbounded_witness(kmax: int) -> List[Tuple[int, int]]:
    """Table of (k, j(k)) with |2^-k| = 2^{j(k)}: nondecreasing and
    unbounded, while j(k)^2/k stays bounded, so rational multiples of the
    unit ball are unbounded even though their spectral norms are not."""
    if kmax < 1:
        raise ValueError("kmax must be >= 1")
    table = []
    j = 0
    for k in range(1, kmax + 1):
        while j * (j - _bits(j)) < k:
            j += 1
        table.append((k, j))
    return table


# ---------------------------------------------------------------------------
# Annulus model
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AnnulusElement:
    """Truncated Laurent series in T at an irrational log-radius s.

    Terms with weighted valuation above ``prec`` are dropped; ``prec`` is
    INF for exact elements.  The radius must avoid the divisible closure
    of the coefficient value group, which makes every weighted minimum
    uniquely attained.
    """

    field: fields.FieldDescriptor
    s: LogValue
    terms: Tuple[Tuple[int, object], ...]  # (T-exponent, coefficient)
    prec: LogValue = INF

    def __post_init__(self):
        if self.field.value_group.divisible_closure_contains(self.s):
            raise ValueNotInGroup(
                f"log-radius {self.s} lies in the divisible closure of "
                f"{self.field.value_group}; the annulus model needs it outside")
        merged: Dict[int, object] = {}
        for n, c in self.terms:
            merged[n] = merged[n] + c if n in merged else c
        kept = []
        for n, c in sorted(merged.items()):
            if c.is_zero:
                continue
            if self.term_value(n, c) > self.prec:
                continue  # absorbed by the precision tail
            kept.append((n, c))
        object.__setattr__(self, "terms", tuple(kept))

    def term_value(self, n: int, c) -> LogValue:
        return fields.valuation(c) + self.s.scale(n)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def norm_exponent(self) -> LogValue:
        """v_s(x) = min over terms of v(coef) + n*s; INF for zero.

        The minimum is attained at a unique term: distinct T-exponents
        give distinct sqrt(2) parts.
        """
        if self.is_zero:
            return INF
        return min(self.term_value(n, c) for n, c in self.terms)

    def dominant_term(self) -> Tuple[int, object]:
        best = None
        arg = None
        for n, c in self.terms:
            val = self.term_value(n, c)
            if best is None or val < best:
                best, arg = val, (n, c)
        if arg is None:
            raise ZeroElement("zero element has no dominant term")
        return arg

    def __add__(self, o):
        return AnnulusElement(self.field, self.s, self.terms + o.terms,
                              _lv_min(self.prec, o.prec))

    def __neg__(self):
        return AnnulusElement(self.field, self.s,
                              tuple((n, -c) for n, c in self.terms), self.prec)

    def __sub__(self, o):
        return self + (-o)

    def __mul__(self, o):
        out: Dict[int, object] = {}
        for n, a in self.terms:
            for m, b in o.terms:
                prod = a * b
                key = n + m
                out[key] = out[key] + prod if key in out else prod
        prec = _lv_min(self.prec + o.norm_exponent(),
                       o.prec + self.norm_exponent(),
                       self.prec + o.prec)
        return AnnulusElement(self.field, self.s, tuple(out.items()), prec)


def _lv_min(*vals: LogValue) -> LogValue:
    out = vals[0]
    for v in vals[1:]:
        if v < out:
            out = v
    return out


def annulus_element(field, s: LogValue, terms, prec: LogValue = INF):
    return AnnulusElement(field, s, tuple(terms), prec)


def annulus_invert(x: AnnulusElement, prec: LogValue) -> AnnulusElement:
    """y with v_s(x*y - 1) > prec, by inverting the dominant term exactly
    and summing the geometric series until the residual clears prec."""
    if x.is_zero:
        raise ZeroDivisorAtPrecision(
            "element indistinguishable from 0 at its precision")
    n0, c0 = x.dominant_term()
    v0 = x.term_value(n0, c0)
    if x.prec.is_finite and v0 >= x.prec:
        raise ZeroDivisorAtPrecision(
            "dominant term is below the stated precision")
    dom_inv = AnnulusElement(x.field, x.s, ((-n0, fields.invert(c0)),))
    rest = x + (-AnnulusElement(x.field, x.s, ((n0, c0),), x.prec))
    if rest.is_zero:
        return dom_inv  # monomial: exact inverse, residual INF
    # x = d*(1 + r) with v_s(r) > 0; y_K = d^-1 * sum_{i<K} (-r)^i
    r = dom_inv * rest
    vr = r.norm_exponent()
    steps = 1
    while vr.scale(steps) <= prec:
        steps += 1
    acc = AnnulusElement(x.field, x.s, ((0, fields.one(x.field)),))
    term = AnnulusElement(x.field, x.s, ((0, fields.one(x.field)),))
    for _ in range(1, steps):
        term = term * (-r)
        acc = acc + term
    return dom_inv * acc


# ---------------------------------------------------------------------------
# Multivariate model
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MultiVarElement:
    """Laurent polynomial in T_1..T_k over a coefficient field; exponent
    tuples are trimmed of trailing zeros."""

    field: fields.FieldDescriptor
    terms: Tuple[Tuple[Tuple[int, ...], object], ...]

    def __post_init__(self):
        merged: Dict[Tuple[int, ...], object] = {}
        for exps, c in self.terms:
            key = _trim(tuple(exps))
            merged[key] = merged[key] + c if key in merged else c
        cleaned = tuple(sorted(
            ((k, c) for k, c in merged.items() if not c.is_zero)))
        object.__setattr__(self, "terms", cleaned)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, o):
        return MultiVarElement(self.field, self.terms + o.terms)

    def __sub__(self, o):
        return self + (-o)

    def __neg__(self):
        return MultiVarElement(self.field,
                               tuple((e, -c) for e, c in self.terms))

    def __mul__(self, o):
        out: Dict[Tuple[int, ...], object] = {}
        for e1, c1 in self.terms:
            for e2, c2 in o.terms:
                key = _exp_add(e1, e2)
                prod = c1 * c2
                out[key] = out[key] + prod if key in out else prod
        return MultiVarElement(self.field, tuple(out.items()))


@dataclass(frozen=True)
class MultiVarRatio:
    num: MultiVarElement
    den: MultiVarElement

    def __post_init__(self):
        if self.den.is_zero:
            raise DivisionByZero("zero denominator")

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero


def _trim(exps: Tuple[int, ...]) -> Tuple[int, ...]:
    out = list(exps)
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def _exp_add(a, b):
    n = max(len(a), len(b))
    a = a + (0,) * (n - len(a))
    b = b + (0,) * (n - len(b))
    return _trim(tuple(x + y for x, y in zip(a, b)))


def multivar(field, terms) -> MultiVarElement:
    return MultiVarElement(field, tuple(terms))


def variable(field, k: int) -> MultiVarElement:
    """T_k (1-based)."""
    exps = (0,) * (k - 1) + (1,)
    return MultiVarElement(field, ((exps, fields.one(field)),))


def alpha_valuation(x) -> LogValue:
    """The weight-1 Gauss valuation: min over monomials of v(coef);
    for a ratio, the difference num - den.  This is the spectral lower
    bound for the weighted norm."""
    if isinstance(x, MultiVarRatio):
        if x.is_zero:
            raise ZeroElement("alpha of 0")
        return alpha_valuation(x.num) - alpha_valuation(x.den)
    if x.is_zero:
        raise ZeroElement("alpha of 0")
    return min(fields.valuation(c) for _, c in x.terms)


def _monomial_mins(x: MultiVarElement, width: int) -> Tuple[int, ...]:
    mins = [None] * width
    for exps, _ in x.terms:
        padded = exps + (0,) * (width - len(exps))
        for i in range(width):
            if mins[i] is None or padded[i] < mins[i]:
                mins[i] = padded[i]
    return tuple(0 if m is None else m for m in mins)


def _shift(x: MultiVarElement, delta: Tuple[int, ...]) -> MultiVarElement:
    return MultiVarElement(x.field, tuple(
        (_exp_add(e, delta), c) for e, c in x.terms))


def depth(x) -> int:
    """Smallest k with x in the span of T_1..T_k, after cancelling the
    common monomial factor between numerator and denominator."""
    if isinstance(x, MultiVarRatio):
        if x.is_zero:
            return depth(x.den) * 0
        width = max((len(e) for e, _ in x.num.terms + x.den.terms), default=0)
        mn = _monomial_mins(x.num, width)
        md = _monomial_mins(x.den, width)
        common = tuple(min(a, b) for a, b in zip(mn, md))
        num = _shift(x.num, tuple(-c for c in common))
        den = _shift(x.den, tuple(-c for c in common))
        return max(depth(num), depth(den))
    d = 0
    for exps, _ in x.terms:
        for i, e in enumerate(exps):
            if e != 0:
                d = max(d, i + 1)
    return d


def multivar_norm_data(x) -> Tuple[LogValue, int]:
    """(alpha valuation, depth) for a Laurent polynomial or ratio."""
    if x.is_zero:
        raise ZeroElement("norm data of 0")
    return alpha_valuation(x), depth(x)


def _as_polynomial(x) -> MultiVarElement:
    if isinstance(x, MultiVarElement):
        return x
    if len(x.den.terms) == 1:
        exps, c = x.den.terms[0]
        inv = fields.invert(c)
        return _shift(MultiVarElement(x.num.field, tuple(
            (e, cc * inv) for e, cc in x.num.terms)),
            tuple(-e for e in exps))
    from .errors import UnsupportedDenominator
    raise UnsupportedDenominator(
        "projection needs a Laurent polynomial or a monomial denominator")


def project(k: int, x) -> MultiVarElement:
    """Keep the monomials with exponent 0 in every T_j, j > k.

    Idempotent and linear over the depth-k subring, and the alpha
    valuation can only go up (norm down): it is a sub-minimum.
    """
    poly = _as_polynomial(x)
    kept = []
    for exps, c in poly.terms:
        if all(e == 0 for e in exps[k:]):
            kept.append((exps, c))
    return MultiVarElement(poly.field, tuple(kept))


def multivar_norm_upper(x, decomposition: Sequence[MultiVarElement]) -> LogValue:
    """Upper bound for the weighted norm from an explicit decomposition:
    with x = x_1 + ... + x_n the bound is max_i 2^{depth(x_i)} * |x_i|_alpha,
    returned as a log-value (norm <= 2^-result).  The trivial
    decomposition {x} gives 2^{depth(x)} * |x|_alpha."""
    poly = _as_polynomial(x)
    total = MultiVarElement(poly.field, ())
    for part in decomposition:
        total = total + part
    if total.terms != poly.terms:
        raise DecompositionMismatch("parts do not sum to the target")
    bound = None
    for part in decomposition:
        if part.is_zero:
            continue
        v = alpha_valuation(part) - lv(depth(part))
        if bound is None or v < bound:
            bound = v
    if bound is None:
        raise ZeroElement("decomposition of 0")
    return bound

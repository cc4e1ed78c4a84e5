"""Polynomials and formal rational functions over a valued field.

Rational functions are kept as unreduced numerator/denominator pairs:
gcd reduction would need coefficient division, which the Laurent fields
do not have, and every norm downstream is multiplicative, so reduction
never matters.  Equality is cross-multiplication equality.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Tuple

from . import fields
from .errors import DivisionByZero, ZeroPolynomial
from .logval import LogValue, lv


@dataclass(frozen=True)
class Poly:
    field: fields.FieldDescriptor
    coeffs: Tuple[object, ...]  # ascending powers of t, trailing nonzero

    def __post_init__(self):
        cs = list(self.coeffs)
        while cs and cs[-1].is_zero:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @staticmethod
    def make(field, coeffs: Sequence) -> "Poly":
        return Poly(field, tuple(coeffs))

    @staticmethod
    def zero(field) -> "Poly":
        return Poly(field, ())

    @staticmethod
    def constant(c) -> "Poly":
        return Poly(c.field, (c,))

    @staticmethod
    def variable(field) -> "Poly":
        return Poly(field, (fields.zero(field), fields.one(field)))

    @staticmethod
    def linear(field, lam) -> "Poly":
        """The factor t - lam."""
        return Poly(field, (-lam, fields.one(field)))

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lowest_index(self) -> int:
        for i, c in enumerate(self.coeffs):
            if not c.is_zero:
                return i
        return -1

    def coefficient(self, i: int):
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return fields.zero(self.field)

    def __add__(self, o: "Poly") -> "Poly":
        n = max(len(self.coeffs), len(o.coeffs))
        return Poly(self.field, tuple(
            self.coefficient(i) + o.coefficient(i) for i in range(n)))

    def __sub__(self, o: "Poly") -> "Poly":
        return self + (-o)

    def __neg__(self) -> "Poly":
        return Poly(self.field, tuple(-c for c in self.coeffs))

    def __mul__(self, o: "Poly") -> "Poly":
        if self.is_zero or o.is_zero:
            return Poly.zero(self.field)
        out = [fields.zero(self.field)] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero:
                continue
            for j, b in enumerate(o.coeffs):
                out[i + j] = out[i + j] + a * b
        return Poly(self.field, tuple(out))

    def scale(self, c) -> "Poly":
        return Poly(self.field, tuple(c * a for a in self.coeffs))

    def shift(self, k: int) -> "Poly":
        """Multiply by t^k (k >= 0)."""
        if self.is_zero:
            return self
        return Poly(self.field, (fields.zero(self.field),) * k + self.coeffs)

    def __str__(self):
        if self.is_zero:
            return "0"
        parts = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c.is_zero:
                continue
            cs = fields.element_to_text(c)
            if any(ch in cs for ch in "+ ") and i > 0:
                cs = f"({cs})"
            if i == 0:
                parts.append(cs)
            else:
                tpart = "t" if i == 1 else f"t^{i}"
                parts.append(tpart if cs == "1" else f"{cs}*{tpart}")
        return " + ".join(parts)


def recenter(P: Poly, lam) -> Poly:
    """Exact Taylor shift: returns Q with Q(t) = P(t + lam)."""
    field = P.field
    shifted = Poly.zero(field)
    t_plus = Poly(field, (lam, fields.one(field)))
    for c in reversed(P.coeffs):
        shifted = shifted * t_plus + Poly.constant(c)
    return shifted


@dataclass(frozen=True)
class RatFun:
    num: Poly
    den: Poly

    def __post_init__(self):
        if self.den.is_zero:
            raise DivisionByZero("zero denominator")

    @staticmethod
    def from_poly(P: Poly) -> "RatFun":
        return RatFun(P, Poly.constant(fields.one(P.field)))

    @staticmethod
    def constant(c) -> "RatFun":
        return RatFun.from_poly(Poly.constant(c))

    @staticmethod
    def variable(field) -> "RatFun":
        return RatFun.from_poly(Poly.variable(field))

    @property
    def field(self):
        return self.num.field

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    def __add__(self, o: "RatFun") -> "RatFun":
        return RatFun(self.num * o.den + o.num * self.den, self.den * o.den)

    def __sub__(self, o: "RatFun") -> "RatFun":
        return self + (-o)

    def __neg__(self) -> "RatFun":
        return RatFun(-self.num, self.den)

    def __mul__(self, o: "RatFun") -> "RatFun":
        return RatFun(self.num * o.num, self.den * o.den)

    def invert(self) -> "RatFun":
        if self.is_zero:
            raise DivisionByZero("inverse of the zero function")
        return RatFun(self.den, self.num)

    def power(self, k: int) -> "RatFun":
        if k < 0:
            return self.invert().power(-k)
        out = RatFun.constant(fields.one(self.field))
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def equals(self, o: "RatFun") -> bool:
        """Cross-multiplication equality, independent of representatives."""
        return (self.num * o.den) == (o.num * self.den)

    def as_constant(self):
        """The field element this represents, if visibly constant, else None."""
        if self.den.degree == 0 and self.num.degree <= 0:
            den_c = self.den.coeffs[0]
            try:
                inv = fields.invert(den_c)
            except Exception:
                return None
            if self.num.is_zero:
                return fields.zero(self.field)
            return self.num.coeffs[0] * inv
        return None

    def __str__(self):
        if self.den.degree == 0 and \
                fields.element_to_text(self.den.coeffs[0]) == "1":
            return str(self.num)
        return f"({self.num})/({self.den})"


def ratfun_combine(f: RatFun, g: Optional[RatFun], op: str) -> RatFun:
    if op == "add":
        return f + g
    if op == "mul":
        return f * g
    if op == "neg":
        return -f
    if op == "invert":
        return f.invert()
    raise ValueError(f"unknown op {op!r}")


# ---------------------------------------------------------------------------
# Newton polygons
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class NewtonPolygon:
    """Root valuations with multiplicity, increasing; the multiplicities
    sum to degree minus the order of vanishing at t = 0."""

    slopes: Tuple[Tuple[LogValue, int], ...]

    def multiset(self):
        out = []
        for s, m in self.slopes:
            out.extend([s] * m)
        return out


def newton_polygon(P: Poly) -> NewtonPolygon:
    """Lower convex hull of (i, v(a_i)); slopes are the root valuations."""
    if P.is_zero:
        raise ZeroPolynomial("Newton polygon of 0")
    pts = [(i, fields.valuation(c)) for i, c in enumerate(P.coeffs)
           if not c.is_zero]
    hull = []  # monotone chain, turning upward
    for x, y in pts:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            # keep if (x2,y2) is strictly below segment (x1,y1)-(x,y)
            cross = (y2 - y1).scale(x - x1) - (y - y1).scale(x2 - x1)
            if cross.sign() >= 0:
                hull.pop()
            else:
                break
        hull.append((x, y))
    slopes = []
    for (x1, y1), (x2, y2) in zip(hull, hull[1:]):
        root_val = (y1 - y2).scale(Fraction(1, x2 - x1))
        slopes.append((root_val, x2 - x1))
    slopes.reverse()  # hull slopes increase, so root valuations now increase
    return NewtonPolygon(tuple(slopes))

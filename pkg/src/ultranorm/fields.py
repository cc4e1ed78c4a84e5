"""Exact valued coefficient fields.

Two flavors are provided:

* ``padic:p`` -- the rationals with the p-adic valuation (value group Z,
  residue field F_p).  Elements are exact ``Fraction`` values.
* ``genlaurent:p`` / ``genlaurent:p:u`` -- generalized Laurent sums over
  F_p (or F_p(u)) in the uniformizer z, with exponents in Z[1/p].
  Elements are finite sums; the constructions only ever need finitely
  many terms, which keeps arithmetic exact and total.

The valuation is normalized so the uniformizer (p or z) has value 1,
i.e. |p| = |z| = 1/2 in norm scale.  General inversion of multi-term
Laurent sums is deliberately not provided here (finite sums are not
closed under it); truncated inversion lives with the annulus model.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple, Union

from . import fp as fpmod
from .errors import (DivisionByZero, NonMonomialInverse, NotAUnit, ParseError,
                     ValueNotInGroup)
from .logval import (INF, KIND_Z, KIND_Z_INV_P, LogValue, ValueGroup, lv)

FLAVOR_PADIC = "padic"
FLAVOR_LAURENT = "genlaurent"


@dataclass(frozen=True)
class FieldDescriptor:
    flavor: str
    p: int
    rational_coefs: bool = False  # Laurent only: coefficients in F_p(u)

    def __post_init__(self):
        if self.flavor not in (FLAVOR_PADIC, FLAVOR_LAURENT):
            raise ValueError(f"unknown field flavor {self.flavor!r}")
        if self.flavor == FLAVOR_PADIC and self.rational_coefs:
            raise ValueError("padic fields have no u-coefficients")
        if self.p < 2:
            raise ValueError("p must be a prime >= 2")

    @property
    def value_group(self) -> ValueGroup:
        if self.flavor == FLAVOR_PADIC:
            return ValueGroup(KIND_Z)
        return ValueGroup(KIND_Z_INV_P, self.p)

    @property
    def dense(self) -> bool:
        return self.value_group.dense

    @property
    def residue_kind(self) -> str:
        if self.flavor == FLAVOR_LAURENT and self.rational_coefs:
            return f"F_{self.p}(u)"
        return f"F_{self.p}"

    @property
    def residue_size(self) -> Optional[int]:
        """Number of residue-field elements, or None if infinite."""
        return None if self.rational_coefs else self.p

    def __str__(self) -> str:
        if self.flavor == FLAVOR_PADIC:
            return f"padic:{self.p}"
        return f"genlaurent:{self.p}:u" if self.rational_coefs else f"genlaurent:{self.p}"


def padic_field(p: int) -> FieldDescriptor:
    return FieldDescriptor(FLAVOR_PADIC, p)


def laurent_field(p: int, rational_coefs: bool = False) -> FieldDescriptor:
    return FieldDescriptor(FLAVOR_LAURENT, p, rational_coefs)


def parse_descriptor(text: str) -> FieldDescriptor:
    parts = text.strip().split(":")
    try:
        if parts[0] == FLAVOR_PADIC and len(parts) == 2:
            return padic_field(int(parts[1]))
        if parts[0] == FLAVOR_LAURENT and len(parts) in (2, 3):
            rational = len(parts) == 3 and parts[2] == "u"
            if len(parts) == 3 and not rational:
                raise ParseError(f"unknown coefficient tag {parts[2]!r}")
            return laurent_field(int(parts[1]), rational)
    except ValueError as exc:
        raise ParseError(f"malformed field descriptor {text!r}") from exc
    raise ParseError(f"malformed field descriptor {text!r}")


# ---------------------------------------------------------------------------
# Elements
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PadicElement:
    field: FieldDescriptor
    value: Fraction

    def __post_init__(self):
        object.__setattr__(self, "value", Fraction(self.value))

    @property
    def is_zero(self) -> bool:
        return self.value == 0

    def __add__(self, o):
        return PadicElement(self.field, self.value + o.value)

    def __sub__(self, o):
        return PadicElement(self.field, self.value - o.value)

    def __mul__(self, o):
        return PadicElement(self.field, self.value * o.value)

    def __neg__(self):
        return PadicElement(self.field, -self.value)

    def __str__(self):
        return str(self.value)


@dataclass(frozen=True)
class LaurentElement:
    """Finite sum of terms c_e * z^e, exponents in Z[1/p], ascending."""

    field: FieldDescriptor
    terms: Tuple[Tuple[Fraction, object], ...]

    def __post_init__(self):
        merged = {}
        for e, c in self.terms:
            e = Fraction(e)
            if e in merged:
                merged[e] = merged[e] + c
            else:
                merged[e] = c
        cleaned = tuple(sorted((e, c) for e, c in merged.items() if not c.is_zero))
        object.__setattr__(self, "terms", cleaned)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, o):
        return LaurentElement(self.field, self.terms + o.terms)

    def __sub__(self, o):
        return self + (-o)

    def __neg__(self):
        return LaurentElement(self.field, tuple((e, -c) for e, c in self.terms))

    def __mul__(self, o):
        out = {}
        for e1, c1 in self.terms:
            for e2, c2 in o.terms:
                e = e1 + e2
                prod = c1 * c2
                out[e] = out[e] + prod if e in out else prod
        return LaurentElement(self.field, tuple(out.items()))

    def __str__(self):
        return element_to_text(self)


FieldElement = Union[PadicElement, LaurentElement]


def _coef_one(field: FieldDescriptor):
    if field.rational_coefs:
        return fpmod.fp_rational_const(field.p, 1)
    return fpmod.fp_scalar(field.p, 1)


def _coef_from_int(field: FieldDescriptor, n: int):
    if field.rational_coefs:
        return fpmod.fp_rational_const(field.p, n)
    return fpmod.fp_scalar(field.p, n)


def zero(field: FieldDescriptor) -> FieldElement:
    if field.flavor == FLAVOR_PADIC:
        return PadicElement(field, Fraction(0))
    return LaurentElement(field, ())


def one(field: FieldDescriptor) -> FieldElement:
    return from_int(field, 1)


def from_int(field: FieldDescriptor, n: int) -> FieldElement:
    if field.flavor == FLAVOR_PADIC:
        return PadicElement(field, Fraction(n))
    c = _coef_from_int(field, n)
    return LaurentElement(field, ((Fraction(0), c),)) if not c.is_zero \
        else LaurentElement(field, ())


def from_rational(field: FieldDescriptor, q: Fraction) -> FieldElement:
    q = Fraction(q)
    if field.flavor == FLAVOR_PADIC:
        return PadicElement(field, q)
    if q.denominator % field.p == 0:
        raise DivisionByZero(f"1/{q.denominator} does not reduce mod {field.p}")
    num = _coef_from_int(field, q.numerator)
    den = _coef_from_int(field, q.denominator)
    c = num * den.inv()
    return LaurentElement(field, ((Fraction(0), c),)) if not c.is_zero \
        else LaurentElement(field, ())


def monomial(field: FieldDescriptor, v: Union[LogValue, Fraction, int],
             tag=None) -> FieldElement:
    """An element with exactly the given valuation.

    The optional tag selects the leading coefficient: an integer for any
    field, or a residue-field element for Laurent fields (used to force
    distinct leading residues).
    """
    if isinstance(v, LogValue):
        if v.infinite:
            raise ValueNotInGroup("no element has infinite valuation")
        if not field.value_group.contains(v):
            raise ValueNotInGroup(f"{v} not in {field.value_group}")
        vq = v.a
    else:
        vq = Fraction(v)
        if not field.value_group.contains(lv(vq)):
            raise ValueNotInGroup(f"{vq} not in {field.value_group}")
    if field.flavor == FLAVOR_PADIC:
        unit = Fraction(tag) if isinstance(tag, (int, Fraction)) and tag else Fraction(1)
        if padic_valuation(unit, field.p) != 0:
            raise ValueNotInGroup(f"tag {tag} is not a unit")
        return PadicElement(field, unit * Fraction(field.p) ** int(vq))
    if tag is None:
        c = _coef_one(field)
    elif isinstance(tag, int):
        c = _coef_from_int(field, tag)
    else:
        c = tag
    if c.is_zero:
        raise ValueNotInGroup("tag must be a nonzero coefficient")
    return LaurentElement(field, ((vq, c),))


def padic_valuation(q: Fraction, p: int) -> int:
    if q == 0:
        raise ZeroDivisionError("valuation of 0 is infinite")
    v = 0
    n = q.numerator
    while n % p == 0:
        n //= p
        v += 1
    d = q.denominator
    while d % p == 0:
        d //= p
        v -= 1
    return v


def valuation(x: FieldElement) -> LogValue:
    """v(x) in the value group; v(0) = INF, v(xy) = v(x) + v(y)."""
    if x.is_zero:
        return INF
    if isinstance(x, PadicElement):
        return lv(padic_valuation(x.value, x.field.p))
    return lv(x.terms[0][0])


def residue(x: FieldElement):
    """Image of a unit (valuation 0) in the residue field."""
    if valuation(x) != lv(0):
        raise NotAUnit(f"valuation of {x} is nonzero")
    if isinstance(x, PadicElement):
        p = x.field.p
        num = x.value.numerator % p
        den_inv = pow(x.value.denominator % p, -1, p)
        return fpmod.fp_scalar(p, num * den_inv)
    return x.terms[0][1]  # coefficient of z^0, the leading term of a unit


def invert(x: FieldElement) -> FieldElement:
    """Exact inverse; Laurent sums must be monomials."""
    if x.is_zero:
        raise DivisionByZero("inverse of 0")
    if isinstance(x, PadicElement):
        return PadicElement(x.field, 1 / x.value)
    if len(x.terms) != 1:
        raise NonMonomialInverse(
            "general Laurent inverses are infinite series; "
            "use the annulus model for truncated inversion")
    e, c = x.terms[0]
    return LaurentElement(x.field, ((-e, c.inv()),))


def add(x, y):
    return x + y


def mul(x, y):
    return x * y


def neg(x):
    return -x


def power(x: FieldElement, k: int) -> FieldElement:
    if k < 0:
        return power(invert(x), -k)
    out = one(x.field)
    base = x
    while k:
        if k & 1:
            out = out * base
        base = base * base
        k >>= 1
    return out


def field_arith(x: FieldElement, y: Optional[FieldElement], op: str) -> FieldElement:
    if op == "add":
        return x + y
    if op == "mul":
        return x * y
    if op == "neg":
        return -x
    if op == "invert":
        return invert(x)
    raise ValueError(f"unknown op {op!r}")


# ---------------------------------------------------------------------------
# Text form
# ---------------------------------------------------------------------------


def _coef_text(c) -> str:
    s = str(c)
    if any(ch in s for ch in "+-/ ") and not s.lstrip("-").isdigit():
        return f"({s})" if not (s.startswith("(") and s.endswith(")")) else s
    return s


def element_to_text(x: FieldElement) -> str:
    if isinstance(x, PadicElement):
        return str(x.value)
    if x.is_zero:
        return "0"
    parts = []
    for e, c in x.terms:
        cs = _coef_text(c)
        if e == 0:
            parts.append(cs)
            continue
        zpart = "z" if e == 1 else f"z^({e})"
        parts.append(zpart if cs == "1" else f"{cs}*{zpart}")
    return " + ".join(parts)


def parse_element(field: FieldDescriptor, text: str) -> FieldElement:
    """Parse the canonical text form, e.g. "z^(1/3) + 2*z^(5/9)"."""
    from .parse import parse_field_element
    return parse_field_element(field, text)

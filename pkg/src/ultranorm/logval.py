"""Exact arithmetic and comparison in the ordered group Q + Q*sqrt(2).

All norms and radii in this package live in base-2 log scale: a norm r is
stored as v = -log2(r), so multiplying norms becomes adding log-values and
every inequality reduces to an exact sign test on rational data.  The
value of 0 is the distinguished element ``INF``, which absorbs addition
and is greater than every finite value.

The irrational component exists solely to represent radii outside the
divisible closure of a rational value group; no other algebraic numbers
are supported.

Values are immutable and hashable, hence safe to share between threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Union

from .errors import ParseError, SubFromFinite

Rational = Union[int, Fraction]


def _frac(x: Rational) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


@dataclass(frozen=True)
class LogValue:
    """An element a + b*sqrt(2) of the value group, or the infinite value.

    Comparison agrees with the real-number order and is decided exactly:
    for mixed-sign (a, b) the order of a and -b*sqrt(2) follows from the
    sign of a^2 - 2*b^2, which is rational.
    """

    a: Fraction
    b: Fraction
    infinite: bool = False

    def __post_init__(self):
        object.__setattr__(self, "a", _frac(self.a))
        object.__setattr__(self, "b", _frac(self.b))
        if self.infinite and (self.a != 0 or self.b != 0):
            raise ValueError("the infinite value has no finite components")

    # -- queries ---------------------------------------------------------

    @property
    def is_finite(self) -> bool:
        return not self.infinite

    def sign(self) -> int:
        """Exact sign of the represented real number (0 only for zero)."""
        if self.infinite:
            return 1
        a, b = self.a, self.b
        if a == 0 and b == 0:
            return 0
        if a >= 0 and b >= 0:
            return 1
        if a <= 0 and b <= 0:
            return -1
        # mixed signs: |a| vs |b|*sqrt(2)
        d = a * a - 2 * b * b
        if a > 0:  # b < 0
            return 1 if d > 0 else (-1 if d < 0 else 0)
        return 1 if d < 0 else (-1 if d > 0 else 0)

    def is_rational(self) -> bool:
        return self.is_finite and self.b == 0

    # -- arithmetic ------------------------------------------------------

    def __add__(self, other: "LogValue") -> "LogValue":
        if self.infinite or other.infinite:
            return INF
        return LogValue(self.a + other.a, self.b + other.b)

    def __sub__(self, other: "LogValue") -> "LogValue":
        if other.infinite:
            if self.infinite:
                return INF
            raise SubFromFinite("cannot subtract the infinite value from a finite one")
        if self.infinite:
            return INF
        return LogValue(self.a - other.a, self.b - other.b)

    def __neg__(self) -> "LogValue":
        if self.infinite:
            raise SubFromFinite("the infinite value has no negation")
        return LogValue(-self.a, -self.b)

    def scale(self, q: Rational) -> "LogValue":
        """Multiply by an exact rational scalar (infinite stays infinite)."""
        q = _frac(q)
        if self.infinite:
            return INF
        return LogValue(self.a * q, self.b * q)

    def __mul__(self, q: Rational) -> "LogValue":
        return self.scale(q)

    __rmul__ = __mul__

    # -- order -----------------------------------------------------------

    def compare(self, other: "LogValue") -> int:
        if self.infinite and other.infinite:
            return 0
        if self.infinite:
            return 1
        if other.infinite:
            return -1
        return LogValue(self.a - other.a, self.b - other.b).sign()

    def __lt__(self, other: "LogValue") -> bool:
        return self.compare(other) < 0

    def __le__(self, other: "LogValue") -> bool:
        return self.compare(other) <= 0

    def __gt__(self, other: "LogValue") -> bool:
        return self.compare(other) > 0

    def __ge__(self, other: "LogValue") -> bool:
        return self.compare(other) >= 0

    # -- serialization ---------------------------------------------------

    def to_json(self):
        if self.infinite:
            return "inf"
        return {"a": str(self.a), "b": str(self.b)}

    @staticmethod
    def from_json(data) -> "LogValue":
        if data == "inf":
            return INF
        return LogValue(Fraction(data["a"]), Fraction(data["b"]))

    def __str__(self) -> str:
        if self.infinite:
            return "inf"
        if self.b == 0:
            return str(self.a)
        if self.b == 1:
            bpart = "sqrt2"
        elif self.b == -1:
            bpart = "-sqrt2"
        else:
            bpart = f"{self.b}*sqrt2"
        if self.a == 0:
            return bpart
        sign = "+" if self.b > 0 else "-"
        mag = bpart if self.b > 0 else (
            "sqrt2" if self.b == -1 else f"{-self.b}*sqrt2")
        return f"{self.a} {sign} {mag}"

    def __repr__(self) -> str:
        return f"LogValue({self})"


INF = LogValue(Fraction(0), Fraction(0), infinite=True)
ZERO = LogValue(Fraction(0), Fraction(0))


def lv(a: Rational, b: Rational = 0) -> LogValue:
    """Shorthand constructor for a finite log-value a + b*sqrt(2)."""
    return LogValue(_frac(a), _frac(b))


def compare(u: LogValue, v: LogValue) -> int:
    """Exact three-way comparison; the infinite value is the maximum."""
    return u.compare(v)


def parse_logvalue(text: str) -> LogValue:
    """Parse "inf", "3/4", "sqrt2", "1/2 + 3*sqrt2", "-sqrt2", etc."""
    s = text.strip().replace(" ", "")
    if s == "inf":
        return INF
    if not s:
        raise ParseError("empty log-value")
    # split into signed chunks
    chunks = []
    cur = ""
    for i, ch in enumerate(s):
        if ch in "+-" and i > 0 and s[i - 1] not in "+-*/(":
            chunks.append(cur)
            cur = ch
        else:
            cur += ch
    chunks.append(cur)
    a = Fraction(0)
    b = Fraction(0)
    for chunk in chunks:
        if not chunk:
            raise ParseError(f"malformed log-value: {text!r}")
        sign = 1
        body = chunk
        while body and body[0] in "+-":
            if body[0] == "-":
                sign = -sign
            body = body[1:]
        try:
            if body.endswith("sqrt2"):
                head = body[: -len("sqrt2")].rstrip("*")
                coeff = Fraction(head) if head else Fraction(1)
                b += sign * coeff
            else:
                a += sign * Fraction(body)
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"malformed log-value: {text!r}") from exc
    return LogValue(a, b)


# ---------------------------------------------------------------------------
# Value groups
# ---------------------------------------------------------------------------

KIND_Z = "Z"
KIND_Z_INV_P = "Z[1/p]"
KIND_Z_SQRT2 = "Z+Z*sqrt2"


@dataclass(frozen=True)
class ValueGroup:
    """The group of log-values of nonzero field elements.

    The uniformizer is normalized to value 1, so the kinds supported are
    Z (discrete), Z[1/p] (p-power-divided, dense), and Z + Z*sqrt(2)
    (dense, with an irrational direction).
    """

    kind: str
    p: Optional[int] = None

    def __post_init__(self):
        if self.kind not in (KIND_Z, KIND_Z_INV_P, KIND_Z_SQRT2):
            raise ValueError(f"unknown value group kind {self.kind!r}")
        if self.kind == KIND_Z_INV_P and (self.p is None or self.p < 2):
            raise ValueError("Z[1/p] requires a prime p")

    @property
    def dense(self) -> bool:
        return self.kind != KIND_Z

    def contains(self, v: LogValue) -> bool:
        if v.infinite:
            return False
        if self.kind == KIND_Z:
            return v.b == 0 and v.a.denominator == 1
        if self.kind == KIND_Z_INV_P:
            if v.b != 0:
                return False
            den = v.a.denominator
            while den % self.p == 0:
                den //= self.p
            return den == 1
        return v.a.denominator == 1 and v.b.denominator == 1

    def divisible_closure_contains(self, v: LogValue) -> bool:
        """Whether some positive integer multiple of v lies in the group."""
        if v.infinite:
            return False
        if self.kind in (KIND_Z, KIND_Z_INV_P):
            # closure of any rational subgroup of Q is all of Q
            return v.b == 0
        return True  # closure of Z + Z*sqrt2 is Q + Q*sqrt2

    def __str__(self) -> str:
        if self.kind == KIND_Z_INV_P:
            return f"Z[1/{self.p}]"
        return self.kind


def divisible_closure_member(v: LogValue, group: ValueGroup) -> bool:
    return group.divisible_closure_contains(v)


def group_point_between(group: ValueGroup, lo: Fraction, hi: Fraction) -> Fraction:
    """Some rational group element in [lo, hi]; ValueError if none exists.

    Only the rational kinds are supported; for Z + Z*sqrt2 the rational
    sub-lattice Z is searched.
    """
    lo, hi = _frac(lo), _frac(hi)
    if lo > hi:
        raise ValueError("empty interval")
    if group.kind in (KIND_Z, KIND_Z_SQRT2):
        from math import ceil
        k = ceil(lo)
        if Fraction(k) <= hi:
            return Fraction(k)
        raise ValueError(f"no integer point in [{lo}, {hi}]")
    p = group.p
    scale = 1
    # refine the p-power grid until a point must exist
    for _ in range(10_000):
        num_lo = -((-lo.numerator * scale) // lo.denominator)  # ceil(lo*scale)
        if Fraction(num_lo, scale) <= hi:
            return Fraction(num_lo, scale)
        scale *= p
    raise ValueError(f"no {group} point found in [{lo}, {hi}]")


def minimum(values: Iterable[LogValue]) -> LogValue:
    """Minimum of a nonempty iterable (INF for an all-infinite input)."""
    best = None
    for v in values:
        if best is None or v < best:
            best = v
    if best is None:
        raise ValueError("minimum of empty iterable")
    return best

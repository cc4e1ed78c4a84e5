"""Coefficient arithmetic: the prime field F_p and rational functions F_p(u).

Both element types expose the same small interface (+, -, *, inv,
is_zero) so the Laurent-field layer can stay agnostic about which
residue field it is working over.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Tuple

from .errors import DivisionByZero, ParseError


@dataclass(frozen=True)
class FpScalar:
    p: int
    r: int

    def __post_init__(self):
        object.__setattr__(self, "r", self.r % self.p)

    @property
    def is_zero(self) -> bool:
        return self.r == 0

    def __add__(self, o):
        return FpScalar(self.p, self.r + o.r)

    def __sub__(self, o):
        return FpScalar(self.p, self.r - o.r)

    def __mul__(self, o):
        return FpScalar(self.p, self.r * o.r)

    def __neg__(self):
        return FpScalar(self.p, -self.r)

    def inv(self):
        if self.is_zero:
            raise DivisionByZero("inverse of 0 in F_p")
        return FpScalar(self.p, pow(self.r, -1, self.p))

    def __str__(self):
        return str(self.r)


@dataclass(frozen=True)
class FpPoly:
    """Dense polynomial over F_p in the variable u, ascending coefficients."""

    p: int
    coeffs: Tuple[int, ...]

    def __post_init__(self):
        cs = [c % self.p for c in self.coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1  # -1 for the zero polynomial

    def __add__(self, o):
        n = max(len(self.coeffs), len(o.coeffs))
        a = list(self.coeffs) + [0] * (n - len(self.coeffs))
        b = list(o.coeffs) + [0] * (n - len(o.coeffs))
        return FpPoly(self.p, tuple(x + y for x, y in zip(a, b)))

    def __sub__(self, o):
        return self + (-o)

    def __neg__(self):
        return FpPoly(self.p, tuple(-c for c in self.coeffs))

    def __mul__(self, o):
        if self.is_zero or o.is_zero:
            return FpPoly(self.p, ())
        out = [0] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(o.coeffs):
                out[i + j] += a * b
        return FpPoly(self.p, tuple(out))

    def scale(self, c: int):
        return FpPoly(self.p, tuple(c * x for x in self.coeffs))

    def divmod(self, other: "FpPoly"):
        if other.is_zero:
            raise DivisionByZero("polynomial division by zero")
        q = [0] * max(0, self.degree - other.degree + 1)
        rem = list(self.coeffs)
        inv_lead = pow(other.coeffs[-1], -1, self.p)
        while len(rem) >= len(other.coeffs) and any(rem):
            while rem and rem[-1] % self.p == 0:
                rem.pop()
            if len(rem) < len(other.coeffs):
                break
            shift = len(rem) - len(other.coeffs)
            factor = (rem[-1] * inv_lead) % self.p
            q[shift] = factor
            for i, c in enumerate(other.coeffs):
                rem[shift + i] = (rem[shift + i] - factor * c) % self.p
        return FpPoly(self.p, tuple(q)), FpPoly(self.p, tuple(rem))

    def monic(self):
        if self.is_zero:
            return self
        return self.scale(pow(self.coeffs[-1], -1, self.p))

    def __str__(self):
        if self.is_zero:
            return "0"
        parts = []
        for e in range(self.degree, -1, -1):
            c = self.coeffs[e]
            if c == 0:
                continue
            if e == 0:
                parts.append(str(c))
            elif e == 1:
                parts.append("u" if c == 1 else f"{c}*u")
            else:
                parts.append(f"u^{e}" if c == 1 else f"{c}*u^{e}")
        return " + ".join(parts)


def fp_poly_gcd(a: FpPoly, b: FpPoly) -> FpPoly:
    while not b.is_zero:
        _, r = a.divmod(b)
        a, b = b, r
    return a.monic() if not a.is_zero else a


@dataclass(frozen=True)
class FpRational:
    """Reduced ratio of polynomials over F_p; denominator monic and nonzero."""

    p: int
    num: FpPoly
    den: FpPoly

    def __post_init__(self):
        if self.den.is_zero:
            raise DivisionByZero("zero denominator in F_p(u)")
        num, den = self.num, self.den
        if num.is_zero:
            den = FpPoly(self.p, (1,))
        else:
            g = fp_poly_gcd(num, den)
            if g.degree > 0:
                num, _ = num.divmod(g)
                den, _ = den.divmod(g)
            lead_inv = pow(den.coeffs[-1], -1, self.p)
            num = num.scale(lead_inv)
            den = den.scale(lead_inv)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    def __add__(self, o):
        return FpRational(self.p, self.num * o.den + o.num * self.den,
                          self.den * o.den)

    def __sub__(self, o):
        return self + (-o)

    def __neg__(self):
        return FpRational(self.p, -self.num, self.den)

    def __mul__(self, o):
        return FpRational(self.p, self.num * o.num, self.den * o.den)

    def inv(self):
        if self.is_zero:
            raise DivisionByZero("inverse of 0 in F_p(u)")
        return FpRational(self.p, self.den, self.num)

    def __str__(self):
        den_one = self.den.degree == 0 and self.den.coeffs == (1,)
        num_str = str(self.num)
        if den_one:
            return num_str
        num_wrapped = f"({num_str})" if " " in num_str else num_str
        den_str = str(self.den)
        den_wrapped = f"({den_str})" if " " in den_str else den_str
        return f"{num_wrapped}/{den_wrapped}"


def fp_scalar(p: int, n: int) -> FpScalar:
    return FpScalar(p, n)


def fp_rational_const(p: int, n: int) -> FpRational:
    return FpRational(p, FpPoly(p, (n,)), FpPoly(p, (1,)))


def fp_rational_u_power(p: int, k: int) -> FpRational:
    """The monomial u^k (k >= 0)."""
    if k < 0:
        raise ValueError("negative powers of u are built via inv()")
    return FpRational(p, FpPoly(p, (0,) * k + (1,)), FpPoly(p, (1,)))


def parse_fp_poly(p: int, text: str) -> FpPoly:
    """Parse forms like "u^2 + 2*u + 1"; ascending or descending order."""
    s = text.replace(" ", "")
    if not s:
        raise ParseError("empty polynomial")
    chunks = []
    cur = ""
    for i, ch in enumerate(s):
        if ch in "+-" and i > 0 and s[i - 1] not in "+-*^":
            chunks.append(cur)
            cur = ch
        else:
            cur += ch
    chunks.append(cur)
    coeffs = {}
    for chunk in chunks:
        sign = 1
        body = chunk
        while body and body[0] in "+-":
            if body[0] == "-":
                sign = -sign
            body = body[1:]
        if not body:
            raise ParseError(f"malformed polynomial {text!r}")
        if "u" in body:
            head, _, tail = body.partition("u")
            head = head.rstrip("*")
            c = int(head) if head else 1
            if tail.startswith("^"):
                e = int(tail[1:].strip("()"))
            elif tail:
                raise ParseError(f"malformed polynomial term {chunk!r}")
            else:
                e = 1
        else:
            try:
                c = int(body)
            except ValueError as exc:
                raise ParseError(f"malformed polynomial term {chunk!r}") from exc
            e = 0
        coeffs[e] = coeffs.get(e, 0) + sign * c
    deg = max(coeffs)
    return FpPoly(p, tuple(coeffs.get(e, 0) for e in range(deg + 1)))


def parse_fp_rational(p: int, text: str) -> FpRational:
    s = text.strip()
    if s.startswith("(") and ")/(" in s and s.endswith(")"):
        num_str, den_str = s[1:-1].split(")/(", 1)
        return FpRational(p, parse_fp_poly(p, num_str), parse_fp_poly(p, den_str))
    if "/" in s and "(" not in s:
        num_str, den_str = s.split("/", 1)
        return FpRational(p, parse_fp_poly(p, num_str), parse_fp_poly(p, den_str))
    return FpRational(p, parse_fp_poly(p, s.strip("()")), FpPoly(p, (1,)))

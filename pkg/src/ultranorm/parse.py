"""Small recursive-descent parser for element and rational-function text.

Grammar (whitespace ignored):

    expr   := term (('+' | '-') term)*
    term   := factor (('*' | '/') factor)*
    factor := '-'* atom ('^' exponent)?
    atom   := integer | 't' | 'z' | 'u' | '(' expr ')'
    exponent := integer | '(' '-'? integer ('/' integer)? ')'

Evaluation happens over a target algebra: plain field elements (no 't',
division only where exact) or formal rational functions in 't'.
"""

from __future__ import annotations

from fractions import Fraction
from typing import List, Optional, Tuple

from . import fields, fp
from .errors import DivisionByZero, NonMonomialInverse, ParseError


def _tokenize(text: str) -> List[Tuple[str, object]]:
    toks = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            toks.append(("num", int(text[i:j])))
            i = j
        elif ch.isalpha():
            j = i
            while j < len(text) and text[j].isalpha() and j - i < 8:
                j += 1
            toks.append(("name", text[i:j]))
            i = j
        elif ch in "+-*/^()":
            toks.append((ch, ch))
            i += 1
        else:
            raise ParseError(f"unexpected character {ch!r}")
    return toks


class _Parser:
    def __init__(self, tokens, algebra):
        self.toks = tokens
        self.pos = 0
        self.alg = algebra

    def peek(self):
        return self.toks[self.pos][0] if self.pos < len(self.toks) else None

    def take(self, kind=None):
        if self.pos >= len(self.toks):
            raise ParseError("unexpected end of input")
        k, v = self.toks[self.pos]
        if kind is not None and k != kind:
            raise ParseError(f"expected {kind!r}, found {k!r}")
        self.pos += 1
        return v

    def parse(self):
        out = self.expr()
        if self.pos != len(self.toks):
            raise ParseError("trailing input")
        return out

    def expr(self):
        val = self.term()
        while self.peek() in ("+", "-"):
            op = self.take()
            rhs = self.term()
            val = self.alg.add(val, rhs) if op == "+" else self.alg.sub(val, rhs)
        return val

    def term(self):
        val = self.factor()
        while self.peek() in ("*", "/"):
            op = self.take()
            rhs = self.factor()
            val = self.alg.mul(val, rhs) if op == "*" else self.alg.div(val, rhs)
        return val

    def factor(self):
        negations = 0
        while self.peek() == "-":
            self.take()
            negations += 1
        val = self.atom()
        if self.peek() == "^":
            self.take()
            val = self.alg.pow(val, self.exponent())
        if negations % 2:
            val = self.alg.neg(val)
        return val

    def atom(self):
        k = self.peek()
        if k == "num":
            return self.alg.from_int(self.take())
        if k == "name":
            return self.alg.var(self.take())
        if k == "(":
            self.take()
            val = self.expr()
            self.take(")")
            return val
        raise ParseError(f"unexpected token {k!r}")

    def exponent(self) -> Fraction:
        if self.peek() == "num":
            return Fraction(self.take())
        self.take("(")
        sign = 1
        while self.peek() == "-":
            self.take()
            sign = -sign
        num = self.take("num")
        den = 1
        if self.peek() == "/":
            self.take()
            den = self.take("num")
        self.take(")")
        return Fraction(sign * num, den)


class _FieldAlgebra:
    """Evaluates into exact field elements; no variable t."""

    def __init__(self, field: fields.FieldDescriptor):
        self.field = field

    def from_int(self, n):
        return fields.from_int(self.field, n)

    def var(self, name):
        if name == "z" and self.field.flavor == fields.FLAVOR_LAURENT:
            return fields.monomial(self.field, Fraction(1))
        if name == "u" and self.field.rational_coefs:
            c = fp.fp_rational_u_power(self.field.p, 1)
            return fields.LaurentElement(self.field, ((Fraction(0), c),))
        raise ParseError(f"unknown symbol {name!r} over {self.field}")

    def add(self, x, y):
        return x + y

    def sub(self, x, y):
        return x - y

    def mul(self, x, y):
        return x * y

    def div(self, x, y):
        return x * fields.invert(y)

    def neg(self, x):
        return -x

    def pow(self, x, q: Fraction):
        if q.denominator == 1:
            return fields.power(x, q.numerator)
        # fractional powers only for single-term Laurent monomials
        if isinstance(x, fields.LaurentElement) and len(x.terms) == 1:
            e, c = x.terms[0]
            if str(c) == "1":
                return fields.monomial(self.field, e * q)
        raise ParseError(f"fractional power of a non-monomial: ^{q}")


class _RatFunAlgebra:
    """Evaluates into formal rational functions in t over the field."""

    def __init__(self, field: fields.FieldDescriptor):
        from . import ratfun
        self.field = field
        self.rf = ratfun
        self.sub_alg = _FieldAlgebra(field)

    def from_int(self, n):
        return self.rf.RatFun.constant(fields.from_int(self.field, n))

    def var(self, name):
        if name in ("t", "T"):
            return self.rf.RatFun.variable(self.field)
        return self.rf.RatFun.constant(self.sub_alg.var(name))

    def add(self, x, y):
        return x + y

    def sub(self, x, y):
        return x - y

    def mul(self, x, y):
        return x * y

    def div(self, x, y):
        return x * y.invert()

    def neg(self, x):
        return -x

    def pow(self, x, q: Fraction):
        if q.denominator == 1:
            return x.power(q.numerator)
        const = x.as_constant()
        if const is not None:
            return self.rf.RatFun.constant(self.sub_alg.pow(const, q))
        raise ParseError(f"fractional power of a rational function: ^{q}")


def parse_field_element(field, text: str):
    elem = _Parser(_tokenize(text), _FieldAlgebra(field)).parse()
    return elem


def parse_ratfun(field, text: str):
    try:
        return _Parser(_tokenize(text), _RatFunAlgebra(field)).parse()
    except (DivisionByZero, NonMonomialInverse) as exc:
        raise ParseError(str(exc)) from exc

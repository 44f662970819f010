"""Expression mini-language for series, test functions and sequence generators.

The series language covers rational and decimal literals, the generator
symbol ``eta``, the binary operators ``+ - * / ^`` (with ``^`` restricted to
rational literal exponents), the calls ``st(...)``, ``arctan(...)``,
``classify(...)``, and parentheses.  Precedence is ``^`` over ``* /`` over
``+ -``, binaries of equal precedence associate to the left.

The same tokenizer and grammar parse test functions ("poly: 1 + 2*x - x^2",
"rat: (1)/(1+x^2)", "trig: 1 + cos(x)") and sequence generators
("(2*n^2+1)/(n^2)"); only the variable name and the call set differ.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple, Union

import mpmath
from mpmath import mpf

from .config import default_trunc
from .errors import EvalError, ExprSyntaxError, NonRationalExponentError
from .polyops import padd, pmul, pneg, pscale, psub, ptrim
from . import series as S
from .seqring import SeqNumber, seq_rational
from .testfunctions import TestFunction, polynomial, rational, trig_sum

_TOKEN_RE = re.compile(r"""
    (?P<ws>\s+)
  | (?P<number>(\d+\.\d*|\.\d+|\d+)([eE][+-]?\d+)?)
  | (?P<ident>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<op>[-+*/^(),])
""", re.VERBOSE)


@dataclass(frozen=True)
class Token:
    kind: str       # number | ident | op | end
    text: str
    pos: int


def tokenize(text: str) -> list:
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ExprSyntaxError(f"unexpected character {text[pos]!r}", pos)
        if m.lastgroup != "ws":
            out.append(Token(m.lastgroup, m.group(), pos))
        pos = m.end()
    out.append(Token("end", "", len(text)))
    return out


# -- AST ------------------------------------------------------------------------


@dataclass(frozen=True)
class Lit:
    value: Fraction
    pos: int


@dataclass(frozen=True)
class Dec:
    text: str
    pos: int


@dataclass(frozen=True)
class Var:
    name: str
    pos: int


@dataclass(frozen=True)
class Neg:
    operand: object
    pos: int


@dataclass(frozen=True)
class BinOp:
    op: str
    left: object
    right: object
    pos: int


@dataclass(frozen=True)
class Pow:
    base: object
    exponent: Fraction
    pos: int


@dataclass(frozen=True)
class Call:
    name: str
    arg: object
    pos: int


Expr = Union[Lit, Dec, Var, Neg, BinOp, Pow, Call]

_SERIES_CALLS = ("st", "arctan", "classify")


class _Parser:
    def __init__(self, tokens, variable: str, calls: Tuple[str, ...]):
        self.tokens = tokens
        self.i = 0
        self.variable = variable
        self.calls = calls

    def peek(self) -> Token:
        return self.tokens[self.i]

    def advance(self) -> Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect_op(self, text: str) -> Token:
        tok = self.peek()
        if tok.kind == "op" and tok.text == text:
            return self.advance()
        raise ExprSyntaxError(f"got {tok.text or 'end of input'!r}", tok.pos,
                              expected=(repr(text),))

    # expr := term (('+'|'-') term)*
    def expr(self):
        node = self.term()
        while self.peek().kind == "op" and self.peek().text in "+-":
            tok = self.advance()
            rhs = self.term()
            node = BinOp(tok.text, node, rhs, tok.pos)
        return node

    # term := unary (('*'|'/') unary)*
    def term(self):
        node = self.unary()
        while self.peek().kind == "op" and self.peek().text in "*/":
            tok = self.advance()
            rhs = self.unary()
            node = BinOp(tok.text, node, rhs, tok.pos)
        return node

    # unary := ('-'|'+') unary | power
    def unary(self):
        tok = self.peek()
        if tok.kind == "op" and tok.text in "+-":
            self.advance()
            inner = self.unary()
            return inner if tok.text == "+" else Neg(inner, tok.pos)
        return self.power()

    # power := atom ('^' rational_exponent)?
    def power(self):
        node = self.atom()
        tok = self.peek()
        if tok.kind == "op" and tok.text == "^":
            self.advance()
            exponent = self.rational_exponent()
            node = Pow(node, exponent, tok.pos)
        return node

    def rational_exponent(self) -> Fraction:
        sign = 1
        tok = self.peek()
        if tok.kind == "op" and tok.text == "-":
            self.advance()
            sign = -1
        tok = self.peek()
        if tok.kind == "op" and tok.text == "(":
            self.advance()
            inner = self.signed_int()
            den = 1
            if self.peek().kind == "op" and self.peek().text == "/":
                self.advance()
                den = self.signed_int()
            self.expect_op(")")
            if den == 0:
                raise ExprSyntaxError("zero denominator in exponent", tok.pos)
            return sign * Fraction(inner, den)
        if tok.kind == "number":
            if "." in tok.text or "e" in tok.text or "E" in tok.text:
                raise NonRationalExponentError("exponent must be rational", tok.pos)
            self.advance()
            return sign * Fraction(int(tok.text))
        raise NonRationalExponentError("exponent must be a rational literal", tok.pos)

    def signed_int(self) -> int:
        sign = 1
        tok = self.peek()
        if tok.kind == "op" and tok.text == "-":
            self.advance()
            sign = -1
        tok = self.peek()
        if tok.kind != "number" or "." in tok.text or "e" in tok.text.lower():
            raise NonRationalExponentError("exponent must be a rational literal",
                                           tok.pos)
        self.advance()
        return sign * int(tok.text)

    def atom(self):
        tok = self.peek()
        if tok.kind == "number":
            self.advance()
            if "." in tok.text or "e" in tok.text or "E" in tok.text:
                return Dec(tok.text, tok.pos)
            return Lit(Fraction(int(tok.text)), tok.pos)
        if tok.kind == "ident":
            self.advance()
            if self.peek().kind == "op" and self.peek().text == "(":
                if tok.text not in self.calls:
                    raise ExprSyntaxError(f"unknown function {tok.text!r}", tok.pos,
                                          expected=tuple(self.calls))
                self.advance()
                arg = self.expr()
                self.expect_op(")")
                return Call(tok.text, arg, tok.pos)
            if tok.text != self.variable:
                raise ExprSyntaxError(f"unknown symbol {tok.text!r}", tok.pos,
                                      expected=(self.variable,))
            return Var(tok.text, tok.pos)
        if tok.kind == "op" and tok.text == "(":
            self.advance()
            inner = self.expr()
            self.expect_op(")")
            return inner
        raise ExprSyntaxError(f"got {tok.text or 'end of input'!r}", tok.pos,
                              expected=("number", "eta", "("))


def _parse(text: str, variable: str, calls: Tuple[str, ...]):
    parser = _Parser(tokenize(text), variable, calls)
    node = parser.expr()
    tail = parser.peek()
    if tail.kind != "end":
        raise ExprSyntaxError(f"trailing input {tail.text!r}", tail.pos,
                              expected=("end of input",))
    return node


def parse_expr(text: str) -> Expr:
    """Parse a series-language expression to its AST."""
    return _parse(text, "eta", _SERIES_CALLS)


# -- series evaluation -------------------------------------------------------------


def eval_expr(node: Expr, trunc=None):
    """Evaluate an AST to a SeriesNumber (or a Classification at top level)."""
    trunc = Fraction(trunc) if trunc is not None else default_trunc()

    def go(n):
        if isinstance(n, Lit):
            return S.const(n.value, trunc)
        if isinstance(n, Dec):
            return S.const(mpf(n.text), trunc)
        if isinstance(n, Var):
            return S.eta(1, trunc)
        if isinstance(n, Neg):
            return -_series_only(go(n.operand), n.pos)
        if isinstance(n, Pow):
            base = _series_only(go(n.base), n.pos)
            try:
                return S.power(base, n.exponent)
            except ValueError as exc:
                raise EvalError(str(exc)) from None
        if isinstance(n, BinOp):
            left = _series_only(go(n.left), n.pos)
            right = _series_only(go(n.right), n.pos)
            if n.op == "+":
                return S.add(left, right)
            if n.op == "-":
                return S.sub(left, right)
            if n.op == "*":
                return S.mul(left, right)
            return S.divide(left, right)
        if isinstance(n, Call):
            inner = _series_only(go(n.arg), n.pos)
            if n.name == "st":
                return S.const(S.standard_part(inner), trunc)
            if n.name == "arctan":
                return S.arctan_ext(inner)
            return S.classify(inner)
        raise EvalError(f"unexpected node {n!r}")

    return go(node)


def _series_only(value, pos: int):
    if isinstance(value, S.Classification):
        raise EvalError(f"classification used as a value at offset {pos}")
    return value


def evaluate(text: str, trunc=None):
    return eval_expr(parse_expr(text), trunc)


format_series = S.to_text


# -- polynomial / rational / trig algebras ----------------------------------------


class _PolyAlgebra:
    """Evaluate an AST into dense mpf polynomial coefficients."""

    calls: Tuple[str, ...] = ()

    def __init__(self, variable: str):
        self.variable = variable

    def literal(self, value):
        return (S._coeff(value),) if value != 0 else ()

    def var(self):
        return (mpf(0), mpf(1))

    def add(self, a, b):
        return padd(a, b)

    def sub(self, a, b):
        return psub(a, b)

    def neg(self, a):
        return pneg(a)

    def mul(self, a, b):
        return pmul(a, b)

    def div(self, a, b):
        if len(ptrim(b)) > 1:
            raise EvalError("polynomial division is constant-only; use 'rat:'")
        if not ptrim(b):
            raise ZeroDivisionError("division by zero")
        return pscale(a, 1 / b[0])

    def pow(self, a, exponent: Fraction):
        if exponent.denominator != 1 or exponent < 0:
            raise EvalError("polynomial exponents must be nonnegative integers")
        out = self.literal(1)
        for _ in range(exponent.numerator):
            out = pmul(out, a)
        return out

    def call(self, name, arg):
        raise EvalError(f"no function calls in polynomial expressions: {name}")


class _RatAlgebra(_PolyAlgebra):
    """Pairs (num, den) of dense polynomials."""

    def literal(self, value):
        return (super().literal(value), (mpf(1),))

    def var(self):
        return (super().var(), (mpf(1),))

    def add(self, a, b):
        return (padd(pmul(a[0], b[1]), pmul(b[0], a[1])), pmul(a[1], b[1]))

    def sub(self, a, b):
        return (psub(pmul(a[0], b[1]), pmul(b[0], a[1])), pmul(a[1], b[1]))

    def neg(self, a):
        return (pneg(a[0]), a[1])

    def mul(self, a, b):
        return (pmul(a[0], b[0]), pmul(a[1], b[1]))

    def div(self, a, b):
        if not ptrim(b[0]):
            raise ZeroDivisionError("division by zero")
        return (pmul(a[0], b[1]), pmul(a[1], b[0]))

    def pow(self, a, exponent: Fraction):
        if exponent.denominator != 1:
            raise EvalError("rational exponents must be integers")
        n = exponent.numerator
        base = a if n >= 0 else self.div(self.literal(1), a)
        out = self.literal(1)
        for _ in range(abs(n)):
            out = self.mul(out, base)
        return out


class _TrigAlgebra:
    """Finite sums a0 + sum a_k cos(kx) + b_k sin(kx); linear operations only."""

    calls = ("cos", "sin")

    def __init__(self, variable: str):
        self.variable = variable

    def literal(self, value):
        return {"const": S._coeff(value), "cos": {}, "sin": {}}

    def var(self):
        raise EvalError("the bare variable may only appear inside cos(...)/sin(...)")

    def add(self, a, b):
        out = self.literal(0)
        out["const"] = a["const"] + b["const"]
        for key in ("cos", "sin"):
            merged = dict(a[key])
            for k, v in b[key].items():
                merged[k] = merged.get(k, mpf(0)) + v
            out[key] = merged
        return out

    def neg(self, a):
        return {"const": -a["const"],
                "cos": {k: -v for k, v in a["cos"].items()},
                "sin": {k: -v for k, v in a["sin"].items()}}

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def _is_const(self, a):
        return not a["cos"] and not a["sin"]

    def mul(self, a, b):
        if self._is_const(a):
            c = a["const"]
            return {"const": c * b["const"],
                    "cos": {k: c * v for k, v in b["cos"].items()},
                    "sin": {k: c * v for k, v in b["sin"].items()}}
        if self._is_const(b):
            return self.mul(b, a)
        raise EvalError("products of trig terms are not supported")

    def div(self, a, b):
        if not self._is_const(b):
            raise EvalError("division by trig terms is not supported")
        if b["const"] == 0:
            raise ZeroDivisionError("division by zero")
        inv = self.literal(1 / b["const"])
        return self.mul(inv, a)

    def pow(self, a, exponent: Fraction):
        if exponent.denominator != 1 or exponent < 0:
            raise EvalError("trig exponents must be nonnegative integers")
        out = self.literal(1)
        for _ in range(exponent.numerator):
            out = self.mul(out, a)
        return out

    def call(self, name, arg):
        # arg must be k*x for a positive integer k
        raise EvalError("internal: trig calls handled in the evaluator")


def _eval_in_algebra(node, algebra):
    if isinstance(node, Lit):
        return algebra.literal(node.value)
    if isinstance(node, Dec):
        return algebra.literal(mpf(node.text))
    if isinstance(node, Var):
        return algebra.var()
    if isinstance(node, Neg):
        return algebra.neg(_eval_in_algebra(node.operand, algebra))
    if isinstance(node, Pow):
        return algebra.pow(_eval_in_algebra(node.base, algebra), node.exponent)
    if isinstance(node, BinOp):
        left = _eval_in_algebra(node.left, algebra)
        right = _eval_in_algebra(node.right, algebra)
        return {"+": algebra.add, "-": algebra.sub,
                "*": algebra.mul, "/": algebra.div}[node.op](left, right)
    if isinstance(node, Call):
        if isinstance(algebra, _TrigAlgebra):
            k = _linear_frequency(node.arg, algebra.variable)
            out = algebra.literal(0)
            out[node.name][k] = mpf(1)
            return out
        return algebra.call(node.name, _eval_in_algebra(node.arg, algebra))
    raise EvalError(f"unexpected node {node!r}")


def _linear_frequency(node, variable: str) -> int:
    """Extract k from an argument of the form x, k*x or x*k."""
    if isinstance(node, Var):
        return 1
    if isinstance(node, BinOp) and node.op == "*":
        sides = (node.left, node.right)
        for lit, var in (sides, sides[::-1]):
            if isinstance(lit, Lit) and isinstance(var, Var):
                k = lit.value
                if k.denominator == 1 and k > 0:
                    return int(k)
    raise EvalError("trig arguments must be k*x with a positive integer k")


# -- public text-format parsers --------------------------------------------------


def parse_testfunction(text: str) -> TestFunction:
    """Parse "poly: ...", "rat: ...", or "trig: ..." into a TestFunction."""
    head, sep, body = text.partition(":")
    kind = head.strip().lower()
    if not sep or kind not in ("poly", "rat", "trig"):
        raise ExprSyntaxError("expected a 'poly:', 'rat:' or 'trig:' prefix", 0,
                              expected=("poly:", "rat:", "trig:"))
    body = body.strip()
    if kind == "poly":
        node = _parse(body, "x", ())
        coeffs = _eval_in_algebra(node, _PolyAlgebra("x"))
        return polynomial(coeffs, label=text.strip())
    if kind == "rat":
        node = _parse(body, "x", ())
        num, den = _eval_in_algebra(node, _RatAlgebra("x"))
        return rational(num, den, label=text.strip())
    node = _parse(body, "x", ("cos", "sin"))
    val = _eval_in_algebra(node, _TrigAlgebra("x"))
    cos_terms = tuple(sorted(val["cos"].items()))
    sin_terms = tuple(sorted(val["sin"].items()))
    return trig_sum(val["const"], cos_terms, sin_terms, label=text.strip())


def parse_seq_generator(text: str) -> SeqNumber:
    """Parse a rational function of n, e.g. "(2*n^2+1)/(n^2)"."""
    node = _parse(text, "n", ())

    class _FracRat(_RatAlgebra):
        def literal(self, value):
            if isinstance(value, mpf):
                raise EvalError("sequence generators take integer coefficients")
            return ((Fraction(value),) if value != 0 else (), (Fraction(1),))

        def var(self):
            return ((Fraction(0), Fraction(1)), (Fraction(1),))

    num, den = _eval_in_algebra(node, _FracRat("n"))
    return seq_rational(num, den)

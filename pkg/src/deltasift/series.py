"""Arithmetic for truncated power series in one infinitesimal generator.

A :class:`SeriesNumber` is a finite sum ``sum_q c_q * eta^q`` with strictly
increasing exact rational exponents and high-precision coefficients, plus a
truncation order ``T``: terms with exponent >= T are unknown.  The generator
``eta`` stands for a positive infinitesimal, so the sign of the leading
exponent classifies a number as infinitesimal (> 0), appreciable (= 0) or
infinite (< 0), and the coefficient of ``eta^0`` is the standard part of any
finite number.

Coefficients may be complex; order comparisons are defined only when every
coefficient is real within the configured tolerance.  Every operation keeps
the tightest truncation order it can guarantee.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Callable, Iterable, Optional, Sequence, Tuple, Union

import mpmath
from mpmath import mpc, mpf

from .config import default_trunc, tau_c
from .errors import (
    NoSolutionError,
    NotFiniteError,
    NotOrderedError,
    SeedDomainError,
)

Scalar = Union[int, float, str, Fraction, mpf, mpc, complex]

_MAX_GEOMETRIC_TERMS = 10_000


def _coeff(value: Scalar):
    """Coerce a scalar to an mpmath number at working precision."""
    if isinstance(value, (mpf, mpc)):
        return value
    if isinstance(value, Fraction):
        return mpf(value.numerator) / value.denominator
    if isinstance(value, (int, float, str)):
        return mpf(value)
    if isinstance(value, complex):
        return mpc(value.real, value.imag)
    try:
        return mpmath.mpmathify(value)  # lazy constants like mpmath.pi
    except (TypeError, ValueError):
        raise TypeError(f"cannot use {type(value).__name__} as a coefficient") from None


def _mag(c) -> mpf:
    if isinstance(c, mpc):
        return max(abs(c.real), abs(c.imag))
    return abs(c)


class Classification(Enum):
    ZERO = "zero"
    INFINITESIMAL = "infinitesimal"
    APPRECIABLE = "appreciable"
    INFINITE = "infinite"

    def __str__(self) -> str:
        return self.value


class Comparison(Enum):
    LESS = -1
    EQUAL = 0
    GREATER = 1

    def __str__(self) -> str:
        return self.name.lower()


@dataclass(frozen=True)
class SeriesNumber:
    """Truncated power series in the infinitesimal generator eta.

    ``terms`` is a tuple of (exponent, coefficient) pairs with strictly
    increasing Fraction exponents, all below ``trunc``; no stored coefficient
    is zero within tolerance.  Instances are immutable; build them with
    :func:`eta`, :func:`const` and :func:`series` rather than directly.
    """

    terms: Tuple[Tuple[Fraction, object], ...]
    trunc: Fraction

    def __post_init__(self):
        last = None
        for q, _ in self.terms:
            if q >= self.trunc:
                raise ValueError("term exponent at or beyond truncation order")
            if last is not None and q <= last:
                raise ValueError("term exponents must strictly increase")
            last = q

    # -- structure ---------------------------------------------------------

    @property
    def lead_exponent(self) -> Optional[Fraction]:
        return self.terms[0][0] if self.terms else None

    @property
    def lead_coefficient(self):
        if not self.terms:
            raise ValueError("zero series has no leading coefficient")
        return self.terms[0][1]

    def _lead_or_trunc(self) -> Fraction:
        return self.terms[0][0] if self.terms else self.trunc

    def scale(self) -> mpf:
        s = mpf(0)
        for _, c in self.terms:
            m = _mag(c)
            if m > s:
                s = m
        return s

    def is_real(self) -> bool:
        tol = tau_c() * max(self.scale(), mpf(1))
        return all(not isinstance(c, mpc) or abs(c.imag) <= tol for _, c in self.terms)

    def coefficient(self, exponent) -> object:
        exponent = Fraction(exponent)
        for q, c in self.terms:
            if q == exponent:
                return c
        return mpf(0)

    # -- operators ---------------------------------------------------------

    def __add__(self, other):
        return add(self, _coerce(other, self.trunc))

    __radd__ = __add__

    def __neg__(self):
        return _make(((q, -c) for q, c in self.terms), self.trunc)

    def __sub__(self, other):
        return sub(self, _coerce(other, self.trunc))

    def __rsub__(self, other):
        return sub(_coerce(other, self.trunc), self)

    def __mul__(self, other):
        return mul(self, _coerce(other, self.trunc))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return divide(self, _coerce(other, self.trunc))

    def __rtruediv__(self, other):
        return divide(_coerce(other, self.trunc), self)

    def __pow__(self, exponent):
        return power(self, exponent)

    def __lt__(self, other):
        return compare(self, _coerce(other, self.trunc)) is Comparison.LESS

    def __le__(self, other):
        return compare(self, _coerce(other, self.trunc)) is not Comparison.GREATER

    def __gt__(self, other):
        return compare(self, _coerce(other, self.trunc)) is Comparison.GREATER

    def __ge__(self, other):
        return compare(self, _coerce(other, self.trunc)) is not Comparison.LESS

    def __eq__(self, other):
        if not isinstance(other, (SeriesNumber, int, float, Fraction, mpf, mpc, complex)):
            return NotImplemented
        return not sub(self, _coerce(other, self.trunc)).terms

    def __hash__(self):
        return hash((self.terms, self.trunc))

    def __repr__(self) -> str:
        try:
            body = to_text(self)
        except ValueError:
            body = " + ".join(f"({c})*eta^({q})" for q, c in self.terms) or "0"
        return f"SeriesNumber({body!r}, trunc={self.trunc})"


# -- construction -----------------------------------------------------------


def _make(pairs: Iterable[Tuple[Fraction, object]], trunc: Fraction,
          scale_floor=0) -> SeriesNumber:
    """Normalize (merge, sort, drop) term pairs into a SeriesNumber.

    ``scale_floor`` feeds the relative zero-tolerance: coefficients at or
    below tau_c * max(scale_floor, own scale) count as zero.  Additions pass
    the operand scales here so that cancellation residue is dropped instead
    of being mistaken for a genuine small term.
    """
    acc: dict = {}
    for q, c in pairs:
        if q in acc:
            acc[q] = acc[q] + c
        else:
            acc[q] = c
    scale = mpf(scale_floor) if not isinstance(scale_floor, (mpf, mpc)) else abs(scale_floor)
    for c in acc.values():
        m = _mag(c)
        if m > scale:
            scale = m
    tol = tau_c() * scale
    terms = []
    for q in sorted(acc):
        if q >= trunc:
            continue
        c = acc[q]
        if isinstance(c, mpc) and abs(c.imag) <= tol:
            c = c.real
        if _mag(c) <= tol:
            continue
        terms.append((q, c))
    return SeriesNumber(tuple(terms), trunc)


def series(pairs: Iterable[Tuple[object, Scalar]], trunc=None) -> SeriesNumber:
    """Build a SeriesNumber from (exponent, coefficient) pairs."""
    t = Fraction(trunc) if trunc is not None else default_trunc()
    return _make(((Fraction(q), _coeff(c)) for q, c in pairs), t)


def const(value: Scalar, trunc=None) -> SeriesNumber:
    """Embed a scalar as the eta^0 term."""
    return series([(0, value)], trunc)


def eta(exponent=1, trunc=None) -> SeriesNumber:
    """The monomial eta^q for a rational q."""
    return series([(Fraction(exponent), 1)], trunc)


def zero(trunc=None) -> SeriesNumber:
    return series([], trunc)


def _coerce(value, trunc) -> SeriesNumber:
    if isinstance(value, SeriesNumber):
        return value
    return const(value, trunc)


# -- ring and field operations ----------------------------------------------


def add(a: SeriesNumber, b: SeriesNumber) -> SeriesNumber:
    """Termwise sum; truncation order is the coarser of the two."""
    trunc = min(a.trunc, b.trunc)
    floor = max(a.scale(), b.scale())
    return _make(list(a.terms) + list(b.terms), trunc, scale_floor=floor)


def sub(a: SeriesNumber, b: SeriesNumber) -> SeriesNumber:
    return add(a, -b)


def mul(a: SeriesNumber, b: SeriesNumber) -> SeriesNumber:
    """Cauchy product, truncated to min(T_a + lead_b, T_b + lead_a)."""
    trunc = min(a.trunc + b._lead_or_trunc(), b.trunc + a._lead_or_trunc())
    floor = a.scale() * b.scale()
    pairs = []
    for qa, ca in a.terms:
        for qb, cb in b.terms:
            q = qa + qb
            if q < trunc:
                pairs.append((q, ca * cb))
    return _make(pairs, trunc, scale_floor=floor)


def _scale_by(a: SeriesNumber, c) -> SeriesNumber:
    c = _coeff(c)
    return _make(((q, coef * c) for q, coef in a.terms), a.trunc)


def invert(a: SeriesNumber) -> SeriesNumber:
    """Multiplicative inverse by geometric expansion around the leading term.

    ``mul(a, invert(a))`` equals 1 up to the computed truncation order.
    Raises ZeroDivisionError for the zero series.
    """
    if not a.terms:
        raise ZeroDivisionError("cannot invert a zero series")
    q0, c0 = a.terms[0]
    rel_trunc = a.trunc - q0
    # u = a / (c0 eta^q0) - 1, infinitesimal relative remainder
    u = _make(((q - q0, c / c0) for q, c in a.terms[1:]), rel_trunc)
    if not u.terms:
        out = series([(-q0, 1 / _coeff(c0))], a.trunc - 2 * q0)
        return out
    ell = u.terms[0][0]
    rounds = math.ceil(rel_trunc / ell)
    if rounds > _MAX_GEOMETRIC_TERMS:
        raise ValueError("truncation order too deep for geometric inversion")
    one = const(1, rel_trunc)
    acc = one
    for _ in range(rounds):
        acc = sub(one, mul(u, acc))
    inv_c0 = 1 / _coeff(c0)
    return _make(((q - q0, c * inv_c0) for q, c in acc.terms), a.trunc - 2 * q0)


def divide(a: SeriesNumber, b: SeriesNumber) -> SeriesNumber:
    return mul(a, invert(b))


def power(a: SeriesNumber, exponent) -> SeriesNumber:
    """Integer powers of any series; rational powers of monomials."""
    exponent = Fraction(exponent)
    if exponent.denominator == 1:
        n = exponent.numerator
        if n == 0:
            return const(1, a.trunc)
        base = a if n > 0 else invert(a)
        out = base
        for _ in range(abs(n) - 1):
            out = mul(out, base)
        return out
    if len(a.terms) != 1:
        raise ValueError("fractional powers are defined for monomials only")
    q, c = a.terms[0]
    if isinstance(c, mpc) or c < 0:
        raise ValueError("fractional power of a non-positive coefficient")
    new_q = q * exponent
    return series([(new_q, mpmath.power(c, mpf(exponent.numerator) / exponent.denominator))],
                  a.trunc - q + new_q if q != 0 else a.trunc)


# -- order, classification, standard part ------------------------------------


def compare(a: SeriesNumber, b: SeriesNumber) -> Comparison:
    """Sign of the leading coefficient of a - b; equality is up to tau_c."""
    if not a.is_real() or not b.is_real():
        raise NotOrderedError("order comparison needs real coefficients")
    diff = sub(a, b)
    if not diff.terms:
        return Comparison.EQUAL
    lead = diff.terms[0][1]
    lead = lead.real if isinstance(lead, mpc) else lead
    return Comparison.GREATER if lead > 0 else Comparison.LESS


def classify(a: SeriesNumber) -> Classification:
    if not a.terms:
        return Classification.ZERO
    q = a.terms[0][0]
    if q > 0:
        return Classification.INFINITESIMAL
    if q == 0:
        return Classification.APPRECIABLE
    return Classification.INFINITE


def is_finite(a: SeriesNumber) -> bool:
    return classify(a) is not Classification.INFINITE


def standard_part(a: SeriesNumber):
    """Coefficient of eta^0: the unique real (or complex) at distance o(1).

    Raises NotFiniteError for infinite input.
    """
    if classify(a) is Classification.INFINITE:
        raise NotFiniteError("standard part of an infinite number")
    return a.coefficient(0)


# -- analytic extension -------------------------------------------------------


@dataclass(frozen=True)
class AnalyticSeed:
    """A named analytic function given by its Taylor coefficient rule.

    ``rule(k, x0)`` returns the k-th Taylor coefficient at the expansion
    point x0 (that is, f^(k)(x0) / k!).  ``terminates_after`` marks
    polynomial seeds whose coefficients vanish beyond a fixed degree, which
    keeps their composition exact.  ``domain_check`` may raise
    SeedDomainError for expansion points outside the function's domain.
    """

    name: str
    rule: Callable[[int, object], object]
    domain_check: Optional[Callable[[object], None]] = None
    terminates_after: Optional[int] = None

    def coefficients(self, upto: int, x0) -> list:
        if self.domain_check is not None:
            self.domain_check(x0)
        stop = upto
        if self.terminates_after is not None:
            stop = min(stop, self.terminates_after)
        return [self.rule(k, x0) for k in range(stop + 1)]


def _exp_rule(k: int, x0):
    return mpmath.exp(x0) / mpmath.factorial(k)


def _sin_rule(k: int, x0):
    cycle = (mpmath.sin(x0), mpmath.cos(x0), -mpmath.sin(x0), -mpmath.cos(x0))
    return cycle[k % 4] / mpmath.factorial(k)


def _cos_rule(k: int, x0):
    cycle = (mpmath.cos(x0), -mpmath.sin(x0), -mpmath.cos(x0), mpmath.sin(x0))
    return cycle[k % 4] / mpmath.factorial(k)


def _log_domain(x0):
    if isinstance(x0, mpc) or x0 <= 0:
        raise SeedDomainError("log expands only about positive real points")


def _log_rule(k: int, x0):
    if k == 0:
        return mpmath.log(x0)
    return (-1) ** (k - 1) / (mpf(k) * mpmath.power(x0, k))


def _atan_domain(x0):
    if _mag(1 + x0 * x0) <= tau_c():
        raise SeedDomainError("arctan is singular where 1 + x^2 vanishes")


def _atan_rule(k: int, x0):
    # d/dx arctan = 1/(1 + x^2); expand the reciprocal quadratic as a power
    # series in the shift and integrate termwise.
    if k == 0:
        return mpmath.atan(x0)
    q = series([(0, 1 + x0 * x0), (1, 2 * x0), (2, 1)], trunc=k + 2)
    recip = invert(q)
    return recip.coefficient(k - 1) / k


EXP = AnalyticSeed("exp", _exp_rule)
SIN = AnalyticSeed("sin", _sin_rule)
COS = AnalyticSeed("cos", _cos_rule)
LOG = AnalyticSeed("log", _log_rule, domain_check=_log_domain)
ATAN = AnalyticSeed("arctan", _atan_rule, domain_check=_atan_domain)


def polynomial_seed(coeffs: Sequence[Scalar], name: str = "poly") -> AnalyticSeed:
    """Seed for a polynomial given by its plain coefficients, low degree first."""
    plain = tuple(_coeff(c) for c in coeffs)

    def rule(k: int, x0):
        total = mpf(0)
        for j in range(k, len(plain)):
            total += plain[j] * mpmath.binomial(j, k) * mpmath.power(x0, j - k)
        return total

    return AnalyticSeed(name, rule, terminates_after=max(len(plain) - 1, 0))


def compose_analytic(seed: AnalyticSeed, a: SeriesNumber) -> SeriesNumber:
    """Taylor expansion of the seed about st(a), composed with a - st(a).

    Exact for polynomial seeds; otherwise truncated at the series order.
    Raises NotFiniteError for infinite arguments.
    """
    if classify(a) is Classification.INFINITE:
        raise NotFiniteError(f"cannot compose {seed.name} at an infinite argument")
    x0 = standard_part(a)
    d = sub(a, const(x0, a.trunc))
    if not d.terms:
        coeffs = seed.coefficients(0, x0)
        return const(coeffs[0], a.trunc)
    ell = d.terms[0][0]
    rounds = math.ceil(a.trunc / ell)
    coeffs = seed.coefficients(rounds, x0)
    acc = const(coeffs[-1], a.trunc)
    for c in reversed(coeffs[:-1]):
        acc = add(mul(acc, d), const(c, a.trunc))
    if seed.terminates_after is not None and seed.terminates_after < rounds + 1:
        return acc
    # Taylor cutoff: the first omitted term enters at d^(rounds+1).
    cutoff = (rounds + 1) * ell
    if cutoff < acc.trunc:
        acc = _make(acc.terms, cutoff)
    return acc


def arctan_ext(a: SeriesNumber) -> SeriesNumber:
    """arctan extended to all real series.

    Finite arguments expand about their standard part; infinite arguments use
    the reflection arctan(t) = sign(t) * pi/2 - arctan(1/t), so the result is
    always finite.
    """
    if not a.is_real():
        raise NotOrderedError("arctan extension is defined for real series")
    if classify(a) is not Classification.INFINITE:
        return compose_analytic(ATAN, a)
    lead = a.terms[0][1]
    lead = lead.real if isinstance(lead, mpc) else lead
    sign = 1 if lead > 0 else -1
    inner = arctan_ext(invert(a))
    half_pi = const(sign * mpmath.pi / 2, inner.trunc)
    return sub(half_pi, inner)


# -- mean value probe ---------------------------------------------------------


def _poly_coeffs(p) -> Tuple:
    """Accept a polynomial TestFunction-alike or a plain coefficient sequence."""
    coeffs = getattr(p, "coeffs", None)
    if coeffs is None:
        coeffs = p
    kind = getattr(p, "kind", None)
    if kind is not None and getattr(kind, "name", "POLYNOMIAL") != "POLYNOMIAL":
        raise ValueError("mean value probe needs a polynomial")
    return tuple(_coeff(c) for c in coeffs)


def poly_at_series(coeffs: Sequence[Scalar], s: SeriesNumber) -> SeriesNumber:
    """Horner evaluation of a plain polynomial at a series argument."""
    plain = [_coeff(c) for c in coeffs]
    acc = const(plain[-1] if plain else 0, s.trunc)
    for c in reversed(plain[:-1]):
        acc = add(mul(acc, s), const(c, s.trunc))
    return acc


def _poly_deriv(coeffs: Sequence) -> Tuple:
    return tuple(k * coeffs[k] for k in range(1, len(coeffs)))


def mvt_theta(p, x0: Scalar, h: SeriesNumber, max_iterations: int = 50) -> SeriesNumber:
    """Solve f(x0+h) - f(x0) = h f'(x0 + theta h) for theta, order by order.

    ``h`` must be a nonzero real infinitesimal.  For polynomials with constant
    derivative any theta works; 1/2 is returned by convention.  The constant
    term solves the leading-order equation exactly; Newton iteration in the
    series ring then removes the remaining orders until the residual is zero
    up to its truncation order.
    """
    coeffs = _poly_coeffs(p)
    if classify(h) is not Classification.INFINITESIMAL:
        raise ValueError("increment must be a nonzero infinitesimal")
    if not h.is_real():
        raise NotOrderedError("increment must be real")
    x0 = _coeff(x0)
    dcoeffs = _poly_deriv(coeffs)
    d2coeffs = _poly_deriv(dcoeffs)
    if not d2coeffs:
        return const(Fraction(1, 2), h.trunc)  # degenerate: f' constant

    # f^(k)(x0) values for k >= 2 pick the leading-order root.
    derivs = []
    work = tuple(d2coeffs)
    k = 2
    while work:
        derivs.append((k, sum(work[j] * mpmath.power(x0, j) for j in range(len(work)))))
        work = _poly_deriv(work)
        k += 1
    scale = max((_mag(v) for _, v in derivs), default=mpf(0))
    tol = tau_c() * scale
    m = next((k for k, v in derivs if _mag(v) > tol), None)
    if m is None:
        return const(Fraction(1, 2), h.trunc)
    # Leading order h^m: 1/m! = c^(m-1)/(m-1)!  =>  c = (1/m)^(1/(m-1))
    c0 = mpmath.power(mpf(1) / m, mpf(1) / (m - 1))

    x0s = const(x0, h.trunc)
    lhs = sub(poly_at_series(coeffs, add(x0s, h)), const(_poly_value(coeffs, x0), h.trunc))
    theta = const(c0, h.trunc)
    for _ in range(max_iterations):
        arg = add(x0s, mul(theta, h))
        residual = sub(lhs, mul(h, poly_at_series(dcoeffs, arg)))
        if not residual.terms:
            return theta
        slope = -mul(mul(h, h), poly_at_series(d2coeffs, arg))
        if not slope.terms:
            raise NoSolutionError("flat derivative in the order-by-order solve")
        theta = sub(theta, divide(residual, slope))
    raise NoSolutionError("mean value solve did not converge within the cap")


def mvt_residual(p, x0: Scalar, h: SeriesNumber, theta: SeriesNumber) -> SeriesNumber:
    """Back-substitution residual f(x0+h) - f(x0) - h f'(x0 + theta h)."""
    coeffs = _poly_coeffs(p)
    x0 = _coeff(x0)
    x0s = const(x0, h.trunc)
    lhs = sub(poly_at_series(coeffs, add(x0s, h)), const(_poly_value(coeffs, x0), h.trunc))
    return sub(lhs, mul(h, poly_at_series(_poly_deriv(coeffs), add(x0s, mul(theta, h)))))


def _poly_value(coeffs: Sequence, x):
    acc = mpf(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


# -- text and JSON forms -------------------------------------------------------


def _fmt_exponent(q: Fraction) -> str:
    if q.denominator == 1:
        return f"^{q.numerator}" if q.numerator >= 0 else f"^({q.numerator})"
    return f"^({q.numerator}/{q.denominator})"


def _fmt_coeff(c) -> str:
    if c == mpmath.floor(c) and abs(c) < mpf(10) ** 15:
        return str(int(c))
    return mpmath.nstr(c, mpmath.mp.dps, strip_zeros=True)


def to_text(s: SeriesNumber) -> str:
    """Render a real series in the expression language; parse/print round-trips.

    Complex series have no text form (the grammar has no imaginary literal);
    use the JSON encoding for those.
    """
    if not s.terms:
        return "0"
    parts = []
    for q, c in s.terms:
        if isinstance(c, mpc):
            raise ValueError("complex series have no text form; use JSON")
        neg = c < 0
        mag = -c if neg else c
        body = _fmt_coeff(mag)
        if q == 0:
            text = body
        else:
            head = "eta" if q == 1 else "eta" + _fmt_exponent(q)
            text = head if body == "1" else f"{body}*{head}"
        if not parts:
            parts.append(("-" if neg else "") + text)
        else:
            parts.append(("- " if neg else "+ ") + text)
    return " ".join(parts)


def to_json_dict(s: SeriesNumber) -> dict:
    """JSON form: exponents as exact integer pairs, coefficients as strings."""
    dps = mpmath.mp.dps
    terms = []
    for q, c in s.terms:
        if isinstance(c, mpc):
            re, im = c.real, c.imag
        else:
            re, im = c, mpf(0)
        terms.append([q.numerator, q.denominator,
                      mpmath.nstr(re, dps, strip_zeros=True),
                      mpmath.nstr(im, dps, strip_zeros=True)])
    return {"terms": terms, "trunc": [s.trunc.numerator, s.trunc.denominator]}


def from_json_dict(data: dict) -> SeriesNumber:
    trunc = Fraction(int(data["trunc"][0]), int(data["trunc"][1]))
    pairs = []
    for en, ed, re, im in data["terms"]:
        c = mpc(mpf(re), mpf(im))
        pairs.append((Fraction(int(en), int(ed)), c))
    return _make(pairs, trunc)

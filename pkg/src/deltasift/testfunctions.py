"""Test functions for kernel integrals: polynomials, rationals, trig sums.

Polynomials carry exact derivative and antiderivative rules and an exact
Taylor shift; rationals additionally expose their complex poles and residues
(found at working precision); trig sums are finite combinations
``a0 + sum a_k cos(kx) + b_k sin(kx)`` with exact derivatives and a truncated
Taylor rule for use where a polynomial is required.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Optional, Sequence, Tuple

import mpmath
from mpmath import mpc, mpf

from .config import tau_c
from .errors import UnsupportedFunctionError
from .polyops import pderiv, peval, pshift, ptrim
from .series import _coeff


class FuncKind(Enum):
    POLYNOMIAL = "polynomial"
    RATIONAL = "rational"
    TRIGPOLY = "trigpoly"


@dataclass(frozen=True)
class TestFunction:
    """A function against which kernels are integrated.

    Exactly one representation is populated, selected by ``kind``:
    ``coeffs`` (low degree first) for polynomials, ``num``/``den`` for
    rationals, and ``const_term``/``cos_terms``/``sin_terms`` (frequency,
    amplitude pairs) for trig sums.
    """

    kind: FuncKind
    coeffs: Tuple = ()
    num: Tuple = ()
    den: Tuple = ()
    const_term: object = None
    cos_terms: Tuple = ()
    sin_terms: Tuple = ()
    label: str = ""

    def __repr__(self) -> str:
        return f"TestFunction({self.label or self.kind.value})"

    # -- evaluation --------------------------------------------------------

    def value(self, x):
        if self.kind is FuncKind.POLYNOMIAL:
            return peval(self.coeffs, x)
        if self.kind is FuncKind.RATIONAL:
            return peval(self.num, x) / peval(self.den, x)
        total = self.const_term + 0 * x
        for k, a in self.cos_terms:
            total = total + a * mpmath.cos(k * x)
        for k, b in self.sin_terms:
            total = total + b * mpmath.sin(k * x)
        return total

    def as_float_callable(self) -> Callable:
        """Vectorizable float version for the numeric oracle."""
        import numpy as np

        if self.kind is FuncKind.POLYNOMIAL:
            cs = [float(c) for c in self.coeffs]
            return lambda x: _np_peval(cs, x)
        if self.kind is FuncKind.RATIONAL:
            ns = [float(c) for c in self.num]
            ds = [float(c) for c in self.den]
            return lambda x: _np_peval(ns, x) / _np_peval(ds, x)
        c0 = float(self.const_term)
        cos_t = [(int(k), float(a)) for k, a in self.cos_terms]
        sin_t = [(int(k), float(b)) for k, b in self.sin_terms]

        def call(x):
            total = c0 + 0.0 * np.asarray(x, dtype=float)
            for k, a in cos_t:
                total = total + a * np.cos(k * np.asarray(x, dtype=float))
            for k, b in sin_t:
                total = total + b * np.sin(k * np.asarray(x, dtype=float))
            return total

        return call

    # -- calculus ----------------------------------------------------------

    def derivative(self) -> "TestFunction":
        if self.kind is FuncKind.POLYNOMIAL:
            return polynomial(pderiv(self.coeffs), label=f"d({self.label})")
        if self.kind is FuncKind.TRIGPOLY:
            cos_terms = tuple((k, k * b) for k, b in self.sin_terms)
            sin_terms = tuple((k, -k * a) for k, a in self.cos_terms)
            return trig_sum(0, cos_terms, sin_terms, label=f"d({self.label})")
        raise UnsupportedFunctionError("no exact derivative rule for rationals here")

    def antiderivative(self) -> "TestFunction":
        if self.kind is not FuncKind.POLYNOMIAL:
            raise UnsupportedFunctionError("exact antiderivative is polynomial-only")
        out = [mpf(0)]
        for k, c in enumerate(self.coeffs):
            out.append(c / (k + 1))
        return polynomial(out, label=f"I({self.label})")

    def taylor_at(self, a, degree: Optional[int] = None) -> Tuple:
        """Taylor coefficients about a: exact shift for polynomials,
        truncated expansion (through ``degree``) for trig sums."""
        a = _coeff(a)
        if self.kind is FuncKind.POLYNOMIAL:
            return pshift(self.coeffs, a)
        if self.kind is FuncKind.TRIGPOLY:
            if degree is None:
                raise ValueError("trig expansion needs an explicit degree")
            out = []
            fk = self
            fact = mpf(1)
            for j in range(degree + 1):
                if j > 0:
                    fk = fk.derivative()
                    fact *= j
                out.append(fk.value(a) / fact)
            return tuple(out)
        raise UnsupportedFunctionError("no Taylor rule for rationals here")

    def degree(self) -> int:
        if self.kind is FuncKind.POLYNOMIAL:
            return len(ptrim(self.coeffs)) - 1
        raise UnsupportedFunctionError("degree is polynomial-only")

    # -- rational structure --------------------------------------------------

    def poles(self) -> Tuple[Tuple[mpc, mpc], ...]:
        """Simple poles with residues, at working precision.

        Raises UnsupportedFunctionError when the denominator has a repeated
        root (the residue list presumes simple poles).
        """
        if self.kind is not FuncKind.RATIONAL:
            raise UnsupportedFunctionError("poles are defined for rationals")
        den = ptrim(self.den)
        if len(den) <= 1:
            return ()
        roots = mpmath.polyroots([den[-1 - i] for i in range(len(den))], maxsteps=200)
        scale = max(abs(r) for r in roots) + 1
        for i, r in enumerate(roots):
            for s in roots[i + 1:]:
                if abs(r - s) < mpf("1e-15") * scale:
                    raise UnsupportedFunctionError("repeated pole in denominator")
        dden = pderiv(den)
        out = []
        for r in roots:
            out.append((mpc(r), mpc(peval(self.num, mpc(r)) / peval(dden, mpc(r)))))
        return tuple(out)


def _np_peval(coeffs, x):
    import numpy as np

    acc = np.zeros_like(np.asarray(x, dtype=float))
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def polynomial(coeffs: Sequence, label: str = "") -> TestFunction:
    cs = tuple(_coeff(c) for c in coeffs)
    while cs and cs[-1] == 0:
        cs = cs[:-1]
    return TestFunction(FuncKind.POLYNOMIAL, coeffs=cs, label=label)


def rational(num: Sequence, den: Sequence, label: str = "") -> TestFunction:
    n = tuple(_coeff(c) for c in num)
    d = tuple(_coeff(c) for c in den)
    if not ptrim(d):
        raise ZeroDivisionError("zero denominator")
    return TestFunction(FuncKind.RATIONAL, num=n, den=d, label=label)


def trig_sum(const_term, cos_terms=(), sin_terms=(), label: str = "") -> TestFunction:
    cos_t = tuple((int(k), _coeff(a)) for k, a in cos_terms)
    sin_t = tuple((int(k), _coeff(b)) for k, b in sin_terms)
    if any(k <= 0 for k, _ in cos_t + sin_t):
        raise ValueError("trig frequencies must be positive integers")
    return TestFunction(FuncKind.TRIGPOLY, const_term=_coeff(const_term),
                        cos_terms=cos_t, sin_terms=sin_t, label=label)

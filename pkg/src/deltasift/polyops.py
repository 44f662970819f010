"""Dense univariate polynomial helpers, coefficient-ring agnostic.

Coefficients are stored low degree first.  The helpers only assume ring
arithmetic on the coefficients, so they work for exact Fractions (sequence
ring) and for mpmath scalars (test functions) alike.  Trailing coefficients
are trimmed only when exactly zero; tolerance-based cleanup is the caller's
business.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence, Tuple


def ptrim(coeffs: Sequence) -> Tuple:
    coeffs = list(coeffs)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


def pdeg(coeffs: Sequence) -> int:
    """Degree; -1 for the zero polynomial."""
    return len(ptrim(coeffs)) - 1


def padd(a: Sequence, b: Sequence) -> Tuple:
    n = max(len(a), len(b))
    out = []
    for i in range(n):
        x = a[i] if i < len(a) else 0
        y = b[i] if i < len(b) else 0
        out.append(x + y)
    return ptrim(out)


def pneg(a: Sequence) -> Tuple:
    return tuple(-x for x in a)


def psub(a: Sequence, b: Sequence) -> Tuple:
    return padd(a, pneg(b))


def pmul(a: Sequence, b: Sequence) -> Tuple:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] = out[i + j] + x * y
    return ptrim(out)


def pscale(a: Sequence, c) -> Tuple:
    return ptrim(tuple(c * x for x in a))


def peval(a: Sequence, x):
    """Horner evaluation; works for scalars and numpy arrays."""
    acc = 0 * x
    for c in reversed(a):
        acc = acc * x + c
    return acc


def pderiv(a: Sequence) -> Tuple:
    return ptrim(tuple(k * a[k] for k in range(1, len(a))))


def pantideriv(a: Sequence) -> Tuple:
    """Antiderivative with zero constant term (Fraction-exact for Fractions)."""
    out = [0 * c for c in a[:1]]
    if not out:
        out = [0]
    for k, c in enumerate(a):
        out.append(c / (k + 1) if isinstance(c, Fraction) else c / (k + 1))
    return ptrim(out)


def pshift(a: Sequence, x0) -> Tuple:
    """Taylor shift: coefficients of p(x0 + u) in u, via repeated Horner.

    Exact when the coefficient ring is exact; this is synthetic division by
    (u - 0) applied degree-many times.
    """
    work = list(a)
    n = len(work)
    out = []
    for k in range(n):
        # One synthetic-division pass leaves p(x0) in the last slot.
        for i in range(n - 1 - k, 0, -1):
            work[i - 1] = work[i - 1] + x0 * work[i]
        out.append(work[0])
        work = work[1:]
    return ptrim(out)


def pgcd(a: Sequence, b: Sequence) -> Tuple:
    """Monic GCD over a field (meant for Fraction coefficients)."""
    a, b = ptrim(a), ptrim(b)
    while b:
        a, b = b, pmod(a, b)
    if not a:
        return ()
    lead = a[-1]
    return tuple(c / lead for c in a)


def pmod(a: Sequence, b: Sequence) -> Tuple:
    """Remainder of a by b over a field."""
    a = list(ptrim(a))
    b = ptrim(b)
    if not b:
        raise ZeroDivisionError("polynomial modulo zero")
    db = len(b) - 1
    lead = b[-1]
    while len(a) - 1 >= db and a:
        q = a[-1] / lead
        shift = len(a) - 1 - db
        for i, c in enumerate(b):
            a[shift + i] = a[shift + i] - q * c
        while a and a[-1] == 0:
            a.pop()
    return tuple(a)


def pdivexact(a: Sequence, b: Sequence) -> Tuple:
    """Exact quotient a / b; raises if the division leaves a remainder."""
    a = list(ptrim(a))
    b = ptrim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    db = len(b) - 1
    lead = b[-1]
    q = [0] * max(len(a) - db, 0)
    while len(a) - 1 >= db and a:
        c = a[-1] / lead
        shift = len(a) - 1 - db
        q[shift] = c
        for i, bc in enumerate(b):
            a[shift + i] = a[shift + i] - c * bc
        while a and a[-1] == 0:
            a.pop()
    if a:
        raise ValueError("polynomial division left a remainder")
    return ptrim(q)

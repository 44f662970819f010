"""Rings of scalar sequences modulo the eventually-zero and null ideals.

A sequence ring element carries one of three representations:

* ``SYMBOLIC`` -- a rational function of the index n with exact rational
  coefficients; every ideal-membership and limit question is decidable.
* ``PERIODIC`` -- a repeating finite pattern of values (period p, value at n
  is pattern[(n-1) % p]); ideal membership stays decidable, which is what the
  classic zero-divisor pair (1,0,1,0,...) x (0,1,0,1,...) needs.
* ``OPAQUE`` -- an arbitrary closure; questions are answered by probing up
  to a horizon and may honestly come back Unknown.

Constant sequences embed the scalars; sequences converging to zero are the
prototypes of infinitesimals, and the quotient by the eventually-zero ideal
is not a field (the periodic witnesses above are zero divisors).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Callable, Optional, Sequence, Tuple

from .errors import NotConvergentError
from .polyops import padd, pdeg, pdivexact, peval, pgcd, pmul, pneg, psub, ptrim


class SeqKind(Enum):
    SYMBOLIC = "symbolic"
    PERIODIC = "periodic"
    OPAQUE = "opaque"


class IdealTag(Enum):
    F_EZ = "ez"        # eventually zero: nonzero at finitely many places
    F_NULL = "null"    # null: converges to zero


class Trilean(Enum):
    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"

    def __str__(self) -> str:
        return self.value


def _frac_poly(coeffs: Sequence) -> Tuple[Fraction, ...]:
    return ptrim(tuple(Fraction(c) for c in coeffs))


def _normalize_rational(num, den):
    num, den = _frac_poly(num), _frac_poly(den)
    if not den:
        raise ZeroDivisionError("zero denominator polynomial")
    g = pgcd(num, den)
    if pdeg(g) > 0:
        num = pdivexact(num, g)
        den = pdivexact(den, g)
    lead = den[-1]
    if lead != 1:
        num = tuple(c / lead for c in num)
        den = tuple(c / lead for c in den)
    return num, den


def _integer_root_bound(poly: Sequence[Fraction]) -> int:
    """Index beyond which an integer cannot be a root (Cauchy bound)."""
    poly = ptrim(poly)
    if len(poly) <= 1:
        return 1
    lead = abs(poly[-1])
    bound = 1 + max(abs(c) / lead for c in poly[:-1])
    return max(1, math.floor(bound) + 1)


@dataclass(frozen=True)
class SeqNumber:
    """One element of the sequence ring, indexed from n = 1."""

    kind: SeqKind
    num: Optional[Tuple[Fraction, ...]] = None
    den: Optional[Tuple[Fraction, ...]] = None
    pattern: Optional[Tuple[Fraction, ...]] = None
    fn: Optional[Callable[[int], float]] = None
    probe_horizon: int = 1000

    @property
    def start_index(self) -> int:
        """First index from which every later value is defined and finite."""
        if self.kind is SeqKind.SYMBOLIC:
            return _integer_root_bound(self.den)
        return 1

    def value(self, n: int):
        if self.kind is SeqKind.SYMBOLIC:
            d = peval(self.den, Fraction(n))
            if d == 0:
                raise ZeroDivisionError(f"denominator vanishes at n={n}")
            return peval(self.num, Fraction(n)) / d
        if self.kind is SeqKind.PERIODIC:
            return self.pattern[(n - 1) % len(self.pattern)]
        return self.fn(n)

    def __repr__(self) -> str:
        if self.kind is SeqKind.SYMBOLIC:
            return f"SeqNumber({_poly_text(self.num)} / {_poly_text(self.den)})"
        if self.kind is SeqKind.PERIODIC:
            return f"SeqNumber(pattern={self.pattern})"
        return f"SeqNumber(opaque, horizon={self.probe_horizon})"

    def __add__(self, other):
        return seq_add(self, _coerce_seq(other))

    __radd__ = __add__

    def __mul__(self, other):
        return seq_mul(self, _coerce_seq(other))

    __rmul__ = __mul__

    def __sub__(self, other):
        return seq_sub(self, _coerce_seq(other))

    def __neg__(self):
        return seq_neg(self)


def _poly_text(coeffs: Sequence[Fraction]) -> str:
    if not coeffs:
        return "0"
    parts = []
    for k, c in enumerate(coeffs):
        if c == 0:
            continue
        if k == 0:
            parts.append(str(c))
        elif k == 1:
            parts.append(f"{c}*n" if c != 1 else "n")
        else:
            parts.append(f"{c}*n^{k}" if c != 1 else f"n^{k}")
    return " + ".join(reversed(parts)) or "0"


# -- constructors -------------------------------------------------------------


def seq_rational(num, den=(1,)) -> SeqNumber:
    """Sequence n -> num(n)/den(n) with exact rational coefficients."""
    num, den = _normalize_rational(num, den)
    return SeqNumber(SeqKind.SYMBOLIC, num=num, den=den)


def seq_const(c) -> SeqNumber:
    return seq_rational((Fraction(c),))


def seq_periodic(pattern: Sequence) -> SeqNumber:
    pattern = tuple(Fraction(v) for v in pattern)
    if not pattern:
        raise ValueError("pattern must be nonempty")
    return SeqNumber(SeqKind.PERIODIC, pattern=pattern)


def seq_opaque(fn: Callable[[int], float], probe_horizon: int = 1000) -> SeqNumber:
    if probe_horizon < 8:
        raise ValueError("probe horizon too small to say anything")
    return SeqNumber(SeqKind.OPAQUE, fn=fn, probe_horizon=probe_horizon)


def seq_from_eta_terms(terms: Sequence[Tuple[int, object]]) -> SeqNumber:
    """The sequence n -> value of an eta-power sum at eta = 1/n.

    ``terms`` are (integer exponent, rational coefficient) pairs; exponent q
    contributes c * n^(-q).
    """
    if not terms:
        return seq_const(0)
    top = max(max(q for q, _ in terms), 0)
    num = [Fraction(0)] * (top + max(0, -min(q for q, _ in terms)) + 1)
    for q, c in terms:
        num[top - q] += Fraction(c)
    den = [Fraction(0)] * top + [Fraction(1)]
    return seq_rational(num, den)


def _coerce_seq(value) -> SeqNumber:
    if isinstance(value, SeqNumber):
        return value
    return seq_const(value)


def _is_constant_pattern(a: SeqNumber) -> bool:
    return all(v == a.pattern[0] for v in a.pattern)


def _as_symbolic(a: SeqNumber) -> Optional[SeqNumber]:
    if a.kind is SeqKind.SYMBOLIC:
        return a
    if a.kind is SeqKind.PERIODIC and _is_constant_pattern(a):
        return seq_const(a.pattern[0])
    return None


# -- ring operations ----------------------------------------------------------


def seq_add(a: SeqNumber, b: SeqNumber) -> SeqNumber:
    return _combine(a, b, "add")


def seq_sub(a: SeqNumber, b: SeqNumber) -> SeqNumber:
    return _combine(a, b, "sub")


def seq_mul(a: SeqNumber, b: SeqNumber) -> SeqNumber:
    return _combine(a, b, "mul")


def seq_neg(a: SeqNumber) -> SeqNumber:
    if a.kind is SeqKind.SYMBOLIC:
        return SeqNumber(SeqKind.SYMBOLIC, num=pneg(a.num), den=a.den)
    if a.kind is SeqKind.PERIODIC:
        return seq_periodic(tuple(-v for v in a.pattern))
    fn = a.fn
    return seq_opaque(lambda n: -fn(n), a.probe_horizon)


def _combine(a: SeqNumber, b: SeqNumber, op: str) -> SeqNumber:
    sa, sb = _as_symbolic(a), _as_symbolic(b)
    if sa is not None and sb is not None:
        if op == "add":
            num = padd(pmul(sa.num, sb.den), pmul(sb.num, sa.den))
        elif op == "sub":
            num = psub(pmul(sa.num, sb.den), pmul(sb.num, sa.den))
        else:
            num = pmul(sa.num, sb.num)
        return seq_rational(num, pmul(sa.den, sb.den))
    if a.kind is SeqKind.PERIODIC and b.kind is SeqKind.PERIODIC:
        p = _lcm(len(a.pattern), len(b.pattern))
        va = [a.pattern[i % len(a.pattern)] for i in range(p)]
        vb = [b.pattern[i % len(b.pattern)] for i in range(p)]
        if op == "add":
            vals = [x + y for x, y in zip(va, vb)]
        elif op == "sub":
            vals = [x - y for x, y in zip(va, vb)]
        else:
            vals = [x * y for x, y in zip(va, vb)]
        return seq_periodic(vals)
    # Periodic against a constant stays periodic.
    for first, second, flip in ((a, b, False), (b, a, True)):
        if first.kind is SeqKind.PERIODIC and _as_symbolic(second) is not None:
            s = _as_symbolic(second)
            if pdeg(s.num) <= 0 and pdeg(s.den) == 0:
                c = (s.num[0] / s.den[0]) if s.num else Fraction(0)
                vals = []
                for v in first.pattern:
                    if op == "add":
                        vals.append(v + c)
                    elif op == "sub":
                        vals.append(v - c if not flip else c - v)
                    else:
                        vals.append(v * c)
                return seq_periodic(vals)
    horizon = min(a.probe_horizon, b.probe_horizon)
    fa, fb = a.value, b.value
    if op == "add":
        return seq_opaque(lambda n: fa(n) + fb(n), horizon)
    if op == "sub":
        return seq_opaque(lambda n: fa(n) - fb(n), horizon)
    return seq_opaque(lambda n: fa(n) * fb(n), horizon)


def _lcm(x: int, y: int) -> int:
    return x * y // math.gcd(x, y)


# -- ideal membership ----------------------------------------------------------


def in_ideal(a: SeqNumber, which: IdealTag) -> Trilean:
    """Decide membership in F_ez or F_null.

    Symbolic and periodic representations are decided exactly; opaque
    sequences are probed up to their horizon and the verdict is Unknown
    whenever finitely many samples cannot settle the question.
    """
    if a.kind is SeqKind.SYMBOLIC:
        if not a.num:
            return Trilean.YES
        if which is IdealTag.F_EZ:
            return Trilean.NO  # a nonzero rational function vanishes finitely often
        return Trilean.YES if pdeg(a.num) < pdeg(a.den) else Trilean.NO
    if a.kind is SeqKind.PERIODIC:
        return Trilean.YES if all(v == 0 for v in a.pattern) else Trilean.NO
    return _probe_ideal(a, which)


def _probe_ideal(a: SeqNumber, which: IdealTag) -> Trilean:
    horizon = a.probe_horizon
    values = [a.value(n) for n in range(1, horizon + 1)]
    if which is IdealTag.F_EZ:
        last_nonzero = max((i + 1 for i, v in enumerate(values) if v != 0), default=0)
        if last_nonzero > 3 * horizon // 4:
            return Trilean.NO  # nonzeros persist right up to the horizon
        return Trilean.UNKNOWN
    # F_null: compare tail quarters; no decay plus a floor means "not null".
    q3 = [abs(v) for v in values[horizon // 2: 3 * horizon // 4]]
    q4 = [abs(v) for v in values[3 * horizon // 4:]]
    m3, m4 = max(q3, default=0), max(q4, default=0)
    if m4 > 1e-9 and m4 >= 0.99 * m3:
        return Trilean.NO
    return Trilean.UNKNOWN


def equals_mod(a: SeqNumber, b: SeqNumber, which: IdealTag) -> Trilean:
    """Whether a and b define the same class modulo the given ideal."""
    return in_ideal(seq_sub(a, b), which)


def zero_divisor_witness() -> Tuple[SeqNumber, SeqNumber]:
    """The alternating pair (1,0,1,0,...), (0,1,0,1,...).

    Neither is in the eventually-zero ideal, but their product is identically
    zero, so the quotient by that ideal is not a field.
    """
    return seq_periodic((1, 0)), seq_periodic((0, 1))


# -- limits and standard part ----------------------------------------------------


@dataclass(frozen=True)
class StLimit:
    """Limit report: exact limits carry Fractions, probed ones carry floats."""

    value: object
    exact: bool


def seq_limit(a: SeqNumber) -> StLimit:
    if a.kind is SeqKind.SYMBOLIC:
        dn, dd = pdeg(a.num), pdeg(a.den)
        if not a.num:
            return StLimit(Fraction(0), True)
        if dn < dd:
            return StLimit(Fraction(0), True)
        if dn == dd:
            return StLimit(a.num[-1] / a.den[-1], True)
        raise NotConvergentError("sequence diverges (numerator degree larger)")
    if a.kind is SeqKind.PERIODIC:
        if _is_constant_pattern(a):
            return StLimit(a.pattern[0], True)
        raise NotConvergentError("periodic sequence oscillates")
    horizon = a.probe_horizon
    tail = [a.value(n) for n in range(max(1, 3 * horizon // 4), horizon + 1)]
    head = [a.value(n) for n in range(max(1, horizon // 2), 3 * horizon // 4)]
    est = sum(tail) / len(tail)
    spread = max(tail) - min(tail)
    drift = abs(est - sum(head) / len(head))
    if spread > 2 * (drift + 1e-12) + 1e-6 * (1 + abs(est)):
        raise NotConvergentError("probed values do not stabilize")
    return StLimit(est, False)


def seq_standard_part(a: SeqNumber):
    """Limit of the sequence: exact for symbolic generators, else an estimate.

    Raises NotConvergentError when no finite limit exists (symbolic case) or
    the probes fail to stabilize (opaque case).
    """
    return seq_limit(a).value

"""Delta-kernel integrals over infinitesimal and infinite windows.

The scaled reciprocal-quadratic kernel ``alpha / (alpha^2 + (mu-a)^2)`` with
an infinitesimal scale ``alpha`` behaves as a unit impulse: integrating a
polynomial against it over a symmetric window ``[a - eps, a + eps]`` captures
``(pi/2) F(a)`` whenever the window is wide relative to the scale
(``eps >= sqrt(alpha)``), a fraction ``arctan(st(eps/alpha)) F(a)`` at the
boundary, and essentially nothing for narrow windows.  Everything here is
evaluated in closed form in the series ring; odd powers cancel by window
symmetry, which is exactly what keeps log terms out of the algebra.

Also provided: the regularized reciprocal ``1/(x + i alpha)`` split into a
principal value and an impulse part, a trigonometric kernel built from
``theta = 1 - eps`` with its reduced integral, and the step-function geometry
of ``arctan(x/alpha)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Tuple, Union

import mpmath
from mpmath import mpc, mpf

from .config import tau_c
from .errors import (
    DeltaSiftError,
    DomainError,
    NeedsLogError,
    UnsupportedFunctionError,
    UnsupportedWindowError,
)
from .series import (
    Classification,
    Comparison,
    SeriesNumber,
    _coeff,
    _make,
    _scale_by,
    add,
    arctan_ext,
    classify,
    compare,
    const,
    invert,
    mul,
    power,
    standard_part,
    sub,
    zero,
)
from .testfunctions import FuncKind, TestFunction, polynomial


def _require_positive(s: SeriesNumber, what: str,
                      allow: Tuple[Classification, ...]) -> None:
    if not s.is_real():
        raise ValueError(f"{what} must be real")
    cls = classify(s)
    if cls not in allow:
        names = "/".join(c.value for c in allow)
        raise ValueError(f"{what} must be {names}, got {cls.value}")
    if s.terms and s.terms[0][1] <= 0:
        raise ValueError(f"{what} must be positive")


def _as_width(eps) -> SeriesNumber:
    """Window half-widths may be series or positive appreciable reals."""
    if isinstance(eps, SeriesNumber):
        return eps
    return const(eps)


# -- kernel ---------------------------------------------------------------------


def cauchy_kernel(mu, a, alpha: SeriesNumber) -> SeriesNumber:
    """The scaled kernel alpha / (alpha^2 + (mu - a)^2) as a series.

    ``mu`` may be a scalar or a series (e.g. ``a + eta**Fraction(1,2)``).
    For appreciable |mu - a| the value is infinitesimal -- the kernel is
    perceptibly zero away from its peak.
    """
    _require_positive(alpha, "scale", (Classification.INFINITESIMAL,))
    mu_s = mu if isinstance(mu, SeriesNumber) else const(mu, alpha.trunc)
    d = sub(mu_s, const(a, alpha.trunc))
    den = add(mul(alpha, alpha), mul(d, d))
    return mul(alpha, invert(den))


# -- sifting ----------------------------------------------------------------------


@dataclass(frozen=True)
class Window:
    """Symmetric integration window [center - half_width, center + half_width]."""

    center: object
    half_width: SeriesNumber
    symmetric: bool = True

    def __post_init__(self):
        hw = self.half_width
        if not isinstance(hw, SeriesNumber):
            raise TypeError("half_width must be a SeriesNumber")
        _require_positive(hw, "half_width",
                          (Classification.INFINITESIMAL, Classification.APPRECIABLE,
                           Classification.INFINITE))


@dataclass(frozen=True)
class SiftReport:
    """Outcome of one sifting integral."""

    value: SeriesNumber
    st: object
    expected: object
    t_class: Classification
    laugwitz_ok: bool
    residual_leading_exponent: Fraction

    def to_json_dict(self) -> dict:
        from .series import to_json_dict

        return {
            "st": float(self.st),
            "expected": float(self.expected),
            "t_class": self.t_class.value,
            "laugwitz_ok": self.laugwitz_ok,
            "residual_leading_exponent": [self.residual_leading_exponent.numerator,
                                          self.residual_leading_exponent.denominator],
            "value": to_json_dict(self.value),
        }


def laugwitz_condition(alpha, eps) -> bool:
    """Window condition: eps >= sqrt(alpha), or eps appreciable positive.

    Encoded as the exact order check eps * eps >= alpha.
    """
    alpha = _as_width(alpha)
    eps = _as_width(eps)
    _require_positive(alpha, "scale", (Classification.INFINITESIMAL,))
    _require_positive(eps, "half-width",
                      (Classification.INFINITESIMAL, Classification.APPRECIABLE))
    if classify(eps) is Classification.APPRECIABLE:
        return True
    return compare(mul(eps, eps), alpha) in (Comparison.GREATER, Comparison.EQUAL)


def _even_power_integral(m: int, t_pow: Sequence[SeriesNumber],
                         atan_t: SeriesNumber, trunc) -> SeriesNumber:
    """Closed form of the integral of t^(2m)/(1+t^2) over [0, T].

    Polynomial part plus (-1)^m arctan(T); t_pow[j] caches T^(2j-1).
    """
    acc = _scale_by(atan_t, (-1) ** m)
    for j in range(1, m + 1):
        term = _scale_by(t_pow[j], mpf((-1) ** (m - j)) / (2 * j - 1))
        acc = add(acc, term)
    return acc


def _odd_power_integral(k: int):
    # Odd powers over a symmetric window cancel; reaching this without the
    # symmetry guarantee would require a log(eta) scale the ring does not have.
    raise NeedsLogError(f"odd kernel power t^{k} does not cancel without symmetry")


def sift(F: TestFunction, a, alpha: SeriesNumber, eps,
         symmetric: bool = True) -> SiftReport:
    """Evaluate (1/2) * integral of F(mu) alpha / (alpha^2 + (mu-a)^2)
    over [a - eps, a + eps] in closed form.

    Substituting mu = a + alpha t reduces the integral to
    (1/2) * int_{-T}^{T} F(a + alpha t) / (1 + t^2) dt with T = eps/alpha;
    odd Taylor terms of F vanish by symmetry and even ones integrate to
    polynomial-plus-arctan closed forms.  The standard part of the result is
    (pi/2) F(a) for infinite T, arctan(st(T)) F(a) for appreciable T, and 0
    for infinitesimal T; the identity holds up to an infinitesimal error,
    reported as the residual's leading exponent.
    """
    if not symmetric:
        raise UnsupportedWindowError("asymmetric windows are numeric-oracle work")
    _require_positive(alpha, "scale", (Classification.INFINITESIMAL,))
    eps = _as_width(eps)
    _require_positive(eps, "half-width",
                      (Classification.INFINITESIMAL, Classification.APPRECIABLE))
    a = _coeff(a)

    if F.kind is FuncKind.POLYNOMIAL:
        coeffs = F.taylor_at(a)
    elif F.kind is FuncKind.TRIGPOLY:
        budget = alpha.trunc / alpha.terms[0][0]
        coeffs = F.taylor_at(a, degree=int(mpmath.ceil(budget)))
    else:
        raise UnsupportedFunctionError("sifting supports polynomial and trig sums")

    T = mul(eps, invert(alpha))
    atan_t = arctan_ext(T)
    max_m = (len(coeffs) - 1) // 2
    t_pow = [None] * (max_m + 1)
    if max_m >= 1:
        t_pow[1] = T
        t_sq = mul(T, T)
        for j in range(2, max_m + 1):
            t_pow[j] = mul(t_pow[j - 1], t_sq)

    total = zero(alpha.trunc)
    alpha_pow = const(1, alpha.trunc)
    alpha_sq = mul(alpha, alpha)
    for m in range(0, max_m + 1):
        c = coeffs[2 * m]
        if m > 0:
            alpha_pow = mul(alpha_pow, alpha_sq)
        piece = _even_power_integral(m, t_pow, atan_t, alpha.trunc)
        total = add(total, _scale_by(mul(alpha_pow, piece), c))

    st_val = standard_part(total)
    t_cls = classify(T)
    f_a = F.value(a)
    if t_cls is Classification.INFINITE:
        expected = mpmath.pi / 2 * f_a
    elif t_cls is Classification.APPRECIABLE:
        expected = mpmath.atan(standard_part(T)) * f_a
    else:
        expected = mpf(0)
    residual = sub(total, const(expected, total.trunc))
    residual_lead = residual.terms[0][0] if residual.terms else residual.trunc
    return SiftReport(
        value=total,
        st=st_val,
        expected=expected,
        t_class=t_cls,
        laugwitz_ok=laugwitz_condition(alpha, eps),
        residual_leading_exponent=residual_lead,
    )


def sift_over(F: TestFunction, window: Window, alpha: SeriesNumber) -> SiftReport:
    return sift(F, window.center, alpha, window.half_width,
                symmetric=window.symmetric)


# -- unit-impulse conditions -------------------------------------------------------


def arctan_family_mass(alpha: SeriesNumber) -> mpf:
    """Total mass of the kernel over the whole line: exactly pi.

    Improper integrals over the line are defined as two-sided arctan limits;
    the antiderivative arctan(x/alpha) tends to +-pi/2 as the real endpoint
    grows, for every positive infinitesimal scale.
    """
    _require_positive(alpha, "scale", (Classification.INFINITESIMAL,))
    return mpmath.pi / 2 - (-mpmath.pi / 2)


@dataclass(frozen=True)
class DiracReport:
    """The two unit-impulse conditions plus sifting spot checks."""

    mass: object
    probes: Tuple[Tuple[object, Classification], ...]
    locality_ok: bool
    sift_checks: Tuple[Tuple[str, object, object], ...]
    sifting_ok: bool

    @property
    def ok(self) -> bool:
        return (self.mass == 1 and self.locality_ok and self.sifting_ok)

    def to_json_dict(self) -> dict:
        return {
            "mass": float(self.mass),
            "probes": [{"x": float(x), "classification": c.value}
                       for x, c in self.probes],
            "locality_ok": self.locality_ok,
            "sift_checks": [{"f": label, "st": float(st), "expected": float(want)}
                            for label, st, want in self.sift_checks],
            "sifting_ok": self.sifting_ok,
            "ok": self.ok,
        }


def dirac_conditions(alpha: SeriesNumber,
                     probes: Sequence = (-10, -1, -0.1, 0.1, 1, 10),
                     test_polys: Optional[Sequence[TestFunction]] = None,
                     eps: Optional[SeriesNumber] = None) -> DiracReport:
    """Check the impulse conditions for the normalized kernel
    (1/pi) alpha / (alpha^2 + x^2).

    (i) total mass over the line is exactly 1 (closed form);
    (ii) at each appreciable probe x != 0 the kernel value is infinitesimal;
    (iii) sifting a polynomial over a window with eps >= sqrt(alpha)
    recovers its value at 0.
    """
    _require_positive(alpha, "scale", (Classification.INFINITESIMAL,))
    mass = arctan_family_mass(alpha) / mpmath.pi
    probe_rows = []
    locality_ok = True
    for x in probes:
        cls = classify(cauchy_kernel(x, 0, alpha))
        probe_rows.append((_coeff(x), cls))
        if cls is not Classification.INFINITESIMAL:
            locality_ok = False
    if test_polys is None:
        test_polys = (polynomial([1, 1], label="1 + x"),)
    if eps is None:
        eps = power(alpha, Fraction(1, 2))
    checks = []
    sifting_ok = True
    two_over_pi = 2 / mpmath.pi
    for f in test_polys:
        report = sift(f, 0, alpha, eps)
        got = two_over_pi * report.st
        want = f.value(mpf(0))
        checks.append((f.label or "poly", got, want))
        if abs(got - want) > tau_c() * max(mpf(1), abs(want)):
            sifting_ok = False
    return DiracReport(mass=mass, probes=tuple(probe_rows), locality_ok=locality_ok,
                       sift_checks=tuple(checks), sifting_ok=sifting_ok)


# -- regularized reciprocal ----------------------------------------------------------


@dataclass(frozen=True)
class SokhotskiResult:
    """Decomposition of the integral of phi(x)/(x + i alpha) over the line.

    The standard part splits as pv_part + delta_part with pv_part the
    principal value of phi(x)/x and delta_part = -i pi phi(0).
    """

    value: SeriesNumber
    pv_part: object
    delta_part: object
    phi_at_zero: object

    @property
    def st(self) -> mpc:
        return standard_part(self.value)


def sokhotski(phi: TestFunction, alpha: SeriesNumber) -> SokhotskiResult:
    """Closed-form integral of phi(x)/(x + i alpha) over the line.

    ``phi`` must be rational with no real poles and denominator degree above
    the numerator's, so that phi(x)/(x + i alpha) decays at least as fast as
    1/x^2.  Closing the contour in the upper half plane leaves the residues
    of phi only (the kernel pole sits at -i alpha, below the axis), each
    weighted by 1/(z_j + i alpha) expanded as a series in alpha.  The
    decomposition of the standard part into a principal value and an impulse
    part is checked internally before returning.
    """
    _require_positive(alpha, "scale", (Classification.INFINITESIMAL,))
    if phi.kind is not FuncKind.RATIONAL:
        raise UnsupportedFunctionError("regularized reciprocal needs a rational")
    from .polyops import pdeg

    if pdeg(phi.den) < pdeg(phi.num) + 1:
        raise UnsupportedFunctionError("needs denominator degree above numerator")
    poles = phi.poles()
    scale = max((abs(z) for z, _ in poles), default=mpf(0)) + 1
    for z, _ in poles:
        if abs(z.imag) < mpf("1e-20") * scale:
            raise UnsupportedFunctionError("real poles are not supported")

    i_alpha = _scale_by(alpha, mpc(0, 1))
    total = zero(alpha.trunc)
    st_sum = mpc(0)
    for z, res in poles:
        if z.imag <= 0:
            continue
        weight = invert(add(const(z, alpha.trunc), i_alpha))
        total = add(total, _scale_by(weight, res))
        st_sum += res / z
    two_pi_i = mpc(0, 2 * mpmath.pi)
    total = _scale_by(total, two_pi_i)

    phi0 = phi.value(mpf(0))
    phi0 = phi0.real if isinstance(phi0, mpc) else phi0
    delta_part = mpc(0, -mpmath.pi) * phi0
    pv_closed = (two_pi_i * st_sum + mpc(0, mpmath.pi) * phi0).real

    st_val = standard_part(total)
    st_val = st_val if isinstance(st_val, mpc) else mpc(st_val)
    tol = tau_c() * max(mpf(1), abs(st_val))
    if abs(st_val.imag - delta_part.imag) > tol:
        raise DeltaSiftError("impulse part failed the -pi*phi(0) identity")
    if abs(st_val.real - pv_closed) > tol:
        raise DeltaSiftError("real part disagrees with the principal value")
    return SokhotskiResult(value=total, pv_part=pv_closed,
                           delta_part=delta_part, phi_at_zero=phi0)


# -- trigonometric kernel ---------------------------------------------------------------


def fourier_kernel(x, mu, eps: SeriesNumber) -> SeriesNumber:
    """The kernel 1 + 1/(e^{-i(x-mu)} - theta) + 1/(e^{i(x-mu)} - theta)
    with theta = 1 - eps, evaluated in closed real form.

    Combining the conjugate fractions gives
    eps (eps + 2 cos d) / (1 - 2 theta cos d + theta^2) with d = x - mu;
    the denominator is arranged as 2(1-cos d)(1-eps) + eps^2.  Away from
    d == 0 (mod 2 pi) the value is infinitesimal; on the peak it is
    (2 + eps)/eps, an infinite number.
    """
    _require_positive(eps, "eps",
                      (Classification.INFINITESIMAL, Classification.APPRECIABLE))
    c = mpmath.cos(_coeff(x) - _coeff(mu))
    num = mul(eps, add(eps, const(2 * c, eps.trunc)))
    one_minus_eps = sub(const(1, eps.trunc), eps)
    den = add(_scale_by(one_minus_eps, 2 * (1 - c)), mul(eps, eps))
    return mul(num, invert(den))


def fourier_kernel_direct(delta, eps) -> mpc:
    """Direct complex evaluation of the three-term kernel at real arguments."""
    delta = _coeff(delta)
    eps = _coeff(eps)
    theta = 1 - eps
    return (1 + 1 / (mpmath.exp(mpc(0, -1) * delta) - theta)
            + 1 / (mpmath.exp(mpc(0, 1) * delta) - theta))


def fourier_reduced_integral(f_at_x, x, eps: SeriesNumber) -> SeriesNumber:
    """f(x) times the integral of 1/(1+iw) + 1/(1-iw) dw from -x/eps to
    (2 pi - x)/eps, in closed form.

    The integrand is 2/(1+w^2), so the value is
    2 f(x) (arctan((2 pi - x)/eps) + arctan(x/eps)); both limits are infinite
    for 0 < x < 2 pi, making the standard part exactly 2 pi f(x).
    """
    _require_positive(eps, "eps", (Classification.INFINITESIMAL,))
    x = _coeff(x)
    if not (0 < x < 2 * mpmath.pi):
        raise DomainError("x must lie strictly inside (0, 2*pi)")
    inv_eps = invert(eps)
    hi = _scale_by(inv_eps, 2 * mpmath.pi - x)
    lo = _scale_by(inv_eps, x)
    total = add(arctan_ext(hi), arctan_ext(lo))
    return _scale_by(total, 2 * _coeff(f_at_x))


# -- step-function geometry ----------------------------------------------------------------


def heaviside_st(x, alpha: SeriesNumber):
    """Standard part of arctan(x/alpha): -pi/2, 0, or +pi/2 by the sign of x."""
    _require_positive(alpha, "scale", (Classification.INFINITESIMAL,))
    arg = _scale_by(invert(alpha), _coeff(x))
    return standard_part(arctan_ext(arg))


def heaviside_unit(x, alpha: SeriesNumber):
    """Affine renormalization y/pi + 1/2, mapping the steps onto {0, 1}."""
    return heaviside_st(x, alpha) / mpmath.pi + mpf(1) / 2


def zigzag_points(samples: Sequence, alpha: SeriesNumber):
    return tuple((_coeff(x), heaviside_st(x, alpha)) for x in samples)


def zigzag_check(samples: Sequence, alpha: SeriesNumber) -> bool:
    """Whether every sampled graph point lands on the step-with-riser set:
    y = -pi/2 for x < 0, y = +pi/2 for x > 0, and y within [-pi/2, pi/2]
    at x = 0."""
    half_pi = mpmath.pi / 2
    for x, y in zigzag_points(samples, alpha):
        if x < 0 and y != -half_pi:
            return False
        if x > 0 and y != half_pi:
            return False
        if x == 0 and not (-half_pi <= y <= half_pi):
            return False
    return True

"""Independent numeric verification layer.

Everything here works in ordinary floating point, deliberately apart from the
series engine: adaptive Gauss-Kronrod quadrature (with an algebraic
substitution for infinite endpoints), principal-value quadrature by
symmetric excision, polynomial extrapolation of integral families in their
real scale parameter, and a fourth-order pendulum integrator whose measured
periods are compared against the closed-form and elliptic-integral laws.
"""

from __future__ import annotations

import csv
import heapq
import math
from dataclasses import dataclass, replace
from typing import Callable, Iterable, List, Optional, Sequence, Tuple

import numpy as np
from scipy.special import ellipk

from .errors import (
    NoConvergenceError,
    NonMonotoneError,
    PoleMisdeclaredError,
    StepTooLargeError,
)

# 7-point Gauss / 15-point Kronrod pair on [-1, 1] (nodes by absolute value;
# the Gauss rule uses the odd-indexed Kronrod nodes plus the center).
_XGK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
])
_WGK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
_WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])

_MAX_INTERVALS = 4096


@dataclass(frozen=True)
class QuadratureResult:
    value: object            # float or complex
    error_estimate: float
    evaluations: int


def _vectorize_if_needed(f: Callable, lo: float, hi: float) -> Callable:
    probe = lo + (hi - lo) * np.array([0.3, 0.6])
    try:
        out = np.asarray(f(probe))
        if out.shape == probe.shape:
            return f
    except Exception:
        pass
    return np.vectorize(f)


def _gk15(f: Callable, lo: float, hi: float):
    mid = 0.5 * (lo + hi)
    half = 0.5 * (hi - lo)
    xs = np.concatenate([mid - half * _XGK[:-1], [mid], mid + half * _XGK[-2::-1]])
    ys = np.asarray(f(xs))
    folded = ys[:7] + ys[8:][::-1]          # symmetric pairs, indexed like _XGK
    kron = half * (np.sum(folded * _WGK[:7]) + ys[7] * _WGK[7])
    gauss = half * (np.sum(folded[1::2] * _WG[:3]) + ys[7] * _WG[3])
    return kron, abs(kron - gauss)


def _transform_infinite(f: Callable, a: float, b: float):
    """Map infinite endpoints onto a finite t-interval via x = t/(1 - t^2)."""

    def x_of(t):
        return t / (1.0 - t * t)

    def weight(t):
        tt = t * t
        return (1.0 + tt) / (1.0 - tt) ** 2

    if math.isinf(a) and math.isinf(b):
        return (lambda t: f(x_of(t)) * weight(t)), -1.0, 1.0
    if math.isinf(b):
        shift = a
        return (lambda t: f(shift + x_of(t)) * weight(t)), 0.0, 1.0
    shift = b
    return (lambda t: f(shift - x_of(t)) * weight(t)), 0.0, 1.0


def integrate(f: Callable, a: float, b: float, tol: float = 1e-10) -> QuadratureResult:
    """Adaptive Gauss-Kronrod integration of f over [a, b].

    ``tol`` is treated as both the absolute and the relative target: the run
    stops once the summed error estimate drops below
    max(tol, tol * |integral|).  Infinite endpoints are handled by the
    substitution x = t/(1 - t^2), never by raw truncation.  Raises
    NoConvergenceError past the subdivision cap.
    """
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    a, b = float(a), float(b)
    if math.isinf(a) or math.isinf(b):
        f, a, b = _transform_infinite(f, a, b)
    f = _vectorize_if_needed(f, a, b)

    val, err = _gk15(f, a, b)
    evals = 15
    heap = [(-err, a, b, val, err)]
    total, total_err = val, err
    while total_err > max(tol, tol * abs(total)):
        if len(heap) >= _MAX_INTERVALS:
            raise NoConvergenceError(
                f"error {total_err:.3g} above tolerance after {len(heap)} intervals")
        neg_err, lo, hi, v, e = heapq.heappop(heap)
        mid = 0.5 * (lo + hi)
        v1, e1 = _gk15(f, lo, mid)
        v2, e2 = _gk15(f, mid, hi)
        evals += 30
        total += v1 + v2 - v
        total_err += e1 + e2 - e
        heapq.heappush(heap, (-e1, lo, mid, v1, e1))
        heapq.heappush(heap, (-e2, mid, hi, v2, e2))
    if isinstance(total, complex):
        if not (math.isfinite(total.real) and math.isfinite(total.imag)):
            raise NoConvergenceError("integral evaluated to a non-finite value")
    elif not math.isfinite(total):
        raise NoConvergenceError("integral evaluated to a non-finite value")
    return QuadratureResult(value=total, error_estimate=float(total_err),
                            evaluations=evals)


def pv_integrate(f: Callable, pole: float, a: float, b: float,
                 tol: float = 1e-10) -> QuadratureResult:
    """Principal value of f over [a, b] across a simple pole.

    The symmetric excision limit is realized by pairing samples:
    g(s) = f(pole + s) + f(pole - s) extends continuously across s = 0
    whenever the pole is simple, so the PV equals the ordinary integral of g
    over (0, w) plus the untouched leftover piece.  A genuinely stronger
    singularity makes g blow up and the quadrature fail, reported as
    PoleMisdeclaredError.
    """
    a, b = float(a), float(b)
    if not (a < pole < b):
        raise ValueError("pole must lie strictly inside the interval")
    w = min(pole - a, b - pole)

    def paired(s):
        return f(pole + s) + f(pole - s)

    try:
        core = integrate(paired, 0.0, w, tol=tol)
    except NoConvergenceError as exc:
        raise PoleMisdeclaredError(
            "symmetric pairing around the declared pole failed to converge") from exc
    evals = core.evaluations
    value, err = core.value, core.error_estimate
    if math.isinf(w):
        leftover = None
    elif pole - a > w:
        leftover = (a, pole - w)
    elif b - pole > w:
        leftover = (pole + w, b)
    else:
        leftover = None
    if leftover is not None and leftover[0] != leftover[1]:
        rest = integrate(f, leftover[0], leftover[1], tol=tol)
        value += rest.value
        err += rest.error_estimate
        evals += rest.evaluations
    return QuadratureResult(value=value, error_estimate=float(err), evaluations=evals)


def alpha_extrapolate(family: Callable[[float], float], alphas: Sequence[float],
                      error_exponent: float = 1.0) -> QuadratureResult:
    """Extrapolate an integral family I(alpha) to alpha -> 0+.

    Neville polynomial extrapolation in alpha**error_exponent; the default
    assumes a leading error term linear in alpha, windowed-sift families with
    a sqrt(alpha) law pass error_exponent=1/2.  Raises NonMonotoneError when
    the ladder differences grow instead of settling.
    """
    alphas = [float(a) for a in alphas]
    if len(alphas) < 3:
        raise ValueError("need a ladder of at least 3 scale values")
    if any(a <= 0 for a in alphas) or any(x <= y for x, y in zip(alphas, alphas[1:])):
        raise ValueError("ladder must be strictly decreasing and positive")
    values = [float(family(a)) for a in alphas]
    diffs = [abs(x - y) for x, y in zip(values, values[1:])]
    if diffs and diffs[-1] > diffs[0] and diffs[-1] > 1e-14:
        raise NonMonotoneError("ladder values do not stabilize")
    xs = [a ** error_exponent for a in alphas]
    estimate = _neville_at_zero(xs, values)
    shallow = _neville_at_zero(xs[1:], values[1:])
    return QuadratureResult(value=estimate,
                            error_estimate=abs(estimate - shallow),
                            evaluations=len(alphas))


def _neville_at_zero(xs: Sequence[float], ys: Sequence[float]) -> float:
    table = list(ys)
    for level in range(1, len(xs)):
        new = []
        for i in range(len(table) - 1):
            x0, x1 = xs[i], xs[i + level]
            new.append((x0 * table[i + 1] - x1 * table[i]) / (x0 - x1))
        table = new
    return table[0]


# -- pendulum ----------------------------------------------------------------------


@dataclass(frozen=True)
class PendulumRun:
    """One pendulum measurement setup (angles in radians, SI units)."""

    C: float                      # release amplitude
    model: str = "nonlinear"      # "linear" or "nonlinear"
    g: float = 9.80665
    ell: float = 1.0
    dt: float = 2e-4
    measured_period: Optional[float] = None

    def __post_init__(self):
        if self.g <= 0 or self.ell <= 0 or self.dt <= 0:
            raise ValueError("g, ell and dt must be positive")
        if not (0 <= self.C < math.pi):
            raise ValueError("amplitude must lie in [0, pi)")
        if self.model not in ("linear", "nonlinear"):
            raise ValueError("model must be 'linear' or 'nonlinear'")


def linear_period(run: PendulumRun) -> float:
    """Closed-form small-oscillation period 2*pi*sqrt(ell/g)."""
    return 2 * math.pi * math.sqrt(run.ell / run.g)


def elliptic_period_ratio(C: float) -> float:
    """Exact full-swing period over the small-oscillation period:
    (2/pi) K(sin(C/2)) with K the complete elliptic integral."""
    return float(2 / math.pi * ellipk(math.sin(C / 2) ** 2))


def _measure_period(run: PendulumRun, dt: float) -> float:
    k = run.g / run.ell
    if run.model == "nonlinear":
        def accel(phi):
            return -k * math.sin(phi)
    else:
        def accel(phi):
            return -k * phi
    phi, omega = run.C, 0.0
    t = 0.0
    t_limit = 6.0 * linear_period(run) * (1.0 + run.C * run.C)
    crossings: List[float] = []
    while t < t_limit and len(crossings) < 2:
        # One classical RK4 step for (phi, omega).
        k1p, k1v = omega, accel(phi)
        k2p, k2v = omega + 0.5 * dt * k1v, accel(phi + 0.5 * dt * k1p)
        k3p, k3v = omega + 0.5 * dt * k2v, accel(phi + 0.5 * dt * k2p)
        k4p, k4v = omega + dt * k3v, accel(phi + dt * k3p)
        new_phi = phi + dt / 6.0 * (k1p + 2 * k2p + 2 * k3p + k4p)
        new_omega = omega + dt / 6.0 * (k1v + 2 * k2v + 2 * k3v + k4v)
        new_t = t + dt
        if phi > 0.0 >= new_phi:  # downward zero crossing
            frac = phi / (phi - new_phi)
            crossings.append(t + frac * dt)
        phi, omega, t = new_phi, new_omega, new_t
    if len(crossings) < 2:
        raise NoConvergenceError("no full oscillation within the time limit")
    return crossings[1] - crossings[0]


def pendulum_period(run: PendulumRun, check_tol: float = 1e-8) -> float:
    """Measured period from successive same-direction zero crossings.

    Integrates from rest at phi(0) = C with the configured step, interpolates
    the downward crossings linearly, and re-measures at half the step; if the
    two periods differ by more than ``check_tol`` the step was too large.
    """
    coarse = _measure_period(run, run.dt)
    fine = _measure_period(run, run.dt / 2)
    if abs(coarse - fine) > check_tol:
        raise StepTooLargeError(
            f"halving dt moved the period by {abs(coarse - fine):.3e}")
    return fine


def measure(run: PendulumRun, check_tol: float = 1e-8) -> PendulumRun:
    """Same as pendulum_period, returning the run with the period filled in."""
    return replace(run, measured_period=pendulum_period(run, check_tol))


# -- verification corpus ---------------------------------------------------------


@dataclass(frozen=True)
class CorpusEntry:
    description: str
    integrand: Callable
    lower: float
    upper: float
    closed_form: float
    tolerance: float


def integration_corpus() -> Tuple[CorpusEntry, ...]:
    """Closed-form integrals used to vouch for the quadrature itself."""
    inf = math.inf
    alpha = 1e-6
    alpha2 = 1e-8
    return (
        CorpusEntry("x^2 on [0,1]", lambda x: x * x, 0.0, 1.0, 1.0 / 3, 1e-12),
        CorpusEntry("x^3 - 2x on [-1,2]", lambda x: x ** 3 - 2 * x, -1.0, 2.0,
                    0.75, 1e-12),
        CorpusEntry("(1+2x-x^2) on [0,3]", lambda x: 1 + 2 * x - x * x, 0.0, 3.0,
                    3.0, 1e-12),
        CorpusEntry("5th Legendre-ish poly on [-1,1]",
                    lambda x: x ** 5 - x ** 3 + x, -1.0, 1.0, 0.0, 1e-12),
        CorpusEntry("1/(1+x^2) on R", lambda x: 1 / (1 + x * x), -inf, inf,
                    math.pi, 1e-10),
        CorpusEntry("1/(4+x^2) on R", lambda x: 1 / (4 + x * x), -inf, inf,
                    math.pi / 2, 1e-10),
        CorpusEntry("x^2/(1+x^2) on [0,1]", lambda x: x * x / (1 + x * x),
                    0.0, 1.0, 1 - math.pi / 4, 1e-12),
        CorpusEntry("1/(1+x^2)^2 on R", lambda x: 1 / (1 + x * x) ** 2,
                    -inf, inf, math.pi / 2, 1e-10),
        CorpusEntry("peaked kernel on R, scale 1e-6",
                    lambda x: alpha / (alpha * alpha + x * x), -inf, inf,
                    math.pi, 1e-6),
        CorpusEntry("peaked kernel on [-1,1], scale 1e-8",
                    lambda x: alpha2 / (alpha2 * alpha2 + x * x), -1.0, 1.0,
                    math.pi - 2 * math.atan(alpha2), 1e-8),
        CorpusEntry("normalized peak on [-1e-2,1e-2], scale 1e-6",
                    lambda x: alpha / math.pi / (alpha * alpha + x * x),
                    -1e-2, 1e-2, 2 * math.atan(1e4) / math.pi, 1e-9),
        CorpusEntry("arctan antiderivative check on [0,10]",
                    lambda x: 1 / (1 + x * x), 0.0, 10.0, math.atan(10.0), 1e-12),
    )


def run_corpus(tol_scale: float = 1.0) -> List[dict]:
    """Evaluate every corpus entry; returns one result row per entry."""
    rows = []
    for entry in integration_corpus():
        result = integrate(entry.integrand, entry.lower, entry.upper,
                           tol=entry.tolerance * tol_scale)
        err = abs(result.value - entry.closed_form)
        rows.append({
            "description": entry.description,
            "value": result.value,
            "closed_form_value": entry.closed_form,
            "error": err,
            "error_estimate": result.error_estimate,
            "tolerance": entry.tolerance,
            "evaluations": result.evaluations,
            "ok": bool(err <= 10 * entry.tolerance * max(1.0, abs(entry.closed_form))),
        })
    return rows


def write_corpus_csv(path: str) -> None:
    """Write the corpus manifest: (description, closed_form_value, tolerance)."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["description", "closed_form_value", "tolerance"])
        for entry in integration_corpus():
            writer.writerow([entry.description, repr(entry.closed_form),
                             repr(entry.tolerance)])


def read_corpus_csv(path: str) -> List[dict]:
    with open(path, newline="") as fh:
        return [{"description": row["description"],
                 "closed_form_value": float(row["closed_form_value"]),
                 "tolerance": float(row["tolerance"])}
                for row in csv.DictReader(fh)]


def write_pendulum_csv(path: str, runs: Iterable[PendulumRun]) -> None:
    """Write measured runs as (model, C, dt, period) rows."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["model", "C", "dt", "period"])
        for run in runs:
            if run.measured_period is None:
                run = measure(run)
            writer.writerow([run.model, repr(run.C), repr(run.dt),
                             repr(run.measured_period)])


def read_pendulum_csv(path: str) -> List[PendulumRun]:
    out = []
    with open(path, newline="") as fh:
        for row in csv.DictReader(fh):
            out.append(PendulumRun(C=float(row["C"]), model=row["model"],
                                   dt=float(row["dt"]),
                                   measured_period=float(row["period"])))
    return out

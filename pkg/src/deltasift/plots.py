"""Static SVG figures: kernel profiles, step-function overlay, pendulum traces.

matplotlib is imported lazily so that the numeric core stays importable in
stripped-down environments.
"""

from __future__ import annotations

import math
from typing import Optional, Sequence

import numpy as np


def _axes():
    import matplotlib

    matplotlib.use("svg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(7, 4.2))
    return plt, fig, ax


def kernel_profile_svg(path: str, alphas: Sequence[float] = (0.2, 0.1, 0.05),
                       center: float = 0.0, half_width: float = 1.5) -> str:
    """Normalized kernel (1/pi) a/(a^2+(x-c)^2) at a ladder of real scales."""
    plt, fig, ax = _axes()
    xs = np.linspace(center - half_width, center + half_width, 801)
    for a in alphas:
        ys = a / math.pi / (a * a + (xs - center) ** 2)
        ax.plot(xs, ys, label=f"scale {a:g}")
    ax.set_xlabel("x")
    ax.set_ylabel("kernel")
    ax.set_title("Impulse kernel sharpening as the scale shrinks")
    ax.legend()
    fig.savefig(path, format="svg")
    plt.close(fig)
    return path


def zigzag_svg(path: str, alphas: Sequence[float] = (0.3, 0.1, 0.02),
               half_width: float = 3.0) -> str:
    """arctan(x/a) curves flattening onto the step-with-riser limit set."""
    plt, fig, ax = _axes()
    xs = np.linspace(-half_width, half_width, 801)
    for a in alphas:
        ax.plot(xs, np.arctan(xs / a), label=f"scale {a:g}")
    ax.plot([-half_width, 0], [-math.pi / 2] * 2, "k-", lw=2.5, label="limit set")
    ax.plot([0, half_width], [math.pi / 2] * 2, "k-", lw=2.5)
    ax.plot([0, 0], [-math.pi / 2, math.pi / 2], "k-", lw=2.5)
    ax.set_xlabel("x")
    ax.set_ylabel("arctan(x / scale)")
    ax.set_title("Step function as a standard part")
    ax.legend(loc="lower right")
    fig.savefig(path, format="svg")
    plt.close(fig)
    return path


def pendulum_svg(path: str, C: float = 0.5, g: float = 9.80665,
                 ell: float = 1.0, seconds: Optional[float] = None) -> str:
    """Angle traces for the full equation and its small-angle linearization."""
    plt, fig, ax = _axes()
    k = g / ell
    t_end = seconds if seconds is not None else 3 * 2 * math.pi * math.sqrt(ell / g)
    dt = t_end / 6000
    for label, accel in (("full sin term", lambda p: -k * math.sin(p)),
                         ("linearized", lambda p: -k * p)):
        phi, omega, t = C, 0.0, 0.0
        ts, ps = [t], [phi]
        while t < t_end:
            k1p, k1v = omega, accel(phi)
            k2p, k2v = omega + 0.5 * dt * k1v, accel(phi + 0.5 * dt * k1p)
            k3p, k3v = omega + 0.5 * dt * k2v, accel(phi + 0.5 * dt * k2p)
            k4p, k4v = omega + dt * k3v, accel(phi + dt * k3p)
            phi += dt / 6 * (k1p + 2 * k2p + 2 * k3p + k4p)
            omega += dt / 6 * (k1v + 2 * k2v + 2 * k3v + k4v)
            t += dt
            ts.append(t)
            ps.append(phi)
        ax.plot(ts, ps, label=label)
    ax.set_xlabel("t [s]")
    ax.set_ylabel("angle [rad]")
    ax.set_title(f"Pendulum traces, amplitude {C:g} rad")
    ax.legend()
    fig.savefig(path, format="svg")
    plt.close(fig)
    return path


def fourier_profile_svg(path: str, eps_values: Sequence[float] = (0.3, 0.1, 0.03)) -> str:
    """Real trigonometric kernel over one period at a ladder of eps values."""
    plt, fig, ax = _axes()
    xs = np.linspace(-math.pi, math.pi, 801)
    for eps in eps_values:
        theta = 1 - eps
        ys = eps * (eps + 2 * np.cos(xs)) / (1 - 2 * theta * np.cos(xs) + theta ** 2)
        ax.plot(xs, ys, label=f"eps {eps:g}")
    ax.set_xlabel("x - mu")
    ax.set_ylabel("kernel")
    ax.set_title("Trigonometric kernel concentrating at 0")
    ax.legend()
    fig.savefig(path, format="svg")
    plt.close(fig)
    return path

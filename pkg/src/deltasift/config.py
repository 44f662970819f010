"""Shared precision and tolerance settings.

Coefficients are mpmath numbers; the working precision and the relative
zero-tolerance tau_c are process-wide knobs.  The defaults (40 significant
digits, tau_c = 1e-20 relative) leave twenty guard digits between genuine
cancellation noise and the smallest coefficient treated as nonzero.
"""

from __future__ import annotations

from fractions import Fraction

import mpmath

DEFAULT_DPS = 40
DEFAULT_TAU_EXPONENT = 20

_default_trunc = Fraction(8)

mpmath.mp.dps = DEFAULT_DPS


def set_precision(dps: int) -> None:
    """Set working precision in significant decimal digits (minimum 30)."""
    if dps < 30:
        raise ValueError("working precision below 30 digits is not supported")
    mpmath.mp.dps = dps


def precision() -> int:
    return mpmath.mp.dps


def tau_c() -> mpmath.mpf:
    """Relative coefficient zero-tolerance."""
    return mpmath.mpf(10) ** (-DEFAULT_TAU_EXPONENT)


def set_default_trunc(order) -> None:
    """Set the default truncation order used by the series constructors."""
    global _default_trunc
    order = Fraction(order)
    if order <= 0:
        raise ValueError("truncation order must be positive")
    _default_trunc = order


def default_trunc() -> Fraction:
    return _default_trunc

"""Gamma and one-parameter Mittag-Leffler functions on the real line."""

from __future__ import annotations

import math

import mpmath
import numpy as np

from .contour import MACHINE_EPS, invert
from .exceptions import DomainError

#: Above this modulus of the argument the power series is abandoned in
#: favour of Laplace inversion.
SERIES_CROSSOVER = 5.0
#: The series is also abandoned when its largest term, about
#: ``exp(|x|^(1/beta))``, would need too many extra digits.
SERIES_MAX_PEAK = 60.0


def gamma_fn(x: float) -> float:
    """Gamma function for ``x > 0``."""
    if not x > 0:
        raise DomainError(f"gamma_fn is defined here only for x > 0, got {x!r}")
    return math.gamma(x)


def _check_beta(beta: float) -> None:
    if not (0.0 < beta <= 1.0):
        raise DomainError(f"Mittag-Leffler exponent must lie in (0, 1], got {beta!r}")


def ml_series(beta: float, x: float, tol: float = 1.0e-16) -> float:
    """Sum ``E_beta(x) = sum_k x^k / Gamma(beta k + 1)`` directly.

    The alternating series cancels badly once its largest term (roughly
    ``exp(|x|^(1/beta))``) exceeds a few thousand; in that case the terms are
    summed in extended precision so the result stays accurate to ``tol``.
    """
    _check_beta(beta)
    if x > 0:
        raise DomainError("only non-positive arguments are supported")
    if x == 0:
        return 1.0

    peak = abs(x) ** (1.0 / beta)
    if peak < 8.0:
        # Neumaier-compensated summation in double precision
        total, comp = 0.0, 0.0
        k = 0
        while True:
            term = math.exp(k * math.log(-x) - math.lgamma(beta * k + 1))
            term = term if k % 2 == 0 else -term
            s = total + term
            if abs(total) >= abs(term):
                comp += (total - s) + term
            else:
                comp += (term - s) + total
            total = s
            if abs(term) < tol and k > peak:
                return total + comp
            k += 1

    digits = int(peak / math.log(10)) + 20
    with mpmath.workdps(digits):
        xm = mpmath.mpf(x)
        b = mpmath.mpf(beta)
        total = mpmath.mpf(0)
        k = 0
        while True:
            term = xm**k / mpmath.gamma(b * k + 1)
            total += term
            if abs(term) < tol and k > peak:
                return float(total)
            k += 1


def ml_inversion(beta: float, x: float, eps: float = MACHINE_EPS) -> float:
    """Evaluate ``E_beta(x)``, ``x < 0``, by inverting ``s^(beta-1)/(s^beta - x)`` at t=1."""
    _check_beta(beta)
    if x > 0:
        raise DomainError("only non-positive arguments are supported")
    if x == 0:
        return 1.0

    def F(s):
        sb = np.exp(beta * np.log(s))
        return sb / (s * (sb - x))

    return float(invert(F, 1.0, eps))


def mittag_leffler(beta: float, x):
    """One-parameter Mittag-Leffler function ``E_beta(x)`` for real ``x <= 0``.

    Accepts a scalar or an array of arguments.

    >>> round(mittag_leffler(1.0, -1.0), 12) == round(math.exp(-1), 12)
    True
    """
    _check_beta(beta)
    xs = np.asarray(x, dtype=float)
    if np.any(xs > 0):
        raise DomainError("E_beta(x) for x > 0 (growth regime) is not supported")
    flat = xs.reshape(-1)
    out = np.empty_like(flat)
    for i, xi in enumerate(flat):
        if abs(xi) <= SERIES_CROSSOVER and abs(xi) ** (1.0 / beta) <= SERIES_MAX_PEAK:
            out[i] = ml_series(beta, xi)
        else:
            out[i] = ml_inversion(beta, xi)
    if xs.ndim == 0:
        return float(out[0])
    return out.reshape(xs.shape)

"""Variable-order fractional relaxation ``D^alpha(t) y = -lambda y, y(0) = y0``.

Two independent solvers are provided:

* :func:`solve_lt` inverts ``Y(s) = y0 / (s (1 + lambda Psi(s)))`` on the
  parabolic contour;
* :func:`solve_cq` discretizes the equivalent Volterra equation
  ``y = y0 - lambda psi * y`` by convolution quadrature, with weights
  generated from ``Psi`` and a BDF1 or BDF2 generating function.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .contour import MACHINE_EPS, invert
from .exceptions import DomainError, SingularStepError
from .kernels import KernelPair, integrated_kernel, kernel_pair
from .special import mittag_leffler
from .transitions import TransitionFunction

GENERATORS: dict[str, Callable[[np.ndarray], np.ndarray]] = {
    "BDF1": lambda z: 1 - z,
    "BDF2": lambda z: 1.5 - 2 * z + 0.5 * z**2,
}


@dataclass(frozen=True)
class RelaxationProblem:
    transition: TransitionFunction
    lam: float = 1.0
    y0: float = 1.0

    def __post_init__(self):
        if not (self.lam >= 0 and math.isfinite(self.lam)):
            raise DomainError(f"lambda must be non-negative (growth excluded), got {self.lam!r}")
        if self.transition.offset:
            raise DomainError("relaxation is implemented for orders in (0, 1) only")

    @property
    def pair(self) -> KernelPair:
        return kernel_pair(self.transition)


@dataclass(frozen=True)
class TimeSeries:
    times: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        t = np.asarray(self.times, dtype=float)
        v = np.asarray(self.values, dtype=float)
        if t.shape != v.shape or t.ndim != 1:
            raise DomainError("times and values must be 1-d arrays of equal length")
        if t.size and (t[0] < 0 or np.any(np.diff(t) <= 0)):
            raise DomainError("times must be non-negative and strictly increasing")
        object.__setattr__(self, "times", t)
        object.__setattr__(self, "values", v)

    def __len__(self):
        return self.times.size

    def at(self, t: float) -> float:
        """Value at a grid time (nearest grid point)."""
        return float(self.values[np.argmin(np.abs(self.times - t))])


@dataclass(frozen=True)
class CQScheme:
    step_h: float
    weights: np.ndarray
    generator: str
    contour_radius: float

    @property
    def count(self) -> int:
        return self.weights.size - 1


def _check_grid(t_grid) -> np.ndarray:
    t = np.atleast_1d(np.asarray(t_grid, dtype=float))
    if t.ndim != 1 or np.any(t <= 0):
        raise DomainError("the time grid must be strictly positive")
    if np.any(np.diff(t) <= 0):
        raise DomainError("the time grid must be strictly increasing")
    return t


def solve_lt(
    problem: RelaxationProblem,
    t_grid,
    eps: float = MACHINE_EPS,
    warn_threshold: float = 1e-8,
) -> TimeSeries:
    """Solve by Laplace inversion of ``y0 / (s (1 + lambda Psi(s)))``."""
    if problem.lam <= 0:
        raise DomainError("solve_lt requires lambda > 0")
    t = _check_grid(t_grid)
    pair = problem.pair
    lam, y0 = problem.lam, problem.y0

    def Y(s):
        denom = 1 + lam * pair.psi_laplace(s)
        small = np.abs(denom) < warn_threshold
        if np.any(small):
            warnings.warn(
                f"1 + lambda Psi(s) is nearly singular at s={s[small][0]!r}",
                RuntimeWarning,
                stacklevel=3,
            )
        return y0 / (s * denom)

    return TimeSeries(t, invert(Y, t, eps))


def default_radius(count: int) -> float:
    """Radius balancing aliasing ``rho^K`` against round-off ``eps rho^-M``.

    ``K = 2(M+1)`` is the number of trapezoidal nodes on the circle.
    """
    K = 2 * (count + 1)
    return MACHINE_EPS ** (1.0 / (K + count))


def cq_weights(
    psi_laplace: Callable[[np.ndarray], np.ndarray],
    step_h: float,
    count: int,
    generator: str = "BDF1",
    contour_radius: Optional[float] = None,
) -> CQScheme:
    """Convolution quadrature weights ``w_0..w_M`` of ``Psi(delta(z)/h)``.

    The Taylor coefficients at ``z = 0`` are extracted from a trapezoidal
    discretization of the Cauchy integral on ``|z| = contour_radius`` with
    ``2(M+1)`` nodes (one FFT).
    """
    if not step_h > 0:
        raise DomainError(f"step must be positive, got {step_h!r}")
    if int(count) != count or count < 1:
        raise DomainError(f"weight count must be an integer >= 1, got {count!r}")
    if generator not in GENERATORS:
        raise DomainError(f"generator must be one of {sorted(GENERATORS)}, got {generator!r}")
    count = int(count)
    rho = default_radius(count) if contour_radius is None else float(contour_radius)
    if not (0 < rho < 1):
        raise DomainError(f"contour radius must lie in (0, 1), got {rho!r}")

    K = 2 * (count + 1)
    zeta = rho * np.exp(2j * np.pi * np.arange(K) / K)
    values = np.asarray(psi_laplace(GENERATORS[generator](zeta) / step_h), dtype=complex)
    coeffs = np.fft.fft(values)[: count + 1] / K
    weights = (coeffs / rho ** np.arange(count + 1)).real
    return CQScheme(float(step_h), weights, generator, rho)


def solve_cq(
    problem: RelaxationProblem,
    step_h: float,
    n_steps: int,
    generator: str = "BDF1",
    exact_start: bool = True,
    eps: float = MACHINE_EPS,
) -> TimeSeries:
    """March the Volterra form on the grid ``t_n = n h``, ``n = 0..n_steps``.

    With ``exact_start`` the constant part ``y0 int_0^t psi`` of the
    convolution is integrated exactly (running integral of ``psi`` by Laplace
    inversion) and quadrature is applied only to ``y - y0``, which vanishes
    at the origin. This removes the ``O(h^alpha(0))`` start-up error of the
    plain scheme, which otherwise dominates near ``t = h``.
    """
    if int(n_steps) != n_steps or n_steps < 1:
        raise DomainError(f"n_steps must be an integer >= 1, got {n_steps!r}")
    n_steps = int(n_steps)
    pair = problem.pair
    lam, y0 = problem.lam, problem.y0
    w = cq_weights(pair.psi_laplace, step_h, n_steps, generator).weights
    diag = 1 + lam * w[0]
    if abs(diag) < 1e-12:
        raise SingularStepError(f"1 + lambda w_0 = {diag!r} is numerically zero")

    times = np.arange(n_steps + 1) * step_h
    y = np.empty(n_steps + 1)
    y[0] = y0
    if exact_start:
        u = np.zeros(n_steps + 1)
        forcing = -lam * y0 * integrated_kernel(pair, "psi", times[1:], eps)
        for n in range(1, n_steps + 1):
            u[n] = (forcing[n - 1] - lam * np.dot(w[n - 1 : 0 : -1], u[1:n])) / diag
        y[1:] = y0 + u[1:]
    else:
        for n in range(1, n_steps + 1):
            y[n] = (y0 - lam * np.dot(w[n:0:-1], y[:n])) / diag
    return TimeSeries(times, y)


def reference_constant_solution(alpha: float, lam: float, y0: float, t_grid) -> TimeSeries:
    """``y0 E_alpha(-lambda t^alpha)``, the constant-order solution."""
    if not (0 < alpha <= 1):
        raise DomainError(f"alpha must lie in (0, 1], got {alpha!r}")
    if lam < 0:
        raise DomainError("growth regime (lambda < 0) is not supported")
    t = np.atleast_1d(np.asarray(t_grid, dtype=float))
    return TimeSeries(t, y0 * np.asarray(mittag_leffler(alpha, -lam * t**alpha)))

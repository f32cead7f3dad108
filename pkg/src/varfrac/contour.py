r"""Numerical inversion of Laplace transforms on parabolic contours.

The Bromwich line is deformed into the parabola

.. math::

    z(u) = \mu (i u + 1)^2, \qquad z'(u) = 2 \mu (i - u),

and the resulting integral is discretized by the trapezoidal rule with
step :math:`h` on :math:`[-hN, hN]`. For real-valued originals only the
half contour :math:`u \ge 0` is needed. The parameters are chosen per time
point so that discretization, truncation and round-off errors are all of
the order of the target accuracy ``eps``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence, Union

import numpy as np

from .exceptions import DomainError, EvaluationError

#: Default target accuracy (double precision machine epsilon).
MACHINE_EPS = float(np.finfo(float).eps)


@dataclass(frozen=True)
class ContourPlan:
    """Quadrature parameters for a single time point."""

    #: Scale of the parabola (units 1/time).
    mu: float
    #: Trapezoidal step in the contour parameter ``u``.
    h: float
    #: One-sided node count; nodes are ``u_k = k h`` for ``k = 0..n_nodes``.
    n_nodes: int
    #: Target accuracy the plan was built for.
    eps: float

    def nodes(self) -> tuple[np.ndarray, np.ndarray]:
        """Return the contour points ``z(u_k)`` and derivatives ``z'(u_k)``."""
        u = np.arange(self.n_nodes + 1) * self.h
        z = self.mu * (1j * u + 1) ** 2
        dz = 2 * self.mu * (1j - u)
        return z, dz


@dataclass(frozen=True)
class LaplaceFunction:
    """A Laplace transform together with a note on its singularities.

    ``eval`` must accept numpy arrays of complex points.
    """

    eval: Callable[[np.ndarray], np.ndarray]
    singularity_note: str = "branch point at the origin, cut on the negative real axis"

    def __call__(self, s):
        return self.eval(s)


LaplaceLike = Union[LaplaceFunction, Callable[[np.ndarray], np.ndarray]]


def _check_eps(eps: float) -> None:
    if not (0.0 < eps < 1.0):
        raise DomainError(f"target accuracy must lie in (0, 1), got eps={eps!r}")


def _balanced(eps: float) -> tuple[int, float, float]:
    # returns (N, h, mu * t)
    L = -math.log(eps)
    n = math.ceil(4 * L / (3 * math.pi))
    h = 2 * math.pi / L + L / (2 * math.pi * n**2)
    mu_t = L**3 / (4 * math.pi**2 * n**2)
    return n, h, mu_t


def optimal_params(t: float, eps: float = MACHINE_EPS) -> ContourPlan:
    """Error-balanced contour parameters for inverting at time ``t``.

    With ``L = -ln(eps)``::

        N  = ceil(4 L / (3 pi))
        h  = 2 pi / L + L / (2 pi N^2)
        mu = L^3 / (4 t pi^2 N^2)

    Only ``mu`` depends on ``t``.
    """
    if not t > 0:
        raise DomainError(f"contour parameters undefined at t={t!r}; need t > 0")
    _check_eps(eps)
    n, h, mu_t = _balanced(eps)
    return ContourPlan(mu=mu_t / t, h=h, n_nodes=n, eps=eps)


def invert(
    F: LaplaceLike,
    t_grid: Union[float, Sequence[float], np.ndarray],
    eps: float = MACHINE_EPS,
) -> np.ndarray:
    """Invert the Laplace transform ``F`` at the positive times ``t_grid``.

    Each time point gets its own contour (see :func:`optimal_params`). ``F``
    must be analytic off the closed negative real axis and map arrays of
    complex points to arrays of the same shape.

    Returns a real array with the shape of ``t_grid``.
    """
    t = np.asarray(t_grid, dtype=float)
    shape = t.shape
    t = t.reshape(-1)
    if t.size and not np.all(t > 0):
        raise DomainError("inversion requires strictly positive times")
    _check_eps(eps)
    if t.size == 0:
        return np.empty(shape)

    n, h, mu_t = _balanced(eps)
    u = np.arange(n + 1) * h
    mu = (mu_t / t)[:, None]
    z = mu * (1j * u + 1) ** 2
    dz = 2 * mu * (1j - u)

    with np.errstate(all="ignore"):
        Fz = np.asarray(F(z), dtype=complex)
    if Fz.shape != z.shape:
        Fz = np.broadcast_to(Fz, z.shape)
    bad = ~np.isfinite(Fz)
    if bad.any():
        i, k = np.argwhere(bad)[0]
        raise EvaluationError(
            f"non-finite transform value at node k={k}, s={z[i, k]!r} (t={t[i]!r})"
        )

    G = np.exp(mu_t * (1j * u + 1) ** 2) * Fz * dz
    f = (G[:, 0].imag / 2 + G[:, 1:].imag.sum(axis=1)) * h / math.pi
    return f.reshape(shape)

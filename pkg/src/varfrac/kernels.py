r"""Laplace-domain kernel pairs of variable-order operators.

For a transition with Laplace transform :math:`A(s)` the derivative and
integral kernels are

.. math::

    \Phi_{\alpha,n}(s) = s^{s A(s) - n}, \qquad \Psi_\alpha(s) = s^{-s A(s)},

so that :math:`\Phi_{\alpha,n}(s) \Psi_\alpha(s) s^n = 1`. Their time-domain
counterparts are only available through numerical Laplace inversion.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .contour import MACHINE_EPS, invert
from .exceptions import BranchCutError, DomainError, SingularPointError
from .transitions import TransitionFunction, TransitionKind

#: Angular offset used to approach the negative real axis from above.
SPECTRAL_DELTA = 1.0e-6


def complex_power(s: complex, g: complex) -> complex:
    """Principal-branch power ``s**g = exp(g Log s)``.

    >>> complex_power(4, 0.5)
    (2+0j)
    """
    s = complex(s)
    if s == 0:
        raise DomainError("complex_power is undefined at s = 0")
    if s.imag == 0 and s.real < 0:
        raise BranchCutError(f"s={s!r} lies on the branch cut of the principal logarithm")
    return complex(np.exp(complex(g) * np.log(s)))


def _cpow(s, g):
    return np.exp(g * np.log(s))


@dataclass(frozen=True)
class KernelPair:
    """The kernel pair generated by ``transition`` for orders in ``(n-1, n)``."""

    transition: TransitionFunction
    order_index: int = 1

    def exponent(self, s):
        """``s A(s)`` evaluated with the transition's stable formula."""
        return self.transition.s_times_laplace(s)

    def phi_laplace(self, s):
        """``Phi_{alpha,n}(s) = s^(s A(s) - n)``."""
        s = np.asarray(s, dtype=complex)
        return _cpow(s, self.exponent(s) - self.order_index)

    def psi_laplace(self, s):
        """``Psi_alpha(s) = s^(-s A(s))``."""
        s = np.asarray(s, dtype=complex)
        return _cpow(s, -self.exponent(s))

    def phi_j_laplace(self, j: int, s):
        """``s^(n-j-1) Phi_{alpha,n}(s) = s^(s A(s) - j - 1)``."""
        s = np.asarray(s, dtype=complex)
        return _cpow(s, self.exponent(s) - j - 1)


def kernel_pair(transition: TransitionFunction) -> KernelPair:
    """Kernel pair for an order function with values in ``(0, 1)``."""
    return higher_order_pair(transition, 1)


def higher_order_pair(transition: TransitionFunction, n: int) -> KernelPair:
    """Kernel pair for an order function with values in ``(n-1, n)``.

    The family members are monotone, so checking the two limit orders
    suffices. The constant order ``n`` itself is let through for the
    integral kernel; :func:`phi_kernel` refuses it.
    """
    if int(n) != n or n < 1:
        raise DomainError(f"order index must be an integer >= 1, got {n!r}")
    n = int(n)
    for name, a in (("alpha(0+)", transition.initial_order), ("alpha(inf)", transition.final_order)):
        if not (n - 1 < a <= n):
            raise DomainError(f"{name}={a!r} is outside ({n - 1}, {n}) required for n={n}")
    return KernelPair(transition, n)


def phi_kernel(pair: KernelPair, t_grid, eps: float = MACHINE_EPS) -> np.ndarray:
    """Derivative kernel ``phi_{alpha,n}(t)`` on ``t_grid`` (all ``t > 0``).

    Expect roughly 1e-6 relative accuracy rather than machine precision:
    the transform grows faster along the contour than the parameter choice
    assumes.
    """
    if pair.transition.initial_order >= pair.order_index:
        raise DomainError("Phi does not vanish at infinity for an integer order; phi is not a function")
    return invert(pair.phi_laplace, t_grid, eps)


def psi_kernel(pair: KernelPair, t_grid, eps: float = MACHINE_EPS) -> np.ndarray:
    """Integral kernel ``psi_alpha(t)`` on ``t_grid`` (all ``t > 0``)."""
    return invert(pair.psi_laplace, t_grid, eps)


def phi_j_kernel(pair: KernelPair, j: int, t_grid, eps: float = MACHINE_EPS) -> np.ndarray:
    """Auxiliary kernels ``phi_{alpha,j}``, the inverse of ``s^(n-j-1) Phi_{alpha,n}(s)``.

    The transform behaves like ``s^(alpha(0+) - j - 1)`` at infinity, so it is
    the transform of a function only when ``j + 1 > alpha(0+)``. Other
    values of ``j`` are rejected.
    """
    n = pair.order_index
    if int(j) != j or not (0 <= j <= n - 1):
        raise DomainError(f"j must be an integer in [0, {n - 1}], got {j!r}")
    j = int(j)
    growth = pair.transition.initial_order - j - 1
    if growth >= 0:
        raise DomainError(
            f"s^{n - j - 1} Phi_(alpha,{n})(s) grows like s^{growth:.3g} at infinity "
            "and is not the Laplace transform of a function"
        )
    return invert(lambda s: pair.phi_j_laplace(j, s), t_grid, eps)


def integrated_kernel(pair: KernelPair, which: str, t_grid, eps: float = MACHINE_EPS) -> np.ndarray:
    """Running integral ``int_0^t`` of the ``"phi"`` or ``"psi"`` kernel."""
    if which == "phi":
        F = lambda s: pair.phi_laplace(s) / s
    elif which == "psi":
        F = lambda s: pair.psi_laplace(s) / s
    else:
        raise DomainError(f"which must be 'phi' or 'psi', got {which!r}")
    return invert(F, t_grid, eps)


def _closed_form_exponent(pair: KernelPair) -> bool:
    return pair.transition.kind in (TransitionKind.Constant, TransitionKind.Exponential)


def spectral_density(pair: KernelPair, r_grid, delta: float = SPECTRAL_DELTA) -> np.ndarray:
    r"""Spectral density ``-(1/pi) Im Phi(r e^{i pi})`` on ``r_grid``.

    For constant and exponential transitions the boundary value is exact:
    with ``g(r) = (s A(s) - n)`` at ``s = -r`` the density is
    ``-(1/pi) r^g sin(pi g)``. Other families are evaluated just inside the
    cut plane at angle ``pi (1 - delta)``.
    """
    r = np.asarray(r_grid, dtype=float)
    if np.any(r <= 0):
        raise DomainError("spectral density requires r > 0")
    tr = pair.transition
    if _closed_form_exponent(pair):
        if tr.kind is TransitionKind.Exponential:
            near = np.abs(r - tr.c) < 1e-9
            if np.any(near):
                raise SingularPointError(
                    f"r={r[near][0]!r} is within 1e-9 of the singular point c={tr.c!r}"
                )
            g = tr.alpha1 + (tr.alpha2 - tr.alpha1) * tr.c / (tr.c - r)
        else:
            g = np.full_like(r, tr.alpha1)
        g = g + tr.offset - pair.order_index
        return -(r**g) * np.sin(np.pi * g) / np.pi
    s = r * np.exp(1j * np.pi * (1 - delta))
    return -np.imag(pair.phi_laplace(s)) / np.pi


@dataclass
class KochubeiReport:
    """Outcome of the sampled checks of conditions A1-A4.

    A1: ``Phi`` finite on the real sampling grid. A2: non-negative spectral
    density. A3: ``Phi -> 0`` and ``s Phi -> inf`` as ``s -> inf``.
    A4: ``Phi -> inf`` and ``s Phi -> 0`` as ``s -> 0``.
    """

    a1: bool
    a2: bool
    a3: bool
    a4: bool
    #: smallest sampled spectral density and where it occurs
    density_min: float
    density_argmin: float
    #: first sampled r (ascending) with a negative density, if any
    first_violation: Optional[float]
    witnesses: dict = field(default_factory=dict)

    @property
    def all_pass(self) -> bool:
        return self.a1 and self.a2 and self.a3 and self.a4


def kochubei_check(
    pair: KernelPair,
    r_grid: Optional[Sequence[float]] = None,
    sigma_grid: Optional[Sequence[float]] = None,
    tol: float = 1e-12,
) -> KochubeiReport:
    """Sample conditions A1-A4 for the derivative kernel of ``pair``.

    The limits in A3/A4 are judged from the three largest (smallest) points
    of ``sigma_grid``: the sequence must move monotonically in the required
    direction and cross 1.
    """
    r = np.sort(np.asarray(np.logspace(-3, 3, 601) if r_grid is None else r_grid, dtype=float))
    sig = np.sort(np.asarray(np.logspace(-8, 8, 17) if sigma_grid is None else sigma_grid, dtype=float))
    if sig.size < 3:
        raise DomainError("sigma_grid needs at least three points")

    phi = pair.phi_laplace(sig.astype(complex))
    a1 = bool(np.all(np.isfinite(phi)) and np.all(np.abs(phi.imag) <= 1e-12 * np.abs(phi.real)))
    phi = phi.real
    sphi = sig * phi

    hi, shi = phi[-3:], sphi[-3:]
    a3 = bool(np.all(np.diff(hi) < 0) and hi[-1] < 1 and np.all(np.diff(shi) > 0) and shi[-1] > 1)
    lo, slo = phi[:3], sphi[:3]
    a4 = bool(np.all(np.diff(lo) < 0) and lo[0] > 1 and np.all(np.diff(slo) > 0) and slo[0] < 1)

    K = spectral_density(pair, r)
    i = int(np.argmin(K))
    neg = np.flatnonzero(K < -tol)
    return KochubeiReport(
        a1=a1,
        a2=bool(K[i] >= -tol),
        a3=a3,
        a4=a4,
        density_min=float(K[i]),
        density_argmin=float(r[i]),
        first_violation=float(r[neg[0]]) if neg.size else None,
        witnesses={
            "sigma_large": sig[-3:].tolist(),
            "phi_large": hi.tolist(),
            "sigma_phi_large": shi.tolist(),
            "sigma_small": sig[:3].tolist(),
            "phi_small": lo.tolist(),
            "sigma_phi_small": slo.tolist(),
        },
    )

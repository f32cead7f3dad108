"""Time-domain check of the Sonine condition ``int_0^t phi(t-s) psi(s) ds = t^(n-1)/(n-1)!``.

Both kernels are weakly singular, ``psi`` at ``s = 0`` and ``phi(t - s)`` at
``s = t``. The interval is split at ``t/2`` and each half carries a mesh
graded towards its singular end. On every cell the singular factor is
integrated exactly (via its running integral, itself obtained by Laplace
inversion) and the smooth factor is frozen at the cell midpoint.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .contour import MACHINE_EPS
from .exceptions import DomainError, EvaluationError
from .kernels import KernelPair, integrated_kernel, phi_kernel, psi_kernel


@dataclass
class ConvolutionCheckReport:
    t_checkpoints: list = field(default_factory=list)
    values: list = field(default_factory=list)
    deviations: list = field(default_factory=list)
    mesh_size: int = 0
    grading_exponent: float = 0.0

    @property
    def max_deviation(self) -> float:
        return max(self.deviations, default=0.0)


def sonine_target(t: float, n: int = 1) -> float:
    """``t^(n-1) / (n-1)!``."""
    return t ** (n - 1) / math.factorial(n - 1)


def graded_half_mesh(t: float, mesh: int, grading: float) -> np.ndarray:
    """Nodes ``(t/2) (i/M)^grading`` for ``i = 0..M``."""
    i = np.arange(mesh + 1)
    return 0.5 * t * (i / mesh) ** grading


def sonine_convolve(
    pair: KernelPair,
    t: float,
    mesh: int = 4096,
    grading: float = 2.0,
    eps: float = MACHINE_EPS,
) -> float:
    """Approximate ``S(t) = int_0^t phi_{alpha,n}(t - s) psi_alpha(s) ds``."""
    if not t > 0:
        raise DomainError(f"t must be positive, got {t!r}")
    if mesh < 64:
        raise DomainError(f"mesh must be at least 64, got {mesh!r}")
    if grading < 1:
        raise DomainError(f"grading must be >= 1, got {grading!r}")

    nodes = graded_half_mesh(t, mesh, grading)
    mid = 0.5 * (nodes[1:] + nodes[:-1])
    # running integrals vanish at 0; only positive nodes are inverted
    I_psi = np.concatenate([[0.0], integrated_kernel(pair, "psi", nodes[1:], eps)])
    I_phi = np.concatenate([[0.0], integrated_kernel(pair, "phi", nodes[1:], eps)])
    phi_far = phi_kernel(pair, t - mid, eps)
    psi_far = psi_kernel(pair, t - mid, eps)

    total = np.dot(phi_far, np.diff(I_psi)) + np.dot(psi_far, np.diff(I_phi))
    if not math.isfinite(total):
        raise EvaluationError(f"non-finite convolution value at t={t!r}")
    return float(total)


def verify_pair(
    pair: KernelPair,
    t_checkpoints: Sequence[float] = (0.1, 0.5, 1.0, 2.0, 5.0),
    mesh: int = 4096,
    grading: float = 2.0,
    eps: float = MACHINE_EPS,
) -> ConvolutionCheckReport:
    """Run :func:`sonine_convolve` at every checkpoint and collect deviations."""
    report = ConvolutionCheckReport(mesh_size=mesh, grading_exponent=grading)
    for t in t_checkpoints:
        value = sonine_convolve(pair, t, mesh, grading, eps)
        report.t_checkpoints.append(float(t))
        report.values.append(value)
        report.deviations.append(abs(value - sonine_target(t, pair.order_index)))
    return report

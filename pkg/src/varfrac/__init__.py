"""Variable-order fractional operators defined through Laplace-domain kernels.

The order ``alpha(t)`` enters only through its Laplace transform ``A(s)``;
the derivative and integral kernels ``s^(s A(s) - 1)`` and ``s^(-s A(s))``
are inverted numerically on parabolic contours.
"""

from .contour import MACHINE_EPS, ContourPlan, LaplaceFunction, invert, optimal_params
from .exceptions import (
    BranchCutError,
    DomainError,
    EvaluationError,
    SingularPointError,
    SingularStepError,
    VarFracError,
)
from .kernels import (
    KernelPair,
    KochubeiReport,
    complex_power,
    higher_order_pair,
    integrated_kernel,
    kernel_pair,
    kochubei_check,
    phi_j_kernel,
    phi_kernel,
    psi_kernel,
    spectral_density,
)
from .relaxation import (
    CQScheme,
    RelaxationProblem,
    TimeSeries,
    cq_weights,
    reference_constant_solution,
    solve_cq,
    solve_lt,
)
from .sonine import ConvolutionCheckReport, sonine_convolve, verify_pair
from .special import gamma_fn, mittag_leffler
from .transitions import (
    TransitionFunction,
    TransitionKind,
    make_constant,
    make_erf,
    make_exponential,
    make_mittag_leffler,
)

__version__ = "0.1.0"

__all__ = [
    "MACHINE_EPS",
    "ContourPlan",
    "LaplaceFunction",
    "invert",
    "optimal_params",
    "BranchCutError",
    "DomainError",
    "EvaluationError",
    "SingularPointError",
    "SingularStepError",
    "VarFracError",
    "KernelPair",
    "KochubeiReport",
    "complex_power",
    "higher_order_pair",
    "integrated_kernel",
    "kernel_pair",
    "kochubei_check",
    "phi_j_kernel",
    "phi_kernel",
    "psi_kernel",
    "spectral_density",
    "CQScheme",
    "RelaxationProblem",
    "TimeSeries",
    "cq_weights",
    "reference_constant_solution",
    "solve_cq",
    "solve_lt",
    "ConvolutionCheckReport",
    "sonine_convolve",
    "verify_pair",
    "gamma_fn",
    "mittag_leffler",
    "TransitionFunction",
    "TransitionKind",
    "make_constant",
    "make_erf",
    "make_exponential",
    "make_mittag_leffler",
]

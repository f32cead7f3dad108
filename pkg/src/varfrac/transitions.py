"""Variable-order transition functions with closed-form Laplace transforms.

Each family moves monotonically from an initial order ``alpha1`` at
``t = 0`` to an asymptotic order ``alpha2`` as ``t -> infinity``:

* exponential:    ``alpha2 + (alpha1 - alpha2) exp(-c t)``
* Mittag-Leffler: ``alpha2 + (alpha1 - alpha2) E_beta(-c t^beta)``
* erf:            ``alpha1 + (alpha2 - alpha1) erf(sqrt(c t))``

Fractional powers and square roots use the principal branch, with the cut
on the negative real axis.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, replace

import numpy as np

from .exceptions import DomainError
from .special import mittag_leffler

_erf = np.vectorize(math.erf, otypes=[float])


class TransitionKind(enum.Enum):
    Constant = "const"
    Exponential = "exp"
    MittagLeffler = "mlf"
    Erf = "erf"


@dataclass(frozen=True)
class TransitionFunction:
    """An order function ``alpha(t)`` and its Laplace transform ``A(s)``.

    Instances are built by the ``make_*`` factories. ``offset`` shifts the
    whole order by an integer, which is how orders in ``(n-1, n)`` are
    represented (see :meth:`shifted`).
    """

    kind: TransitionKind
    alpha1: float
    alpha2: float
    c: float = 0.0
    beta: float = 1.0
    offset: int = 0

    @property
    def initial_order(self) -> float:
        """``alpha(0+)``."""
        return self.alpha1 + self.offset

    @property
    def final_order(self) -> float:
        """``lim alpha(t)`` as ``t -> infinity``."""
        return self.alpha2 + self.offset

    def eval_time(self, t):
        """Evaluate ``alpha(t)`` for ``t >= 0`` (scalar or array)."""
        t = np.asarray(t, dtype=float)
        if np.any(t < 0):
            raise DomainError("alpha(t) is defined for t >= 0 only")
        a1, a2, c = self.alpha1, self.alpha2, self.c
        k = self.kind
        if k is TransitionKind.Constant:
            out = np.full_like(t, a1)
        elif k is TransitionKind.Exponential:
            out = a2 + (a1 - a2) * np.exp(-c * t)
        elif k is TransitionKind.MittagLeffler:
            out = a2 + (a1 - a2) * np.asarray(mittag_leffler(self.beta, -c * t**self.beta))
        else:
            out = a1 + (a2 - a1) * _erf(np.sqrt(c * t))
        out = out + self.offset
        return float(out) if out.ndim == 0 else out

    def eval_laplace(self, s):
        """Evaluate ``A(s)`` at complex ``s`` off the negative real axis."""
        s = np.asarray(s, dtype=complex)
        a1, a2, c = self.alpha1, self.alpha2, self.c
        k = self.kind
        if k is TransitionKind.Constant:
            out = a1 / s
        elif k is TransitionKind.Exponential:
            out = (a2 * c + a1 * s) / (s * (c + s))
        elif k is TransitionKind.MittagLeffler:
            sb = np.exp(self.beta * np.log(s))
            out = (a2 * c + a1 * sb) / (s * (c + sb))
        else:
            out = a1 / s + (a2 - a1) * math.sqrt(c) / (s * np.sqrt(s + c))
        if self.offset:
            out = out + self.offset / s
        return out[()] if out.ndim == 0 else out

    def s_times_laplace(self, s):
        """``s A(s)`` in a form that stays accurate for large ``|s|``."""
        s = np.asarray(s, dtype=complex)
        a1, a2, c = self.alpha1, self.alpha2, self.c
        k = self.kind
        if k is TransitionKind.Constant:
            out = np.full_like(s, a1)
        elif k is TransitionKind.Exponential:
            out = a1 + (a2 - a1) * c / (c + s)
        elif k is TransitionKind.MittagLeffler:
            sb = np.exp(self.beta * np.log(s))
            out = a1 + (a2 - a1) * c / (c + sb)
        else:
            out = a1 + (a2 - a1) * math.sqrt(c) / np.sqrt(s + c)
        out = out + self.offset
        return out[()] if out.ndim == 0 else out

    def shifted(self, n: int) -> "TransitionFunction":
        """Return the same transition moved up by the integer ``n``."""
        if int(n) != n or n < 0:
            raise DomainError(f"shift must be a non-negative integer, got {n!r}")
        return replace(self, offset=self.offset + int(n))

    def to_dict(self) -> dict:
        d = {"transition": self.kind.value, "a1": self.alpha1, "a2": self.alpha2}
        if self.kind is not TransitionKind.Constant:
            d["c"] = self.c
        if self.kind is TransitionKind.MittagLeffler:
            d["beta"] = self.beta
        if self.offset:
            d["shift"] = self.offset
        return d


def _check_order(name: str, value: float) -> float:
    value = float(value)
    if not (0.0 < value < 1.0):
        raise DomainError(f"{name} must lie in (0, 1), got {value!r}")
    return value


def _check_rate(c: float) -> float:
    c = float(c)
    if not (c > 0 and math.isfinite(c)):
        raise DomainError(f"rate c must be positive, got {c!r}")
    return c


def make_constant(alpha: float) -> TransitionFunction:
    """Constant order ``alpha(t) = alpha``, ``A(s) = alpha / s``.

    ``alpha = 1`` is accepted as the classical first-order limit.
    """
    a = 1.0 if alpha == 1 else _check_order("alpha", alpha)
    return TransitionFunction(TransitionKind.Constant, a, a)


def make_exponential(alpha1: float, alpha2: float, c: float) -> TransitionFunction:
    """Exponential transition ``alpha2 + (alpha1 - alpha2) exp(-c t)``.

    ``A(s) = (alpha2 c + alpha1 s) / (s (c + s))``.
    """
    return TransitionFunction(
        TransitionKind.Exponential,
        _check_order("alpha1", alpha1),
        _check_order("alpha2", alpha2),
        _check_rate(c),
    )


def make_mittag_leffler(alpha1: float, alpha2: float, c: float, beta: float) -> TransitionFunction:
    """Mittag-Leffler transition ``alpha2 + (alpha1 - alpha2) E_beta(-c t^beta)``.

    ``A(s) = (alpha2 c + alpha1 s^beta) / (s (c + s^beta))``. With ``beta = 1``
    this coincides with :func:`make_exponential`.
    """
    beta = float(beta)
    if not (0.0 < beta <= 1.0):
        raise DomainError(f"beta must lie in (0, 1], got {beta!r}")
    return TransitionFunction(
        TransitionKind.MittagLeffler,
        _check_order("alpha1", alpha1),
        _check_order("alpha2", alpha2),
        _check_rate(c),
        beta,
    )


def make_erf(alpha1: float, alpha2: float, c: float) -> TransitionFunction:
    """erf transition ``alpha1 + (alpha2 - alpha1) erf(sqrt(c t))``.

    ``A(s) = alpha1 / s + (alpha2 - alpha1) sqrt(c) / (s sqrt(s + c))``.
    """
    return TransitionFunction(
        TransitionKind.Erf,
        _check_order("alpha1", alpha1),
        _check_order("alpha2", alpha2),
        _check_rate(c),
    )


def from_dict(params: dict) -> TransitionFunction:
    """Build a transition from ``{"transition": kind, "a1": .., ...}``."""
    kind = params.get("transition", "exp")
    try:
        if kind == "const":
            tr = make_constant(params["a1"])
        elif kind == "exp":
            tr = make_exponential(params["a1"], params["a2"], params["c"])
        elif kind == "mlf":
            tr = make_mittag_leffler(params["a1"], params["a2"], params["c"], params["beta"])
        elif kind == "erf":
            tr = make_erf(params["a1"], params["a2"], params["c"])
        else:
            raise DomainError(f"unknown transition kind {kind!r}")
    except KeyError as exc:
        raise DomainError(f"missing transition parameter {exc.args[0]!r}") from None
    shift = int(params.get("shift", 0) or 0)
    return tr.shifted(shift) if shift else tr

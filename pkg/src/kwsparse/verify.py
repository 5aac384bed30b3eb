"""Spectral-proximity test by trace powers.

For ``M = ((Lt - L) L^+ / eps)^2``, whose eigenvalues are real and
nonnegative, ``Tr(M^t) <= Tr(M)`` holds whenever every eigenvalue is at most
one, and fails once some eigenvalue exceeds ``(Tr M)^(1/t)``. Choosing
``t = ceil(ln Tr(M) / ln(1 + alpha))`` therefore separates ``Lt ≈_eps L`` from
``Lt`` not being an ``eps * sqrt(1 + alpha)`` approximation.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import Disconnected, OutOfRange
from .linalg import as_symmetric, kernel_basis, mat_power, perturbed_pseudoinverse, pseudoinverse, same_kernel, trace

COMPARE_SLACK = 1e-9


class Verdict(enum.Enum):
    YES = "YES"
    NO = "NO"

    def __bool__(self):
        return self is Verdict.YES

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class VerifierParams:
    eps: float
    alpha: float
    mode: str = "exact"  # "exact" or "solver"
    noise_seed: int = 1
    slack: float = COMPARE_SLACK

    def __post_init__(self):
        if not self.slack >= 0:
            raise OutOfRange(f"slack must be nonnegative, got {self.slack}")
        if not 0 < self.eps < 1:
            raise OutOfRange(f"eps must lie in (0, 1), got {self.eps}")
        if not self.alpha > 0:
            raise OutOfRange(f"alpha must be positive, got {self.alpha}")
        if self.mode not in ("exact", "solver"):
            raise OutOfRange(f"unknown verifier mode {self.mode!r}")

    @property
    def gamma(self) -> float:
        return gamma_for_alpha(self.alpha)


def gamma_for_alpha(alpha: float) -> float:
    """Solver accuracy with ``((1+g)/(1-g))^2 = 1 + alpha/(2+alpha)``."""
    if not alpha > 0 or not math.isfinite(alpha):
        raise OutOfRange(f"alpha must be positive, got {alpha}")
    return 1.0 - 2.0 / (1.0 + math.sqrt(1.0 + alpha / (2.0 + alpha)))


@dataclass(frozen=True)
class TraceStatistic:
    T: float
    t: int | None  # None when T <= 1 short-circuits
    value: float
    slack: float = COMPARE_SLACK

    @property
    def verdict(self) -> Verdict:
        if not math.isfinite(self.T):
            return Verdict.NO
        if self.t is None:
            return Verdict.YES
        return Verdict.YES if self.value <= self.T + self.slack * max(1.0, self.T) else Verdict.NO


def trace_power_statistic(
    L, Lt, eps, alpha, pinv, gamma=0.0, stats=None, slack=COMPARE_SLACK
) -> TraceStatistic:
    """``(T, t, Tr(M^t))`` for ``M = ((Lt - L) pinv / ((1 + gamma) eps))^2``.

    With ``gamma > 0`` (``pinv`` an approximate pseudoinverse) the exponent is
    calibrated to ``alpha / 2``, the margin that survives the perturbation.
    """
    C = (np.asarray(Lt, dtype=float) - np.asarray(L, dtype=float)) / eps
    with np.errstate(over="ignore", invalid="ignore"):
        K = C @ np.asarray(pinv, dtype=float) / (1.0 + gamma)
        M = K @ K
        T = trace(M)
    if not math.isfinite(T):
        return TraceStatistic(math.inf, None, math.inf, slack)
    if T <= 1.0:
        if stats is not None:
            stats["multiplications"] = 0
        return TraceStatistic(T, None, T, slack)
    growth = alpha / 2 if gamma > 0 else alpha
    t = max(1, math.ceil(math.log(T) / math.log1p(growth)))
    with np.errstate(over="ignore", invalid="ignore"):
        value = trace(mat_power(M, t, stats))
    if not math.isfinite(value):
        value = math.inf
    return TraceStatistic(T, t, value, slack)


def _is_connected_laplacian(L) -> bool:
    K = kernel_basis(L)
    if K.shape[1] != 1:
        return False
    ones = np.full(L.shape[0], 1 / math.sqrt(L.shape[0]))
    return bool(abs(abs(K[:, 0] @ ones) - 1.0) < 1e-6)


class Verifier:
    """The verifier bound to one reference Laplacian ``L``.

    The (possibly perturbed) pseudoinverse is computed once, so checking
    many candidates against the same ``L`` costs one power series each.
    """

    def __init__(self, L, params: VerifierParams):
        self.L = as_symmetric(L)
        self.params = params
        if not _is_connected_laplacian(self.L):
            raise Disconnected("reference Laplacian is not that of a connected graph")
        if params.mode == "exact":
            self.gamma = 0.0
            self.pinv = pseudoinverse(self.L)
        else:
            self.gamma = params.gamma
            self.pinv = perturbed_pseudoinverse(self.L, self.gamma, params.noise_seed)

    def statistic(self, Lt, stats=None) -> TraceStatistic:
        Lt = as_symmetric(Lt)
        p = self.params
        return trace_power_statistic(self.L, Lt, p.eps, p.alpha, self.pinv, self.gamma, stats, p.slack)

    def __call__(self, Lt, stats=None) -> Verdict:
        Lt = as_symmetric(Lt)
        if Lt.shape != self.L.shape:
            raise ValueError("Laplacians differ in size")
        if not same_kernel(self.L, Lt):
            return Verdict.NO
        return self.statistic(Lt, stats).verdict


def verify(L, Lt, params: VerifierParams, stats=None) -> Verdict:
    """YES whenever ``Lt ≈_eps L``; NO whenever ``Lt`` is not an
    ``eps * sqrt(1 + alpha)`` approximation of ``L``."""
    return Verifier(L, params)(Lt, stats)

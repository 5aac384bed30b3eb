"""Effective-resistance edge sampling driven by a k-wise independent space.

Each edge ``(a, b)`` gets probability ``p = min(1, w * R * s)`` truncated to
``t`` bits; a seed of the k-wise space decides which edges survive, and a
surviving edge is reweighted to ``w / p``. The truncated ``p`` is used both as
the sampling marginal and in the reweighting, which keeps the expected
Laplacian of the output equal to the input Laplacian.
"""

from __future__ import annotations

import math
import random
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import Disconnected, LengthMismatch, OutOfRange, ZeroProbabilityEdge
from .graph import WeightedGraph, is_connected
from .kwise import KWiseSpace, build_space, sample_at, sample_block, seed_count, truncate_marginals
from .resistance import ResistanceTable

SATURATION_SLACK = 1e-12


class ParameterWarning(UserWarning):
    """Parameters fall outside the regime where the accuracy guarantee is proved."""


@dataclass(frozen=True)
class SparsifyParams:
    """``k`` (even), ``eps``, ``delta`` and an optional fixed oversampling ``rate``.

    When ``rate`` is ``None`` the oversampling rate comes from
    :func:`oversampling_rate`.
    """

    k: int
    eps: float
    delta: float
    rate: float | None = None

    def __post_init__(self):
        if self.k < 2 or self.k % 2:
            raise OutOfRange(f"k must be a positive even integer, got {self.k}")
        if not 0 < self.eps < 1:
            raise OutOfRange(f"eps must lie in (0, 1), got {self.eps}")
        if not 0 < self.delta < 0.5:
            raise OutOfRange(f"delta must lie in (0, 1/2), got {self.delta}")
        if self.rate is not None and not self.rate > 0:
            raise OutOfRange(f"rate must be positive, got {self.rate}")

    def oversampling(self, n: int) -> float:
        if self.rate is not None:
            return float(self.rate)
        return oversampling_rate(n, self.k, self.eps, self.delta)


@dataclass(frozen=True, eq=False)
class SparsifierOutput:
    graph: WeightedGraph
    chosen: np.ndarray
    probs: np.ndarray

    @property
    def edge_count(self) -> int:
        return self.graph.m


def oversampling_rate(n: int, k: int, eps: float, delta: float) -> float:
    """``18 e ln(n) / eps^2 * (n / delta)^(2/k)``."""
    if n < 2:
        raise OutOfRange("need at least two vertices")
    if k < 1 or not eps > 0 or not delta > 0:
        raise OutOfRange("k, eps and delta must be positive")
    return 18 * math.e * math.log(n) / eps**2 * (n / delta) ** (2 / k)


def sampling_probabilities(G: WeightedGraph, R: ResistanceTable, s: float) -> np.ndarray:
    if len(R) != G.m:
        raise LengthMismatch(f"table has {len(R)} entries for {G.m} edges")
    raw = G.weights * R.values * s
    # Bridges have w * R = 1 exactly; do not let roundoff unsaturate them.
    return np.where(raw >= 1.0 - SATURATION_SLACK, 1.0, raw)


def adjust_for_alpha(R: ResistanceTable, alpha: float) -> ResistanceTable:
    """Divide by ``1 - alpha`` so a ``(1 ± alpha)`` table upper-bounds the truth."""
    if not 0 <= alpha < 1:
        raise OutOfRange(f"alpha must lie in [0, 1), got {alpha}")
    return ResistanceTable(R.values / (1 - alpha), R.gamma)


def _check_regime(n, k, s):
    if s <= 2 * math.e * math.log(n):
        warnings.warn(
            f"oversampling rate {s:.4g} is at most 2e ln n = {2 * math.e * math.log(n):.4g}",
            ParameterWarning,
            stacklevel=3,
        )
    if k > math.log2(n):
        warnings.warn(f"k={k} exceeds log2 n={math.log2(n):.3g}", ParameterWarning, stacklevel=3)


@dataclass(frozen=True, eq=False)
class SparsifyPlan:
    """Truncated probabilities and their k-wise space, shared by all seeds."""

    graph: WeightedGraph
    probs: np.ndarray
    space: KWiseSpace | None

    @property
    def seed_count(self) -> int:
        return 1 if self.space is None else seed_count(self.space)

    def realize(self, chosen) -> SparsifierOutput:
        chosen = np.asarray(chosen, dtype=bool)
        G = self.graph
        with np.errstate(divide="ignore"):
            new_w = G.weights / self.probs
        return SparsifierOutput(G.select(chosen, new_w), chosen, self.probs)

    def output(self, seed: int) -> SparsifierOutput:
        if self.space is None:
            return SparsifierOutput(self.graph, np.ones(self.graph.m, dtype=bool), self.probs)
        return self.realize(sample_at(self.space, seed))

    def chosen_block(self, seeds) -> np.ndarray:
        if self.space is None:
            return np.ones((len(seeds), self.graph.m), dtype=bool)
        return sample_block(self.space, seeds)


def plan_from_probabilities(G: WeightedGraph, probs, k: int, t: int) -> SparsifyPlan:
    """Plan for already-truncated probabilities (multiples of ``2**-t``)."""
    probs = np.asarray(probs, dtype=float)
    if probs.size != G.m:
        raise LengthMismatch(f"{probs.size} probabilities for {G.m} edges")
    if G.m == 0:
        return SparsifyPlan(G, probs, None)
    space = build_space(probs, k, t)
    if not np.array_equal(space.marginals, probs):
        raise OutOfRange(f"probabilities are not multiples of 2^-{t}")
    if np.any(probs == 0):
        raise ZeroProbabilityEdge("an edge has sampling probability zero")
    return SparsifyPlan(G, probs, space)


def plan_sparsify(G: WeightedGraph, R: ResistanceTable, params: SparsifyParams, t: int) -> SparsifyPlan:
    if G.n == 1 or G.m == 0:
        return SparsifyPlan(G, np.ones(G.m), None)
    if not is_connected(G):
        raise Disconnected("sparsification needs a connected graph")
    s = params.oversampling(G.n)
    _check_regime(G.n, params.k, s)
    raw = sampling_probabilities(G, R, s)
    probs = truncate_marginals(raw, t)
    lost = (raw > 0) & (probs == 0)
    if np.any(lost):
        raise ZeroProbabilityEdge(
            f"{int(lost.sum())} edge(s) truncate to probability 0 at t={t}; raise t"
        )
    return plan_from_probabilities(G, probs, params.k, t)


def sparsify_with_seed(
    G: WeightedGraph, R: ResistanceTable, params: SparsifyParams, t: int, seed: int
) -> SparsifierOutput:
    return plan_sparsify(G, R, params, t).output(seed)


def sparsify_random(G, R, params: SparsifyParams, t: int, rng) -> SparsifierOutput:
    """Draw a uniform seed with ``rng`` (a :class:`random.Random` or an int seed)."""
    if not isinstance(rng, random.Random):
        rng = random.Random(rng)
    plan = plan_sparsify(G, R, params, t)
    return plan.output(rng.randrange(plan.seed_count))

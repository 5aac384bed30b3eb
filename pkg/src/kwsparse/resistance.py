"""Effective resistances of graph edges, exact or from a perturbed pseudoinverse."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import Disconnected, LengthMismatch, OutOfRange
from .graph import WeightedGraph, is_connected, laplacian
from .linalg import perturbed_pseudoinverse, pseudoinverse


@dataclass(frozen=True)
class ResistanceTable:
    """Per-edge resistances aligned with the graph's canonical edge order.

    ``gamma`` is ``None`` for exact tables and the multiplicative accuracy
    otherwise.
    """

    values: np.ndarray
    gamma: float | None = None

    @property
    def exact(self) -> bool:
        return self.gamma is None

    def __len__(self):
        return len(self.values)


def _edge_quadratic_forms(G: WeightedGraph, P: np.ndarray) -> np.ndarray:
    u, v = G.endpoints
    return P[u, u] + P[v, v] - 2 * P[u, v]


def _require_connected(G):
    if not is_connected(G):
        raise Disconnected("effective resistances need a connected graph")


def effective_resistances_exact(G: WeightedGraph) -> ResistanceTable:
    _require_connected(G)
    if G.m == 0:
        return ResistanceTable(np.zeros(0))
    return ResistanceTable(_edge_quadratic_forms(G, pseudoinverse(laplacian(G))))


def effective_resistances_approx(G: WeightedGraph, gamma: float, noise_seed: int) -> ResistanceTable:
    """Resistances within a factor ``1 ± gamma`` of exact.

    All values come from one perturbed pseudoinverse, so the weighted sum
    also stays within ``1 ± gamma`` of ``n - 1``.
    """
    if not 0 < gamma < 1:
        raise OutOfRange(f"gamma must lie in (0, 1), got {gamma}")
    _require_connected(G)
    if G.m == 0:
        return ResistanceTable(np.zeros(0), gamma)
    P = perturbed_pseudoinverse(laplacian(G), gamma, noise_seed)
    return ResistanceTable(_edge_quadratic_forms(G, P), gamma)


def foster_residual(G: WeightedGraph, R: ResistanceTable) -> float:
    """``sum(w * R) - (n - 1)``; zero for exact tables on connected graphs."""
    if len(R) != G.m:
        raise LengthMismatch(f"table has {len(R)} entries for {G.m} edges")
    return float(np.dot(G.weights, R.values) - (G.n - 1))

"""Shared fixtures and independent oracles.

The oracles deliberately avoid the package's own linear algebra: resistances
come from grounded-Laplacian solves and spectral approximation from scipy's
generalized symmetric eigensolver on the complement of the all-ones vector.
"""

from __future__ import annotations

import numpy as np
import pytest
import scipy.linalg

from kwsparse.graph import WeightedGraph


def random_connected_graph(rng: np.random.Generator, n: int, extra: float = 0.3,
                           wlow: float = 0.1, whigh: float = 10.0) -> WeightedGraph:
    """Random spanning tree plus each remaining pair with probability ``extra``."""
    order = rng.permutation(n)
    pairs = {}
    for i in range(1, n):
        a, b = int(order[i]), int(order[rng.integers(i)])
        pairs[(min(a, b), max(a, b))] = None
    for a in range(n):
        for b in range(a + 1, n):
            if (a, b) not in pairs and rng.random() < extra:
                pairs[(a, b)] = None
    return WeightedGraph.from_edges(n, [(a, b, float(rng.uniform(wlow, whigh))) for a, b in pairs])


def dense_laplacian(n, edges):
    L = np.zeros((n, n))
    for a, b, w in edges:
        L[a, a] += w
        L[b, b] += w
        L[a, b] -= w
        L[b, a] -= w
    return L


def grounded_resistances(G: WeightedGraph) -> np.ndarray:
    """Effective resistances by grounding vertex 0 and solving linear systems."""
    L = dense_laplacian(G.n, G.edges)
    Lg = L[1:, 1:]
    out = []
    for a, b, _ in G.edges:
        rhs = np.zeros(G.n)
        rhs[a], rhs[b] = 1.0, -1.0
        x = np.zeros(G.n)
        x[1:] = np.linalg.solve(Lg, rhs[1:])
        out.append(x[a] - x[b])
    return np.array(out)


def complement_basis(n: int) -> np.ndarray:
    """Orthonormal basis of the vectors summing to zero."""
    Q, _ = np.linalg.qr(np.eye(n) - 1.0 / n)
    return Q[:, : n - 1]


def oracle_ratios(A, B) -> np.ndarray:
    """Eigenvalues of ``x'Ax / x'Bx`` on the sum-zero subspace (B connected)."""
    Q = complement_basis(A.shape[0])
    return scipy.linalg.eigh(Q.T @ A @ Q, Q.T @ B @ Q, eigvals_only=True)


def oracle_approx(A, B, eps, tol=1e-9) -> bool:
    r = oracle_ratios(A, B)
    return bool(r.min() >= 1 - eps - tol and r.max() <= 1 + eps + tol)


def clmul_mod(a: int, b: int, poly: int, degree: int) -> int:
    """Carry-less product reduced modulo ``poly``, bit by bit."""
    prod = 0
    for i in range(degree):
        if (b >> i) & 1:
            prod ^= a << i
    for i in range(2 * degree - 2, degree - 1, -1):
        if (prod >> i) & 1:
            prod ^= poly << (i - degree)
    return prod


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = getattr(config, "_acceptance_results", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)

"""Dense symmetric linear algebra on numpy arrays.

Symmetric matrices are plain ``float`` ndarrays. Every routine that needs a
rank decision uses :func:`zero_threshold`, so pseudoinverses, square roots
and kernel comparisons agree on which eigenvalues count as zero.
"""

from __future__ import annotations

import io
from dataclasses import dataclass

import numpy as np

from .errors import KernelMismatch, NoConvergence, NotPSD, OutOfRange

SPECTRAL_TOL = 1e-9
KERNEL_TOL = 1e-6


@dataclass(frozen=True)
class EigenDecomposition:
    values: np.ndarray  # ascending
    vectors: np.ndarray  # orthonormal columns

    def reconstruct(self) -> np.ndarray:
        return (self.vectors * self.values) @ self.vectors.T


def as_symmetric(M) -> np.ndarray:
    """Validate squareness and return the exactly symmetric part of ``M``."""
    M = np.asarray(M, dtype=float)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {M.shape}")
    return (M + M.T) / 2


def jacobi_eigh(M, tol=1e-12, max_sweeps=100) -> EigenDecomposition:
    """Cyclic Jacobi rotations until the off-diagonal mass is below ``tol * ||M||_F``."""
    A = as_symmetric(M).copy()
    n = A.shape[0]
    V = np.eye(n)
    scale = np.linalg.norm(A)
    if scale == 0.0 or n == 1:
        return EigenDecomposition(np.diag(A).copy(), V)
    for _ in range(max_sweeps):
        off = np.linalg.norm(A - np.diag(np.diag(A)))
        if off < tol * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                if abs(apq) < 1e-300:
                    continue
                theta = (A[q, q] - A[p, p]) / (2 * apq)
                t = np.sign(theta) / (abs(theta) + np.hypot(theta, 1.0)) if theta else 1.0
                c = 1 / np.sqrt(t * t + 1)
                s = t * c
                Ap, Aq = A[:, p].copy(), A[:, q].copy()
                A[:, p], A[:, q] = c * Ap - s * Aq, s * Ap + c * Aq
                Ap, Aq = A[p, :].copy(), A[q, :].copy()
                A[p, :], A[q, :] = c * Ap - s * Aq, s * Ap + c * Aq
                Vp, Vq = V[:, p].copy(), V[:, q].copy()
                V[:, p], V[:, q] = c * Vp - s * Vq, s * Vp + c * Vq
    else:
        raise NoConvergence(f"Jacobi did not converge in {max_sweeps} sweeps")
    values = np.diag(A).copy()
    order = np.argsort(values, kind="stable")
    return EigenDecomposition(values[order], V[:, order])


def eigen_sym(M, method="lapack") -> EigenDecomposition:
    """Full eigendecomposition of a symmetric matrix, eigenvalues ascending.

    ``method="jacobi"`` selects the pure-numpy cyclic Jacobi routine, which
    is slow but independent of LAPACK.
    """
    if method == "jacobi":
        return jacobi_eigh(M)
    if method != "lapack":
        raise ValueError(f"unknown method {method!r}")
    S = as_symmetric(M)
    try:
        values, vectors = np.linalg.eigh(S)
    except np.linalg.LinAlgError as exc:
        raise NoConvergence(str(exc)) from exc
    return EigenDecomposition(values, vectors)


def zero_threshold(values: np.ndarray) -> float:
    if values.size == 0:
        return 0.0
    return values.size * np.finfo(float).eps * float(np.max(np.abs(values)))


def _split(dec: EigenDecomposition):
    nonzero = np.abs(dec.values) > zero_threshold(dec.values)
    return nonzero


def pseudoinverse(M) -> np.ndarray:
    dec = eigen_sym(M)
    nz = _split(dec)
    inv = np.zeros_like(dec.values)
    inv[nz] = 1.0 / dec.values[nz]
    return as_symmetric((dec.vectors * inv) @ dec.vectors.T)


def _psd_values(M):
    dec = eigen_sym(M)
    norm = float(np.max(np.abs(dec.values))) if dec.values.size else 0.0
    if dec.values.size and dec.values[0] < -1e-8 * norm:
        raise NotPSD(f"smallest eigenvalue {dec.values[0]:.3e} is negative")
    values = np.where(_split(dec), dec.values, 0.0)
    return dec, np.clip(values, 0.0, None)


def psd_sqrt(M) -> np.ndarray:
    dec, values = _psd_values(M)
    return as_symmetric((dec.vectors * np.sqrt(values)) @ dec.vectors.T)


def pinv_sqrt(M) -> np.ndarray:
    """``(M^+)^{1/2}``, which equals ``(M^{1/2})^+``."""
    dec, values = _psd_values(M)
    root = np.zeros_like(values)
    pos = values > 0
    root[pos] = 1.0 / np.sqrt(values[pos])
    return as_symmetric((dec.vectors * root) @ dec.vectors.T)


def projection_pi(n: int) -> np.ndarray:
    """Orthogonal projection onto the complement of the all-ones vector."""
    if n < 1:
        raise OutOfRange("n must be positive")
    return np.eye(n) - np.full((n, n), 1.0 / n)


def kernel_basis(M) -> np.ndarray:
    dec = eigen_sym(M)
    return dec.vectors[:, ~_split(dec)]


def same_kernel(A, B, tol=KERNEL_TOL) -> bool:
    KA, KB = kernel_basis(A), kernel_basis(B)
    if KA.shape[1] != KB.shape[1]:
        return False
    return bool(np.max(np.abs(KA @ KA.T - KB @ KB.T), initial=0.0) <= tol)


def relative_spectrum(A, B) -> np.ndarray:
    """Eigenvalues of ``B^{+/2} A B^{+/2}`` on the image of ``B``.

    Raises :class:`KernelMismatch` if ``A`` and ``B`` have different kernels.
    """
    A, B = as_symmetric(A), as_symmetric(B)
    if A.shape != B.shape:
        raise ValueError("matrices differ in shape")
    if not same_kernel(A, B):
        raise KernelMismatch("matrices have different kernels")
    dec = eigen_sym(B)
    nz = _split(dec)
    U = dec.vectors[:, nz]
    scale = 1.0 / np.sqrt(dec.values[nz])
    S = (U.T @ A @ U) * scale[:, None] * scale[None, :]
    return np.linalg.eigvalsh(as_symmetric(S))


def approximation_error(A, B) -> float:
    """Smallest eps with ``A ≈_eps B`` (up to roundoff)."""
    mu = relative_spectrum(A, B)
    if mu.size == 0:
        return 0.0
    return float(max(1.0 - mu[0], mu[-1] - 1.0, 0.0))


def spectral_approx_check(A, B, eps: float, tol: float = SPECTRAL_TOL) -> bool:
    """True iff ``(1-eps) B ⪯ A ⪯ (1+eps) B``."""
    mu = relative_spectrum(A, B)
    if mu.size == 0:
        return True
    return bool(mu[0] >= 1 - eps - tol and mu[-1] <= 1 + eps + tol)


def perturbed_pseudoinverse(M, gamma: float, noise_seed: int) -> np.ndarray:
    """A deterministic stand-in for an approximate Laplacian solver.

    Each nonzero eigenvalue of ``M^+`` is multiplied by its own factor drawn
    uniformly from ``[1 - gamma, 1 + gamma]``; eigenvectors are untouched, so
    the result is ``gamma``-spectrally close to ``M^+``. Seed 0 is reserved
    for the exact pseudoinverse.
    """
    if not 0 < gamma < 1:
        raise OutOfRange(f"gamma must lie in (0, 1), got {gamma}")
    dec, values = _psd_values(M)
    pos = values > 0
    inv = np.zeros_like(values)
    inv[pos] = 1.0 / values[pos]
    if noise_seed != 0:
        rng = np.random.default_rng(noise_seed)
        inv[pos] *= rng.uniform(1.0 - gamma, 1.0 + gamma, size=int(pos.sum()))
    return as_symmetric((dec.vectors * inv) @ dec.vectors.T)


def trace(M) -> float:
    return float(np.trace(np.asarray(M)))


def mat_power(M, j: int, stats: dict | None = None) -> np.ndarray:
    """``M**j`` by repeated squaring; ``stats['multiplications']`` counts products."""
    if j < 0:
        raise OutOfRange("exponent must be nonnegative")
    M = np.asarray(M, dtype=float)
    result = None
    base = M
    mults = 0
    while j:
        if j & 1:
            if result is None:
                result = base
            else:
                result = result @ base
                mults += 1
        j >>= 1
        if j:
            base = base @ base
            mults += 1
    if stats is not None:
        stats["multiplications"] = mults
    return np.eye(M.shape[0]) if result is None else result


def spectral_radius_sym(M) -> float:
    values = eigen_sym(M).values
    return float(np.max(np.abs(values))) if values.size else 0.0


def format_matrix(M) -> str:
    M = np.asarray(M, dtype=float)
    rows = [" ".join(repr(float(x)) for x in row) for row in M]
    return "\n".join([str(M.shape[0]), *rows]) + "\n"


def parse_matrix(text: str) -> np.ndarray:
    lines = [ln for ln in io.StringIO(text).read().splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty matrix text")
    dim = int(lines[0])
    if len(lines) != dim + 1:
        raise ValueError(f"expected {dim} rows, found {len(lines) - 1}")
    M = np.array([[float(x) for x in ln.split()] for ln in lines[1:]])
    if M.shape != (dim, dim):
        raise ValueError(f"matrix is not {dim}x{dim}")
    return M

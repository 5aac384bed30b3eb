"""Deterministic sparsification by enumerating a k-wise independent space.

Every seed of the space yields a candidate sparsifier. Candidates are tried
in ascending seed order and the first one that is both sparse enough and
accepted by the trace-power verifier is returned. With ``delta = 1/4`` at
least half of all seeds qualify, so the search is short in practice; the
enumeration cap bounds it regardless.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import Disconnected, EmptyGraph, ExhaustedSeeds, LengthMismatch, OutOfRange
from .graph import WeightedGraph, is_connected, laplacian, max_weighted_degree
from .resistance import ResistanceTable, effective_resistances_approx
from .sparsify import SATURATION_SLACK, SparsifyPlan, oversampling_rate, plan_from_probabilities
from .verify import Verdict, Verifier, VerifierParams

DELTA = 0.25
VERIFIER_ALPHA = 9 / 16
DEFAULT_CAP = 1 << 24


@dataclass(frozen=True)
class DerandConfig:
    k: int
    eps: float
    enumeration_cap: int = DEFAULT_CAP
    parallel_width: int = 1
    noise_seed: int = 1  # 0 selects exact resistances and the exact verifier
    block_size: int = 256

    def __post_init__(self):
        if self.k < 2 or self.k % 2:
            raise OutOfRange(f"k must be a positive even integer, got {self.k}")
        if not 0 < self.eps < 1:
            raise OutOfRange(f"eps must lie in (0, 1), got {self.eps}")
        if self.enumeration_cap < 1 or self.parallel_width < 1 or self.block_size < 1:
            raise OutOfRange("cap, parallel width and block size must be positive")


@dataclass(frozen=True)
class DerivedConstants:
    delta: float
    eps_hat: float
    alpha: float
    alpha_prime: float
    s: float
    t: int
    threshold: int


@dataclass(frozen=True)
class CandidateReport:
    seed_index: int
    edge_count: int
    verifier_verdict: Verdict | None  # None: sparsity failed, verifier not run
    accepted: bool

    def line(self, threshold: int) -> str:
        return (
            f"seed={self.seed_index} edges={self.edge_count} "
            f"threshold={threshold} verdict={self.verifier_verdict or 'SKIPPED'}"
        )


def _quantum_bits(alpha_prime: float) -> int:
    """Smallest t with ``2**-t <= alpha_prime``."""
    inv = 1 / Fraction(alpha_prime)
    t = max(1, math.ceil(math.log2(inv)) - 1)
    while Fraction(2) ** t < inv:
        t += 1
    while t > 1 and Fraction(2) ** (t - 1) >= inv:
        t -= 1
    return t


def derived_constants(G: WeightedGraph, config: DerandConfig) -> DerivedConstants:
    if G.m == 0:
        raise EmptyGraph("graph has no edges")
    if not is_connected(G):
        raise Disconnected("derandomized sparsification needs a connected graph")
    eps_hat = 4 * config.eps / 5
    # Probabilities are invariant under scaling all weights, so graphs with
    # sub-unit weights are treated as if rescaled to minimum weight 1.
    z = min(1.0, float(G.weights.min()))
    alpha = z / (2 * max_weighted_degree(G))
    alpha_prime = alpha / (4 + alpha)
    s = oversampling_rate(G.n, config.k, eps_hat, DELTA)
    t = _quantum_bits(alpha_prime)
    spread = (1 + 0.5) / (1 - 0.5)
    threshold = math.ceil((1 / DELTA) * spread * s * (G.n - 1))
    return DerivedConstants(DELTA, eps_hat, alpha, alpha_prime, s, t, threshold)


def truncated_probabilities(
    G: WeightedGraph, R: ResistanceTable, s: float, alpha_prime: float
) -> np.ndarray:
    """``min(1, w R s / (1 - alpha'))`` floored to the grid ``2**-t``,
    ``t = ceil(log2(1/alpha'))``."""
    if len(R) != G.m:
        raise LengthMismatch(f"table has {len(R)} entries for {G.m} edges")
    t = _quantum_bits(alpha_prime)
    raw = G.weights * R.values * s / (1 - alpha_prime)
    raw = np.where(raw >= 1.0 - SATURATION_SLACK, 1.0, raw)
    return np.floor(np.ldexp(raw, t)) / float(1 << t)


def _scan_block(plan: SparsifyPlan, verifier: Verifier, seeds: range, threshold: int):
    """First accepted candidate in ``seeds`` plus the best candidate seen."""
    chosen = plan.chosen_block(seeds)
    counts = chosen.sum(axis=1)
    best = None
    for offset, seed in enumerate(seeds):
        count = int(counts[offset])
        if count > threshold:
            report = CandidateReport(seed, count, None, False)
        else:
            H = plan.realize(chosen[offset]).graph
            verdict = verifier(laplacian(H))
            report = CandidateReport(seed, count, verdict, verdict is Verdict.YES)
            if report.accepted:
                return report, report, H
        if best is None or _rank(report) < _rank(best):
            best = report
    return None, best, None


def _rank(report: CandidateReport):
    return (report.verifier_verdict is not Verdict.YES, report.edge_count, report.seed_index)


def derandomized_sparsify(G: WeightedGraph, config: DerandConfig):
    """Return ``(H, report)`` for the lowest-index acceptable seed.

    Raises :class:`ExhaustedSeeds` if no seed below the enumeration cap
    qualifies. The answer does not depend on ``parallel_width``.
    """
    consts = derived_constants(G, config)
    R = effective_resistances_approx(G, consts.alpha_prime, config.noise_seed)
    probs = truncated_probabilities(G, R, consts.s, consts.alpha_prime)
    plan = plan_from_probabilities(G, probs, config.k, consts.t)
    mode = "solver" if config.noise_seed else "exact"
    verifier = Verifier(
        laplacian(G), VerifierParams(consts.eps_hat, VERIFIER_ALPHA, mode, config.noise_seed)
    )
    stop = min(plan.seed_count, config.enumeration_cap)
    blocks = [range(a, min(stop, a + config.block_size)) for a in range(0, stop, config.block_size)]

    best = None
    if config.parallel_width == 1:
        results = (_scan_block(plan, verifier, b, consts.threshold) for b in blocks)
        for accepted, block_best, H in results:
            if accepted is not None:
                return H, accepted
            best = block_best if best is None or _rank(block_best) < _rank(best) else best
    else:
        # Blocks are submitted in a sliding window and consumed in order, so
        # the first acceptance found is the lowest-index one.
        window = 2 * config.parallel_width
        with ThreadPoolExecutor(max_workers=config.parallel_width) as pool:
            pending = []
            it = iter(blocks)
            for b in it:
                pending.append(pool.submit(_scan_block, plan, verifier, b, consts.threshold))
                if len(pending) >= window:
                    break
            while pending:
                accepted, block_best, H = pending.pop(0).result()
                if accepted is not None:
                    for f in pending:
                        f.cancel()
                    return H, accepted
                best = block_best if best is None or _rank(block_best) < _rank(best) else best
                nxt = next(it, None)
                if nxt is not None:
                    pending.append(pool.submit(_scan_block, plan, verifier, nxt, consts.threshold))
    raise ExhaustedSeeds(
        f"no acceptable seed among the first {stop} of {plan.seed_count}", best=best, tried=stop
    )

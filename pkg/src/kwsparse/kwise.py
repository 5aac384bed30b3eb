"""k-wise independent sample spaces over {0,1}^m with dyadic marginals.

A seed is read as ``k`` coefficients of a polynomial ``f`` of degree below
``k`` over GF(2^F), where ``F = max(t, ceil(log2 m))``. Coordinate ``i`` is 1
iff the integer encoding of ``f(i)`` falls below ``floor(2^t p_i) * 2^(F-t)``.
Evaluations of a uniformly random such polynomial at any ``k`` distinct
points are independent and uniform on the field, so every set of at most
``k`` coordinates is an exact product of Bernoulli bits.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .errors import EnumerationOverflow, OutOfRange, SeedOutOfRange, TooLarge

# Primitive (hence irreducible) polynomials over GF(2), one per degree, as
# bit masks including the leading term.
_POLY_TERMS = {
    1: (1, 0),
    2: (2, 1, 0),
    3: (3, 1, 0),
    4: (4, 1, 0),
    5: (5, 2, 0),
    6: (6, 4, 3, 1, 0),
    7: (7, 1, 0),
    8: (8, 4, 3, 2, 0),
    9: (9, 4, 0),
    10: (10, 6, 5, 3, 2, 1, 0),
    11: (11, 2, 0),
    12: (12, 7, 6, 5, 3, 1, 0),
    13: (13, 4, 3, 1, 0),
    14: (14, 7, 5, 3, 0),
    15: (15, 5, 4, 2, 0),
    16: (16, 5, 3, 2, 0),
    17: (17, 3, 0),
    18: (18, 12, 10, 1, 0),
    19: (19, 5, 2, 1, 0),
    20: (20, 10, 9, 7, 6, 5, 4, 1, 0),
    21: (21, 6, 5, 2, 0),
    22: (22, 12, 11, 10, 9, 8, 6, 5, 0),
    23: (23, 5, 0),
    24: (24, 16, 15, 14, 13, 10, 9, 7, 5, 3, 0),
    25: (25, 8, 6, 2, 0),
    26: (26, 14, 10, 8, 7, 6, 4, 1, 0),
    27: (27, 12, 10, 9, 7, 5, 3, 2, 0),
    28: (28, 13, 7, 6, 5, 2, 0),
    29: (29, 2, 0),
    30: (30, 17, 16, 13, 11, 7, 5, 3, 2, 1, 0),
    31: (31, 3, 0),
    32: (32, 15, 9, 7, 4, 3, 0),
}
IRREDUCIBLE = {deg: sum(1 << e for e in terms) for deg, terms in _POLY_TERMS.items()}
MAX_FIELD_LOG = max(IRREDUCIBLE)

BRUTEFORCE_LIMIT = 1 << 24
_BLOCK = 1 << 14


def gf_mul(a, b, degree: int):
    """Elementwise product in GF(2^degree); inputs broadcast as uint64 arrays."""
    poly = np.uint64(IRREDUCIBLE[degree])
    top = np.uint64(1 << degree)
    a = np.array(a, dtype=np.uint64)
    b = np.array(b, dtype=np.uint64)
    a, b = np.broadcast_arrays(a, b)
    a = a.copy()
    result = np.zeros(a.shape, dtype=np.uint64)
    one = np.uint64(1)
    zero = np.uint64(0)
    for bit in range(degree):
        result ^= np.where((b >> np.uint64(bit)) & one, a, zero)
        a <<= one
        a ^= np.where(a & top, poly, zero)
    return result


def truncate_marginals(p, t: int) -> np.ndarray:
    """``floor(2^t p) / 2^t`` for each entry."""
    return _numerators(p, t) / float(1 << t)


def _numerators(p, t: int) -> np.ndarray:
    if t < 1:
        raise OutOfRange(f"precision t must be at least 1, got {t}")
    p = np.asarray(p, dtype=float)
    if np.any(~np.isfinite(p)) or np.any(p < 0) or np.any(p > 1):
        raise OutOfRange("marginals must lie in [0, 1]")
    return np.floor(np.ldexp(p, t)).astype(np.int64)


@dataclass(frozen=True, eq=False)
class KWiseSpace:
    m: int
    k: int
    t: int
    field_log: int
    numerators: np.ndarray  # floor(2^t p_i)

    @property
    def marginals(self) -> np.ndarray:
        return self.numerators / float(1 << self.t)

    @property
    def thresholds(self) -> np.ndarray:
        return self.numerators.astype(np.uint64) << np.uint64(self.field_log - self.t)

    @property
    def seed_bits(self) -> int:
        return self.k * self.field_log


def build_space(p, k: int, t: int) -> KWiseSpace:
    p = np.atleast_1d(np.asarray(p, dtype=float))
    if k < 1:
        raise OutOfRange(f"k must be positive, got {k}")
    if p.size < 1:
        raise OutOfRange("need at least one coordinate")
    numerators = _numerators(p, t)
    m = int(p.size)
    field_log = max(t, (m - 1).bit_length())
    if field_log > MAX_FIELD_LOG:
        raise OutOfRange(f"field GF(2^{field_log}) exceeds the supported 2^{MAX_FIELD_LOG}")
    return KWiseSpace(m, int(k), int(t), field_log, numerators)


def seed_count(space: KWiseSpace) -> int:
    return 1 << space.seed_bits


def enumerate_seeds(space: KWiseSpace, cap: int | None = None) -> Iterator[int]:
    """All seed indices in ascending order."""
    count = seed_count(space)
    if cap is not None and count > cap:
        raise EnumerationOverflow(f"space has 2^{space.seed_bits} seeds, cap is {cap}")
    return iter(range(count))


def _coefficients(space: KWiseSpace, seeds) -> np.ndarray:
    """Decode seeds into a ``(len(seeds), k)`` array, constant term first."""
    F = space.field_log
    mask = (1 << F) - 1
    if isinstance(seeds, range) and seeds.stop <= (1 << 63):
        idx = np.arange(seeds.start, seeds.stop, dtype=np.uint64)
        shifts = np.arange(space.k, dtype=np.uint64) * np.uint64(F)
        if space.seed_bits <= 64:
            return (idx[:, None] >> shifts[None, :]) & np.uint64(mask)
    return np.array(
        [[(s >> (j * F)) & mask for j in range(space.k)] for s in seeds], dtype=np.uint64
    ).reshape(len(seeds), space.k)


def _evaluate(space: KWiseSpace, coeffs: np.ndarray) -> np.ndarray:
    points = np.arange(space.m, dtype=np.uint64)[None, :]
    acc = np.broadcast_to(coeffs[:, -1:], (coeffs.shape[0], space.m)).copy()
    for j in range(space.k - 2, -1, -1):
        acc = gf_mul(acc, points, space.field_log) ^ coeffs[:, j : j + 1]
    return acc


def sample_block(space: KWiseSpace, seeds) -> np.ndarray:
    """Boolean matrix with one row per seed in ``seeds`` (a range or sequence)."""
    count = seed_count(space)
    for s in (seeds[0], seeds[-1]) if len(seeds) else ():
        if not 0 <= s < count:
            raise SeedOutOfRange(f"seed {s} outside [0, {count})")
    values = _evaluate(space, _coefficients(space, seeds))
    return values < space.thresholds[None, :]


def sample_at(space: KWiseSpace, seed: int) -> np.ndarray:
    seed = int(seed)
    if not 0 <= seed < seed_count(space):
        raise SeedOutOfRange(f"seed {seed} outside [0, {seed_count(space)})")
    return sample_block(space, [seed])[0]


def iter_blocks(space: KWiseSpace, stop: int | None = None, block: int = _BLOCK):
    """Yield ``(start, samples)`` blocks covering seeds ``[0, stop)``."""
    stop = seed_count(space) if stop is None else min(stop, seed_count(space))
    for start in range(0, stop, block):
        yield start, sample_block(space, range(start, min(stop, start + block)))


def outcome_counts(space: KWiseSpace, subset, limit: int = BRUTEFORCE_LIMIT) -> np.ndarray:
    """Number of seeds producing each pattern on ``subset`` (bit j = coordinate subset[j])."""
    return _all_counts(space, [tuple(subset)], limit)[tuple(subset)]


def _all_counts(space, subsets, limit):
    count = seed_count(space)
    if count > limit:
        raise TooLarge(f"space has {count} seeds, enumeration limit is {limit}")
    counts = {I: np.zeros(1 << len(I), dtype=np.int64) for I in subsets}
    for _, block in iter_blocks(space):
        block = block.astype(np.int64)
        for I, acc in counts.items():
            idx = np.zeros(block.shape[0], dtype=np.int64)
            for j, coord in enumerate(I):
                idx |= block[:, coord] << j
            acc += np.bincount(idx, minlength=len(acc))
    return counts


def check_kwise_bruteforce(space: KWiseSpace, k_check: int, limit: int = BRUTEFORCE_LIMIT) -> bool:
    """Exhaustively compare every joint law on at most ``k_check`` coordinates
    with the product of the truncated marginals. Integer arithmetic only."""
    subsets = [
        I for r in range(1, min(k_check, space.m) + 1) for I in itertools.combinations(range(space.m), r)
    ]
    counts = _all_counts(space, subsets, limit)
    total = seed_count(space)
    one = 1 << space.t
    for I, acc in counts.items():
        for pattern, observed in enumerate(acc):
            expected = total
            for j, coord in enumerate(I):
                num = int(space.numerators[coord])
                expected *= num if (pattern >> j) & 1 else one - num
            # observed / total == expected / (total * 2^(t|I|))
            if int(observed) << (space.t * len(I)) != expected:
                return False
    return True


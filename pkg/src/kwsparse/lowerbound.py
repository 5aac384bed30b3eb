"""Bounded-independence edge distributions that disconnect the graph.

Both constructions split the vertices by a uniformly random partition and
never keep an edge that crosses it. Everything here is computed exactly by
enumerating the randomness; probabilities are :class:`fractions.Fraction`.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import comb, prod

import numpy as np

from .errors import InsufficientCoins, LengthMismatch, OutOfRange, TooLarge
from .graph import WeightedGraph, components, is_connected
from .fixtures import complete

PARTITION_LIMIT = 24
THREEWISE_LIMIT = 1 << 26


def partition_sample(G: WeightedGraph, partition) -> np.ndarray:
    """Keep an edge iff both endpoints lie on the same side of ``partition``."""
    partition = np.asarray(partition, dtype=np.int64)
    if partition.size != G.n:
        raise LengthMismatch(f"partition has {partition.size} entries for {G.n} vertices")
    u, v = G.endpoints
    return partition[u] == partition[v]


def three_wise_complete_sample(n: int, partition, inner_coins, inner_partition) -> np.ndarray:
    """One draw on the edges of K_n (canonical order).

    Inside side 0 each pair is kept on its own fair coin, consumed in
    lexicographic pair order; inside side 1 a pair is kept iff it crosses
    ``inner_partition``; pairs across sides are dropped.
    """
    partition = np.asarray(partition, dtype=np.int64)
    inner_partition = np.asarray(inner_partition, dtype=np.int64)
    if partition.size != n or inner_partition.size != n:
        raise LengthMismatch("partition vectors must have one entry per vertex")
    coins = iter(inner_coins)
    kept = np.zeros(comb(n, 2), dtype=bool)
    for idx, (a, b) in enumerate(itertools.combinations(range(n), 2)):
        if partition[a] != partition[b]:
            continue
        if partition[a] == 0:
            try:
                kept[idx] = bool(next(coins))
            except StopIteration:
                raise InsufficientCoins("coin stream ran out inside side 0") from None
        else:
            kept[idx] = inner_partition[a] != inner_partition[b]
    return kept


class PartitionDistribution:
    """Uniform partition of the vertices; keep same-side edges.

    Each edge column is held as a ``2**n``-bit integer whose bit ``p`` says
    whether partition ``p`` keeps the edge, so joint probabilities are
    popcounts of bitwise ANDs.
    """

    def __init__(self, graph: WeightedGraph):
        if graph.n > PARTITION_LIMIT:
            raise TooLarge(f"2^{graph.n} partitions exceed the 2^{PARTITION_LIMIT} limit")
        self.graph = graph
        self.total = 1 << graph.n
        self.full = (1 << self.total) - 1
        side = [self._vertex_bits(v) for v in range(graph.n)]
        self.columns = [self.full & ~(side[u] ^ side[v]) for u, v, _ in graph.edges]

    def _vertex_bits(self, v: int) -> int:
        # Bit p is set iff vertex v is on side 1 in partition p: blocks of
        # 2**v zeros followed by 2**v ones, repeated.
        block = ((1 << (1 << v)) - 1) << (1 << v)
        pattern = 0
        period = 1 << (v + 1)
        for start in range(0, self.total, period):
            pattern |= block << start
        return pattern

    @property
    def m(self) -> int:
        return self.graph.m

    def marginals(self) -> list[Fraction]:
        return [Fraction(c.bit_count(), self.total) for c in self.columns]

    def prob_all(self, subset) -> Fraction:
        acc = self.full
        for e in subset:
            acc &= self.columns[e]
        return Fraction(acc.bit_count(), self.total)

    def joint(self, subset) -> dict[tuple[int, ...], Fraction]:
        table = {}
        for pattern in itertools.product((0, 1), repeat=len(subset)):
            acc = self.full
            for e, bit in zip(subset, pattern):
                acc &= self.columns[e] if bit else self.full & ~self.columns[e]
            table[pattern] = Fraction(acc.bit_count(), self.total)
        return table

    def outcomes(self):
        """``(probability, kept-mask)`` per partition."""
        weight = Fraction(1, self.total)
        bits = np.arange(self.graph.n)
        for p in range(self.total):
            yield weight, partition_sample(self.graph, (p >> bits) & 1)


class ThreeWiseCompleteDistribution:
    """Fair coins inside side 0, a random complete bipartite graph inside side 1.

    Outcomes are enumerated with their exact probabilities: only the coins
    and inner-partition bits that influence the sample are enumerated.
    """

    def __init__(self, n: int):
        if n < 2:
            raise OutOfRange("need at least two vertices")
        self.n = n
        self.graph = complete(n)
        size = sum(
            comb(n, j) * (1 << (comb(j, 2) + n - j)) for j in range(n + 1)
        )
        if size > THREEWISE_LIMIT:
            raise TooLarge(f"{size} outcomes exceed the limit {THREEWISE_LIMIT}")
        samples, weights = [], []
        exponent = n + comb(n, 2) + n
        for p in range(1 << n):
            partition = [(p >> v) & 1 for v in range(n)]
            side0 = [v for v in range(n) if not partition[v]]
            side1 = [v for v in range(n) if partition[v]]
            n_coins = comb(len(side0), 2)
            bits = n + n_coins + len(side1)
            for coins in range(1 << n_coins):
                coin_bits = [(coins >> j) & 1 for j in range(n_coins)]
                for inner in range(1 << len(side1)):
                    inner_partition = [0] * n
                    for j, v in enumerate(side1):
                        inner_partition[v] = (inner >> j) & 1
                    samples.append(three_wise_complete_sample(n, partition, coin_bits, inner_partition))
                    weights.append(1 << (exponent - bits))
        self.samples = np.array(samples, dtype=bool)
        self.weights = weights
        self.denominator = 1 << exponent

    @property
    def m(self) -> int:
        return self.graph.m

    def _mass(self, mask) -> Fraction:
        return Fraction(sum(w for w, keep in zip(self.weights, mask) if keep), self.denominator)

    def marginals(self) -> list[Fraction]:
        return [self._mass(self.samples[:, e]) for e in range(self.m)]

    def prob_all(self, subset) -> Fraction:
        return self._mass(np.all(self.samples[:, list(subset)], axis=1))

    def joint(self, subset) -> dict[tuple[int, ...], Fraction]:
        cols = self.samples[:, list(subset)]
        return {
            pattern: self._mass(np.all(cols == np.array(pattern, dtype=bool), axis=1))
            for pattern in itertools.product((0, 1), repeat=len(subset))
        }

    def outcomes(self):
        for w, row in zip(self.weights, self.samples):
            yield Fraction(w, self.denominator), row


def exact_joint_distribution(dist, edge_subset) -> dict[tuple[int, ...], Fraction]:
    """Exact law of the kept/dropped pattern on ``edge_subset``."""
    return dist.joint(list(edge_subset))


def independence_failure(dist, max_size: int | None = None):
    """Smallest edge subset whose joint law is not the product of marginals.

    A law on bits is determined by the probabilities that all bits of each
    sub-subset are 1, so it suffices to compare those moments, size by size.
    Returns ``None`` if every subset up to ``max_size`` passes.
    """
    marg = dist.marginals()
    max_size = dist.m if max_size is None else min(max_size, dist.m)
    for r in range(1, max_size + 1):
        for subset in itertools.combinations(range(dist.m), r):
            if dist.prob_all(subset) != prod((marg[e] for e in subset), start=Fraction(1)):
                return subset
    return None


def independence_order(dist) -> int:
    """Largest k such that every set of at most k edges is independent."""
    witness = independence_failure(dist)
    return dist.m if witness is None else len(witness) - 1


def disconnection_probability(dist) -> Fraction:
    """Probability that the kept edges leave some vertex unreachable."""
    graph = dist.graph
    cache: dict[bytes, bool] = {}
    total = Fraction(0)
    for weight, mask in dist.outcomes():
        key = np.packbits(mask).tobytes()
        if key not in cache:
            cache[key] = not is_connected(graph.select(mask))
        if cache[key]:
            total += weight
    return total


def disconnected_samples(dist, weight_scale: float = 1.0) -> list[WeightedGraph]:
    """Distinct disconnected outcomes as weighted subgraphs (weight ``w * scale``)."""
    graph = dist.graph
    seen = set()
    found = []
    for _, mask in dist.outcomes():
        key = np.packbits(mask).tobytes()
        if key in seen:
            continue
        seen.add(key)
        H = graph.select(mask, graph.weights * weight_scale)
        if len(set(components(H))) > 1:
            found.append(H)
    return found


def moore_bound_check(n: int, d: int, g: int) -> bool:
    """Whether ``n >= 2((d-1)^(g/2) - 1)/(d - 2)``; even girth only."""
    if d < 3:
        raise OutOfRange("the Moore bound form needs degree at least 3")
    if g < 2 or g % 2:
        raise OutOfRange("only the even-girth form is implemented")
    return Fraction(n) >= Fraction(2 * ((d - 1) ** (g // 2) - 1), d - 2)

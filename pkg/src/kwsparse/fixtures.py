"""Named test graphs: complete graphs, cycles, paths, stars and two cages."""

from __future__ import annotations

import itertools

from .graph import WeightedGraph, girth


def complete(n: int) -> WeightedGraph:
    return WeightedGraph.from_edges(n, itertools.combinations(range(n), 2))


def cycle(n: int) -> WeightedGraph:
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    return WeightedGraph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def path(n: int, weights=None) -> WeightedGraph:
    weights = [1.0] * (n - 1) if weights is None else list(weights)
    return WeightedGraph.from_edges(n, [(i, i + 1, w) for i, w in zip(range(n - 1), weights)])


def star(weights) -> WeightedGraph:
    weights = list(weights)
    return WeightedGraph.from_edges(len(weights) + 1, [(0, i + 1, w) for i, w in enumerate(weights)])


def _regular_with_girth(G: WeightedGraph, degree: int, expected_girth: int) -> WeightedGraph:
    adj = G.adjacency_lists()
    assert all(len(a) == degree for a in adj), "fixture is not regular"
    assert girth(G) == expected_girth, "fixture has the wrong girth"
    return G


def petersen() -> WeightedGraph:
    """The (3,5)-cage: 10 vertices, 15 edges."""
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(i + 5, (i + 2) % 5 + 5) for i in range(5)]
    return _regular_with_girth(WeightedGraph.from_edges(10, outer + spokes + inner), 3, 5)


def heawood() -> WeightedGraph:
    """The (3,6)-cage: 14 vertices, 21 edges, LCF notation [5, -5]^7."""
    ring = [(i, (i + 1) % 14) for i in range(14)]
    chords = [(i, (i + 5) % 14) for i in range(0, 14, 2)]
    return _regular_with_girth(WeightedGraph.from_edges(14, ring + chords), 3, 6)


def fixtures() -> dict[str, WeightedGraph]:
    """Every named fixture used across the test and acceptance suites."""
    named = {f"complete:{n}": complete(n) for n in range(3, 13)}
    named.update({f"cycle:{n}": cycle(n) for n in range(3, 13)})
    named["petersen"] = petersen()
    named["heawood"] = heawood()
    return named


def by_name(name: str) -> WeightedGraph:
    """Resolve ``petersen``, ``heawood``, ``complete:n``, ``cycle:n`` or ``path:n``."""
    if name == "petersen":
        return petersen()
    if name == "heawood":
        return heawood()
    kind, _, size = name.partition(":")
    builders = {"complete": complete, "cycle": cycle, "path": path}
    if kind not in builders or not size.isdigit():
        raise ValueError(f"unknown fixture {name!r}")
    return builders[kind](int(size))

"""Graph sources: exhaustive labeled enumeration, seeded G(n, p), named families.

Random graphs use SplitMix64 (Steele, Lea & Flood 2014), fixed here by its
constants so that corpora are bit-identical across platforms and languages:

    state += 0x9E3779B97F4A7C15
    z = state
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB
    return z ^ (z >> 31)            # all arithmetic mod 2**64

A draw is turned into a uniform double as ``(z >> 11) * 2**-53`` and the edge
``(i, j)`` is kept when that double is ``< p``.  Edges are visited in graph6
order: ``(0,1), (0,2), (1,2), (0,3), ...``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterator

import numpy as np

from .errors import OutOfRangeError, TooLargeError, UnknownFamilyError
from .graph import Graph, from_edges, is_connected, read_graph6_file
from .invariants import girth

MAX_EXHAUSTIVE = 8
_MASK64 = (1 << 64) - 1


class SplitMix64:
    def __init__(self, seed: int):
        self.state = seed & _MASK64

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def random(self) -> float:
        return (self.next_u64() >> 11) * 2.0 ** -53

    def below(self, bound: int) -> int:
        """Uniform integer in ``0..bound-1`` (rejection sampling, no modulo bias)."""
        limit = (1 << 64) - (1 << 64) % bound
        while True:
            z = self.next_u64()
            if z < limit:
                return z % bound


def edge_order(n: int) -> list[tuple[int, int]]:
    """Edges of K_n in graph6 (column) order; bit ``b`` of an edge mask is edge ``b``."""
    return [(i, j) for j in range(1, n) for i in range(j)]


def graph_from_mask(n: int, mask: int) -> Graph:
    return from_edges(n, [e for b, e in enumerate(edge_order(n)) if mask >> b & 1])


def _passes(G: Graph, connected: bool, min_degree: int, min_girth: int | None) -> bool:
    if min_degree and G.min_degree < min_degree:
        return False
    if connected and not is_connected(G):
        return False
    if min_girth is not None:
        g = girth(G)
        if g is not None and g < min_girth:
            return False
    return True


def enumerate_labeled(
    n: int, connected: bool = False, min_degree: int = 0, min_girth: int | None = None
) -> Iterator[Graph]:
    """All ``2^(n(n-1)/2)`` labeled graphs on ``n`` vertices in edge-mask order, filtered."""
    if n < 1:
        raise OutOfRangeError("n must be at least 1")
    if n > MAX_EXHAUSTIVE:
        raise TooLargeError(f"exhaustive enumeration is capped at n={MAX_EXHAUSTIVE}")
    edges = edge_order(n)
    for mask in range(1 << len(edges)):
        G = from_edges(n, [e for b, e in enumerate(edges) if mask >> b & 1])
        if _passes(G, connected, min_degree, min_girth):
            yield G


def random_gnp(n: int, p: float, seed: int) -> Graph:
    if not 0.0 <= p <= 1.0:
        raise ValueError("p must lie in [0, 1]")
    rng = SplitMix64(seed)
    return from_edges(n, [e for e in edge_order(n) if rng.random() < p])


def gnp_stream(n: int, p: float, count: int, seed: int) -> Iterator[Graph]:
    """``count`` independent samples drawn from one SplitMix64 stream."""
    rng = SplitMix64(seed)
    edges = edge_order(n)
    for _ in range(count):
        yield from_edges(n, [e for e in edges if rng.random() < p])


# named families

def complete(n: int) -> Graph:
    return from_edges(n, combinations(range(n), 2))


def cycle(n: int) -> Graph:
    if n < 3:
        raise ValueError("cycles need n >= 3")
    return from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def path(n: int) -> Graph:
    return from_edges(n, [(i, i + 1) for i in range(n - 1)])


def complete_bipartite(a: int, b: int) -> Graph:
    return from_edges(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def star(leaves: int) -> Graph:
    """K_{1,leaves}: centre 0 joined to ``leaves`` vertices."""
    return from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return from_edges(10, outer + spokes + inner)


def heawood() -> Graph:
    """Incidence graph of the Fano plane: a 14-cycle with chords ``i -- i+5`` at even ``i``."""
    ring = [(i, (i + 1) % 14) for i in range(14)]
    chords = [(i, (i + 5) % 14) for i in range(0, 14, 2)]
    return from_edges(14, ring + chords)


FAMILIES = {
    "complete": (complete, 1),
    "cycle": (cycle, 1),
    "path": (path, 1),
    "complete_bipartite": (complete_bipartite, 2),
    "star": (star, 1),
    "petersen": (petersen, 0),
    "heawood": (heawood, 0),
}


def named(family: str, *params: int) -> Graph:
    try:
        build, arity = FAMILIES[family]
    except KeyError:
        raise UnknownFamilyError(f"unknown family {family!r}; known: {sorted(FAMILIES)}") from None
    if len(params) != arity:
        raise ValueError(f"{family} takes {arity} integer parameter(s), got {len(params)}")
    return build(*params)


def parse_named(text: str) -> Graph:
    """``"petersen"``, ``"cycle:8"``, ``"complete_bipartite:3,3"``."""
    family, _, rest = text.partition(":")
    params = [int(x) for x in rest.split(",")] if rest else []
    return named(family.strip(), *params)


@dataclass(frozen=True)
class CorpusSpec:
    """Where a campaign's graphs come from.

    ``kind`` is one of ``exhaustive``, ``random``, ``named`` or ``file``.
    """

    kind: str
    n: int = 0
    connected: bool = True
    min_degree: int = 0
    min_girth: int | None = None
    p: float = 0.0
    count: int = 0
    seed: int | None = None
    names: tuple[str, ...] = field(default_factory=tuple)
    path: str = ""

    def __post_init__(self):
        if self.kind not in ("exhaustive", "random", "named", "file"):
            raise ValueError(f"unknown corpus kind {self.kind!r}")
        if self.kind == "exhaustive" and not 1 <= self.n <= MAX_EXHAUSTIVE:
            raise TooLargeError(f"exhaustive corpora need 1 <= n <= {MAX_EXHAUSTIVE}")
        if self.kind == "random" and self.seed is None:
            raise ValueError("random corpora need an explicit seed")

    def describe(self) -> dict:
        if self.kind == "exhaustive":
            return {"kind": "exhaustive", "n": self.n, "connected": self.connected,
                    "min_degree": self.min_degree, "min_girth": self.min_girth}
        if self.kind == "random":
            return {"kind": "random", "n": self.n, "p": self.p, "count": self.count, "seed": self.seed}
        if self.kind == "named":
            return {"kind": "named", "names": list(self.names)}
        return {"kind": "file", "path": self.path}


def iter_corpus(spec: CorpusSpec) -> Iterator[Graph]:
    if spec.kind == "exhaustive":
        yield from enumerate_labeled(spec.n, spec.connected, spec.min_degree, spec.min_girth)
    elif spec.kind == "random":
        yield from gnp_stream(spec.n, spec.p, spec.count, spec.seed)
    elif spec.kind == "named":
        for name in spec.names:
            yield parse_named(name)
    else:
        yield from read_graph6_file(spec.path)


def mask_range(n: int) -> int:
    return 1 << (n * (n - 1) // 2)


def masks_array(n: int, start: int = 0, stop: int | None = None) -> np.ndarray:
    """Edge masks ``start..stop-1`` for vectorised consumers, as int64."""
    stop = mask_range(n) if stop is None else stop
    return np.arange(start, stop, dtype=np.int64)

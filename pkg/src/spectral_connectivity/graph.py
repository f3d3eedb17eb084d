"""Immutable simple graphs on vertices ``0..n-1`` and graph6 I/O.

Vertex sets are passed around as plain iterables of ints and normalised to
``frozenset``; internally most loops use int bitmasks (bit ``v`` set means
vertex ``v`` is a member).
"""

from __future__ import annotations

from collections import deque
from typing import Iterable

from .errors import (
    BadCharError,
    EmptyOrFullError,
    FullDeletionError,
    Graph6Error,
    OutOfRangeError,
    SelfLoopError,
    TruncatedBitsError,
)

VertexSet = frozenset


class Graph:
    """A simple undirected graph. Build with :func:`from_edges`."""

    __slots__ = ("n", "adj", "masks", "edges", "_hash")

    def __init__(self, n: int, adj: tuple[tuple[int, ...], ...]):
        self.n = n
        self.adj = adj
        self.masks = tuple(sum(1 << u for u in nbrs) for nbrs in adj)
        self.edges = tuple((i, j) for i in range(n) for j in adj[i] if i < j)
        self._hash = hash((n, adj))

    def __eq__(self, other):
        return isinstance(other, Graph) and self.n == other.n and self.adj == other.adj

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.num_edges}, g6={write_graph6(self)!r})"

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def degree(self, v: int) -> int:
        if not 0 <= v < self.n:
            raise OutOfRangeError(f"vertex {v} not in 0..{self.n - 1}")
        return len(self.adj[v])

    def degrees(self) -> list[int]:
        return [len(a) for a in self.adj]

    @property
    def min_degree(self) -> int:
        return min(self.degrees())

    @property
    def max_degree(self) -> int:
        return max(self.degrees())

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.masks[u] >> v & 1)

    def is_complete(self) -> bool:
        return self.num_edges == self.n * (self.n - 1) // 2


def from_edges(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    """Build a simple graph; duplicate edges collapse, self-loops are rejected."""
    if n < 1:
        raise OutOfRangeError("a graph needs at least one vertex")
    nbrs: list[set[int]] = [set() for _ in range(n)]
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise OutOfRangeError(f"edge ({u}, {v}) has an endpoint outside 0..{n - 1}")
        if u == v:
            raise SelfLoopError(u)
        nbrs[u].add(v)
        nbrs[v].add(u)
    return Graph(n, tuple(tuple(sorted(s)) for s in nbrs))


def to_mask(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def from_mask(mask: int) -> frozenset[int]:
    out = []
    v = 0
    while mask:
        if mask & 1:
            out.append(v)
        mask >>= 1
        v += 1
    return frozenset(out)


def _check_members(G: Graph, X) -> int:
    mask = X if isinstance(X, int) else to_mask(X)
    if mask >> G.n:
        raise OutOfRangeError("vertex set has members outside the graph")
    return mask


def cut_degree(G: Graph, X) -> int:
    """Number of edges with exactly one endpoint in ``X``."""
    mask = _check_members(G, X)
    if mask == 0 or mask == G.full_mask:
        raise EmptyOrFullError("cut_degree needs a nonempty proper subset")
    return _cut_degree_mask(G, mask)


def _cut_degree_mask(G: Graph, mask: int) -> int:
    out = ~mask & G.full_mask
    total = 0
    for v in range(G.n):
        if mask >> v & 1:
            total += (G.masks[v] & out).bit_count()
    return total


def component_masks(G: Graph, within: int | None = None) -> list[int]:
    """Connected components of ``G[within]`` as bitmasks, ordered by least vertex."""
    remaining = G.full_mask if within is None else within
    comps = []
    while remaining:
        seed = remaining & -remaining
        comp = seed
        frontier = seed
        while frontier:
            nxt = 0
            f = frontier
            while f:
                low = f & -f
                nxt |= G.masks[low.bit_length() - 1]
                f ^= low
            frontier = nxt & remaining & ~comp
            comp |= frontier
        comps.append(comp)
        remaining &= ~comp
    return comps


def components(G: Graph) -> list[frozenset[int]]:
    return [from_mask(c) for c in component_masks(G)]


def is_connected(G: Graph) -> bool:
    return len(component_masks(G)) == 1


def bfs_distances(G: Graph, source: int) -> list[int | None]:
    dist: list[int | None] = [None] * G.n
    dist[source] = 0
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for w in G.adj[u]:
            if dist[w] is None:
                dist[w] = dist[u] + 1
                queue.append(w)
    return dist


def induced_delete(G: Graph, S) -> tuple[Graph, list[int]]:
    """Return ``G - S`` relabelled contiguously and the map new label -> old label."""
    mask = _check_members(G, S)
    if mask == G.full_mask:
        raise FullDeletionError("cannot delete every vertex")
    keep = [v for v in range(G.n) if not mask >> v & 1]
    new_label = {old: new for new, old in enumerate(keep)}
    edges = [(new_label[u], new_label[v]) for u, v in G.edges if u in new_label and v in new_label]
    return from_edges(len(keep), edges), keep


# graph6: https://users.cecs.anu.edu.au/~bdm/data/formats.txt

def _edge_order(n: int):
    for j in range(1, n):
        for i in range(j):
            yield i, j


def _encode_n(n: int) -> str:
    if n <= 62:
        return chr(n + 63)
    if n <= 258047:
        return "~" + "".join(chr(((n >> s) & 63) + 63) for s in (12, 6, 0))
    return "~~" + "".join(chr(((n >> s) & 63) + 63) for s in (30, 24, 18, 12, 6, 0))


def write_graph6(G: Graph) -> str:
    bits = [1 if G.has_edge(i, j) else 0 for i, j in _edge_order(G.n)]
    bits += [0] * (-len(bits) % 6)
    body = []
    for k in range(0, len(bits), 6):
        value = 0
        for b in bits[k:k + 6]:
            value = value << 1 | b
        body.append(chr(value + 63))
    return _encode_n(G.n) + "".join(body)


def _sextets(text: str) -> list[int]:
    out = []
    for ch in text:
        code = ord(ch) - 63
        if not 0 <= code <= 63:
            raise BadCharError(f"character {ch!r} outside the graph6 range")
        out.append(code)
    return out


def parse_graph6(text: str) -> Graph:
    line = text.strip()
    if line.startswith(">>graph6<<"):
        line = line[len(">>graph6<<"):]
    data = _sextets(line)
    if not data:
        raise TruncatedBitsError("empty graph6 string")
    if data[0] != 63:
        n, pos = data[0], 1
    elif len(data) >= 2 and data[1] == 63:
        if len(data) < 8:
            raise TruncatedBitsError("truncated 8-byte order field")
        n = 0
        for d in data[2:8]:
            n = n << 6 | d
        pos = 8
    else:
        if len(data) < 4:
            raise TruncatedBitsError("truncated 4-byte order field")
        n = data[1] << 12 | data[2] << 6 | data[3]
        pos = 4
    m = n * (n - 1) // 2
    need = -(-m // 6)
    body = data[pos:]
    if len(body) < need:
        raise TruncatedBitsError(f"expected {need} edge bytes, found {len(body)}")
    if len(body) > need:
        raise Graph6Error(f"{len(body) - need} trailing bytes after the edge field")
    if n == 0:
        raise Graph6Error("graph6 string encodes the null graph")
    edges = []
    for k, (i, j) in enumerate(_edge_order(n)):
        if body[k // 6] >> (5 - k % 6) & 1:
            edges.append((i, j))
    return from_edges(n, edges)


def read_graph6_file(path) -> list[Graph]:
    with open(path) as fh:
        return [parse_graph6(line) for line in fh if line.strip()]


def write_graph6_file(path, graphs: Iterable[Graph]) -> None:
    with open(path, "w") as fh:
        for G in graphs:
            fh.write(write_graph6(G) + "\n")

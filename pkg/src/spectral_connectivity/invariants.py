"""Exact structural invariants: girth, clique number, edge and vertex connectivity.

These are the ground truth every spectral condition is judged against, so
they are exact (BFS, Bron-Kerbosch, unit-capacity max-flow), never
approximations.
"""

from __future__ import annotations

from collections import deque

from .errors import CompleteGraphError, DisconnectedError, DomainError, TooSmallError
from .graph import Graph, component_masks, from_mask


def girth(G: Graph) -> int | None:
    """Length of a shortest cycle, or ``None`` when ``G`` is a forest.

    Runs a BFS from every vertex; a non-tree edge ``uw`` met from root ``r``
    closes a walk of length ``d(u) + d(w) + 1`` that contains a cycle at most
    that long, and the root on a shortest cycle realises its length exactly.
    """
    best = None
    for root in range(G.n):
        dist = [-1] * G.n
        parent = [-1] * G.n
        dist[root] = 0
        queue = deque([root])
        while queue:
            u = queue.popleft()
            if best is not None and 2 * dist[u] >= best:
                break
            for w in G.adj[u]:
                if dist[w] < 0:
                    dist[w] = dist[u] + 1
                    parent[w] = u
                    queue.append(w)
                elif w != parent[u]:
                    length = dist[u] + dist[w] + 1
                    if best is None or length < best:
                        best = length
        if best == 3:
            break
    return best


def clique_number(G: Graph) -> int:
    """Maximum clique size (Bron-Kerbosch with Tomita pivoting)."""
    masks = G.masks
    best = 1

    def expand(size: int, P: int, X: int) -> None:
        nonlocal best
        if P == 0:
            if X == 0 and size > best:
                best = size
            return
        if size + P.bit_count() <= best:
            return
        PX = P | X
        pivot, pivot_hits = 0, -1
        while PX:
            low = PX & -PX
            u = low.bit_length() - 1
            hits = (P & masks[u]).bit_count()
            if hits > pivot_hits:
                pivot, pivot_hits = u, hits
            PX ^= low
        candidates = P & ~masks[pivot]
        while candidates:
            low = candidates & -candidates
            v = low.bit_length() - 1
            expand(size + 1, P & masks[v], X & masks[v])
            P &= ~low
            X |= low
            candidates ^= low

    expand(0, G.full_mask, 0)
    return best


def turan_edge_bound_holds(G: Graph, r: int) -> bool:
    """True iff ``|E| <= floor((r-1) n^2 / (2r))``; requires ``clique_number(G) <= r``."""
    if r < 1:
        raise DomainError("r must be at least 1")
    if clique_number(G) > r:
        raise DomainError(f"clique number exceeds r={r}")
    return G.num_edges <= (r - 1) * G.n * G.n // (2 * r)


class _Residual:
    """Residual network with integer capacities, augmented by BFS (Edmonds-Karp)."""

    def __init__(self, size: int):
        self.cap: list[dict[int, int]] = [dict() for _ in range(size)]

    def add(self, u: int, v: int, c: int) -> None:
        self.cap[u][v] = self.cap[u].get(v, 0) + c
        self.cap[v].setdefault(u, 0)

    def max_flow(self, s: int, t: int, limit: int | None = None) -> int:
        flow = 0
        cap = self.cap
        while limit is None or flow < limit:
            parent = {s: s}
            queue = deque([s])
            while queue and t not in parent:
                u = queue.popleft()
                for v, c in cap[u].items():
                    if c > 0 and v not in parent:
                        parent[v] = u
                        queue.append(v)
            if t not in parent:
                break
            v = t
            while v != s:
                u = parent[v]
                cap[u][v] -= 1
                cap[v][u] += 1
                v = u
            flow += 1
        return flow

    def reachable(self, s: int) -> set[int]:
        seen = {s}
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for v, c in self.cap[u].items():
                if c > 0 and v not in seen:
                    seen.add(v)
                    queue.append(v)
        return seen


def _edge_network(G: Graph) -> _Residual:
    net = _Residual(G.n)
    for u, v in G.edges:
        net.add(u, v, 1)
        net.add(v, u, 1)
    return net


def local_edge_connectivity(G: Graph, s: int, t: int, limit: int | None = None) -> int:
    return _edge_network(G).max_flow(s, t, limit)


def edge_connectivity(G: Graph) -> int:
    """Size of a minimum edge cut; 0 for disconnected graphs and for ``n = 1``."""
    if G.n == 1 or len(component_masks(G)) > 1:
        return 0
    best = G.min_degree
    for v in range(1, G.n):
        best = min(best, local_edge_connectivity(G, 0, v, limit=best))
    return best


def edge_connectivity_witness(G: Graph) -> tuple[int, frozenset[int]]:
    """Return ``(kappa', X)`` with ``X`` one side of a minimum edge cut, ``|X| <= n/2``."""
    if G.n < 2:
        raise TooSmallError("edge cuts need at least two vertices")
    if len(component_masks(G)) > 1:
        raise DisconnectedError("graph is disconnected")
    # A single vertex of minimum degree is a valid starting witness.
    v_min = min(range(G.n), key=G.degree)
    best, side = G.degree(v_min), frozenset([v_min])
    for v in range(1, G.n):
        net = _edge_network(G)
        value = net.max_flow(0, v, limit=best)
        if value < best:
            best, side = value, frozenset(net.reachable(0))
    if 2 * len(side) > G.n:
        side = frozenset(range(G.n)) - side
    return best, side


def _split_network(G: Graph, s: int, t: int) -> _Residual:
    # vertex v becomes v_in = 2v -> v_out = 2v + 1
    big = G.n
    net = _Residual(2 * G.n)
    for v in range(G.n):
        net.add(2 * v, 2 * v + 1, big if v in (s, t) else 1)
    for u, v in G.edges:
        net.add(2 * u + 1, 2 * v, big)
        net.add(2 * v + 1, 2 * u, big)
    return net


def local_vertex_connectivity(G: Graph, s: int, t: int, limit: int | None = None) -> int:
    """Maximum number of internally disjoint s-t paths; ``s``, ``t`` non-adjacent."""
    return _split_network(G, s, t).max_flow(2 * s + 1, 2 * t, limit)


def _min_vertex_cut(G: Graph) -> tuple[int, int, int] | None:
    """Best ``(kappa, s, t)`` over the Even source-pinning scheme, or None if complete."""
    if G.is_complete():
        return None
    best = G.min_degree
    pair = None
    i = 0
    while i <= best and i < G.n:
        s = i
        for t in range(G.n):
            if t == s or G.has_edge(s, t):
                continue
            value = local_vertex_connectivity(G, s, t, limit=best + 1)
            if value < best or (pair is None and value == best):
                best, pair = value, (s, t)
        i += 1
    return best, pair[0], pair[1]


def vertex_connectivity(G: Graph) -> int:
    """Minimum number of vertices whose removal disconnects ``G``; ``n - 1`` for K_n."""
    if len(component_masks(G)) > 1:
        return 0
    found = _min_vertex_cut(G)
    return G.n - 1 if found is None else found[0]


def vertex_connectivity_witness(G: Graph) -> tuple[int, frozenset[int], frozenset[int]]:
    """Return ``(kappa, S, X)``: a minimum vertex cut and the smallest component of ``G - S``."""
    if len(component_masks(G)) > 1:
        raise DisconnectedError("graph is disconnected")
    found = _min_vertex_cut(G)
    if found is None:
        raise CompleteGraphError("complete graphs have no vertex cut")
    kappa, s, t = found
    net = _split_network(G, s, t)
    net.max_flow(2 * s + 1, 2 * t)
    reach = net.reachable(2 * s + 1)
    cut = frozenset(v for v in range(G.n) if 2 * v in reach and 2 * v + 1 not in reach)
    rest = G.full_mask & ~sum(1 << v for v in cut)
    comps = component_masks(G, rest)
    smallest = min(comps, key=lambda c: (c.bit_count(), c))
    return kappa, cut, from_mask(smallest)

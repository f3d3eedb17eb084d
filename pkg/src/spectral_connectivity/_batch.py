"""Vectorised campaign engine for exhaustive corpora of order 2..7.

A graph is its edge mask (bit ``b`` is edge ``b`` in graph6 order), and a
chunk of graphs is an int64 array of masks.  Every set-indexed quantity is a
precomputed edge mask, so one test over all graphs in a chunk is a single
``&`` and compare:

* the cut ``d(X)`` is ``popcount(M & cut[X])``,
* ``X`` is a clique iff ``M & inner[X] == inner[X]``,
* a cycle is present iff ``M & cycle == cycle``,
* ``X`` and ``Y`` are nonadjacent iff ``M & cross(X, Y) == 0``.

Only quantities that are monotone in the enumerated set sizes are reduced
per graph (smallest small-cut side, smallest component beside each separator
size, largest ``|X| - |Y|`` per separator), so the inequality checks run on a
handful of arrays instead of on every set.  Graphs flagged here are re-run
through the per-graph checks to build the witness payload.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from functools import lru_cache
from itertools import combinations, permutations

import numpy as np

from .bounds import ParamSet, moore_bound
from .certify import EDGE, LAMBDA2, MU, ORDER, Q2, RATIO, fires, rows_for
from .corpus import edge_order, graph_from_mask, mask_range
from .verify import (
    COMPONENT_SIZE, COURANT_WEYL, FIEDLER_BOUNDS, HAEMERS_PAIRS, SLACK, SOUNDNESS, SUBSET_SIZE, TURAN,
    Counterexample, RazorEdge, Tally, check_graph,
)

CHUNK = 1 << 17


class Tables:
    """Set-indexed edge masks for graphs on ``n`` vertices."""

    def __init__(self, n: int):
        self.n = n
        self.full = (1 << n) - 1
        edges = edge_order(n)
        self.edges = edges
        bit = {e: 1 << b for b, e in enumerate(edges)}
        self.edge_bits = [(b, i, j) for b, (i, j) in enumerate(edges)]
        self.incident = [sum(bit[e] for e in edges if v in e) for v in range(n)]
        self.cut = [0] * (1 << n)
        self.inner = [0] * (1 << n)
        for X in range(1 << n):
            for (i, j), b in bit.items():
                a, c = X >> i & 1, X >> j & 1
                if a and c:
                    self.inner[X] |= b
                elif a != c:
                    self.cut[X] |= b
        self.size = [X.bit_count() for X in range(1 << n)]
        self.cycles = {}
        for length in range(3, n + 1):
            masks = set()
            for verts in combinations(range(n), length):
                first, rest = verts[0], verts[1:]
                for perm in permutations(rest):
                    if perm[0] > perm[-1]:
                        continue
                    ring = (first, *perm)
                    masks.add(sum(bit[tuple(sorted((ring[i], ring[(i + 1) % length])))]
                                  for i in range(length)))
            self.cycles[length] = sorted(masks)
        # unordered splits V - S = X + Y with X holding the lowest vertex of V - S
        self.splits = []
        for S in range(1, self.full):
            rest = self.full & ~S
            if rest.bit_count() < 2:
                continue
            low = rest & -rest
            X = rest
            while X:
                if X & low and X != rest:
                    Y = rest & ~X
                    cross = self.cut[X] & self.inner[rest]
                    self.splits.append((S, X, Y, cross))
                X = (X - 1) & rest


@lru_cache(maxsize=None)
def tables(n: int) -> Tables:
    return Tables(n)


def graph6_from_mask(n: int, mask: int) -> str:
    """graph6 text of an edge mask (bit ``b`` is the ``b``-th graph6 bit)."""
    m = n * (n - 1) // 2
    chars = [chr(63 + n)]
    for start in range(0, m, 6):
        value = 0
        for b in range(start, start + 6):
            value = value << 1 | (mask >> b & 1 if b < m else 0)
        chars.append(chr(63 + value))
    return "".join(chars)


def _popcount(a: np.ndarray) -> np.ndarray:
    return np.bitwise_count(a).astype(np.int64)


def _exceeds(lhs, rhs):
    return lhs > rhs + SLACK * np.maximum(1.0, np.abs(rhs))


@lru_cache(maxsize=None)
def _rows(p: ParamSet, kappa: int, scale: float):
    return tuple(r for r in rows_for(p, kappa_hint=kappa, include_prior=True, scale=scale) if r.applicable)


def _moore(delta: np.ndarray, g: np.ndarray) -> np.ndarray:
    """Moore bound per graph; 0 where the girth is undefined or delta < 2."""
    out = np.zeros_like(delta)
    for d, gg in set(zip(delta.tolist(), g.tolist())):
        if d >= 2 and gg >= 3:
            out[(delta == d) & (g == gg)] = moore_bound(d, gg)
    return out


def _structure(t: Tables, M: np.ndarray):
    n = t.n
    deg = np.stack([_popcount(M & t.incident[v]) for v in range(n)])
    adj = np.zeros((n, M.size), dtype=np.int64)
    for b, i, j in t.edge_bits:
        bit = (M >> b) & 1
        adj[i] |= bit << j
        adj[j] |= bit << i
    reach = np.ones(M.size, dtype=np.int64)
    for _ in range(n - 1):
        grown = reach.copy()
        for v in range(n):
            grown |= np.where((reach >> v) & 1, adj[v], 0)
        reach = grown
    return deg, reach == t.full


def _girth(t: Tables, M: np.ndarray) -> np.ndarray:
    g = np.zeros(M.size, dtype=np.int64)
    for length, cycles in t.cycles.items():
        open_ = g == 0
        if not open_.any():
            break
        hit = np.zeros(M.size, dtype=bool)
        for c in cycles:
            hit |= (M & c) == c
        g[open_ & hit] = length
    return g


def _omega(t: Tables, M: np.ndarray) -> np.ndarray:
    omega = np.where(M != 0, 2, 1)
    for size in range(3, t.n + 1):
        for X in combinations(range(t.n), size):
            inner = t.inner[sum(1 << v for v in X)]
            omega[(M & inner) == inner] = size
    return omega


def _spectra(t: Tables, M: np.ndarray, deg: np.ndarray):
    n, B = t.n, M.size
    A = np.zeros((B, n, n))
    for b, i, j in t.edge_bits:
        bit = ((M >> b) & 1).astype(float)
        A[:, i, j] = bit
        A[:, j, i] = bit
    D = np.zeros((B, n, n))
    idx = np.arange(n)
    D[:, idx, idx] = deg.T
    lap = np.linalg.eigvalsh(D - A)
    return {
        "mu": lap[:, 1],
        "mu1": lap[:, -1],
        "lambda2": np.linalg.eigvalsh(A)[:, -2],
        "q2": np.linalg.eigvalsh(D + A)[:, -2],
        "p12": np.linalg.eigvalsh(D + 2 * A)[:, -2],
    }


def _component_violation(x, s, delta, r, N):
    """Vectorised mirror of :func:`verify.component_bound_violation` (any part)."""
    r3 = np.maximum(r, 3)
    below_first = x * (r3 - 2) < (r3 - 1) * (delta - s)
    below_second = x * (r3 - 1) < r3 * delta - s * (r3 - 1)
    part_i = below_first & below_second
    part_ii = (delta <= s * (r3 - 1)) & below_first
    part_iii = (s * (r - 1) < delta) & (x * (r - 1) < r * delta - s * (r - 1))
    part_girth = (N > 0) & (x < N - s)
    return (s < delta) & (part_i | part_ii | part_iii | part_girth)


def _chunk(args) -> Tally:
    n, start, stop, spec, config = args
    t = tables(n)
    props = set(config.properties)
    tally = Tally()
    M = np.arange(start, stop, dtype=np.int64)
    deg, connected = _structure(t, M)
    delta = deg.min(axis=0)
    keep = delta >= spec.min_degree
    if spec.connected:
        keep &= connected
    need_girth = spec.min_girth is not None or props - {TURAN}
    g = _girth(t, M) if need_girth else np.zeros(M.size, dtype=np.int64)
    if spec.min_girth is not None:
        keep &= (g == 0) | (g >= spec.min_girth)
    tally.graphs = int(keep.sum())
    flagged: dict[str, np.ndarray] = {}

    if TURAN in props:
        sel = np.flatnonzero(keep)
        omega_t = _omega(t, M[sel])
        m = _popcount(M[sel])
        tally.count(TURAN, sel.size)
        flagged[TURAN] = M[sel[m > (omega_t - 1) * n * n // (2 * omega_t)]]

    sel = np.flatnonzero(keep & connected)
    if not (props - {TURAN}) or not sel.size:
        _payloads(tally, n, flagged, config)
        return tally
    M, deg, delta, g = M[sel], deg[:, sel], delta[sel], g[sel]
    Delta = deg.max(axis=0)
    omega = _omega(t, M)
    N = _moore(delta, g)
    B = M.size
    big = n + 1

    # edge cuts: kappa', the smallest side of a cut below delta, the best +-1 quotient
    kappa_edge = np.full(B, big)
    small_side = np.full(B, big)
    edge_quotient = np.full(B, np.inf)
    cut_degree = {}
    for X in range(1, t.full):
        d = _popcount(M & t.cut[X])
        cut_degree[X] = d
        size = t.size[X]
        np.minimum(kappa_edge, d, out=kappa_edge)
        small_side = np.where(d < delta, np.minimum(small_side, size), small_side)
        np.minimum(edge_quotient, n * d / (size * (n - size)), out=edge_quotient)

    # vertex separators, from every split of V - S into nonadjacent X, Y
    separates = {}
    smallest_part = {}  # |S| -> smallest closed side
    diff_seen = {}  # (S, ||X| - |Y||) -> flag
    pair_seen = {}  # sorted (|X|, |Y|) -> flag
    for S, X, Y, cross in t.splits:
        closed = (M & cross) == 0
        if not closed.any():
            continue
        s, x, y = t.size[S], t.size[X], t.size[Y]
        for store, key in ((separates, S), (diff_seen, (S, abs(x - y))), (pair_seen, (min(x, y), max(x, y)))):
            if key in store:
                store[key] |= closed
            else:
                store[key] = closed.copy()
        part = smallest_part.setdefault(s, np.full(B, big))
        part[closed] = np.minimum(part[closed], min(x, y))
    kappa = np.full(B, n - 1)
    for S in sorted(separates, key=lambda S: -t.size[S]):
        kappa[separates[S]] = t.size[S]

    spec_ = _spectra(t, M, deg)
    mu, mu1 = spec_["mu"], spec_["mu1"]
    bad: dict[str, np.ndarray] = {}

    if SUBSET_SIZE in props:
        tally.count(SUBSET_SIZE, B)
        phi = np.maximum(delta + 1, omega * delta // (omega - 1))
        bad[SUBSET_SIZE] = small_side < phi

    deg2 = delta >= 2
    if COMPONENT_SIZE in props:
        tally.count(COMPONENT_SIZE, int(deg2.sum()))
        hit = np.zeros(B, dtype=bool)
        for s, part in smallest_part.items():
            hit |= (part < big) & _component_violation(part, s, delta, omega, N)
        hit |= (N > 0) & (small_side < N)
        bad[COMPONENT_SIZE] = hit & deg2

    if FIEDLER_BOUNDS in props:
        tally.count(FIEDLER_BOUNDS, B)
        vertex_quotient = np.full(B, np.inf)
        widest = {}
        for (S, diff), flag in sorted(diff_seen.items()):
            w = widest.setdefault(S, np.full(B, -1))
            w[flag] = diff
        for S, w in widest.items():
            ok = w >= 0
            q = n * cut_degree[S] / (n * (n - t.size[S]) - w.astype(float) ** 2)
            vertex_quotient = np.where(ok, np.minimum(vertex_quotient, q), vertex_quotient)
        bad[FIEDLER_BOUNDS] = (
            (_exceeds(mu, kappa.astype(float)) & (M != (1 << len(t.edges)) - 1)) | (kappa > kappa_edge) | (kappa_edge > delta)
            | _exceeds(mu, edge_quotient) | _exceeds(mu, vertex_quotient)
        )

    if HAEMERS_PAIRS in props:
        tally.count(HAEMERS_PAIRS, B)
        h = ((mu1 - mu) / (mu1 + mu)) ** 2
        bh = (mu1 - mu) ** 2 / (4.0 * mu1 * mu)
        hit = np.zeros(B, dtype=bool)
        for (x, y), flag in pair_seen.items():
            hit |= flag & _exceeds(x * y / ((n - x) * (n - y)), h)
            if x + y < n:
                hit |= flag & _exceeds(x * y / (n * (n - x - y)), bh)
        bad[HAEMERS_PAIRS] = hit

    if COURANT_WEYL in props:
        tally.count(COURANT_WEYL, B)
        hit = np.zeros(B, dtype=bool)
        for (a, b_), lam in (((0, 1), spec_["lambda2"]), ((1, 1), spec_["q2"]), ((1, 2), spec_["p12"])):
            hit |= _exceeds((a + b_) * delta - b_ * mu, lam)
        bad[COURANT_WEYL] = hit

    for prop, hit in bad.items():
        flagged[prop] = M[hit]

    unsound: dict[int, list[Counterexample]] = {}
    if SOUNDNESS in props:
        elig = np.flatnonzero(deg2)
        tally.count(SOUNDNESS, elig.size)
        stats = {MU: mu, RATIO: mu1 / np.where(mu > 0, mu, np.nan), LAMBDA2: spec_["lambda2"], Q2: spec_["q2"]}
        keys = np.stack([delta, Delta, g, omega, kappa], axis=1)[elig]
        if elig.size:
            uniq, inverse = np.unique(keys, axis=0, return_inverse=True)
            order = np.argsort(inverse.ravel(), kind="stable")
            bounds_ = np.searchsorted(inverse.ravel()[order], np.arange(len(uniq) + 1))
            for gi, key in enumerate(uniq.tolist()):
                d, D, gg, w, kap = key
                idx = elig[order[bounds_[gi]:bounds_[gi + 1]]]
                for k in range(2, d + 1):
                    p = ParamSet(n, d, D, gg or None, w, k)
                    for row in _rows(p, kap, config.scale):
                        _soundness_row(tally, unsound, n, M, idx, row, k, stats, kap, kappa_edge,
                                       config.eps)
        flagged[SOUNDNESS] = np.array(sorted(unsound), dtype=np.int64)
    _payloads(tally, n, flagged, config, unsound)
    return tally


def _soundness_row(tally, unsound, n, M, idx, row, k, stats, kap, kappa_edge, eps):
    if row.statistic == ORDER:
        lhs = np.full(idx.size, float(n))
    else:
        lhs = stats[row.statistic][idx]
    with np.errstate(invalid="ignore"):
        fired = fires(lhs, row.rhs, row.relation, row.strict, eps)
    oracle = kappa_edge[idx] if row.target == EDGE else np.full(idx.size, kap)
    for i in np.flatnonzero(fired & (oracle < k)):
        mask = int(M[idx[i]])
        unsound.setdefault(mask, []).append(Counterexample(SOUNDNESS, graph6_from_mask(n, mask), {
            "theorem": row.theorem, "k": k, "target": row.target, "statistic": row.statistic,
            "lhs": float(lhs[i]), "rhs": row.rhs, "oracle": int(oracle[i]),
        }))
    if row.statistic != ORDER:
        for i in np.flatnonzero(np.abs(lhs - row.rhs) < eps):
            tally.razor_edges.append(RazorEdge(
                row.theorem, graph6_from_mask(n, int(M[idx[i]])), k, row.strict,
                float(lhs[i]), row.rhs, bool(fired[i]),
            ))


def _payloads(tally, n, flagged, config, unsound=None):
    """Turn flagged edge masks into counterexamples via the per-graph checks.

    Soundness findings already carry a payload from this engine; it is kept
    only if the per-graph path does not reproduce the violation.
    """
    for prop, masks in sorted(flagged.items()):
        for mask in masks.tolist():
            found, _ = check_graph(graph_from_mask(n, mask), prop, config)
            if not found:
                found = (unsound or {}).get(mask) if prop == SOUNDNESS else None
                found = found or [Counterexample(prop, graph6_from_mask(n, mask), {
                    "note": "flagged by the vectorised engine only",
                })]
            tally.counterexamples.extend(found)


def run_exhaustive(spec, config, threads: int = 1) -> Tally:
    n = spec.n
    total = mask_range(n)
    tasks = [(n, a, min(a + CHUNK, total), spec, config) for a in range(0, total, CHUNK)]
    tally = Tally()
    if threads > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(threads) as pool:
            parts = list(pool.map(_chunk, tasks))
    else:
        parts = [_chunk(task) for task in tasks]
    for part in parts:
        tally.merge(part)
    return tally

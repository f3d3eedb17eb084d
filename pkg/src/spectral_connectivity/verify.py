"""Empirical harness: checks the structural lemmas and the certification theorems.

Each ``check_*`` function inspects one graph and returns ``None`` or the first
:class:`Counterexample` it finds.  :func:`run_campaign` applies a set of
properties to a whole corpus.  Exhaustive corpora of order 2..7 go through the
vectorised engine in :mod:`._batch`; everything else is checked graph by
graph.  Both engines share the row table of :mod:`.certify`, so "a theorem
fires" means the same thing everywhere.

Sets in witnesses are sorted vertex lists; numbers are printed at full
precision so a violation can be reproduced by pasting the graph6 string.
"""

from __future__ import annotations

import json
import os
import time
import zlib
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from itertools import combinations

from .bounds import moore_bound, phi
from .certify import EDGE, EPS, ORDER, dumps, fires, rows_for, statistics, _num
from .corpus import CorpusSpec, SplitMix64, iter_corpus
from .errors import DegreeTooSmallError, DisconnectedError, DomainError, TooSmallError
from .graph import Graph, _cut_degree_mask, component_masks, is_connected, write_graph6
from .invariants import clique_number, edge_connectivity, girth, turan_edge_bound_holds, vertex_connectivity
from .spectra import algebraic_connectivity, laplacian_radius, lambda2, pencil_lambda2, q2

SLACK = 1e-7

SUBSET_SIZE = "subset_size"
COMPONENT_SIZE = "component_size"
FIEDLER_BOUNDS = "fiedler_bounds"
HAEMERS_PAIRS = "haemers_pairs"
SOUNDNESS = "soundness"
COURANT_WEYL = "courant_weyl"
TURAN = "turan"
PROPERTIES = (SUBSET_SIZE, COMPONENT_SIZE, FIEDLER_BOUNDS, HAEMERS_PAIRS, SOUNDNESS, COURANT_WEYL, TURAN)

# the pencils aD + bA used by the Courant-Weyl probe: adjacency, signless, D + 2A
PENCILS = ((0, 1), (1, 1), (1, 2))


@dataclass(frozen=True)
class Caps:
    """Ceilings for the exponential loops; above a cap, sets are sampled."""

    cut_cap: int = 12  # every subset X (and every small S) up to this order
    quotient_cap: int = 7  # every cut quotient up to this order
    pair_cap: int = 6  # every nonadjacent pair (X, Y) up to this order
    samples: int = 1000  # sampled sets per graph above a cap


@dataclass(frozen=True)
class Counterexample:
    property: str
    graph6: str
    witness: dict

    def to_dict(self) -> dict:
        return {"property": self.property, "graph6": self.graph6, "witness": self.witness}

    def sort_key(self):
        return self.property, self.graph6, json.dumps(self.witness, sort_keys=True)


@dataclass(frozen=True)
class RazorEdge:
    """A spectral row whose two sides differ by less than ``eps``."""

    theorem: str
    graph6: str
    k: int
    strict: bool
    lhs: float
    rhs: float
    fired: bool

    def to_dict(self) -> dict:
        d = asdict(self)
        d["lhs"], d["rhs"] = _num(self.lhs), _num(self.rhs)
        return d

    def sort_key(self):
        return self.graph6, self.k, self.theorem


def _vertices(mask: int) -> list[int]:
    return [v for v in range(mask.bit_length()) if mask >> v & 1]


def _rng(G: Graph, seed: int) -> SplitMix64:
    # one stream per (graph, seed) so sampling does not depend on corpus order
    return SplitMix64(seed * 0x100000001B3 ^ zlib.crc32(write_graph6(G).encode()))


def _random_proper(rng: SplitMix64, n: int) -> int:
    full = (1 << n) - 1
    while True:
        X = rng.next_u64() & full
        if X and X != full:
            return X


def _cut_sides(G: Graph, cap: int, caps: Caps, rng: SplitMix64):
    """Every nonempty proper X when ``n <= cap``, else ``caps.samples`` random ones."""
    full = G.full_mask
    if G.n <= cap:
        yield from range(1, full)
    else:
        for _ in range(caps.samples):
            yield _random_proper(rng, G.n)


def _neighbourhood(G: Graph, X: int) -> int:
    out = 0
    for v in _vertices(X):
        out |= G.masks[v]
    return out & ~X


def _closed_pairs(G: Graph, cap: int, caps: Caps, rng: SplitMix64):
    """Pairs ``(X, Y)`` of nonempty disjoint sets with no edge between them.

    ``S = V - X - Y`` is then a separator and ``X`` a union of components of
    ``G - S``.  Exhaustive when ``n <= cap``; otherwise ``Y`` is drawn from
    outside the closed neighbourhood of a random ``X``.
    """
    full, n = G.full_mask, G.n
    if n <= cap:
        for X in range(1, full):
            rest = full & ~X & ~_neighbourhood(G, X)
            Y = rest
            while Y:  # every nonempty subset of rest
                yield X, Y
                Y = (Y - 1) & rest
        return
    for _ in range(caps.samples):
        X = _random_proper(rng, n)
        rest = full & ~X & ~_neighbourhood(G, X)
        if rest:
            Y = 0
            while not Y:
                Y = rng.next_u64() & rest
            yield X, Y


def _small_separators(G: Graph, max_size: int, caps: Caps, rng: SplitMix64):
    """Nonempty S with ``|S| <= max_size`` whose removal disconnects G."""
    n = G.n
    if n <= caps.cut_cap:
        for size in range(1, min(max_size, n - 2) + 1):
            for S in combinations(range(n), size):
                yield sum(1 << v for v in S)
        return
    for _ in range(caps.samples):
        size = 1 + rng.below(max(1, min(max_size, n - 2)))
        pool = list(range(n))
        S = 0
        for _ in range(size):
            S |= 1 << pool.pop(rng.below(len(pool)))
        yield S


def _require_connected(G: Graph) -> None:
    if G.n < 2 or not is_connected(G):
        raise DisconnectedError("the check needs a connected graph on >= 2 vertices")


def _clique_bound(G: Graph, r: int | None) -> int:
    omega = clique_number(G)
    if r is None:
        return omega
    if r < omega:
        raise DomainError(f"r={r} is below the clique number {omega}")
    return r


def check_subset_size_lemma(G: Graph, r: int | None = None, caps: Caps = Caps(),
                            seed: int = 0) -> Counterexample | None:
    """Every X with ``d(X) < delta`` has ``|X| >= phi(delta, r)`` (``r`` defaults to omega)."""
    r = _clique_bound(G, r)
    delta = G.min_degree
    if delta < 1 or r < 2:
        raise DegreeTooSmallError("the subset-size lemma needs delta >= 1")
    bound = phi(delta, r)
    for X in _cut_sides(G, caps.cut_cap, caps, _rng(G, seed)):
        d = _cut_degree_mask(G, X)
        size = X.bit_count()
        if d < delta and size < bound:
            return Counterexample(SUBSET_SIZE, write_graph6(G), {
                "X": _vertices(X), "cut": d, "delta": delta, "r": r, "size": size, "bound": bound,
            })
    return None


def component_bound_violation(x: int, s: int, delta: int, r: int, N: int | None):
    """First violated component-size bound for a component of size ``x`` beside a cut of size ``s``.

    Parts (i) and (ii) are evaluated with ``max(r, 3)``, which is a valid
    clique bound whenever ``r`` is.  Returns ``(part, bound)`` or ``None``.
    """
    if s >= delta:
        return None
    r3 = max(r, 3)
    first = Fraction((r3 - 1) * (delta - s), r3 - 2)
    second = Fraction(r3 * delta, r3 - 1) - s
    if x < min(first, second):
        return "i", min(first, second)
    if delta <= s * (r3 - 1) and x < first:
        return "ii", first
    if s * (r - 1) < delta:
        third = Fraction(r * delta, r - 1) - s
        if x < third:
            return "iii", third
    if N is not None and x < N - s:
        return "girth", Fraction(N - s)
    return None


def check_component_lemmas(G: Graph, r: int | None = None, caps: Caps = Caps(),
                           seed: int = 0) -> Counterexample | None:
    """Component sizes beside small vertex cuts, and the edge-cut side lemma."""
    _require_connected(G)
    delta = G.min_degree
    if delta < 2:
        raise DegreeTooSmallError("the component lemmas need delta >= 2")
    r = _clique_bound(G, r)
    g = girth(G)
    N = moore_bound(delta, g) if g is not None else None
    rng = _rng(G, seed)
    g6 = write_graph6(G)
    for S in _small_separators(G, delta - 1, caps, rng):
        comps = component_masks(G, G.full_mask & ~S)
        if len(comps) < 2:
            continue
        s = S.bit_count()
        for X in comps:
            found = component_bound_violation(X.bit_count(), s, delta, r, N)
            if found:
                part, bound = found
                return Counterexample(COMPONENT_SIZE, g6, {
                    "part": part, "S": _vertices(S), "X": _vertices(X), "size": X.bit_count(),
                    "bound": float(bound), "delta": delta, "r": r, "girth": g,
                })
    if N is not None:
        for X in _cut_sides(G, caps.cut_cap, caps, rng):
            d = _cut_degree_mask(G, X)
            if d < delta and X.bit_count() < N:
                return Counterexample(COMPONENT_SIZE, g6, {
                    "part": "edge_cut", "X": _vertices(X), "cut": d, "size": X.bit_count(),
                    "bound": N, "delta": delta, "girth": g,
                })
    return None


def _exceeds(lhs: float, rhs: float, slack: float = SLACK) -> bool:
    """``lhs > rhs`` by more than the relative slack."""
    return lhs > rhs + slack * max(1.0, abs(rhs))


def check_fiedler_bounds(G: Graph, caps: Caps = Caps(), seed: int = 0) -> Counterexample | None:
    """Cut-quotient upper bounds on mu and the chain ``mu <= kappa <= kappa' <= delta``.

    The first link is skipped for complete graphs, which have no vertex cut.
    """
    _require_connected(G)
    n, g6 = G.n, write_graph6(G)
    mu = algebraic_connectivity(G)
    kappa, kappa_edge = vertex_connectivity(G), edge_connectivity(G)
    chain = (("mu<=kappa", mu, kappa), ("kappa<=kappa_edge", kappa, kappa_edge),
             ("kappa_edge<=delta", kappa_edge, G.min_degree))
    for name, lhs, rhs in chain:
        # Fiedler's mu <= kappa excludes K_n, where mu = n > n - 1 = kappa
        if name == "mu<=kappa" and G.is_complete():
            continue
        if _exceeds(lhs, rhs):
            return Counterexample(FIEDLER_BOUNDS, g6, {"part": name, "lhs": lhs, "rhs": rhs})
    rng = _rng(G, seed)
    for X in _cut_sides(G, caps.quotient_cap, caps, rng):
        size = X.bit_count()
        bound = n * _cut_degree_mask(G, X) / (size * (n - size))
        if _exceeds(mu, bound):
            return Counterexample(FIEDLER_BOUNDS, g6, {
                "part": "edge_quotient", "X": _vertices(X), "lhs": mu, "rhs": bound,
            })
    for X, Y in _closed_pairs(G, caps.quotient_cap, caps, rng):
        S = G.full_mask & ~X & ~Y
        if not S:
            continue
        sx, sy = X.bit_count(), Y.bit_count()
        bound = n * _cut_degree_mask(G, S) / (n * (n - S.bit_count()) - (sx - sy) ** 2)
        if _exceeds(mu, bound):
            return Counterexample(FIEDLER_BOUNDS, g6, {
                "part": "vertex_quotient", "S": _vertices(S), "X": _vertices(X),
                "lhs": mu, "rhs": bound,
            })
    return None


def haemers_sides(n: int, x: int, y: int, mu1: float, mu: float):
    """Both pair inequalities as ``(name, lhs, rhs)``; Brouwer-Haemers only if ``x + y < n``."""
    out = [("haemers", x * y / ((n - x) * (n - y)), ((mu1 - mu) / (mu1 + mu)) ** 2)]
    if x + y < n:
        out.append(("brouwer_haemers", x * y / (n * (n - x - y)), (mu1 - mu) ** 2 / (4.0 * mu1 * mu)))
    return out


def check_haemers_pair_bounds(G: Graph, caps: Caps = Caps(), seed: int = 0) -> Counterexample | None:
    _require_connected(G)
    mu1, mu = laplacian_radius(G), algebraic_connectivity(G)
    for X, Y in _closed_pairs(G, caps.pair_cap, caps, _rng(G, seed)):
        for name, lhs, rhs in haemers_sides(G.n, X.bit_count(), Y.bit_count(), mu1, mu):
            if _exceeds(lhs, rhs):
                return Counterexample(HAEMERS_PAIRS, write_graph6(G), {
                    "part": name, "X": _vertices(X), "Y": _vertices(Y), "lhs": lhs, "rhs": rhs,
                })
    return None


def soundness_findings(G: Graph, scale: float = 1.0, eps: float = EPS,
                       ks=None, theorems=None) -> tuple[list[Counterexample], list[RazorEdge]]:
    """Evaluate every row (prior rows included) for each ``k`` in ``2..delta``.

    A counterexample is a fired row whose exact connectivity is below ``k``.
    """
    _require_connected(G)
    stats = statistics(G)
    if stats.delta < 2:
        raise DegreeTooSmallError("soundness checks need delta >= 2")
    kappa, kappa_edge = vertex_connectivity(G), edge_connectivity(G)
    g6 = write_graph6(G)
    bad, razors = [], []
    for k in ks if ks is not None else range(2, stats.delta + 1):
        for row in rows_for(stats.params(k), kappa_hint=kappa, include_prior=True, scale=scale):
            if not row.applicable or (theorems is not None and row.theorem not in theorems):
                continue
            lhs = stats.value(row.statistic)
            if lhs is None:
                continue
            fired = bool(fires(lhs, row.rhs, row.relation, row.strict, eps))
            oracle = kappa_edge if row.target == EDGE else kappa
            if fired and oracle < k:
                bad.append(Counterexample(SOUNDNESS, g6, {
                    "theorem": row.theorem, "k": k, "target": row.target,
                    "statistic": row.statistic, "lhs": float(lhs), "rhs": row.rhs, "oracle": oracle,
                }))
            if row.statistic != ORDER and abs(lhs - row.rhs) < eps:
                razors.append(RazorEdge(row.theorem, g6, k, row.strict, float(lhs), row.rhs, fired))
    return bad, razors


def check_theorem_soundness(G: Graph, k: int, theorem: str, scale: float = 1.0,
                            eps: float = EPS) -> Counterexample | None:
    """Does ``theorem`` fire for target ``k`` while the exact connectivity is below ``k``?"""
    if k < 2:
        raise DomainError("k must be at least 2")
    if G.min_degree < k:
        raise DegreeTooSmallError(f"minimum degree {G.min_degree} < k={k}")
    bad, _ = soundness_findings(G, scale, eps, ks=(k,), theorems={theorem})
    return bad[0] if bad else None


def check_courant_weyl(G: Graph) -> Counterexample | None:
    """``lambda2(aD + bA) >= (a+b) delta - b mu`` for the probe pencils."""
    _require_connected(G)
    mu, delta = algebraic_connectivity(G), G.min_degree
    values = {(0, 1): lambda2(G), (1, 1): q2(G), (1, 2): pencil_lambda2(G, 1, 2)}
    for (a, b), lam in values.items():
        rhs = (a + b) * delta - b * mu
        if _exceeds(rhs, lam):
            return Counterexample(COURANT_WEYL, write_graph6(G), {
                "a": a, "b": b, "lhs": lam, "rhs": rhs,
            })
    return None


def check_turan(G: Graph) -> Counterexample | None:
    r = clique_number(G)
    if turan_edge_bound_holds(G, r):
        return None
    return Counterexample(TURAN, write_graph6(G), {
        "edges": G.num_edges, "r": r, "bound": (r - 1) * G.n * G.n // (2 * r),
    })


@dataclass
class CampaignConfig:
    properties: tuple[str, ...] = PROPERTIES
    caps: Caps = Caps()
    seed: int = 0
    eps: float = EPS
    scale: float = 1.0

    def to_dict(self) -> dict:
        return {"properties": sorted(self.properties), "caps": asdict(self.caps), "seed": self.seed,
                "eps": self.eps, "scale": self.scale}


@dataclass
class Tally:
    """Mergeable partial result of a campaign."""

    graphs: int = 0
    checks_run: dict = field(default_factory=dict)
    counterexamples: list = field(default_factory=list)
    razor_edges: list = field(default_factory=list)

    def count(self, prop: str, amount: int = 1) -> None:
        self.checks_run[prop] = self.checks_run.get(prop, 0) + amount

    def merge(self, other: "Tally") -> None:
        self.graphs += other.graphs
        for prop, c in other.checks_run.items():
            self.count(prop, c)
        self.counterexamples.extend(other.counterexamples)
        self.razor_edges.extend(other.razor_edges)


def applicable_properties(G: Graph, properties) -> list[str]:
    """Which properties a graph is eligible for; every property but Turan needs a connected graph."""
    out = [TURAN] if TURAN in properties else []
    if G.n < 2 or not is_connected(G):
        return out
    for prop in (SUBSET_SIZE, FIEDLER_BOUNDS, HAEMERS_PAIRS, COURANT_WEYL):
        if prop in properties:
            out.append(prop)
    if G.min_degree >= 2:
        out += [p for p in (COMPONENT_SIZE, SOUNDNESS) if p in properties]
    return out


def check_graph(G: Graph, prop: str, config: CampaignConfig) -> tuple[list, list]:
    """Run one property on one graph: ``(counterexamples, razor_edges)``."""
    caps, seed = config.caps, config.seed
    if prop == SOUNDNESS:
        return soundness_findings(G, config.scale, config.eps)
    found = {
        SUBSET_SIZE: lambda: check_subset_size_lemma(G, caps=caps, seed=seed),
        COMPONENT_SIZE: lambda: check_component_lemmas(G, caps=caps, seed=seed),
        FIEDLER_BOUNDS: lambda: check_fiedler_bounds(G, caps=caps, seed=seed),
        HAEMERS_PAIRS: lambda: check_haemers_pair_bounds(G, caps=caps, seed=seed),
        COURANT_WEYL: lambda: check_courant_weyl(G),
        TURAN: lambda: check_turan(G),
    }[prop]()
    return ([found] if found else []), []


def _check_graphs(graphs: list[Graph], config: CampaignConfig) -> Tally:
    tally = Tally()
    for G in graphs:
        tally.graphs += 1
        for prop in applicable_properties(G, config.properties):
            tally.count(prop)
            bad, razors = check_graph(G, prop, config)
            tally.counterexamples.extend(bad)
            tally.razor_edges.extend(razors)
    return tally


@dataclass
class CampaignResult:
    corpus: dict
    config: CampaignConfig
    graphs: int
    checks_run: dict
    counterexamples: list
    razor_edges: list
    elapsed: float = 0.0  # wall-clock seconds; kept out of the JSON so reruns are byte-identical

    @property
    def clean(self) -> bool:
        return not self.counterexamples

    @property
    def exit_code(self) -> int:
        return 0 if self.clean else 1

    def to_dict(self) -> dict:
        return {
            "corpus": self.corpus,
            "config": self.config.to_dict(),
            "graphs": self.graphs,
            "checks_run": dict(sorted(self.checks_run.items())),
            "counterexamples": [c.to_dict() for c in self.counterexamples],
            "razor_edges": [r.to_dict() for r in self.razor_edges],
            "clean": self.clean,
        }

    def to_json(self) -> str:
        return dumps(self.to_dict())


def _chunks(items: list, parts: int) -> list[list]:
    size = max(1, -(-len(items) // parts))
    return [items[i:i + size] for i in range(0, len(items), size)]


def default_threads() -> int:
    return os.cpu_count() or 1


def run_campaign(spec: CorpusSpec, properties=PROPERTIES, caps: Caps = Caps(), seed: int | None = None,
                 eps: float = EPS, scale: float = 1.0, threads: int = 1,
                 engine: str = "auto") -> CampaignResult:
    """Check ``properties`` over every graph of ``spec``.

    ``engine`` is ``"batch"`` (exhaustive corpora of order 2..7 only),
    ``"graph"`` or ``"auto"``.  ``seed`` drives the sampling of sets above
    the caps and defaults to the corpus seed, then to 0.
    """
    unknown = set(properties) - set(PROPERTIES)
    if unknown:
        raise ValueError(f"unknown properties: {sorted(unknown)}")
    if seed is None:
        seed = spec.seed if spec.seed is not None else 0
    config = CampaignConfig(tuple(sorted(properties)), caps, seed, eps, scale)
    batchable = spec.kind == "exhaustive" and 2 <= spec.n <= 7
    if engine == "batch" and not batchable:
        raise ValueError("the batch engine handles exhaustive corpora with 2 <= n <= 7")
    if engine not in ("auto", "batch", "graph"):
        raise ValueError(f"unknown engine {engine!r}")
    started = time.perf_counter()
    if batchable and engine != "graph":
        from ._batch import run_exhaustive

        tally = run_exhaustive(spec, config, threads)
    else:
        graphs = list(iter_corpus(spec))
        tally = Tally()
        if threads > 1 and len(graphs) > 1:
            with ProcessPoolExecutor(threads) as pool:
                for part in pool.map(_check_graphs, _chunks(graphs, threads), [config] * threads):
                    tally.merge(part)
        else:
            tally = _check_graphs(graphs, config)
    tally.counterexamples.sort(key=Counterexample.sort_key)
    tally.razor_edges.sort(key=RazorEdge.sort_key)
    return CampaignResult(spec.describe(), config, tally.graphs, tally.checks_run,
                          tally.counterexamples, tally.razor_edges, time.perf_counter() - started)

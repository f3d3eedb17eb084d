"""Per-graph connectivity certificates and threshold comparison tables.

A *row* is one sufficient condition: a spectral statistic of the graph, a
right-hand side computed from its parameters, and a direction.  The same
row table drives certification, the ``analyze`` report and the
verification campaigns, so there is exactly one definition of "a theorem
fires".
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from . import bounds
from .bounds import ParamSet, Threshold
from .errors import DegreeTooSmallError, DisconnectedError, DomainError
from .graph import Graph, is_connected, write_graph6
from .invariants import clique_number, edge_connectivity, girth, vertex_connectivity
from .spectra import algebraic_connectivity, lambda2, laplacian_radius, q2

EPS = 1e-9

EDGE, VERTEX = "edge", "vertex"

# statistic names; "lower" rows need stat >= rhs, "upper" rows need stat <= rhs
MU, RATIO, LAMBDA2, Q2, ORDER = "mu", "ratio", "lambda2", "q2", "order"
LOWER, UPPER = "lower", "upper"

NEW_THEOREMS = (
    "edge_girth", "edge_clique", "vertex_girth", "vertex_clique",
    "vertex_clique2", "ratio_girth", "ratio_clique",
)
TRANSFER_THEOREMS = ("edge_girth_lambda2", "edge_girth_q2")
PRIOR_THEOREMS = ("prior_delta_plus_one", "prior_four_ninths", "prior_f", "prior_nu")
SMALL_ORDER = ("small_order_edge", "small_order_vertex", "small_order_vertex_exact")


@dataclass(frozen=True)
class Row:
    theorem: str
    target: str
    statistic: str
    relation: str
    strict: bool
    k: int
    rhs: float | None
    exact: Fraction | None = None
    reason: str = ""

    @property
    def applicable(self) -> bool:
        return self.rhs is not None


def fires(lhs, rhs, relation: str, strict: bool, eps: float = EPS):
    """Slack-guarded comparison; works elementwise on numpy arrays.

    Non-strict hypotheses get the benefit of ``eps``; strict ones must clear
    their bound by more than ``eps``, so slack never turns a failed strict
    hypothesis into a fired one.
    """
    if relation == LOWER:
        return lhs > rhs + eps if strict else lhs >= rhs - eps
    return lhs < rhs - eps if strict else lhs <= rhs + eps


def _from_threshold(t: Threshold, target: str, k: int, scale: float) -> Row:
    if not t.applicable:
        return Row(t.theorem, target, MU, LOWER, t.strict, k, None, None, t.reason)
    exact = t.exact * Fraction(scale) if scale != 1.0 else t.exact
    return Row(t.theorem, target, MU, LOWER, t.strict, k, float(exact), exact)


def _guarded(theorem, target, statistic, relation, strict, k, compute) -> Row:
    try:
        return compute()
    except DomainError as exc:
        return Row(theorem, target, statistic, relation, strict, k, None, None, str(exc))


def _small_order_rows(p: ParamSet, kappa_hint: int | None) -> list[Row]:
    theorems = [("small_order_edge", EDGE, None), ("small_order_vertex", VERTEX, None)]
    if kappa_hint is not None:
        theorems.append(("small_order_vertex_exact", VERTEX, kappa_hint))
    if p.delta < 2 or p.girth is None:
        reason = "delta < 2" if p.delta < 2 else "acyclic graph has no girth"
        return [Row(t, tg, ORDER, UPPER, True, p.k, None, None, reason) for t, tg, _ in theorems]
    N = bounds.moore_bound(p.delta, p.girth)
    rows = []
    for theorem, target, hint in theorems:
        if theorem == "small_order_edge":
            bound = 2 * N
        else:
            bound = 2 * N - (p.delta - 1 if hint is None else hint)
        rows.append(Row(theorem, target, ORDER, UPPER, True, p.k, float(bound), Fraction(bound)))
    return rows


def _ratio_row(p: ParamSet, condition) -> Row:
    name = "ratio_girth" if condition is bounds.ratio_girth_condition else "ratio_clique"

    def compute():
        c = condition(p)
        return Row(name, VERTEX, RATIO, UPPER, True, p.k, c.cap)

    return _guarded(name, VERTEX, RATIO, UPPER, True, p.k, compute)


def rows_for(
    p: ParamSet,
    kappa_hint: int | None = None,
    include_prior: bool = False,
    scale: float = 1.0,
    targets: tuple[str, ...] = (EDGE, VERTEX),
) -> list[Row]:
    """Every sufficient-condition row for parameters ``p`` (with ``p.k`` as target).

    ``scale`` multiplies the algebraic-connectivity thresholds; values below
    1 deliberately break the theorems and exist for harness self-tests.
    """
    k = p.k
    rows: list[Row] = []
    small = _small_order_rows(p, kappa_hint)
    if EDGE in targets:
        rows.append(small[0])
        girth_row = _from_threshold(bounds.edge_girth_threshold(p), EDGE, k, scale)
        rows.append(girth_row)
        rows.append(_from_threshold(bounds.edge_clique_threshold(p), EDGE, k, scale))
        for theorem, stat, a in (("edge_girth_lambda2", LAMBDA2, 0), ("edge_girth_q2", Q2, 1)):
            if girth_row.applicable:
                rhs = (a + 1) * p.delta - girth_row.exact
                rows.append(Row(theorem, EDGE, stat, UPPER, False, k, float(rhs), rhs))
            else:
                rows.append(Row(theorem, EDGE, stat, UPPER, False, k, None, None, girth_row.reason))
        if include_prior:
            for fn in (bounds.prior_delta_plus_one_threshold, bounds.prior_four_ninths_threshold,
                       bounds.prior_f_threshold):
                rows.append(_from_threshold(fn(p), EDGE, k, scale))
    if VERTEX in targets:
        rows.extend(small[1:])
        rows.append(_from_threshold(bounds.vertex_girth_threshold(p), VERTEX, k, scale))
        rows.append(_from_threshold(bounds.vertex_clique_threshold(p), VERTEX, k, scale))
        rows.append(_guarded(
            "vertex_clique2", VERTEX, MU, LOWER, True, k,
            lambda: _from_threshold(bounds.vertex_clique2_threshold(p), VERTEX, k, scale),
        ))
        rows.append(_ratio_row(p, bounds.ratio_girth_condition))
        rows.append(_ratio_row(p, bounds.ratio_clique_condition))
        if include_prior:
            rows.append(_from_threshold(bounds.prior_nu_threshold(p), VERTEX, k, scale))
    return rows


@dataclass(frozen=True)
class Statistics:
    """Structural and spectral numbers of one graph needed by the rows."""

    n: int
    m: int
    delta: int
    Delta: int
    girth: int | None
    omega: int
    mu1: float | None
    mu: float | None
    lambda2: float | None
    q2: float | None

    def params(self, k: int = 2, r: int | None = None) -> ParamSet:
        return ParamSet(self.n, self.delta, self.Delta, self.girth, self.omega if r is None else r, k)

    def value(self, statistic: str):
        if statistic == MU:
            return self.mu
        if statistic == RATIO:
            return self.mu1 / self.mu if self.mu and self.mu > 0 else None
        if statistic == LAMBDA2:
            return self.lambda2
        if statistic == Q2:
            return self.q2
        return self.n


@lru_cache(maxsize=4096)
def statistics(G: Graph) -> Statistics:
    spectral = G.n >= 2
    return Statistics(
        n=G.n,
        m=G.num_edges,
        delta=G.min_degree,
        Delta=G.max_degree,
        girth=girth(G),
        omega=clique_number(G),
        mu1=laplacian_radius(G) if spectral else None,
        mu=algebraic_connectivity(G) if spectral else None,
        lambda2=lambda2(G) if spectral else None,
        q2=q2(G) if spectral else None,
    )


@dataclass(frozen=True)
class RowResult:
    row: Row
    lhs: float | None
    fired: bool
    margin: float | None
    razor: bool

    def to_dict(self) -> dict:
        r = self.row
        return {
            "theorem": r.theorem,
            "target": r.target,
            "k": r.k,
            "statistic": r.statistic,
            "relation": r.relation,
            "strict": r.strict,
            "applicable": r.applicable,
            "threshold": _num(r.rhs),
            "value": _num(self.lhs),
            "margin": _num(self.margin),
            "fired": self.fired,
            "reason": r.reason,
        }


def evaluate(row: Row, stats: Statistics, eps: float = EPS) -> RowResult:
    lhs = stats.value(row.statistic)
    if not row.applicable or lhs is None:
        return RowResult(row, lhs, False, None, False)
    margin = lhs - row.rhs if row.relation == LOWER else row.rhs - lhs
    return RowResult(row, lhs, bool(fires(lhs, row.rhs, row.relation, row.strict, eps)),
                     margin, abs(lhs - row.rhs) < eps)


@dataclass
class Certificate:
    graph6: str
    target: str
    k: int
    params: ParamSet
    results: list[RowResult]
    oracle: int | None = None

    @property
    def fired(self) -> list[RowResult]:
        return [r for r in self.results if r.fired]

    @property
    def inapplicable(self) -> list[tuple[str, str]]:
        return [(r.row.theorem, r.row.reason) for r in self.results if not r.row.applicable]

    @property
    def certified(self) -> bool:
        return bool(self.fired)

    @property
    def verdict(self) -> str:
        return "Certified" if self.certified else "NotCertified"

    @property
    def agrees(self) -> bool | None:
        """False only when a certificate was issued and the exact value contradicts it."""
        if self.oracle is None:
            return None
        return not self.certified or self.oracle >= self.k

    def to_dict(self) -> dict:
        return {
            "graph6": self.graph6,
            "params": _params_dict(self.params),
            "rows": [r.to_dict() for r in self.results],
            "verdict": self.verdict,
            "oracle": None if self.oracle is None else {
                "target": self.target, "value": self.oracle, "agrees": self.agrees,
            },
        }


def _prepare(G: Graph, k: int) -> Statistics:
    if k < 2:
        raise DomainError("k must be at least 2")
    if G.n < 2 or not is_connected(G):
        raise DisconnectedError("certification needs a connected graph on >= 2 vertices")
    stats = statistics(G)
    if stats.delta < k:
        raise DegreeTooSmallError(f"minimum degree {stats.delta} < k={k}")
    return stats


def _certify(G: Graph, k: int, target: str, with_oracle: bool, r: int | None, eps: float) -> Certificate:
    stats = _prepare(G, k)
    p = stats.params(k, r)
    if r is not None and r < stats.omega:
        raise DomainError(f"r={r} is below the clique number {stats.omega}")
    results = [evaluate(row, stats, eps) for row in rows_for(p, targets=(target,))]
    oracle = None
    if with_oracle:
        oracle = edge_connectivity(G) if target == EDGE else vertex_connectivity(G)
    return Certificate(write_graph6(G), target, k, p, results, oracle)


def certify_edge(G: Graph, k: int, with_oracle: bool = False, r: int | None = None,
                 eps: float = EPS) -> Certificate:
    """Try to certify ``edge_connectivity(G) >= k`` from spectral conditions."""
    return _certify(G, k, EDGE, with_oracle, r, eps)


def certify_vertex(G: Graph, k: int, with_oracle: bool = False, r: int | None = None,
                   eps: float = EPS) -> Certificate:
    """Try to certify ``vertex_connectivity(G) >= k`` from spectral conditions."""
    return _certify(G, k, VERTEX, with_oracle, r, eps)


@dataclass
class Analysis:
    graph6: str
    stats: Statistics
    kappa: int
    kappa_edge: int
    results: list[RowResult] = field(default_factory=list)

    def to_dict(self) -> dict:
        s = self.stats
        return {
            "graph6": self.graph6,
            "n": s.n, "m": s.m, "delta": s.delta, "Delta": s.Delta,
            "girth": s.girth, "omega": s.omega,
            "kappa": self.kappa, "kappa_edge": self.kappa_edge,
            "mu1": _num(s.mu1), "mu": _num(s.mu), "lambda2": _num(s.lambda2), "q2": _num(s.q2),
            "rows": [r.to_dict() for r in self.results],
        }


def analyze(G: Graph, eps: float = EPS) -> Analysis:
    """Every invariant plus every threshold row for ``k`` in ``2..delta``."""
    stats = statistics(G)
    results = []
    for k in range(2, max(stats.delta, 2) + 1):
        for row in rows_for(stats.params(k), include_prior=True):
            results.append(evaluate(row, stats, eps))
    return Analysis(write_graph6(G), stats, vertex_connectivity(G), edge_connectivity(G), results)


@dataclass(frozen=True)
class RemarkCheck:
    name: str
    lhs: Fraction
    rhs: Fraction
    holds: bool


@dataclass
class ComparisonReport:
    params: ParamSet
    rows: list[Row]
    best: dict[str, Row]
    remarks: list[RemarkCheck]

    def to_dict(self) -> dict:
        return {
            "params": _params_dict(self.params),
            "rows": [{"theorem": r.theorem, "target": r.target, "statistic": r.statistic,
                      "threshold": _num(r.rhs), "applicable": r.applicable, "reason": r.reason}
                     for r in self.rows],
            "best": {t: r.theorem for t, r in self.best.items()},
            "remarks": [{"name": c.name, "new": _num(float(c.lhs)), "prior": _num(float(c.rhs)),
                         "holds": c.holds} for c in self.remarks],
        }


def compare_thresholds(p: ParamSet) -> ComparisonReport:
    """Side-by-side threshold table with the improvement inequalities checked.

    Remark checks are only recorded where their preconditions hold:
    ``n >= 2N`` and ``delta >= 3`` for the edge rows (``g >= 5`` against the
    ``f`` row), ``n >= 2N - k + 1`` for the vertex row.
    """
    rows = rows_for(p, include_prior=True)
    best = {}
    for target in (EDGE, VERTEX):
        candidates = [r for r in rows if r.target == target and r.statistic == MU and r.applicable]
        if candidates:
            best[target] = min(candidates, key=lambda r: (r.exact, r.theorem))
    by_name = {r.theorem: r for r in rows}
    remarks = []
    if p.girth is not None and p.delta >= 2 and p.k >= 2 and p.delta >= p.k:
        N = bounds.moore_bound(p.delta, p.girth)
        new_edge = by_name["edge_girth"]
        if p.n >= 2 * N and p.delta >= 3:
            prior = by_name["prior_four_ninths"]
            remarks.append(RemarkCheck("edge_vs_four_ninths", new_edge.exact, prior.exact,
                                       new_edge.exact < prior.exact))
            if p.girth >= 5:
                prior = by_name["prior_f"]
                remarks.append(RemarkCheck("edge_vs_f", new_edge.exact, prior.exact,
                                           new_edge.exact < prior.exact))
        new_vertex, prior = by_name["vertex_girth"], by_name["prior_nu"]
        if p.n >= 2 * N - p.k + 1 and prior.applicable:
            remarks.append(RemarkCheck("vertex_vs_nu", new_vertex.exact, prior.exact,
                                       new_vertex.exact < prior.exact))
    return ComparisonReport(p, rows, best, remarks)


def _num(x):
    """Round to 9 significant digits for stable machine output."""
    if x is None:
        return None
    return float(f"{float(x):.9g}")


def _params_dict(p: ParamSet) -> dict:
    return {"n": p.n, "delta": p.delta, "Delta": p.Delta, "girth": p.girth, "r": p.omega, "k": p.k}


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True)


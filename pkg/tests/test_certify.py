import json
import math

import pytest

from spectral_connectivity.bounds import ParamSet
from spectral_connectivity.certify import (
    EDGE,
    VERTEX,
    analyze,
    certify_edge,
    certify_vertex,
    compare_thresholds,
    dumps,
    fires,
    rows_for,
)
from spectral_connectivity.corpus import complete, cycle, enumerate_labeled, gnp_stream, path, petersen
from spectral_connectivity.errors import DegreeTooSmallError, DisconnectedError, DomainError
from spectral_connectivity.graph import from_edges, is_connected

from .oracles import brute_edge_connectivity, brute_vertex_connectivity


def fired_names(cert):
    return {r.row.theorem for r in cert.fired}


def test_fires_rule():
    assert fires(1.0, 1.0, "lower", strict=False)
    assert fires(1.0 - 5e-10, 1.0, "lower", strict=False)
    assert not fires(1.0, 1.0, "lower", strict=True)
    assert not fires(1.0 + 5e-10, 1.0, "lower", strict=True)
    assert fires(1.0 + 2e-9, 1.0, "lower", strict=True)
    assert fires(1.0, 1.0, "upper", strict=False)
    assert not fires(1.0, 1.0, "upper", strict=True)


def test_petersen_edge_k3():
    cert = certify_edge(petersen(), 3, with_oracle=True)
    assert cert.verdict == "Certified"
    assert "small_order_edge" in fired_names(cert)
    assert cert.oracle == 3 and cert.agrees


def test_petersen_vertex_k3():
    cert = certify_vertex(petersen(), 3, with_oracle=True)
    assert cert.verdict == "Certified"
    assert fired_names(cert) & {"small_order_vertex", "small_order_vertex_exact"}
    assert cert.oracle == 3 and cert.agrees


def test_k4_edge_k3():
    cert = certify_edge(complete(4), 3, with_oracle=True)
    by_name = {r.row.theorem: r for r in cert.results}
    assert not by_name["edge_girth"].row.applicable
    assert by_name["small_order_edge"].fired
    assert cert.certified and cert.oracle == 3


def test_c6_edge_k2():
    cert = certify_edge(cycle(6), 2, with_oracle=True)
    by_name = {r.row.theorem: r for r in cert.results}
    assert not by_name["edge_girth"].row.applicable
    assert by_name["small_order_edge"].fired
    assert cert.certified and cert.oracle == 2


def test_k5_vertex_k4():
    cert = certify_vertex(complete(5), 4, with_oracle=True)
    by_name = {r.row.theorem: r for r in cert.results}
    assert not by_name["vertex_girth"].row.applicable
    assert cert.certified and cert.oracle == 4 and cert.agrees


def test_c8_vertex_k2():
    cert = certify_vertex(cycle(8), 2, with_oracle=True)
    by_name = {r.row.theorem: r for r in cert.results}
    assert not by_name["ratio_girth"].row.applicable
    assert not by_name["vertex_girth"].row.applicable
    assert cert.certified and cert.oracle == 2


def test_certify_errors():
    with pytest.raises(DisconnectedError):
        certify_edge(from_edges(4, [(0, 1), (2, 3)]), 2)
    with pytest.raises(DegreeTooSmallError):
        certify_edge(path(4), 2)
    with pytest.raises(DegreeTooSmallError):
        certify_vertex(petersen(), 4)
    with pytest.raises(DomainError):
        certify_edge(petersen(), 1)
    with pytest.raises(DomainError):
        certify_edge(complete(4), 2, r=3)


def test_r_override_weakens_clique_rows():
    tight = certify_edge(petersen(), 2).results
    loose = certify_edge(petersen(), 2, r=3).results
    a = {r.row.theorem: r.row for r in tight}["edge_clique"]
    b = {r.row.theorem: r.row for r in loose}["edge_clique"]
    assert b.rhs >= a.rhs


def test_analyze_k2():
    a = analyze(complete(2))
    d = a.to_dict()
    assert (d["n"], d["delta"], d["girth"]) == (2, 1, None)
    assert all(not r.row.applicable for r in a.results if "girth" in r.row.theorem)


def test_analyze_c5():
    d = analyze(cycle(5)).to_dict()
    assert d["kappa"] == d["kappa_edge"] == 2
    assert d["mu"] == pytest.approx(2 - 2 * math.cos(2 * math.pi / 5), abs=1e-8)
    assert d["mu"] == pytest.approx(1.381966, abs=1e-6)


def test_analyze_petersen():
    d = analyze(petersen()).to_dict()
    assert (d["mu"], d["mu1"], d["lambda2"], d["q2"]) == pytest.approx((2, 5, 1, 4))
    assert (d["girth"], d["omega"], d["kappa"], d["kappa_edge"]) == (5, 2, 3, 3)


def test_certificate_json_keys():
    payload = json.loads(dumps(certify_vertex(petersen(), 3, with_oracle=True).to_dict()))
    assert set(payload) == {"graph6", "params", "rows", "verdict", "oracle"}
    assert payload["graph6"] == "IheA@GUAo"
    assert payload["oracle"] == {"target": VERTEX, "value": 3, "agrees": True}
    assert dumps(certify_vertex(petersen(), 3).to_dict()) == dumps(certify_vertex(petersen(), 3).to_dict())


def test_compare_example_n40():
    report = compare_thresholds(ParamSet(40, 3, 3, 5, 2, 2))
    rows = {r.theorem: r for r in report.rows}
    new, f, four = rows["edge_girth"], rows["prior_f"], rows["prior_four_ninths"]
    assert new.rhs == pytest.approx(40 / 300)
    assert f.rhs == pytest.approx(0.15625)
    assert new.rhs < f.rhs < four.rhs
    assert report.remarks and all(c.holds for c in report.remarks)
    assert report.best[EDGE].theorem == "edge_girth"


def test_compare_delta2_rows_equal():
    for g in range(3, 12):
        rows = {r.theorem: r for r in compare_thresholds(ParamSet(4 * g, 2, 2, g, 2, 2)).rows}
        assert rows["edge_girth"].exact == rows["prior_f"].exact


def test_remarks_hold_over_sweep():
    checked = 0
    for d in range(2, 7):
        for g in range(3, 9):
            for k in range(2, d + 1):
                for n in range(d + 1, 400, 7):
                    for c in compare_thresholds(ParamSet(n, d, d, g, 2, k)).remarks:
                        assert c.holds, (n, d, g, k, c)
                        checked += 1
    assert checked > 1000


def test_rows_for_targets_and_prior():
    p = ParamSet(30, 3, 3, 5, 2, 2)
    assert {r.target for r in rows_for(p, targets=(EDGE,))} == {EDGE}
    names = {r.theorem for r in rows_for(p, include_prior=True)}
    assert {"prior_f", "prior_nu", "prior_four_ninths", "prior_delta_plus_one"} <= names


def _sound_and_monotone(G):
    kappa_edge = brute_edge_connectivity(G.n, G.edges)
    kappa = brute_vertex_connectivity(G.n, G.edges)
    edge_ok = True
    for k in range(2, G.min_degree + 1):
        e = certify_edge(G, k)
        if e.certified:
            assert kappa_edge >= k
            assert edge_ok  # certified at k implies certified at k - 1
        if certify_vertex(G, k).certified:
            assert kappa >= k
        edge_ok = e.certified


@pytest.mark.parametrize("n,min_degree", [(4, 2), (5, 2), (6, 3)])
def test_soundness_and_monotonicity_exhaustive(n, min_degree):
    for G in enumerate_labeled(n, connected=True, min_degree=min_degree):
        _sound_and_monotone(G)


def test_soundness_random_n10():
    for p in (0.3, 0.5, 0.8):
        for G in gnp_stream(10, p, 60, seed=7):
            if is_connected(G) and G.min_degree >= 2:
                _sound_and_monotone(G)

"""The nine acceptance criteria, one test each.

The n <= 7 campaign is run once per session and shared by criteria 3, 4
and 7.  A summary line per criterion is printed at the end of the run.
"""

import math
import subprocess
import sys
import time

import numpy as np
import pytest

from spectral_connectivity.bounds import ParamSet, moore_bound
from spectral_connectivity.certify import NEW_THEOREMS, PRIOR_THEOREMS, TRANSFER_THEOREMS, compare_thresholds, rows_for
from spectral_connectivity.corpus import CorpusSpec, complete, cycle, enumerate_labeled, gnp_stream, path, petersen
from spectral_connectivity.invariants import clique_number, edge_connectivity, girth, vertex_connectivity
from spectral_connectivity.spectra import algebraic_connectivity, laplacian_spectrum
from spectral_connectivity.verify import (
    COMPONENT_SIZE, FIEDLER_BOUNDS, HAEMERS_PAIRS, PROPERTIES, SLACK, SOUNDNESS, SUBSET_SIZE, run_campaign,
)

from .oracles import brute_clique_number, brute_edge_connectivity, brute_girth, brute_vertex_connectivity

LEMMAS = (SUBSET_SIZE, COMPONENT_SIZE, FIEDLER_BOUNDS, HAEMERS_PAIRS)


@pytest.fixture(scope="session")
def campaign_n7():
    """Every property over all connected labeled graphs of order 2..7."""
    return {n: run_campaign(CorpusSpec("exhaustive", n=n), PROPERTIES, seed=1) for n in range(2, 8)}


def _by_property(results, prop):
    return [c for r in results.values() for c in r.counterexamples if c.property == prop]


@pytest.mark.criterion(1)
def test_criterion_1_known_spectra(record_property):
    """Known Laplacian spectra to 1e-8 in under a second"""
    started = time.perf_counter()
    for n in range(2, 11):
        assert abs(algebraic_connectivity(complete(n)) - n) <= 1e-8
    for n in range(3, 13):
        assert abs(algebraic_connectivity(cycle(n)) - (2 - 2 * math.cos(2 * math.pi / n))) <= 1e-8
    assert np.allclose(laplacian_spectrum(path(3)).values, [3, 1, 0], rtol=0, atol=1e-8)
    assert np.allclose(laplacian_spectrum(petersen()).values, [5] * 4 + [2] * 5 + [0], rtol=0, atol=1e-8)
    elapsed = time.perf_counter() - started
    record_property("detail", f"{elapsed:.3f} s")
    assert elapsed < 1.0


@pytest.mark.criterion(2)
def test_criterion_2_moore_table():
    """Moore bound table, exact integers"""
    assert [moore_bound(2, g) for g in range(3, 11)] == list(range(3, 11))
    assert (moore_bound(3, 5), moore_bound(3, 6), moore_bound(4, 3), moore_bound(3, 4)) == (10, 14, 5, 6)


@pytest.mark.criterion(3)
def test_criterion_3_exhaustive_soundness(campaign_n7, record_property):
    """Every theorem row sound on all connected graphs n <= 7 with delta >= 2"""
    names = {r.theorem for r in rows_for(ParamSet(30, 3, 3, 5, 2, 2), include_prior=True)}
    assert set(NEW_THEOREMS) | set(PRIOR_THEOREMS) | set(TRANSFER_THEOREMS) <= names
    assert len(NEW_THEOREMS) == 7 and len(PRIOR_THEOREMS) == 4 and len(TRANSFER_THEOREMS) == 2
    graphs = sum(r.checks_run.get(SOUNDNESS, 0) for r in campaign_n7.values())
    razors = sum(len(r.razor_edges) for r in campaign_n7.values())
    bad = _by_property(campaign_n7, SOUNDNESS)
    record_property("detail", f"{graphs} graphs, {len(bad)} counterexamples, {razors} razor-edge rows")
    assert campaign_n7[7].checks_run[SOUNDNESS] > 1_000_000
    assert bad == []


@pytest.mark.criterion(4)
def test_criterion_4_lemma_suite(campaign_n7, record_property):
    """Lemma suite exhaustive on connected graphs n <= 7 (cuts and pairs)"""
    counts = {p: sum(r.checks_run.get(p, 0) for r in campaign_n7.values()) for p in LEMMAS}
    bad = [c for p in LEMMAS for c in _by_property(campaign_n7, p)]
    record_property("detail", ", ".join(f"{p} {counts[p]}" for p in LEMMAS) + f"; {len(bad)} counterexamples")
    assert all(counts[p] > 0 for p in LEMMAS)
    assert bad == []


@pytest.mark.criterion(5)
def test_criterion_5_remark_sweep(record_property):
    """Improvement inequalities hold strictly across the parameter sweep"""
    checked = 0
    for delta in range(3, 7):
        for g in range(5, 9):
            N = moore_bound(delta, g)
            for k in range(2, delta + 1):
                for n in range(2 * N, 4 * N + 1):
                    for remark in compare_thresholds(ParamSet(n, delta, delta, g, 2, k)).remarks:
                        assert remark.lhs < remark.rhs, (n, delta, g, k, remark)
                        checked += 1
    record_property("detail", f"{checked} comparisons")
    assert checked > 0


@pytest.mark.criterion(6)
def test_criterion_6_oracle_cross_validation(record_property):
    """Invariants match brute force on all connected graphs n <= 6"""
    mismatches = total = 0
    for n in range(1, 7):
        for G in enumerate_labeled(n, connected=True):
            e = G.edges
            total += 1
            mismatches += (vertex_connectivity(G) != brute_vertex_connectivity(n, e)) \
                + (edge_connectivity(G) != brute_edge_connectivity(n, e)) \
                + (girth(G) != brute_girth(n, e)) + (clique_number(G) != brute_clique_number(n, e))
    record_property("detail", f"{total} graphs, {mismatches} mismatches")
    assert total == 1 + 1 + 4 + 38 + 728 + 26704
    assert mismatches == 0


@pytest.mark.criterion(7)
def test_criterion_7_fiedler_chain(campaign_n7, record_property):
    """mu <= kappa <= kappa' <= delta on n <= 7 and on 1500 seeded G(20, p)"""
    exhaustive = sum(r.checks_run.get(FIEDLER_BOUNDS, 0) for r in campaign_n7.values())
    chain_bad = [c for c in _by_property(campaign_n7, FIEDLER_BOUNDS)
                 if "<=" in c.witness.get("part", "")]
    violations = 0
    for p in (0.2, 0.4, 0.6):
        for G in gnp_stream(20, p, 500, seed=1):
            mu, kappa, kappa_edge = algebraic_connectivity(G), vertex_connectivity(G), edge_connectivity(G)
            if mu > kappa + SLACK * max(1, kappa) or not kappa <= kappa_edge <= G.min_degree:
                violations += 1
    record_property("detail", f"{exhaustive} exhaustive + 1500 random graphs, "
                              f"{len(chain_bad) + violations} violations")
    assert chain_bad == [] and violations == 0


@pytest.mark.criterion(8)
def test_criterion_8_mutation_caught(record_property):
    """Halved thresholds produce counterexamples on n <= 5"""
    found = sum(len(run_campaign(CorpusSpec("exhaustive", n=n), (SOUNDNESS,), scale=0.5).counterexamples)
                for n in range(2, 6))
    record_property("detail", f"{found} counterexamples")
    assert found >= 1


@pytest.mark.criterion(9)
def test_criterion_9_cli_determinism(record_property):
    """verify --exhaustive 5 --all --seed 1 --json is byte-identical across runs"""
    cmd = [sys.executable, "-m", "spectral_connectivity", "verify", "--exhaustive", "5", "--all",
           "--seed", "1", "--json"]
    first = subprocess.run(cmd, capture_output=True, check=True).stdout
    second = subprocess.run(cmd, capture_output=True, check=True).stdout
    record_property("detail", f"{len(first)} bytes")
    assert first and first == second

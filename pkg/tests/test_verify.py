import json

import pytest

from spectral_connectivity.corpus import (
    CorpusSpec, complete, cycle, enumerate_labeled, path, petersen, star,
)
from spectral_connectivity.errors import DomainError
from spectral_connectivity.graph import from_edges
from spectral_connectivity.spectra import algebraic_connectivity, laplacian_radius
from spectral_connectivity.verify import (
    PROPERTIES,
    SOUNDNESS,
    Caps,
    check_component_lemmas,
    check_courant_weyl,
    check_fiedler_bounds,
    check_haemers_pair_bounds,
    check_subset_size_lemma,
    check_theorem_soundness,
    check_turan,
    component_bound_violation,
    haemers_sides,
    run_campaign,
    soundness_findings,
)

TWO_K4 = from_edges(7, [(a, b) for block in ((0, 1, 2, 3), (3, 4, 5, 6))
                        for i, a in enumerate(block) for b in block[i + 1:]])
BARBELL = from_edges(10, [(a, b) for block in (range(5), range(5, 10))
                          for a in block for b in block if a < b] + [(4, 5)])


def test_subset_size_c6():
    assert check_subset_size_lemma(cycle(6)) is None


def test_subset_size_petersen_r2():
    assert check_subset_size_lemma(petersen(), r=2) is None


def test_two_k4_sharing_a_vertex_is_tight():
    assert check_component_lemmas(TWO_K4) is None
    # |X| = 3 beside S = {shared}: part (i) gives min{3, 3} = 3
    assert component_bound_violation(3, 1, 3, 4, None) is None
    assert component_bound_violation(2, 1, 3, 4, None) == ("i", 3)


def test_barbell_edge_cut_is_tight():
    assert check_component_lemmas(BARBELL) is None


def test_component_vacuous_when_kappa_at_least_delta():
    assert check_component_lemmas(petersen()) is None
    assert check_component_lemmas(complete(6)) is None


def test_fiedler_examples():
    assert check_fiedler_bounds(star(5)) is None
    assert algebraic_connectivity(star(5)) == pytest.approx(1)
    assert check_fiedler_bounds(petersen()) is None
    assert check_fiedler_bounds(complete(5)) is None  # mu = n exceeds kappa = n - 1 only for K_n


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_fiedler_all_connected(n):
    for G in enumerate_labeled(n, connected=True):
        assert check_fiedler_bounds(G) is None


def test_haemers_examples():
    assert check_haemers_pair_bounds(complete(5)) is None
    C5 = cycle(5)
    sides = dict((name, (lhs, rhs)) for name, lhs, rhs in
                 haemers_sides(5, 1, 1, laplacian_radius(C5), algebraic_connectivity(C5)))
    lhs, rhs = sides["brouwer_haemers"]
    assert lhs == pytest.approx(1 / 15) and rhs == pytest.approx(0.25)
    assert check_haemers_pair_bounds(C5) is None
    assert check_haemers_pair_bounds(path(4)) is None


def test_soundness_petersen():
    for k in (2, 3):
        for theorem in ("edge_girth", "vertex_girth", "small_order_edge", "prior_f"):
            assert check_theorem_soundness(petersen(), k, theorem) is None
    bad, _ = soundness_findings(petersen())
    assert bad == []


def test_courant_weyl_and_turan():
    for G in (petersen(), cycle(7), complete(5), TWO_K4):
        assert check_courant_weyl(G) is None
        assert check_turan(G) is None
    assert check_turan(from_edges(3, [])) is None


def test_mutation_is_caught_per_graph():
    # halving every threshold makes the spectral rows fire on graphs whose connectivity is too small
    found = []
    for G in enumerate_labeled(5, connected=True, min_degree=2):
        bad, _ = soundness_findings(G, scale=0.5)
        found.extend(bad)
    assert found
    assert all(c.property == SOUNDNESS and c.witness["oracle"] < c.witness["k"] for c in found)


def test_campaign_named_petersen_clean():
    result = run_campaign(CorpusSpec("named", names=("petersen",)))
    assert result.clean and result.exit_code == 0
    assert result.graphs == 1
    assert set(result.checks_run) == set(PROPERTIES)


def test_campaign_exhaustive5_clean():
    result = run_campaign(CorpusSpec("exhaustive", n=5))
    assert result.clean and result.graphs == 728


@pytest.mark.parametrize("n", [3, 4, 5])
def test_engines_agree(n):
    spec = CorpusSpec("exhaustive", n=n)
    batch = run_campaign(spec, engine="batch", seed=1)
    graph = run_campaign(spec, engine="graph", seed=1)
    assert batch.to_json() == graph.to_json()


def test_engines_agree_under_mutation():
    spec = CorpusSpec("exhaustive", n=5)
    batch = run_campaign(spec, properties=(SOUNDNESS,), scale=0.5, engine="batch")
    graph = run_campaign(spec, properties=(SOUNDNESS,), scale=0.5, engine="graph")
    assert not batch.clean and batch.exit_code == 1
    assert batch.to_json() == graph.to_json()


def test_campaign_determinism_and_threads():
    spec = CorpusSpec("random", n=9, p=0.5, count=40, seed=3)
    caps = Caps(cut_cap=6, quotient_cap=5, pair_cap=4, samples=50)
    one = run_campaign(spec, caps=caps)
    assert one.to_json() == run_campaign(spec, caps=caps).to_json()
    assert one.to_json() == run_campaign(spec, caps=caps, threads=2).to_json()


def test_campaign_json_shape():
    payload = json.loads(run_campaign(CorpusSpec("exhaustive", n=4)).to_json())
    assert set(payload) == {"corpus", "config", "graphs", "checks_run", "counterexamples",
                            "razor_edges", "clean"}


def test_campaign_rejects_bad_options():
    with pytest.raises(ValueError):
        run_campaign(CorpusSpec("named", names=("petersen",)), properties=("nope",))
    with pytest.raises(ValueError):
        run_campaign(CorpusSpec("named", names=("petersen",)), engine="batch")


def test_clique_override_below_omega_rejected():
    with pytest.raises(DomainError):
        check_component_lemmas(TWO_K4, r=2)

import networkx as nx
import pytest
from hypothesis import given, settings

from spectral_connectivity.corpus import (
    complete, complete_bipartite, cycle, enumerate_labeled, gnp_stream, path, petersen, star,
)
from spectral_connectivity.errors import CompleteGraphError, DisconnectedError, DomainError
from spectral_connectivity.graph import component_masks, cut_degree, from_edges, induced_delete, is_connected
from spectral_connectivity.invariants import (
    clique_number,
    edge_connectivity,
    edge_connectivity_witness,
    girth,
    turan_edge_bound_holds,
    vertex_connectivity,
    vertex_connectivity_witness,
)

from .oracles import (
    brute_clique_number, brute_edge_connectivity, brute_girth, brute_vertex_connectivity, to_nx,
)
from .test_graph import graphs

BOWTIE = from_edges(5, [(0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4)])


def test_girth_examples():
    assert girth(cycle(5)) == 5
    assert girth(path(6)) is None
    assert girth(star(4)) is None
    assert girth(petersen()) == 5
    assert girth(complete_bipartite(3, 3)) == 4


def test_clique_examples():
    assert clique_number(complete(4)) == 4
    assert clique_number(cycle(5)) == 2
    assert clique_number(petersen()) == 2
    assert clique_number(from_edges(3, [])) == 1


def test_edge_connectivity_examples():
    assert edge_connectivity(complete(4)) == 3
    assert edge_connectivity(path(3)) == 1
    assert edge_connectivity(petersen()) == 3
    assert edge_connectivity(from_edges(4, [(0, 1), (2, 3)])) == 0
    assert edge_connectivity(from_edges(1, [])) == 0


def test_vertex_connectivity_examples():
    assert vertex_connectivity(complete(4)) == 3
    assert vertex_connectivity(cycle(5)) == 2
    assert vertex_connectivity(petersen()) == 3
    assert vertex_connectivity(from_edges(4, [(0, 1), (2, 3)])) == 0


def test_edge_witness_examples():
    assert edge_connectivity_witness(path(3)) in ((1, frozenset({0})), (1, frozenset({2})))
    k, X = edge_connectivity_witness(cycle(5))
    assert k == 2 and cut_degree(cycle(5), X) == 2
    k, X = edge_connectivity_witness(petersen())
    assert k == 3 and cut_degree(petersen(), X) == 3 and len(X) <= 5
    with pytest.raises(DisconnectedError):
        edge_connectivity_witness(from_edges(4, [(0, 1), (2, 3)]))


def test_vertex_witness_examples():
    assert vertex_connectivity_witness(path(3)) in ((1, frozenset({1}), frozenset({0})),
                                                   (1, frozenset({1}), frozenset({2})))
    k, S, X = vertex_connectivity_witness(BOWTIE)
    assert (k, S, len(X)) == (1, frozenset({2}), 2)
    k, S, X = vertex_connectivity_witness(petersen())
    assert k == 3 and len(S) == 3 and len(X) >= 1
    H, _ = induced_delete(petersen(), S)
    assert not is_connected(H)
    with pytest.raises(CompleteGraphError):
        vertex_connectivity_witness(complete(5))


def test_turan_examples():
    assert turan_edge_bound_holds(cycle(5), 2)
    assert turan_edge_bound_holds(complete(4), 4)
    with pytest.raises(DomainError):
        turan_edge_bound_holds(complete(4), 3)


def _check_against_brute(G):
    assert vertex_connectivity(G) == brute_vertex_connectivity(G.n, G.edges)
    assert edge_connectivity(G) == brute_edge_connectivity(G.n, G.edges)
    assert girth(G) == brute_girth(G.n, G.edges)
    assert clique_number(G) == brute_clique_number(G.n, G.edges)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_brute_force_agreement_all_graphs(n):
    for G in enumerate_labeled(n):
        _check_against_brute(G)


@settings(max_examples=150, deadline=None)
@given(graphs(max_n=9))
def test_against_networkx(G):
    H = to_nx(G)
    if G.n >= 2 and nx.is_connected(H):
        assert edge_connectivity(G) == nx.edge_connectivity(H)
        assert vertex_connectivity(G) == nx.node_connectivity(H)
    g = nx.girth(H)
    assert girth(G) == (None if g == float("inf") else g)
    assert clique_number(G) == max(len(c) for c in nx.find_cliques(H))


@settings(max_examples=100, deadline=None)
@given(graphs(max_n=10))
def test_witness_properties(G):
    if G.n < 2 or not is_connected(G):
        return
    k, X = edge_connectivity_witness(G)
    assert cut_degree(G, X) == k == edge_connectivity(G)
    assert 2 * len(X) <= G.n
    mask = sum(1 << v for v in X)
    assert len(component_masks(G, mask)) == 1
    assert len(component_masks(G, G.full_mask & ~mask)) == 1
    if not G.is_complete():
        kappa, S, comp = vertex_connectivity_witness(G)
        assert kappa == len(S) == vertex_connectivity(G)
        rest = G.full_mask & ~sum(1 << v for v in S)
        comps = component_masks(G, rest)
        assert len(comps) >= 2
        assert len(comp) == min(c.bit_count() for c in comps)


def test_whitney_chain_random_20():
    for G in gnp_stream(20, 0.3, 40, seed=5):
        assert vertex_connectivity(G) <= edge_connectivity(G) <= G.min_degree

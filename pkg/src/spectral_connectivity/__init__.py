"""Certify edge- and vertex-connectivity of graphs from Laplacian spectra.

The sufficient conditions combine the algebraic connectivity with the
minimum degree, girth (through the Moore bound) or clique number; exact
max-flow oracles and an exhaustive verification harness back every claim.
"""

from .bounds import (
    ParamSet,
    Threshold,
    courant_weyl_transfer,
    edge_clique_threshold,
    edge_girth_threshold,
    f_prior,
    moore_bound,
    nu_prior,
    phi,
    ratio_clique_condition,
    ratio_girth_condition,
    small_order_rule,
    vertex_clique2_threshold,
    vertex_clique_threshold,
    vertex_girth_threshold,
)
from .certify import Certificate, analyze, certify_edge, certify_vertex, compare_thresholds
from .corpus import CorpusSpec, SplitMix64, enumerate_labeled, gnp_stream, named, parse_named, random_gnp
from .errors import GraphError, NoConvergenceError
from .graph import Graph, from_edges, is_connected, parse_graph6, write_graph6
from .invariants import (
    clique_number,
    edge_connectivity,
    edge_connectivity_witness,
    girth,
    vertex_connectivity,
    vertex_connectivity_witness,
)
from .spectra import (
    algebraic_connectivity,
    eigenvalues_sym,
    jacobi_eigh,
    lambda2,
    laplacian,
    laplacian_radius,
    laplacian_spectrum,
    q2,
)
from .verify import CampaignResult, Caps, run_campaign

__version__ = "0.1.0"

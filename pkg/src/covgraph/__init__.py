"""Reasoning engine for reading conditional (in)dependencies off
covariance graphs, with a rule-based closure engine, a latent-DAG
construction, and a Gaussian determinant oracle for verification."""

from .graphs import (
    MAX_NODES,
    GraphKind,
    GraphParseError,
    MixedGraph,
    NodeSet,
    SizeLimitError,
    ancestors,
    bit,
    connectivity_components,
    format_graph,
    format_nodeset,
    induced_subgraph,
    is_chain_graph,
    iter_nodes,
    mask_of,
    moral_graph,
    node_list,
    parse_graph,
    submasks,
)
from .separation import (
    CITriple,
    all_independencies,
    canonical_triples,
    ci_independent,
    cov_independent_by_separation,
    sep,
)
from .connection import (
    PathWitness,
    all_dependencies,
    con,
    conc_dependence_witness,
    conc_dependent,
    connection_witness,
    count_paths_within,
    cov_dependence_witness,
    cov_dependent,
)
from .closure import (
    ClosureState,
    Derivation,
    NotEstablishedError,
    dependence_base,
    explain,
    replay_provenance,
    saturate,
    verify_completeness,
    verify_soundness,
)
from .gaussian import (
    DEFAULT_TOL,
    FaithfulnessReport,
    GaussianModel,
    NdParameterization,
    cholesky,
    ci_test,
    concentration_graph_of,
    covariance_graph_of,
    det,
    dump_model,
    faithfulness_report,
    nd_dimension,
    sample_markov_gaussian,
    trial_seed,
)
from .transforms import (
    LatentDag,
    is_forest,
    latent_dag,
    verify_forest_faithfulness,
    verify_latent_equivalence,
)
from .report import Report

__version__ = "0.1.0"

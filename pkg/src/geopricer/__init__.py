"""Geometric multi-attribute pricing: exact solvers, approximation
algorithms, reductions, and an experiment harness."""

from .approx import ApproxConfig, check_trace_coverage, smp_approx, uudp_min_approx
from .core import (
    EXCLUDED,
    MODELS,
    SMP,
    UUDP_MIN,
    Consumer,
    Instance,
    Solution,
    consideration_set,
    evaluate_revenue,
    extend_prices,
    instance_from_json,
    instance_to_json,
    prices_from_json,
    prices_to_json,
    rat_from_json,
    rat_to_json,
    restrict_instance,
    revenue_report,
)
from .errors import CapExceededError, GeopricerError, InputError, InternalCheckError
from .exact import brute_force_smp, brute_force_uudp, solve_one_dim_uudp
from .generate import GeneratorSpec, generate, spec_from_json
from .poset import (
    Decomposition,
    decompose_chains_antichains,
    decomposition_problems,
    max_antichain,
    min_chain_cover,
)
from .qptas import (
    build_ladder,
    grid_normalize,
    preprocess_smp,
    qptas_uudp2,
    smp_special_case_dp,
)
from .reductions import (
    BipartiteGvpInstance,
    Graph,
    HighwayInstance,
    SetSystemInstance,
    bipartite_from_json,
    bipartite_gvp_to_4smp,
    graph_from_json,
    highway_from_json,
    highway_to_2smp,
    permutation_dimension,
    random_permutation_embedding,
    set_preservation_problems,
    set_system_from_json,
    set_system_to_json,
    universal_embedding,
    vertex_cover_to_pricing,
)
from .rng import SeedStream
from .subroutines import (
    Embedding,
    balcan_blum_approx,
    balcan_blum_trials,
    chain_embedding,
    coordinate_groups,
    drop_coordinate_embedding,
    epsilon_net_hitting_set,
    split_by_consideration_size,
    verify_embedding,
)

__version__ = "0.1.0"

__all__ = [
    "ApproxConfig",
    "BipartiteGvpInstance",
    "CapExceededError",
    "Consumer",
    "Decomposition",
    "EXCLUDED",
    "Embedding",
    "GeneratorSpec",
    "GeopricerError",
    "Graph",
    "HighwayInstance",
    "InputError",
    "Instance",
    "InternalCheckError",
    "MODELS",
    "SMP",
    "SeedStream",
    "SetSystemInstance",
    "Solution",
    "UUDP_MIN",
    "balcan_blum_approx",
    "balcan_blum_trials",
    "bipartite_from_json",
    "bipartite_gvp_to_4smp",
    "brute_force_smp",
    "brute_force_uudp",
    "build_ladder",
    "chain_embedding",
    "check_trace_coverage",
    "consideration_set",
    "coordinate_groups",
    "decompose_chains_antichains",
    "decomposition_problems",
    "drop_coordinate_embedding",
    "epsilon_net_hitting_set",
    "evaluate_revenue",
    "extend_prices",
    "generate",
    "graph_from_json",
    "grid_normalize",
    "highway_from_json",
    "highway_to_2smp",
    "instance_from_json",
    "instance_to_json",
    "max_antichain",
    "min_chain_cover",
    "permutation_dimension",
    "preprocess_smp",
    "prices_from_json",
    "prices_to_json",
    "qptas_uudp2",
    "random_permutation_embedding",
    "rat_from_json",
    "rat_to_json",
    "restrict_instance",
    "revenue_report",
    "set_preservation_problems",
    "set_system_from_json",
    "set_system_to_json",
    "smp_approx",
    "smp_special_case_dp",
    "solve_one_dim_uudp",
    "spec_from_json",
    "split_by_consideration_size",
    "universal_embedding",
    "uudp_min_approx",
    "verify_embedding",
    "vertex_cover_to_pricing",
]

"""Homomorphism ratio profiles of cycles, necklaces and hyperstars.

The submodules are importable on their own; the common names are re-exported
here.
"""
from . import cli, errors, expander, graphs, homcount, profile, realize  # noqa: F401
from .errors import *  # noqa: F401,F403
from .graphs import (
    Graph,
    Hypergraph,
    add_isolated_vertices,
    clique_number,
    complete,
    cycle,
    disjoint_union,
    disjoint_union_hyper,
    empty,
    from_graph6,
    from_hyper_json,
    hyperstar,
    necklace,
    q_ify,
    to_graph6,
    to_hyper_json,
)
from .expander import (
    AlonProvider,
    FallbackProvider,
    NdLambdaReport,
    get_provider,
    petersen,
    verify_ndlambda,
)
from .homcount import (
    SpectrumBuckets,
    SymmetricIntMatrix,
    adjacency_matrix,
    brute_force_hom,
    brute_force_hom_hyper,
    clique_edge_matrix,
    cycle_hom,
    density,
    hyperstar_hom,
    necklace_hom,
    spectrum,
    spectrum_buckets,
    trace_power,
)
from .profile import (
    BoundaryPattern,
    FiberPoint,
    Infeasible,
    ProfilePoint,
    boundary_point,
    eigen_weight_vector,
    fiber_scale,
    power_sums,
    ratio_point_cycles,
    ratio_point_hyperstars,
    ratio_point_mixed,
    ratio_point_necklaces,
    realize_weights,
    sample_profile,
)
from .realize import (
    ConvergenceRow,
    TargetSpec,
    clique_sequence_cycles,
    clique_sequence_necklaces,
    convergence_experiment,
    expander_sequence_mixed,
    hyperstar_sequence,
)

__version__ = "0.1.0"

"""Low-space path-reporting distance structures for undirected graphs.

Four layers, all deterministic given their seeds:

  * covers: sparse covers with bounded diameter blow-up and overlap
  * labeling: multi-scale distance labels answering path queries from
    two labels alone
  * oracle: a pruned landmark oracle for unweighted graphs whose query
    time is proportional to the reported path length
  * routing: compact tables and labels forwarding hop by hop along
    cover trees

Hot kernels run on a compiled extension when available; set
COMPACTPATHS_BACKEND=pure|compiled|auto to override selection.
"""
from ._backend import BACKEND
from .bench import ExperimentConfig, ExperimentRow, run_bench
from .covers import (
    Cluster,
    CoverStats,
    Partition,
    SparseCover,
    build_cover_deterministic,
    build_cover_randomized,
    padded_partition,
    tree_path,
    verify_cover,
)
from .errors import (
    GapCoverMissError,
    GraphFormatError,
    InvalidPathError,
    PaddingFailure,
    SerializationError,
    UnreachableError,
)
from .graphs import (
    Graph,
    Path,
    ShortestPathTree,
    ball,
    diameter_upper_bound,
    dump_graph,
    eccentricity,
    exact_distance,
    generate_graph,
    load_graph,
    shortest_path_tree,
    sssp_distances,
    validate_path,
)
from .labeling import (
    LabelingScheme,
    ScaleSet,
    VertexLabel,
    build_labeling,
    make_scales,
    query_distance,
)
from .numutil import INF
from .oracle import (
    BunchStore,
    HittingSet,
    PrunedOracle,
    PrunedTree,
    TZLevels,
    build_oracle,
    build_oracle_auto,
    find_witness,
    hitting_set,
    prune_tree,
    skeleton_path,
    sparsify_skeleton,
    tree_separator,
    tz_build,
)
from .routing import (
    DELIVERED,
    RouteResult,
    RoutingLabel,
    RoutingScheme,
    RoutingTable,
    TreeRouteInfo,
    build_routing,
    route,
    route_step,
)
from .serialize import deserialize, dump, load, serialize

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "INF",
    "__version__",
    "Graph",
    "Path",
    "ShortestPathTree",
    "ball",
    "diameter_upper_bound",
    "dump_graph",
    "eccentricity",
    "exact_distance",
    "generate_graph",
    "load_graph",
    "shortest_path_tree",
    "sssp_distances",
    "validate_path",
    "Cluster",
    "CoverStats",
    "Partition",
    "SparseCover",
    "build_cover_deterministic",
    "build_cover_randomized",
    "padded_partition",
    "tree_path",
    "verify_cover",
    "LabelingScheme",
    "ScaleSet",
    "VertexLabel",
    "build_labeling",
    "make_scales",
    "query_distance",
    "BunchStore",
    "HittingSet",
    "PrunedOracle",
    "PrunedTree",
    "TZLevels",
    "build_oracle",
    "build_oracle_auto",
    "find_witness",
    "hitting_set",
    "prune_tree",
    "skeleton_path",
    "sparsify_skeleton",
    "tree_separator",
    "tz_build",
    "DELIVERED",
    "RouteResult",
    "RoutingLabel",
    "RoutingScheme",
    "RoutingTable",
    "TreeRouteInfo",
    "build_routing",
    "route",
    "route_step",
    "ExperimentConfig",
    "ExperimentRow",
    "run_bench",
    "serialize",
    "deserialize",
    "dump",
    "load",
    "GraphFormatError",
    "InvalidPathError",
    "UnreachableError",
    "PaddingFailure",
    "GapCoverMissError",
    "SerializationError",
]

"""simplexrank: exact weight-set decomposition for 3-way weighted rank
aggregation, with ranking analytics, SVG renderings, a CLI, and an HTTP
explorer API."""

from .analytics import (
    DominanceMatrices,
    SensitivityField,
    adjacency_graph,
    barchart,
    chebyshev_center,
    chebyshev_radius,
    dominance_matrices,
    expected_ranking,
    item_heatmap,
    pairwise_dominance,
    rankability,
    sensitivity,
)
from .decompose import (
    DecomposeConfig,
    GridColormap,
    LabeledPoint,
    collect_labels,
    exact_decompose,
    grid_decompose,
    intersection_points,
    label_point,
)
from .errors import (
    CoverageGapError,
    DegenerateInputError,
    GeometricDegeneracyError,
    IncompleteDecompositionError,
    InputError,
    SimplexRankError,
)
from .extensions import (
    NonlinearUtility,
    PartitionConfig,
    nonlinear_normalize,
    nonlinear_utility,
    partition_aggregate,
    reduce_to_triangle,
    sigmoid_f,
)
from .geometry import (
    Delta,
    Hyperplane,
    build_hyperplanes,
    classify_pair,
    dedup_hyperplanes,
    endpoints_of,
    line_of,
    side_of,
    to_equilateral,
)
from .model import (
    Decomposition,
    IndifferenceRegion,
    InputSet,
    Item,
    RankLabel,
    ScoreVector,
    WeightVector,
    aggregate,
    kendall_tau,
    label_of_weight,
    make_items,
    rank_of,
)
from .preprocess import (
    TopKList,
    complete_lists,
    normalize_rating,
    normalized_input_set,
    ranking_from_rating,
)

__version__ = "0.1.0"

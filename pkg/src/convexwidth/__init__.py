"""Tree decompositions and balanced separations for outer min-k-planar convex drawings."""

from .decomp import TreeDecomposition, decompose, run_pipeline, validate_td, width_bound
from .drawing import (
    ConvexDrawing,
    CrossingReport,
    Graph,
    compute_crossings,
    expand,
    hull_complete,
    is_outer_k_planar,
    is_outer_min_k_planar,
)
from .errors import (
    BudgetExceeded,
    ConvexWidthError,
    InputError,
    InternalError,
    NotMinKPlanar,
    ParseError,
    ThreeConcurrentEdges,
    TooLarge,
)
from .families import (
    Bramble,
    fk_layout,
    gen_Fk,
    gen_Gk,
    gen_Gk_bramble,
    gen_grid,
    gen_stacked_prism,
    random_outer_min_k_planar,
    verify_bramble,
)
from .oracles import bramble_order, exact_treewidth
from .planarize import compute_faces, planarize
from .separate import (
    Separation,
    brute_force_min_balanced_separation,
    separate,
    separation_bound,
    verify_separation,
)

__all__ = [
    "Bramble",
    "BudgetExceeded",
    "ConvexDrawing",
    "ConvexWidthError",
    "CrossingReport",
    "Graph",
    "InputError",
    "InternalError",
    "NotMinKPlanar",
    "ParseError",
    "Separation",
    "ThreeConcurrentEdges",
    "TooLarge",
    "TreeDecomposition",
    "bramble_order",
    "brute_force_min_balanced_separation",
    "compute_crossings",
    "compute_faces",
    "decompose",
    "exact_treewidth",
    "expand",
    "fk_layout",
    "gen_Fk",
    "gen_Gk",
    "gen_Gk_bramble",
    "gen_grid",
    "gen_stacked_prism",
    "hull_complete",
    "is_outer_k_planar",
    "is_outer_min_k_planar",
    "planarize",
    "random_outer_min_k_planar",
    "run_pipeline",
    "separate",
    "separation_bound",
    "validate_td",
    "verify_bramble",
    "verify_separation",
    "width_bound",
]

"""Conflict calculus for opinion networks.

Measures how much tension a friendship network carries at the equilibrium of
averaging opinion dynamics with stubborn agents, what any single new link
does to that tension (in closed form and in exact rooted-forest counts), how
tightly graph structure bounds it, and how to spend a link budget to reduce
it.  A benchmark harness scores classic link predictors by how much of the
achievable conflict reduction their recommendations realize.
"""

from .dynamics import (
    ConflictReport,
    OpinionState,
    ShiftedLaplacianSolver,
    center,
    equilibrium,
    iterate,
    measures,
)
from .evaluation import (
    ALL_METHODS,
    EvalRecord,
    ExperimentConfig,
    Split,
    SplitSpec,
    conflict_awareness,
    normalize_weights,
    precision_at_10,
    realized_delta,
    recall_at_beta,
    run_experiment,
    split,
)
from .forests import (
    ForestCountTable,
    enumerate_forest_table,
    forest_expected_delta,
    forest_pair_distance,
    forest_profile_distance,
    forest_table,
)
from .graphs import (
    BUILTIN_DATASETS,
    Graph,
    SbmConfig,
    build_graph,
    builtin_dataset,
    edge_vector,
    erdos_renyi,
    grid_graph,
    load_graph,
    load_opinions,
    path_graph,
    sbm_blocks,
    sbm_generate,
)
from .link_delta import DeltaRecord, conflict_delta, expected_conflict_delta, scan_candidates
from .optimize import BudgetedAddition, SolverResult, gradient, objective, solve
from .predictors import HEURISTICS, PredictorConfig, ScoredPair, heuristic_score, rank
from .sbm_study import GroupStats, ordering_holds, run_group_study
from .spectral import (
    ContractionReport,
    cheeger_constant,
    contraction_experiment,
    contraction_ratio,
    contraction_report,
)

__version__ = "0.1.0"

"""Conflict-awareness benchmark for link recommenders.

Protocol per cell (eta, seed) of the factorial grid:

  1. Remove beta random edges from the graph (the positives) and sample
     beta * eta random non-edges (the negatives); the union is the candidate
     set shown to every method.
  2. Each heuristic scores all candidates; scores are scaled linearly so the
     recommended weights spend the full budget beta.
  3. Only weight placed on positives is realizable (those links actually
     existed), so the realized conflict change comes from adding the
     positives at their recommended weights.
  4. Conflict awareness (CA) divides the realized change by the best change
     achievable with budget beta on the positives alone, found by the convex
     solver; CAE is the same ratio in expectation mode.  Both land in [0, 1].
  5. Relevance is classic retrieval: recall of positives in the top-beta
     ranked candidates and precision among the top 10.

The conflict_minimization baseline runs the convex solver on the full
candidate set (it cannot tell positives from negatives) and is ranked by its
own recommended weights.

Growing eta dilutes every score-proportional recommender with weight on
unrealizable negatives, so CA should fall as eta rises; that trend, and the
baseline's worst-recall / best-CA profile, are the headline properties.
"""

from __future__ import annotations

import concurrent.futures
from dataclasses import dataclass, field, replace

import numpy as np

from . import predictors
from .dynamics import center
from .graphs import Graph, SbmConfig, builtin_dataset, load_graph, load_opinions, sbm_generate
from .optimize import BudgetedAddition, objective, solve
from .predictors import PredictorConfig, heuristic_score, rank

CONFLICT_MINIMIZATION = "conflict_minimization"
ALL_METHODS = predictors.HEURISTICS + (CONFLICT_MINIMIZATION,)

CSV_COLUMNS = (
    "dataset",
    "method",
    "beta",
    "eta",
    "seed",
    "ca",
    "cae",
    "recall",
    "precision_at_10",
    "realized_delta",
    "optimum_delta",
)


@dataclass(frozen=True)
class SplitSpec:
    """Benchmark split sizes: beta positives and beta * eta negatives."""

    beta: int = 100
    eta: int = 1
    seed: int = 0

    def __post_init__(self):
        if self.beta <= 0:
            raise ValueError(f"beta must be positive, got {self.beta}")
        if self.eta < 1:
            raise ValueError(f"eta must be at least 1, got {self.eta}")


@dataclass(frozen=True)
class Split:
    train: Graph
    positives: tuple[tuple[int, int], ...]
    negatives: tuple[tuple[int, int], ...]

    @property
    def candidates(self) -> tuple[tuple[int, int], ...]:
        """Positives and negatives merged in lexicographic order."""
        return tuple(sorted(self.positives + self.negatives))


def split(graph: Graph, spec: SplitSpec) -> Split:
    """Deterministic per seed.  Positives are drawn before negatives, so two
    specs that share a seed share positives regardless of eta."""
    edges = graph.edges
    if spec.beta > len(edges):
        raise ValueError(f"cannot remove beta={spec.beta} edges from {len(edges)}")
    non_edges = graph.non_edges()
    wanted = spec.beta * spec.eta
    if wanted > len(non_edges):
        raise ValueError(f"cannot sample {wanted} negatives from {len(non_edges)} non-edges")
    rng = np.random.default_rng(spec.seed)
    pos_idx = rng.choice(len(edges), size=spec.beta, replace=False)
    neg_idx = rng.choice(len(non_edges), size=wanted, replace=False)
    positives = tuple(sorted((edges[i][0], edges[i][1]) for i in pos_idx))
    negatives = tuple(sorted(non_edges[i] for i in neg_idx))
    keep = [e for i, e in enumerate(edges) if i not in set(pos_idx.tolist())]
    train = Graph(n=graph.n, edges=tuple(keep))
    return Split(train=train, positives=positives, negatives=negatives)


def normalize_weights(scores: np.ndarray, beta: float) -> tuple[np.ndarray, bool]:
    """Scale scores linearly so the weights sum to the budget.

    All-zero scores fall back to uniform beta/k; the second return value
    flags that fallback.  Negative scores are rejected.
    """
    scores = np.asarray(scores, dtype=float)
    if scores.size == 0:
        raise ValueError("cannot normalize an empty score vector")
    if np.any(scores < 0):
        raise ValueError("scores must be nonnegative")
    total = float(scores.sum())
    if total == 0.0:
        return np.full(scores.size, beta / scores.size), True
    return beta * scores / total, False


def realized_delta(
    train: Graph,
    positives,
    pair_weights: dict[tuple[int, int], float],
    s: np.ndarray | None = None,
    sigma2: float | None = None,
) -> float:
    """Conflict change from adding only the positives at their recommended
    weights; weight spent on negatives is simply lost."""
    pos = tuple(positives)
    weights = np.array([pair_weights.get(p, 0.0) for p in pos])
    addition = BudgetedAddition(pairs=pos, weights=weights)
    return objective(train, addition, s=s, sigma2=sigma2)


def conflict_awareness(realized: float, optimum: float) -> tuple[float, float]:
    """Clamped and raw ratio of realized to optimal conflict change.

    The clamp to [0, 1] only absorbs harmless numerical overshoot; the raw
    ratio is returned alongside so alternatives can be recomputed.
    """
    if not optimum < 0:
        raise ValueError(f"optimum conflict change must be negative, got {optimum}")
    raw = realized / optimum
    return min(1.0, max(0.0, raw)), raw


def recall_at_beta(ranked, positives, beta: int) -> float:
    top = {(p.u, p.v) for p in ranked[:beta]}
    return len(top & set(positives)) / beta


def precision_at_10(ranked, positives) -> tuple[float, bool]:
    """Precision among the 10 best-ranked candidates; flags truncation when
    fewer than 10 candidates exist."""
    k = min(10, len(ranked))
    if k == 0:
        raise ValueError("no ranked candidates")
    top = {(p.u, p.v) for p in ranked[:k]}
    return len(top & set(positives)) / k, k < 10


@dataclass(frozen=True)
class ExperimentConfig:
    """Factorial benchmark configuration."""

    dataset: str = "sbm"
    methods: tuple[str, ...] = ALL_METHODS
    beta: int = 100
    etas: tuple[int, ...] = (1, 3, 5, 7, 9)
    seeds: tuple[int, ...] = tuple(range(10))
    sigma2: float = 1.0
    opinions: str | None = None
    graph_path: str | None = None
    sbm: SbmConfig = field(default_factory=SbmConfig)
    predictor: PredictorConfig = field(default_factory=PredictorConfig)
    solver_tol: float = 1e-8
    solver_max_iter: int = 500
    jobs: int = 1

    def __post_init__(self):
        for m in self.methods:
            if m not in ALL_METHODS:
                raise ValueError(f"unknown method {m!r}; choose from {ALL_METHODS}")
        for eta in self.etas:
            if eta < 1:
                raise ValueError(f"eta must be at least 1, got {eta}")


@dataclass(frozen=True)
class EvalRecord:
    """One benchmark cell for one method.  None marks a failed cell."""

    dataset: str
    method: str
    beta: int
    eta: int
    seed: int
    ca: float | None
    cae: float | None
    recall: float | None
    precision_at_10: float | None
    realized_delta: float | None
    optimum_delta: float | None
    ca_raw: float | None = None
    cae_raw: float | None = None
    realized_delta_ec: float | None = None
    optimum_delta_ec: float | None = None
    uniform_fallback: bool = False
    precision_truncated: bool = False
    failed: bool = False
    error: str | None = None


def resolve_graph(config: ExperimentConfig) -> Graph:
    if config.dataset == "sbm":
        return sbm_generate(config.sbm)
    if config.graph_path is not None:
        return load_graph(config.graph_path)
    return builtin_dataset(config.dataset)


def _opinions_for_seed(config: ExperimentConfig, graph: Graph, seed: int) -> np.ndarray:
    if config.opinions is not None:
        return center(load_opinions(config.opinions, graph.n))
    rng = np.random.default_rng([seed, 1])
    return center(rng.standard_normal(graph.n))


def _failed(base: EvalRecord, message: str) -> EvalRecord:
    return replace(base, failed=True, error=message)


def _run_seed(config: ExperimentConfig, graph: Graph, seed: int) -> list[EvalRecord]:
    """All (eta, method) records for one seed.

    Positives, train graph, opinions, and hence the two optimal-delta solves
    are shared across eta values for the seed; only the negative pool grows.
    """
    records: list[EvalRecord] = []
    s = _opinions_for_seed(config, graph, seed)
    optimum: dict[str, float] | None = None
    for eta in config.etas:
        sp = split(graph, SplitSpec(beta=config.beta, eta=eta, seed=seed))
        candidates = sp.candidates
        positives = set(sp.positives)
        blank = EvalRecord(
            dataset=config.dataset, method="", beta=config.beta, eta=eta, seed=seed,
            ca=None, cae=None, recall=None, precision_at_10=None,
            realized_delta=None, optimum_delta=None,
        )
        if optimum is None:
            try:
                opt_c = solve(
                    sp.train, sp.positives, config.beta, s=s,
                    tol=config.solver_tol, max_iter=config.solver_max_iter,
                ).objective
                opt_ec = solve(
                    sp.train, sp.positives, config.beta, sigma2=config.sigma2,
                    tol=config.solver_tol, max_iter=config.solver_max_iter,
                ).objective
                optimum = {"c": opt_c, "ec": opt_ec}
            except ValueError as exc:
                optimum = {"error": str(exc)}  # type: ignore[dict-item]
        if "error" in optimum:
            for method in config.methods:
                records.append(_failed(replace(blank, method=method), str(optimum["error"])))
            continue
        for method in config.methods:
            base = replace(blank, method=method)
            try:
                if method == CONFLICT_MINIMIZATION:
                    result = solve(
                        sp.train, candidates, config.beta, s=s,
                        tol=config.solver_tol, max_iter=config.solver_max_iter,
                    )
                    weights = result.addition.weights
                    fallback = False
                else:
                    scores = heuristic_score(sp.train, method, candidates, config.predictor)
                    weights, fallback = normalize_weights(scores, config.beta)
                ranked = rank(candidates, weights)
                rec = recall_at_beta(ranked, positives, config.beta)
                prec, truncated = precision_at_10(ranked, positives)
                pair_weights = dict(zip(candidates, weights))
                rd_c = realized_delta(sp.train, sp.positives, pair_weights, s=s)
                rd_ec = realized_delta(sp.train, sp.positives, pair_weights, sigma2=config.sigma2)
                ca, ca_raw = conflict_awareness(rd_c, optimum["c"])
                cae, cae_raw = conflict_awareness(rd_ec, optimum["ec"])
                records.append(
                    replace(
                        base,
                        ca=ca, cae=cae, recall=rec, precision_at_10=prec,
                        realized_delta=rd_c, optimum_delta=optimum["c"],
                        ca_raw=ca_raw, cae_raw=cae_raw,
                        realized_delta_ec=rd_ec, optimum_delta_ec=optimum["ec"],
                        uniform_fallback=fallback, precision_truncated=truncated,
                    )
                )
            except (ValueError, AssertionError) as exc:
                records.append(_failed(base, str(exc)))
    return records


def run_experiment(config: ExperimentConfig) -> list[EvalRecord]:
    """Run the full factorial grid; rows come back sorted by (seed, eta,
    method order) and are deterministic for a fixed configuration."""
    graph = resolve_graph(config)
    if config.jobs > 1 and len(config.seeds) > 1:
        with concurrent.futures.ProcessPoolExecutor(max_workers=config.jobs) as pool:
            chunks = list(pool.map(_run_seed, *zip(*[(config, graph, s) for s in config.seeds])))
    else:
        chunks = [_run_seed(config, graph, seed) for seed in config.seeds]
    records = [record for chunk in chunks for record in chunk]
    method_order = {m: i for i, m in enumerate(config.methods)}
    records.sort(key=lambda r: (r.seed, r.eta, method_order[r.method]))
    return records


def _csv_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return f"{value:.12g}"
    return str(value)


def records_to_csv(records) -> str:
    """Pinned 11-column schema; byte-stable for a fixed record list."""
    lines = [",".join(CSV_COLUMNS)]
    for r in records:
        lines.append(
            ",".join(
                _csv_cell(getattr(r, column)) for column in CSV_COLUMNS
            )
        )
    return "\n".join(lines) + "\n"


def mean_by_method_eta(records, field_name: str) -> dict[str, dict[int, float]]:
    """Mean of one record field per (method, eta), skipping failed cells."""
    sums: dict[str, dict[int, list[float]]] = {}
    for r in records:
        value = getattr(r, field_name)
        if r.failed or value is None:
            continue
        sums.setdefault(r.method, {}).setdefault(r.eta, []).append(value)
    return {
        method: {eta: float(np.mean(vals)) for eta, vals in etas.items()}
        for method, etas in sums.items()
    }

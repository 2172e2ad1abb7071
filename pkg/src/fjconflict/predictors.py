"""Classic unsupervised link-prediction scores for candidate node pairs.

All seven heuristics are purely structural.  Neighborhood scores use the
unweighted neighbor sets of the graph; the two propagation scores (katz,
ppr) use the weighted adjacency.  Scores are nonnegative, and ranking is
deterministic: descending score with lexicographic pair order on ties.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .graphs import Graph

HEURISTICS = (
    "common_neighbors",
    "jaccard",
    "adamic_adar",
    "preferential_attachment",
    "resource_allocation",
    "katz",
    "ppr",
)


@dataclass(frozen=True)
class PredictorConfig:
    """Hyperparameters for the propagation heuristics.

    katz_alpha must stay below 1 / lambda_max(A) for the path-count series to
    converge; scoring raises otherwise rather than returning garbage.
    """

    katz_alpha: float = 0.5
    ppr_alpha: float = 0.85
    ppr_tol: float = 1e-10

    def __post_init__(self):
        if not 0.0 < self.katz_alpha:
            raise ValueError(f"katz_alpha must be positive, got {self.katz_alpha}")
        if not 0.0 < self.ppr_alpha < 1.0:
            raise ValueError(f"ppr_alpha must be in (0, 1), got {self.ppr_alpha}")
        if self.ppr_tol <= 0.0:
            raise ValueError(f"ppr_tol must be positive, got {self.ppr_tol}")


@dataclass(frozen=True)
class ScoredPair:
    u: int
    v: int
    score: float


def _check_pairs(graph: Graph, pairs) -> list[tuple[int, int]]:
    checked = []
    for u, v in pairs:
        if u > v:
            u, v = v, u
        if u == v:
            raise ValueError(f"candidate ({u}, {v}) is a self pair")
        if not (0 <= u < graph.n and 0 <= v < graph.n):
            raise ValueError(f"candidate ({u}, {v}) out of range for n={graph.n}")
        checked.append((u, v))
    return checked


def _katz_matrix(graph: Graph, alpha: float) -> np.ndarray:
    a = graph.adjacency
    lam = float(np.linalg.eigvalsh(a)[-1]) if graph.n else 0.0
    if alpha * lam >= 1.0:
        raise ValueError(
            f"katz series diverges: alpha={alpha} >= 1/lambda_max = {1.0 / lam:.6g}"
        )
    return np.linalg.inv(np.eye(graph.n) - alpha * a) - np.eye(graph.n)


def _ppr_matrix(graph: Graph, alpha: float, tol: float) -> np.ndarray:
    """Row r = personalized PageRank vector seeded at r.

    The walk matrix is the degree-normalized adjacency; a node without
    neighbors keeps the walker in place, which is equivalent to teleporting
    back to the seed.  Solved directly, then sanity-checked against tol.
    """
    a = graph.adjacency
    d = a.sum(axis=1)
    w = np.zeros_like(a)
    live = d > 0
    w[live] = a[live] / d[live, None]
    w[~live, ~live] = 1.0
    pi = (1.0 - alpha) * np.linalg.inv(np.eye(graph.n) - alpha * w)
    if np.abs(pi.sum(axis=1) - 1.0).max() > max(tol, 1e-9):
        raise AssertionError("personalized PageRank rows failed to normalize")
    return pi


def heuristic_score(
    graph: Graph,
    method: str,
    pairs,
    config: PredictorConfig | None = None,
) -> np.ndarray:
    """Score candidate pairs with one heuristic; returns scores in pair order."""
    if method not in HEURISTICS:
        raise ValueError(f"unknown heuristic {method!r}; choose from {HEURISTICS}")
    config = config or PredictorConfig()
    pairs = _check_pairs(graph, pairs)
    nbrs = graph.neighbor_sets
    deg = [len(s) for s in nbrs]
    scores = np.zeros(len(pairs))

    if method == "katz":
        k = _katz_matrix(graph, config.katz_alpha)
        for i, (u, v) in enumerate(pairs):
            scores[i] = k[u, v]
        return scores
    if method == "ppr":
        pi = _ppr_matrix(graph, config.ppr_alpha, config.ppr_tol)
        for i, (u, v) in enumerate(pairs):
            scores[i] = pi[u, v] + pi[v, u]
        return scores

    for i, (u, v) in enumerate(pairs):
        common = nbrs[u] & nbrs[v]
        if method == "common_neighbors":
            scores[i] = len(common)
        elif method == "jaccard":
            union = len(nbrs[u] | nbrs[v])
            scores[i] = len(common) / union if union else 0.0
        elif method == "adamic_adar":
            scores[i] = sum(1.0 / math.log(deg[w]) for w in common if deg[w] > 1)
        elif method == "preferential_attachment":
            scores[i] = deg[u] * deg[v]
        elif method == "resource_allocation":
            scores[i] = sum(1.0 / deg[w] for w in common)
    return scores


def rank(pairs, scores) -> list[ScoredPair]:
    """Descending by score, ties by lexicographic pair; fully deterministic."""
    items = [ScoredPair(u=u, v=v, score=float(sc)) for (u, v), sc in zip(pairs, scores)]
    items.sort(key=lambda p: (-p.score, p.u, p.v))
    return items

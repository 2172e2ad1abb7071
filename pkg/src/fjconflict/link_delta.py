"""Closed-form conflict change for adding a single weighted link.

Adding edge e = (u, v) with weight w perturbs I + L by the rank-one term
w b b^T, where b is the signed pair indicator.  By the Sherman-Morrison
identity the conflict s^T (I+L)^{-1} s changes by

    delta_c  = - w (z_u - z_v)^2 / (1 + w b^T (I+L)^{-1} b)

and, averaging over i.i.d. opinions with variance sigma2,

    delta_ec = - sigma2 w |(I+L)^{-1} b|^2 / (1 + w b^T (I+L)^{-1} b).

Both are never positive: new links cannot increase conflict, and the
opinion-mode delta vanishes exactly when the endpoints already agree.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dynamics import ShiftedLaplacianSolver, require_centered
from .graphs import Graph


@dataclass(frozen=True)
class DeltaRecord:
    """Conflict change for one candidate link; None marks an unrequested mode."""

    edge: tuple[int, int]
    weight: float
    delta_c: float | None
    delta_ec: float | None


def _check_candidate(graph: Graph, u: int, v: int, weight: float) -> tuple[int, int]:
    if u > v:
        u, v = v, u
    if u == v:
        raise ValueError(f"candidate ({u}, {v}) is a self loop")
    if not (0 <= u < graph.n and 0 <= v < graph.n):
        raise ValueError(f"candidate ({u}, {v}) out of range for n={graph.n}")
    if (u, v) in graph.edge_set:
        raise ValueError(f"candidate ({u}, {v}) is already an edge")
    if weight < 0:
        raise ValueError(f"candidate ({u}, {v}) has negative weight {weight}")
    return u, v


def _delta_c(solver: ShiftedLaplacianSolver, z: np.ndarray, u: int, v: int, w: float) -> float:
    denom = 1.0 + w * solver.pair_resistance(u, v)
    return -(w * (z[u] - z[v]) ** 2) / denom


def _delta_ec(solver: ShiftedLaplacianSolver, sigma2: float, u: int, v: int, w: float) -> float:
    x = solver.column_difference(u, v)
    denom = 1.0 + w * solver.pair_resistance(u, v)
    return -(sigma2 * w * float(x @ x)) / denom


def conflict_delta(
    graph: Graph,
    s: np.ndarray,
    pair: tuple[int, int],
    weight: float = 1.0,
    solver: ShiftedLaplacianSolver | None = None,
) -> float:
    """Exact conflict change from adding the candidate link at the given weight."""
    u, v = _check_candidate(graph, *pair, weight)
    s = require_centered(s)
    if solver is None:
        solver = ShiftedLaplacianSolver(graph)
    z = solver.solve(s)
    return _delta_c(solver, z, u, v, weight)


def expected_conflict_delta(
    graph: Graph,
    pair: tuple[int, int],
    sigma2: float = 1.0,
    weight: float = 1.0,
    solver: ShiftedLaplacianSolver | None = None,
) -> float:
    """Expected conflict change under i.i.d. opinions with variance sigma2."""
    if sigma2 < 0:
        raise ValueError(f"sigma2 must be nonnegative, got {sigma2}")
    u, v = _check_candidate(graph, *pair, weight)
    if solver is None:
        solver = ShiftedLaplacianSolver(graph)
    return _delta_ec(solver, sigma2, u, v, weight)


def scan_candidates(
    graph: Graph,
    candidates,
    s: np.ndarray | None = None,
    sigma2: float | None = None,
    weight: float = 1.0,
    solver: ShiftedLaplacianSolver | None = None,
) -> list[DeltaRecord]:
    """Score many candidate links against one shared factorization.

    Fills delta_c when s is given and delta_ec when sigma2 is given; at least
    one mode is required.  Records come back in candidate order and are
    bitwise identical to the corresponding single-pair calls.
    """
    if s is None and sigma2 is None:
        raise ValueError("scan needs opinions s, a variance sigma2, or both")
    if solver is None:
        solver = ShiftedLaplacianSolver(graph)
    z = None
    if s is not None:
        z = solver.solve(require_centered(s))
    records = []
    for pair in candidates:
        u, v = _check_candidate(graph, *pair, weight)
        records.append(
            DeltaRecord(
                edge=(u, v),
                weight=weight,
                delta_c=None if z is None else _delta_c(solver, z, u, v, weight),
                delta_ec=None if sigma2 is None else _delta_ec(solver, sigma2, u, v, weight),
            )
        )
    return records

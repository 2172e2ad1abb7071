"""Opinion dynamics with stubborn agents and the tension measures built on it.

Every agent keeps a fixed internal opinion s_i and repeatedly averages it
with neighbor opinions; the process contracts to z = (I + L)^{-1} s.  All
tension measures are quadratic forms of s evaluated at that equilibrium:

    disagreement      sum over edges of w_uv (z_u - z_v)^2
    polarization      z . z                      (opinions are mean-centered)
    conflict          disagreement + polarization = s . z
    internal_conflict |z - s|^2
    unhappiness       disagreement + internal_conflict

Conflict and unhappiness always split the total opinion energy:
conflict + unhappiness = s . s.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np
from scipy.linalg import cho_factor, cho_solve

from .graphs import Graph

CENTER_TOL = 1e-12


def center(raw: np.ndarray) -> np.ndarray:
    """Shift a raw opinion vector to zero mean."""
    raw = np.asarray(raw, dtype=float)
    return raw - raw.mean()


def require_centered(s: np.ndarray, tol: float = CENTER_TOL) -> np.ndarray:
    s = np.asarray(s, dtype=float)
    scale = max(1.0, float(np.abs(s).max(initial=0.0)))
    if abs(float(s.sum())) > tol * scale * max(1, s.size):
        raise ValueError(f"opinions must be mean-centered; sum is {s.sum():.3e}")
    return s


class ShiftedLaplacianSolver:
    """Cached SPD factorization of I + L, shared across per-edge queries.

    I + L is positive definite for any graph, so a single Cholesky
    factorization serves every solve against the same graph.  The dense
    inverse is materialized lazily for batch pair scans, where each candidate
    pair needs one column difference and two inner products.
    """

    def __init__(self, graph: Graph):
        self.graph = graph
        self.matrix = np.eye(graph.n) + graph.laplacian
        self._factor = cho_factor(self.matrix)

    def solve(self, rhs: np.ndarray) -> np.ndarray:
        return cho_solve(self._factor, rhs)

    @cached_property
    def inverse(self) -> np.ndarray:
        return cho_solve(self._factor, np.eye(self.graph.n))

    def pair_resistance(self, u: int, v: int) -> float:
        """Quadratic form b^T (I+L)^{-1} b for the signed pair indicator b."""
        w = self.inverse
        return w[u, u] + w[v, v] - 2.0 * w[u, v]

    def column_difference(self, u: int, v: int) -> np.ndarray:
        """(I+L)^{-1} b for the signed pair indicator b of (u, v)."""
        w = self.inverse
        return w[:, u] - w[:, v]


def equilibrium(graph: Graph, s: np.ndarray, solver: ShiftedLaplacianSolver | None = None) -> np.ndarray:
    """Expressed opinions z = (I + L)^{-1} s."""
    s = require_centered(s)
    if s.shape != (graph.n,):
        raise ValueError(f"opinion vector has shape {s.shape}, expected ({graph.n},)")
    if solver is None:
        solver = ShiftedLaplacianSolver(graph)
    return solver.solve(s)


def iterate(graph: Graph, s: np.ndarray, steps: int) -> np.ndarray:
    """Run the synchronous averaging dynamics for a fixed number of steps.

    z^(0) = s and each step replaces z_i by the weighted average of s_i and
    the neighbors' current opinions: (s_i + sum_j a_ij z_j) / (1 + d_i).
    """
    s = require_centered(s)
    a = graph.adjacency
    d = graph.degrees
    z = s.copy()
    for _ in range(steps):
        z = (s + a @ z) / (1.0 + d)
    return z


@dataclass(frozen=True)
class OpinionState:
    """Fixed opinions, their equilibrium, and the population variance scale."""

    s: np.ndarray
    z: np.ndarray
    sigma2: float = 1.0

    @classmethod
    def solve(cls, graph: Graph, s: np.ndarray, sigma2: float = 1.0) -> "OpinionState":
        return cls(s=np.asarray(s, dtype=float), z=equilibrium(graph, s), sigma2=sigma2)


@dataclass(frozen=True)
class ConflictReport:
    disagreement: float
    polarization: float
    conflict: float
    internal_conflict: float
    unhappiness: float
    s_norm_sq: float

    def as_dict(self) -> dict[str, float]:
        return {
            "disagreement": self.disagreement,
            "polarization": self.polarization,
            "conflict": self.conflict,
            "internal_conflict": self.internal_conflict,
            "unhappiness": self.unhappiness,
            "s_norm_sq": self.s_norm_sq,
        }


def measures(graph: Graph, s: np.ndarray, solver: ShiftedLaplacianSolver | None = None) -> ConflictReport:
    """All five tension measures at equilibrium."""
    s = require_centered(s)
    z = equilibrium(graph, s, solver=solver)
    disagreement = 0.0
    for u, v, w in graph.edges:
        disagreement += w * (z[u] - z[v]) ** 2
    polarization = float(z @ z)
    internal = float((z - s) @ (z - s))
    return ConflictReport(
        disagreement=float(disagreement),
        polarization=polarization,
        conflict=float(disagreement + polarization),
        internal_conflict=internal,
        unhappiness=float(disagreement + internal),
        s_norm_sq=float(s @ s),
    )

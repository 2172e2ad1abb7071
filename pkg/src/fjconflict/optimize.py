"""Budgeted conflict minimization over a fixed candidate-link set.

Given candidate pairs and a weight budget, choose nonnegative weights w
summing to the budget so that the added links minimize either

    opinion mode      s^T (I + L + L_w)^{-1} s  -  s^T (I + L)^{-1} s
    expectation mode  sigma2 (tr (I + L + L_w)^{-1} - tr (I + L)^{-1})

where L_w is the Laplacian of the weighted candidate links.  Both objectives
are convex in w and their gradients are nonpositive (more link weight never
hurts), so spending the full budget is always optimal and the feasible set
is the scaled simplex.

The solver is Frank-Wolfe with an interpolated line search; the duality gap
g . (w - vertex) upper-bounds the distance to the optimum for convex
objectives, which makes the stopping rule a certificate.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import cho_factor, cho_solve

from .dynamics import require_centered
from .graphs import Graph


@dataclass(frozen=True)
class BudgetedAddition:
    """Candidate pairs with their chosen nonnegative weights."""

    pairs: tuple[tuple[int, int], ...]
    weights: np.ndarray

    def __post_init__(self):
        if len(self.pairs) != len(self.weights):
            raise ValueError("pairs and weights must align")
        if np.any(np.asarray(self.weights) < 0):
            raise ValueError("addition weights must be nonnegative")


@dataclass(frozen=True)
class SolverResult:
    addition: BudgetedAddition
    objective: float
    iterations: int
    converged: bool
    gap: float


def _check_mode(s, sigma2):
    if (s is None) == (sigma2 is None):
        raise ValueError("give exactly one of s (opinion mode) or sigma2 (expectation mode)")
    if sigma2 is not None and sigma2 < 0:
        raise ValueError(f"sigma2 must be nonnegative, got {sigma2}")


def _check_candidates(graph: Graph, pairs) -> tuple[tuple[int, int], ...]:
    out = []
    seen = set()
    for u, v in pairs:
        if u > v:
            u, v = v, u
        if u == v:
            raise ValueError(f"candidate ({u}, {v}) is a self pair")
        if not (0 <= u < graph.n and 0 <= v < graph.n):
            raise ValueError(f"candidate ({u}, {v}) out of range for n={graph.n}")
        if (u, v) in seen:
            raise ValueError(f"duplicate candidate ({u}, {v})")
        seen.add((u, v))
        out.append((u, v))
    return tuple(out)


def addition_laplacian(n: int, pairs, weights) -> np.ndarray:
    """Laplacian of the candidate links at the given weights."""
    lw = np.zeros((n, n))
    for (u, v), w in zip(pairs, weights):
        lw[u, u] += w
        lw[v, v] += w
        lw[u, v] -= w
        lw[v, u] -= w
    return lw


def objective(
    graph: Graph,
    addition: BudgetedAddition,
    s: np.ndarray | None = None,
    sigma2: float | None = None,
) -> float:
    """Conflict change achieved by an addition, in the requested mode."""
    _check_mode(s, sigma2)
    pairs = _check_candidates(graph, addition.pairs)
    m = np.eye(graph.n) + graph.laplacian
    mw = m + addition_laplacian(graph.n, pairs, addition.weights)
    if s is not None:
        s = require_centered(s)
        return float(s @ np.linalg.solve(mw, s) - s @ np.linalg.solve(m, s))
    base = np.trace(np.linalg.inv(m))
    return float(sigma2 * (np.trace(np.linalg.inv(mw)) - base))


class _Objective:
    """Factorize I + L + L_w once per point; expose value and gradient."""

    def __init__(self, graph: Graph, pairs, s, sigma2):
        self.n = graph.n
        self.pairs = pairs
        self.s = s
        self.sigma2 = sigma2
        self.base = np.eye(graph.n) + graph.laplacian
        factor = cho_factor(self.base)
        if s is not None:
            self.offset = float(s @ cho_solve(factor, s))
        else:
            self.offset = float(np.trace(cho_solve(factor, np.eye(self.n))))

    def _factor(self, w):
        return cho_factor(self.base + addition_laplacian(self.n, self.pairs, w))

    def value(self, w) -> float:
        factor = self._factor(w)
        if self.s is not None:
            return float(self.s @ cho_solve(factor, self.s)) - self.offset
        return float(self.sigma2 * (np.trace(cho_solve(factor, np.eye(self.n))) - self.offset))

    def value_and_gradient(self, w) -> tuple[float, np.ndarray]:
        factor = self._factor(w)
        if self.s is not None:
            y = cho_solve(factor, self.s)
            val = float(self.s @ y) - self.offset
            grad = np.array([-((y[u] - y[v]) ** 2) for u, v in self.pairs])
            return val, grad
        inv = cho_solve(factor, np.eye(self.n))
        val = float(self.sigma2 * (np.trace(inv) - self.offset))
        grad = np.array(
            [
                -self.sigma2 * float(np.sum((inv[:, u] - inv[:, v]) ** 2))
                for u, v in self.pairs
            ]
        )
        return val, grad


def gradient(
    graph: Graph,
    addition: BudgetedAddition,
    s: np.ndarray | None = None,
    sigma2: float | None = None,
) -> np.ndarray:
    """Partial derivative of the objective in each candidate weight.

    Opinion mode: -(b^T M^{-1} s)^2 per candidate; expectation mode:
    -sigma2 |M^{-1} b|^2, with M = I + L + L_w.  Always nonpositive.
    """
    _check_mode(s, sigma2)
    pairs = _check_candidates(graph, addition.pairs)
    if s is not None:
        s = require_centered(s)
    obj = _Objective(graph, pairs, s, sigma2)
    _, grad = obj.value_and_gradient(np.asarray(addition.weights, dtype=float))
    return grad


def solve(
    graph: Graph,
    candidates,
    budget: float,
    s: np.ndarray | None = None,
    sigma2: float | None = None,
    tol: float = 1e-8,
    max_iter: int = 500,
) -> SolverResult:
    """Frank-Wolfe on the scaled simplex {w >= 0, sum w = budget}.

    Starts uniform and at every iteration tries both the classic step toward
    the steepest vertex and a pairwise swap that moves weight from the worst
    active candidate to the best one; the swap step avoids the boundary
    zigzag that stalls plain Frank-Wolfe.  Each direction gets an
    interpolated line search, and the duality gap g.(w - vertex) provides
    the stopping certificate (relative to the objective magnitude).
    Deterministic throughout.
    """
    _check_mode(s, sigma2)
    pairs = _check_candidates(graph, candidates)
    if not pairs:
        raise ValueError("solver needs at least one candidate pair")
    if budget < 0:
        raise ValueError(f"budget must be nonnegative, got {budget}")
    if s is not None:
        s = require_centered(s)
    k = len(pairs)
    obj = _Objective(graph, pairs, s, sigma2)
    w = np.full(k, budget / k)
    val, grad = obj.value_and_gradient(w)
    gap = np.inf
    converged = False
    iterations = 0

    def line_search(direction: np.ndarray, max_step: float) -> tuple[float, float] | None:
        """Best (value, step) along w + step*direction for step in (0, max_step]."""
        slope = float(grad @ direction)
        if slope >= 0.0 or max_step <= 0.0:
            return None
        at_max = obj.value(w + max_step * direction)
        curve = (at_max - val - slope * max_step) / (max_step * max_step)
        best = (at_max, max_step)
        if curve > 0.0:
            step = min(max_step, -slope / (2.0 * curve))
            if step < max_step:
                at_step = obj.value(w + step * direction)
                if at_step < best[0]:
                    best = (at_step, step)
        return best if best[0] < val else None

    for iterations in range(1, max_iter + 1):
        j = int(np.argmin(grad))
        vertex = np.zeros(k)
        vertex[j] = budget
        gap = float(grad @ (w - vertex))
        if gap <= tol * max(1.0, abs(val)):
            converged = True
            break
        candidates_found = []
        fw = line_search(vertex - w, 1.0)
        if fw is not None:
            candidates_found.append((fw[0], fw[1], vertex - w))
        active = np.flatnonzero(w > 0)
        a = int(active[np.argmax(grad[active])])
        if a != j and w[a] > 0:
            swap = np.zeros(k)
            swap[j] = 1.0
            swap[a] = -1.0
            pw = line_search(swap, float(w[a]))
            if pw is not None:
                candidates_found.append((pw[0], pw[1], swap))
        if not candidates_found:
            break  # stalled: no descent along either direction
        new_val, step, direction = min(candidates_found, key=lambda c: c[0])
        w = np.maximum(w + step * direction, 0.0)
        val, grad = obj.value_and_gradient(w)
    addition = BudgetedAddition(pairs=pairs, weights=w)
    return SolverResult(
        addition=addition,
        objective=val,
        iterations=iterations,
        converged=converged,
        gap=gap,
    )

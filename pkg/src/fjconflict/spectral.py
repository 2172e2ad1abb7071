"""Two-sided bounds on how much the averaging dynamics shrink opinion energy.

The contraction ratio s.s / s.z (z the equilibrium) is sandwiched between
spectral and combinatorial bounds of the graph alone:

    1 + max_(u,v) in E (d_u + d_v)   >=  1 + lambda_max(L)
                                     >=  ratio
                                     >=  1 + lambda_2(L)
                                     >=  1 + d_min h^2 / 2  >=  1

with h the Cheeger constant in conductance form: the minimum over cuts of
cut weight divided by the smaller side's volume.  h comes from an exact scan
of all 2^n - 2 cuts, so everything here stays at small n.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dynamics import require_centered
from .graphs import Graph, build_graph

CHEEGER_MAX_NODES = 20


def contraction_ratio(graph: Graph, s: np.ndarray) -> float:
    """s.s / s.z; how much equilibrium damps the injected opinion energy."""
    s = require_centered(s)
    if not np.any(s):
        raise ValueError("contraction ratio undefined for all-zero opinions")
    z = np.linalg.solve(np.eye(graph.n) + graph.laplacian, s)
    return float((s @ s) / (s @ z))


def _cut_profile(graph: Graph) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Per-cut volume and internal edge weight for all 2^n - 2 proper subsets."""
    n = graph.n
    masks = np.arange(1, (1 << n) - 1, dtype=np.int64)
    bits = ((masks[:, None] >> np.arange(n)) & 1).astype(float)
    vol = bits @ graph.degrees
    inside = np.einsum("ij,ij->i", bits @ graph.adjacency, bits) / 2.0
    return bits, vol, inside


def cheeger_constant(graph: Graph) -> float:
    """Exact conductance by scanning every cut; connected graphs, n <= 20."""
    if graph.n > CHEEGER_MAX_NODES:
        raise ValueError(f"exact Cheeger scan capped at n={CHEEGER_MAX_NODES}, got {graph.n}")
    if graph.n < 2:
        raise ValueError("Cheeger constant needs at least two nodes")
    if not graph.is_connected():
        raise ValueError("Cheeger constant as used here needs a connected graph")
    _, vol, inside = _cut_profile(graph)
    cut = vol - 2.0 * inside
    total = float(graph.degrees.sum())
    h = cut / np.minimum(vol, total - vol)
    return float(h.min())


@dataclass(frozen=True)
class ContractionReport:
    ratio: float
    lower: float
    upper: float
    lambda2: float
    lambda_max: float
    cheeger: float
    d_min: float


def contraction_report(graph: Graph, s: np.ndarray) -> ContractionReport:
    """Evaluate the full bound chain for one connected graph and opinion vector."""
    if not graph.is_connected():
        raise ValueError("contraction bounds need a connected graph")
    ratio = contraction_ratio(graph, s)
    eigs = np.linalg.eigvalsh(graph.laplacian)
    lambda2 = float(eigs[1])
    lambda_max = float(eigs[-1])
    d = graph.degrees
    d_min = float(d.min())
    upper = 1.0 + max(d[u] + d[v] for u, v, _ in graph.edges)
    h = cheeger_constant(graph)
    lower = 1.0 + 0.5 * d_min * h * h
    return ContractionReport(
        ratio=ratio,
        lower=float(lower),
        upper=float(upper),
        lambda2=lambda2,
        lambda_max=lambda_max,
        cheeger=h,
        d_min=d_min,
    )


@dataclass(frozen=True)
class TraceRow:
    """One step of the incremental-edge experiment; lower is None until the
    growing graph is connected (the Cheeger constant is undefined before)."""

    edges: int
    lower: float | None
    ratio: float
    upper: float


def contraction_experiment(n: int, seed: int = 0) -> list[TraceRow]:
    """Grow a random graph one edge at a time and trace the bound chain.

    Opinions are drawn once (standard normal, centered), then all n(n-1)/2
    pairs are added in seeded random order; each step emits one row.
    Deterministic per (n, seed).
    """
    if not 2 <= n <= CHEEGER_MAX_NODES:
        raise ValueError(f"experiment needs 2 <= n <= {CHEEGER_MAX_NODES}, got {n}")
    rng = np.random.default_rng(seed)
    s = rng.standard_normal(n)
    s -= s.mean()
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    order = rng.permutation(len(pairs))

    # incremental per-cut tallies keep the 2^n scan O(2^n) per added edge
    masks = np.arange(1, (1 << n) - 1, dtype=np.int64)
    bits = ((masks[:, None] >> np.arange(n)) & 1).astype(float)
    vol = np.zeros(masks.size)
    inside = np.zeros(masks.size)

    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    components = n
    edges: list[tuple[int, int, float]] = []
    rows: list[TraceRow] = []
    for idx in order:
        u, v = pairs[idx]
        edges.append((u, v, 1.0))
        vol += bits[:, u] + bits[:, v]
        inside += bits[:, u] * bits[:, v]
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
            components -= 1
        graph = build_graph(n, edges)
        ratio = contraction_ratio(graph, s)
        eigs = np.linalg.eigvalsh(graph.laplacian)
        d = graph.degrees
        upper = 1.0 + max(d[a] + d[b] for a, b, _ in graph.edges)
        lower = None
        if components == 1:
            cut = vol - 2.0 * inside
            total = float(d.sum())
            h = float((cut / np.minimum(vol, total - vol)).min())
            lower = 1.0 + 0.5 * float(d.min()) * h * h
        rows.append(TraceRow(edges=len(edges), lower=lower, ratio=ratio, upper=float(upper)))
    return rows

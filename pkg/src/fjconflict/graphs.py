"""Undirected weighted graphs, generators, and file loaders.

Graphs are immutable: node ids are 0..n-1, edges are canonical (u, v, w)
triples with u < v and w >= 0.  The Laplacian convention is L = D - A with
weighted degrees on the diagonal, so L is positive semidefinite and has zero
row sums.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path

import numpy as np

from ._data import KARATE_EDGES

BUILTIN_DATASETS = ("karate", "er100", "path100", "grid10x10")


@dataclass(frozen=True)
class Graph:
    """Immutable undirected weighted graph with canonical edge triples."""

    n: int
    edges: tuple[tuple[int, int, float], ...]

    @cached_property
    def adjacency(self) -> np.ndarray:
        a = np.zeros((self.n, self.n))
        for u, v, w in self.edges:
            a[u, v] = w
            a[v, u] = w
        return a

    @cached_property
    def degrees(self) -> np.ndarray:
        """Weighted degree vector (row sums of the adjacency matrix)."""
        return self.adjacency.sum(axis=1)

    @cached_property
    def laplacian(self) -> np.ndarray:
        return np.diag(self.degrees) - self.adjacency

    @cached_property
    def edge_set(self) -> frozenset[tuple[int, int]]:
        return frozenset((u, v) for u, v, _ in self.edges)

    @cached_property
    def neighbor_sets(self) -> tuple[frozenset[int], ...]:
        """Neighbor sets under positive edge weight (zero-weight edges excluded)."""
        sets: list[set[int]] = [set() for _ in range(self.n)]
        for u, v, w in self.edges:
            if w > 0:
                sets[u].add(v)
                sets[v].add(u)
        return tuple(frozenset(s) for s in sets)

    def has_edge(self, u: int, v: int) -> bool:
        if u > v:
            u, v = v, u
        return (u, v) in self.edge_set

    def weight(self, u: int, v: int) -> float:
        if u > v:
            u, v = v, u
        return self._weights.get((u, v), 0.0)

    @cached_property
    def _weights(self) -> dict[tuple[int, int], float]:
        return {(u, v): w for u, v, w in self.edges}

    def non_edges(self) -> list[tuple[int, int]]:
        """All unordered node pairs that carry no edge, in lexicographic order."""
        present = self.edge_set
        return [
            (u, v)
            for u in range(self.n)
            for v in range(u + 1, self.n)
            if (u, v) not in present
        ]

    def with_edges(self, extra: list[tuple[int, int, float]] | list[tuple[int, int]]) -> "Graph":
        """New graph with additional edges; rejects duplicates of existing ones."""
        triples = list(self.edges) + [_canonical(e) for e in extra]
        return build_graph(self.n, triples)

    def is_connected(self) -> bool:
        if self.n == 0:
            return False
        seen = np.zeros(self.n, dtype=bool)
        stack = [0]
        seen[0] = True
        while stack:
            u = stack.pop()
            for v in self.neighbor_sets[u]:
                if not seen[v]:
                    seen[v] = True
                    stack.append(v)
        return bool(seen.all())


def _canonical(edge) -> tuple[int, int, float]:
    if len(edge) == 2:
        u, v = edge
        w = 1.0
    else:
        u, v, w = edge
    if u > v:
        u, v = v, u
    return (int(u), int(v), float(w))


def build_graph(n: int, edges) -> Graph:
    """Validate edge triples and return a canonical Graph.

    Arguments
    ---------
    n : number of nodes.
    edges : iterable of (u, v) or (u, v, w); w defaults to 1.0.

    Raises ValueError naming the offending triple for self loops, duplicate
    edges, out-of-range ids, or negative weights.
    """
    if n < 0:
        raise ValueError(f"node count must be nonnegative, got {n}")
    canon = []
    seen: set[tuple[int, int]] = set()
    for edge in edges:
        u, v, w = _canonical(edge)
        if u == v:
            raise ValueError(f"self loop ({u}, {v}) is not allowed")
        if not (0 <= u < n and 0 <= v < n):
            raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
        if w < 0:
            raise ValueError(f"edge ({u}, {v}) has negative weight {w}")
        if (u, v) in seen:
            raise ValueError(f"duplicate edge ({u}, {v})")
        seen.add((u, v))
        canon.append((u, v, w))
    canon.sort()
    return Graph(n=n, edges=tuple(canon))


def edge_vector(n: int, u: int, v: int) -> np.ndarray:
    """Signed indicator of a node pair: +1 at u, -1 at v, zeros elsewhere."""
    if u == v:
        raise ValueError(f"edge vector needs distinct endpoints, got ({u}, {v})")
    b = np.zeros(n)
    b[u] = 1.0
    b[v] = -1.0
    return b


# Stochastic block model -----------------------------------------------------

# Default community layout: two large antagonistic clusters A, B with no
# direct links, plus two small bridge clusters C (denser, 0.3) and D (sparse,
# 0.1) each linked to both large clusters but not to each other.
DEFAULT_SBM_SIZES = (100, 100, 10, 10)
DEFAULT_SBM_PROBS = (
    (0.5, 0.0, 0.3, 0.1),
    (0.0, 0.5, 0.3, 0.1),
    (0.3, 0.3, 0.3, 0.0),
    (0.1, 0.1, 0.0, 0.1),
)


@dataclass(frozen=True)
class SbmConfig:
    """Stochastic block model: block sizes, symmetric link probabilities, seed."""

    sizes: tuple[int, ...] = DEFAULT_SBM_SIZES
    probs: tuple[tuple[float, ...], ...] = DEFAULT_SBM_PROBS
    seed: int = 0

    def __post_init__(self):
        k = len(self.sizes)
        if any(s <= 0 for s in self.sizes):
            raise ValueError(f"block sizes must be positive, got {self.sizes}")
        if len(self.probs) != k or any(len(row) != k for row in self.probs):
            raise ValueError(f"probs must be {k}x{k} to match sizes")
        for i in range(k):
            for j in range(k):
                p = self.probs[i][j]
                if not 0.0 <= p <= 1.0:
                    raise ValueError(f"probs[{i}][{j}]={p} outside [0, 1]")
                if self.probs[i][j] != self.probs[j][i]:
                    raise ValueError(f"probs must be symmetric, differ at ({i}, {j})")

    @property
    def n(self) -> int:
        return sum(self.sizes)


def sbm_blocks(config: SbmConfig) -> np.ndarray:
    """Block label per node; block b covers a contiguous id range."""
    labels = np.empty(config.n, dtype=int)
    start = 0
    for b, size in enumerate(config.sizes):
        labels[start : start + size] = b
        start += size
    return labels


def sbm_generate(config: SbmConfig) -> Graph:
    """Sample an unweighted graph from the block model, deterministic per seed."""
    labels = sbm_blocks(config)
    p = np.asarray(config.probs)[np.ix_(labels, labels)]
    rng = np.random.default_rng(config.seed)
    draw = rng.random((config.n, config.n))
    iu, ju = np.triu_indices(config.n, k=1)
    mask = draw[iu, ju] < p[iu, ju]
    return build_graph(config.n, [(int(u), int(v)) for u, v in zip(iu[mask], ju[mask])])


# Deterministic generators ---------------------------------------------------


def erdos_renyi(n: int, p: float, seed: int = 0) -> Graph:
    """G(n, p) with unit weights, deterministic per seed."""
    rng = np.random.default_rng(seed)
    iu, ju = np.triu_indices(n, k=1)
    mask = rng.random(iu.size) < p
    return build_graph(n, [(int(u), int(v)) for u, v in zip(iu[mask], ju[mask])])


def path_graph(n: int) -> Graph:
    return build_graph(n, [(i, i + 1) for i in range(n - 1)])


def grid_graph(rows: int, cols: int) -> Graph:
    """rows x cols lattice, node id = r * cols + c."""
    edges = []
    for r in range(rows):
        for c in range(cols):
            if c + 1 < cols:
                edges.append((r * cols + c, r * cols + c + 1))
            if r + 1 < rows:
                edges.append((r * cols + c, (r + 1) * cols + c))
    return build_graph(rows * cols, edges)


def builtin_dataset(name: str) -> Graph:
    """Named benchmark graphs: karate, er100, path100, grid10x10."""
    if name == "karate":
        return build_graph(34, KARATE_EDGES)
    if name == "er100":
        return erdos_renyi(100, 0.5, seed=0)
    if name == "path100":
        return path_graph(100)
    if name == "grid10x10":
        return grid_graph(10, 10)
    raise ValueError(f"unknown dataset {name!r}; choose from {BUILTIN_DATASETS}")


# File formats ---------------------------------------------------------------


def _strip_comment(line: str) -> str:
    return line.split("#", 1)[0].strip()


def load_graph(path: str | Path, n: int | None = None) -> Graph:
    """Read an edge list: one 'u<TAB>v[<TAB>weight]' line per edge, 0-based ids.

    '#' starts a comment; blank lines are skipped.  Node count defaults to
    max id + 1.  Undirected duplicates (v, u after u, v) are rejected.
    """
    path = Path(path)
    edges: list[tuple[int, int, float]] = []
    for lineno, raw in enumerate(path.read_text(encoding="utf-8").splitlines(), start=1):
        body = _strip_comment(raw)
        if not body:
            continue
        parts = body.split()
        if len(parts) not in (2, 3):
            raise ValueError(f"{path}:{lineno}: expected 'u v [weight]', got {raw!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
            w = float(parts[2]) if len(parts) == 3 else 1.0
        except ValueError as exc:
            raise ValueError(f"{path}:{lineno}: {exc}") from None
        edges.append((u, v, w))
    if n is None:
        n = 1 + max((max(u, v) for u, v, _ in edges), default=-1)
    try:
        return build_graph(n, edges)
    except ValueError as exc:
        raise ValueError(f"{path}: {exc}") from None


def load_opinions(path: str | Path, n: int | None = None) -> np.ndarray:
    """Read one decimal per line (row i = node i); '#' comments allowed."""
    path = Path(path)
    values: list[float] = []
    for lineno, raw in enumerate(path.read_text(encoding="utf-8").splitlines(), start=1):
        body = _strip_comment(raw)
        if not body:
            continue
        try:
            values.append(float(body))
        except ValueError:
            raise ValueError(f"{path}:{lineno}: expected a decimal, got {raw!r}") from None
    if n is not None and len(values) != n:
        raise ValueError(f"{path}: {len(values)} opinions for a graph with {n} nodes")
    return np.asarray(values)

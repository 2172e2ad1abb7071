"""Spanning rooted forest counts and the combinatorial form of link deltas.

det(I + L) counts spanning rooted forests of an integer-weighted graph, and
the cofactors of I + L refine the count: cof[x][y] is the number of forests
in which x and y share a tree rooted at x.  The derived separation count

    sep[x][y] = cof[x][x] - cof[x][y]

is the number of forests in which x roots its own tree and y lives in a
different tree.  These counts give exact rational forms for the quantities
behind the link-addition deltas:

    b^T (I+L)^{-1} b            = (sep[u][v] + sep[v][u]) / total
    sigma2 |(I+L)^{-1} b|^2     = sigma2 sum_k (sep[k][u] - sep[k][v])^2 / total^2

and the expected conflict drop for a unit link (u, v) is

    - sigma2 * sum_k (sep[k][u] - sep[k][v])^2
      / (total * (total + sep[u][v] + sep[v][u])).

Everything here is exact: Python integers for counts, Fractions for ratios.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .graphs import Graph

# Exhaustive enumeration walks all edge subsets; keep it at toy scale.
ENUMERATION_MAX_NODES = 10
ENUMERATION_MAX_EDGES = 22

COFACTOR_MAX_NODES = 64


@dataclass(frozen=True)
class ForestCountTable:
    """Exact rooted-forest counts for one graph.

    total is det(I + L); cof and sep are n x n integer tables as described in
    the module docstring.  sep has a zero diagonal and cof is symmetric.
    """

    n: int
    total: int
    cof: tuple[tuple[int, ...], ...]
    sep: tuple[tuple[int, ...], ...]


def _integer_weights(graph: Graph) -> list[tuple[int, int, int]]:
    triples = []
    for u, v, w in graph.edges:
        if w != int(w):
            raise ValueError(f"forest counts need integer weights; edge ({u}, {v}) has w={w}")
        triples.append((u, v, int(w)))
    return triples


def _fraction_inverse(m: list[list[int]]) -> list[list[Fraction]]:
    """Exact Gauss-Jordan inverse; m must be nonsingular."""
    n = len(m)
    a = [
        [Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
        for i, row in enumerate(m)
    ]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            raise ValueError("matrix is singular")
        a[col], a[piv] = a[piv], a[col]
        scale = a[col][col]
        a[col] = [x / scale for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [row[n:] for row in a]


def _bareiss_det(m: list[list[int]]) -> int:
    """Fraction-free integer determinant."""
    a = [row[:] for row in m]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def forest_table(graph: Graph) -> ForestCountTable:
    """Exact counts via det(I + L) and its cofactors.

    Cofactors come out of det(I+L) * (I+L)^{-1} in rational arithmetic; each
    entry must reduce to an integer, which doubles as an internal check.
    """
    if graph.n > COFACTOR_MAX_NODES:
        raise ValueError(f"cofactor route capped at n={COFACTOR_MAX_NODES}, got {graph.n}")
    triples = _integer_weights(graph)
    n = graph.n
    m = [[0] * n for _ in range(n)]
    for i in range(n):
        m[i][i] = 1
    for u, v, w in triples:
        m[u][u] += w
        m[v][v] += w
        m[u][v] -= w
        m[v][u] -= w
    total = _bareiss_det(m)
    inv = _fraction_inverse(m)
    cof = []
    for i in range(n):
        row = []
        for j in range(n):
            entry = inv[i][j] * total
            if entry.denominator != 1:
                raise AssertionError(f"non-integer cofactor at ({i}, {j}): {entry}")
            row.append(int(entry))
        cof.append(tuple(row))
    sep = tuple(
        tuple(cof[x][x] - cof[x][y] for y in range(n)) for x in range(n)
    )
    return ForestCountTable(n=n, total=total, cof=tuple(cof), sep=sep)


def enumerate_forest_table(graph: Graph) -> ForestCountTable:
    """Independent oracle: walk every edge subset and count rootings directly.

    A subset of edges that is acyclic spans a forest (isolated nodes count as
    single-node trees).  It contributes its weight product once per choice of
    one root in every tree.  Only feasible at toy scale.
    """
    if graph.n > ENUMERATION_MAX_NODES:
        raise ValueError(f"enumeration capped at n={ENUMERATION_MAX_NODES}, got {graph.n}")
    if len(graph.edges) > ENUMERATION_MAX_EDGES:
        raise ValueError(f"enumeration capped at {ENUMERATION_MAX_EDGES} edges, got {len(graph.edges)}")
    triples = [(u, v, w) for u, v, w in _integer_weights(graph) if w != 0]
    n = graph.n
    total = 0
    cof = [[0] * n for _ in range(n)]
    sep = [[0] * n for _ in range(n)]
    for mask in range(1 << len(triples)):
        parent = list(range(n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        acyclic = True
        weight = 1
        for idx, (u, v, w) in enumerate(triples):
            if mask >> idx & 1:
                ru, rv = find(u), find(v)
                if ru == rv:
                    acyclic = False
                    break
                parent[ru] = rv
                weight *= w
        if not acyclic:
            continue
        root = [find(x) for x in range(n)]
        size: dict[int, int] = {}
        for x in range(n):
            size[root[x]] = size.get(root[x], 0) + 1
        rootings = 1
        for c in size.values():
            rootings *= c
        total += weight * rootings
        for x in range(n):
            # rootings with x forced to root its own tree
            forced = rootings // size[root[x]]
            for y in range(n):
                if root[y] == root[x]:
                    cof[x][y] += weight * forced
                else:
                    sep[x][y] += weight * forced
    return ForestCountTable(
        n=n,
        total=total,
        cof=tuple(tuple(row) for row in cof),
        sep=tuple(tuple(row) for row in sep),
    )


def _check_pair(table: ForestCountTable, u: int, v: int) -> None:
    if u == v or not (0 <= u < table.n and 0 <= v < table.n):
        raise ValueError(f"pair ({u}, {v}) invalid for n={table.n}")


def forest_pair_distance(table: ForestCountTable, u: int, v: int) -> Fraction:
    """b^T (I+L)^{-1} b as a ratio of separation counts to the total."""
    _check_pair(table, u, v)
    return Fraction(table.sep[u][v] + table.sep[v][u], table.total)


def forest_profile_distance(table: ForestCountTable, u: int, v: int, sigma2=1):
    """sigma2 |(I+L)^{-1} b|^2 from separation-count profiles.

    Each node k contributes (sep[k][u] - sep[k][v])^2: the gap between how
    often a k-rooted tree excludes u versus v.  Exact when sigma2 is an int
    or Fraction.
    """
    _check_pair(table, u, v)
    gap = sum((table.sep[k][u] - table.sep[k][v]) ** 2 for k in range(table.n))
    return sigma2 * Fraction(gap, table.total**2)


def forest_expected_delta(table: ForestCountTable, u: int, v: int, sigma2=1):
    """Expected conflict change for adding a unit link, in pure counts."""
    _check_pair(table, u, v)
    gap = sum((table.sep[k][u] - table.sep[k][v]) ** 2 for k in range(table.n))
    denom = table.total * (table.total + table.sep[u][v] + table.sep[v][u])
    return -sigma2 * Fraction(gap, denom)

"""Contraction ratio bounds: eigenvalue chain and the conductance lower bound."""

from __future__ import annotations

import itertools

import numpy as np
import pytest

from fjconflict.dynamics import center
from fjconflict.graphs import build_graph, erdos_renyi
from fjconflict.spectral import (
    CHEEGER_MAX_NODES,
    cheeger_constant,
    contraction_experiment,
    contraction_ratio,
    contraction_report,
)

K2 = build_graph(2, [(0, 1)])
P3 = build_graph(3, [(0, 1), (1, 2)])
K4 = build_graph(4, list(itertools.combinations(range(4), 2)))


def brute_cheeger(graph):
    """Independent subset-loop conductance, no shared code with the library."""
    d = graph.degrees
    total = d.sum()
    best = np.inf
    nodes = range(graph.n)
    for r in range(1, graph.n):
        for subset in itertools.combinations(nodes, r):
            inside = set(subset)
            cut = sum(w for u, v, w in graph.edges if (u in inside) != (v in inside))
            vol = sum(d[u] for u in subset)
            best = min(best, cut / min(vol, total - vol))
    return best


def random_connected(rng, n_max=16):
    while True:
        n = int(rng.integers(2, n_max + 1))
        g = erdos_renyi(n, float(rng.uniform(0.3, 0.8)), seed=int(rng.integers(1 << 31)))
        if g.is_connected():
            return g


def test_ratio_hand_values():
    assert abs(contraction_ratio(K2, np.array([1.0, -1.0])) - 3.0) < 1e-12
    assert abs(contraction_ratio(P3, np.array([1.0, 0.0, -1.0])) - 2.0) < 1e-12
    with pytest.raises(ValueError):
        contraction_ratio(K2, np.array([1.0, 1.0]))
    with pytest.raises(ValueError):
        contraction_ratio(K2, np.zeros(2))


def test_cheeger_hand_values():
    assert abs(cheeger_constant(K2) - 1.0) < 1e-12
    assert abs(cheeger_constant(P3) - 1.0) < 1e-12
    assert abs(cheeger_constant(K4) - 2 / 3) < 1e-12


def test_cheeger_matches_subset_loop_oracle():
    rng = np.random.default_rng(51)
    for _ in range(30):
        g = random_connected(rng, n_max=9)
        assert abs(cheeger_constant(g) - brute_cheeger(g)) < 1e-12


def test_cheeger_validation():
    with pytest.raises(ValueError, match="capped"):
        cheeger_constant(build_graph(CHEEGER_MAX_NODES + 1, []))
    with pytest.raises(ValueError, match="connected"):
        cheeger_constant(build_graph(4, [(0, 1), (2, 3)]))
    with pytest.raises(ValueError):
        cheeger_constant(build_graph(1, []))


def test_report_hand_values():
    r = contraction_report(P3, np.array([1.0, 0.0, -1.0]))
    assert abs(r.ratio - 2.0) < 1e-12
    assert abs(r.lambda2 - 1.0) < 1e-9
    assert abs(r.lambda_max - 3.0) < 1e-9
    assert abs(r.cheeger - 1.0) < 1e-12
    assert r.d_min == 1.0
    assert abs(r.lower - 1.5) < 1e-12  # 1 + d_min h^2 / 2
    assert abs(r.upper - 4.0) < 1e-12  # 1 + max edge degree sum


def test_sandwich_on_random_instances():
    # upper >= 1+lambda_max >= ratio >= 1+lambda2 >= lower >= 1
    rng = np.random.default_rng(52)
    for _ in range(100):
        g = random_connected(rng)
        s = center(rng.standard_normal(g.n))
        if not np.any(s):
            continue
        r = contraction_report(g, s)
        tol = 1e-9
        assert r.upper + tol >= 1.0 + r.lambda_max
        assert 1.0 + r.lambda_max + tol >= r.ratio
        assert r.ratio + tol >= 1.0 + r.lambda2
        assert 1.0 + r.lambda2 + tol >= r.lower
        assert r.lower >= 1.0
        assert abs(r.lower - (1.0 + 0.5 * r.d_min * r.cheeger**2)) < 1e-12


def test_experiment_trace():
    rows = contraction_experiment(6, seed=0)
    assert len(rows) == 15
    assert [r.edges for r in rows] == list(range(1, 16))
    assert rows[-1].lower is not None  # complete graph is connected
    connected_seen = False
    for r in rows:
        if r.lower is not None:
            connected_seen = True
            assert r.upper + 1e-9 >= r.ratio >= r.lower - 1e-9 >= 1.0 - 1e-9
        else:
            assert not connected_seen  # connectivity is monotone
            assert r.upper + 1e-9 >= r.ratio
    assert contraction_experiment(6, seed=0) == rows  # deterministic


def test_experiment_matches_fresh_reports():
    # the incremental tallies must agree with a from-scratch report per step
    rows = contraction_experiment(6, seed=3)
    rng = np.random.default_rng(3)
    s = rng.standard_normal(6)
    s -= s.mean()
    pairs = [(u, v) for u in range(6) for v in range(u + 1, 6)]
    order = rng.permutation(len(pairs))
    edges = []
    for row, idx in zip(rows, order):
        edges.append(pairs[idx])
        g = build_graph(6, edges)
        assert abs(row.ratio - contraction_ratio(g, s)) < 1e-9
        if g.is_connected():
            expect = 1.0 + 0.5 * g.degrees.min() * cheeger_constant(g) ** 2
            assert abs(row.lower - expect) < 1e-9
        else:
            assert row.lower is None


def test_experiment_validation():
    with pytest.raises(ValueError):
        contraction_experiment(1)
    with pytest.raises(ValueError):
        contraction_experiment(CHEEGER_MAX_NODES + 1)

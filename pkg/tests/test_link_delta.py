"""Closed-form single-link conflict changes vs brute-force recomputation."""

from __future__ import annotations

import numpy as np
import pytest

from fjconflict.dynamics import center, measures
from fjconflict.graphs import build_graph, erdos_renyi
from fjconflict.link_delta import (
    conflict_delta,
    expected_conflict_delta,
    scan_candidates,
)

P3 = build_graph(3, [(0, 1), (1, 2)])


def brute_delta(graph, s, pair, weight):
    after = graph.with_edges([(pair[0], pair[1], weight)])
    return measures(after, s).conflict - measures(graph, s).conflict


def brute_expected_delta(graph, pair, sigma2, weight):
    # E_s[C] = sigma^2 tr (I+L)^{-1} for isotropic opinions
    before = np.trace(np.linalg.inv(np.eye(graph.n) + graph.laplacian))
    after_g = graph.with_edges([(pair[0], pair[1], weight)])
    after = np.trace(np.linalg.inv(np.eye(graph.n) + after_g.laplacian))
    return sigma2 * (after - before)


def random_case(rng):
    n = int(rng.integers(3, 15))
    g = erdos_renyi(n, float(rng.uniform(0.2, 0.7)), seed=int(rng.integers(1 << 31)))
    free = g.non_edges()
    if not free:
        return None
    s = center(rng.standard_normal(n))
    pair = free[int(rng.integers(len(free)))]
    w = float(rng.uniform(0.1, 2.5))
    return g, s, pair, w


def test_hand_values():
    s = np.array([1.0, 0.0, -1.0])
    assert abs(conflict_delta(P3, s, (0, 2)) - (-0.5)) < 1e-12
    assert abs(expected_conflict_delta(P3, (0, 2)) - (-0.25)) < 1e-12
    # two isolated nodes with opposite opinions joined by a unit link
    g0 = build_graph(2, [])
    assert abs(conflict_delta(g0, np.array([1.0, -1.0]), (0, 1)) - (-4 / 3)) < 1e-12


def test_matches_brute_force_recomputation():
    rng = np.random.default_rng(31)
    done = 0
    while done < 500:
        case = random_case(rng)
        if case is None:
            continue
        g, s, pair, w = case
        closed = conflict_delta(g, s, pair, weight=w)
        brute = brute_delta(g, s, pair, w)
        assert closed <= 1e-12
        assert abs(closed - brute) <= 1e-9 * max(1.0, abs(brute))
        sigma2 = float(rng.uniform(0.2, 3.0))
        closed_e = expected_conflict_delta(g, pair, sigma2=sigma2, weight=w)
        brute_e = brute_expected_delta(g, pair, sigma2, w)
        assert closed_e <= 1e-12
        assert abs(closed_e - brute_e) <= 1e-9 * max(1.0, abs(brute_e))
        done += 1


def test_expected_delta_is_monte_carlo_mean():
    # Independent oracle: average the opinion-mode delta over many draws of
    # s ~ N(0, sigma^2 I); the closed form must land within 3 standard errors.
    g = build_graph(5, [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)])
    pair, w, sigma2 = (1, 3), 1.3, 1.7
    rng = np.random.default_rng(32)
    samples = np.empty(100_000)
    for i in range(samples.size):
        s = center(rng.standard_normal(5) * np.sqrt(sigma2))
        samples[i] = conflict_delta(g, s, pair, weight=w)
    mean = samples.mean()
    se = samples.std(ddof=1) / np.sqrt(samples.size)
    expected = expected_conflict_delta(g, pair, sigma2=sigma2, weight=w)
    assert abs(mean - expected) <= 3 * se


def test_scan_matches_single_calls_bitwise():
    rng = np.random.default_rng(33)
    g = erdos_renyi(12, 0.4, seed=5)
    s = center(rng.standard_normal(12))
    cands = g.non_edges()[:15]
    recs = scan_candidates(g, cands, s=s, sigma2=1.4, weight=0.8)
    assert [r.edge for r in recs] == cands
    for r in recs:
        assert r.weight == 0.8
        assert r.delta_c == conflict_delta(g, s, r.edge, weight=0.8)
        assert r.delta_ec == expected_conflict_delta(g, r.edge, sigma2=1.4, weight=0.8)


def test_scan_mode_selection():
    g = erdos_renyi(8, 0.3, seed=6)
    cands = g.non_edges()[:4]
    s = center(np.arange(8, dtype=float))
    only_c = scan_candidates(g, cands, s=s)
    assert all(r.delta_ec is None and r.delta_c is not None for r in only_c)
    only_e = scan_candidates(g, cands, sigma2=2.0)
    assert all(r.delta_c is None and r.delta_ec is not None for r in only_e)
    with pytest.raises(ValueError):
        scan_candidates(g, cands)  # neither mode requested


def test_candidate_validation():
    s = np.array([1.0, 0.0, -1.0])
    with pytest.raises(ValueError, match="already an edge"):
        conflict_delta(P3, s, (0, 1))
    with pytest.raises(ValueError):
        conflict_delta(P3, s, (1, 1))
    with pytest.raises(ValueError):
        conflict_delta(P3, s, (0, 7))
    with pytest.raises(ValueError):
        conflict_delta(P3, s, (0, 2), weight=-1.0)


def test_zero_weight_changes_nothing():
    s = np.array([1.0, 0.0, -1.0])
    assert conflict_delta(P3, s, (0, 2), weight=0.0) == 0.0
    assert expected_conflict_delta(P3, (0, 2), weight=0.0) == 0.0

"""Bridge-group comparison on the blocky benchmark graph."""

from __future__ import annotations

import numpy as np
import pytest

from fjconflict.graphs import SbmConfig, build_graph
from fjconflict.sbm_study import (
    GROUP_NAMES,
    GroupStats,
    eligible_pairs,
    ordering_holds,
    run_group_study,
)


def test_eligible_pairs_hand_case():
    # A = {0,1}, B = {2,3}, C = {4}, D = {5}
    labels = np.array([0, 0, 1, 1, 2, 3])
    g = build_graph(6, [(0, 4), (2, 4), (1, 5), (3, 5)])
    groups = eligible_pairs(g, labels)
    assert groups["group1"] == [(0, 1)]
    assert groups["group2"] == [(0, 2)]  # both hang off bridge C
    assert groups["group3"] == [(1, 3)]  # both hang off bridge D


def test_eligible_pairs_exclude_existing_edges_and_allow_overlap():
    labels = np.array([0, 1, 2, 3])
    g = build_graph(4, [(0, 1), (0, 2), (1, 2), (0, 3), (1, 3)])
    groups = eligible_pairs(g, labels)
    assert groups["group2"] == [] and groups["group3"] == []  # (0,1) is an edge
    g2 = build_graph(4, [(0, 2), (1, 2), (0, 3), (1, 3)])
    groups = eligible_pairs(g2, labels)
    # both endpoints touch both bridges, so the pair shows up in both groups
    assert groups["group2"] == [(0, 1)] and groups["group3"] == [(0, 1)]


def test_group_study_deterministic():
    cfg = SbmConfig(sizes=(20, 20, 6, 6), seed=0)
    a = run_group_study(seeds=2, links_per_group=5, config=cfg)
    b = run_group_study(seeds=2, links_per_group=5, config=cfg)
    assert a == b
    assert [st.name for st in a] == list(GROUP_NAMES)
    for st in a:
        assert st.count == 10
        assert st.mean < 0.0  # added links always reduce expected conflict
        assert st.half_width >= 0.0
        assert st.magnitude == -st.mean


def test_group_study_insufficient_pool():
    tiny = SbmConfig(sizes=(3, 3, 2, 2), probs=((0.0,) * 4,) * 4, seed=0)
    with pytest.raises(ValueError, match="eligible pairs"):
        run_group_study(seeds=1, links_per_group=5, config=tiny)
    with pytest.raises(ValueError):
        run_group_study(seeds=0)


def test_ordering_holds_logic():
    def stats(m1, m2, m3, hw):
        return [
            GroupStats("group1", 10, -m1, hw),
            GroupStats("group2", 10, -m2, hw),
            GroupStats("group3", 10, -m3, hw),
        ]

    assert ordering_holds(stats(1.0, 3.0, 2.0, hw=0.4))
    assert not ordering_holds(stats(1.0, 2.0, 3.0, hw=0.4))  # wrong direction
    assert not ordering_holds(stats(1.0, 3.0, 2.9, hw=0.4))  # gap inside interval
    assert not ordering_holds(stats(2.0, 3.0, 2.1, hw=0.4))  # first gap too small

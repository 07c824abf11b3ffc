import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import random_graph
from geodim.errors import DomainError
from geodim.estimators import (
    DEGENERATE_DEGREE,
    EMPTY_DENOMINATOR,
    METHODS,
    EstimatorOutcome,
    estimate_dimension,
    w1,
    w2,
    w2_symmetric,
    w3,
    w4,
)
from geodim.geograph import Graph, build_rgg, shuffle_labels, vertex_delta
from geodim.pointcloud import PointCloud, sample_unit_ball
from geodim.wd import DEFAULT_CAP, wd

STATS = {"W1": w1, "W2": w2, "W2sym": w2_symmetric, "W3": w3, "W4": w4}


def test_w1_examples(k3, star5):
    out = w1(k3).with_dimension()
    assert out.W == 1.0 and out.delta == 1 and out.clamped
    out = w1(star5).with_dimension()
    assert out.W == 0.0 and out.delta == DEFAULT_CAP and out.clamped
    assert out.diagnostics["vertex"] == 0


def test_w1_tie_goes_to_smaller_label():
    # vertices 1 and 3 both have degree 3; vertex 1's neighbourhood holds one edge, vertex 3's none
    g = Graph.from_edges(7, [(1, 0), (1, 2), (1, 4), (0, 2), (3, 5), (3, 6), (3, 4)])
    out = w1(g)
    assert out.diagnostics["vertex"] == 1
    assert out.W == pytest.approx(1 / 3)


def test_w1_degenerate():
    assert w1(Graph.from_edges(2, [(0, 1)])).failure == DEGENERATE_DEGREE
    assert w1(Graph.from_edges(0, [])).failure == DEGENERATE_DEGREE


def test_w2_examples(k3, path3):
    assert w2(k3).W == 1.0
    assert w2(Graph.from_edges(3, [(0, 2), (1, 2)])).W == 0.0
    out = w2(path3)
    assert out.failure == EMPTY_DENOMINATOR and out.W is None and out.delta is None


def test_w2_symmetric_examples(k3, path3):
    assert w2_symmetric(k3).W == 1.0
    assert w2_symmetric(path3).W == 0.0
    assert w2_symmetric(Graph.from_edges(4, [(0, 1), (2, 3)])).failure == EMPTY_DENOMINATOR


def test_w3_examples(k3, path3):
    assert w3(k3).W == 1.0
    out = w3(path3)
    assert out.W == 0.0 and out.diagnostics["qualifying"] == 1
    assert w3(Graph.from_edges(2, [(0, 1)])).failure == EMPTY_DENOMINATOR


def test_w3_isolated_vertices_do_not_count(k3):
    padded = Graph.from_edges(10, [(0, 1), (1, 2), (0, 2)])
    assert w3(padded).W == 1.0 and w3(padded).diagnostics["qualifying"] == 3


def test_w4_examples(k3):
    g = Graph.from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2)])
    assert w4(g).W == pytest.approx(1 / 3)
    assert w4(Graph.from_edges(3, [(1, 2)])).failure == DEGENERATE_DEGREE
    assert w4(k3).W == 1.0


def test_outcome_invariants():
    with pytest.raises(ValueError):
        EstimatorOutcome("W1")
    with pytest.raises(ValueError):
        EstimatorOutcome("W1", W=0.5, failure=EMPTY_DENOMINATOR)
    with pytest.raises(ValueError):
        EstimatorOutcome("W1", delta=3, failure=EMPTY_DENOMINATOR)


@pytest.mark.parametrize("method", METHODS)
def test_empty_graph_fails(method):
    out = estimate_dimension(Graph.from_edges(0, []), method, seed=1)
    assert out.failure is not None and out.delta is None


def test_unknown_method(k3):
    with pytest.raises(DomainError):
        estimate_dimension(k3, "W9")


@pytest.mark.parametrize("m", [3, 4, 7, 12])
def test_complete_graphs_are_all_ones(m):
    g = Graph.complete(m)
    for method in METHODS:
        assert STATS[method](g).W == 1.0
        assert estimate_dimension(g, method, seed=m).W == 1.0


@pytest.mark.parametrize(
    "g",
    [Graph.from_edges(5, [(0, i) for i in range(1, 5)]),
     Graph.from_edges(6, [(i, i + 1) for i in range(5)]),
     Graph.from_edges(6, [(i, (i + 1) % 6) for i in range(6)]),
     Graph.from_edges(6, [(a, b) for a in range(3) for b in range(3, 6)])],
)
def test_triangle_free_graphs_are_zero(g):
    assert w3(g).W == 0.0
    for method in ("W1", "W2", "W4", "W2sym"):
        for seed in range(5):
            out = estimate_dimension(g, method, seed=seed)
            assert out.failure is not None or out.W == 0.0


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 25), st.floats(0.0, 1.0), st.integers(0, 2 ** 32 - 1))
def test_statistics_in_unit_interval(n, p, seed):
    g = random_graph(np.random.default_rng(seed), n, p)
    for method in METHODS:
        out = estimate_dimension(g, method, seed=seed)
        if out.ok:
            assert 0.0 <= out.W <= 1.0
            assert 1 <= out.delta <= DEFAULT_CAP
        else:
            assert out.delta is None


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 25), st.floats(0.0, 1.0), st.integers(0, 2 ** 32 - 1))
def test_label_free_statistics_ignore_shuffles(n, p, seed):
    g = random_graph(np.random.default_rng(seed), n, p)
    h = shuffle_labels(g, seed + 1)
    assert w3(g) == w3(h)
    assert w2_symmetric(g) == w2_symmetric(h)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 25), st.floats(0.0, 1.0), st.integers(0, 2 ** 32 - 1))
def test_shortcut_matches_explicit_shuffle(n, p, seed):
    """``estimate_dimension`` skips the relabelled graph for W1 and W4."""
    g = random_graph(np.random.default_rng(seed), n, p)
    for method, stat in (("W1", w1), ("W4", w4), ("W2", w2)):
        fast = estimate_dimension(g, method, seed=seed)
        slow = stat(shuffle_labels(g, seed)).with_dimension()
        assert (fast.W, fast.delta, fast.failure) == (slow.W, slow.delta, slow.failure)


def test_estimate_reports_clamping(k3):
    out = estimate_dimension(k3, "W3", seed=0, cap=10)
    assert out.delta == 1 and out.clamped
    out = estimate_dimension(Graph.from_edges(3, [(0, 1), (1, 2)]), "W3", seed=0, cap=10)
    assert out.delta == 10 and out.clamped


@pytest.mark.parametrize("d", [1, 2, 3])
def test_local_clustering_is_conditionally_unbiased(d):
    """Given D neighbours, delta / C(D, 2) has mean w_d.

    Neighbourhoods are built directly: 20 points uniform in a ball of
    radius r around a torus point, linked when within r of each other.
    """
    D, draws, r = 20, 20_000, 0.1
    centre = np.full(d, 0.5)
    rng = np.random.default_rng(d)
    pts = sample_unit_ball(d, D * draws, seed=70 + d).points.reshape(draws, D, d) * r + centre
    ratios = np.empty(draws)
    for k in range(draws):
        cloud = PointCloud(np.mod(pts[k] + rng.random(d), 1.0), "torus")
        g = build_rgg(cloud, r)
        ratios[k] = g.edge_count / (D * (D - 1) / 2)
    se = ratios.std(ddof=1) / math.sqrt(draws)
    assert abs(ratios.mean() - wd(d)) <= 4 * se


def test_vertex_delta_matches_w4_numerator():
    g = random_graph(np.random.default_rng(3), 30, 0.3)
    out = w4(g)
    assert out.diagnostics["delta"] == vertex_delta(g, 0)

"""Eigen/singular-value machinery and Ramanujan reports."""
from __future__ import annotations

import math

import numpy as np
import pytest

from ramagraph.graphs import BinaryBigraph, GraphError, SimpleGraph
from ramagraph.spectral import (
    centered_spectral_norm,
    cluster_multiplicities,
    eigenvalues,
    match_spectrum,
    mu_bound,
    ramanujan_report,
    singular_values,
    symmetric_eigenvalues,
    theta_c,
)


def test_inrepo_solver_agrees_with_lapack():
    rng = np.random.default_rng(20240812)
    for n in (1, 2, 3, 5, 8, 21, 60, 173):
        A = rng.standard_normal((n, n))
        A = (A + A.T) / 2
        w_ql = symmetric_eigenvalues(A, method="ql")
        w_la = symmetric_eigenvalues(A, method="lapack")
        scale = max(1.0, np.abs(w_la).max())
        assert np.abs(w_ql - w_la).max() < 1e-11 * scale


def test_solver_handles_degenerate_inputs():
    assert symmetric_eigenvalues(np.zeros((0, 0)), method="ql").size == 0
    assert symmetric_eigenvalues(np.array([[4.0]]), method="ql")[0] == 4.0
    # already diagonal: Householder loop has nothing to do
    w = symmetric_eigenvalues(np.diag([3.0, 1.0, 2.0]), method="ql")
    assert np.allclose(w, [1.0, 2.0, 3.0])


def test_eigenvalues_known_graphs():
    K4 = SimpleGraph(np.ones((4, 4), dtype=np.uint8) - np.eye(4, dtype=np.uint8))
    assert np.allclose(eigenvalues(K4), [3, -1, -1, -1], atol=1e-10)

    path3 = SimpleGraph(np.array([[0, 1, 0], [1, 0, 1], [0, 1, 0]], dtype=np.uint8))
    assert np.allclose(eigenvalues(path3), [math.sqrt(2), 0, -math.sqrt(2)], atol=1e-10)


def test_bipartite_regular_graph_has_minus_d():
    # 3-regular complete bipartite K_{3,3}
    B = np.ones((3, 3), dtype=np.uint8)
    adj = np.block([[np.zeros((3, 3), np.uint8), B], [B.T, np.zeros((3, 3), np.uint8)]])
    w = eigenvalues(SimpleGraph(adj))
    assert abs(w[-1] + 3) < 1e-10


def test_singular_values_hand_cases():
    sv = singular_values(np.array([[1, 1, 0], [0, 1, 1]]))
    assert np.allclose(sv, [math.sqrt(3), 1.0], atol=1e-10)

    ones = singular_values(np.ones((3, 5)))
    assert np.allclose(ones, [math.sqrt(15), 0, 0], atol=1e-10)

    # wide vs tall give the same values
    M = (np.random.default_rng(5).random((4, 9)) < 0.5).astype(np.uint8)
    assert np.allclose(singular_values(M), singular_values(M.T), atol=1e-9)


def test_singular_values_against_lapack_svd():
    rng = np.random.default_rng(99)
    for shape in ((6, 6), (5, 11), (12, 4)):
        M = (rng.random(shape) < 0.4).astype(np.uint8)
        sv = singular_values(M)
        ref = np.sort(np.linalg.svd(M.astype(float), compute_uv=False))[::-1]
        assert np.abs(sv - ref).max() < 1e-9


def test_cluster_multiplicities():
    vals = [3.0, 2.9999999998, 1.0, 1.0, 0.0]
    clusters = cluster_multiplicities(vals)
    assert [(round(v, 6), m) for v, m in clusters] == [(3.0, 2), (1.0, 2), (0.0, 1)]


def test_match_spectrum_reports_mismatch():
    ok, _ = match_spectrum([3.0, 1.0, 1.0], [(3.0, 1), (1.0, 2)])
    assert ok
    ok, msg = match_spectrum([3.0, 1.0, 1.0], [(3.0, 1), (1.1, 2)])
    assert not ok and "cluster" in msg
    ok, msg = match_spectrum([3.0, 1.0], [(3.0, 1), (1.0, 2)])
    assert not ok and "expected 3" in msg


def test_ramanujan_report_cycle_graph():
    n = 5
    adj = np.zeros((n, n), dtype=np.uint8)
    for v in range(n):
        adj[v, (v + 1) % n] = adj[(v + 1) % n, v] = 1
    rep = ramanujan_report(SimpleGraph(adj))
    assert rep.kind == "graph"
    assert rep.degrees == (2, 2)
    assert rep.top == pytest.approx(2.0, abs=1e-10)
    # eigenvalues are 2, 0.618 (x2), -1.618 (x2); second by magnitude is 1.618
    assert rep.second == pytest.approx(abs(2 * math.cos(4 * math.pi / 5)), abs=1e-9)
    assert rep.second_multiplicity == 2
    assert rep.is_ramanujan  # 1.618 <= 2
    assert rep.gap == pytest.approx(rep.bound - rep.second)


def test_ramanujan_report_bigraph_all_ones():
    rep = ramanujan_report(BinaryBigraph(np.ones((3, 3), dtype=np.uint8)))
    assert rep.kind == "bigraph"
    assert rep.top == pytest.approx(3.0, abs=1e-10)
    assert rep.second == pytest.approx(0.0, abs=1e-10)
    assert rep.is_ramanujan
    assert rep.bound == pytest.approx(2 * math.sqrt(2))


def test_ramanujan_report_requires_regularity():
    adj = np.zeros((3, 3), dtype=np.uint8)
    adj[0, 1] = adj[1, 0] = 1
    with pytest.raises(GraphError):
        ramanujan_report(SimpleGraph(adj))


def test_report_dict_stable_keys():
    rep = ramanujan_report(BinaryBigraph(np.ones((2, 2), dtype=np.uint8)))
    d = rep.to_dict()
    assert list(d) == [
        "kind", "shape", "degrees", "size", "top", "second",
        "second_multiplicity", "bound", "gap", "is_ramanujan",
        "spectrum_clusters",
    ]


def test_centered_spectral_norm_all_ones_is_zero():
    E = BinaryBigraph(np.ones((4, 4), dtype=np.uint8))
    assert centered_spectral_norm(E) == pytest.approx(0.0, abs=1e-10)


def test_mu_bound():
    assert mu_bound(3, 3) == pytest.approx(2 * math.sqrt(2))
    assert mu_bound(5, 3) == pytest.approx(2 + math.sqrt(2))


def test_theta_c_matches_brute_force():
    rng = np.random.default_rng(42)
    for _ in range(20):
        n_r = int(rng.integers(2, 12))
        n_c = int(rng.integers(2, 10))
        M = (rng.random((n_r, n_c)) < 0.5).astype(np.uint8)
        B = BinaryBigraph(M)
        brute = max(
            int(M[:, i] @ M[:, j])
            for i in range(n_c)
            for j in range(n_c)
            if i != j
        )
        assert theta_c(B) == brute


def test_theta_c_identical_columns():
    M = np.array([[1, 1], [1, 1], [0, 0]], dtype=np.uint8)
    assert theta_c(BinaryBigraph(M)) == 2
    with pytest.raises(GraphError):
        theta_c(BinaryBigraph(np.ones((2, 1), dtype=np.uint8)))

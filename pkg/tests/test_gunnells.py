"""Point-hyperplane bigraphs: enumeration, spectra, folding obstructions."""
from __future__ import annotations

import math

import numpy as np
import pytest

from ramagraph.gunnells import (
    FoldingObstruction,
    build_gunnells,
    gunnells_nonbipartite,
    gunnells_spectrum_check,
    nu,
    predicted_gunnells_clusters,
    projective_points,
    self_orthogonal_points,
)
from ramagraph.graphs import check_biregular
from ramagraph.spectral import match_spectrum, singular_values


def test_nu_values():
    assert nu(3, 2) == 7
    assert nu(3, 3) == 13
    assert nu(3, 5) == 31
    assert nu(4, 2) == 15
    assert nu(4, 3) == 40
    for q in (2, 3, 5, 7):
        assert nu(2, q) == q + 1


def test_projective_points_2_3_frozen():
    P = projective_points(2, 3)
    expected = [
        (1, 0, 0), (1, 0, 1), (1, 1, 0), (1, 1, 1),
        (0, 1, 0), (0, 1, 1),
        (0, 0, 1),
    ]
    assert [tuple(int(v) for v in row) for row in P] == expected


def test_projective_points_canonical_and_distinct():
    for q, l in [(2, 3), (3, 3), (5, 3), (3, 4), (7, 2)]:
        P = projective_points(q, l)
        assert P.shape == (nu(l, q), l)
        rows = {tuple(int(v) for v in r) for r in P}
        assert len(rows) == nu(l, q)
        for r in P:
            nz = np.nonzero(r)[0]
            assert nz.size > 0 and r[nz[0]] == 1
        # no two rows generate the same line
        for lam in range(2, q):
            scaled = {tuple(int(v) for v in (r * lam) % q) for r in P}
            assert scaled.isdisjoint(rows) or lam % q == 1


def test_build_shapes_degrees_symmetry():
    for q, l in [(2, 3), (3, 3), (5, 3), (2, 4), (3, 4)]:
        B = build_gunnells(q, l)
        n = nu(l, q)
        assert B.matrix.shape == (n, n)
        assert check_biregular(B) == (nu(l - 1, q), nu(l - 1, q))
        assert np.array_equal(B.matrix, B.matrix.T)


def test_fano_incidence_row():
    # the (2,3) instance is the Fano plane: point (1,0,0) lies on the
    # hyperplanes annihilated by (0,1,0), (0,1,1) and (0,0,1)
    B = build_gunnells(2, 3)
    P = projective_points(2, 3)
    on = [tuple(int(v) for v in P[j]) for j in np.nonzero(B.matrix[0])[0]]
    assert on == [(0, 1, 0), (0, 1, 1), (0, 0, 1)]


def test_spectra_match_two_level_form():
    for q, l in [(2, 3), (3, 3), (5, 3), (2, 4), (3, 4)]:
        sv = singular_values(build_gunnells(q, l))
        ok, msg = match_spectrum(sv, predicted_gunnells_clusters(q, l), value_tol=1e-8)
        assert ok, f"({q},{l}): {msg}"


def test_spectrum_check_verdicts():
    v = gunnells_spectrum_check(2, 3)
    assert v.matches and v.is_ramanujan
    assert v.sigma1 == pytest.approx(3.0, abs=1e-10)
    assert v.flat_value == pytest.approx(math.sqrt(2))
    v = gunnells_spectrum_check(2, 4)
    assert v.matches and v.is_ramanujan
    assert v.sigma1 == pytest.approx(7.0, abs=1e-10)
    assert v.flat_value == pytest.approx(2.0)
    v = gunnells_spectrum_check(3, 3)
    assert v.matches
    assert v.degree == 4


def test_self_orthogonal_witnesses():
    assert (1, 1, 0) in self_orthogonal_points(2, 3)
    assert (1, 1, 1) in self_orthogonal_points(3, 3)
    assert self_orthogonal_points(3, 2) == []
    # q = 1 mod 4 has sqrt(-1), so the projective line has two
    assert self_orthogonal_points(5, 2) == [(1, 2), (1, 3)]


def test_every_cubic_or_higher_case_obstructs():
    # quadratic-form zeros always exist in 3+ variables over F_q, so the
    # fold is never clean for l >= 3
    for q in (2, 3, 5, 7):
        for l in (3, 4):
            assert self_orthogonal_points(q, l), f"expected witnesses for ({q},{l})"


def test_nonbipartite_refusal_carries_witnesses():
    with pytest.raises(FoldingObstruction) as exc:
        gunnells_nonbipartite(2, 3)
    assert (1, 1, 0) in exc.value.witnesses
    with pytest.raises(FoldingObstruction) as exc:
        gunnells_nonbipartite(3, 3)
    assert (1, 1, 1) in exc.value.witnesses


def test_nonbipartite_clean_case():
    # l = 2 with q = 3 mod 4 has no self-orthogonal points: the fold is a
    # perfect matching between each point and its annihilator
    g = gunnells_nonbipartite(3, 2)
    assert g.n == 4
    assert g.regular_degree() == 1
    assert np.array_equal(g.adjacency, g.adjacency.T)
    assert np.trace(g.adjacency) == 0

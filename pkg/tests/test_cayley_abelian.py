"""Abelian Cayley graphs and their character-sum spectrum oracle."""
from __future__ import annotations

import math

import numpy as np
import pytest

from ramagraph.cayley_abelian import (
    AbelianCayleySpec,
    bibak_symbols,
    build_bibak,
    build_li,
    character_spectrum,
    li_symbols,
)
from ramagraph.spectral import eigenvalues, ramanujan_report


def test_spec_validation():
    with pytest.raises(ValueError):
        AbelianCayleySpec(3, "li", ((0, 1), (0, 2), (1, 0)))  # too few
    with pytest.raises(ValueError):
        AbelianCayleySpec(3, "nope", ((0, 1), (0, 2), (1, 0), (2, 0)))
    with pytest.raises(ValueError):
        # right size but not negation-closed
        AbelianCayleySpec(3, "li", ((0, 1), (1, 1), (1, 0), (2, 0)))


def test_bibak_symbols_q3_frozen():
    spec = bibak_symbols(3)
    assert sorted(spec.symbols) == [(0, 1), (0, 2), (1, 0), (2, 0)]


def test_bibak_symbol_counts():
    for q in (3, 7, 11, 19):
        spec = bibak_symbols(q)
        assert len(spec.symbols) == q + 1
        for x, y in spec.symbols:
            assert (x * x + y * y) % q == 1


def test_bibak_rejects_one_mod_four():
    with pytest.raises(ValueError):
        bibak_symbols(5)


def test_li_symbols_are_norm_one_pairs():
    for q in (5, 13):
        spec = li_symbols(q)
        assert len(spec.symbols) == q + 1
        # (0, 1) is the unit element, always norm one
        assert (0, 1) in spec.symbols


def test_build_shapes_and_regularity():
    g = build_li(5)
    assert g.n == 25 and g.regular_degree() == 6
    g = build_li(13)
    assert g.n == 169 and g.regular_degree() == 14
    g = build_bibak(3)
    assert g.n == 9 and g.regular_degree() == 4
    g = build_bibak(7)
    assert g.n == 49 and g.regular_degree() == 8


def test_character_value_bibak_q3():
    spec = bibak_symbols(3)
    lam = character_spectrum(spec)
    assert lam[0] == pytest.approx(4.0, abs=1e-12)  # trivial character
    # (u,v) = (1,0): cos(0) + cos(0) + cos(2pi/3) + cos(4pi/3) = 2 - 1
    q = 3
    s = sum(math.cos(2 * math.pi * ((1 * a + 0 * b) % q) / q) for a, b in spec.symbols)
    assert s == pytest.approx(1.0, abs=1e-12)
    assert np.any(np.abs(lam - 1.0) < 1e-12)


def test_oracle_matches_eigensolver():
    for spec, graph in [
        (bibak_symbols(3), build_bibak(3)),
        (bibak_symbols(7), build_bibak(7)),
        (bibak_symbols(11), build_bibak(11)),
        (li_symbols(5), build_li(5)),
        (li_symbols(13), build_li(13)),
    ]:
        solver = eigenvalues(graph)
        oracle = character_spectrum(spec)
        assert np.abs(solver - oracle).max() < 1e-8, spec.flavor


def test_ramanujan_bound_holds():
    for graph, q in [(build_bibak(7), 7), (build_bibak(11), 11), (build_li(13), 13)]:
        rep = ramanujan_report(graph)
        assert rep.is_ramanujan
        assert rep.second <= 2.0 * math.sqrt(q) + 1e-9


def test_li_adjacency_symmetric_no_loops():
    g = build_li(5)
    assert np.array_equal(g.adjacency, g.adjacency.T)
    assert np.trace(g.adjacency) == 0

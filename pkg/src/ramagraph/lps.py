"""Cayley graphs on PGL(2, F_q) with four-square generator sets.

The generator set comes from the p+1 ways of writing p as a0^2 + a1^2 +
a2^2 + a3^2 with a0 odd positive and the rest even. Each solution maps to
a 2x2 matrix over F_q through a square root of -1, and the Cayley graph
on PGL(2, F_q) is bipartite or splits into two isomorphic components
according to the Legendre symbol (p|q).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Optional

import numpy as np

from .fields import legendre_symbol, require_odd_prime, residue_partition, sqrt_minus_one
from .graphs import (
    BinaryBigraph,
    SimpleGraph,
    VertexPairing,
    apply_pairing,
    bipartition,
    cayley_graph,
    connected_components,
)


class FourSquare(NamedTuple):
    a0: int
    a1: int
    a2: int
    a3: int


class ProjMatrix(NamedTuple):
    """Row-major residues of [[a, b], [c, d]] mod q.

    Values produced by canonicalize/enumerate_pgl are canonical class
    representatives: either [[0, 1], [g, h]] with g != 0, or
    [[1, f], [g, h]] with nonzero determinant. Raw (uncanonicalized)
    matrices also travel through this type; the class they represent is
    unchanged by scaling.
    """

    a: int
    b: int
    c: int
    d: int


def proj_det(m: ProjMatrix, q: int) -> int:
    return (m.a * m.d - m.b * m.c) % q


def canonicalize(m: ProjMatrix, q: int) -> ProjMatrix:
    """Scale a GL(2, F_q) matrix to its canonical class representative.

    Divides by the first nonzero entry of the first row, pinning that
    entry to 1. A zero first row or zero determinant is rejected.
    """
    a, b, c, d = (m.a % q, m.b % q, m.c % q, m.d % q)
    if (a * d - b * c) % q == 0:
        raise ValueError(f"matrix {m} is singular mod {q}")
    pivot = a if a != 0 else b
    inv = pow(pivot, q - 2, q)
    return ProjMatrix((a * inv) % q, (b * inv) % q, (c * inv) % q, (d * inv) % q)


def proj_mul(x: ProjMatrix, y: ProjMatrix, q: int) -> ProjMatrix:
    raw = ProjMatrix(
        x.a * y.a + x.b * y.c,
        x.a * y.b + x.b * y.d,
        x.c * y.a + x.d * y.c,
        x.c * y.b + x.d * y.d,
    )
    return canonicalize(raw, q)


def proj_inverse(m: ProjMatrix, q: int) -> ProjMatrix:
    # the adjugate represents the inverse class; the 1/det scalar drops out
    return canonicalize(ProjMatrix(m.d, -m.b, -m.c, m.a), q)


def enumerate_pgl(q: int) -> list[ProjMatrix]:
    """All q(q^2 - 1) canonical representatives, in fixed order.

    The [[0, 1], [g, h]] block comes first (g, then h ascending), then the
    [[1, f], [g, h]] block (f, g, h ascending, skipping h = f*g which
    would be singular). The list order is the vertex numbering used by
    every LPS graph here, so it must never change.
    """
    require_odd_prime(q)
    out = [ProjMatrix(0, 1, g, h) for g in range(1, q) for h in range(q)]
    out.extend(
        ProjMatrix(1, f, g, h)
        for f in range(q)
        for g in range(q)
        for h in range(q)
        if (h - f * g) % q != 0
    )
    assert len(out) == q * (q * q - 1)
    return out


def psl_class(m: ProjMatrix, q: int) -> int:
    """+1 when det is a quadratic residue (the PSL class), else -1."""
    return legendre_symbol(proj_det(m, q), q)


def four_square_solutions(p: int) -> list[FourSquare]:
    """All p+1 ways p = a0^2+a1^2+a2^2+a3^2, a0 odd positive, others even.

    Exhaustive search over |a_i| <= floor(sqrt(p)), returned in
    lexicographic tuple order. A count other than p+1 means p was not a
    prime that is 1 mod 4, or an arithmetic bug.
    """
    if p % 4 != 1:
        raise ValueError(f"p must be 1 mod 4, got {p}")
    r = math.isqrt(p)
    evens = [e for e in range(-r, r + 1) if e % 2 == 0]
    sols = []
    for a0 in range(1, r + 1, 2):
        rem0 = p - a0 * a0
        for a1 in evens:
            rem1 = rem0 - a1 * a1
            if rem1 < 0:
                continue
            for a2 in evens:
                rem2 = rem1 - a2 * a2
                if rem2 < 0:
                    continue
                for a3 in evens:
                    if a3 * a3 == rem2:
                        sols.append(FourSquare(a0, a1, a2, a3))
    sols.sort()
    if len(sols) != p + 1:
        raise AssertionError(f"expected {p + 1} four-square solutions for p={p}, found {len(sols)}")
    return sols


def lps_generators(p: int, q: int) -> list[ProjMatrix]:
    """The p+1 canonical generator matrices over F_q.

    Each four-square solution (a0, a1, a2, a3) becomes
    [[a0 + i*a1, a2 + i*a3], [-a2 + i*a3, a0 - i*a1]] with i a square
    root of -1 mod q; the raw determinant is then p mod q by
    construction, which is asserted. The canonical forms must be pairwise
    distinct (a duplicate would be a multi-edge) and closed under
    inversion.
    """
    if p == q:
        raise ValueError("p and q must be distinct primes")
    if p % 4 != 1 or q % 4 != 1:
        raise ValueError(f"need p ≡ q ≡ 1 mod 4, got p={p}, q={q}")
    require_odd_prime(p)
    require_odd_prime(q)
    i = sqrt_minus_one(q)
    gens = []
    for a0, a1, a2, a3 in four_square_solutions(p):
        raw = ProjMatrix(
            (a0 + i * a1) % q,
            (a2 + i * a3) % q,
            (-a2 + i * a3) % q,
            (a0 - i * a1) % q,
        )
        assert proj_det(raw, q) == p % q, f"generator determinant is not p mod q: {raw}"
        gens.append(canonicalize(raw, q))
    if len(set(gens)) != len(gens):
        raise ValueError(
            f"generator canonical forms collide for (p, q) = ({p}, {q}); "
            "the Cayley construction needs p+1 distinct classes"
        )
    if {proj_inverse(g, q) for g in gens} != set(gens):
        raise AssertionError("generator set is not closed under inversion")
    return gens


def involution_matrix(q: int) -> ProjMatrix:
    """A raw matrix A with A^2 ~ I and non-residue determinant.

    Built as [[0, delta], [-1, 0]] for the smallest non-residue delta, so
    A^2 = -delta * I, which is the identity class. det A = delta is a
    non-residue, so left multiplication by A swaps the PSL classes. The
    result is left unscaled; the induced map on classes ignores scaling.
    """
    require_odd_prime(q)
    delta = residue_partition(q)[1][0]
    A = ProjMatrix(0, delta, q - 1, 0)
    sq = proj_mul(A, A, q)
    assert sq == ProjMatrix(1, 0, 0, 1), f"involution failed: A^2 ~ {sq}"
    assert legendre_symbol(proj_det(A, q), q) == -1
    return A


@dataclass
class LpsResult:
    """A built LPS graph plus its case analysis.

    For legendre == -1 the Cayley graph is bipartite between the PSL
    rows and the non-residue-class columns, carried in `bigraph` with
    `rows`/`cols` holding the element indices of each side. For
    legendre == +1 it splits into two components, carried as vertex
    index lists `parts` plus `components` (each a SimpleGraph on its
    part, vertex order following `parts`) and `iso`, the edge-preserving
    bijection parts[0] -> parts[1] given by left multiplication with the
    involution matrix.
    """

    p: int
    q: int
    legendre: int
    graph: SimpleGraph
    elements: list[ProjMatrix]
    generators: list[ProjMatrix]
    bigraph: Optional[BinaryBigraph] = None
    rows: Optional[list[int]] = None
    cols: Optional[list[int]] = None
    parts: Optional[tuple[list[int], list[int]]] = None
    components: Optional[tuple[SimpleGraph, SimpleGraph]] = None
    iso: Optional[np.ndarray] = None


def _extract_bipartite(result: LpsResult) -> None:
    adj = result.graph.adjacency
    classes = np.array([psl_class(m, result.q) for m in result.elements])
    rows = [int(i) for i in np.nonzero(classes == 1)[0]]
    cols = [int(i) for i in np.nonzero(classes == -1)[0]]
    # generators all sit in the non-residue class, so edges only cross
    if adj[np.ix_(rows, rows)].any() or adj[np.ix_(cols, cols)].any():
        raise AssertionError("intra-class edge found; bipartite case analysis is wrong")
    # independent confirmation by 2-coloring the graph itself
    sides = bipartition(result.graph)
    split = {frozenset(rows), frozenset(cols)}
    assert {frozenset(sides[0]), frozenset(sides[1])} == split, "2-coloring disagrees with class split"
    result.bigraph = BinaryBigraph(adj[np.ix_(rows, cols)].copy())
    result.rows = rows
    result.cols = cols


def _extract_components(result: LpsResult) -> None:
    adj = result.graph.adjacency
    comps = connected_components(result.graph)
    if len(comps) != 2:
        raise AssertionError(f"expected 2 components, found {len(comps)}")
    first, second = comps
    A = involution_matrix(result.q)
    index = {m: i for i, m in enumerate(result.elements)}
    q = result.q
    image = {v: index[proj_mul(A, result.elements[v], q)] for v in first}
    if sorted(image.values()) != list(second):
        raise AssertionError("involution image does not cover the second component")
    # the map X -> AX must carry edges to edges
    iso = np.array([image[v] for v in first], dtype=np.int64)
    sub1 = adj[np.ix_(first, first)]
    sub2 = adj[np.ix_(iso.tolist(), iso.tolist())]
    if not np.array_equal(sub1, sub2):
        raise AssertionError("left multiplication by the involution is not edge-preserving")
    result.parts = (list(first), list(second))
    result.components = (SimpleGraph(sub1.copy()), SimpleGraph(adj[np.ix_(second, second)].copy()))
    result.iso = iso


def build_lps(p: int, q: int) -> LpsResult:
    """Cayley graph on PGL(2, F_q), split per the Legendre symbol of p.

    (p|q) = -1 gives a balanced bipartite graph between the residue and
    non-residue determinant classes; (p|q) = +1 gives two isomorphic
    (p+1)-regular components, each on half the elements.
    """
    gens = lps_generators(p, q)
    elements = enumerate_pgl(q)
    graph = cayley_graph(
        elements,
        lambda x, s: proj_mul(x, s, q),
        gens,
        lambda s: proj_inverse(s, q),
    )
    result = LpsResult(p, q, legendre_symbol(p, q), graph, elements, gens)
    if result.legendre == -1:
        _extract_bipartite(result)
    else:
        _extract_components(result)
    return result


def lps_nonbipartite(p: int, q: int, result: Optional[LpsResult] = None) -> SimpleGraph:
    """Fold the bipartite case into a (p+1)-regular graph on half the vertices.

    Column vertex Z is glued onto the row vertex representing A*Z, with A
    the involution matrix. The fold is symmetric because A^2 ~ I, and its
    eigenvalue magnitudes equal the singular values of the bipartite
    form.
    """
    if result is None:
        result = build_lps(p, q)
    if result.legendre != -1:
        raise ValueError(f"(p|q) = +1 for (p, q) = ({p}, {q}); the graph is not bipartite")
    assert result.bigraph is not None and result.rows is not None and result.cols is not None
    A = involution_matrix(q)
    row_pos = {v: k for k, v in enumerate(result.rows)}
    index = {m: i for i, m in enumerate(result.elements)}
    column_to_row = np.empty(len(result.cols), dtype=np.int64)
    for k, v in enumerate(result.cols):
        target = index[proj_mul(A, result.elements[v], q)]
        column_to_row[k] = row_pos[target]
    return apply_pairing(result.bigraph, VertexPairing(column_to_row))

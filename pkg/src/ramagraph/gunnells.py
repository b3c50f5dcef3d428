"""Points-vs-hyperplanes incidence bigraphs over F_q^l.

Vertices on one side are the nu(l, q) = (q^l - 1)/(q - 1) projective
points in leading-one canonical form; the other side holds hyperplanes,
each stored by the canonical generator of its annihilator line. Incidence
is vanishing dot product, which makes the biadjacency symmetric and the
perp pairing the identity on labels.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .fields import is_prime
from .graphs import BinaryBigraph, SimpleGraph, VertexPairing, apply_pairing


class FoldingObstruction(ValueError):
    """Raised when the perp pairing would create self-loops.

    A loop appears exactly at a self-orthogonal point (x . x = 0 mod q);
    the offending canonical vectors ride along as `witnesses`.
    """

    def __init__(self, q: int, l: int, witnesses: list[tuple[int, ...]]):
        self.q = q
        self.l = l
        self.witnesses = witnesses
        preview = ", ".join(str(w) for w in witnesses[:3])
        more = "" if len(witnesses) <= 3 else f" and {len(witnesses) - 3} more"
        super().__init__(
            f"pairing for (q={q}, l={l}) would put loops on {len(witnesses)} "
            f"self-orthogonal points: {preview}{more}"
        )


def nu(l: int, q: int) -> int:
    """Number of lines through the origin in F_q^l."""
    return (q**l - 1) // (q - 1)


def _check_params(q: int, l: int) -> None:
    if not is_prime(q):
        raise ValueError(f"q must be prime, got {q}")
    if l < 2:
        raise ValueError(f"l must be at least 2, got {l}")


def projective_points(q: int, l: int) -> np.ndarray:
    """Canonical generators of all nu(l, q) lines, as a (nu, l) array.

    Stage t contributes the vectors with first nonzero coordinate (a one)
    at position t, enumerated lexicographically over the free tail. The
    row order is the vertex numbering for both sides of the bigraph.
    """
    _check_params(q, l)
    rows = []
    for t in range(l):
        for tail in itertools.product(range(q), repeat=l - 1 - t):
            rows.append((0,) * t + (1,) + tail)
    P = np.array(rows, dtype=np.int64)
    assert P.shape == (nu(l, q), l)
    return P


def build_gunnells(q: int, l: int) -> BinaryBigraph:
    """Balanced bigraph: point a meets hyperplane b iff x_b . x_a = 0 mod q.

    Both sides use the same point list (hyperplanes are labeled by their
    annihilator), so the matrix is symmetric and biregular with degree
    nu(l-1, q).
    """
    P = projective_points(q, l)
    B = ((P @ P.T) % q == 0).astype(np.uint8)
    return BinaryBigraph(B)


def predicted_gunnells_clusters(q: int, l: int) -> list[tuple[float, int]]:
    """Singular values as (value, multiplicity), descending.

    One value nu(l-1, q), then sqrt(q^(l-2)) with multiplicity nu - 1.
    For l = 2 both expressions collapse to 1 and the clusters merge.
    """
    _check_params(q, l)
    n = nu(l, q)
    if l == 2:
        return [(1.0, n)]
    return [(float(nu(l - 1, q)), 1), (math.sqrt(q ** (l - 2)), n - 1)]


@dataclass
class GunnellsVerdict:
    """Outcome of checking a built instance against the two-level spectrum."""

    q: int
    l: int
    degree: int
    sigma1: float
    flat_value: float
    max_deviation: float
    matches: bool
    is_ramanujan: bool
    message: str


def gunnells_spectrum_check(q: int, l: int, tol: float = 1e-8) -> GunnellsVerdict:
    """Compare computed singular values with the closed form.

    sigma_1 must equal nu(l-1, q) and every other value must sit at
    sqrt(q^(l-2)), all within tol. The Ramanujan comparison is
    sigma_2 <= 2 sqrt(d - 1) for d = nu(l-1, q).
    """
    from .spectral import singular_values

    B = build_gunnells(q, l)
    sv = singular_values(B)
    d = nu(l - 1, q)
    flat = math.sqrt(q ** (l - 2))
    expected = np.full(sv.shape, flat)
    expected[0] = d
    dev = float(np.abs(np.sort(sv)[::-1] - expected).max())
    matches = dev <= tol
    sigma2 = float(sv[1]) if sv.size > 1 else 0.0
    is_ramanujan = sigma2 <= 2.0 * math.sqrt(max(d - 1, 0)) + tol
    msg = "two-level spectrum confirmed" if matches else (
        f"deviation {dev:.3e} exceeds {tol:g}; construction or solver bug"
    )
    return GunnellsVerdict(q, l, d, float(sv[0]), flat, dev, matches, is_ramanujan, msg)


def self_orthogonal_points(q: int, l: int) -> list[tuple[int, ...]]:
    """Canonical points with x . x = 0 mod q, in enumeration order."""
    P = projective_points(q, l)
    norms = (P * P).sum(axis=1) % q
    return [tuple(int(v) for v in P[i]) for i in np.nonzero(norms == 0)[0]]


def gunnells_nonbipartite(q: int, l: int) -> SimpleGraph:
    """Fold the bigraph through the perp pairing (identity on labels).

    Succeeds iff no canonical point is self-orthogonal; otherwise the
    fold would carry loops and the conversion is refused with the
    witnesses attached.
    """
    witnesses = self_orthogonal_points(q, l)
    if witnesses:
        raise FoldingObstruction(q, l, witnesses)
    B = build_gunnells(q, l)
    return apply_pairing(B, VertexPairing.identity(B.n_c))

"""Cayley graphs on Z_q x Z_q with two classical connection sets.

Both flavors are (q+1)-regular on q^2 vertices. The li flavor reads the
additive group of F_{q^2} in the basis {xbar, 1} and connects by the
norm-one units; the bibak flavor connects by the circle x^2 + y^2 = 1
over Z_q with q = 3 mod 4. Because the group is abelian, the spectrum
has a closed form as character sums, which doubles as an independent
oracle for the dense eigensolver.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .fields import find_irreducible_quadratic, norm_one_units, require_odd_prime
from .graphs import SimpleGraph, cayley_graph


@dataclass(frozen=True)
class AbelianCayleySpec:
    """A connection set S on Z_q x Z_q, tagged by family.

    S must be closed under negation and have exactly q+1 members; both
    are checked so the Cayley graph is well-defined and (q+1)-regular.
    """

    q: int
    flavor: str
    symbols: tuple[tuple[int, int], ...] = field(default_factory=tuple)

    def __post_init__(self) -> None:
        require_odd_prime(self.q)
        if self.flavor not in ("li", "bibak"):
            raise ValueError(f"unknown flavor {self.flavor!r}")
        S = set(self.symbols)
        if len(S) != len(self.symbols) or len(S) != self.q + 1:
            raise ValueError(f"need q+1 = {self.q + 1} distinct symbols, got {len(self.symbols)}")
        negated = {((-a) % self.q, (-b) % self.q) for a, b in S}
        if negated != S:
            raise ValueError("symbol set is not closed under negation")


def li_symbols(q: int) -> AbelianCayleySpec:
    """Norm-one units of F_{q^2}, written as (a, b) coefficient pairs."""
    ext = find_irreducible_quadratic(q)
    units = norm_one_units(ext)
    return AbelianCayleySpec(q, "li", tuple((u.a, u.b) for u in units))


def bibak_symbols(q: int) -> AbelianCayleySpec:
    """Circle points x^2 + y^2 = 1 mod q; q = 3 mod 4 keeps |S| = q+1."""
    require_odd_prime(q)
    if q % 4 != 3:
        raise ValueError(f"q must be 3 mod 4, got {q}")
    pts = tuple(
        (x, y) for x in range(q) for y in range(q) if (x * x + y * y) % q == 1
    )
    return AbelianCayleySpec(q, "bibak", pts)


def _build(spec: AbelianCayleySpec) -> SimpleGraph:
    q = spec.q
    elements = [(a, b) for a in range(q) for b in range(q)]
    return cayley_graph(
        elements,
        lambda x, s: ((x[0] + s[0]) % q, (x[1] + s[1]) % q),
        list(spec.symbols),
        lambda s: ((-s[0]) % q, (-s[1]) % q),
    )


def build_li(q: int) -> SimpleGraph:
    """(q+1)-regular graph on the q^2 field elements, lexicographic order."""
    return _build(li_symbols(q))


def build_bibak(q: int) -> SimpleGraph:
    """(q+1)-regular circle-sum graph on Z_q x Z_q."""
    return _build(bibak_symbols(q))


def character_spectrum(spec: AbelianCayleySpec) -> np.ndarray:
    """Eigenvalues by character sums, descending, independent of any solver.

    For the character indexed by (u, v) the eigenvalue is
    sum over (s1, s2) in S of cos(2 pi (u s1 + v s2) / q); the sums are
    real because S is negation-closed, and the trivial character gives
    the degree q+1. Characters are enumerated in the same lexicographic
    (u, v) order as the vertices, then sorted.
    """
    q = spec.q
    S = np.array(spec.symbols, dtype=np.int64)
    uv = np.array([(u, v) for u in range(q) for v in range(q)], dtype=np.int64)
    phases = (uv @ S.T) % q
    lam = np.cos(2.0 * np.pi * phases / q).sum(axis=1)
    lam.sort()
    return lam[::-1].copy()

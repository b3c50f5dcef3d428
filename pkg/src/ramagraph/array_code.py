"""Unbalanced bigraphs B(q, l) built from powers of a cyclic shift.

B(q, l) is the q^2 x lq block matrix whose (i, j) block is P^((i-1)(j-1))
with 1-based block indices and P the q x q cyclic shift. Every row has
degree l, every column degree q, and the singular values have exact
closed forms, which makes these matrices the certification suite for the
dense eigensolver.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .fields import is_prime
from .graphs import BinaryBigraph, SimpleGraph


@dataclass(frozen=True)
class ArrayCodeSpec:
    """Parameters (q, l): q must be prime, l at least 2."""

    q: int
    l: int

    def __post_init__(self) -> None:
        if not is_prime(self.q):
            raise ValueError(f"q must be prime, got {self.q}")
        if self.l < 2:
            raise ValueError(f"l must be at least 2, got {self.l}")


def shift_power(q: int, e: int) -> np.ndarray:
    """P^e for the cyclic shift P: one at (i, i - e mod q) in each row."""
    M = np.zeros((q, q), dtype=np.uint8)
    rows = np.arange(q)
    M[rows, (rows - e) % q] = 1
    return M


def cyclic_shift(q: int) -> np.ndarray:
    """The q x q permutation with ones exactly at j = i - 1 (mod q)."""
    if q < 2:
        raise ValueError(f"q must be at least 2, got {q}")
    return shift_power(q, 1)


def build_array_code(spec: ArrayCodeSpec) -> BinaryBigraph:
    """Assemble B(q, l) and tag its analysis orientation.

    The first block row and block column consist of identity blocks
    (exponent zero). When l < q the spectral conventions study the
    transpose, so the bigraph is tagged accordingly.
    """
    q, l = spec.q, spec.l
    B = np.zeros((q * q, l * q), dtype=np.uint8)
    for bi in range(q):
        for bj in range(l):
            e = (bi * bj) % q
            B[bi * q : (bi + 1) * q, bj * q : (bj + 1) * q] = shift_power(q, e)
    return BinaryBigraph(B, analyze_transpose=(l < q))


def predicted_spectrum_clusters(spec: ArrayCodeSpec) -> list[tuple[float, int]]:
    """Closed-form singular values of B(q, l) as (value, multiplicity), descending.

    Three regimes: l <= q; l a multiple of q; and l > q with remainder
    k = l mod q. The multiset always has min(q^2, lq) entries.
    """
    q, l = spec.q, spec.l
    if l <= q:
        return [(math.sqrt(q * l), 1), (math.sqrt(q), l * (q - 1)), (0.0, l - 1)]
    k = l % q
    if k == 0:
        return [(math.sqrt(q * l), 1), (math.sqrt(l), q * (q - 1)), (0.0, q - 1)]
    return [
        (math.sqrt(q * l), 1),
        (math.sqrt(l + q - k), (q - 1) * k),
        (math.sqrt(l - k), (q - 1) * (q - k)),
        (0.0, q - 1),
    ]


def predicted_spectrum(spec: ArrayCodeSpec) -> np.ndarray:
    """The closed-form singular values as a flat descending array."""
    clusters = predicted_spectrum_clusters(spec)
    return np.concatenate([np.full(count, value) for value, count in clusters])


@dataclass(frozen=True)
class ArrayCodeGraph:
    """The square case B(q, q) read as a q^2-vertex adjacency.

    Only q = 2 gives a symmetric matrix. For q >= 3 the block at (i, j) is
    P^(ij) while symmetry would need its transpose P^(-ij), so the matrix
    is the adjacency of a q-in, q-out directed graph. It is still normal:
    both B B^T and B^T B have q*I on the diagonal blocks and all-ones
    blocks elsewhere. Normality means the eigenvalue moduli coincide with
    the singular values, giving modulus q once (the all-ones vector is an
    exact eigenvector), sqrt(q) with multiplicity q(q-1), and q-1 zeros.
    The diagonal carries exactly q ones, from the identity block at block
    position (1, 1).
    """

    q: int
    matrix: np.ndarray

    def __post_init__(self) -> None:
        n = self.q * self.q
        if self.matrix.shape != (n, n):
            raise ValueError(f"expected a {n} x {n} matrix for q = {self.q}")
        rows = self.matrix.sum(axis=1)
        cols = self.matrix.sum(axis=0)
        if not ((rows == self.q).all() and (cols == self.q).all()):
            raise AssertionError(f"B({self.q},{self.q}) is not {self.q}-regular; construction bug")

    @property
    def n_vertices(self) -> int:
        return self.q * self.q

    @property
    def degree(self) -> int:
        return self.q

    @property
    def loop_count(self) -> int:
        return int(np.trace(self.matrix.astype(np.int64)))

    def is_symmetric(self) -> bool:
        return bool((self.matrix == self.matrix.T).all())

    def check_normal(self) -> None:
        """Verify B B^T == B^T B exactly (float entries stay integral)."""
        F = self.matrix.astype(np.float64)
        if not (F @ F.T == F.T @ F).all():
            raise AssertionError(f"B({self.q},{self.q}) is not normal; construction bug")

    def as_simple_graph(self) -> SimpleGraph:
        """Undirected view, only available in the symmetric case q = 2."""
        if not self.is_symmetric():
            raise ValueError(f"B({self.q},{self.q}) is asymmetric; no undirected reading")
        return SimpleGraph(self.matrix, allow_loops=True)

    def as_bigraph(self) -> BinaryBigraph:
        """The same matrix as a biregular bigraph, for singular-value reports."""
        return BinaryBigraph(self.matrix)


def build_array_code_graph(q: int) -> ArrayCodeGraph:
    """Assemble B(q, q) and wrap it as a square adjacency."""
    B = build_array_code(ArrayCodeSpec(q, q)).matrix
    return ArrayCodeGraph(q, B)

"""Spectra, singular values, and all Ramanujan-bound bookkeeping."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._eigen import symmetric_eigenvalues_dense
from .graphs import BinaryBigraph, GraphError, SimpleGraph, check_biregular

#: Largest size handled by the in-repo solver before handing off to LAPACK.
#: The O(n^3) reduction is designed around n <= 5000; only the very large
#: square array-code instances exceed it.
DENSE_SOLVER_CUTOFF = 5000

#: Gram eigenvalues in (-GRAM_CLAMP, 0) are rounding artifacts, clamped to 0.
GRAM_CLAMP = 1e-9

CLUSTER_REL_TOL = 1e-6
CLUSTER_ABS_FLOOR = 1e-9


def symmetric_eigenvalues(A: np.ndarray, method: str = "auto") -> np.ndarray:
    """Eigenvalues of a symmetric matrix, ascending.

    method: "ql" for the in-repo tridiagonal solver, "lapack" for
    numpy.linalg.eigvalsh, "auto" to pick by size.
    """
    if method == "auto":
        method = "ql" if A.shape[0] <= DENSE_SOLVER_CUTOFF else "lapack"
    if method == "ql":
        return symmetric_eigenvalues_dense(A)
    if method == "lapack":
        return np.linalg.eigvalsh(A)
    raise ValueError(f"unknown eigensolver method {method!r}")


def eigenvalues(graph: SimpleGraph, method: str = "auto") -> np.ndarray:
    """Adjacency eigenvalues sorted descending."""
    w = symmetric_eigenvalues(graph.adjacency.astype(np.float64), method)
    return w[::-1].copy()


def singular_values(mat, method: str = "auto") -> np.ndarray:
    """All min(n_r, n_c) singular values, descending.

    Uses a symmetric eigen-decomposition of the smaller Gram product.
    Squaring the condition number is harmless here: entries are small
    integers and the spectra are well separated.
    """
    M = mat.matrix if isinstance(mat, BinaryBigraph) else np.asarray(mat)
    M = M.astype(np.float64)
    if M.shape[0] <= M.shape[1]:
        G = M @ M.T
    else:
        G = M.T @ M
    w = symmetric_eigenvalues(G, method)
    if w.size and w[0] < -GRAM_CLAMP:
        raise ArithmeticError(
            f"Gram eigenvalue {w[0]:.3e} is below -{GRAM_CLAMP:g}; not a rounding artifact"
        )
    # rounding fuzz around zero would square-root into 1e-8 territory,
    # so exact zeros are restored inside the clamp window
    w = np.where(np.abs(w) < GRAM_CLAMP, 0.0, w)
    return np.sqrt(w)[::-1].copy()


def mu_bound(d_r: int, d_c: int) -> float:
    """The biregular Ramanujan threshold sqrt(d_r - 1) + sqrt(d_c - 1)."""
    return math.sqrt(d_r - 1) + math.sqrt(d_c - 1)


def spectral_norm(mat, method: str = "auto") -> float:
    """Largest singular value of an arbitrary real matrix.

    Same smaller-Gram route as singular_values, but without the 0/1
    restriction, so it serves difference matrices too.
    """
    M = np.asarray(mat, dtype=np.float64)
    if M.size == 0:
        return 0.0
    G = M @ M.T if M.shape[0] <= M.shape[1] else M.T @ M
    w = symmetric_eigenvalues(G, method)
    return math.sqrt(max(float(w[-1]), 0.0))


def _cluster_tol(a: float, b: float, rel_tol: float, abs_floor: float) -> float:
    return max(rel_tol * max(abs(a), abs(b)), abs_floor)


def cluster_multiplicities(
    values,
    rel_tol: float = CLUSTER_REL_TOL,
    abs_floor: float = CLUSTER_ABS_FLOOR,
) -> list[tuple[float, int]]:
    """Group a descending sequence into (representative, count) clusters.

    Consecutive values join a cluster when they differ by no more than
    max(rel_tol * scale, abs_floor); representatives are cluster means.
    """
    vals = np.asarray(values, dtype=np.float64)
    out: list[tuple[float, int]] = []
    start = 0
    for k in range(1, vals.size + 1):
        if k == vals.size or abs(vals[k] - vals[k - 1]) > _cluster_tol(
            vals[k], vals[k - 1], rel_tol, abs_floor
        ):
            chunk = vals[start:k]
            out.append((float(chunk.mean()), int(chunk.size)))
            start = k
    return out


def match_spectrum(values, expected_clusters, value_tol: float = 1e-8) -> tuple[bool, str]:
    """Compare a computed descending spectrum against (value, count) clusters.

    Returns (ok, message); the message names the first mismatch.
    """
    vals = np.asarray(values, dtype=np.float64)
    total = sum(count for _, count in expected_clusters)
    if vals.size != total:
        return False, f"expected {total} values, got {vals.size}"
    pos = 0
    for value, count in expected_clusters:
        chunk = vals[pos : pos + count]
        worst = float(np.abs(chunk - value).max())
        if worst > value_tol:
            return False, (
                f"cluster at {value:.10g} (count {count}): worst deviation {worst:.3e}"
            )
        pos += count
    return True, "spectrum matches"


@dataclass
class SpectralReport:
    """Everything the Ramanujan verdict rests on, for one graph or bigraph."""

    kind: str                      # "graph" or "bigraph"
    shape: tuple[int, int]
    degrees: tuple[int, int]       # (d, d) for graphs, (d_r, d_c) for bigraphs
    spectrum: np.ndarray           # eigenvalues or singular values, descending
    top: float                     # lambda_1 or sigma_1
    second: float                  # |lambda_2| or sigma_2
    bound: float
    is_ramanujan: bool
    second_multiplicity: int
    gap: float                     # bound - second

    def to_dict(self) -> dict:
        clusters = cluster_multiplicities(np.sort(np.abs(self.spectrum))[::-1]) \
            if self.kind == "graph" else cluster_multiplicities(self.spectrum)
        return {
            "kind": self.kind,
            "shape": list(self.shape),
            "degrees": list(self.degrees),
            "size": int(self.spectrum.size),
            "top": self.top,
            "second": self.second,
            "second_multiplicity": self.second_multiplicity,
            "bound": self.bound,
            "gap": self.gap,
            "is_ramanujan": self.is_ramanujan,
            "spectrum_clusters": [[v, m] for v, m in clusters],
        }


def _second_and_multiplicity(magnitudes: np.ndarray) -> tuple[float, int]:
    """Second-largest magnitude and how many of the rest sit at it."""
    second = float(magnitudes[1])
    rest = magnitudes[1:]
    tol = max(CLUSTER_REL_TOL * max(second, 1e-30), CLUSTER_ABS_FLOOR)
    mult = int(np.count_nonzero(np.abs(rest - second) <= tol))
    return second, mult


def ramanujan_report(obj, method: str = "auto") -> SpectralReport:
    """Spectral verdict for a SimpleGraph or a BinaryBigraph.

    Graphs are judged by |lambda_2| <= 2 sqrt(d - 1); bigraphs by
    sigma_2 <= sqrt(d_r - 1) + sqrt(d_c - 1), with degrees read from the
    bigraph's analysis orientation.
    """
    if isinstance(obj, SimpleGraph):
        d = obj.regular_degree()
        w = eigenvalues(obj, method)
        if w.size < 2:
            raise GraphError("need at least 2 vertices for a spectral verdict")
        magnitudes = np.sort(np.abs(w))[::-1]
        second, mult = _second_and_multiplicity(magnitudes)
        bound = 2.0 * math.sqrt(d - 1) if d >= 1 else 0.0
        top = float(w[0])
        shape = (obj.n, obj.n)
        degrees = (d, d)
        spectrum = w
    elif isinstance(obj, BinaryBigraph):
        view = obj.analysis_view()
        d_r, d_c = check_biregular(view)
        sv = singular_values(view, method)
        if sv.size < 2:
            raise GraphError("need at least 2 singular values for a spectral verdict")
        second, mult = _second_and_multiplicity(sv)
        bound = mu_bound(d_r, d_c)
        top = float(sv[0])
        shape = (view.n_r, view.n_c)
        degrees = (d_r, d_c)
        spectrum = sv
    else:
        raise TypeError(f"cannot report on {type(obj).__name__}")
    slack = 1e-9 * max(1.0, bound)
    kind = "graph" if isinstance(obj, SimpleGraph) else "bigraph"
    return SpectralReport(
        kind=kind,
        shape=shape,
        degrees=degrees,
        spectrum=spectrum,
        top=top,
        second=second,
        bound=bound,
        is_ramanujan=bool(second <= bound + slack),
        second_multiplicity=mult,
        gap=bound - second,
    )


def centered_spectral_norm(bigraph: BinaryBigraph, method: str = "auto") -> float:
    """Spectral norm of E - alpha * (all ones) with alpha = d_r / n_c.

    For biregular E this equals sigma_2(E): centering removes exactly the
    top singular direction.
    """
    d_r, d_c = check_biregular(bigraph)
    alpha = d_r / bigraph.n_c
    assert abs(alpha - d_c / bigraph.n_r) < 1e-12
    centered = bigraph.matrix.astype(np.float64) - alpha
    sv = singular_values(centered, method)
    return float(sv[0]) if sv.size else 0.0


def theta_c(bigraph: BinaryBigraph) -> int:
    """Largest inner product between two distinct columns.

    Read off the Gram matrix in exact integer arithmetic.
    """
    if bigraph.n_c < 2:
        raise GraphError("need at least two columns")
    M = bigraph.matrix.astype(np.int64)
    G = M.T @ M
    np.fill_diagonal(G, -1)
    return int(G.max())

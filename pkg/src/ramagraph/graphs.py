"""Graph and bigraph containers, structure checks, and generic builders.

Dense 0/1 numpy storage throughout: target sizes stay in the low
thousands of vertices, where dense is simplest for the eigensolver and
byte-reproducible. Containers are treated as immutable once built.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Callable, Hashable, Sequence

import numpy as np


class GraphError(ValueError):
    """Structural violation in a graph or bigraph construction."""


class MultiEdgeError(GraphError):
    """Two generators produced the same edge (or a generator fixed a vertex)."""

    def __init__(self, message: str, vertex=None, generators=None):
        super().__init__(message)
        self.vertex = vertex
        self.generators = generators


class PairingError(GraphError):
    """A vertex pairing failed to fold a bigraph into a simple graph."""


class PairingLoopError(PairingError):
    """The fold would create self-loops; carries the offending row indices."""

    def __init__(self, message: str, loops: list[int]):
        super().__init__(message)
        self.loops = loops


class OddCycleError(GraphError):
    """Raised by bipartition; carries an odd cycle as the witness."""

    def __init__(self, message: str, cycle: list[int]):
        super().__init__(message)
        self.cycle = cycle


def _as_binary(matrix) -> np.ndarray:
    m = np.asarray(matrix)
    if m.ndim != 2:
        raise GraphError(f"expected a 2-d array, got shape {m.shape}")
    if m.size and not np.isin(m, (0, 1)).all():
        raise GraphError("matrix entries must all be 0 or 1")
    return m.astype(np.uint8)


@dataclass
class BinaryBigraph:
    """A 0/1 biadjacency matrix; rows and columns are the two vertex sides.

    analyze_transpose marks bigraphs whose spectral analysis convention
    puts the larger degree on the row side (the builder sets it when the
    natural orientation has the degrees the other way around).
    """

    matrix: np.ndarray
    analyze_transpose: bool = False

    def __post_init__(self) -> None:
        self.matrix = _as_binary(self.matrix)

    @property
    def n_r(self) -> int:
        return self.matrix.shape[0]

    @property
    def n_c(self) -> int:
        return self.matrix.shape[1]

    def row_degrees(self) -> np.ndarray:
        return self.matrix.sum(axis=1, dtype=np.int64)

    def col_degrees(self) -> np.ndarray:
        return self.matrix.sum(axis=0, dtype=np.int64)

    def edge_set(self) -> set[tuple[int, int]]:
        rows, cols = np.nonzero(self.matrix)
        return set(zip(rows.tolist(), cols.tolist()))

    def transpose(self) -> "BinaryBigraph":
        return BinaryBigraph(self.matrix.T.copy())

    def analysis_view(self) -> "BinaryBigraph":
        """The orientation the spectral conventions expect."""
        return self.transpose() if self.analyze_transpose else self


def check_biregular(bigraph: BinaryBigraph) -> tuple[int, int]:
    """Confirm every row has one degree and every column another.

    Returns:
        (d_r, d_c): the common row and column degrees.

    Raises:
        GraphError: naming the first offending row or column.
    """
    rows = bigraph.row_degrees()
    cols = bigraph.col_degrees()
    d_r = int(rows[0]) if rows.size else 0
    bad = np.nonzero(rows != d_r)[0]
    if bad.size:
        raise GraphError(f"row {int(bad[0])} has degree {int(rows[bad[0]])}, expected {d_r}")
    d_c = int(cols[0]) if cols.size else 0
    bad = np.nonzero(cols != d_c)[0]
    if bad.size:
        raise GraphError(f"column {int(bad[0])} has degree {int(cols[bad[0]])}, expected {d_c}")
    if d_r * bigraph.n_r != d_c * bigraph.n_c:
        raise AssertionError("degree/size bookkeeping violated; impossible for a 0/1 matrix")
    return d_r, d_c


@dataclass
class SimpleGraph:
    """Symmetric 0/1 adjacency.

    Loops are rejected unless a construction explicitly owns them
    (allow_loops=True); a loop contributes one to its row sum.
    """

    adjacency: np.ndarray
    allow_loops: bool = False

    def __post_init__(self) -> None:
        a = _as_binary(self.adjacency)
        if a.shape[0] != a.shape[1]:
            raise GraphError(f"adjacency must be square, got {a.shape}")
        if not (a == a.T).all():
            raise GraphError("adjacency must be symmetric")
        if not self.allow_loops and np.any(np.diag(a)):
            loops = np.nonzero(np.diag(a))[0]
            raise GraphError(f"unexpected self-loop at vertex {int(loops[0])}")
        self.adjacency = a

    @property
    def n(self) -> int:
        return self.adjacency.shape[0]

    def degrees(self) -> np.ndarray:
        return self.adjacency.sum(axis=1, dtype=np.int64)

    def regular_degree(self) -> int:
        degs = self.degrees()
        d = int(degs[0]) if degs.size else 0
        bad = np.nonzero(degs != d)[0]
        if bad.size:
            raise GraphError(f"vertex {int(bad[0])} has degree {int(degs[bad[0]])}, expected {d}")
        return d


def connected_components(graph: SimpleGraph) -> list[list[int]]:
    """Traversal-based partition, components ordered by smallest vertex."""
    n = graph.n
    seen = np.zeros(n, dtype=bool)
    components = []
    for start in range(n):
        if seen[start]:
            continue
        queue = deque([start])
        seen[start] = True
        comp = []
        while queue:
            v = queue.popleft()
            comp.append(v)
            for w in np.nonzero(graph.adjacency[v])[0]:
                if not seen[w]:
                    seen[w] = True
                    queue.append(int(w))
        components.append(sorted(comp))
    return components


def bipartition(graph: SimpleGraph) -> tuple[list[int], list[int]]:
    """Two-color the graph, or raise OddCycleError with an explicit witness.

    The first class is the one containing the smallest vertex of each
    component; classes come back sorted.
    """
    n = graph.n
    color = np.full(n, -1, dtype=np.int8)
    parent = np.full(n, -1, dtype=np.int64)
    for start in range(n):
        if color[start] != -1:
            continue
        if graph.adjacency[start, start]:
            raise OddCycleError(f"self-loop at vertex {start}", [start])
        color[start] = 0
        queue = deque([start])
        while queue:
            v = queue.popleft()
            for w in np.nonzero(graph.adjacency[v])[0]:
                w = int(w)
                if w == v:
                    raise OddCycleError(f"self-loop at vertex {v}", [v])
                if color[w] == -1:
                    color[w] = 1 - color[v]
                    parent[w] = v
                    queue.append(w)
                elif color[w] == color[v]:
                    raise OddCycleError(
                        f"edge ({v}, {w}) joins two vertices of the same color",
                        _odd_cycle_witness(parent, v, w),
                    )
    side0 = [int(v) for v in np.nonzero(color == 0)[0]]
    side1 = [int(v) for v in np.nonzero(color == 1)[0]]
    return side0, side1


def _odd_cycle_witness(parent: np.ndarray, v: int, w: int) -> list[int]:
    """Join the tree paths of v and w at their lowest common ancestor."""
    path_v, path_w = [v], [w]
    seen = {v: 0}
    x = v
    while parent[x] != -1:
        x = int(parent[x])
        seen[x] = len(path_v)
        path_v.append(x)
    x = w
    while x not in seen:
        x = int(parent[x])
        path_w.append(x)
    lca = x
    cycle = path_v[: seen[lca] + 1] + path_w[: path_w.index(lca)][::-1]
    return cycle


@dataclass
class VertexPairing:
    """Bijection gluing column vertex j onto row vertex column_to_row[j]."""

    column_to_row: np.ndarray

    def __post_init__(self) -> None:
        perm = np.asarray(self.column_to_row, dtype=np.int64)
        n = perm.shape[0]
        if perm.ndim != 1 or not np.array_equal(np.sort(perm), np.arange(n)):
            raise PairingError("column_to_row must be a permutation of 0..n-1")
        self.column_to_row = perm

    @classmethod
    def identity(cls, n: int) -> "VertexPairing":
        return cls(np.arange(n, dtype=np.int64))

    def permutation_matrix(self) -> np.ndarray:
        n = self.column_to_row.shape[0]
        P = np.zeros((n, n), dtype=np.uint8)
        P[np.arange(n), self.column_to_row] = 1
        return P


def apply_pairing(bigraph: BinaryBigraph, pairing: VertexPairing) -> SimpleGraph:
    """Fold a square bigraph into a simple graph by gluing paired vertices.

    The folded adjacency is B @ P for the pairing's permutation matrix P,
    i.e. column j's edges are re-addressed to row column_to_row[j]. The
    |eigenvalues| of the result equal the singular values of B.

    Raises:
        PairingError: mismatched sides, bad permutation, or asymmetric fold.
        PairingLoopError: some vertex would become adjacent to itself.
    """
    B = bigraph.matrix
    if B.shape[0] != B.shape[1]:
        raise PairingError(f"pairing needs equal sides, got {B.shape}")
    perm = pairing.column_to_row
    if perm.shape[0] != B.shape[0]:
        raise PairingError(f"pairing size {perm.shape[0]} does not match {B.shape[0]} vertices")
    inv = np.argsort(perm)  # inv[i] = the column glued onto row i
    folded = B[:, inv]
    loops = np.nonzero(np.diag(folded))[0]
    if loops.size:
        raise PairingLoopError(
            f"{loops.size} vertices would carry self-loops after folding",
            [int(i) for i in loops],
        )
    if not (folded == folded.T).all():
        raise PairingError("folded adjacency is not symmetric; pairing invalid for this bigraph")
    return SimpleGraph(folded.copy())


def cayley_graph(
    elements: Sequence[Hashable],
    compose: Callable,
    generators: Sequence[Hashable],
    inverse: Callable,
) -> SimpleGraph:
    """Right-multiplication Cayley graph on an explicit element list.

    Args:
        elements: every group element exactly once, in canonical form; list
            order fixes the vertex numbering.
        compose: group law (x, s) -> x*s returning canonical elements.
        generators: the connection set S.
        inverse: s -> s^(-1), used to confirm S is symmetric.

    Returns:
        The |S|-regular graph with edges (x, x*s).

    Raises:
        GraphError: duplicate elements/generators, asymmetric S, or a
            product that leaves the element list.
        MultiEdgeError: a generator fixes some vertex, or two generators
            send one vertex to the same neighbour (multigraph collision).
    """
    index = {x: i for i, x in enumerate(elements)}
    if len(index) != len(elements):
        raise GraphError("element list contains duplicates")
    gens = list(generators)
    if len(set(gens)) != len(gens):
        raise GraphError("generator list contains duplicates")
    if {inverse(s) for s in gens} != set(gens):
        raise GraphError("generator set is not closed under inverses")
    n = len(elements)
    adj = np.zeros((n, n), dtype=np.uint8)
    for i, x in enumerate(elements):
        for s in gens:
            y = compose(x, s)
            j = index.get(y)
            if j is None:
                raise GraphError(f"product {y!r} is not in the element list")
            if j == i:
                raise MultiEdgeError(
                    f"generator {s!r} fixes element {x!r} (self-loop)",
                    vertex=i, generators=[s],
                )
            if adj[i, j]:
                raise MultiEdgeError(
                    f"two generators send {x!r} to the same neighbour {y!r}",
                    vertex=i, generators=[s],
                )
            adj[i, j] = 1
    if not (adj == adj.T).all():
        raise GraphError("symmetric generator set produced an asymmetric adjacency")
    return SimpleGraph(adj)

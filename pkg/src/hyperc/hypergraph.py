"""Uniform hypergraph data model, validation, connectivity and I/O.

Each hyperedge is stored once as a sorted row of node ids; the symmetric
adjacency tensor is never materialized (every row stands for m! entries).
"""

from __future__ import annotations

import io
from dataclasses import dataclass, field
from typing import Iterable, Sequence, TextIO

import numpy as np
from scipy import sparse
from scipy.sparse import csgraph


class HypergraphError(ValueError):
    """Raised for structurally invalid hypergraphs or inputs."""


class NotConnectedError(HypergraphError):
    """Raised when an operation requires a connected hypergraph."""


class ConvergenceError(RuntimeError):
    """Raised when an iterative solver fails to converge.

    The last iterate, if any, is kept on ``last`` for diagnostics.
    """

    def __init__(self, message: str, last: np.ndarray | None = None, iterations: int = 0):
        super().__init__(message)
        self.last = last
        self.iterations = iterations


def _frozen(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class UniformHypergraph:
    """An m-uniform hypergraph on nodes ``0..n-1``.

    ``edges`` is an ``(|E|, m)`` integer array whose rows are sorted
    ascending. ``weights`` is ``None`` for an unweighted hypergraph.
    Construction canonicalizes row order within each edge but does not
    reject invalid input; call :func:`validate` or :meth:`check`.
    """

    m: int
    n: int
    edges: np.ndarray
    weights: np.ndarray | None = None

    def __post_init__(self):
        edges = np.asarray(self.edges, dtype=np.int64)
        if edges.size == 0:
            edges = edges.reshape(0, self.m)
        if edges.ndim != 2 or edges.shape[1] != self.m:
            raise HypergraphError(f"edges must have shape (|E|, {self.m}), got {edges.shape}")
        object.__setattr__(self, "edges", _frozen(np.sort(edges, axis=1)))
        if self.weights is not None:
            w = np.asarray(self.weights, dtype=float).ravel()
            object.__setattr__(self, "weights", _frozen(w))

    @classmethod
    def from_edges(
        cls,
        m: int,
        edges: Iterable[Sequence[int]],
        n: int | None = None,
        weights: Sequence[float] | None = None,
    ) -> "UniformHypergraph":
        rows = [list(e) for e in edges]
        if any(len(r) != m for r in rows):
            raise HypergraphError(f"every edge must have exactly {m} entries")
        arr = np.array(rows, dtype=np.int64).reshape(len(rows), m) if rows else np.zeros((0, m), np.int64)
        if n is None:
            n = int(arr.max()) + 1 if arr.size else 0
        return cls(m=m, n=n, edges=arr, weights=weights)

    @property
    def num_edges(self) -> int:
        return self.edges.shape[0]

    @property
    def edge_weights(self) -> np.ndarray:
        """Per-edge weights, all ones when unweighted."""
        if self.weights is None:
            return np.ones(self.num_edges)
        return self.weights

    @property
    def is_weighted(self) -> bool:
        return self.weights is not None

    def check(self) -> None:
        problems = validate(self)
        if problems:
            raise HypergraphError("invalid hypergraph: " + "; ".join(problems[:5]))

    def degrees(self) -> np.ndarray:
        return np.bincount(self.edges.ravel(), minlength=self.n)

    def __repr__(self):
        w = ", weighted" if self.is_weighted else ""
        return f"UniformHypergraph(m={self.m}, n={self.n}, |E|={self.num_edges}{w})"


@dataclass
class NodeLabelMap:
    """Bidirectional mapping between label strings and node ids."""

    labels: list[str] = field(default_factory=list)

    def __post_init__(self):
        self._index = {}
        for i, lab in enumerate(self.labels):
            if lab in self._index:
                raise HypergraphError(f"duplicate label {lab!r}")
            self._index[lab] = i

    @classmethod
    def identity(cls, n: int) -> "NodeLabelMap":
        return cls([str(i) for i in range(n)])

    def __len__(self):
        return len(self.labels)

    def __getitem__(self, node: int) -> str:
        return self.labels[node]

    def __contains__(self, label: str) -> bool:
        return label in self._index

    def id_of(self, label: str) -> int:
        return self._index[label]

    def add(self, label: str) -> int:
        """Return the id of ``label``, assigning the next free id if new."""
        i = self._index.get(label)
        if i is None:
            i = len(self.labels)
            self.labels.append(label)
            self._index[label] = i
        return i

    def subset(self, old_ids: Sequence[int]) -> "NodeLabelMap":
        return NodeLabelMap([self.labels[i] for i in old_ids])


def validate(h: UniformHypergraph) -> list[str]:
    """Return every invariant violation of ``h``; empty when valid."""
    out = []
    if h.m < 2:
        out.append(f"uniformity m={h.m} < 2")
    E = h.edges
    if E.size:
        bad = np.flatnonzero((E < 0).any(axis=1) | (E >= h.n).any(axis=1))
        for i in bad:
            out.append(f"edge {i}: out-of-range id")
        rep = np.flatnonzero((np.diff(E, axis=1) == 0).any(axis=1))
        for i in rep:
            out.append(f"edge {i}: repeated node within edge")
        seen = {}
        for i, row in enumerate(map(tuple, E)):
            if row in seen:
                out.append(f"edge {i}: duplicate edge (same set as edge {seen[row]})")
            else:
                seen[row] = i
    if h.weights is not None:
        if h.weights.shape[0] != h.num_edges:
            out.append(f"weights: {h.weights.shape[0]} weights for {h.num_edges} edges")
        else:
            for i in np.flatnonzero(~(h.weights > 0) | ~np.isfinite(h.weights)):
                out.append(f"edge {i}: nonpositive weight {h.weights[i]}")
    return out


def _components(h: UniformHypergraph) -> tuple[int, np.ndarray]:
    # traversal of the node-edge incidence graph; same components as the clique expansion
    n, ne = h.n, h.num_edges
    rows = np.repeat(np.arange(ne) + n, h.m)
    cols = h.edges.ravel()
    g = sparse.coo_matrix((np.ones(rows.size), (rows, cols)), shape=(n + ne, n + ne))
    k, lab = csgraph.connected_components(g, directed=False)
    node_lab = lab[:n]
    _, node_lab = np.unique(node_lab, return_inverse=True)
    return int(node_lab.max()) + 1 if n else 0, node_lab


def is_connected(h: UniformHypergraph) -> bool:
    """True iff the clique expansion of ``h`` is connected and has no isolated node."""
    if h.n == 0 or h.num_edges == 0:
        return False
    if (h.degrees() == 0).any():
        return False
    k, _ = _components(h)
    return k == 1


def largest_component(
    h: UniformHypergraph, labels: NodeLabelMap | None = None
) -> tuple[UniformHypergraph, NodeLabelMap, dict[int, int]]:
    """Restrict ``h`` to its largest clique-expansion component.

    Ties between equally large components go to the one holding the
    smallest node id. Node ids are re-densified in increasing order of
    their old ids.
    """
    if h.n == 0 or h.num_edges == 0:
        raise HypergraphError("empty hypergraph has no components")
    if labels is None:
        labels = NodeLabelMap.identity(h.n)
    k, comp = _components(h)
    sizes = np.bincount(comp, minlength=k)
    first = np.full(k, h.n)
    np.minimum.at(first, comp, np.arange(h.n))
    order = np.lexsort((first, -sizes))
    best = order[0]
    keep = np.flatnonzero(comp == best)
    old_to_new = {int(o): i for i, o in enumerate(keep)}
    remap = np.full(h.n, -1, dtype=np.int64)
    remap[keep] = np.arange(keep.size)
    emask = (remap[h.edges] >= 0).all(axis=1)
    new_edges = remap[h.edges[emask]]
    w = None if h.weights is None else h.weights[emask]
    sub = UniformHypergraph(m=h.m, n=int(keep.size), edges=new_edges, weights=w)
    return sub, labels.subset(keep), old_to_new


# --- canonical text format ------------------------------------------------


def read_edgelist(stream: TextIO | str) -> UniformHypergraph:
    """Parse the canonical hyperedge-list format.

    First non-comment line is ``m n``; every other line holds ``m`` node
    ids, optionally followed by ``#w: <weight>``. Lines starting with
    ``%`` are comments.
    """
    if isinstance(stream, str):
        stream = io.StringIO(stream)
    header = None
    rows, weights = [], []
    any_weight = False
    for lineno, raw in enumerate(stream, 1):
        line = raw.strip()
        if not line or line.startswith("%"):
            continue
        w = None
        if "#w:" in line:
            line, _, wtxt = line.partition("#w:")
            try:
                w = float(wtxt)
            except ValueError:
                raise HypergraphError(f"line {lineno}: bad weight {wtxt.strip()!r}") from None
            any_weight = True
        parts = line.split()
        try:
            ids = [int(p) for p in parts]
        except ValueError:
            raise HypergraphError(f"line {lineno}: non-integer token in {raw.strip()!r}") from None
        if header is None:
            if len(ids) != 2:
                raise HypergraphError(f"line {lineno}: header must be 'm n'")
            header = ids
            continue
        if len(ids) != header[0]:
            raise HypergraphError(f"line {lineno}: expected {header[0]} ids, got {len(ids)}")
        rows.append(ids)
        weights.append(w)
    if header is None:
        raise HypergraphError("missing 'm n' header")
    m, n = header
    W = None
    if any_weight:
        W = [1.0 if w is None else w for w in weights]
    h = UniformHypergraph.from_edges(m, rows, n=n, weights=W)
    return h


def write_edgelist(h: UniformHypergraph, stream: TextIO) -> None:
    stream.write(f"{h.m} {h.n}\n")
    for i, row in enumerate(h.edges):
        line = " ".join(str(int(v)) for v in row)
        if h.weights is not None:
            line += f" #w: {float(h.weights[i])!r}"
        stream.write(line + "\n")


def read_labels(stream: TextIO) -> NodeLabelMap:
    """Read an ``id<TAB>label`` file; ids must be dense from 0."""
    pairs = []
    for line in stream:
        line = line.rstrip("\n")
        if not line:
            continue
        i, _, lab = line.partition("\t")
        pairs.append((int(i), lab))
    pairs.sort()
    if [p[0] for p in pairs] != list(range(len(pairs))):
        raise HypergraphError("label ids must be dense 0..n-1")
    return NodeLabelMap([p[1] for p in pairs])


def write_labels(labels: NodeLabelMap, stream: TextIO) -> None:
    for i, lab in enumerate(labels.labels):
        stream.write(f"{i}\t{lab}\n")

"""Kernels for the implicit symmetric adjacency tensor of a uniform hypergraph.

All routines work directly from the edge list. Symmetry factors are
applied here, never stored: ``apply`` carries ``(m-1)!`` and
``contracted_matrix`` carries ``(m-2)!``, so that for an unweighted
hypergraph the results equal contractions of the full 0/1 tensor.
"""

from __future__ import annotations

from itertools import combinations
from math import factorial

import numpy as np
from scipy import sparse

from .hypergraph import HypergraphError, UniformHypergraph


def _check_vector(h: UniformHypergraph, x) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if x.shape != (h.n,):
        raise HypergraphError(f"vector has shape {x.shape}, expected ({h.n},)")
    return x


def leave_one_out_products(X: np.ndarray) -> np.ndarray:
    """Row-wise products of all entries except column ``j``, for every ``j``.

    Prefix and suffix products keep this O(m) per row with no division,
    so zero entries are handled exactly.
    """
    ne, m = X.shape
    pre = np.ones((ne, m + 1))
    suf = np.ones((ne, m + 1))
    np.cumprod(X, axis=1, out=pre[:, 1:])
    np.cumprod(X[:, ::-1], axis=1, out=suf[:, 1:])
    suf = suf[:, ::-1]
    return pre[:, :m] * suf[:, 1:]


def apply(h: UniformHypergraph, x) -> np.ndarray:
    """Tensor-times-same-vector ``T x^(m-1)``.

    Entry ``i`` is ``(m-1)! * sum_{e containing i} w_e * prod_{v in e, v != i} x_v``.
    """
    x = _check_vector(h, x)
    if h.num_edges == 0:
        return np.zeros(h.n)
    X = x[h.edges]
    loo = leave_one_out_products(X) * h.edge_weights[:, None]
    out = np.bincount(h.edges.ravel(), weights=loo.ravel(), minlength=h.n)
    return factorial(h.m - 1) * out


def _pair_entries(h: UniformHypergraph, x=None):
    """Upper-triangle (row, col, value) triples for every pair inside every edge.

    With ``x`` the value is the product of the remaining ``m-2`` entries
    times the edge weight; without ``x`` it is the edge weight alone.
    """
    E = h.edges
    w = h.edge_weights
    m = h.m
    rows, cols, vals = [], [], []
    X = None if x is None else x[E]
    for a, b in combinations(range(m), 2):
        rows.append(E[:, a])
        cols.append(E[:, b])
        if X is None:
            vals.append(w)
        else:
            rest = [k for k in range(m) if k != a and k != b]
            vals.append(w * np.prod(X[:, rest], axis=1))
    if not rows:
        return np.zeros(0, np.int64), np.zeros(0, np.int64), np.zeros(0)
    return np.concatenate(rows), np.concatenate(cols), np.concatenate(vals)


def _symmetric_csr(n: int, r, c, v) -> sparse.csr_matrix:
    A = sparse.coo_matrix((np.concatenate([v, v]), (np.concatenate([r, c]), np.concatenate([c, r]))), shape=(n, n))
    A = A.tocsr()
    A.sum_duplicates()
    A.eliminate_zeros()
    return A


def contracted_matrix(h: UniformHypergraph, x) -> sparse.csr_matrix:
    """The matrix ``T[x]`` with entries ``sum T_{i,j,k3..km} x_k3 ... x_km``.

    Returned as a symmetric CSR matrix holding both triangles. Satisfies
    ``contracted_matrix(h, x) @ x == apply(h, x)``.
    """
    if h.m < 3:
        raise HypergraphError("contracted_matrix needs m >= 3; for m = 2 the tensor is already a matrix")
    x = _check_vector(h, x)
    r, c, v = _pair_entries(h, x)
    return _symmetric_csr(h.n, r, c, factorial(h.m - 2) * v)


def contracted_dense(h: UniformHypergraph, x) -> np.ndarray:
    """Dense ``T[x]``; used by solvers on small hypergraphs."""
    if h.m < 3:
        raise HypergraphError("contracted_matrix needs m >= 3")
    x = _check_vector(h, x)
    r, c, v = _pair_entries(h, x)
    A = np.zeros((h.n, h.n))
    v = factorial(h.m - 2) * v
    np.add.at(A, (r, c), v)
    np.add.at(A, (c, r), v)
    return A


def motif_matrix(h: UniformHypergraph) -> sparse.csr_matrix:
    """Clique-motif adjacency ``W``: ``W[u, v]`` is the weight of edges holding both ``u`` and ``v``."""
    r, c, v = _pair_entries(h)
    return _symmetric_csr(h.n, r, c, v)

"""Clique-motif eigenvector centrality (CEC).

CEC is the Perron vector of the motif matrix ``W``. Hyperedges of size
``m >= 3`` put triangles in the graph of ``W``, so it is not bipartite
and plain power iteration converges to the Perron pair.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .hypergraph import HypergraphError, NotConnectedError, UniformHypergraph, is_connected
from .tensor import motif_matrix


@dataclass
class CentralityResult:
    """A 1-norm normalized centrality vector with solver metadata."""

    scores: np.ndarray
    eigenvalue: float
    residual: float
    iterations: int
    converged: bool
    method: str = ""

    def to_dict(self) -> dict:
        return {
            "method": self.method,
            "eigenvalue": float(self.eigenvalue),
            "residual": float(self.residual),
            "iterations": int(self.iterations),
            "converged": bool(self.converged),
        }


def normalize_one_norm(x) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    s = np.abs(x).sum()
    if not s > 0:
        raise ValueError("cannot normalize a zero vector")
    return x / s


def _require(h: UniformHypergraph) -> None:
    if h.m < 3:
        raise HypergraphError(f"centralities need m >= 3, got m={h.m}")
    if not is_connected(h):
        raise NotConnectedError("hypergraph is not connected; restrict to its largest component first")


def cec(
    h: UniformHypergraph,
    tol: float = 1e-10,
    max_iters: int = 100_000,
    x0=None,
) -> CentralityResult:
    """Clique-motif eigenvector centrality by power iteration on ``W``.

    Stops when successive 1-norm normalized iterates differ by at most
    ``tol`` in the 1-norm. The eigenvalue is ``||W c||_1`` and the
    residual is ``||W c - lambda c||_1``, which equals ``lambda`` times
    that last difference.
    """
    _require(h)
    W = motif_matrix(h)
    x = np.full(h.n, 1.0 / h.n) if x0 is None else normalize_one_norm(x0)
    lam, resid = 0.0, np.inf
    for it in range(1, max_iters + 1):
        y = W @ x
        lam = y.sum()
        resid = np.abs(y - lam * x).sum()
        if resid <= tol * lam:
            return CentralityResult(x, float(lam), float(resid), it, True, "cec")
        x = y / lam
    return CentralityResult(x, float(lam), float(resid), max_iters, False, "cec")


def path_counts(h: UniformHypergraph, ell: int) -> np.ndarray:
    """Number of length-``ell`` walks in ``W`` ending at each node.

    ``ell = 0`` gives the all-ones vector. Values are exact integers for
    unweighted hypergraphs while they stay below ``2**53``.
    """
    if ell < 0:
        raise ValueError("ell must be nonnegative")
    W = motif_matrix(h)
    p = np.ones(h.n)
    for _ in range(ell):
        p = W @ p
    return p

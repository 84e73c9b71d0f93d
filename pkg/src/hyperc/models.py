"""Hypergraphs with known centralities, plus random test instances."""

from __future__ import annotations

import math

import numpy as np

from .hypergraph import HypergraphError, UniformHypergraph
from .tensor import apply
from .zec import ZEigenpair


def sunflower(m: int, r: int) -> UniformHypergraph:
    """Sunflower with singleton core: node 0 plus ``r`` petals of ``m-1`` nodes.

    Petal ``p`` owns nodes ``1 + p(m-1) .. (p+1)(m-1)``.
    """
    if m < 3 or r < 1:
        raise HypergraphError(f"sunflower needs m >= 3 and r >= 1, got m={m}, r={r}")
    petals = np.arange(1, 1 + r * (m - 1)).reshape(r, m - 1)
    edges = np.hstack([np.zeros((r, 1), np.int64), petals])
    return UniformHypergraph(m=m, n=1 + r * (m - 1), edges=edges)


def sunflower_ratio(method: str, m: int, r: int) -> float:
    """Closed-form ratio of the core's centrality to any petal node's."""
    method = method.lower()
    if m < 3 or r < 1:
        raise HypergraphError(f"need m >= 3 and r >= 1, got m={m}, r={r}")
    if method == "cec":
        return 2 * r * (m - 1) / (math.sqrt(m * m + 4 * (m - 1) * (r - 1)) + m - 2)
    if method == "zec":
        if m == 3:
            raise HypergraphError(
                "3-uniform sunflowers have a whole family of ZEC vectors; use sunflower_zec_family"
            )
        return math.sqrt(r)
    if method == "hec":
        return r ** (1.0 / m)
    raise ValueError(f"unknown method {method!r}")


def sunflower_cec_eigenvalue(m: int, r: int) -> float:
    """Largest root of ``lambda^2 = r(m-1) + lambda(m-2)``."""
    return 0.5 * (math.sqrt(m * m + 4 * (m - 1) * (r - 1)) + m - 2)


def sunflower_zec_family(petal_values) -> np.ndarray:
    """A 3-uniform sunflower ZEC vector from arbitrary positive petal constants.

    Every node of petal ``p`` gets ``petal_values[p]`` and the core gets
    ``sqrt(sum(petal_values**2))``; the result is 1-norm normalized.
    Matches the node numbering of ``sunflower(3, len(petal_values))``.
    """
    cp = np.asarray(petal_values, dtype=float)
    if cp.ndim != 1 or cp.size < 1 or (cp <= 0).any():
        raise ValueError("petal values must be a nonempty positive sequence")
    x = np.concatenate([[np.sqrt(np.sum(cp**2))], np.repeat(cp, 2)])
    return x / x.sum()


def example_unstable_fixture() -> tuple[UniformHypergraph, ZEigenpair]:
    """Seven-node 3-uniform hypergraph with a positive but unstable Z-eigenpair.

    Edges (1-based) {1,2,3}, {1,2,4}, {3,5,6}, {5,6,7}; the pair has
    eigenvalue sqrt(2) and entries sqrt(6)/6 on nodes 1, 2, 5, 6,
    sqrt(2)/6 on nodes 4, 7 and sqrt(2)/3 on node 3.
    """
    edges = np.array([[1, 2, 3], [1, 2, 4], [3, 5, 6], [5, 6, 7]]) - 1
    h = UniformHypergraph(m=3, n=7, edges=edges)
    a, b, c = math.sqrt(6) / 6, math.sqrt(2) / 6, math.sqrt(2) / 3
    x = np.array([a, a, c, b, a, a, b])
    lam = math.sqrt(2)
    res = float(np.linalg.norm(apply(h, x) - lam * x))
    if res > 1e-12:
        raise AssertionError(f"fixture is not an eigenpair (residual {res:.3e})")
    return h, ZEigenpair(x, lam, res, 0, "unstable")


def random_connected_hypergraph(
    rng: np.random.Generator, n: int, m: int, extra_edges: int = 0
) -> UniformHypergraph:
    """A random connected m-uniform hypergraph on exactly ``n`` nodes.

    A spanning sequence of edges is grown from a random node order, each
    new edge touching at least one covered node; ``extra_edges`` further
    random edges are then attempted (duplicates are skipped).
    """
    if n < m:
        raise HypergraphError("need n >= m")
    order = rng.permutation(n)
    edges = {tuple(sorted(order[:m].tolist()))}
    covered = m
    while covered < n:
        k = int(rng.integers(1, min(m - 1, n - covered) + 1))
        new = order[covered : covered + k].tolist()
        old = rng.choice(order[:covered], size=m - k, replace=False).tolist()
        edges.add(tuple(sorted(new + old)))
        covered += k
    for _ in range(extra_edges):
        edges.add(tuple(sorted(rng.choice(n, size=m, replace=False).tolist())))
    return UniformHypergraph.from_edges(m, sorted(edges), n=n)

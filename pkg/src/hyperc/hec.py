"""H-eigenvector centrality (HEC) by a multiplicative power method.

Each step maps ``x`` to ``(T x^(m-1))^[1/(m-1)]`` and renormalizes.
The ratios ``y_i / x_i^(m-1)`` bracket the H-eigenvalue; iteration
stops once the bracket's relative width drops to ``tol``.
"""

from __future__ import annotations

import numpy as np

from .cec import CentralityResult, _require, normalize_one_norm
from .tensor import apply


def hec(
    h,
    tol: float = 1e-10,
    max_iters: int = 10_000,
    x0=None,
) -> CentralityResult:
    """Unique positive H-eigenvector centrality of a connected hypergraph.

    The reported eigenvalue is the midpoint of the final bracket and
    includes the ``(m-1)!`` symmetry factor of :func:`~hyperc.tensor.apply`;
    a single unweighted edge has eigenvalue ``(m-1)!``. The bracket is
    scale free, so ``x0`` need not be normalized.
    """
    _require(h)
    k = h.m - 1
    x = np.full(h.n, 1.0 / h.n) if x0 is None else np.asarray(x0, dtype=float)
    if not (x > 0).all():
        raise ValueError("start vector must be strictly positive")
    lam = 0.0
    resid = np.inf
    for it in range(1, max_iters + 1):
        y = apply(h, x)
        # positivity propagates through every edge of a connected hypergraph
        assert (y > 0).all(), "zero component in HEC iterate"
        xk = x**k
        ratio = y / xk
        lo, hi = ratio.min(), ratio.max()
        lam = 0.5 * (lo + hi)
        if hi - lo <= tol * hi:
            c = normalize_one_norm(x)
            yc = apply(h, c)
            resid = np.abs(yc - lam * c**k).sum()
            return CentralityResult(c, float(lam), float(resid), it, True, "hec")
        x = normalize_one_norm(y ** (1.0 / k))
    c = normalize_one_norm(x)
    resid = np.abs(apply(h, c) - lam * c**k).sum()
    return CentralityResult(c, float(lam), float(resid), max_iters, False, "hec")

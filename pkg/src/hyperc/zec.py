"""Z-eigenvector centrality (ZEC).

Two single-start solvers are provided:

* a dynamical-systems solver that follows ``dx/dt = Lambda(T[x]) - x``,
  where ``Lambda`` picks the unit Perron vector of the nonnegative
  matrix ``T[x]``. It can land on unstable eigenpairs.
* SS-HOPM, the shifted symmetric higher-order power method, which only
  ever converges to stable eigenpairs.

:func:`zec` runs many seeded restarts, clusters the converged positive
vectors and returns the most frequently reached one.
"""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np
import scipy.linalg
from scipy.sparse import linalg as splinalg

from .cec import CentralityResult, _require, normalize_one_norm
from .hypergraph import ConvergenceError, HypergraphError, UniformHypergraph
from .tensor import apply, contracted_dense, contracted_matrix

log = logging.getLogger(__name__)

ALGORITHMS = ("dynamical-systems", "sshopm")
STABILITY_LABELS = ("positive-stable", "negative-stable", "unstable", "degenerate")

# above this size the Perron vector of T[x] comes from ARPACK instead of a dense eigh
DENSE_LIMIT = 400


@dataclass
class ZecOptions:
    algorithm: str = "dynamical-systems"
    alpha: float = 1.0
    step: float = 0.5
    tol: float = 1e-8
    max_iters: int = 10_000
    restarts: int = 100
    seed: int = 0
    cluster_tol: float = 1e-4
    stability_tol: float = 1e-6
    # stability needs a dense (n-1)x(n-1) eigensolve; skipped beyond this size
    stability_max_n: int = 2000
    # the first restart uses the uniform vector; the rest are random
    uniform_first: bool = True
    threads: int = 1

    def __post_init__(self):
        if self.algorithm not in ALGORITHMS:
            raise ValueError(f"algorithm must be one of {ALGORITHMS}, got {self.algorithm!r}")
        if not 0 < self.step <= 1:
            raise ValueError("step must lie in (0, 1]")
        if self.alpha < 0:
            raise ValueError("alpha must be nonnegative")
        if self.restarts < 1:
            raise ValueError("restarts must be >= 1")
        if min(self.tol, self.cluster_tol, self.stability_tol) <= 0:
            raise ValueError("tolerances must be positive")
        if self.max_iters < 1 or self.threads < 1:
            raise ValueError("max_iters and threads must be >= 1")


@dataclass
class ZEigenpair:
    """A Z-eigenpair with ``||vector||_2 = 1`` and ``T x^(m-1) = eigenvalue * x``."""

    vector: np.ndarray
    eigenvalue: float
    residual: float
    iterations: int = 0
    stability: str | None = None


@dataclass
class ZecEnsemble:
    pairs: list[ZEigenpair] = field(default_factory=list)
    counts: list[int] = field(default_factory=list)
    chosen: int = -1
    failed: int = 0
    rejected: int = 0

    def report(self) -> dict:
        """JSON-ready summary of the clusters."""
        return {
            "chosen": self.chosen,
            "failed": self.failed,
            "rejected_nonpositive": self.rejected,
            "clusters": [
                {
                    "eigenvalue": float(p.eigenvalue),
                    "multiplicity": int(c),
                    "residual": float(p.residual),
                    "stability": p.stability or "unknown",
                    "min_entry": float(p.vector.min()),
                }
                for p, c in zip(self.pairs, self.counts)
            ],
        }


def _perron_vector(h: UniformHypergraph, x: np.ndarray) -> np.ndarray:
    """Unit nonnegative eigenvector of the largest eigenvalue of ``T[x]``."""
    if h.n <= DENSE_LIMIT:
        _, V = np.linalg.eigh(contracted_dense(h, x))
        v = V[:, -1]
    else:
        A = contracted_matrix(h, x)
        _, V = splinalg.eigsh(A, k=1, which="LA", v0=x + 1e-3, tol=1e-12)
        v = V[:, 0]
    if v.sum() < 0:
        v = -v
    v = np.abs(v)
    return v / np.linalg.norm(v)


def _eigenpair(h: UniformHypergraph, x: np.ndarray) -> tuple[float, float]:
    y = apply(h, x)
    lam = float(x @ y)
    return lam, float(np.linalg.norm(y - lam * x))


def _start(x0) -> np.ndarray:
    x = np.asarray(x0, dtype=float)
    if (x < 0).any() or not (x > 0).any():
        raise ValueError("start vector must be nonnegative and nonzero")
    return x / np.linalg.norm(x)


def _iterate(h, x, step_fn, opts: ZecOptions, name: str) -> ZEigenpair:
    for it in range(1, opts.max_iters + 1):
        x_new = step_fn(x)
        diff = np.linalg.norm(x_new - x)
        x = x_new
        if diff <= opts.tol:
            lam, res = _eigenpair(h, x)
            if res <= opts.tol:
                return ZEigenpair(x, lam, res, it)
    raise ConvergenceError(f"{name} did not converge in {opts.max_iters} iterations", last=x, iterations=opts.max_iters)


def zec_single(h: UniformHypergraph, x0, opts: ZecOptions | None = None, classify: bool = True) -> ZEigenpair:
    """One dynamical-systems solve from ``x0`` (forward Euler with fixed step).

    Raises :class:`ConvergenceError` if the iterates do not settle.
    """
    opts = opts or ZecOptions()
    _require(h)
    step = opts.step

    def step_fn(x):
        v = _perron_vector(h, x)
        y = x + step * (v - x)
        return y / np.linalg.norm(y)

    pair = _iterate(h, _start(x0), step_fn, opts, "dynamical-systems solver")
    if classify:
        pair.stability = _maybe_classify(h, pair, opts)
    return pair


def sshopm(
    h: UniformHypergraph, x0, alpha: float | None = None, opts: ZecOptions | None = None, classify: bool = True
) -> ZEigenpair:
    """Shifted symmetric higher-order power method from ``x0``.

    Iterates ``x <- (T x^(m-1) + alpha x) / ||.||_2``. A large enough
    shift makes the iteration monotone and convergent, at the price of
    speed. It cannot converge to an unstable eigenpair, so it will miss
    some ZEC vectors that :func:`zec_single` finds.
    """
    opts = opts or ZecOptions()
    alpha = opts.alpha if alpha is None else alpha
    if alpha < 0:
        raise ValueError("alpha must be nonnegative")
    _require(h)

    def step_fn(x):
        y = apply(h, x) + alpha * x
        return y / np.linalg.norm(y)

    pair = _iterate(h, _start(x0), step_fn, opts, "SS-HOPM")
    if classify:
        pair.stability = _maybe_classify(h, pair, opts)
    return pair


def classify_stability(h: UniformHypergraph, pair: ZEigenpair, tol: float = 1e-6) -> str:
    """Stability label from the projected Hessian ``U^T((m-1) T[x] - lambda I) U``.

    ``U`` spans the orthogonal complement of ``x``. All eigenvalues
    below ``-tol`` give ``negative-stable``, all above ``tol`` give
    ``positive-stable``, both signs give ``unstable``; anything else
    (an eigenvalue within ``tol`` of zero) is ``degenerate``.
    """
    x = np.asarray(pair.vector, dtype=float)
    if h.n < 2:
        raise HypergraphError("stability needs dimension >= 2")
    if abs(np.linalg.norm(x) - 1) > 1e-8:
        raise ValueError("pair vector must have unit 2-norm")
    U = scipy.linalg.null_space(x[None, :])
    A = (h.m - 1) * contracted_dense(h, x) - pair.eigenvalue * np.eye(h.n)
    ev = np.linalg.eigvalsh(U.T @ A @ U)
    if (ev > tol).any() and (ev < -tol).any():
        return "unstable"
    if (np.abs(ev) <= tol).any():
        return "degenerate"
    return "negative-stable" if (ev < 0).all() else "positive-stable"


def _maybe_classify(h, pair, opts) -> str | None:
    if h.n > opts.stability_max_n:
        return None
    return classify_stability(h, pair, opts.stability_tol)


def random_starts(n: int, count: int, seed: int) -> np.ndarray:
    """``count`` i.i.d. uniform(0, 1) start vectors scaled to unit 2-norm."""
    rng = np.random.default_rng(seed)
    X = rng.uniform(size=(count, n))
    return X / np.linalg.norm(X, axis=1, keepdims=True)


def restart_vectors(n: int, opts: ZecOptions) -> np.ndarray:
    X = random_starts(n, opts.restarts, opts.seed)
    if opts.uniform_first:
        X[0] = 1.0 / np.sqrt(n)
    return X


def is_boundary(h: UniformHypergraph, pair: ZEigenpair, tol: float) -> bool:
    """True if ``pair`` is numerically a nonnegative eigenvector with zero entries.

    Entries at or below ``sqrt(tol)`` times the largest entry are zeroed;
    if what remains is still an eigenpair to within ``10 * tol`` the
    small entries are decaying toward a boundary solution rather than
    settling at positive values. Such pairs exist on connected
    hypergraphs (e.g. one live petal of a sunflower) and are not
    centralities.
    """
    x = pair.vector
    small = x <= np.sqrt(tol) * x.max()
    if not small.any():
        return False
    y = np.where(small, 0.0, x)
    y /= np.linalg.norm(y)
    _, res = _eigenpair(h, y)
    return res <= 10 * tol


def zec(h: UniformHypergraph, opts: ZecOptions | None = None) -> tuple[CentralityResult, ZecEnsemble]:
    """Multi-restart ZEC with selection of the most common eigenvector.

    Converged vectors are clustered in restart order: a vector joins the
    first cluster whose representative lies within ``cluster_tol``
    (2-norm), else it opens a new cluster. The representative of a
    cluster is its member with the smallest residual. Vectors with an
    entry at or below ``1e-12 / n``, or that :func:`is_boundary` flags,
    are rejected. Ties in multiplicity go to the cluster found first.

    With ``uniform_first`` the first start is the uniform vector, which
    keeps every automorphism symmetry of the hypergraph; on symmetric
    instances such as sunflowers the positive eigenvector is a saddle
    that random starts never reach but the uniform start does.
    """
    opts = opts or ZecOptions()
    _require(h)
    solver = zec_single if opts.algorithm == "dynamical-systems" else sshopm
    floor = 1e-12 / h.n
    starts = restart_vectors(h.n, opts)

    def run(x0):
        try:
            return solver(h, x0, opts=opts, classify=False)
        except ConvergenceError:
            return None

    if opts.threads > 1:
        with ThreadPoolExecutor(opts.threads) as pool:
            results = list(pool.map(run, starts))
    else:
        results = [run(x0) for x0 in starts]

    ens = ZecEnsemble()
    for pair in results:
        if pair is None:
            ens.failed += 1
            continue
        if pair.vector.min() <= floor or is_boundary(h, pair, opts.tol):
            ens.rejected += 1
            continue
        for j, rep in enumerate(ens.pairs):
            if np.linalg.norm(rep.vector - pair.vector) < opts.cluster_tol:
                ens.counts[j] += 1
                if pair.residual < rep.residual:
                    ens.pairs[j] = pair
                break
        else:
            ens.pairs.append(pair)
            ens.counts.append(1)
    log.debug("zec: %d clusters, %d failed, %d rejected", len(ens.pairs), ens.failed, ens.rejected)
    if not ens.pairs:
        raise ConvergenceError(
            f"no restart converged to a positive Z-eigenvector ({ens.failed} failed, {ens.rejected} rejected)"
        )
    for p in ens.pairs:
        p.stability = _maybe_classify(h, p, opts)
    ens.chosen = int(np.argmax(ens.counts))
    rep = ens.pairs[ens.chosen]
    result = CentralityResult(
        normalize_one_norm(rep.vector), rep.eigenvalue, rep.residual, rep.iterations, True, "zec"
    )
    return result, ens


def options_dict(opts: ZecOptions) -> dict:
    return asdict(opts)

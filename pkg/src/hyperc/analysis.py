"""Rank comparison of centrality vectors: Spearman correlation on top-k sub-vectors and top-k tables."""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from typing import Mapping, Sequence, TextIO

import numpy as np
from scipy.stats import rankdata

from .cec import CentralityResult
from .hypergraph import NodeLabelMap

DEFAULT_KS = (10, 20, 50, 100, 200, 500, 1000)


@dataclass
class RankComparison:
    reference: str
    other: str
    points: list[tuple[int, float]] = field(default_factory=list)


def spearman(x, y) -> float:
    """Spearman rank correlation with average ranks for ties."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape != y.shape or x.ndim != 1:
        raise ValueError("spearman needs two 1-d vectors of equal length")
    if x.size < 2:
        raise ValueError("spearman needs at least two entries")
    a = rankdata(x) - (x.size + 1) / 2
    b = rankdata(y) - (y.size + 1) / 2
    saa, sbb = a @ a, b @ b
    if saa == 0 or sbb == 0:
        raise ValueError("spearman is undefined for a constant vector")
    # ranks are half-integers, so these sums are exact and +-1 comes out exactly
    rho = (a @ b) / np.sqrt(saa * sbb)
    return float(np.clip(rho, -1.0, 1.0))


def _scores(r) -> np.ndarray:
    return np.asarray(r.scores if isinstance(r, CentralityResult) else r, dtype=float)


def top_nodes(scores, k: int) -> np.ndarray:
    """Ids of the ``k`` largest scores, descending, ties by smaller id."""
    s = np.asarray(scores, dtype=float)
    order = np.lexsort((np.arange(s.size), -s))
    return order[:k]


def default_ks(n: int) -> list[int]:
    ks = sorted({min(k, n) for k in DEFAULT_KS} | {n})
    return [k for k in ks if k >= 2]


def topk_correlation(ref, other, ks: Sequence[int], names: tuple[str, str] = ("ref", "other")) -> RankComparison:
    """Spearman correlation of both vectors restricted to the reference's top-k nodes."""
    a, b = _scores(ref), _scores(other)
    if a.shape != b.shape:
        raise ValueError("centrality vectors cover different node sets")
    ks = sorted(set(int(k) for k in ks))
    out = RankComparison(*names)
    for k in ks:
        if k < 2:
            raise ValueError("k must be at least 2")
        if k > a.size:
            raise ValueError(f"k={k} exceeds the number of nodes {a.size}")
        idx = top_nodes(a, k)
        out.points.append((k, spearman(a[idx], b[idx])))
    return out


def all_orientations(results: Mapping[str, object], ks: Sequence[int]) -> list[RankComparison]:
    """Top-k curves for every ordered pair of methods."""
    out = []
    for r in results:
        for o in results:
            if r != o:
                out.append(topk_correlation(results[r], results[o], ks, (r, o)))
    return out


def write_correlations_csv(comparisons: Sequence[RankComparison], stream: TextIO) -> None:
    w = csv.writer(stream, lineterminator="\n")
    w.writerow(["k", "reference", "other", "rho"])
    for c in comparisons:
        for k, rho in c.points:
            w.writerow([k, c.reference, c.other, repr(rho)])


def top_table(results: Mapping[str, object], labels: NodeLabelMap, k: int) -> dict[str, list[str]]:
    """Labels of the ``k`` top-scoring nodes per method, descending."""
    if k < 1:
        raise ValueError("k must be positive")
    return {name: [labels[i] for i in top_nodes(_scores(r), k)] for name, r in results.items()}


def render_markdown(table: Mapping[str, list[str]]) -> str:
    names = list(table)
    rows = max((len(v) for v in table.values()), default=0)
    lines = ["| rank | " + " | ".join(names) + " |", "|---:|" + "---|" * len(names)]
    for i in range(rows):
        cells = [table[nm][i] if i < len(table[nm]) else "" for nm in names]
        lines.append(f"| {i + 1} | " + " | ".join(c.replace("|", "\\|") for c in cells) + " |")
    return "\n".join(lines) + "\n"

"""Build uniform hypergraphs from n-gram lists and item transactions."""

from __future__ import annotations

import re
import warnings
from collections import OrderedDict
from dataclasses import dataclass, field
from itertools import combinations
from math import factorial
from typing import Iterable, TextIO

from .hypergraph import HypergraphError, NodeLabelMap, UniformHypergraph, largest_component


class IngestError(HypergraphError):
    pass


@dataclass
class TransactionRecord:
    items: list[str]
    multiplicity: int = 1

    def __post_init__(self):
        if not self.items or any(not it for it in self.items):
            raise ValueError("transaction needs at least one nonempty item")
        if self.multiplicity < 1:
            raise ValueError("multiplicity must be positive")


@dataclass
class IngestReport:
    lines: int = 0
    malformed: int = 0
    repeated_words: int = 0
    duplicates: int = 0
    skipped_size: int = 0
    problems: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        d = dict(vars(self))
        d["problems"] = self.problems[:20]
        return d


_NUM = re.compile(r"^[+-]?(\d+(\.\d*)?|\.\d+)([eE][+-]?\d+)?$")


def _build(m: int, edges: "OrderedDict[tuple[int, ...], float]", labels: NodeLabelMap, weighted: bool):
    if not edges:
        raise IngestError("no edges")
    keys = sorted(edges)
    w = [edges[k] for k in keys] if weighted else None
    return UniformHypergraph.from_edges(m, keys, n=len(labels), weights=w)


def from_ngrams(
    lines: Iterable[str],
    m: int,
    freq_column: str = "auto",
    weighted: bool = False,
    lowercase: bool = False,
    report: IngestReport | None = None,
) -> tuple[UniformHypergraph, NodeLabelMap]:
    """Hypergraph whose edges are the word sets of m-grams.

    Each line holds ``m`` tokens, optionally with a numeric frequency as
    first or last field. ``freq_column`` is ``auto``, ``first``,
    ``last`` or ``none``. Word order is ignored. An m-gram with fewer
    than ``m`` distinct words is dropped and counted in
    ``report.repeated_words``. More than half malformed lines aborts.
    """
    if m < 2:
        raise ValueError("m must be at least 2")
    if freq_column not in ("auto", "first", "last", "none"):
        raise ValueError(f"bad freq_column {freq_column!r}")
    rep = report if report is not None else IngestReport()
    labels = NodeLabelMap()
    edges: OrderedDict[tuple[int, ...], float] = OrderedDict()
    for lineno, raw in enumerate(lines, 1):
        toks = raw.split()
        if not toks:
            continue
        rep.lines += 1
        freq = 1.0
        if len(toks) == m + 1 and freq_column != "none":
            if freq_column in ("auto", "first") and _NUM.match(toks[0]):
                freq, toks = float(toks[0]), toks[1:]
            elif freq_column in ("auto", "last") and _NUM.match(toks[-1]):
                freq, toks = float(toks[-1]), toks[:-1]
        if len(toks) != m:
            rep.malformed += 1
            rep.problems.append(f"line {lineno}: expected {m} words, got {raw.strip()!r}")
            continue
        if lowercase:
            toks = [t.lower() for t in toks]
        words = list(dict.fromkeys(toks))
        if len(words) < m:
            rep.repeated_words += 1
            continue
        key = tuple(sorted(labels.add(wd) for wd in words))
        if key in edges:
            rep.duplicates += 1
            edges[key] += freq
        else:
            edges[key] = freq
    if rep.lines and rep.malformed > rep.lines / 2:
        raise IngestError(f"{rep.malformed} of {rep.lines} lines malformed; aborting")
    return _build(m, edges, labels, weighted), labels


def read_transactions(stream: TextIO, sep: str = "comma", lowercase: bool = False) -> Iterable[TransactionRecord]:
    """One record per line; items split on commas or on whitespace."""
    for raw in stream:
        line = raw.strip()
        if not line or line.startswith("%"):
            continue
        if sep == "comma":
            items = [it.strip() for it in line.split(",")]
        elif sep == "whitespace":
            items = line.split()
        else:
            raise ValueError(f"bad separator {sep!r}")
        items = [it.lower() if lowercase else it for it in items if it]
        if items:
            yield TransactionRecord(items)


def from_transactions(
    records: Iterable[TransactionRecord],
    m: int,
    mode: str = "subsets",
    weighted: bool = False,
    report: IngestReport | None = None,
) -> tuple[UniformHypergraph, NodeLabelMap]:
    """Hypergraph from co-occurring items.

    ``subsets`` adds every size-``m`` subset of every record; ``exact``
    keeps only records with exactly ``m`` distinct items. With
    ``weighted`` an edge's weight is the summed multiplicity of the
    records producing it.
    """
    if m < 3:
        raise ValueError("m must be at least 3")
    if mode not in ("subsets", "exact"):
        raise ValueError(f"mode must be 'subsets' or 'exact', got {mode!r}")
    rep = report if report is not None else IngestReport()
    labels = NodeLabelMap()
    edges: OrderedDict[tuple[int, ...], float] = OrderedDict()
    for rec in records:
        rep.lines += 1
        items = list(dict.fromkeys(rec.items))
        if len(items) < len(rec.items):
            warnings.warn(f"record {rep.lines}: duplicate items removed", stacklevel=2)
        if len(items) < m or (mode == "exact" and len(items) != m):
            rep.skipped_size += 1
            continue
        ids = [labels.add(it) for it in items]
        for sub in combinations(ids, m):
            key = tuple(sorted(sub))
            if key in edges:
                rep.duplicates += 1
                edges[key] += rec.multiplicity
            else:
                edges[key] = float(rec.multiplicity)
    return _build(m, edges, labels, weighted), labels


def summary(h: UniformHypergraph) -> dict:
    """Node and edge counts in the layout of a dataset summary table."""
    sym = factorial(h.m)
    return {
        "m": h.m,
        "nodes": h.n,
        "edges": h.num_edges,
        "nnz": sym * h.num_edges,
        f"nnz/{sym}": h.num_edges,
    }


def prepare(h: UniformHypergraph, labels: NodeLabelMap | None = None):
    """Largest connected component plus its summary statistics."""
    sub, sublabels, _ = largest_component(h, labels)
    stats = summary(sub)
    stats["input_nodes"] = h.n
    stats["input_edges"] = h.num_edges
    return sub, sublabels, stats

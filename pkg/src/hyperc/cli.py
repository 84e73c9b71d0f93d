"""Command-line front end.

Exit codes: 0 ok, 2 I/O or parse failure, 3 disconnected input,
4 non-convergence, 5 mismatched inputs.
"""

from __future__ import annotations

import argparse
import contextlib
import csv
import io
import json
import logging
import os
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .analysis import all_orientations, default_ks, render_markdown, top_table, write_correlations_csv
from .cec import cec
from .hec import hec
from .hypergraph import (
    ConvergenceError,
    HypergraphError,
    NodeLabelMap,
    is_connected,
    largest_component,
    read_edgelist,
    read_labels,
    write_edgelist,
    write_labels,
)
from .ingest import IngestError, IngestReport, from_ngrams, from_transactions, prepare, read_transactions
from .models import example_unstable_fixture, sunflower
from .zec import ZecOptions, zec

log = logging.getLogger("hyperc")

EXIT_OK, EXIT_IO, EXIT_CONNECTIVITY, EXIT_CONVERGENCE, EXIT_MISMATCH = 0, 2, 3, 4, 5
METHODS = ("cec", "zec", "hec")


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def _dump_json(obj, path: Path) -> None:
    path.write_text(json.dumps(obj, indent=2, sort_keys=True) + "\n", encoding="utf-8")


def _write_run(args, outdir: Path, argv) -> None:
    config = {k: v for k, v in sorted(vars(args).items()) if k != "func"}
    _dump_json({"version": __version__, "argv": list(argv), "config": config}, outdir / "run.json")


def _open_text(path: str):
    if path == "-":
        return contextlib.nullcontext(sys.stdin)
    return open(path, encoding="utf-8")


def _load_hypergraph(path: str, labels_path: str | None):
    with _open_text(path) as f:
        h = read_edgelist(f)
    h.check()
    if labels_path:
        with open(labels_path, encoding="utf-8") as f:
            labels = read_labels(f)
        if len(labels) != h.n:
            raise CliError(f"label file has {len(labels)} labels for {h.n} nodes", EXIT_MISMATCH)
    else:
        labels = NodeLabelMap.identity(h.n)
    return h, labels


# --- build ----------------------------------------------------------------


def cmd_build(args, argv) -> int:
    out = Path(args.output)
    rep = IngestReport()
    with _open_text(args.input) as f:
        if args.source == "ngrams":
            h, labels = from_ngrams(f, args.m, args.freq_column, args.weighted, args.lowercase, rep)
        else:
            recs = read_transactions(f, args.sep, args.lowercase)
            h, labels = from_transactions(recs, args.m, args.mode, args.weighted, rep)
    sub, sublabels, stats = prepare(h, labels)
    stats["ingest"] = rep.to_dict()
    out.mkdir(parents=True, exist_ok=True)
    with open(out / "hypergraph.hg", "w", encoding="utf-8", newline="\n") as f:
        write_edgelist(sub, f)
    with open(out / "labels.tsv", "w", encoding="utf-8", newline="\n") as f:
        write_labels(sublabels, f)
    _dump_json(stats, out / "stats.json")
    _write_run(args, out, argv)
    log.info("built %d nodes, %d edges", sub.n, sub.num_edges)
    return EXIT_OK


# --- generators -----------------------------------------------------------


def _emit(h, output: str | None, header: str = "") -> None:
    buf = io.StringIO()
    if header:
        buf.write(header)
    write_edgelist(h, buf)
    if output and output != "-":
        Path(output).write_text(buf.getvalue(), encoding="utf-8")
    else:
        sys.stdout.write(buf.getvalue())


def cmd_sunflower(args, argv) -> int:
    _emit(sunflower(args.m, args.r), args.output, f"% sunflower m={args.m} r={args.r}; node 0 is the core\n")
    return EXIT_OK


def cmd_fixture(args, argv) -> int:
    h, pair = example_unstable_fixture()
    vec = " ".join(repr(float(v)) for v in pair.vector)
    header = f"% unstable Z-eigenpair, eigenvalue {pair.eigenvalue!r}\n% x = {vec}\n"
    _emit(h, args.output, header)
    return EXIT_OK


# --- centrality -----------------------------------------------------------


def _threads(args) -> int:
    if args.deterministic:
        return 1
    if args.threads is not None:
        return args.threads
    return int(os.environ.get("HYPERC_THREADS", "1"))


def _write_scores(path: Path, scores, labels: NodeLabelMap) -> None:
    order = np.lexsort((np.arange(scores.size), -scores))
    with open(path, "w", encoding="utf-8", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(["node_id", "label", "score"])
        for i in order:
            w.writerow([int(i), labels[i], repr(float(scores[i]))])


def cmd_centrality(args, argv) -> int:
    methods = [m.strip().lower() for m in args.method.split(",") if m.strip()]
    bad = [m for m in methods if m not in METHODS]
    if bad or not methods:
        raise CliError(f"unknown method(s) {bad}; choose from {','.join(METHODS)}", EXIT_IO)
    h, labels = _load_hypergraph(args.input, args.labels)
    if not is_connected(h):
        if not args.lcc:
            raise CliError("hypergraph is not connected; pass --lcc to use its largest component", EXIT_CONNECTIVITY)
        h, labels, _ = largest_component(h, labels)
    out = Path(args.output)
    out.mkdir(parents=True, exist_ok=True)
    _write_run(args, out, argv)
    code = EXIT_OK
    for method in methods:
        side = {"n": h.n, "m": h.m, "edges": h.num_edges}
        kw = {}
        if args.tol is not None:
            kw["tol"] = args.tol
        if args.max_iters is not None:
            kw["max_iters"] = args.max_iters
        try:
            if method == "cec":
                res = cec(h, **kw)
            elif method == "hec":
                res = hec(h, **kw)
            else:
                opts = ZecOptions(
                    algorithm=args.zec_algorithm,
                    alpha=args.alpha,
                    step=args.step,
                    restarts=args.restarts,
                    seed=args.seed,
                    cluster_tol=args.cluster_tol,
                    threads=_threads(args),
                    **kw,
                )
                res, ens = zec(h, opts)
                side["ensemble"] = ens.report()
        except ConvergenceError as exc:
            side.update(method=method, converged=False, error=str(exc))
            _dump_json(side, out / f"{method}.json")
            log.error("%s: %s", method, exc)
            code = EXIT_CONVERGENCE
            continue
        side.update(res.to_dict())
        _dump_json(side, out / f"{method}.json")
        if not res.converged:
            log.error("%s did not converge (residual %.3e)", method, res.residual)
            code = EXIT_CONVERGENCE
            continue
        _write_scores(out / f"{method}.csv", res.scores, labels)
    return code


# --- compare --------------------------------------------------------------


def _read_scores(path: str):
    ids, labs, vals = [], [], []
    with open(path, encoding="utf-8", newline="") as f:
        r = csv.DictReader(f)
        if r.fieldnames != ["node_id", "label", "score"]:
            raise CliError(f"{path}: expected columns node_id,label,score", EXIT_IO)
        for row in r:
            ids.append(int(row["node_id"]))
            labs.append(row["label"])
            vals.append(float(row["score"]))
    order = np.argsort(ids)
    ids = [ids[i] for i in order]
    if ids != list(range(len(ids))):
        raise CliError(f"{path}: node ids must be dense from 0", EXIT_MISMATCH)
    return [labs[i] for i in order], np.array(vals)[order]


def cmd_compare(args, argv) -> int:
    if len(args.inputs) < 2:
        raise CliError("compare needs at least two centrality CSV files", EXIT_IO)
    results, labels = {}, None
    for path in args.inputs:
        name = Path(path).stem
        if name in results:
            raise CliError(f"duplicate method name {name!r}", EXIT_MISMATCH)
        labs, vals = _read_scores(path)
        if labels is None:
            labels = labs
        elif labs != labels:
            raise CliError(f"{path}: node universe differs from {args.inputs[0]}", EXIT_MISMATCH)
        results[name] = vals
    n = len(labels)
    ks = [int(k) for k in args.ks.split(",")] if args.ks else default_ks(n)
    ks = sorted({min(k, n) for k in ks if k >= 2})
    out = Path(args.output)
    out.mkdir(parents=True, exist_ok=True)
    with open(out / "correlations.csv", "w", encoding="utf-8", newline="") as f:
        write_correlations_csv(all_orientations(results, ks), f)
    table = top_table(results, NodeLabelMap(labels), min(args.k, n))
    (out / "top_k.md").write_text(render_markdown(table), encoding="utf-8")
    _write_run(args, out, argv)
    return EXIT_OK


def cmd_rerun(args, argv) -> int:
    with open(args.run_json, encoding="utf-8") as f:
        saved = json.load(f)
    return main(saved["argv"])


# --- parser ---------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hyperc", description="Eigenvector centralities of uniform hypergraphs")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", help="build a hypergraph from n-grams or transactions")
    b.add_argument("input", help="input text file, or - for stdin")
    b.add_argument("--from", dest="source", choices=("ngrams", "transactions"), required=True)
    b.add_argument("--m", type=int, required=True, help="uniformity")
    b.add_argument("--mode", choices=("subsets", "exact"), default="subsets")
    b.add_argument("--sep", choices=("comma", "whitespace"), default="comma")
    b.add_argument("--freq-column", choices=("auto", "first", "last", "none"), default="auto")
    b.add_argument("--weighted", action="store_true")
    b.add_argument("--lowercase", action="store_true")
    b.add_argument("-o", "--output", default=".")
    b.set_defaults(func=cmd_build)

    s = sub.add_parser("sunflower", help="emit a sunflower hypergraph")
    s.add_argument("m", type=int)
    s.add_argument("r", type=int)
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_sunflower)

    fx = sub.add_parser("fixture", help="emit the 7-node hypergraph with an unstable Z-eigenpair")
    fx.add_argument("-o", "--output")
    fx.set_defaults(func=cmd_fixture)

    c = sub.add_parser("centrality", help="compute CEC / ZEC / HEC scores")
    c.add_argument("input", help="canonical edge list, or - for stdin")
    c.add_argument("--labels", help="id<TAB>label file")
    c.add_argument("--method", default="cec,zec,hec")
    c.add_argument("--lcc", action="store_true", help="restrict to the largest connected component")
    c.add_argument("-o", "--output", default=".")
    c.add_argument("--tol", type=float)
    c.add_argument("--max-iters", type=int)
    c.add_argument("--zec-algorithm", choices=("dynamical-systems", "sshopm"), default="dynamical-systems")
    c.add_argument("--step", type=float, default=0.5)
    c.add_argument("--alpha", type=float, default=1.0)
    c.add_argument("--restarts", type=int, default=100)
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--cluster-tol", type=float, default=1e-4)
    c.add_argument("--threads", type=int, help="parallel ZEC restarts (default: $HYPERC_THREADS or 1)")
    c.add_argument("--deterministic", action="store_true")
    c.set_defaults(func=cmd_centrality)

    k = sub.add_parser("compare", help="top-k rank correlations between centrality CSVs")
    k.add_argument("inputs", nargs="+")
    k.add_argument("--ks", help="comma-separated k grid (default 10,20,50,...,n)")
    k.add_argument("--k", type=int, default=10, help="rows in the top-k table")
    k.add_argument("-o", "--output", default=".")
    k.set_defaults(func=cmd_compare)

    r = sub.add_parser("rerun", help="repeat a run from its run.json")
    r.add_argument("run_json")
    r.set_defaults(func=cmd_rerun)
    return p


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="hyperc: %(message)s")
    try:
        return args.func(args, argv)
    except CliError as exc:
        print(f"hyperc: error: {exc}", file=sys.stderr)
        return exc.code
    except (OSError, IngestError, HypergraphError, ValueError) as exc:
        print(f"hyperc: error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())

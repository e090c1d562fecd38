"""``graphbounds`` command line: analyze, gen, sweep, verify, binarize.

Exit codes: 0 success, 1 bad input or parameters, 2 a proved bound was
violated (always a bug, never a data problem).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .bounds import BoundsReport, evaluate
from .errors import GraphBoundsError, ParseError
from .generators import (
    RNG_ALGORITHM,
    LfrParams,
    SweepConfig,
    erdos_renyi,
    lfr,
    lfr_with_communities,
    run_sweep,
    sweep_csv,
    sweep_summary,
)
from .ingest import binarize, parse_correlation_csv, read_graph, serialize_edge_list
from .metrics import MetricsReport, analyze, format_number
from .verify import EXHAUSTIVE_MAX_N, exhaustive_suite, random_suite

DEFAULT_SEED = 1830

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_VIOLATION = 2


class CliError(Exception):
    pass


def _emit(text: str, output: str | None) -> None:
    if output:
        with open(output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _dump_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"


def analysis_document(g) -> tuple[dict, MetricsReport, BoundsReport]:
    report, summary = analyze(g)
    bounds = evaluate(report, summary)
    doc = {"metrics": report.to_dict(), "bounds": bounds.to_dict()}
    return doc, report, bounds


def _analysis_text(g, fmt: str) -> tuple[str, bool]:
    doc, report, bounds = analysis_document(g)
    if fmt == "csv":
        header = report.csv_header() + bounds.csv_header() + ["gap_lemma6", "gap_bound_lemma6"]
        row = report.csv_row() + bounds.csv_row() + [format_number(bounds.gap_lemma6), format_number(bounds.gap_bound_lemma6)]
        text = ",".join(header) + "\n" + ",".join(row) + "\n"
    else:
        text = _dump_json(doc)
    return text, bounds.all_satisfied and bounds.sandwich_holds()


def cmd_analyze(args) -> int:
    g = read_graph(args.input, args.input_format)
    text, ok = _analysis_text(g, args.format)
    _emit(text, args.output)
    return EXIT_OK if ok else EXIT_VIOLATION


LFR_FLAGS = ("n", "tau_degree", "tau_community", "max_degree", "mu", "min_community", "max_community")


def _lfr_overrides(args) -> dict:
    return {key: getattr(args, key) for key in LFR_FLAGS if getattr(args, key) is not None}


def _seed(args, default=DEFAULT_SEED) -> int:
    return args.seed if args.seed is not None else default


def cmd_gen(args) -> int:
    if not args.output:
        raise CliError("gen requires --output")
    seed = _seed(args)
    sidecar = {"model": args.model, "seed": seed, "rng": RNG_ALGORITHM}
    if args.model == "er":
        if args.n is None or args.p is None:
            raise CliError("er model requires --n and --p")
        g = erdos_renyi(args.n, args.p, seed)
        sidecar["params"] = {"n": args.n, "p": args.p}
    else:
        params = LfrParams(avg_degree=args.avg_degree, seed=seed, **_lfr_overrides(args))
        result = lfr_with_communities(params)
        g = result.graph
        sidecar["params"] = params.to_dict()
        sidecar["membership"] = result.membership
    sidecar.update({"n": g.n, "m": g.m, "format": "edgelist"})
    _emit(serialize_edge_list(g), args.output)
    _emit(_dump_json(sidecar), args.output + ".json")
    return EXIT_OK


def parse_degrees(text: str) -> tuple[float, ...]:
    """``"4:64:4"`` (inclusive range) or ``"4,8,16"``."""
    try:
        if ":" in text:
            parts = [int(x) for x in text.split(":")]
            start, stop = parts[0], parts[1]
            step = parts[2] if len(parts) > 2 else 1
            if step <= 0:
                raise ValueError
            return tuple(range(start, stop + 1, step))
        return tuple(_number(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise CliError(f"cannot parse degree list {text!r}") from None


def _number(text: str):
    value = float(text)
    return int(value) if value.is_integer() else value


def _sweep_config(args) -> SweepConfig:
    conf = {}
    if args.config:
        with open(args.config, encoding="utf-8") as fh:
            conf = json.load(fh)
    degrees = conf.get("degrees", "4:64:1")
    if args.degrees is not None:
        degrees = args.degrees
    degrees = parse_degrees(degrees) if isinstance(degrees, str) else tuple(degrees)
    realizations = args.realizations if args.realizations is not None else conf.get("realizations", 30)
    base = {k: v for k, v in conf.get("base", {}).items() if k not in ("avg_degree", "seed")}
    base.update(_lfr_overrides(args))
    try:
        params = LfrParams(**base)
    except TypeError as exc:
        raise CliError(f"bad sweep config base: {exc}") from None
    return SweepConfig(
        degrees=degrees,
        realizations=int(realizations),
        base=params,
        master_seed=_seed(args, conf.get("seed", DEFAULT_SEED)),
    )


def cmd_sweep(args) -> int:
    config = _sweep_config(args)
    rows = run_sweep(config)
    _emit(sweep_csv(rows), args.output)
    summary = sweep_summary(rows)
    summary_text = _dump_json(summary)
    if args.summary:
        _emit(summary_text, args.summary)
    else:
        sys.stderr.write(summary_text)
    if args.dump_graphs:
        out = Path(args.dump_graphs)
        out.mkdir(parents=True, exist_ok=True)
        for row in rows:
            if row.ok:
                name = f"lfr_k{row.avg_degree}_r{row.realization}.txt"
                (out / name).write_text(serialize_edge_list(lfr(row.params)), encoding="utf-8")
    if rows and all(not r.ok for r in rows):
        return EXIT_INPUT
    if any(v for v in summary["violations"].values()):
        return EXIT_VIOLATION
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.max_n > EXHAUSTIVE_MAX_N:
        raise CliError(f"--max-n is capped at {EXHAUSTIVE_MAX_N} in exhaustive mode")
    suites = []
    if args.mode in ("exhaustive", "all"):
        suites.append(exhaustive_suite(max_n=args.max_n, min_n=args.min_n))
    if args.mode in ("random", "all"):
        suites.append(random_suite(count=args.count, seed=_seed(args)))
    doc = {
        "seed": _seed(args),
        "suites": [s.to_dict(one_based=args.one_based) for s in suites],
        "total_violations": sum(len(s.violations) for s in suites),
    }
    _emit(_dump_json(doc), args.output)
    return EXIT_OK if doc["total_violations"] == 0 else EXIT_VIOLATION


def cmd_binarize(args) -> int:
    with open(args.input, "rb") as fh:
        corr = parse_correlation_csv(fh.read())
    g = binarize(corr, args.threshold, inclusive=args.inclusive)
    if args.output or not args.analyze:
        _emit(serialize_edge_list(g), args.output)
    if args.analyze:
        text, ok = _analysis_text(g, args.format)
        sys.stdout.write(text)
        return EXIT_OK if ok else EXIT_VIOLATION
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="graphbounds",
        description="Shortest-path graph metrics and checks of the bounds relating them.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, fmt=True):
        p.add_argument("--output", help="output path (default: stdout)")
        p.add_argument("--seed", type=int, help=f"RNG seed (default {DEFAULT_SEED})")
        if fmt:
            p.add_argument("--format", choices=("json", "csv"), default="json")

    p = sub.add_parser("analyze", help="metrics and bound checks for one graph")
    p.add_argument("--input", required=True)
    p.add_argument("--input-format", choices=("edgelist", "adjacency"),
                   help="default: adjacency for *.csv, edge list otherwise")
    common(p)
    p.set_defaults(func=cmd_analyze)

    def lfr_flags(p):
        p.add_argument("--n", type=int)
        p.add_argument("--avg-degree", type=float, default=16.0, help="gen only")
        p.add_argument("--max-degree", type=int)
        p.add_argument("--mu", type=float)
        p.add_argument("--tau-degree", type=float)
        p.add_argument("--tau-community", type=float)
        p.add_argument("--min-community", type=int)
        p.add_argument("--max-community", type=int)

    p = sub.add_parser("gen", help="generate a random graph")
    p.add_argument("--model", choices=("er", "lfr"), default="lfr")
    p.add_argument("--p", type=float)
    lfr_flags(p)
    common(p, fmt=False)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("sweep", help="LFR benchmark sweep over average degrees")
    p.add_argument("--config", help="JSON file with degrees, realizations, seed, base")
    p.add_argument("--degrees", help="'start:stop:step' (inclusive) or comma list; default 4:64:1")
    p.add_argument("--realizations", type=int)
    p.add_argument("--summary", help="write the summary JSON here instead of stderr")
    p.add_argument("--dump-graphs", help="directory for edge lists of generated graphs")
    lfr_flags(p)
    common(p, fmt=False)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("verify", help="exhaustive and randomized soundness suites")
    p.add_argument("--mode", choices=("exhaustive", "random", "all"), default="all")
    p.add_argument("--max-n", type=int, default=6)
    p.add_argument("--min-n", type=int, default=2)
    p.add_argument("--count", type=int, default=10_000)
    p.add_argument("--one-based", action="store_true", help="1-indexed vertices in reported edge lists")
    common(p, fmt=False)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("binarize", help="threshold a correlation matrix into a graph")
    p.add_argument("--input", required=True)
    p.add_argument("--threshold", type=float, default=0.0)
    p.add_argument("--inclusive", action="store_true", help="use r >= threshold instead of r > threshold")
    p.add_argument("--analyze", action="store_true", help="also print the analysis of the result")
    common(p)
    p.set_defaults(func=cmd_binarize)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        where = getattr(args, "input", None) or ""
        print(f"graphbounds: {where}: {exc}", file=sys.stderr)
    except (GraphBoundsError, CliError, OSError, ValueError) as exc:
        print(f"graphbounds: error: {exc}", file=sys.stderr)
    return EXIT_INPUT


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())

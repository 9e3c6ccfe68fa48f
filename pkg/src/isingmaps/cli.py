"""Command line front end: ``isingmaps compute | verify | export | bench``."""
from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import bench, cache, kernels, suites
from .cache import CacheBusy, CacheError, CoeffTable

DEFAULT_CACHE = "isingmaps-cache.json"


def _cache_path(args) -> str:
    return args.cache or os.environ.get("ISING_CACHE", DEFAULT_CACHE)


def _max_edges(text: str) -> int:
    value = int(text)
    if value < 3:
        raise argparse.ArgumentTypeError("max-edges must be at least 3")
    return value


def cmd_compute(args) -> int:
    table, state = cache.compute_cached(args.max_edges, _cache_path(args), args.mode)
    top = max((r[1] for r in table.rows), default=-1)
    print(f"{len(table.rows)} rows through {table.max_edges} edges, maximal genus {top} "
          f"({state.backend} kernel) -> {_cache_path(args)}")
    return 0


def _load_depth(path: str, max_edges: int) -> CoeffTable:
    if not Path(path).exists():
        raise CacheError(f"no cache at {path}; run `isingmaps compute --max-edges {max_edges}` first")
    table = cache.load(path)
    if table.max_edges < max_edges:
        raise CacheError(f"{path} holds {table.max_edges} edges, {max_edges} requested; "
                         f"run `isingmaps compute --max-edges {max_edges}` first")
    return table.truncated(max_edges)


def cmd_verify(args) -> int:
    path = _cache_path(args)
    state = _load_depth(path, args.max_edges).to_state("fast")
    names = list(suites.SUITES) if args.suite == "all" else [args.suite]
    results = suites.run(names, state)
    for r in results:
        tail = f"  ({r['first_failure']})" if r["first_failure"] else ""
        print(f"{r['status'].upper():<18}{r['suite']}/{r['check']}: {r['checked']} checks{tail}")
    if args.report:
        doc = {"max_edges": args.max_edges, "cache": path, "results": results}
        Path(args.report).write_text(json.dumps(doc, indent=2, default=str) + "\n")
    return 0 if all(r["status"] != "fail" for r in results) else 1


def cmd_export(args) -> int:
    path = _cache_path(args)
    table = cache.load(path) if Path(path).exists() else CoeffTable()
    if args.max_edges is not None:
        table = table.truncated(min(args.max_edges, table.max_edges))
    cache.export(table, args.out, args.format)
    print(f"wrote {len(table.rows)} rows to {args.out}")
    return 0


def cmd_bench(args) -> int:
    rows = bench.run(args.sizes, args.backend and [args.backend], args.timeout)
    print(bench.format_rows(rows))
    if args.json:
        Path(args.json).write_text(json.dumps(bench.as_dicts(rows), indent=2) + "\n")
    return 0 if all(r.status == "ok" for r in rows) else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="isingmaps",
        description="Ising partition polynomials of cubic maps of every genus.",
        epilog="Environment: ISING_THREADS (thread budget), ISING_BACKEND (auto|compiled|python), "
               "ISING_CACHE (default cache path).")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", help="compute (or resume) the coefficient table")
    p.add_argument("--max-edges", type=_max_edges, required=True)
    p.add_argument("--mode", choices=("checked", "fast"), default="checked")
    p.add_argument("--cache", help=f"cache file (default {DEFAULT_CACHE})")
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("verify", help="run consistency checks against the cached table")
    p.add_argument("--suite", choices=("all", *suites.SUITES), default="all")
    p.add_argument("--max-edges", type=_max_edges, required=True)
    p.add_argument("--cache")
    p.add_argument("--report", help="write the JSON report here")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("export", help="write the cached table as JSON or CSV")
    p.add_argument("--format", choices=("json", "csv"), required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--cache")
    p.add_argument("--max-edges", type=int)
    p.set_defaults(func=cmd_export)

    p = sub.add_parser("bench", help="time fast mode per kernel backend")
    p.add_argument("--sizes", type=_max_edges, nargs="+", default=list(bench.SIZES))
    p.add_argument("--backend", choices=kernels.BACKENDS)
    p.add_argument("--timeout", type=float, help="seconds allowed per run")
    p.add_argument("--json", help="write the timings here")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (CacheError, CacheBusy, ValueError, RuntimeError) as exc:
        print(f"isingmaps: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

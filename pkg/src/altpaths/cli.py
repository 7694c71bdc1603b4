"""Command-line front end: ``altpaths {gen,count,pack,search,verify,mc}``.

Exit codes: 0 success, 2 usage error, 3 unreadable or malformed input,
4 violated precondition, 5 work budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

import numpy as np

from . import __version__
from .constructions import (
    block_coloring,
    complete_colorings,
    odd_path_coloring,
    random_coloring,
    theorem31_coloring,
)
from .core import SIDE_M, SIDE_N, BudgetExceeded, CompleteColoring, validate
from .counting import (
    DEFAULT_PATH_BUDGET,
    alt5_objective,
    alt_path_table,
    alt_walk_table,
    pair_2path_counts,
    sum_mixed_codegrees,
    total_alt_p3,
    total_alt_p4,
)
from .experiments import EXPERIMENTS, ExperimentConfig, render_csv, render_json, run_experiment
from .formats import FormatError, dumps_code, dumps_coloring, read_coloring
from .search import (
    BOUND_FAMILIES,
    DEFAULT_PACKING_BUDGET,
    DEFAULT_SCAN_BUDGET,
    exact_alpha,
    exact_kappa,
    exact_lambda,
    max_disjoint_paths,
    relevant_pairs,
    verify_bounds,
)

EXIT_OK = 0
EXIT_PARSE = 3
EXIT_PRECONDITION = 4
EXIT_BUDGET = 5

CONSTRUCTIONS = ("random", "block", "theorem31", "oddpath", "complete-random")


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _config(args) -> dict:
    skip = {"func"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip}


def _report(args, payload: dict, started: float) -> None:
    doc = {"command": args.command, "config": _config(args)}
    doc.update(payload)
    if args.timing:
        doc["runtime_s"] = round(time.perf_counter() - started, 6)
    _emit(json.dumps(doc, sort_keys=True, indent=2, default=str) + "\n", args.out)


def _need(args, *names):
    missing = [f"--{n.replace('_', '-')}" for n in names if getattr(args, n) is None]
    if missing:
        raise ValueError(f"{args.command} {getattr(args, 'construction', '')} needs {', '.join(missing)}")


# ---------------------------------------------------------------------------
# subcommands


def cmd_gen(args) -> int:
    name = args.construction
    extra = {}
    if name == "random":
        _need(args, "m", "n")
        coloring = random_coloring(args.m, args.n, args.r, args.seed)
    elif name == "block":
        _need(args, "m", "n")
        coloring = block_coloring(args.m, args.n)
    elif name == "theorem31":
        _need(args, "m", "n", "k")
        split = theorem31_coloring(args.m, args.n, args.k, args.seed)
        coloring = split.coloring
        extra = {"n_prime": [split.n_prime[0], split.n_prime[-1] + 1],
                 "n_double_prime": ([split.n_double_prime[0], split.n_double_prime[-1] + 1]
                                    if split.n_double_prime else [])}
    elif name == "oddpath":
        _need(args, "m", "n")
        coloring = odd_path_coloring(args.m, args.n)
    else:
        _need(args, "n")
        coloring = complete_colorings(args.n, args.r, args.seed)
    text = dumps_coloring(coloring)
    _emit(text, args.out)
    if args.out:
        sidecar = {"construction": name, "parameters": {"m": args.m, "n": args.n, "r": coloring.r,
                                                        "k": args.k},
                   "seed": args.seed, "version": __version__}
        sidecar.update(extra)
        Path(args.out + ".json").write_text(json.dumps(sidecar, sort_keys=True, indent=2) + "\n")
    return EXIT_OK


def _load(path: str):
    coloring = read_coloring(path)
    problems = validate(coloring)
    if problems:
        raise FormatError("; ".join(problems[:5]), 1)
    return coloring


def cmd_count(args) -> int:
    started = time.perf_counter()
    coloring = _load(args.file)
    length = args.length
    complete = isinstance(coloring, CompleteColoring)
    side = "K" if complete else args.side
    if length == 2 and (complete or side == SIDE_N or side == SIDE_M):
        table = pair_2path_counts(coloring, side if not complete else "K")
        flavor = "path"
    elif args.flavor == "walk":
        table = alt_walk_table(coloring, length, side).counts
        flavor = "walk"
    else:
        table = alt_path_table(coloring, length, side, budget=args.budget).counts
        flavor = "path"
    counts = [[int(x) for x in row] for row in np.asarray(table)]
    payload = {"length": length, "flavor": flavor, "from_class": side, "counts": counts}
    if not complete and coloring.r == 2:
        totals = {"p3": total_alt_p3(coloring), "p4_sequences": total_alt_p4(coloring),
                  "sum_mixed_codegrees": sum_mixed_codegrees(coloring)}
        if coloring.m >= 3:
            totals["alt5_objective"] = alt5_objective(coloring)
        payload["totals"] = totals
    _report(args, payload, started)
    return EXIT_OK


def cmd_pack(args) -> int:
    started = time.perf_counter()
    coloring = _load(args.file)
    if isinstance(coloring, CompleteColoring):
        pairs = [("K", a, b) for a in range(coloring.n) for b in range(a + 1, coloring.n)]
    else:
        pairs = relevant_pairs(coloring.m, coloring.n, args.length)
    rows = []
    for side, a, b in pairs:
        res = max_disjoint_paths(coloring, a, b, args.length, budget=args.budget, a_side=side)
        rows.append({"class": side, "a": a, "b": b, "size": res.size,
                     "paths": [p.to_json() for p in res.paths] if args.paths else None})
    payload = {"length": args.length, "pairs": rows,
               "min": min((r["size"] for r in rows), default=None)}
    _report(args, payload, started)
    return EXIT_OK


def _witness_text(res) -> str | None:
    if res.witness is None:
        return None
    if hasattr(res.witness, "words"):
        return dumps_code(res.witness)
    return dumps_coloring(res.witness)


def cmd_search(args) -> int:
    started = time.perf_counter()
    symmetry = {"auto": None, "on": True, "off": False}[args.symmetry]
    rows = []
    if args.quantity == "alpha":
        _need(args, "m", "t")
        res = exact_alpha(args.m[0], args.t, args.r, budget=args.budget)
        rows.append({"m": args.m[0], "t": args.t, "r": args.r, "value": res.value,
                     "scanned": res.scanned, "witness": _witness_text(res)})
    else:
        _need(args, "m", "n", "length")
        flavors = ["walk", "path"] if args.flavor == "both" else [args.flavor]
        for m in args.m:
            for n in args.n:
                row = {"m": m, "n": n, "length": args.length}
                if args.quantity == "kappa":
                    row["r"] = args.r
                    res = exact_kappa(m, n, args.r, args.length, budget=args.budget, symmetry=symmetry)
                    row.update(value=res.value, scanned=res.scanned, reduced=res.reduced,
                               witness=_witness_text(res))
                else:
                    for fl in flavors:
                        res = exact_lambda(m, n, args.length, fl, budget=args.budget, symmetry=symmetry)
                        row[f"value_{fl}"] = res.value
                        row[f"witness_{fl}"] = _witness_text(res)
                        row["scanned"] = res.scanned
                        row["reduced"] = res.reduced
                rows.append(row)
    if args.format == "csv":
        cols = [c for c in rows[0] if not c.startswith("witness")]
        lines = [f"# altpaths search {args.quantity} schema=1", ",".join(cols)]
        lines += [",".join(str(r[c]) for c in cols) for r in rows]
        _emit("\n".join(lines) + "\n", args.out)
    else:
        _report(args, {"quantity": args.quantity, "results": rows}, started)
    return EXIT_OK


def cmd_verify(args) -> int:
    started = time.perf_counter()
    report = verify_bounds(args.family, args.m, args.n, args.r, budget=args.budget)
    payload = report.to_json()
    payload["extremal_coloring"] = dumps_coloring(report.witness)
    _report(args, payload, started)
    return EXIT_OK


def cmd_mc(args) -> int:
    cfg = ExperimentConfig(args.experiment, args.seed, trials=args.trials, m=args.m, n=args.n,
                           r=args.r, k=args.k, alpha=args.alpha, samples=args.samples,
                           pairs=args.pairs, yield_factor=args.yield_factor,
                           concentration_factor=args.concentration_factor,
                           deficiency_factor=args.deficiency_factor, jobs=args.jobs)
    cfg, stats = run_experiment(cfg)
    render = render_csv if args.format == "csv" else render_json
    _emit(render(cfg, stats), args.out)
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="altpaths", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, fmt=("json",)):
        p.add_argument("--out", help="write the result here instead of stdout")
        p.add_argument("--format", choices=fmt, default=fmt[0])
        p.add_argument("--timing", action="store_true", help="add wall-clock runtime to reports")

    p = sub.add_parser("gen", help="write a constructed coloring")
    p.add_argument("construction", choices=CONSTRUCTIONS)
    p.add_argument("--m", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--r", type=int, default=2)
    p.add_argument("--k", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("count", help="alternating path or walk counts for every pair")
    p.add_argument("file")
    p.add_argument("--length", type=int, required=True)
    p.add_argument("--flavor", choices=("path", "walk"), default="path")
    p.add_argument("--side", choices=(SIDE_N, SIDE_M), default=SIDE_N, help="class of the first endpoint")
    p.add_argument("--budget", type=int, default=DEFAULT_PATH_BUDGET)
    common(p)
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("pack", help="maximum internally disjoint alternating paths per pair")
    p.add_argument("file")
    p.add_argument("--length", type=int, required=True)
    p.add_argument("--budget", type=int, default=DEFAULT_PACKING_BUDGET)
    p.add_argument("--paths", action="store_true", help="include one optimal family per pair")
    common(p)
    p.set_defaults(func=cmd_pack)

    p = sub.add_parser("search", help="exact extremal values on tiny instances")
    p.add_argument("quantity", choices=("kappa", "lambda", "alpha"))
    p.add_argument("--m", type=int, nargs="+")
    p.add_argument("--n", type=int, nargs="+")
    p.add_argument("--r", type=int, default=2)
    p.add_argument("--length", type=int)
    p.add_argument("--t", type=int, help="minimum distance (alpha)")
    p.add_argument("--flavor", choices=("path", "walk", "both"), default="both")
    p.add_argument("--symmetry", choices=("auto", "on", "off"), default="auto")
    p.add_argument("--budget", type=int, default=DEFAULT_SCAN_BUDGET)
    common(p, ("json", "csv"))
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("verify", help="check a bound on every coloring")
    p.add_argument("family", choices=BOUND_FAMILIES)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int, default=2)
    p.add_argument("--budget", type=int, default=DEFAULT_SCAN_BUDGET)
    common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("mc", help="seeded Monte Carlo experiment")
    p.add_argument("experiment", choices=EXPERIMENTS)
    p.add_argument("--m", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--r", type=int, default=2)
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--alpha", type=float, default=0.3)
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--samples", type=int, default=50, help="subset pairs per trial (matching-deficiency)")
    p.add_argument("--pairs", type=int, default=20, help="vertex pairs per trial (chain-yield)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--yield-factor", type=float, default=0.8)
    p.add_argument("--concentration-factor", type=float, default=0.9)
    p.add_argument("--deficiency-factor", type=float, default=5.0)
    common(p, ("csv", "json"))
    p.set_defaults(func=cmd_mc)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (FormatError, OSError) as exc:
        print(f"altpaths: input error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except BudgetExceeded as exc:
        print(f"altpaths: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except ValueError as exc:
        print(f"altpaths: precondition violated: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION


if __name__ == "__main__":
    sys.exit(main())

"""Seeded Monte Carlo experiments and their per-trial statistics.

Trial t draws from ``make_rng(seed, t)``, so results do not depend on the
order (or process) in which trials run.
"""

from __future__ import annotations

import csv
import io
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np

from .constructions import (
    auto_blockspec,
    build_chain,
    complete_colorings,
    make_rng,
    matching_chain_paths,
    random_bipartite_graph,
    random_coloring,
    theorem31_coloring,
)
from .counting import min_pair_2paths, pair_2path_counts
from .matching import BipartiteSubgraphView, default_pad_size, max_matching, padded_graph

SCHEMA_VERSION = 1

EXPERIMENTS = ("concentration-2path", "matching-deficiency", "complete-2path", "chain-yield")


@dataclass
class ExperimentConfig:
    experiment: str
    seed: int
    trials: int = 20
    m: int | None = None
    n: int | None = None
    r: int = 2
    k: int = 2
    alpha: float = 0.3
    samples: int = 50
    pairs: int = 20
    yield_factor: float = 0.8
    concentration_factor: float = 0.9
    deficiency_factor: float = 5.0
    jobs: int = 1

    def resolved(self) -> "ExperimentConfig":
        """Fill experiment-specific defaults and check preconditions."""
        cfg = ExperimentConfig(**asdict(self))
        if cfg.experiment not in EXPERIMENTS:
            raise ValueError(f"unknown experiment {cfg.experiment!r}; choose from {', '.join(EXPERIMENTS)}")
        defaults = {"concentration-2path": (2000, 100), "matching-deficiency": (200, 200),
                    "complete-2path": (None, 500), "chain-yield": (300, 600)}[cfg.experiment]
        if cfg.m is None:
            cfg.m = defaults[0]
        if cfg.n is None:
            cfg.n = defaults[1]
        if cfg.trials < 1:
            raise ValueError("need at least one trial")
        if cfg.r < 2:
            raise ValueError("need r >= 2")
        if cfg.experiment == "concentration-2path" and (cfg.m < 1 or cfg.n < 2):
            raise ValueError("concentration-2path needs m >= 1 and n >= 2")
        if cfg.experiment == "matching-deficiency":
            if not 0 < cfg.alpha < 1:
                raise ValueError("alpha must lie in (0, 1)")
            if cfg.m < 2 or round(cfg.alpha * cfg.m) < 1:
                raise ValueError("alpha * m must be at least 1")
        if cfg.experiment == "complete-2path" and cfg.n < 3:
            raise ValueError("complete-2path needs n >= 3")
        if cfg.experiment == "chain-yield":
            if cfg.r != 2:
                raise ValueError("chain-yield uses two colors")
            if cfg.m % 2 or cfg.m < 2 * cfg.k or cfg.n < cfg.m:
                raise ValueError("chain-yield needs even m >= 2k and n >= m")
            if cfg.n - cfg.m < 2:
                raise ValueError("chain-yield needs |N''| = n - m >= 2")
        return cfg


@dataclass
class TrialStats:
    columns: tuple[str, ...]
    observations: list[dict] = field(default_factory=list)

    def aggregates(self) -> dict[str, dict[str, float]]:
        out = {}
        for col in self.columns:
            vals = [obs[col] for obs in self.observations]
            if not vals or not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in vals):
                continue
            arr = np.asarray(vals, dtype=float)
            out[col] = {"min": float(arr.min()), "max": float(arr.max()), "mean": float(arr.mean()),
                        "std": float(arr.std(ddof=1)) if arr.size > 1 else 0.0,
                        "q05": float(np.quantile(arr, 0.05)), "q50": float(np.quantile(arr, 0.5)),
                        "q95": float(np.quantile(arr, 0.95))}
        return out


# ---------------------------------------------------------------------------
# trials


def _concentration(cfg: ExperimentConfig, t: int) -> dict:
    coloring = random_coloring(cfg.m, cfg.n, cfg.r, make_rng(cfg.seed, t))
    counts = pair_2path_counts(coloring)
    iu = np.triu_indices(cfg.n, 1)
    low = int(counts[iu].min())
    threshold = cfg.concentration_factor * (1 - 1 / cfg.r) * cfg.m
    return {"min_pair": low, "mean_pair": round(float(counts[iu].mean()), 6),
            "threshold": round(threshold, 6), "ok": int(low >= threshold)}


def _deficiency(cfg: ExperimentConfig, t: int) -> dict:
    rng = make_rng(cfg.seed, t)
    graph = random_bipartite_graph(cfg.m, cfg.m, 0.5, rng)
    size = round(cfg.alpha * cfg.m)
    bound = cfg.deficiency_factor * math.log(cfg.m)
    pad = default_pad_size(cfg.m)
    defs, padded_ok = [], 0
    for _ in range(cfg.samples):
        A = np.sort(rng.choice(cfg.m, size, replace=False))
        B = np.sort(rng.choice(cfg.m, size, replace=False))
        view = BipartiteSubgraphView.from_matrix(graph, A, B)
        defs.append(size - max_matching(view).size)
        padded_ok += max_matching(padded_graph(view, pad)).size == size + pad
    within = sum(d <= bound for d in defs)
    return {"set_size": size, "max_deficiency": max(defs),
            "mean_deficiency": round(float(np.mean(defs)), 6), "within_bound": within,
            "samples": cfg.samples, "bound": round(bound, 6), "padded_perfect": padded_ok}


def _complete(cfg: ExperimentConfig, t: int) -> dict:
    coloring = complete_colorings(cfg.n, cfg.r, make_rng(cfg.seed, t))
    low = min_pair_2paths(coloring)
    threshold = cfg.concentration_factor * (1 - 1 / cfg.r) * cfg.n
    return {"min_pair": low, "threshold": round(threshold, 6), "ok": int(low >= threshold)}


def _sample_pairs(rng, pool, count):
    pool = list(pool)
    out = []
    for _ in range(count):
        a, b = rng.choice(len(pool), 2, replace=False)
        out.append((pool[int(a)], pool[int(b)]))
    return out


def chain_yields(split, k: int, pairs, y_pool):
    """Per pair: (total paths, per-family sizes, number of invalid paths)."""
    out = []
    coloring = split.coloring
    for u, v in pairs:
        spec = auto_blockspec(coloring, u, v, k, y_pool=y_pool)
        fams = [build_chain(coloring, u, v, fam).paths for fam in spec.families]
        paths = matching_chain_paths(coloring, u, v, spec)
        bad = sum(1 for p in paths if p.validate(coloring))
        internal = [p.internal() for p in paths]
        union = frozenset().union(*internal) if internal else frozenset()
        if len(union) != sum(len(s) for s in internal):
            bad += 1
        out.append((len(paths), [len(f) for f in fams], bad))
    return out


def _chain(cfg: ExperimentConfig, t: int) -> dict:
    rng = make_rng(cfg.seed, t)
    split = theorem31_coloring(cfg.m, cfg.n, cfg.k, rng)
    nn = chain_yields(split, cfg.k, _sample_pairs(rng, split.n_double_prime, cfg.pairs), split.n_prime)
    np_ = chain_yields(split, cfg.k, _sample_pairs(rng, split.n_prime, cfg.pairs), split.n_prime)
    per_pattern = [min(fams + [0] * (2 - len(fams))) for _, fams, _ in np_]
    thr_nn = cfg.yield_factor * cfg.m / cfg.k
    thr_np = cfg.yield_factor * cfg.m / (2 * cfg.k)
    invalid = sum(b for _, _, b in nn) + sum(b for _, _, b in np_)
    low_nn = min(y for y, _, _ in nn)
    low_np = min(per_pattern)
    return {"min_yield_nn": low_nn, "min_yield_np_pattern": low_np,
            "threshold_nn": round(thr_nn, 6), "threshold_np": round(thr_np, 6),
            "invalid_paths": invalid,
            "ok": int(low_nn >= thr_nn and low_np >= thr_np and invalid == 0)}


_RUNNERS = {"concentration-2path": _concentration, "matching-deficiency": _deficiency,
            "complete-2path": _complete, "chain-yield": _chain}


def _run_trial(args):
    cfg, t = args
    row = {"trial": t}
    row.update(_RUNNERS[cfg.experiment](cfg, t))
    return row


def run_experiment(config: ExperimentConfig) -> tuple[ExperimentConfig, TrialStats]:
    cfg = config.resolved()
    work = [(cfg, t) for t in range(cfg.trials)]
    if cfg.jobs > 1:
        with ProcessPoolExecutor(cfg.jobs) as pool:
            rows = list(pool.map(_run_trial, work))
    else:
        rows = [_run_trial(w) for w in work]
    return cfg, TrialStats(tuple(rows[0].keys()), rows)


def _fmt(x) -> str:
    if isinstance(x, float):
        return repr(round(x, 6))
    return str(x)


def render_csv(cfg: ExperimentConfig, stats: TrialStats) -> str:
    buf = io.StringIO()
    buf.write(f"# altpaths mc {cfg.experiment} schema={SCHEMA_VERSION}\n")
    buf.write(f"# config {json.dumps(asdict(cfg), sort_keys=True)}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(stats.columns)
    for obs in stats.observations:
        writer.writerow([_fmt(obs[c]) for c in stats.columns])
    agg = stats.aggregates()
    buf.write("# aggregate\n")
    cols = [c for c in stats.columns if c in agg and c != "trial"]
    writer.writerow(["stat", *cols])
    for stat in ("min", "max", "mean", "std", "q05", "q50", "q95"):
        writer.writerow([stat, *(_fmt(agg[c][stat]) for c in cols)])
    return buf.getvalue()


def render_json(cfg: ExperimentConfig, stats: TrialStats) -> str:
    agg = stats.aggregates()
    agg.pop("trial", None)
    doc = {"schema": SCHEMA_VERSION, "experiment": cfg.experiment, "config": asdict(cfg),
           "trials": stats.observations, "aggregates": agg}
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"

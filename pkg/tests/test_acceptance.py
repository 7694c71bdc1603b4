"""Acceptance criteria, one test each, at their stated tolerances.

Each test records a PASS/FAIL line; conftest prints them after the run.
"""

import itertools
import math
import time

import numpy as np
import pytest

import oracles
from altpaths.constructions import (
    block_coloring,
    complete_blockspec,
    complete_colorings,
    make_rng,
    matching_chain_paths,
    random_coloring,
)
from altpaths.core import BLUE, RED, codegree_table, hamming
from altpaths.counting import (
    alt5_objective,
    alt_path_table,
    alt_walk_table,
    count_alt_2paths,
    middle_vertex_2path_count,
    to_digraph,
)
from altpaths.experiments import ExperimentConfig, run_experiment
from altpaths.search import exact_alpha, exact_kappa, exact_lambda, verify_bounds

SEED = 0


@pytest.fixture
def criterion(record_property):
    def record(num, title, ok, detail):
        line = f"{'PASS' if ok else 'FAIL'} {num}. {title}: {detail}"
        record_property("criterion", line)
        print(line)
        assert ok, line
    return record


def test_c01_hamming_equivalence(criterion):
    start = time.perf_counter()
    rng = make_rng(SEED, 1)
    mismatches = pairs = 0
    for _ in range(1000):
        m, n, r = int(rng.integers(1, 9)), int(rng.integers(2, 9)), int(rng.integers(2, 5))
        c = random_coloring(m, n, r, rng)
        for u, v in itertools.combinations(range(n), 2):
            pairs += 1
            mismatches += count_alt_2paths(c, u, v) != hamming(c.vector(u), c.vector(v))
    elapsed = time.perf_counter() - start
    criterion(1, "Hamming equivalence", mismatches == 0 and elapsed < 10,
              f"{pairs} pairs, {mismatches} mismatches, {elapsed:.1f}s (limit 10s)")


def test_c02_counting_bounds_exhaustive(criterion):
    start = time.perf_counter()
    violations, notes = 0, []
    for m, n in ((2, 2), (2, 3), (3, 2), (3, 3)):
        for family in ("lemma43_p3", "lemma43_p4", "eq45"):
            rep = verify_bounds(family, m, n)
            violations += rep.total - rep.holding
            notes.append(f"{family}({m},{n}) max {rep.max_value}/{rep.bound}")
    elapsed = time.perf_counter() - start
    criterion(2, "3-path, 4-sequence and mixed-codegree bounds, exhaustive",
              violations == 0 and elapsed < 120,
              f"{violations} violations, {elapsed:.1f}s (limit 120s); " + ", ".join(notes[-3:]))


def test_c03_identity_suite(criterion):
    rng = make_rng(SEED, 3)
    bad = 0
    for _ in range(10000):
        m, n = int(rng.integers(1, 10)), int(rng.integers(1, 10))
        c = random_coloring(m, n, 2, rng)
        side = "M" if rng.random() < 0.5 else "N"
        size = c.size(side)
        if size < 2:
            side, size = ("N", n) if side == "M" else ("M", m)
        if size < 2:
            c = random_coloring(m, 2, 2, rng)
            side, size = "N", 2
        u, v = (int(x) for x in rng.choice(size, 2, replace=False))
        t = codegree_table(c, u, v, side)
        # plain scan of the two color vectors
        cu, cv = c.vector(u, side), c.vector(v, side)
        br = sum(1 for a, b in zip(cu, cv) if a == BLUE and b == RED)
        rb = sum(1 for a, b in zip(cu, cv) if a == RED and b == BLUE)
        xb_u, xb_v = cu.count(BLUE), cv.count(BLUE)
        cuv = br + rb
        ok = (t.codeg(BLUE, RED) == br and t.codeg(RED, BLUE) == rb
              and t.deg(u, BLUE) == xb_u and t.deg(v, BLUE) == xb_v
              and t.codeg(BLUE, RED) - t.codeg(RED, BLUE) == t.deg(u, BLUE) - t.deg(v, BLUE)
              and 2 * t.codeg(BLUE, RED) == t.mixed + t.deg(u, BLUE) - t.deg(v, BLUE)
              and 2 * t.codeg(RED, BLUE) == t.mixed - t.deg(u, BLUE) + t.deg(v, BLUE)
              and t.mixed == cuv)
        bad += not ok
    double = 0
    for _ in range(1000):
        m, n, r = int(rng.integers(1, 10)), int(rng.integers(2, 10)), int(rng.integers(2, 5))
        c = random_coloring(m, n, r, rng)
        lhs = sum(middle_vertex_2path_count(c, w) for w in range(m))
        rhs = sum(count_alt_2paths(c, u, v) for u, v in itertools.combinations(range(n), 2))
        double += lhs != rhs
    criterion(3, "codegree identities and reconstructions", bad == 0 and double == 0,
              f"{bad}/10000 identity failures, {double}/1000 double-counting failures")


def test_c04_digraph_reduction(criterion):
    rng = make_rng(SEED, 4)
    bad = checked = 0
    for _ in range(200):
        m, n = int(rng.integers(1, 8)), int(rng.integers(1, 8))
        c = random_coloring(m, n, 2, rng)
        dg = to_digraph(c)
        offset = {"M": 0, "N": m}
        for length in range(1, 9):
            power = dg.directed_walk_counts(length)
            for side in ("M", "N"):
                table = alt_walk_table(c, length, side)
                ia = offset[table.from_side] + np.arange(c.size(table.from_side))
                ib = offset[table.to_side] + np.arange(c.size(table.to_side))
                ref = power[np.ix_(ia, ib)] + power[np.ix_(ib, ia)].T
                checked += 1
                bad += not np.array_equal(table.counts, ref)
    criterion(4, "digraph reduction", bad == 0,
              f"{checked} (coloring, length, class) tables, {bad} mismatches")


def _oracle_instances():
    for m in range(1, 10):
        for n in range(1, 10):
            if m * n > 9:
                continue
            for length in range(1, 6):
                if length % 2 == 0 and n < 2:
                    continue
                yield m, n, length


def test_c05_oracle_equivalence(criterion):
    bad = []
    count = 0
    for m, n, length in _oracle_instances():
        kappa = oracles.naive_kappa(m, n, 2, length)
        for symmetry in (None, True):
            count += 1
            if exact_kappa(m, n, 2, length, symmetry=symmetry).value != kappa:
                bad.append(("kappa", m, n, length, symmetry))
        for flavor in ("walk", "path"):
            lam = oracles.naive_lambda(m, n, length, flavor)
            for symmetry in (None, True):
                count += 1
                if exact_lambda(m, n, length, flavor, symmetry=symmetry).value != lam:
                    bad.append((flavor, m, n, length, symmetry))
        if 3 ** (m * n) <= 729 and length <= 3:
            count += 1
            if exact_kappa(m, n, 3, length).value != oracles.naive_kappa(m, n, 3, length):
                bad.append(("kappa r=3", m, n, length))
    k222 = exact_kappa(2, 2, 2, 2).value
    a322 = exact_alpha(3, 2, 2).value
    ok = not bad and k222 == 2 and a322 == 4
    criterion(5, "oracle equivalence", ok,
              f"{count} comparisons on mn <= 9, mismatches {bad[:3]}; "
              f"kappa(2,2,2,2)={k222}, alpha(3,2,2)={a322}")


def test_c06_kappa24_trend(criterion):
    start = time.perf_counter()
    sweep2 = [(n, exact_kappa(2, n, 2, 4).value) for n in range(2, 25)]
    sweep3 = [(n, exact_kappa(3, n, 2, 4).value) for n in range(3, 17)]
    elapsed = time.perf_counter() - start
    tail2 = {v for n, v in sweep2 if n >= 6}
    tail3 = {v for n, v in sweep3 if n >= 6}
    ok = (tail2 == {0} and tail3 == {1} and sweep2[-1][1] == 0 and sweep3[-1][1] == 1
          and elapsed < 600)
    criterion(6, "kappa_{2,4} trend", ok,
              f"m=2: {sweep2[:6]}... n={sweep2[-1][0]} -> {sweep2[-1][1]}; "
              f"m=3: {sweep3[:4]}... n={sweep3[-1][0]} -> {sweep3[-1][1]}; {elapsed:.0f}s")


def test_c07_concentration(criterion):
    start = time.perf_counter()
    cfg, stats = run_experiment(ExperimentConfig("concentration-2path", SEED, trials=20,
                                                 m=2000, n=100, r=2))
    elapsed = time.perf_counter() - start
    mins = [obs["min_pair"] for obs in stats.observations]
    threshold = 0.9 * (1 - 1 / 2) * 2000
    failing = [(obs["trial"], obs["min_pair"]) for obs in stats.observations if obs["min_pair"] < threshold]
    criterion(7, "2-path concentration", not failing and elapsed < 60,
              f"min-pair over trials {min(mins)}..{max(mins)}, threshold {threshold:g}, "
              f"failing trials {failing}, {elapsed:.1f}s")


def test_c08_matching_deficiency(criterion):
    start = time.perf_counter()
    cfg, stats = run_experiment(ExperimentConfig("matching-deficiency", SEED, trials=10,
                                                 m=200, alpha=0.3, samples=50))
    elapsed = time.perf_counter() - start
    within = sum(obs["within_bound"] for obs in stats.observations)
    total = sum(obs["samples"] for obs in stats.observations)
    worst = max(obs["max_deficiency"] for obs in stats.observations)
    ok = within >= 0.98 * total and elapsed < 60
    criterion(8, "matching deficiency", ok,
              f"{within}/{total} samples within 5 ln m = {5 * math.log(200):.2f}, "
              f"worst deficiency {worst}, {elapsed:.1f}s")


def test_c09_chain_yield(criterion):
    start = time.perf_counter()
    cfg, stats = run_experiment(ExperimentConfig("chain-yield", SEED, trials=1, m=300, n=600,
                                                 k=2, pairs=20))
    elapsed = time.perf_counter() - start
    obs = stats.observations[0]
    ok = (obs["min_yield_nn"] >= 0.8 * 300 / 2 and obs["min_yield_np_pattern"] >= 0.8 * 300 / 4
          and obs["invalid_paths"] == 0 and elapsed < 60)
    criterion(9, "chain-builder yield", ok,
              f"N'' min {obs['min_yield_nn']} (need 120), N' per-pattern min "
              f"{obs['min_yield_np_pattern']} (need 60), invalid {obs['invalid_paths']}, {elapsed:.1f}s")


def test_c10_complete_graphs(criterion):
    cfg, stats = run_experiment(ExperimentConfig("complete-2path", SEED, trials=1, n=500, r=3))
    low = stats.observations[0]["min_pair"]
    part_a = low >= 0.9 * (1 - 1 / 3) * 500

    n, length = 400, 5
    k = complete_colorings(n, 2, make_rng(SEED, 10))
    rng = make_rng(SEED, 10, 1)
    yields, invalid = [], 0
    for _ in range(10):
        u, v = (int(x) for x in rng.choice(n, 2, replace=False))
        paths = matching_chain_paths(k, u, v, complete_blockspec(k, u, v, length))
        invalid += sum(1 for p in paths if p.validate(k) or p.length != length)
        inner = [p.internal() for p in paths]
        if len(frozenset().union(*inner)) != sum(len(s) for s in inner):
            invalid += 1
        yields.append(len(paths))
    part_b = min(yields) >= 0.7 * n / (length - 1) and invalid == 0
    criterion(10, "complete-graph 2-paths and chains", part_a and part_b,
              f"(a) n=500 r=3 min-pair {low} vs {0.9 * 2 / 3 * 500:g} -> {'ok' if part_a else 'short'}; "
              f"(b) n=400 l=5 yields {min(yields)}..{max(yields)} vs {0.7 * n / (length - 1):g}, "
              f"invalid {invalid} -> {'ok' if part_b else 'short'}")


def test_c11_block_and_alt5(criterion):
    c = block_coloring(40, 40)
    table = alt_path_table(c, 3, "M").counts
    low = int(table.min())
    part_a = low >= 0.85 * 40 * 40 / 4
    rng = make_rng(SEED, 11)
    bad = 0
    for m, n in ((3, 3), (4, 4)):
        for _ in range(100):
            col = random_coloring(m, n, 2, rng)
            exact = int(alt_path_table(col, 5, "M").counts.sum())
            bad += alt5_objective(col) < exact
    # the enumerator itself against the independent oracle on a few instances
    for _ in range(5):
        col = random_coloring(3, 3, 2, rng)
        bad += int(alt_path_table(col, 5, "M").counts.sum()) != len(
            oracles.enum_distinct_paths(col.colors.tolist(), 5))
    criterion(11, "block 3-paths and alt5 dominance", part_a and bad == 0,
              f"block(40,40) min cross-pair 3-paths {low} vs {0.85 * 400:g}; "
              f"alt5 dominance failures {bad}/200")

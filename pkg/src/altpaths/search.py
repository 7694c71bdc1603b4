"""Exhaustive extremal search on tiny instances.

``exact_kappa`` and ``exact_lambda`` scan every coloring of K_{m,n}, optionally
only one representative per orbit under color permutations and permutations
within each class. ``max_disjoint_paths`` is an exact branch-and-bound set
packing over the enumerated alternating paths of one pair.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator

import numpy as np

from .core import SIDE_M, SIDE_N, BudgetExceeded, Code, ColoringMatrix, CompleteColoring, PathRecord
from .counting import (
    DEFAULT_PATH_BUDGET,
    alt_paths,
    alt_walk_table,
    count_alt_paths_exact,
    kappa2_upper_bound,
    min_pair_2paths,
    sum_mixed_codegrees,
    total_alt_p3,
    total_alt_p4,
)

DEFAULT_SCAN_BUDGET = 10**6
DEFAULT_PACKING_BUDGET = 10**7
SYMMETRY_THRESHOLD = 2**12  # raw colorings above this are scanned up to symmetry
ROW_SYMMETRY_LIMIT = 2 * 10**6  # max (group size) x r^m entries tabulated for row permutations


@dataclass(frozen=True)
class PackingResult:
    size: int
    paths: tuple[PathRecord, ...]
    candidates: int = 0  # number of alternating paths packed over


@dataclass(frozen=True)
class ExtremalResult:
    value: int
    witness: object  # ColoringMatrix or Code
    scanned: int
    reduced: bool = False
    exhaustive: bool = True
    pair_values: dict = field(default_factory=dict, repr=False, compare=False)


# ---------------------------------------------------------------------------
# packing


def _internal_masks(paths: list[PathRecord], index: dict) -> list[int]:
    masks = []
    for p in paths:
        mask = 0
        for key in p.internal():
            mask |= 1 << index.setdefault(key, len(index))
        masks.append(mask)
    return masks


def _usage(path: PathRecord) -> dict[str, int]:
    out: dict[str, int] = {}
    for side, _ in path.internal():
        out[side] = out.get(side, 0) + 1
    return out


def _pack(masks: list[int], usage: dict[str, int], class_bits: dict[str, int], budget: int):
    """Maximum number of pairwise disjoint masks; returns the chosen indices."""
    order = sorted(range(len(masks)), key=lambda i: (bin(masks[i]).count("1"), i))

    greedy, used = [], 0
    for i in order:
        if masks[i] & used == 0:
            greedy.append(i)
            used |= masks[i]
    best = list(greedy)
    nodes = 0

    def capacity(cands: list[int], used: int) -> int:
        avail = 0
        for i in cands:
            avail |= masks[i]
        avail &= ~used
        cap = len(cands)
        for side, per_path in usage.items():
            cap = min(cap, bin(avail & class_bits[side]).count("1") // per_path)
        return cap

    def rec(cands: list[int], used: int, chosen: list[int]):
        nonlocal best, nodes
        nodes += 1
        if nodes > budget:
            raise BudgetExceeded("disjoint path packing", budget)
        if not cands:
            if len(chosen) > len(best):
                best = list(chosen)
            return
        if len(chosen) + capacity(cands, used) <= len(best):
            return
        first, rest = cands[0], cands[1:]
        chosen.append(first)
        rec([i for i in rest if masks[i] & masks[first] == 0], used | masks[first], chosen)
        chosen.pop()
        rec(rest, used, chosen)

    if usage:
        rec(order, 0, [])
    return best


def max_disjoint_paths(coloring, u: int, v: int, length: int, budget: int = DEFAULT_PACKING_BUDGET,
                       a_side: str = SIDE_N, path_budget: int = DEFAULT_PATH_BUDGET) -> PackingResult:
    """Largest family of internally disjoint alternating u-v paths with ``length`` edges.

    ``a_side`` is the class of u in a bipartite host; v lies in the class fixed
    by the parity of ``length``.
    """
    paths = alt_paths(coloring, u, v, length, a_side=a_side, budget=path_budget)
    if not paths:
        return PackingResult(0, (), 0)
    index: dict = {}
    masks = _internal_masks(paths, index)
    class_bits: dict[str, int] = {}
    for (side, _), bit in index.items():
        class_bits[side] = class_bits.get(side, 0) | (1 << bit)
    chosen = _pack(masks, _usage(paths[0]), class_bits, budget)
    return PackingResult(len(chosen), tuple(paths[i] for i in sorted(chosen)), len(paths))


# ---------------------------------------------------------------------------
# enumeration of colorings


def relevant_pairs(m: int, n: int, length: int) -> list[tuple[str, int, int]]:
    """(class of a, a, b): pairs of N for even length, M x N for odd length."""
    if length % 2 == 0:
        return [(SIDE_N, a, b) for a, b in itertools.combinations(range(n), 2)]
    return [(SIDE_M, a, b) for a in range(m) for b in range(n)]


def pair_capacity(m: int, n: int, length: int) -> int:
    """Most internally disjoint alternating paths any pair can have in K_{m,n}."""
    k = length // 2
    if length == 1:
        return 1
    if length % 2 == 0:
        cap = m // k
        if k >= 2:
            cap = min(cap, (n - 2) // (k - 1))
        return cap
    return min((m - 1) // k, (n - 1) // k)


def _vectors(m: int, r: int) -> list[tuple[int, ...]]:
    return list(itertools.product(range(1, r + 1), repeat=m))


def _symmetry_maps(m: int, r: int) -> list[list[int]]:
    """Index maps on [r]^m induced by (row permutation, color permutation).

    Row permutations are dropped when the full table would be too large; any
    subgroup still leaves one representative per orbit.
    """
    vecs = _vectors(m, r)
    pos = {v: i for i, v in enumerate(vecs)}
    maps = []
    rows_ok = math.factorial(m) * math.factorial(r) * len(vecs) <= ROW_SYMMETRY_LIMIT
    row_perms = itertools.permutations(range(m)) if rows_ok else [tuple(range(m))]
    for perm in row_perms:
        for sigma in itertools.permutations(range(1, r + 1)):
            maps.append([pos[tuple(sigma[vec[perm[i]] - 1] for i in range(m))] for vec in vecs])
    return maps


def count_colorings(m: int, n: int, r: int, reduced: bool) -> int:
    if reduced:
        return math.comb(r**m + n - 1, n)
    return r ** (m * n)


def iter_colorings(m: int, n: int, r: int, reduced: bool) -> Iterator[np.ndarray]:
    """Color tables of K_{m,n}, all of them or one per symmetry orbit.

    The reduced scan walks column multisets (N-permutations) in lexicographic
    order and keeps a multiset only if no row/color permutation maps it to a
    lexicographically smaller one.
    """
    vecs = np.array(_vectors(m, r), dtype=np.int64)
    if not reduced:
        for flat in itertools.product(range(1, r + 1), repeat=m * n):
            yield np.array(flat, dtype=np.int64).reshape(m, n)
        return
    maps = _symmetry_maps(m, r)
    for combo in itertools.combinations_with_replacement(range(len(vecs)), n):
        if any(tuple(sorted(mp[i] for i in combo)) < combo for mp in maps):
            continue
        yield vecs[list(combo)].T


def _resolve_reduced(m: int, n: int, r: int, symmetry) -> bool:
    if symmetry is None:
        return r ** (m * n) > SYMMETRY_THRESHOLD
    return bool(symmetry)


def _scan(m: int, n: int, r: int, length: int, evaluator, cap: int | None,
          budget: int, symmetry) -> ExtremalResult:
    """max over colorings of min over relevant pairs.

    ``evaluator(coloring)`` returns the per-pair function ``value(side, a, b)``.

    A coloring is abandoned as soon as one pair falls to the best value so far;
    the scan stops once ``cap`` is reached.
    """
    reduced = _resolve_reduced(m, n, r, symmetry)
    total = count_colorings(m, n, r, reduced)
    if total > budget:
        raise BudgetExceeded(f"scan of {total} colorings of K_{{{m},{n}}}", budget)
    pairs = relevant_pairs(m, n, length)
    if not pairs:
        raise ValueError(f"no relevant pairs in K_{{{m},{n}}} for length {length}")
    best, witness, scanned, best_pairs = -1, None, 0, {}
    for table in iter_colorings(m, n, r, reduced):
        scanned += 1
        coloring = ColoringMatrix(table, r)
        pair_value = evaluator(coloring)
        worst = math.inf
        values = {}
        for side, a, b in pairs:
            val = pair_value(side, a, b)
            values[(side, a, b)] = val
            worst = min(worst, val)
            if worst <= best:
                break
        if worst > best:
            best, witness, best_pairs = int(worst), coloring, values
            if cap is not None and best >= cap:
                break
    return ExtremalResult(best, witness, scanned, reduced, True, best_pairs)


def exact_kappa(m: int, n: int, r: int, length: int, budget: int = DEFAULT_SCAN_BUDGET,
                symmetry: bool | None = None, packing_budget: int = DEFAULT_PACKING_BUDGET) -> ExtremalResult:
    """Largest t such that some r-coloring of K_{m,n} joins every relevant pair
    by t internally disjoint alternating paths of ``length`` edges.

    Relevant pairs: pairs of N for even length, M x N for odd length.
    """
    if r < 2 or m < 1 or n < 1 or length < 1:
        raise ValueError("need r >= 2, m, n >= 1 and length >= 1")
    cap = pair_capacity(m, n, length)
    if length == 2:
        cap = min(cap, math.floor(kappa2_upper_bound(m, n, r))) if n >= 2 else cap

    def evaluator(coloring):
        return lambda side, a, b: max_disjoint_paths(coloring, a, b, length, packing_budget,
                                                     a_side=side).size

    return _scan(m, n, r, length, evaluator, cap, budget, symmetry)


def exact_lambda(m: int, n: int, length: int, flavor: str = "path", budget: int = DEFAULT_SCAN_BUDGET,
                 symmetry: bool | None = None, path_budget: int = DEFAULT_PATH_BUDGET) -> ExtremalResult:
    """Largest t such that some 2-coloring of K_{m,n} joins every relevant pair by
    t alternating walks (``flavor="walk"``) or distinct-vertex paths (``"path"``)
    of ``length`` edges.
    """
    if m < 1 or n < 1 or length < 1:
        raise ValueError("need m, n >= 1 and length >= 1")
    if flavor == "walk":
        def evaluator(coloring):
            tables = {}

            def value(side, a, b):
                if side not in tables:
                    tables[side] = alt_walk_table(coloring, length, side).counts
                return int(tables[side][a, b])
            return value
    elif flavor == "path":
        def evaluator(coloring):
            return lambda side, a, b: count_alt_paths_exact(coloring, a, b, length, a_side=side,
                                                            budget=path_budget)
    else:
        raise ValueError(f"unknown flavor {flavor!r}")
    return _scan(m, n, 2, length, evaluator, None, budget, symmetry)


def kappa_sweep(m: int, ns, r: int, length: int, **kwargs) -> list[tuple[int, int]]:
    """(n, exact_kappa(m, n, r, length)) over ``ns``."""
    return [(n, exact_kappa(m, n, r, length, **kwargs).value) for n in ns]


# ---------------------------------------------------------------------------
# codes


def exact_alpha(m: int, t: int, r: int, budget: int = DEFAULT_SCAN_BUDGET) -> ExtremalResult:
    """Largest code in [r]^m with pairwise Hamming distance >= t.

    Backtracking over words in lexicographic order. A coordinatewise relabeling
    of letters maps any code onto one containing the all-ones word, which is
    then its smallest element, so the search always starts there.
    """
    if m < 1 or r < 2:
        raise ValueError("need m >= 1 and r >= 2")
    if r**m > budget:
        raise BudgetExceeded(f"word space [{r}]^{m}", budget)
    words = _vectors(m, r)
    arr = np.array(words, dtype=np.int64)
    far = (arr[:, None, :] != arr[None, :, :]).sum(axis=2) >= t
    adj = [set(np.flatnonzero(far[i]).tolist()) for i in range(len(words))]

    best = [0]
    nodes = 0

    def rec(chosen: list[int], cands: list[int]):
        nonlocal best, nodes
        nodes += 1
        if nodes > budget:
            raise BudgetExceeded("code search", budget)
        if len(chosen) > len(best):
            best = list(chosen)
        if len(chosen) + len(cands) <= len(best):
            return
        for pos, w in enumerate(cands):
            if len(chosen) + len(cands) - pos <= len(best):
                return
            chosen.append(w)
            rec(chosen, [x for x in cands[pos + 1:] if x in adj[w]])
            chosen.pop()

    rec([0], [x for x in range(1, len(words)) if x in adj[0]])
    code = Code(tuple(words[i] for i in best), r)
    return ExtremalResult(len(best), code, nodes, reduced=True)


# ---------------------------------------------------------------------------
# bound verification


@dataclass(frozen=True)
class BoundReport:
    family: str
    m: int
    n: int
    r: int
    bound: Fraction
    total: int
    holding: int
    max_value: int
    witness: ColoringMatrix

    @property
    def holds(self) -> bool:
        return self.holding == self.total

    @property
    def gap(self) -> Fraction:
        return self.bound - self.max_value

    def summary(self) -> str:
        verdict = "holds" if self.holds else "FAILS"
        return f"{verdict} on {self.holding}/{self.total} colorings, max {self.max_value}"

    def to_json(self) -> dict:
        return {"family": self.family, "m": self.m, "n": self.n, "r": self.r,
                "bound": str(self.bound), "total": self.total, "holding": self.holding,
                "max": self.max_value, "gap": str(self.gap), "holds": self.holds,
                "summary": self.summary()}


BOUND_FAMILIES = ("lemma22", "lemma43_p3", "lemma43_p4", "eq45")


def bound_value(family: str, m: int, n: int, r: int) -> Fraction:
    if family == "lemma22":
        return Fraction(math.floor(kappa2_upper_bound(m, n, r)))
    if family == "lemma43_p3":
        return Fraction(m * m * n * n, 4)
    if family == "lemma43_p4":
        return Fraction(m * m * n**3, 16)
    if family == "eq45":
        return Fraction(m * m * n, 4)
    raise ValueError(f"unknown bound family {family!r}")


def verify_bounds(family: str, m: int, n: int, r: int = 2, budget: int = DEFAULT_SCAN_BUDGET) -> BoundReport:
    """Check one inequality on every coloring of K_{m,n}.

    lemma22: min over N-pairs of the 2-path count <= floor((1-1/r)(1+1/(n-1))m).
    lemma43_p3 / lemma43_p4 / eq45 (two colors): total 3-paths <= m^2 n^2/4,
    total 4-sequences <= m^2 n^3/16, sum of c(u, v) <= m^2 n/4.
    """
    if family == "lemma22":
        if n < 2:
            raise ValueError("lemma22 needs n >= 2")
        evaluate = min_pair_2paths
    else:
        if r != 2:
            raise ValueError(f"{family} is a two-color bound")
        evaluate = {"lemma43_p3": total_alt_p3, "lemma43_p4": total_alt_p4,
                    "eq45": sum_mixed_codegrees}.get(family)
        if evaluate is None:
            raise ValueError(f"unknown bound family {family!r}")
    bound = bound_value(family, m, n, r)
    total = r ** (m * n)
    if total > budget:
        raise BudgetExceeded(f"scan of {total} colorings", budget)
    holding, best, witness = 0, -1, None
    for table in iter_colorings(m, n, r, reduced=False):
        coloring = ColoringMatrix(table, r)
        val = evaluate(coloring)
        holding += val <= bound
        if val > best:
            best, witness = val, coloring
    return BoundReport(family, m, n, r, bound, total, holding, best, witness)

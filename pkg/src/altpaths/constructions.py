"""Explicit and random colorings, and the matching-chain path builder.

The chain builder realises internally disjoint alternating u-v paths by
chaining color-restricted matchings between disjoint vertex blocks
(u -> X_B(u) -> Y_1 -> X_1 -> ... -> X_R(v) -> v). Blocks are carved greedily
from the codegree classes N_xy(u, v) by ``auto_blockspec`` (bipartite hosts)
and ``complete_blockspec`` (K_n).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .core import (
    BLUE,
    RED,
    SIDE_K,
    SIDE_M,
    SIDE_N,
    ColoringMatrix,
    CompleteColoring,
    PathRecord,
    other_side,
)
from .matching import color_matching


def make_rng(seed, *stream: int) -> np.random.Generator:
    """Generator for ``seed`` and a counter-style stream key.

    ``make_rng(seed, t)`` gives trial t its own independent stream, so trials
    can run in any order.
    """
    ss = np.random.SeedSequence(entropy=int(seed), spawn_key=tuple(int(s) for s in stream))
    return np.random.default_rng(ss)


def _as_rng(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    if seed is None:
        raise ValueError("a seed is required")
    return make_rng(seed)


def flip(color: int) -> int:
    return BLUE if color == RED else RED


def random_coloring(m: int, n: int, r: int, seed) -> ColoringMatrix:
    """Every edge of K_{m,n} gets a uniform color from [r], independently."""
    if r < 2:
        raise ValueError("need r >= 2")
    if m < 1 or n < 1:
        raise ValueError("need m, n >= 1")
    rng = _as_rng(seed)
    return ColoringMatrix(rng.integers(1, r + 1, size=(m, n)), r)


def random_bipartite_graph(m: int, n: int, p: float, seed) -> np.ndarray:
    """G(m, n, p) as an m x n bool matrix."""
    rng = _as_rng(seed)
    return rng.random((m, n)) < p


def block_coloring(m: int, n: int) -> ColoringMatrix:
    """M = M1 + M2, N = N1 + N2; edges inside M1 x N1 and M2 x N2 red, the rest blue.

    Odd classes put the extra vertex in the first block.
    """
    if m < 1 or n < 1:
        raise ValueError("need m, n >= 1")
    m1, n1 = (m + 1) // 2, (n + 1) // 2
    in_first_m = np.arange(m) < m1
    in_first_n = np.arange(n) < n1
    same = in_first_m[:, None] == in_first_n[None, :]
    return ColoringMatrix(np.where(same, RED, BLUE), 2)


@dataclass(frozen=True)
class SplitColoring:
    """A coloring of K_{m,n} with N split into N' (random part) and N'' (shared vector)."""

    coloring: ColoringMatrix
    n_prime: tuple[int, ...]
    n_double_prime: tuple[int, ...]
    shared_vector: tuple[int, ...]


def theorem31_coloring(m: int, n: int, k: int, seed) -> SplitColoring:
    """N' = the first m vertices of N, colored uniformly at random with two colors;
    every vertex of N'' = the rest gets one common balanced color vector
    (m/2 red, m/2 blue, positions drawn from the seed).
    """
    if m % 2:
        raise ValueError(f"m={m} is odd: the N'' vertices need a balanced color vector "
                         "with m/2 red and m/2 blue edges")
    if k < 1 or m < 2 * k:
        raise ValueError(f"need m >= 2k (m={m}, k={k})")
    if n < m:
        raise ValueError(f"need n >= m (m={m}, n={n})")
    rng = _as_rng(seed)
    colors = np.empty((m, n), dtype=np.int64)
    colors[:, :m] = rng.integers(1, 3, size=(m, m))
    shared = np.full(m, BLUE, dtype=np.int64)
    shared[rng.permutation(m)[: m // 2]] = RED
    colors[:, m:] = shared[:, None]
    return SplitColoring(ColoringMatrix(colors, 2), tuple(range(m)), tuple(range(m, n)),
                         tuple(int(x) for x in shared))


def odd_path_coloring(m: int, n: int) -> ColoringMatrix:
    """Red perfect matching {u, u} saturating M, every other edge blue."""
    if n < m:
        raise ValueError(f"need n >= m (m={m}, n={n})")
    colors = np.full((m, n), BLUE, dtype=np.int64)
    colors[np.arange(m), np.arange(m)] = RED
    return ColoringMatrix(colors, 2)


def complete_colorings(n: int, r: int, seed) -> CompleteColoring:
    """Uniform random r-coloring of K_n."""
    if n < 2:
        raise ValueError("need n >= 2")
    if r < 2:
        raise ValueError("need r >= 2")
    rng = _as_rng(seed)
    upper = np.triu(rng.integers(1, r + 1, size=(n, n)), 1)
    return CompleteColoring(upper + upper.T, r)


# ---------------------------------------------------------------------------
# block specifications


@dataclass(frozen=True)
class ChainFamily:
    """Blocks of one path family, in path order from u to v.

    u is joined to ``blocks[0]`` in ``start_color``; consecutive blocks are
    matched in alternating colors. For a bipartite host the blocks alternate
    classes starting with ``first_side``.
    """

    blocks: tuple[tuple[int, ...], ...]
    start_color: int
    first_side: str = SIDE_M
    label: str = ""

    @property
    def length(self) -> int:
        return len(self.blocks) + 1

    def block_side(self, i: int) -> str:
        if self.first_side == SIDE_K:
            return SIDE_K
        return self.first_side if i % 2 == 0 else other_side(self.first_side)

    def edge_color(self, i: int) -> int:
        """Color of the i-th edge of every path (0-based)."""
        return self.start_color if i % 2 == 0 else flip(self.start_color)

    @property
    def achieved_size(self) -> int:
        return min((len(b) for b in self.blocks), default=0)


@dataclass(frozen=True)
class BlockSpec:
    families: tuple[ChainFamily, ...]
    target_size: int
    endpoint_side: str = SIDE_N

    @property
    def block_sizes(self) -> list[list[int]]:
        return [[len(b) for b in fam.blocks] for fam in self.families]


class _Carver:
    """Hands out unused vertices per class, in index order."""

    def __init__(self, reserved: dict[str, set[int]]):
        self.used = {side: set(vs) for side, vs in reserved.items()}

    def take(self, side: str, pool, size: int) -> tuple[int, ...]:
        used = self.used.setdefault(side, set())
        out = []
        for w in pool:
            if len(out) == size:
                break
            if w not in used:
                out.append(int(w))
        used.update(out)
        return tuple(out)


def _classes(coloring, u: int, v: int, side: str):
    """N_xy(u, v) as sorted index arrays, keyed by (x, y)."""
    if isinstance(coloring, CompleteColoring):
        cu, cv = coloring.colors[:, u], coloring.colors[:, v]
        mask = np.ones(coloring.n, dtype=bool)
        mask[[u, v]] = False
    else:
        vecs = coloring.vectors(side)
        cu, cv = vecs[u], vecs[v]
        mask = np.ones(cu.shape[0], dtype=bool)
    return {(x, y): np.flatnonzero(mask & (cu == x) & (cv == y))
            for x in (RED, BLUE) for y in (RED, BLUE)}


def _family(carver: _Carver, start_color: int, first_pool, inner_pool, last_pool,
            y_pool, k: int, size: int, label: str) -> ChainFamily | None:
    """Blocks X_first, Y_1, X_1, ..., Y_{k-1}, X_last for a bipartite 2k-chain."""
    first = carver.take(SIDE_M, first_pool, size)
    last = carver.take(SIDE_M, last_pool, size)
    inner_x = [carver.take(SIDE_M, inner_pool, size) for _ in range(k - 2)]
    ys = [carver.take(SIDE_N, y_pool, size) for _ in range(k - 1)]
    blocks = [first]
    for i in range(k - 1):
        blocks.append(ys[i])
        blocks.append(inner_x[i] if i < k - 2 else last)
    if any(len(b) == 0 for b in blocks):
        return None
    return ChainFamily(tuple(blocks), start_color, SIDE_M, label)


def auto_blockspec(coloring: ColoringMatrix, u: int, v: int, k: int,
                   y_pool: Sequence[int] | None = None, scheme: str = "auto") -> BlockSpec:
    """Greedy disjoint blocks for 2k-paths between u, v in N.

    ``scheme="pair"`` carves two families of target size m/(2k):
    X_B(u) in N_BR, X_R(v) in N_RR, X_i in N_BR + N_RR, and the primed family
    X'_R(u) in N_RB, X'_B(v) in N_BB, X'_i in N_RB + N_BB; Y-blocks come from
    ``y_pool`` (default: all of N).
    ``scheme="shared"`` (u and v with equal color vectors) carves one family of
    target size m/k: X_B(u) from the blue neighbours of u, X_R(v) from the red
    neighbours of v, X_i from the rest of M. ``"auto"`` picks ``shared`` exactly
    when c_u = c_v. For k = 1 the families are single blocks N_BR and N_RB.

    Blocks may fall short of the target; a family with an empty block is
    dropped.
    """
    if coloring.r != 2:
        raise ValueError("block carving needs a 2-coloring")
    if u == v:
        raise ValueError("endpoints must differ")
    if k < 1:
        raise ValueError("need k >= 1")
    m = coloring.m
    cls = _classes(coloring, u, v, SIDE_N)
    if k == 1:
        fams = [ChainFamily((tuple(int(w) for w in cls[BLUE, RED]),), BLUE, SIDE_M, "BR"),
                ChainFamily((tuple(int(w) for w in cls[RED, BLUE]),), RED, SIDE_M, "RB")]
        return BlockSpec(tuple(f for f in fams if f.blocks[0]), 0)

    if scheme == "auto":
        scheme = "shared" if np.array_equal(coloring.colors[:, u], coloring.colors[:, v]) else "pair"
    if y_pool is None:
        y_pool = range(coloring.n)
    y_pool = [int(y) for y in y_pool if y != u and y != v]
    carver = _Carver({SIDE_N: {u, v}})

    if scheme == "shared":
        size = m // k
        blue_u = np.flatnonzero(coloring.colors[:, u] == BLUE)
        red_v = np.flatnonzero(coloring.colors[:, v] == RED)
        fam = _family(carver, BLUE, blue_u, range(m), red_v, y_pool, k, size, "shared")
        return BlockSpec(tuple(f for f in [fam] if f is not None), size)
    if scheme != "pair":
        raise ValueError(f"unknown scheme {scheme!r}")

    size = m // (2 * k)
    unprimed_inner = np.union1d(cls[BLUE, RED], cls[RED, RED])
    primed_inner = np.union1d(cls[RED, BLUE], cls[BLUE, BLUE])
    fams = [
        _family(carver, BLUE, cls[BLUE, RED], unprimed_inner, cls[RED, RED], y_pool, k, size, "BR/RR"),
        _family(carver, RED, cls[RED, BLUE], primed_inner, cls[BLUE, BLUE], y_pool, k, size, "RB/BB"),
    ]
    return BlockSpec(tuple(f for f in fams if f is not None), size)


def complete_blockspec(coloring: CompleteColoring, u: int, v: int, length: int) -> BlockSpec:
    """Greedy disjoint blocks for alternating u-v paths of ``length`` >= 3 in K_n.

    Target block size n/(2(length-1)). Even length: X_B(u) in N_BR, X_R(v) in
    N_RR with inner blocks from N_BR + N_RR, plus the primed family from N_RB,
    N_BB. Odd length: X_B(u) in N_BR, X_B(v) in N_BB (inner from their union)
    and X'_R(u) in N_RB, X'_R(v) in N_RR.
    """
    if coloring.r != 2:
        raise ValueError("block carving needs a 2-coloring")
    if length < 3:
        raise ValueError("chains need length >= 3")
    if u == v:
        raise ValueError("endpoints must differ")
    size = coloring.n // (2 * (length - 1))
    cls = _classes(coloring, u, v, SIDE_K)
    carver = _Carver({SIDE_K: {u, v}})
    if length % 2 == 0:
        patterns = [(BLUE, (BLUE, RED), (RED, RED), "BR/RR"), (RED, (RED, BLUE), (BLUE, BLUE), "RB/BB")]
    else:
        patterns = [(BLUE, (BLUE, RED), (BLUE, BLUE), "BR/BB"), (RED, (RED, BLUE), (RED, RED), "RB/RR")]
    fams = []
    for start, first_cls, last_cls, label in patterns:
        inner = np.union1d(cls[first_cls], cls[last_cls])
        first = carver.take(SIDE_K, cls[first_cls], size)
        last = carver.take(SIDE_K, cls[last_cls], size)
        middle = [carver.take(SIDE_K, inner, size) for _ in range(length - 3)]
        blocks = (first, *middle, last)
        if all(blocks):
            fams.append(ChainFamily(blocks, start, SIDE_K, label))
    return BlockSpec(tuple(fams), size, SIDE_K)


# ---------------------------------------------------------------------------
# chain builder


@dataclass(frozen=True)
class ChainResult:
    paths: tuple[PathRecord, ...]
    stage_sizes: tuple[int, ...]  # matching sizes along the chain


def _check_spec(coloring, u: int, v: int, spec: BlockSpec) -> None:
    seen: dict[str, set[int]] = {}
    for fam in spec.families:
        if fam.start_color not in (RED, BLUE):
            raise ValueError(f"start color {fam.start_color} is not red or blue")
        for i, block in enumerate(fam.blocks):
            side = fam.block_side(i)
            bucket = seen.setdefault(side, set())
            for w in block:
                if w in bucket:
                    raise ValueError(f"blocks overlap at vertex {w} of class {side}")
                if side == spec.endpoint_side and w in (u, v):
                    raise ValueError(f"block contains endpoint {w}")
                bucket.add(w)
        if isinstance(coloring, ColoringMatrix) and fam.block_side(len(fam.blocks) - 1) != SIDE_M:
            raise ValueError("the last block must lie in M for N-endpoints")
        first_bad = [w for w in fam.blocks[0] if _edge(coloring, u, w, spec) != fam.start_color]
        if first_bad:
            raise ValueError(f"block 0 vertices {first_bad[:5]} are not joined to u in color "
                             f"{fam.start_color}")
        last_color = fam.edge_color(len(fam.blocks))
        last_bad = [w for w in fam.blocks[-1] if _edge(coloring, v, w, spec) != last_color]
        if last_bad:
            raise ValueError(f"last block vertices {last_bad[:5]} are not joined to v in color "
                             f"{last_color}")


def _edge(coloring, endpoint: int, w: int, spec: BlockSpec) -> int:
    if isinstance(coloring, CompleteColoring):
        return int(coloring.colors[endpoint, w])
    if spec.endpoint_side == SIDE_N:
        return int(coloring.colors[w, endpoint])
    return int(coloring.colors[endpoint, w])


def build_chain(coloring, u: int, v: int, fam: ChainFamily,
                endpoint_side: str = SIDE_N) -> ChainResult:
    """Paths of one family: match block i to block i+1 left to right, keeping only
    the chains that got extended. The family size is the last (smallest) stage.
    """
    chains = [[w] for w in fam.blocks[0]]
    stages = []
    for i in range(1, len(fam.blocks)):
        ends = [c[-1] for c in chains]
        side = fam.block_side(i - 1)
        res = color_matching(coloring, ends, fam.blocks[i], fam.edge_color(i),
                             a_side=side if side != SIDE_K else SIDE_M)
        partner = dict(res.edges)
        chains = [c + [partner[c[-1]]] for c in chains if c[-1] in partner]
        stages.append(res.size)
    start = SIDE_K if isinstance(coloring, CompleteColoring) else endpoint_side
    paths = tuple(PathRecord((u, *c, v), tuple(fam.edge_color(i) for i in range(fam.length)), start)
                  for c in chains)
    return ChainResult(paths, tuple(stages))


def matching_chain_paths(coloring, u: int, v: int, spec: BlockSpec) -> list[PathRecord]:
    """Internally disjoint alternating u-v paths from every family of ``spec``."""
    if coloring.r != 2:
        raise ValueError("the chain builder needs a 2-coloring")
    _check_spec(coloring, u, v, spec)
    out: list[PathRecord] = []
    for fam in spec.families:
        out.extend(build_chain(coloring, u, v, fam, spec.endpoint_side).paths)
    return out

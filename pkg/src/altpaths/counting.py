"""Exact counters for alternating paths and walks.

Two families of counters live here. The closed forms (``total_alt_p3``,
``total_alt_p4``, ``alt5_objective``) are two-color sums over pairs or triples
of M-vertices built from color degrees and codegrees; they follow the
repetition conventions of those sums exactly. The general counters work for any
number of colors: a transfer dynamic program for walks and a depth-first
enumerator for distinct-vertex paths.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .core import (
    BLUE,
    RED,
    SIDE_K,
    SIDE_M,
    SIDE_N,
    BudgetExceeded,
    ColoringMatrix,
    CompleteColoring,
    PathRecord,
    other_side,
)

DEFAULT_PATH_BUDGET = 10**8


def _exact_sum(arr) -> int:
    return int(np.asarray(arr).astype(object).sum())


def _require_two_colors(coloring, what: str) -> None:
    if coloring.r != 2:
        raise ValueError(f"{what} is defined for 2-colorings only (r={coloring.r})")


# ---------------------------------------------------------------------------
# length 2


def count_alt_2paths(coloring, u: int, v: int, side: str = SIDE_N) -> int:
    """Alternating 2-paths between u and v: middles w with c(w,u) != c(w,v).

    For K_{m,n} this is the Hamming distance of the color vectors c_u, c_v.
    """
    if u == v:
        raise ValueError("endpoints must differ")
    if isinstance(coloring, CompleteColoring):
        col = coloring.colors
        return sum(1 for w in range(coloring.n)
                   if w != u and w != v and col[w, u] != col[w, v])
    vecs = coloring.vectors(side)
    return int(np.count_nonzero(vecs[u] != vecs[v]))


def pair_2path_counts(coloring, side: str = SIDE_N) -> np.ndarray:
    """Matrix of alternating 2-path counts for every pair of one class.

    The diagonal is 0 by convention.
    """
    if isinstance(coloring, CompleteColoring):
        col = coloring.colors
        agree = np.zeros(col.shape, dtype=np.int64)
        for c in range(1, coloring.r + 1):
            a = (col == c).astype(np.int64)
            agree += a.T @ a
        out = (coloring.n - 2) - agree
    else:
        vecs = coloring.vectors(side)
        agree = np.zeros((vecs.shape[0], vecs.shape[0]), dtype=np.int64)
        for c in range(1, coloring.r + 1):
            a = (vecs == c).astype(np.int64)
            agree += a @ a.T
        out = vecs.shape[1] - agree
    np.fill_diagonal(out, 0)
    return out


def min_pair_2paths(coloring, side: str = SIDE_N) -> int:
    counts = pair_2path_counts(coloring, side)
    k = counts.shape[0]
    if k < 2:
        raise ValueError("need at least two vertices in the class")
    iu = np.triu_indices(k, 1)
    return int(counts[iu].min())


def middle_vertex_2path_count(coloring, v: int, side: str = SIDE_M) -> int:
    """Alternating 2-paths whose middle vertex is v: sum_{i<j} deg_i(v) deg_j(v)."""
    deg = [int(d) for d in coloring.degrees(side)[v]]
    total = sum(deg)
    return (total * total - sum(d * d for d in deg)) // 2


def kappa2_upper_bound(m: int, n: int, r: int) -> Fraction:
    """(1 - 1/r)(1 + 1/(n-1)) m, as an exact rational."""
    if n < 2:
        raise ValueError("need n >= 2")
    if r < 2:
        raise ValueError("need r >= 2")
    return (1 - Fraction(1, r)) * (1 + Fraction(1, n - 1)) * m


def kappa2_complete_upper_bound(n: int, r: int) -> Fraction:
    """(1 - 1/r)(n - 1): the K_n analogue."""
    if n < 2 or r < 2:
        raise ValueError("need n >= 2 and r >= 2")
    return (1 - Fraction(1, r)) * (n - 1)


# ---------------------------------------------------------------------------
# two-color closed forms over M-pairs


@dataclass(frozen=True)
class _Stats:
    deg_r: np.ndarray  # per M-vertex
    deg_b: np.ndarray
    rb: np.ndarray  # rb[u, v] = codeg_RB(u, v) over N
    br: np.ndarray


def _m_pair_stats(coloring: ColoringMatrix) -> _Stats:
    red = (coloring.colors == RED).astype(np.int64)
    blue = (coloring.colors == BLUE).astype(np.int64)
    return _Stats(red.sum(axis=1), blue.sum(axis=1), red @ blue.T, blue @ red.T)


def p3_through(coloring: ColoringMatrix, u: int, v: int) -> int:
    """Alternating 3-paths whose two M-vertices are u and v."""
    _require_two_colors(coloring, "p3_through")
    if u == v:
        raise ValueError("u and v must differ")
    s = _m_pair_stats(coloring)
    rb, br = int(s.rb[u, v]), int(s.br[u, v])
    return (rb * int(s.deg_r[v]) + int(s.deg_r[u]) * br
            + br * int(s.deg_b[v]) + int(s.deg_b[u]) * rb)


def total_alt_p3(coloring: ColoringMatrix) -> int:
    """Total number of alternating 3-paths of a 2-colored K_{m,n}."""
    _require_two_colors(coloring, "total_alt_p3")
    s = _m_pair_stats(coloring)
    per_pair = (s.rb * s.deg_r[None, :] + s.deg_r[:, None] * s.br
                + s.br * s.deg_b[None, :] + s.deg_b[:, None] * s.rb)
    return _exact_sum(np.triu(per_pair, 1))


def total_alt_p4(coloring: ColoringMatrix) -> int:
    """Alternating 4-edge sequences x1-u-x2-v-x3 with u < v in M.

    x1 = x3 is allowed, so this dominates the number of alternating 4-paths
    with both endpoints in N.
    """
    _require_two_colors(coloring, "total_alt_p4")
    s = _m_pair_stats(coloring)
    per_pair = (s.deg_r[:, None] * s.br * s.deg_b[None, :]
                + s.deg_b[:, None] * s.rb * s.deg_r[None, :])
    return _exact_sum(np.triu(per_pair, 1))


def sum_mixed_codegrees(coloring: ColoringMatrix) -> int:
    """Sum over u < v in M of c(u, v) = codeg_RB(u, v) + codeg_BR(u, v)."""
    _require_two_colors(coloring, "sum_mixed_codegrees")
    s = _m_pair_stats(coloring)
    return _exact_sum(np.triu(s.rb + s.br, 1))


def alt5_objective(coloring: ColoringMatrix) -> int:
    """Sum over u < w < v in M of the six-term length-5 objective f(u, w, v).

    Counts alternating 5-edge sequences through three M-vertices; the pendant
    N-vertex may coincide with a non-adjacent one, so this dominates the number
    of alternating 5-paths.
    """
    _require_two_colors(coloring, "alt5_objective")
    m = coloring.m
    if m < 3:
        raise ValueError("alt5_objective needs m >= 3")
    s = _m_pair_stats(coloring)
    xr, xb, br, rb = s.deg_r, s.deg_b, s.br, s.rb
    total = 0
    for u in range(m):
        for w in range(u + 1, m - 1):
            v = np.arange(w + 1, m)
            f = (br[u, w] * br[w, v] * (xr[u] + xb[v])
                 + rb[u, w] * rb[w, v] * (xb[u] + xr[v])
                 + rb[u, w] * br[u, v] * (xr[w] + xb[v])
                 + br[u, w] * rb[u, v] * (xb[w] + xr[v])
                 + br[u, v] * rb[w, v] * (xr[u] + xb[w])
                 + rb[u, v] * br[w, v] * (xb[u] + xr[w]))
            total += _exact_sum(f)
    return total


# ---------------------------------------------------------------------------
# general length: walks by transfer DP, paths by enumeration


def _host(coloring):
    """Color table over one combined vertex index (0 = no edge) and class offsets.

    Bipartite hosts put M at 0..m-1 and N at m..m+n-1.
    """
    if isinstance(coloring, CompleteColoring):
        return coloring.colors, {SIDE_K: 0}
    m, n = coloring.m, coloring.n
    full = np.zeros((m + n, m + n), dtype=np.int64)
    full[:m, m:] = coloring.colors
    full[m:, :m] = coloring.colors.T
    return full, {SIDE_M: 0, SIDE_N: m}


def _endpoint_sides(coloring, length: int, a_side: str, b_side: str | None) -> tuple[str, str]:
    if isinstance(coloring, CompleteColoring):
        return SIDE_K, SIDE_K
    if a_side not in (SIDE_M, SIDE_N):
        raise ValueError(f"unknown class {a_side!r}")
    expected = a_side if length % 2 == 0 else other_side(a_side)
    if b_side is None:
        return a_side, expected
    if b_side != expected:
        raise ValueError(
            f"a walk of length {length} from class {a_side} ends in class {expected}, not {b_side}")
    return a_side, b_side


def _walk_dtype(full: np.ndarray, length: int):
    maxdeg = int((full > 0).sum(axis=1).max(initial=0))
    return np.int64 if max(maxdeg, 1) ** length < 2**62 else object


def _walk_dp(full: np.ndarray, r: int, starts: np.ndarray, length: int) -> np.ndarray:
    """counts[i, x] = alternating walks with ``length`` edges from starts[i] to x."""
    dtype = _walk_dtype(full, length)
    onehot = [(full == c).astype(dtype) for c in range(1, r + 1)]
    # state[i, w, c]: walks from starts[i] ending at w whose last edge has color c
    state = np.stack([oh[starts] for oh in onehot], axis=2)
    for _ in range(length - 1):
        total = state.sum(axis=2)
        state = np.stack([(total - state[:, :, c]) @ onehot[c] for c in range(r)], axis=2)
    return state.sum(axis=2)


@dataclass(frozen=True)
class WalkCountTable:
    """Alternating walk or path counts of one length between two vertex classes.

    ``counts[a, b]`` is indexed by per-class vertex ids.
    """

    length: int
    flavor: str  # "walk" or "path"
    from_side: str
    to_side: str
    counts: np.ndarray


def alt_walk_table(coloring, length: int, side: str = SIDE_N) -> WalkCountTable:
    """Alternating walk counts from every vertex of ``side``, for any r."""
    if length < 1:
        raise ValueError("length must be >= 1")
    a_side, b_side = _endpoint_sides(coloring, length, side, None)
    full, offset = _host(coloring)
    starts = offset[a_side] + np.arange(coloring.size(a_side))
    counts = _walk_dp(full, coloring.r, starts, length)
    lo = offset[b_side]
    return WalkCountTable(length, "walk", a_side, b_side, counts[:, lo:lo + coloring.size(b_side)])


def count_alt_walks(coloring, a: int, b: int, length: int,
                    a_side: str = SIDE_N, b_side: str | None = None) -> int:
    """Alternating walks from a to b with exactly ``length`` edges (vertices may repeat)."""
    if length < 1:
        raise ValueError("length must be >= 1")
    a_side, b_side = _endpoint_sides(coloring, length, a_side, b_side)
    full, offset = _host(coloring)
    counts = _walk_dp(full, coloring.r, np.array([offset[a_side] + a]), length)
    return int(counts[0, offset[b_side] + b])


def _neighbour_lists(full: np.ndarray) -> list[list[tuple[int, int]]]:
    return [[(int(w), int(row[w])) for w in np.flatnonzero(row)] for row in full]


def _iter_alt_paths(full, nbrs, a: int, b: int, length: int, budget: int):
    """Depth-first enumeration of distinct-vertex alternating a-b paths.

    Yields (vertex tuple, color tuple) in combined ids.
    """
    if a == b:
        return
    steps = 0
    visited = [False] * full.shape[0]
    visited[a] = True
    verts = [a]
    cols: list[int] = []

    def extend(x: int, last: int, left: int):
        nonlocal steps
        if left == 1:
            steps += 1
            if steps > budget:
                raise BudgetExceeded("alternating path enumeration", budget)
            c = int(full[x, b])
            if c and c != last:
                yield tuple(verts) + (b,), tuple(cols) + (c,)
            return
        for w, c in nbrs[x]:
            if c == last or visited[w] or w == b:
                continue
            steps += 1
            if steps > budget:
                raise BudgetExceeded("alternating path enumeration", budget)
            visited[w] = True
            verts.append(w)
            cols.append(c)
            yield from extend(w, c, left - 1)
            cols.pop()
            verts.pop()
            visited[w] = False

    yield from extend(a, 0, length)


def alt_paths(coloring, a: int, b: int, length: int, a_side: str = SIDE_N,
              b_side: str | None = None, budget: int = DEFAULT_PATH_BUDGET) -> list[PathRecord]:
    """All distinct-vertex alternating a-b paths with ``length`` edges."""
    if length < 1:
        raise ValueError("length must be >= 1")
    a_side, b_side = _endpoint_sides(coloring, length, a_side, b_side)
    full, offset = _host(coloring)
    nbrs = _neighbour_lists(full)
    out = []
    for verts, cols in _iter_alt_paths(full, nbrs, offset[a_side] + a, offset[b_side] + b, length, budget):
        rec = PathRecord(verts, cols, a_side)
        local = tuple(x - offset[rec.side_of(i)] for i, x in enumerate(verts))
        out.append(PathRecord(local, cols, a_side))
    return out


def count_alt_paths_exact(coloring, a: int, b: int, length: int, a_side: str = SIDE_N,
                          b_side: str | None = None, budget: int = DEFAULT_PATH_BUDGET) -> int:
    """Number of distinct-vertex alternating a-b paths with ``length`` edges.

    Raises BudgetExceeded once more than ``budget`` extension steps are needed.
    """
    if length < 1:
        raise ValueError("length must be >= 1")
    a_side, b_side = _endpoint_sides(coloring, length, a_side, b_side)
    full, offset = _host(coloring)
    nbrs = _neighbour_lists(full)
    return sum(1 for _ in _iter_alt_paths(full, nbrs, offset[a_side] + a,
                                          offset[b_side] + b, length, budget))


def alt_path_table(coloring, length: int, side: str = SIDE_N,
                   budget: int = DEFAULT_PATH_BUDGET) -> WalkCountTable:
    """Distinct-vertex path counts for every (a, b) with a in ``side``.

    Pairs with a == b get 0. The budget applies per pair.
    """
    if length < 1:
        raise ValueError("length must be >= 1")
    a_side, b_side = _endpoint_sides(coloring, length, side, None)
    full, offset = _host(coloring)
    nbrs = _neighbour_lists(full)
    na, nb = coloring.size(a_side), coloring.size(b_side)
    counts = np.zeros((na, nb), dtype=object)
    for a in range(na):
        for b in range(nb):
            if a_side == b_side and a == b:
                continue
            counts[a, b] = sum(1 for _ in _iter_alt_paths(
                full, nbrs, offset[a_side] + a, offset[b_side] + b, length, budget))
    return WalkCountTable(length, "path", a_side, b_side, counts)


# ---------------------------------------------------------------------------
# digraph reduction


@dataclass(frozen=True, eq=False)
class OrientedBipartiteDigraph:
    """Bipartite tournament: pair (u in M, v in N) is the arc v->u when red, u->v when blue."""

    red: np.ndarray  # bool, shape (m, n)

    @property
    def m(self) -> int:
        return self.red.shape[0]

    @property
    def n(self) -> int:
        return self.red.shape[1]

    def adjacency(self) -> np.ndarray:
        """0/1 matrix over combined ids (M first, then N); entry [x, y] = arc x->y."""
        m, n = self.m, self.n
        adj = np.zeros((m + n, m + n), dtype=np.int64)
        adj[m:, :m] = self.red.T
        adj[:m, m:] = ~self.red
        return adj

    def directed_walk_counts(self, length: int) -> np.ndarray:
        """Directed walk counts between all combined ids, by repeated application."""
        adj = self.adjacency()
        dtype = np.int64 if max(self.m, self.n, 1) ** length < 2**62 else object
        adj = adj.astype(dtype)
        power = np.eye(adj.shape[0], dtype=dtype)
        for _ in range(length):
            power = power @ adj
        return power


def to_digraph(coloring: ColoringMatrix) -> OrientedBipartiteDigraph:
    """Orient red edges from N to M and blue edges from M to N."""
    _require_two_colors(coloring, "to_digraph")
    return OrientedBipartiteDigraph(coloring.colors == RED)

"""Colored host graphs, codes and their degree/codegree statistics.

A coloring of K_{m,n} is an m x n table: row u is a vertex of the left
class M, column v a vertex of the right class N, entry (u, v) the color of
edge {u, v}. Colors are 1-based ids in [r]; for two colors RED=1, BLUE=2.
Vertices are 0-based per class.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

RED = 1
BLUE = 2

SIDE_M = "M"
SIDE_N = "N"
SIDE_K = "K"  # the single vertex class of K_n


class BudgetExceeded(RuntimeError):
    """An exact computation would exceed its configured work budget."""

    def __init__(self, what: str, budget: int):
        super().__init__(f"{what}: work budget of {budget} exceeded")
        self.what = what
        self.budget = budget


def other_side(side: str) -> str:
    if side == SIDE_M:
        return SIDE_N
    if side == SIDE_N:
        return SIDE_M
    raise ValueError(f"unknown class {side!r}")


def _frozen_array(table) -> np.ndarray:
    arr = np.array(table, dtype=np.int64)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class ColoringMatrix:
    """r-edge-coloring of K_{m,n}; ``colors[u, v]`` is the color of {u, v}.

    The constructor does not check entries; call :func:`validate`.
    """

    colors: np.ndarray
    r: int = 2

    def __post_init__(self):
        arr = _frozen_array(self.colors)
        if arr.ndim != 2:
            raise ValueError(f"coloring table must be 2-dimensional, got shape {arr.shape}")
        object.__setattr__(self, "colors", arr)

    @property
    def m(self) -> int:
        return self.colors.shape[0]

    @property
    def n(self) -> int:
        return self.colors.shape[1]

    def size(self, side: str) -> int:
        return self.m if side == SIDE_M else self.n

    def color(self, u: int, v: int) -> int:
        return int(self.colors[u, v])

    def vector(self, v: int, side: str = SIDE_N) -> tuple[int, ...]:
        """Color vector c_v of a vertex: its colors towards the other class."""
        line = self.colors[:, v] if side == SIDE_N else self.colors[v, :]
        return tuple(int(x) for x in line)

    def vectors(self, side: str = SIDE_N) -> np.ndarray:
        """Rows are the color vectors of the vertices of ``side``."""
        return self.colors.T if side == SIDE_N else self.colors

    def degrees(self, side: str) -> np.ndarray:
        """``deg[w, i-1]`` = number of edges of color i at vertex w of ``side``."""
        vecs = self.vectors(side)
        return np.stack([(vecs == c).sum(axis=1) for c in range(1, self.r + 1)], axis=1)

    def __eq__(self, other):
        if not isinstance(other, ColoringMatrix):
            return NotImplemented
        return self.r == other.r and np.array_equal(self.colors, other.colors)

    def __hash__(self):
        return hash((self.r, self.colors.shape, self.colors.tobytes()))

    def __repr__(self):
        return f"ColoringMatrix(m={self.m}, n={self.n}, r={self.r})"


@dataclass(frozen=True, eq=False)
class CompleteColoring:
    """r-edge-coloring of K_n as a symmetric n x n table with zero diagonal."""

    colors: np.ndarray
    r: int = 2

    def __post_init__(self):
        arr = _frozen_array(self.colors)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise ValueError(f"complete coloring table must be square, got shape {arr.shape}")
        object.__setattr__(self, "colors", arr)

    @property
    def n(self) -> int:
        return self.colors.shape[0]

    def size(self, side: str = SIDE_K) -> int:
        return self.n

    def color(self, u: int, v: int) -> int:
        if u == v:
            raise ValueError("K_n has no loops")
        return int(self.colors[u, v])

    def vector(self, v: int, side: str = SIDE_K) -> tuple[int, ...]:
        return tuple(int(x) for x in self.colors[v])

    def degrees(self, side: str = SIDE_K) -> np.ndarray:
        return np.stack([(self.colors == c).sum(axis=1) for c in range(1, self.r + 1)], axis=1)

    def __eq__(self, other):
        if not isinstance(other, CompleteColoring):
            return NotImplemented
        return self.r == other.r and np.array_equal(self.colors, other.colors)

    def __hash__(self):
        return hash((self.r, self.colors.shape, self.colors.tobytes()))

    def __repr__(self):
        return f"CompleteColoring(n={self.n}, r={self.r})"


@dataclass(frozen=True)
class Code:
    """n codewords of length m over the alphabet [r]."""

    words: tuple[tuple[int, ...], ...]
    r: int = 2

    def __post_init__(self):
        object.__setattr__(self, "words", tuple(tuple(int(x) for x in w) for w in self.words))

    @property
    def m(self) -> int:
        return len(self.words[0]) if self.words else 0

    def __len__(self):
        return len(self.words)

    def min_distance(self) -> int | None:
        """Minimum pairwise Hamming distance, None for fewer than two words."""
        best = None
        for i in range(len(self.words)):
            for j in range(i + 1, len(self.words)):
                d = hamming(self.words[i], self.words[j])
                if best is None or d < best:
                    best = d
        return best


def hamming(x: Sequence[int], y: Sequence[int]) -> int:
    """Number of positions in which two equal-length words differ."""
    if len(x) != len(y):
        raise ValueError(f"words have different lengths {len(x)} and {len(y)}")
    return sum(1 for a, b in zip(x, y) if a != b)


def from_code(code: Code) -> ColoringMatrix:
    """Coloring of K_{m,n} whose column v is the word ``code.words[v]``."""
    if not code.words:
        raise ValueError("code is empty")
    m = len(code.words[0])
    if m == 0:
        raise ValueError("codewords have length 0")
    for i, w in enumerate(code.words):
        if len(w) != m:
            raise ValueError(f"word {i} has length {len(w)}, expected {m}")
        for pos, x in enumerate(w):
            if not 1 <= x <= code.r:
                raise ValueError(f"word {i} position {pos}: letter {x} outside [1, {code.r}]")
    return ColoringMatrix(np.array(code.words, dtype=np.int64).T, code.r)


def to_code(coloring: ColoringMatrix) -> Code:
    """The column vectors of ``coloring`` as a code (one word per N-vertex)."""
    return Code(tuple(tuple(int(x) for x in col) for col in coloring.colors.T), coloring.r)


@dataclass(frozen=True)
class CodegreeTable:
    """Codegrees of a same-class pair (u, v) and color degrees of both classes.

    ``counts[x-1, y-1]`` is |N_xy(u, v)|: the vertices w joined to u in color x
    and to v in color y. ``degrees`` covers the class of u and v (row w, column
    i-1 is deg_i(w)), ``opposite_degrees`` the other class. For K_n both arrays
    describe the one vertex class.
    """

    side: str
    u: int
    v: int
    counts: np.ndarray
    degrees: np.ndarray
    opposite_degrees: np.ndarray = field(repr=False)

    def codeg(self, x: int, y: int) -> int:
        return int(self.counts[x - 1, y - 1])

    def deg(self, w: int, color: int) -> int:
        return int(self.degrees[w, color - 1])

    @property
    def mixed(self) -> int:
        """c(u, v) = codeg_RB + codeg_BR for two colors; in general the disagreements."""
        return int(self.counts.sum() - np.trace(self.counts))


def codegree_table(coloring, u: int, v: int, side: str = SIDE_N) -> CodegreeTable:
    """Exact codegree counts of the pair (u, v) by direct scan.

    For a bipartite host ``side`` names the class holding u and v; the common
    neighbours are the whole opposite class. For K_n, w ranges over the other
    n - 2 vertices.
    """
    if u == v:
        raise ValueError("codegrees need two distinct vertices")
    r = coloring.r
    counts = np.zeros((r, r), dtype=np.int64)
    if isinstance(coloring, CompleteColoring):
        side = SIDE_K
        for w in range(coloring.n):
            if w != u and w != v:
                counts[coloring.colors[w, u] - 1, coloring.colors[w, v] - 1] += 1
        deg = coloring.degrees()
        return CodegreeTable(side, u, v, counts, deg, deg)
    if side not in (SIDE_M, SIDE_N):
        raise ValueError(f"unknown class {side!r}")
    vecs = coloring.vectors(side)
    for a, b in zip(vecs[u], vecs[v]):
        counts[a - 1, b - 1] += 1
    return CodegreeTable(side, u, v, counts, coloring.degrees(side), coloring.degrees(other_side(side)))


def validate(obj) -> list[str]:
    """List of invariant violations of a coloring or code; empty when valid."""
    problems: list[str] = []
    if isinstance(obj, Code):
        if obj.r < 2:
            problems.append(f"color count r={obj.r} < 2")
        if not obj.words:
            problems.append("code has no words")
            return problems
        m = len(obj.words[0])
        for i, w in enumerate(obj.words):
            if len(w) != m:
                problems.append(f"word {i} has length {len(w)}, expected {m}")
            for pos, x in enumerate(w):
                if not 1 <= x <= obj.r:
                    problems.append(f"word {i} position {pos}: letter {x} outside [1, {obj.r}]")
        return problems

    colors = obj.colors
    if obj.r < 2:
        problems.append(f"color count r={obj.r} < 2")
    if isinstance(obj, CompleteColoring):
        n = obj.n
        if n < 1:
            problems.append("n < 1")
        for u in range(n):
            if colors[u, u] != 0:
                problems.append(f"loop entry ({u}, {u}) = {colors[u, u]}, expected 0")
            for v in range(u + 1, n):
                if colors[u, v] != colors[v, u]:
                    problems.append(f"asymmetric entry ({u}, {v}): {colors[u, v]} != {colors[v, u]}")
                if not 1 <= colors[u, v] <= obj.r:
                    problems.append(f"entry ({u}, {v}) = {colors[u, v]} outside [1, {obj.r}]")
        return problems

    if obj.m < 1:
        problems.append("m < 1")
    if obj.n < 1:
        problems.append("n < 1")
    bad = np.argwhere((colors < 1) | (colors > obj.r))
    for u, v in bad:
        problems.append(f"entry ({u}, {v}) = {colors[u, v]} outside [1, {obj.r}]")
    return problems


@dataclass(frozen=True)
class PathRecord:
    """An alternating path (or walk) as its vertex and edge-color sequences.

    For a bipartite host the vertices alternate between classes starting with
    ``start``; for K_n ``start`` is ``"K"``.
    """

    vertices: tuple[int, ...]
    colors: tuple[int, ...]
    start: str = SIDE_N
    walk: bool = False

    @property
    def length(self) -> int:
        return len(self.colors)

    def side_of(self, i: int) -> str:
        if self.start == SIDE_K:
            return SIDE_K
        return self.start if i % 2 == 0 else other_side(self.start)

    def labeled(self) -> list[tuple[str, int]]:
        return [(self.side_of(i), x) for i, x in enumerate(self.vertices)]

    def internal(self) -> frozenset[tuple[str, int]]:
        """Internal vertices tagged with their class."""
        return frozenset(self.labeled()[1:-1])

    @property
    def endpoints(self) -> tuple[tuple[str, int], tuple[str, int]]:
        lab = self.labeled()
        return lab[0], lab[-1]

    def to_json(self) -> dict:
        return {"start": self.start, "vertices": list(self.vertices),
                "colors": list(self.colors), "walk": self.walk}

    def validate(self, coloring=None) -> list[str]:
        problems = []
        if len(self.vertices) != len(self.colors) + 1:
            problems.append(f"{len(self.vertices)} vertices for {len(self.colors)} edges")
        for i in range(len(self.colors) - 1):
            if self.colors[i] == self.colors[i + 1]:
                problems.append(f"edges {i} and {i + 1} both have color {self.colors[i]}")
        lab = self.labeled()
        if not self.walk and len(set(lab)) != len(lab):
            problems.append("repeated vertex in a path")
        if coloring is not None:
            for i in range(min(len(self.colors), len(self.vertices) - 1)):
                (sa, a), (sb, b) = lab[i], lab[i + 1]
                if isinstance(coloring, CompleteColoring):
                    if a == b:
                        problems.append(f"edge {i} is a loop at {a}")
                        continue
                    actual = int(coloring.colors[a, b])
                else:
                    row, col = (a, b) if sa == SIDE_M else (b, a)
                    if not (0 <= row < coloring.m and 0 <= col < coloring.n):
                        problems.append(f"edge {i} leaves the host graph")
                        continue
                    actual = int(coloring.colors[row, col])
                if actual != self.colors[i]:
                    problems.append(f"edge {i} recorded color {self.colors[i]}, host has {actual}")
        return problems

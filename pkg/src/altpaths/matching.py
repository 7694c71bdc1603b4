"""Maximum bipartite matching with Hall-violation certificates.

Hopcroft-Karp over adjacency lists. Vertices are scanned in input order and
neighbours in index order, so the returned matching is deterministic.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from typing import Any, Callable, Sequence

import numpy as np

from .core import SIDE_M, ColoringMatrix, CompleteColoring


@dataclass(frozen=True, eq=False)
class BipartiteSubgraphView:
    """Subgraph between vertex lists A and B of some host.

    Edges are given either by ``adjacency`` (bool array, rows follow A and
    columns follow B) or by a pure predicate ``edge(a, b)``.
    """

    A: tuple
    B: tuple
    edge: Callable[[Any, Any], bool] | None = None
    adjacency: np.ndarray | None = None

    def __post_init__(self):
        object.__setattr__(self, "A", tuple(self.A))
        object.__setattr__(self, "B", tuple(self.B))
        if len(set(self.A)) != len(self.A) or len(set(self.B)) != len(self.B):
            raise ValueError("A and B must be duplicate-free")
        if self.adjacency is None and self.edge is None:
            raise ValueError("a view needs an edge predicate or an adjacency matrix")
        if self.adjacency is not None:
            adj = np.asarray(self.adjacency, dtype=bool)
            if adj.shape != (len(self.A), len(self.B)):
                raise ValueError(f"adjacency shape {adj.shape} does not match |A|x|B|")
            object.__setattr__(self, "adjacency", adj)

    @classmethod
    def from_matrix(cls, matrix, A: Sequence[int], B: Sequence[int]) -> "BipartiteSubgraphView":
        """View of a host bool matrix (rows: one class, columns: the other)."""
        matrix = np.asarray(matrix, dtype=bool)
        A, B = list(A), list(B)
        sub = matrix[np.ix_(A, B)] if A and B else np.zeros((len(A), len(B)), dtype=bool)
        return cls(tuple(A), tuple(B), adjacency=sub)

    def has_edge(self, i: int, j: int) -> bool:
        """Edge test by position in A and B."""
        if self.adjacency is not None:
            return bool(self.adjacency[i, j])
        return bool(self.edge(self.A[i], self.B[j]))

    def matrix(self) -> np.ndarray:
        if self.adjacency is not None:
            return self.adjacency
        return np.array([[bool(self.edge(a, b)) for b in self.B] for a in self.A],
                        dtype=bool).reshape(len(self.A), len(self.B))

    def neighbours(self) -> list[list[int]]:
        """Positions in B adjacent to each position in A."""
        return [np.flatnonzero(row).tolist() for row in self.matrix()]


@dataclass(frozen=True)
class HallCertificate:
    """A set S of A-vertices with |N(S)| < |S|."""

    S: tuple
    neighbourhood: tuple

    @property
    def deficiency(self) -> int:
        return len(self.S) - len(self.neighbourhood)


@dataclass(frozen=True)
class MatchingResult:
    edges: tuple[tuple[Any, Any], ...]
    certificate: HallCertificate | None = None

    @property
    def size(self) -> int:
        return len(self.edges)

    def __len__(self):
        return len(self.edges)


def _hopcroft_karp(adj: list[list[int]], nb: int) -> tuple[list[int], list[int]]:
    na = len(adj)
    match_a = [-1] * na
    match_b = [-1] * nb
    inf = math.inf

    while True:
        dist = [inf] * na
        queue = deque()
        for a in range(na):
            if match_a[a] < 0:
                dist[a] = 0
                queue.append(a)
        found = False
        while queue:
            a = queue.popleft()
            for b in adj[a]:
                a2 = match_b[b]
                if a2 < 0:
                    found = True
                elif dist[a2] == inf:
                    dist[a2] = dist[a] + 1
                    queue.append(a2)
        if not found:
            break

        # iterative DFS along layered alternating paths
        it = [0] * na
        for root in range(na):
            if match_a[root] >= 0:
                continue
            stack = [root]
            while stack:
                a = stack[-1]
                advanced = False
                while it[a] < len(adj[a]):
                    b = adj[a][it[a]]
                    it[a] += 1
                    a2 = match_b[b]
                    if a2 < 0:
                        # augment along the stack
                        for x in reversed(stack):
                            nxt = match_a[x]
                            match_a[x] = b
                            match_b[b] = x
                            b = nxt
                        stack = []
                        advanced = True
                        break
                    if dist[a2] == dist[a] + 1:
                        stack.append(a2)
                        advanced = True
                        break
                if not advanced:
                    dist[a] = inf
                    stack.pop()
    return match_a, match_b


def _konig_certificate(adj, match_a, match_b) -> tuple[list[int], list[int]]:
    """A-vertices and B-vertices reachable by alternating paths from free A-vertices."""
    seen_a = [match_a[a] < 0 for a in range(len(adj))]
    seen_b = [False] * len(match_b)
    queue = deque(a for a in range(len(adj)) if seen_a[a])
    while queue:
        a = queue.popleft()
        for b in adj[a]:
            if not seen_b[b]:
                seen_b[b] = True
                a2 = match_b[b]
                if a2 >= 0 and not seen_a[a2]:
                    seen_a[a2] = True
                    queue.append(a2)
    return ([a for a in range(len(adj)) if seen_a[a]],
            [b for b in range(len(match_b)) if seen_b[b]])


def max_matching(view: BipartiteSubgraphView) -> MatchingResult:
    """Maximum-cardinality matching of ``view``.

    When A is not saturated the result carries a Hall certificate: the
    A-vertices reachable from unmatched ones, whose neighbourhood is smaller.
    """
    adj = view.neighbours()
    match_a, match_b = _hopcroft_karp(adj, len(view.B))
    edges = tuple((view.A[a], view.B[b]) for a, b in enumerate(match_a) if b >= 0)
    cert = None
    if len(edges) < len(view.A):
        S, NS = _konig_certificate(adj, match_a, match_b)
        cert = HallCertificate(tuple(view.A[a] for a in S), tuple(view.B[b] for b in NS))
    return MatchingResult(edges, cert)


def default_pad_size(m: int) -> int:
    """ceil(ln m), the pad size used with m-vertex classes."""
    return max(0, math.ceil(math.log(m))) if m > 1 else 0


def padded_graph(view: BipartiteSubgraphView, s: int) -> BipartiteSubgraphView:
    """Auxiliary graph on (A + A') x (B + B') with |A'| = |B'| = s.

    A' is joined to all of B + B' and B' to all of A + A'. A matching that
    saturates A + A' uses at most s pad edges at A, so it restricts to at least
    |A| - s edges of the original view.
    """
    if s < 0:
        raise ValueError("pad size must be non-negative")
    if s == 0:
        return view
    pads_a = tuple(("padA", i) for i in range(s))
    pads_b = tuple(("padB", i) for i in range(s))
    na, nb = len(view.A), len(view.B)
    adj = np.ones((na + s, nb + s), dtype=bool)
    adj[:na, :nb] = view.matrix()
    return BipartiteSubgraphView(view.A + pads_a, view.B + pads_b, adjacency=adj)


def color_matching(coloring, A: Sequence[int], B: Sequence[int], color: int,
                   a_side: str = SIDE_M) -> MatchingResult:
    """Maximum matching between A and B using only edges of ``color``.

    For K_{m,n}, ``a_side`` names the class of A (B is in the other class).
    """
    if not 1 <= color <= coloring.r:
        raise ValueError(f"unknown color id {color} for r={coloring.r}")
    if isinstance(coloring, CompleteColoring):
        host = coloring.colors == color
    elif a_side == SIDE_M:
        host = coloring.colors == color
    else:
        host = coloring.colors.T == color
    return max_matching(BipartiteSubgraphView.from_matrix(host, A, B))

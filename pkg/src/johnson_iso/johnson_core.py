"""Vertices, adjacency and lexicographic ranking for Johnson graphs J(n,k).

Vertices are sorted k-subsets of {1, ..., n}.  For k = 2 a vertex {i, j}
sits in row i and column j of the triangular diagram

    {1,2} {1,3} ... {1,n}
          {2,3} ... {2,n}
                ...
                    {n-1,n}

Lex ranks are 0-based: rank 0 is {1, ..., k}.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import comb, isqrt

import numpy as np

from .errors import ParameterError, RankRangeError, UnsupportedError


@dataclass(frozen=True)
class GraphParams:
    n: int
    k: int

    def __post_init__(self):
        if not (isinstance(self.n, int) and isinstance(self.k, int)):
            raise ParameterError(f"n and k must be integers, got {self.n!r}, {self.k!r}")
        if not 1 <= self.k <= self.n:
            raise ParameterError(f"need 1 <= k <= n, got n={self.n}, k={self.k}")

    @property
    def vertex_count(self) -> int:
        return comb(self.n, self.k)

    @property
    def degree(self) -> int:
        return self.k * (self.n - self.k)


@dataclass(frozen=True)
class Vertex:
    """A vertex of J(n,k): strictly increasing elements in [1, n]."""

    n: int
    elements: tuple[int, ...]

    def __post_init__(self):
        els = self.elements
        if not els:
            raise ParameterError("a vertex needs at least one element")
        if any(b <= a for a, b in zip(els, els[1:])):
            raise ParameterError(f"elements must be strictly increasing: {els}")
        if els[0] < 1 or els[-1] > self.n:
            raise ParameterError(f"elements {els} out of range [1, {self.n}]")

    @property
    def k(self) -> int:
        return len(self.elements)

    @property
    def params(self) -> GraphParams:
        return GraphParams(self.n, self.k)

    @property
    def row(self) -> int:
        _require_pair(self)
        return self.elements[0]

    @property
    def column(self) -> int:
        _require_pair(self)
        return self.elements[1]

    def __iter__(self):
        return iter(self.elements)

    def __str__(self):
        return "{" + ",".join(map(str, self.elements)) + "}"


def vertex(n: int, *elements: int) -> Vertex:
    """Build a vertex from elements in any order."""
    els = sorted(elements)
    if len(set(els)) != len(els):
        raise ParameterError(f"repeated element in {elements}")
    return Vertex(n, tuple(els))


def _require_pair(*vs: Vertex) -> None:
    for v in vs:
        if v.k != 2:
            raise UnsupportedError(f"diagram geometry needs k = 2, got k = {v.k}")


def _same_graph(u: Vertex, v: Vertex) -> None:
    if u.n != v.n or u.k != v.k:
        raise ParameterError(f"{u} and {v} belong to different graphs "
                             f"J({u.n},{u.k}) / J({v.n},{v.k})")


def degree(params: GraphParams) -> int:
    return params.degree


def adjacent(u: Vertex, v: Vertex) -> bool:
    _same_graph(u, v)
    return len(set(u.elements) & set(v.elements)) == u.k - 1


def lex_compare(u: Vertex, v: Vertex) -> int:
    """-1, 0 or 1 as u is lex-smaller, equal or greater than v."""
    _same_graph(u, v)
    a, b = u.elements, v.elements
    return (a > b) - (a < b)


def neighbors(v: Vertex):
    """Yield the k(n-k) neighbors of v (unordered)."""
    s = set(v.elements)
    outside = [x for x in range(1, v.n + 1) if x not in s]
    for drop in v.elements:
        rest = s - {drop}
        for add in outside:
            yield Vertex(v.n, tuple(sorted(rest | {add})))


def rank(params: GraphParams, v: Vertex) -> int:
    """0-based lex rank of v among all k-subsets of [n]."""
    if v.n != params.n or v.k != params.k:
        raise ParameterError(f"{v} is not a vertex of J({params.n},{params.k})")
    n, k = params.n, params.k
    r = 0
    prev = 0
    for t, c in enumerate(v.elements, start=1):
        # subsets with the same first t-1 elements and a smaller t-th element
        r += comb(n - prev, k - t + 1) - comb(n - c + 1, k - t + 1)
        prev = c
    return r


def unrank(params: GraphParams, r: int) -> Vertex:
    n, k = params.n, params.k
    if not 0 <= r < params.vertex_count:
        raise RankRangeError(f"rank {r} outside [0, C({n},{k}) = {params.vertex_count})")
    if k == 2:
        return Vertex(n, unrank2_scalar(n, r))
    els = []
    x = 1
    for t in range(1, k + 1):
        while True:
            block = comb(n - x, k - t)
            if r < block:
                break
            r -= block
            x += 1
        els.append(x)
        x += 1
    return Vertex(n, tuple(els))


def reflect(params: GraphParams, v: Vertex) -> Vertex:
    """Reflection {i,j} -> {n+1-j, n+1-i}, an automorphism of J(n,2)."""
    if params.k != 2:
        raise UnsupportedError("reflect is only defined for k = 2")
    _require_pair(v)
    i, j = v.elements
    return Vertex(params.n, (params.n + 1 - j, params.n + 1 - i))


def dominates(u: Vertex, v: Vertex) -> bool:
    _require_pair(u, v)
    _same_graph(u, v)
    return u.row <= v.row and u.column <= v.column


# Vectorised k = 2 helpers.  Row i starts at rank (i-1)n - i(i-1)/2.

def row_start(n: int, i):
    return (i - 1) * n - (i * (i - 1)) // 2


def rank2(n: int, i, j):
    """Lex rank of {i, j} (i < j); works on ints and integer arrays."""
    return row_start(n, i) + (j - i - 1)


def unrank2(n: int, ranks):
    """Inverse of rank2 for an integer array; returns (rows, columns)."""
    ranks = np.asarray(ranks, dtype=np.int64)
    starts = row_start(n, np.arange(1, n, dtype=np.int64))
    rows = np.searchsorted(starts, ranks, side="right").astype(np.int64)
    cols = ranks - starts[rows - 1] + rows + 1
    return rows, cols


def unrank2_scalar(n: int, r: int) -> tuple[int, int]:
    """Closed-form k = 2 unrank via integer square root."""
    # rows i..n-1 hold q(q+1)/2 vertices with q = n - i
    tail = comb(n, 2) - r
    q = (isqrt(8 * tail + 1) - 1) // 2
    if q * (q + 1) // 2 < tail:
        q += 1
    i = n - q
    return i, int(r - row_start(n, i) + i + 1)

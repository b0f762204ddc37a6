"""Edge boundaries of vertex sets in J(n,k).

Two independent routes to |dS|:

* ``boundary_direct`` walks every edge leaving a member and tests the
  other endpoint for membership.
* ``boundary_lemma`` uses projection counts only:
  |dS| = k(n-k+1)|S| - sum_A |S_A|^2, the sum over (k-1)-subsets A, where
  S_A is the set of members containing A.

For k = 2 both are vectorised with numpy so sets with ~10^6 members are
fine.  Other k go through plain Python and are meant for small graphs.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Iterable

import numpy as np

from .errors import DomainError, ParameterError
from .johnson_core import (GraphParams, Vertex, neighbors, rank, rank2, unrank,
                           unrank2)

# Soft cap for materialised sets.
MAX_MEMBERS = 10**6
DEFAULT_SEED = 20240917

ExactRatio = Fraction


def fmt_ratio(x: Fraction) -> str:
    """Always ``num/den``, including integers (``2/1``)."""
    return f"{x.numerator}/{x.denominator}"


def parse_ratio(s: str) -> Fraction:
    num, _, den = s.partition("/")
    return Fraction(int(num), int(den or 1))


@dataclass(frozen=True, eq=False)
class VertexSet:
    """A set of vertices of one J(n,k), stored as sorted unique lex ranks."""

    params: GraphParams
    ranks: np.ndarray

    @classmethod
    def from_ranks(cls, params: GraphParams, ranks) -> "VertexSet":
        arr = np.unique(np.asarray(ranks, dtype=np.int64))
        if arr.size and (arr[0] < 0 or arr[-1] >= params.vertex_count):
            raise ParameterError(f"rank out of range for J({params.n},{params.k})")
        arr.setflags(write=False)
        return cls(params, arr)

    @classmethod
    def from_vertices(cls, params: GraphParams, vertices: Iterable) -> "VertexSet":
        rs = []
        for v in vertices:
            if not isinstance(v, Vertex):
                v = Vertex(params.n, tuple(sorted(v)))
            rs.append(rank(params, v))
        return cls.from_ranks(params, rs)

    @classmethod
    def empty(cls, params: GraphParams) -> "VertexSet":
        return cls.from_ranks(params, [])

    def __len__(self):
        return int(self.ranks.size)

    def __iter__(self):
        return iter(self.vertices())

    def __contains__(self, v: Vertex) -> bool:
        r = rank(self.params, v)
        idx = np.searchsorted(self.ranks, r)
        return bool(idx < self.ranks.size and self.ranks[idx] == r)

    def __eq__(self, other):
        if not isinstance(other, VertexSet):
            return NotImplemented
        return self.params == other.params and np.array_equal(self.ranks, other.ranks)

    def __repr__(self):
        shown = ", ".join(str(v) for v in self.vertices()[:8])
        more = ", ..." if len(self) > 8 else ""
        return f"VertexSet(J({self.params.n},{self.params.k}), [{shown}{more}], size={len(self)})"

    def vertices(self) -> list[Vertex]:
        n = self.params.n
        if self.params.k == 2:
            rows, cols = unrank2(n, self.ranks)
            return [Vertex(n, (int(i), int(j))) for i, j in zip(rows, cols)]
        return [unrank(self.params, int(r)) for r in self.ranks]

    def pairs(self) -> tuple[np.ndarray, np.ndarray]:
        """(rows, columns) arrays; k = 2 only."""
        if self.params.k != 2:
            raise ParameterError("pairs() needs k = 2")
        return unrank2(self.params.n, self.ranks)

    def mask(self) -> np.ndarray:
        m = np.zeros(self.params.vertex_count, dtype=bool)
        m[self.ranks] = True
        return m

    def complement(self) -> "VertexSet":
        return VertexSet.from_ranks(self.params, np.flatnonzero(~self.mask()))

    def union(self, other: "VertexSet") -> "VertexSet":
        if other.params != self.params:
            raise ParameterError("union of sets from different graphs")
        return VertexSet.from_ranks(self.params, np.concatenate([self.ranks, other.ranks]))

    def issubset(self, other: "VertexSet") -> bool:
        return bool(np.isin(self.ranks, other.ranks).all())


def _check_size(S: VertexSet) -> None:
    if len(S) > MAX_MEMBERS:
        raise DomainError(f"|S| = {len(S)} exceeds the soft cap {MAX_MEMBERS}; "
                          "use closed_form for structured sets")


@lru_cache(maxsize=16)
def _neighbor_table(params: GraphParams) -> np.ndarray:
    table = np.empty((params.vertex_count, params.degree), dtype=np.int64)
    for r in range(params.vertex_count):
        table[r] = [rank(params, u) for u in neighbors(unrank(params, r))]
    return table


def boundary_direct(S: VertexSet) -> int:
    """Count edges with exactly one endpoint in S by walking them."""
    _check_size(S)
    if len(S) == 0:
        return 0
    inside = S.mask()
    p = S.params
    if p.k != 2:
        nbrs = _neighbor_table(p)[S.ranks]
        return int((~inside[nbrs]).sum())

    n = p.n
    xs = np.arange(1, n + 1, dtype=np.int64)
    rows, cols = S.pairs()
    total = 0
    step = max(1, 4_000_000 // n)
    for lo in range(0, rows.size, step):
        a = rows[lo:lo + step, None]
        b = cols[lo:lo + step, None]
        ok = (xs != a) & (xs != b)
        for end in (a, b):
            # neighbour {end, x}: the other element swapped for x
            nb = rank2(n, np.minimum(end, xs), np.maximum(end, xs))
            nb = np.where(ok, nb, 0)
            total += int((ok & ~inside[nb]).sum())
    return total


@lru_cache(maxsize=64)
def _projection_table(params: GraphParams) -> np.ndarray:
    """Row r lists the ranks, in J(n,k-1), of the k faces of vertex r."""
    n, k = params.n, params.k
    table = np.zeros((params.vertex_count, k), dtype=np.int64)
    if k == 1:
        return table
    sub = GraphParams(n, k - 1)
    for r in range(params.vertex_count):
        v = unrank(params, r)
        table[r] = [rank(sub, Vertex(n, face)) for face in combinations(v.elements, k - 1)]
    return table


def projection_profile(S: VertexSet) -> dict[tuple[int, ...], int]:
    """|S_A| for each (k-1)-subset A with a nonzero count."""
    p = S.params
    if p.k == 2:
        counts = _element_counts(S)
        return {(l,): int(c) for l, c in enumerate(counts) if l and c}
    if p.k == 1:
        return {(): len(S)} if len(S) else {}
    counts = _projection_counts(S)
    sub = GraphParams(p.n, p.k - 1)
    return {unrank(sub, a).elements: int(c) for a, c in enumerate(counts) if c}


def _projection_counts(S: VertexSet) -> np.ndarray:
    return np.bincount(_projection_table(S.params)[S.ranks].ravel())


def _element_counts(S: VertexSet) -> np.ndarray:
    rows, cols = S.pairs()
    size = S.params.n + 1
    return np.bincount(rows, minlength=size) + np.bincount(cols, minlength=size)


def boundary_lemma(S: VertexSet) -> int:
    """k(n-k+1)|S| minus the sum of squared projection counts."""
    p = S.params
    if p.k == 2:
        counts = _element_counts(S).astype(object)
        sq = int((counts * counts).sum())
    elif p.k == 1:
        sq = len(S) ** 2
    else:
        counts = _projection_counts(S).astype(object)
        sq = int((counts * counts).sum())
    return p.k * (p.n - p.k + 1) * len(S) - sq


def iso_ratio(S: VertexSet) -> Fraction:
    if len(S) == 0:
        raise DomainError("iso ratio of the empty set is undefined")
    return Fraction(boundary_lemma(S), len(S))


def random_subsets(params: GraphParams, count: int, seed: int = DEFAULT_SEED):
    """Yield `count` uniform random subsets (each vertex kept with prob 1/2)."""
    rng = np.random.default_rng(seed)
    N = params.vertex_count
    for _ in range(count):
        keep = rng.random(N) < 0.5
        yield VertexSet.from_ranks(params, np.flatnonzero(keep))

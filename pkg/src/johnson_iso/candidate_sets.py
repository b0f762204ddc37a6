"""Candidate extremal sets in J(n,2) and the two stable-set extensions.

Stable sets here are closed under domination: if {i,j} is in S then every
{i',j'} with i <= i' and j <= j' is too.  Lex suffixes L_m are stable; lex
prefixes F_m are their mirror images under ``reflect``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .boundary import VertexSet
from .errors import ParameterError, RankRangeError, UnsupportedError
from .johnson_core import GraphParams, Vertex, rank2, row_start


def _pair_params(n: int) -> GraphParams:
    if n < 2:
        raise ParameterError(f"J(n,2) needs n >= 2, got {n}")
    return GraphParams(n, 2)


def first_m(n: int, m: int) -> VertexSet:
    """F_m: the m lex-least vertices."""
    p = _pair_params(n)
    if not 0 < m <= p.vertex_count:
        raise RankRangeError(f"m = {m} outside (0, {p.vertex_count}]")
    return VertexSet.from_ranks(p, np.arange(m, dtype=np.int64))


def last_m(n: int, m: int) -> VertexSet:
    """L_m: the m lex-greatest vertices."""
    p = _pair_params(n)
    N = p.vertex_count
    if not 0 < m <= N:
        raise RankRangeError(f"m = {m} outside (0, {N}]")
    return VertexSet.from_ranks(p, np.arange(N - m, N, dtype=np.int64))


def rows_prefix(n: int, p: int) -> VertexSet:
    """The first p complete rows of the diagram."""
    return first_m(n, int(row_start(n, p + 1)))


def f_prime(n: int) -> VertexSet:
    """F_{n*} with its last partial row filled out, i.e. the first p rows."""
    from .closed_form import p_of

    return rows_prefix(n, p_of(n))


def f_prime_by_fill(n: int) -> VertexSet:
    """Same set built literally: take F_{n*} and add the rest of the row of
    its last vertex.  Used to cross-check ``f_prime``."""
    from .closed_form import n_star

    F = first_m(n, n_star(n))
    i, _ = F.vertices()[-1].elements
    return first_m(n, int(row_start(n, i + 1)))


def reflect_set(S: VertexSet) -> VertexSet:
    if S.params.k != 2:
        raise UnsupportedError("reflect_set needs k = 2")
    n = S.params.n
    rows, cols = S.pairs()
    return VertexSet.from_ranks(S.params, rank2(n, n + 1 - cols, n + 1 - rows))


def _cone_mask(n: int, i: int, j: int) -> np.ndarray:
    """n+1 by n+1 boolean grid of pairs {a,b} with a >= i, b >= j, a < b."""
    a = np.arange(n + 1)[:, None]
    b = np.arange(n + 1)[None, :]
    return (a >= i) & (b >= j) & (a < b) & (a >= 1)


def _from_grid(n: int, grid: np.ndarray) -> VertexSet:
    a, b = np.nonzero(grid)
    return VertexSet.from_ranks(_pair_params(n), rank2(n, a, b))


def stable_closure(n: int, generators: Iterable[Vertex]) -> VertexSet:
    """All vertices dominated by at least one generator."""
    grid = np.zeros((n + 1, n + 1), dtype=bool)
    for g in generators:
        if g.n != n or g.k != 2:
            raise ParameterError(f"generator {g} is not a vertex of J({n},2)")
        grid |= _cone_mask(n, g.row, g.column)
    return _from_grid(n, grid)


def is_stable(S: VertexSet) -> bool:
    if S.params.k != 2:
        raise UnsupportedError("stability is defined for k = 2 only")
    n = S.params.n
    if len(S) == 0:
        return True
    rows, cols = S.pairs()
    grid = np.zeros((n + 1, n + 1), dtype=bool)
    grid[rows, cols] = True
    # each member's right neighbour and the vertex below it must be present
    right_ok = (cols == n) | grid[rows, np.minimum(cols + 1, n)]
    below = rows + 1
    down_ok = (below >= cols) | grid[np.minimum(below, n), cols]
    return bool(right_ok.all() and down_ok.all())


@dataclass(frozen=True)
class LemmaPair:
    S: VertexSet
    S_prime: VertexSet
    predicted_boundary_delta: int | None = None


def lemma4_pair(n: int, i: int, j: int, j_prime: int) -> LemmaPair:
    """Horizontal extension.

    v = {i, j}, w = {i-1, j'} with j' >= j.  S is the cone under v together
    with the row-(i-1) vertices right of w; S' adds w itself.
    """
    if not (2 <= i < j <= j_prime <= n):
        raise ParameterError(f"need 2 <= i < j <= j' <= n, got i={i}, j={j}, j'={j_prime}, n={n}")
    grid = _cone_mask(n, i, j)
    grid[i - 1, j_prime + 1:] = True
    S = _from_grid(n, grid)
    grid[i - 1, j_prime] = True
    S_prime = _from_grid(n, grid)
    return LemmaPair(S, S_prime, 2 * (i + j_prime - n - 2))


def lemma4_size(n: int, i: int, j: int, j_prime: int) -> int:
    return (n - j_prime) + (j - i) * (n - j + 1) + (n - j + 1) * (n - j) // 2


def lemma5_pair(n: int, i_prime: int, i: int, j: int) -> LemmaPair:
    """Column extension.

    v = {i, j}, w = {i', j+1}; S is the stable set they determine and S'
    adds the column-j segment Q = {i',j}, ..., {i-1,j}.
    """
    if not (1 <= i_prime < i < j <= n - 1):
        raise ParameterError(f"need 1 <= i' < i < j <= n-1, got i'={i_prime}, i={i}, j={j}, n={n}")
    grid = _cone_mask(n, i, j) | _cone_mask(n, i_prime, j + 1)
    if grid[i_prime:i, j].any():
        raise AssertionError("Q meets S")
    S = _from_grid(n, grid)
    grid[i_prime:i, j] = True
    S_prime = _from_grid(n, grid)
    return LemmaPair(S, S_prime, None)


def lemma5_size(n: int, i_prime: int, i: int, j: int) -> int:
    return (n - j + 1) * (n - j) // 2 + (n - j) * (j - i_prime) + (j - i)


def lemma4_tuples(n: int):
    for i in range(2, n):
        for j in range(i + 1, n + 1):
            for jp in range(j, n + 1):
                yield i, j, jp


def lemma5_tuples(n: int):
    for j in range(3, n):
        for i in range(2, j):
            for ip in range(1, i):
                yield ip, i, j


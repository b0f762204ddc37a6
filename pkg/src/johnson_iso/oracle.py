"""Exhaustive ground truth for small Johnson graphs.

Every subset of V(J(n,k)) is visited.  Vertex of lex rank r is bit N-1-r
of a mask, so among equal-size sets the lex-least one (compare sorted
member lists) has the largest mask.  For k = 2, tied witnesses go to L_m,
then F_m, then the lex-least optimal set.  Boundaries for all 2^N masks are
filled bit by bit: adding vertex b to a set T of lower bits changes the
boundary by deg - 2|N(b) & T|.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import ceil

import numpy as np

from .boundary import VertexSet, boundary_direct
from .candidate_sets import (first_m, last_m, lemma4_pair, lemma4_size,
                             lemma4_tuples, lemma5_pair, lemma5_size,
                             lemma5_tuples, is_stable)
from .errors import CapacityError, ParameterError
from .johnson_core import GraphParams, neighbors, rank, unrank

EXHAUSTIVE_CAP = 24
AK_MAX_N = 7
SWEEP_MAX_N = 30


def _check_cap(params: GraphParams) -> None:
    if params.vertex_count > EXHAUSTIVE_CAP:
        raise CapacityError(f"C({params.n},{params.k}) = {params.vertex_count} exceeds "
                            f"the exhaustive cap {EXHAUSTIVE_CAP}")


@lru_cache(maxsize=1)
def _all_boundaries(params: GraphParams) -> tuple[np.ndarray, np.ndarray]:
    """(boundary, size) for every mask in [0, 2^N)."""
    _check_cap(params)
    N = params.vertex_count
    low_nbrs = []
    for b in range(N):
        r = N - 1 - b
        m = 0
        for u in neighbors(unrank(params, r)):
            ub = N - 1 - rank(params, u)
            if ub < b:
                m |= 1 << ub
        low_nbrs.append(m)

    masks = np.arange(1 << N, dtype=np.uint32)
    bd = np.zeros(1 << N, dtype=np.int32)
    deg = params.degree
    for b in range(N):
        half = 1 << b
        inside = np.bitwise_count(masks[:half] & np.uint32(low_nbrs[b])).astype(np.int32)
        bd[half:2 * half] = bd[:half] + deg - 2 * inside
    sizes = np.bitwise_count(masks)
    for arr in (bd, sizes):
        arr.setflags(write=False)
    return bd, sizes


def _mask_to_set(params: GraphParams, mask: int) -> VertexSet:
    N = params.vertex_count
    return VertexSet.from_ranks(params, [N - 1 - b for b in range(N) if mask >> b & 1])


@dataclass
class BCurve:
    n: int
    k: int
    # m -> (B(m), witness)
    values: dict[int, tuple[int, VertexSet]] = field(default_factory=dict)

    def __getitem__(self, m: int) -> int:
        return self.values[m][0]

    def witness(self, m: int) -> VertexSet:
        return self.values[m][1]


def b_curve(n: int, k: int, m_max: int | None = None) -> BCurve:
    """Minimum boundary over all m-subsets, for 1 <= m <= m_max."""
    params = GraphParams(n, k)
    _check_cap(params)
    N = params.vertex_count
    if m_max is None:
        m_max = N // 2
    if not 0 <= m_max <= N:
        raise ParameterError(f"m_max = {m_max} outside [0, {N}]")
    bd, sizes = _all_boundaries(params)
    curve = BCurve(n, k)
    for m in range(1, m_max + 1):
        idx = np.flatnonzero(sizes == m)
        vals = bd[idx]
        best = int(vals.min())
        curve.values[m] = (best, _pick_witness(params, m, best, idx[vals == best]))
    return curve


def _candidate_mask(params: GraphParams, ranks) -> int:
    N = params.vertex_count
    return sum(1 << (N - 1 - int(r)) for r in ranks)


def _pick_witness(params: GraphParams, m: int, best: int, masks: np.ndarray) -> VertexSet:
    # k = 2: prefer L_m, then F_m; otherwise the lex-least optimal set
    if params.k == 2:
        N = params.vertex_count
        for cand in (range(N - m, N), range(m)):
            cm = _candidate_mask(params, cand)
            if _bd_of(params, cm) == best:
                return _mask_to_set(params, cm)
    return _mask_to_set(params, int(masks.max()))


def _bd_of(params: GraphParams, mask: int) -> int:
    return int(_all_boundaries(params)[0][mask])


@dataclass(frozen=True)
class IsoResult:
    value: Fraction
    witness: VertexSet


def iso_exact(n: int, k: int) -> IsoResult:
    """min |dS|/|S| over 0 < |S| <= C(n,k)/2.

    The half is half the vertex count of J(n,k).  Ties go to the smallest
    size, with the b_curve witness for that size.
    """
    curve = b_curve(n, k)
    best = None
    for m, (b, w) in curve.values.items():
        r = Fraction(b, m)
        if best is None or r < best.value:
            best = IsoResult(r, w)
    if best is None:
        raise ParameterError(f"J({n},{k}) has no non-empty set of at most half its vertices")
    return best


def bisection_bound(n: int, k: int) -> int:
    """ceil(iso * floor(|V|/2)), a lower bound on the bisection width."""
    params = GraphParams(n, k)
    return ceil(iso_exact(n, k).value * (params.vertex_count // 2))


@dataclass(frozen=True)
class AKEntry:
    m: int
    b: int
    boundary_F: int
    boundary_L: int

    @property
    def winner(self) -> str:
        if self.boundary_F == self.boundary_L:
            return "tie"
        return "F" if self.boundary_F < self.boundary_L else "L"

    @property
    def ok(self) -> bool:
        return self.b == min(self.boundary_F, self.boundary_L)


@dataclass
class AKReport:
    n: int
    entries: list[AKEntry]

    @property
    def violations(self) -> list[AKEntry]:
        return [e for e in self.entries if not e.ok]

    @property
    def ok(self) -> bool:
        return not self.violations


def verify_ak(n: int) -> AKReport:
    """Check that F_m or L_m attains B(m) for every m <= C(n,2)/2."""
    if not 2 <= n <= AK_MAX_N:
        raise CapacityError(f"verify_ak supports 2 <= n <= {AK_MAX_N}, got {n}")
    curve = b_curve(n, 2)
    entries = [AKEntry(m, b, boundary_direct(first_m(n, m)), boundary_direct(last_m(n, m)))
               for m, (b, _) in curve.values.items()]
    return AKReport(n, entries)


@dataclass(frozen=True)
class LemmaFailure:
    lemma: int
    n: int
    args: tuple[int, int, int]
    reason: str


@dataclass
class SweepReport:
    n_min: int
    n_max: int
    lemma4_checked: int = 0
    lemma5_checked: int = 0
    failures: list[LemmaFailure] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def check_lemma4(n: int, i: int, j: int, jp: int) -> list[str]:
    pair = lemma4_pair(n, i, j, jp)
    S, Sp = pair.S, pair.S_prime
    bs, bsp = boundary_direct(S), boundary_direct(Sp)
    problems = []
    if len(S) != lemma4_size(n, i, j, jp) or len(Sp) != len(S) + 1:
        problems.append(f"sizes |S|={len(S)} |S'|={len(Sp)}")
    if bsp - bs != pair.predicted_boundary_delta:
        problems.append(f"delta {bsp - bs} != {pair.predicted_boundary_delta}")
    if not Fraction(bsp, len(Sp)) <= Fraction(bs, len(S)):
        problems.append(f"ratio {bsp}/{len(Sp)} > {bs}/{len(S)}")
    if not is_stable(Sp):
        problems.append("S' not stable")
    return problems


def check_lemma5(n: int, ip: int, i: int, j: int) -> list[str]:
    pair = lemma5_pair(n, ip, i, j)
    S, Sp = pair.S, pair.S_prime
    bs, bsp = boundary_direct(S), boundary_direct(Sp)
    problems = []
    if len(S) != lemma5_size(n, ip, i, j) or len(Sp) != len(S) + (i - ip):
        problems.append(f"sizes |S|={len(S)} |S'|={len(Sp)}")
    if not Fraction(bsp, len(Sp)) <= Fraction(bs, len(S)):
        problems.append(f"ratio {bsp}/{len(Sp)} > {bs}/{len(S)}")
    if not is_stable(Sp):
        problems.append("S' not stable")
    return problems


def verify_lemma_sweep(n_max: int, n_min: int = 4, lemmas=(4, 5)) -> SweepReport:
    """Run both extension checks over every valid parameter tuple."""
    if not 4 <= n_min <= n_max <= SWEEP_MAX_N:
        raise CapacityError(f"sweep supports 4 <= n_min <= n_max <= {SWEEP_MAX_N}")
    rep = SweepReport(n_min, n_max)
    for n in range(n_min, n_max + 1):
        if 4 in lemmas:
            for t in lemma4_tuples(n):
                rep.lemma4_checked += 1
                for why in check_lemma4(n, *t):
                    rep.failures.append(LemmaFailure(4, n, t, why))
        if 5 in lemmas:
            for t in lemma5_tuples(n):
                rep.lemma5_checked += 1
                for why in check_lemma5(n, *t):
                    rep.failures.append(LemmaFailure(5, n, t, why))
    return rep

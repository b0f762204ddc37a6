from fractions import Fraction
from itertools import combinations

import pytest

from johnson_iso.boundary import boundary_direct
from johnson_iso.candidate_sets import first_m, last_m, reflect_set
from johnson_iso.errors import CapacityError, ParameterError
from johnson_iso.oracle import (b_curve, bisection_bound, check_lemma4, check_lemma5,
                                iso_exact, verify_ak, verify_lemma_sweep)


def brute_curve(n, k):
    """B(m) by enumerating every m-subset with plain set arithmetic."""
    verts = list(combinations(range(1, n + 1), k))
    nbrs = {v: [u for u in verts if len(set(u) & set(v)) == k - 1] for v in verts}
    out = {}
    for m in range(1, len(verts) // 2 + 1):
        best = None
        for S in combinations(verts, m):
            inside = set(S)
            b = sum(1 for v in S for u in nbrs[v] if u not in inside)
            best = b if best is None else min(best, b)
        out[m] = best
    return out


@pytest.mark.parametrize("n,k", [(4, 2), (5, 2), (6, 2), (5, 3), (4, 1), (6, 5), (3, 3)])
def test_b_curve_matches_brute_force(n, k):
    curve = b_curve(n, k)
    assert {m: curve[m] for m in curve.values} == brute_curve(n, k)
    for m in curve.values:
        w = curve.witness(m)
        assert len(w) == m and boundary_direct(w) == curve[m]


def test_b_curve_example_n5():
    curve = b_curve(5, 2)
    assert curve[4] == 12
    assert curve.witness(4) == first_m(5, 4)
    assert [curve[m] for m in range(1, 6)] == [6, 10, 12, 12, 14]


@pytest.mark.parametrize("n,value,witness", [(4, Fraction(2), "L3"), (5, Fraction(14, 5), "L5"),
                                             (3, Fraction(2), None), (6, Fraction(26, 7), None),
                                             (7, Fraction(4), None)])
def test_iso_exact_values(n, value, witness):
    res = iso_exact(n, 2)
    assert res.value == value
    assert Fraction(boundary_direct(res.witness), len(res.witness)) == value
    assert 0 < len(res.witness) <= (n * (n - 1) // 2) // 2
    if witness:
        assert res.witness == last_m(n, int(witness[1:]))


@pytest.mark.parametrize("n", range(3, 8))
def test_iso_is_min_over_curve(n):
    curve = b_curve(n, 2)
    assert iso_exact(n, 2).value == min(Fraction(curve[m], m) for m in curve.values)


@pytest.mark.parametrize("n", range(3, 8))
def test_curve_invariant_under_reflection(n):
    curve = b_curve(n, 2)
    for m in curve.values:
        assert boundary_direct(reflect_set(curve.witness(m))) == curve[m]


@pytest.mark.parametrize("n,expected", [(4, 6), (5, 14), (3, 2)])
def test_bisection_bound(n, expected):
    assert bisection_bound(n, 2) == expected


def test_capacity_limits():
    with pytest.raises(CapacityError):
        iso_exact(8, 2)
    with pytest.raises(CapacityError):
        verify_ak(8)
    with pytest.raises(CapacityError):
        verify_lemma_sweep(31)
    with pytest.raises(ParameterError):
        b_curve(5, 2, m_max=11)


def test_iso_needs_a_nonempty_half():
    with pytest.raises(ParameterError):
        iso_exact(1, 1)


@pytest.mark.parametrize("n", range(2, 8))
def test_verify_ak(n):
    rep = verify_ak(n)
    assert rep.ok and not rep.violations
    assert [e.m for e in rep.entries] == list(range(1, n * (n - 1) // 4 + 1))


def test_verify_ak_n5_entries():
    e = {x.m: x for x in verify_ak(5).entries}
    assert (e[4].b, e[4].boundary_F, e[4].winner) == (12, 12, "F")
    assert e[5].winner == "tie"


def test_lemma_sweep_small():
    rep = verify_lemma_sweep(12)
    assert rep.ok
    assert rep.lemma4_checked > 0 and rep.lemma5_checked > 0
    only4 = verify_lemma_sweep(8, lemmas=(4,))
    assert only4.lemma5_checked == 0


def test_lemma_checks_on_examples():
    assert check_lemma4(5, 2, 3, 4) == []
    assert check_lemma5(5, 1, 3, 4) == []

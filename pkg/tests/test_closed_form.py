from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, strategies as st

from johnson_iso import closed_form as cf
from johnson_iso.boundary import boundary_lemma
from johnson_iso.candidate_sets import f_prime, last_m
from johnson_iso.errors import DomainError


def p_linear(n):
    ns = n * (n - 1) // 4
    p = 1
    while p * n - p * (p + 1) // 2 < ns:
        p += 1
    return p


def q_linear(n):
    ns = n * (n - 1) // 4
    q = 1
    while q * (q + 1) // 2 < ns:
        q += 1
    return q


@pytest.mark.parametrize("n,expected", [(3, 1), (4, 3), (5, 5)])
def test_n_star(n, expected):
    assert cf.n_star(n) == expected


@pytest.mark.parametrize("bad", [2, 1, 0, -4])
def test_small_n_rejected(bad):
    with pytest.raises(DomainError):
        cf.n_star(bad)
    with pytest.raises(DomainError):
        cf.ratio_L(bad)


@pytest.mark.parametrize("n,p,q", [(4, 1, 2), (5, 2, 3), (9, 3, 6), (3, 1, 1)])
def test_p_q_examples(n, p, q):
    assert cf.p_of(n) == p
    assert cf.q_of(n) == q


def test_p_q_match_linear_search():
    for n in range(3, 3000):
        assert cf.p_of(n) == p_linear(n) == cf.p_ceiling_formula(n)
        assert cf.q_of(n) == q_linear(n) == cf.q_ceiling_formula(n)


@given(st.integers(3, 10**30))
def test_ceiling_formulas_at_scale(n):
    ns = cf.n_star(n)
    p, q = cf.p_of(n), cf.q_of(n)
    assert p == cf.p_ceiling_formula(n)
    assert q == cf.q_ceiling_formula(n)
    assert cf.first_rows_count(n, p) >= ns > cf.first_rows_count(n, p - 1)
    assert q * (q + 1) // 2 >= ns > (q - 1) * q // 2


@pytest.mark.parametrize("n,ij", [(5, (2, 4)), (4, (2, 3)), (3, (2, 3))])
def test_lv_params_examples(n, ij):
    assert cf.lv_params(n) == ij


@pytest.mark.parametrize("n", range(3, 200))
def test_lv_params_is_first_vertex_of_suffix(n):
    i, j = cf.lv_params(n)
    assert i + 1 <= j <= n
    assert 1 <= n - j + 1 <= cf.q_of(n)
    assert last_m(n, cf.n_star(n)).vertices()[0].elements == (i, j)


@pytest.mark.parametrize("n,stats", [(4, (3, 6)), (5, (5, 14)), (3, (1, 2))])
def test_l_stats_examples(n, stats):
    assert cf.l_stats(n) == stats


@pytest.mark.parametrize("n,stats,ratio", [(4, (3, 6), Fraction(2)), (5, (7, 12), Fraction(12, 7)),
                                           (3, (2, 2), Fraction(1))])
def test_fp_stats_examples(n, stats, ratio):
    assert cf.fp_stats(n) == stats
    assert cf.ratio_Fp(n) == ratio == cf.ratio_Fp_rowform(n)


@pytest.mark.parametrize("n,rl,rf", [(4, Fraction(2), Fraction(2)),
                                     (5, Fraction(14, 5), Fraction(12, 7)),
                                     (3, Fraction(2), Fraction(1))])
def test_ratio_examples(n, rl, rf):
    assert cf.ratio_L(n) == rl == cf.ratio_L_quartic(n)
    assert cf.ratio_Fp(n) == rf


@pytest.mark.parametrize("n,gap", [(4, Fraction(0)), (5, Fraction(38, 35)), (3, Fraction(1))])
def test_conjecture_gap_examples(n, gap):
    assert cf.conjecture_gap(n) == gap
    assert cf.gap_within(n)


def test_gap_within_uses_bound():
    assert not cf.gap_within(5, Fraction(1))
    assert cf.gap_within(5, Fraction(38, 35))
    assert not cf.gap_within(5, Fraction(37, 35))


@pytest.mark.parametrize("n", range(3, 300))
def test_formulas_match_materialised_sets(n):
    L = last_m(n, cf.n_star(n))
    Fp = f_prime(n)
    assert cf.l_stats(n) == (len(L), boundary_lemma(L))
    assert cf.fp_stats(n) == (len(Fp), boundary_lemma(Fp))


@given(st.integers(3, 10**12))
def test_quartic_identity(n):
    assert cf.ratio_L_quartic(n) == cf.ratio_L(n)
    assert cf.ratio_Fp_rowform(n) == cf.ratio_Fp(n)


def test_iso_upper_bound_is_ratio_L():
    for n in (3, 4, 5, 50):
        assert cf.iso_upper_bound(n) == cf.ratio_L(n)


@pytest.mark.parametrize("n,expected", [(5, "0.955979"), (4, "0.853553")])
def test_deviation_examples(n, expected):
    assert cf.deviation(n).startswith(expected)


@pytest.mark.parametrize("n", [3, 4, 5, 17, 10**3, 10**6, 10**9, 10**15])
def test_deviation_against_mpmath(n):
    mpmath.mp.dps = 40
    r = cf.ratio_L(n)
    ref = mpmath.mpf(r.numerator) / mpmath.mpf(r.denominator) / ((2 - mpmath.sqrt(2)) * n)
    assert cf.deviation(n) == mpmath.nstr(ref, 12, strip_zeros=False, min_fixed=-30, max_fixed=30)


def test_decimal_rendering():
    assert cf.to_decimal(Fraction(2)) == "2.00000000000"
    assert cf.to_decimal(Fraction(38, 35)) == "1.08571428571"
    assert cf.to_decimal(Fraction(0)) == "0"
    assert cf.to_decimal(Fraction(585786, 1)) == "585786.000000"


def test_closed_form_row():
    row = cf.closed_form_row(5)
    assert (row.n_star, row.p, row.q, row.i, row.j) == (5, 2, 3, 2, 4)
    assert (row.l_size, row.l_boundary, row.fp_size, row.fp_boundary) == (5, 14, 7, 12)
    assert (row.ratio_L, row.ratio_Fp, row.gap) == (Fraction(14, 5), Fraction(12, 7), Fraction(38, 35))
    assert row.l_size == row.n_star and row.i == row.n - row.q

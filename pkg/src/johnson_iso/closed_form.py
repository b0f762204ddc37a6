"""Closed forms for the two competing candidates at size n* = floor(n(n-1)/4).

L = L_{n*}, the last n* vertices: a partial row i = n - q (columns j..n)
on top of the full bottom triangle of q - 1 rows.

F' = the first p complete rows of the diagram (F_{n*} with its last row
filled in).

Everything is exact integer / Fraction arithmetic.  Square roots only
appear inside ceilings and are decided with ``math.isqrt``.
"""
from __future__ import annotations

from dataclasses import dataclass
from decimal import Decimal, localcontext
from fractions import Fraction
from math import isqrt

from .errors import DomainError

SIG_DIGITS = 12


def _check_n(n: int) -> None:
    if not isinstance(n, int) or n < 3:
        raise DomainError(f"closed forms need an integer n >= 3, got {n!r}")


def n_star(n: int) -> int:
    _check_n(n)
    return n * (n - 1) // 4


def first_rows_count(n: int, p: int) -> int:
    return p * n - p * (p + 1) // 2


def p_of(n: int) -> int:
    """Smallest p whose first p rows hold at least n* vertices."""
    ns = n_star(n)
    p = (2 * n - 1 - isqrt((2 * n - 1) ** 2 - 8 * ns)) // 2
    p = max(p, 1)
    while first_rows_count(n, p) < ns:
        p += 1
    while p > 1 and first_rows_count(n, p - 1) >= ns:
        p -= 1
    return p


def p_ceiling_formula(n: int) -> int:
    """ceil((2n - 1 - sqrt((2n-1)^2 - 8n*)) / 2), evaluated exactly.

    With s = isqrt(D) the ceiling is ceil((2n-1-s)/2) whether or not D is
    a perfect square.
    """
    ns = n_star(n)
    s = isqrt((2 * n - 1) ** 2 - 8 * ns)
    return -((s - (2 * n - 1)) // 2)


def q_of(n: int) -> int:
    """Smallest q whose last q rows hold at least n* vertices."""
    ns = n_star(n)
    q = max((isqrt(8 * ns + 1) - 1) // 2, 1)
    while q * (q + 1) // 2 < ns:
        q += 1
    while q > 1 and (q - 1) * q // 2 >= ns:
        q -= 1
    return q


def q_ceiling_formula(n: int) -> int:
    """ceil((sqrt(8n* + 1) - 1) / 2), evaluated exactly."""
    x = 8 * n_star(n) + 1
    s = isqrt(x)
    return (s - 1) // 2 if s * s == x else (s + 1) // 2


def lv_params(n: int) -> tuple[int, int]:
    """(i, j) with L_{n*} = all vertices lex->= {i, j}."""
    ns = n_star(n)
    q = q_of(n)
    return n - q, n + q * (q - 1) // 2 + 1 - ns


def l_stats(n: int) -> tuple[int, int]:
    """(|L_{n*}|, |boundary L_{n*}|)."""
    q = q_of(n)
    i, j = lv_params(n)
    size = n - j + 1 + q * (q - 1) // 2
    sq = (n - j + 1) ** 2 + (q - 1) ** 2 * (j - i - 1) + q * q * (n - j + 1)
    return size, 2 * (n - 1) * size - sq


def fp_stats(n: int) -> tuple[int, int]:
    """(|F'|, |boundary F'|)."""
    p = p_of(n)
    size = first_rows_count(n, p)
    sq = p * (n - 1) ** 2 + (n - p) * p * p
    return size, 2 * (n - 1) * size - sq


def ratio_L(n: int) -> Fraction:
    size, bd = l_stats(n)
    return Fraction(bd, size)


def ratio_L_quartic(n: int) -> Fraction:
    """The same ratio written as a quartic in q over 4n*."""
    ns = n_star(n)
    q = q_of(n)
    num = (-q**4 + 2 * q**3 + q**2 - 4 * ns**2 - 2 * q + 4 * ns * q**2
           - 12 * ns * q + 8 * ns * n - 4 * ns)
    return Fraction(num, 4 * ns)


def ratio_Fp(n: int) -> Fraction:
    size, bd = fp_stats(n)
    return Fraction(bd, size)


def ratio_Fp_rowform(n: int) -> Fraction:
    """2(n-1) - (p(n-p) + (n-1)^2) / (n - (p+1)/2)."""
    p = p_of(n)
    return 2 * (n - 1) - Fraction(p * (n - p) + (n - 1) ** 2) / (n - Fraction(p + 1, 2))


def conjecture_gap(n: int) -> Fraction:
    return abs(ratio_L(n) - ratio_Fp(n))


def gap_within(n: int, bound: Fraction = Fraction(3, 2)) -> bool:
    """|A/B - C/D| <= num/den, decided by integer cross-multiplication."""
    b, a = l_stats(n)
    d, c = fp_stats(n)
    return bound.denominator * abs(a * d - b * c) <= bound.numerator * b * d


def iso_upper_bound(n: int) -> Fraction:
    """|dL_{n*}|/|L_{n*}|, an upper bound for iso(J(n,2)).

    F' is not used here: it can hold more than half of the vertices, so it
    only serves as the competitor in the lower bound.
    """
    return ratio_L(n)


def to_decimal(x: Fraction, digits: int = SIG_DIGITS) -> str:
    """Render an exact fraction with `digits` significant digits."""
    if x == 0:
        return "0"
    with localcontext() as ctx:
        ctx.prec = digits + 10
        d = Decimal(x.numerator) / Decimal(x.denominator)
        ctx.prec = digits
        return _sig(+d, digits)


def _sig(d: Decimal, digits: int) -> str:
    # fixed notation with exactly `digits` significant digits
    exp = d.adjusted()
    places = max(digits - 1 - exp, 0)
    return f"{d:.{places}f}"


def deviation_decimal(n: int, prec: int = 50) -> Decimal:
    r = ratio_L(n)
    with localcontext() as ctx:
        ctx.prec = prec
        return Decimal(r.numerator) / (Decimal(r.denominator) * (2 - Decimal(2).sqrt()) * n)


def deviation(n: int, digits: int = SIG_DIGITS) -> str:
    """ratio_L / ((2 - sqrt 2) n) as a decimal string."""
    d = deviation_decimal(n, prec=digits + 20)
    with localcontext() as ctx:
        ctx.prec = digits
        return _sig(+d, digits)


@dataclass(frozen=True)
class ClosedFormRow:
    n: int
    n_star: int
    p: int
    q: int
    i: int
    j: int
    l_size: int
    l_boundary: int
    fp_size: int
    fp_boundary: int
    ratio_L: Fraction
    ratio_Fp: Fraction
    gap: Fraction
    deviation: str


def closed_form_row(n: int) -> ClosedFormRow:
    ls, lb = l_stats(n)
    fs, fb = fp_stats(n)
    i, j = lv_params(n)
    rl, rf = Fraction(lb, ls), Fraction(fb, fs)
    return ClosedFormRow(n, n_star(n), p_of(n), q_of(n), i, j, ls, lb, fs, fb,
                         rl, rf, abs(rl - rf), deviation(n))

"""q-analogs: ``[m]_q`` and Gaussian binomial coefficients, exact."""

from __future__ import annotations

from fractions import Fraction


def gauss_bracket(m: int, q: int) -> int:
    """``[m]_q = (q^m - 1) / (q - 1)``, or ``m`` when ``q == 1``."""
    if q == 1:
        return m
    return (q**m - 1) // (q - 1)


def gaussian(n: int, m: int, q: int) -> int:
    """Number of m-subspaces of V(n, q); zero outside ``0 <= m <= n``."""
    if m < 0 or m > n:
        return 0
    num = den = 1
    for i in range(1, m + 1):
        num *= gauss_bracket(n - i + 1, q)
        den *= gauss_bracket(i, q)
    value, rem = divmod(num, den)
    assert rem == 0
    return value


def bracket_sandwich(m: int, q: int) -> tuple[Fraction, int, Fraction]:
    """``(lower, [m]_q, upper)`` with lower <= [m]_q < upper for m >= 2."""
    lead = Fraction(q ** (m - 1))
    return (1 + Fraction(1, q)) * lead, gauss_bracket(m, q), (1 + Fraction(1, q - 1)) * lead


def check_bracket_sandwich(m: int, q: int) -> bool:
    lo, value, hi = bracket_sandwich(m, q)
    return lo <= value < hi

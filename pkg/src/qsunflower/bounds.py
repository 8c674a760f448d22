"""Exact size bounds for s-sunflower-free families of k-spaces."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, gcd

from .gaussian import gauss_bracket


def upper_bound(s: int, k: int, q: int) -> int:
    """``prod_{i=1..k} [i(s-1)]_q``."""
    if s < 3 or k < 1:
        raise ValueError("need s >= 3 and k >= 1")
    out = 1
    for i in range(1, k + 1):
        out *= gauss_bracket(i * (s - 1), q)
    return out


def exponent_A(s: int, k: int) -> int:
    return (s - 1) * comb(k + 1, 2) - k


def exponent_B(s: int, k: int) -> int:
    num = k * (gcd(k, s - 1) - 3)
    assert num % 2 == 0
    return (s - 2) * comb(k + 1, 2) + num // 2


def lower_bound_exponent(s: int, k: int) -> int:
    return exponent_A(s, k) if s >= k + 1 else exponent_B(s, k)


def lower_bound(s: int, k: int, q: int) -> int:
    return q ** lower_bound_exponent(s, k)


def upper_cap(s: int, k: int, q: int) -> Fraction:
    """``(q/(q-1))^k * q^((s-1) binom(k+1, 2) - k)`` as an exact rational."""
    return Fraction(q, q - 1) ** k * Fraction(q) ** exponent_A(s, k)


@dataclass(frozen=True)
class BoundReport:
    s: int
    k: int
    q: int
    lower: int
    product: int
    cap: Fraction

    @property
    def regime(self) -> str:
        return "s>=k+1" if self.s >= self.k + 1 else "s<=k"

    @property
    def holds(self) -> bool:
        return self.lower <= self.product <= self.cap

    def ratios(self) -> dict[str, Fraction]:
        base = Fraction(self.q) ** exponent_A(self.s, self.k)
        return {
            "lower/base": Fraction(self.lower) / base,
            "product/base": Fraction(self.product) / base,
            "cap/base": Fraction(self.q, self.q - 1) ** self.k,
        }

    def to_dict(self) -> dict:
        return {
            "s": self.s,
            "k": self.k,
            "q": self.q,
            "regime": self.regime,
            "lower": str(self.lower),
            "upper_product": str(self.product),
            "upper_cap": f"{self.cap.numerator}/{self.cap.denominator}" if self.cap.denominator != 1 else str(self.cap),
            "holds": self.holds,
        }


def bound_sandwich(s: int, k: int, q: int) -> BoundReport:
    if s < 3 or k < 2:
        raise ValueError("need s >= 3 and k >= 2")
    report = BoundReport(s, k, q, lower_bound(s, k, q), upper_bound(s, k, q), upper_cap(s, k, q))
    if not report.holds:
        raise ArithmeticError(f"bound chain fails for s={s}, k={k}, q={q}")
    return report


def floor_sum_direct(mu: int, nu: int) -> int:
    return sum(kappa * mu // nu for kappa in range(1, nu))


def floor_sum_closed_form(mu: int, nu: int) -> int:
    num = (mu - 1) * (nu - 1) + gcd(mu, nu) - 1
    assert num % 2 == 0
    return num // 2


def floor_sum(mu: int, nu: int) -> int:
    """``sum_{kappa=1}^{nu-1} floor(kappa*mu/nu)``, checked against the gcd closed form."""
    if mu < 1 or nu < 1:
        raise ValueError("need positive integers")
    direct = floor_sum_direct(mu, nu)
    if direct != floor_sum_closed_form(mu, nu):
        raise ArithmeticError(f"floor-sum identity fails at ({mu}, {nu})")
    return direct

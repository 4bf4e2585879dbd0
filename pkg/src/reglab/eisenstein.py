"""Weight-3 Eisenstein series for Gamma_1(3) and the rational coefficient
families that feed the fast period series.

    E3a = 1 - 9 sum_n (sum_{k|n} chi(k) k^2) q^n
    E3b =     sum_n (sum_{k|n} chi(n/k) k^2) q^n

with chi the quadratic character mod 3.  From these,

    E3b * (E3a / (E3a + 27 E3b)) ** (j/l)        = sum_{n>=1} a_n(j) q^n
    E3a * (E3b / (q (E3a + 27 E3b))) ** (j/l)    = sum_{n>=0} b_n(j) q^n
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .exact import TruncatedSeries, format_rational, series_fractional_pow

DEFAULT_TERMS = 64


def chi3(k: int) -> int:
    """Legendre symbol (k/3)."""
    r = k % 3
    return 0 if r == 0 else (1 if r == 1 else -1)


def divisors(n: int) -> list[int]:
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def e3a_coefficient(n: int) -> int:
    if n == 0:
        return 1
    return -9 * sum(chi3(k) * k * k for k in divisors(n))


def e3b_coefficient(n: int) -> int:
    if n == 0:
        return 0
    return sum(chi3(n // k) * k * k for k in divisors(n))


@dataclass(frozen=True)
class QExpansion:
    label: str
    series: TruncatedSeries

    def __getitem__(self, n: int) -> Fraction:
        return self.series[n]

    def coefficients(self) -> list[Fraction]:
        return self.series.coefficients(0, self.series.order)


@lru_cache(maxsize=None)
def eisenstein_e3a(N: int) -> QExpansion:
    """E3a through q^N."""
    if N < 1:
        raise ValueError("N must be >= 1")
    return QExpansion("E3a", TruncatedSeries([e3a_coefficient(n) for n in range(N + 1)], 0, N + 1))


@lru_cache(maxsize=None)
def eisenstein_e3b(N: int) -> QExpansion:
    """E3b through q^N (offset 1)."""
    if N < 1:
        raise ValueError("N must be >= 1")
    return QExpansion("E3b", TruncatedSeries([e3b_coefficient(n) for n in range(N + 1)], 0, N + 1))


@lru_cache(maxsize=None)
def _hauptmodul_ratios(N: int) -> tuple[TruncatedSeries, TruncatedSeries, TruncatedSeries, TruncatedSeries]:
    # everything known through q^N
    a = eisenstein_e3a(N + 1).series
    b = eisenstein_e3b(N + 1).series
    denom = a + b * 27
    ratio_a = (a / denom).truncate(N + 1)            # E3a/(E3a+27E3b) = 1 - 27q + ...
    ratio_b = (b.shift(-1) / denom).truncate(N + 1)  # E3b/(q(E3a+27E3b)) = 1 - 15q + ...
    return a.truncate(N + 1), b.truncate(N + 1), ratio_a, ratio_b


def _fraction_exponent(j: int, l: int) -> Fraction:
    return Fraction(j, l)


def _check_range(j: int, l: int, allow_zero: bool) -> None:
    if l < 1:
        raise ValueError(f"l must be positive, got {l}")
    lo = 0 if allow_zero else 1
    if not lo <= j <= l - 1:
        raise ValueError(f"j must satisfy {lo} <= j <= l-1, got j={j}, l={l}")


@lru_cache(maxsize=None)
def _a_coeffs(x: Fraction, N: int) -> tuple[Fraction, ...]:
    _, b, ratio_a, _ = _hauptmodul_ratios(N)
    s = b * series_fractional_pow(ratio_a, x)
    return tuple(s.coefficients(1, N + 1))


@lru_cache(maxsize=None)
def _b_coeffs(x: Fraction, N: int) -> tuple[Fraction, ...]:
    a, _, _, ratio_b = _hauptmodul_ratios(N)
    s = a * series_fractional_pow(ratio_b, x)
    return tuple(s.coefficients(0, N + 1))


def a_series(j: int, l: int, N: int = DEFAULT_TERMS, *, allow_zero: bool = False) -> list[Fraction]:
    """``[a_1(j), ..., a_N(j)]``; depends on (j, l) only through j/l."""
    _check_range(j, l, allow_zero)
    if N < 3:
        raise ValueError("a_series needs N >= 3")
    return list(_a_coeffs(_fraction_exponent(j, l), N))


def b_series(j: int, l: int, N: int = DEFAULT_TERMS, *, allow_zero: bool = False) -> list[Fraction]:
    """``[b_0(j), ..., b_N(j)]``."""
    _check_range(j, l, allow_zero)
    if N < 2:
        raise ValueError("b_series needs N >= 2")
    return list(_b_coeffs(_fraction_exponent(j, l), N))


@dataclass(frozen=True)
class CoefficientFamily:
    j: int
    l: int
    a: tuple[Fraction, ...]  # a_1 .. a_N
    b: tuple[Fraction, ...]  # b_0 .. b_N
    N: int

    def to_json(self) -> dict:
        return {
            "j": self.j,
            "l": self.l,
            "N": self.N,
            "a": [format_rational(c) for c in self.a],
            "b": [format_rational(c) for c in self.b],
        }


def coefficient_family(j: int, l: int, N: int = DEFAULT_TERMS) -> CoefficientFamily:
    return CoefficientFamily(j, l, tuple(a_series(j, l, max(N, 3))[:N]), tuple(b_series(j, l, max(N, 2))[: N + 1]), N)

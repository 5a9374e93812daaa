"""Exact counting for the size of the cover-pair set system.

All quantities are unbounded integers or ``fractions.Fraction``; nothing here
touches floating point except the asymptotic share-size reference.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import InvalidArgument


@lru_cache(maxsize=None)
def stirling2(n: int, k: int) -> int:
    """Stirling number of the second kind, S(n, k)."""
    if n < 0 or k < 0 or k > n:
        raise InvalidArgument(f"stirling2 needs 0 <= k <= n, got ({n}, {k})")
    if n == k:
        return 1
    if k == 0:
        return 0
    return k * stirling2(n - 1, k) + stirling2(n - 1, k - 1)


@lru_cache(maxsize=None)
def eulerian(n: int, k: int) -> int:
    """Number of permutations of [n] with exactly k ascents."""
    if n < 0 or k < 0 or k >= max(n, 1):
        raise InvalidArgument(f"eulerian needs 0 <= k < max(n, 1), got ({n}, {k})")
    if k == 0:
        return 1
    if k == n - 1:
        return 1
    return (k + 1) * eulerian(n - 1, k) + (n - k) * eulerian(n - 1, k - 1)


def surjections(n: int, k: int) -> int:
    """k! S(n, k): strings of length n using exactly k given symbols."""
    return math.factorial(k) * stirling2(n, k)


def n_k(n: int, k: int) -> int:
    """Number of strings in {0..n-1}^n with exactly k distinct symbols."""
    if not 1 <= k <= n:
        raise InvalidArgument(f"n_k needs 1 <= k <= n, got ({n}, {k})")
    return math.comb(n, k) * surjections(n, k)


def s_of_n_sum(n: int) -> int:
    """S(n) = sum_k C(n,k) (k! S(n,k))^2, the number of cover pairs."""
    if n < 1:
        raise InvalidArgument("n must be >= 1")
    return sum(math.comb(n, k) * surjections(n, k) ** 2 for k in range(1, n + 1))


@dataclass(frozen=True)
class RationalPoly:
    """Polynomial with exact rational coefficients, lowest power first."""

    coefficients: tuple[Fraction, ...]

    def __post_init__(self):
        c = [Fraction(x) for x in self.coefficients]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coefficients", tuple(c))

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def coeff(self, power: int) -> Fraction:
        if 0 <= power < len(self.coefficients):
            return self.coefficients[power]
        return Fraction(0)

    def __mul__(self, other: "RationalPoly") -> "RationalPoly":
        a, b = self.coefficients, other.coefficients
        if not a or not b:
            return RationalPoly(())
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                out[i + j] += x * y
        return RationalPoly(tuple(out))


def touchard(n: int) -> RationalPoly:
    """T_n(x) = sum_k S(n, k) x^k."""
    return RationalPoly(tuple(Fraction(stirling2(n, k)) for k in range(n + 1)))


def convolution_poly(n: int) -> RationalPoly:
    """P_n(x) = sum_k (sum_j A(n,j) C(j,k)) x^k / k!, A = Eulerian numbers.

    Equivalently sum_k (n-k)! S(n, n-k) x^k / k!; the Eulerian form is used
    here and the closed form is checked against it in the tests.
    """
    coeffs = []
    for k in range(n + 1):
        inner = sum(eulerian(n, j) * math.comb(j, k) for j in range(max(n, 1)))
        coeffs.append(Fraction(inner, math.factorial(k)))
    return RationalPoly(tuple(coeffs))


def s_of_n_gf(n: int) -> int:
    """S(n) = n! [x^n] T_n(x) P_n(x)."""
    if n < 1:
        raise InvalidArgument("n must be >= 1")
    value = math.factorial(n) * (touchard(n) * convolution_poly(n)).coeff(n)
    if value.denominator != 1:
        raise ArithmeticError(f"non-integral S({n}) = {value}")
    return int(value)


def growth_bound_check(n: int) -> bool:
    """S(n) > n^(1.5 n), compared as S(n)^2 > n^(3n)."""
    if n <= 2:
        raise InvalidArgument("growth bound is stated for n > 2")
    return s_of_n_sum(n) ** 2 > n ** (3 * n)


def max_share_elements(ell: int) -> tuple[int, float]:
    """Per-party element count at the largest antichain, and its ratio to
    the asymptotic 2^(ell+1) / sqrt(pi ell / 2)."""
    if ell < 2:
        raise InvalidArgument("ell must be >= 2")
    count = 2 * math.comb(ell, ell // 2)
    reference = 2 ** (ell + 1) / math.sqrt(math.pi * ell / 2)
    return count, count / reference


def counting_table(n_max: int) -> list[dict]:
    """Rows (n, N_k row, S(n), bound comparison) for the CLI."""
    rows = []
    for n in range(1, n_max + 1):
        s = s_of_n_sum(n)
        rows.append({
            "n": n,
            "N_k": [n_k(n, k) for k in range(1, n + 1)],
            "S": s,
            "S_gf": s_of_n_gf(n),
            "exceeds_n_pow_1.5n": growth_bound_check(n) if n > 2 else None,
        })
    return rows

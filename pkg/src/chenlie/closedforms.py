"""Closed-form Chen and LCS rank series, with exact integer arithmetic."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Sequence


@dataclass(frozen=True)
class SeriesTable:
    label: str
    coefficients: tuple  # c_1 .. c_kmax

    def __getitem__(self, k: int) -> int:
        """Coefficient of t^k (1-based)."""
        return self.coefficients[k - 1]

    def as_list(self) -> list[int]:
        return list(self.coefficients)


def witt_rank(n: int, d: int) -> int:
    """Rank of the degree-d piece of the free Lie algebra on n generators."""
    if n < 1 or d < 1:
        raise ValueError("need n >= 1 and d >= 1")
    total = 0
    for e in range(1, d + 1):
        if d % e == 0:
            total += mobius(e) * n ** (d // e)
    return total // d


def mobius(m: int) -> int:
    out = 1
    f = 2
    while f * f <= m:
        if m % f == 0:
            m //= f
            if m % f == 0:
                return 0
            out = -out
        f += 1
    if m > 1:
        out = -out
    return out


def free_chen_rank(n: int, k: int) -> int:
    """theta_k(F_n): n for k = 1, (k-1) C(n+k-2, k) for k >= 2."""
    if n < 0 or k < 1:
        raise ValueError("need n >= 0 and k >= 1")
    if k == 1:
        return n
    return (k - 1) * comb(n + k - 2, k)


def free_chen_series(n: int, kmax: int) -> SeriesTable:
    return SeriesTable(f"free(n={n})", tuple(free_chen_rank(n, k) for k in range(1, kmax + 1)))


def one_relator_series(n: int, kmax: int) -> SeriesTable:
    """Coefficients of 1 + n t - (1 - n t + t^2)/(1 - t)^n."""
    if n < 2:
        raise ValueError("need n >= 2")

    def inv(k: int) -> int:
        # [t^k] (1 - t)^(-n)
        return comb(n + k - 1, k) if k >= 0 else 0

    coeffs = []
    for k in range(1, kmax + 1):
        c = -(inv(k) - n * inv(k - 1) + inv(k - 2))
        if k == 1:
            c += n
        coeffs.append(c)
    return SeriesTable(f"one-relator(n={n})", tuple(coeffs))


def pure_braid_series(n: int, kmax: int) -> SeriesTable:
    """theta_k(P_n) from Hilb(B) = C(n+1,4)/(1-t)^2 - C(n,4)."""
    if n < 2:
        raise ValueError("need n >= 2")
    a, b = comb(n + 1, 4), comb(n, 4)
    coeffs = [comb(n, 2)]
    for k in range(2, kmax + 1):
        coeffs.append((k - 1) * a - (b if k == 2 else 0))
    return SeriesTable(f"pure-braid(n={n})", tuple(coeffs[:kmax]))


def surface_lcs_poly(g: int) -> list[int]:
    if g < 1:
        raise ValueError("genus must be at least 1")
    return [1, -2 * g, 1]


def _binom_series(e: int, k: int, kmax: int) -> list[int]:
    """Coefficients of (1 - t^k)^e up to t^kmax, for any integer e."""
    out = [0] * (kmax + 1)
    for j in range(kmax // k + 1):
        if e >= 0:
            out[j * k] = (-1) ** j * comb(e, j)
        else:
            out[j * k] = comb(-e + j - 1, j)
    return out


def _mul(a: list, b: list, kmax: int) -> list:
    out = [0] * (kmax + 1)
    for i, x in enumerate(a):
        if not x:
            continue
        for j in range(kmax + 1 - i):
            if b[j]:
                out[i + j] += x * b[j]
    return out


class NonIntegralExponent(ValueError):
    pass


def invert_lcs_product(poly: Sequence, kmax: int) -> SeriesTable:
    """Exponents phi_1..phi_kmax with prod (1 - t^k)^phi_k == poly mod t^(kmax+1)."""
    coeffs = [Fraction(x) for x in poly]
    if not coeffs or coeffs[0] != 1:
        raise ValueError("polynomial must have constant term 1")
    rest = (coeffs + [Fraction(0)] * (kmax + 1))[: kmax + 1]
    phis = []
    for k in range(1, kmax + 1):
        # Factors for j < k are divided out, so rest = 1 - phi_k t^k + O(t^(k+1)).
        phi = -rest[k]
        if phi.denominator != 1:
            raise NonIntegralExponent(
                f"exponent of (1 - t^{k}) would be {phi}; not an LCS product to order {kmax}"
            )
        phi = int(phi)
        phis.append(phi)
        rest = _mul(rest, _binom_series(-phi, k, kmax), kmax)
    return SeriesTable("lcs-exponents", tuple(phis))


def lcs_product(phis: Sequence[int], kmax: int) -> list[int]:
    """Expand prod_k (1 - t^k)^phi_k up to t^kmax; inverse of invert_lcs_product."""
    out = [1] + [0] * kmax
    for k, phi in enumerate(phis, start=1):
        if k > kmax:
            break
        out = _mul(out, _binom_series(phi, k, kmax), kmax)
    return out

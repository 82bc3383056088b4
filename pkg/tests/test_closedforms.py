"""Closed-form series and LCS product inversion."""

from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from chenlie.closedforms import (
    NonIntegralExponent,
    free_chen_rank,
    free_chen_series,
    invert_lcs_product,
    lcs_product,
    mobius,
    one_relator_series,
    pure_braid_series,
    surface_lcs_poly,
    witt_rank,
)


def _necklace_count(n, d):
    # primitive necklaces of length d, counted by brute force
    seen = set()
    count = 0
    for w in product(range(n), repeat=d):
        rots = {w[k:] + w[:k] for k in range(d)}
        if len(rots) == d and min(rots) not in seen:
            seen.add(min(rots))
            count += 1
    return count


@pytest.mark.parametrize("n", [1, 2, 3])
@pytest.mark.parametrize("d", range(1, 7))
def test_witt_rank_counts_primitive_necklaces(n, d):
    assert witt_rank(n, d) == _necklace_count(n, d)


def test_mobius():
    assert [mobius(m) for m in range(1, 13)] == [1, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0]


def test_free_chen_rank():
    assert free_chen_rank(2, 4) == 3
    assert free_chen_rank(3, 3) == 8
    assert free_chen_rank(3, 4) == 15
    assert free_chen_rank(7, 1) == 7
    assert free_chen_rank(0, 3) == 0
    assert free_chen_series(4, 5).as_list() == [4, 6, 20, 45, 84]
    with pytest.raises(ValueError):
        free_chen_rank(2, 0)


def _series_coeffs(num, den_power, kmax):
    # [t^k] num(t) / (1 - t)^den_power, by repeated partial sums
    c = list(num) + [0] * (kmax + 1)
    c = c[:kmax + 1]
    for _ in range(den_power):
        for k in range(1, kmax + 1):
            c[k] += c[k - 1]
    return c


@pytest.mark.parametrize("n", [2, 3, 4, 6])
def test_one_relator_series_by_partial_sums(n):
    kmax = 8
    rest = _series_coeffs([1, -n, 1], n, kmax)
    expected = [-rest[k] + (n if k == 1 else 0) for k in range(1, kmax + 1)]
    assert one_relator_series(n, kmax).as_list() == expected


def test_one_relator_examples():
    assert one_relator_series(2, 5).as_list() == [2, 0, 0, 0, 0]
    assert one_relator_series(4, 4).as_list() == [4, 5, 16, 35]
    for g in (1, 2, 3):
        assert one_relator_series(2 * g, 2)[2] == (2 * g) * (2 * g - 1) // 2 - 1


def test_pure_braid_series():
    assert pure_braid_series(4, 5).as_list() == [6, 4, 10, 15, 20]
    assert pure_braid_series(2, 4).as_list() == [1, 0, 0, 0]
    assert pure_braid_series(5, 3)[3] == 30


def test_surface_poly():
    assert surface_lcs_poly(1) == [1, -2, 1]
    assert surface_lcs_poly(3) == [1, -6, 1]


def test_invert_examples():
    assert invert_lcs_product([1, -2, 1], 5).as_list() == [2, 0, 0, 0, 0]
    # (1 - t)(1 - 2t)(1 - 3t)
    assert invert_lcs_product([1, -6, 11, -6], 6).as_list()[:3] == [6, 4, 10]
    assert invert_lcs_product([1, -4, 1], 4).as_list() == [4, 5, 16, 45]


@pytest.mark.parametrize("jmax", [1, 2, 3, 4])
def test_product_of_linear_factors_gives_witt_sums(jmax):
    poly = [1]
    for j in range(1, jmax + 1):
        poly = [a - j * b for a, b in zip(poly + [0], [0] + poly)]
    phis = invert_lcs_product(poly, 7).as_list()
    assert phis == [sum(witt_rank(j, k) for j in range(1, jmax + 1)) for k in range(1, 8)]


@given(st.lists(st.integers(-4, 6), min_size=1, max_size=6))
def test_product_and_inverse_round_trip(phis):
    kmax = len(phis)
    assert invert_lcs_product(lcs_product(phis, kmax), kmax).as_list() == phis


@given(st.lists(st.integers(-5, 5), max_size=6))
def test_integer_polynomials_always_invert(tail):
    kmax = 6
    phis = invert_lcs_product([1] + tail, kmax).as_list()
    assert lcs_product(phis, kmax)[:len(tail) + 1] == ([1] + tail)[:kmax + 1]


def test_nonintegral_rejected():
    with pytest.raises(NonIntegralExponent):
        invert_lcs_product([1, Fraction(1, 2)], 3)
    with pytest.raises(ValueError):
        invert_lcs_product([2, 1], 3)

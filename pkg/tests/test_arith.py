import math

import pytest
from hypothesis import given, strategies as st

from weylcoh.arith import (
    ConfigMismatchError,
    FpConfig,
    binom_mod,
    binom_mod_p,
    mi_add,
    mi_min,
    mi_sub,
    total_degree,
)


@pytest.mark.parametrize("m, r, p, expected", [
    (5, 2, 3, 1),   # 10 mod 3
    (7, 0, 2, 1),
    (2, 1, 2, 0),   # 2 mod 2
    (3, 5, 7, 0),   # r > m
])
def test_binom_examples(m, r, p, expected):
    assert binom_mod_p(m, r, FpConfig(p)) == expected


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_binom_matches_exact_integers(p):
    for m in range(41):
        for r in range(41):
            assert binom_mod(m, r, p) == math.comb(m, r) % p, (m, r, p)


@pytest.mark.parametrize("p", [2, 3, 5])
def test_pascal_rule_exhaustive(p):
    for m in range(1, p * p):
        for r in range(1, p * p):
            assert binom_mod(m, r, p) == (binom_mod(m - 1, r - 1, p) + binom_mod(m - 1, r, p)) % p


@pytest.mark.parametrize("p", [2, 3, 5])
@pytest.mark.parametrize("e", [1, 2, 3])
def test_prime_power_row_vanishes(p, e):
    q = p ** e
    assert all(binom_mod(q, j, p) == 0 for j in range(1, q))
    assert binom_mod(q, 0, p) == binom_mod(q, q, p) == 1


@given(st.integers(0, 10**6), st.integers(0, 10**6), st.sampled_from([2, 3, 5, 11, 101]))
def test_lucas_against_exact_for_large_arguments(m, r, p):
    if m < 3000:
        assert binom_mod(m, r, p) == math.comb(m, r) % p
    else:
        assert 0 <= binom_mod(m, r, p) < p


def test_composite_modulus_rejected():
    for bad in (0, 1, 4, 9, 91):
        with pytest.raises(ValueError):
            FpConfig(bad)
    assert FpConfig(7919).p == 7919


def test_scalar_arithmetic():
    F = FpConfig(5)
    a, b = F(3), F(4)
    assert a + b == 2
    assert a * b == 2
    assert a - b == 4
    assert -a == 2
    assert a / b == F(3 * pow(4, -1, 5))
    assert a.inverse() * a == 1
    assert F(12).value == 2


def test_scalars_of_different_fields_do_not_mix():
    with pytest.raises(ConfigMismatchError):
        FpConfig(2)(1) + FpConfig(3)(1)
    with pytest.raises(ZeroDivisionError):
        FpConfig(3)(0).inverse()


def test_multiindex_ops():
    assert mi_add((1, 2), (0, 3)) == (1, 5)
    assert mi_sub((1, 0), (0, 1)) is None
    assert mi_sub((2, 3), (1, 1)) == (1, 2)
    assert mi_min((2, 0), (1, 4)) == (1, 0)
    assert total_degree((2, 3)) == 5
    with pytest.raises(ValueError):
        mi_add((1,), (1, 2))

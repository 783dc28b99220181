from fractions import Fraction

import pytest

from fockhall.combinatorics import Partition, partitions_of
from fockhall.symfunc import (
    PowerSumExpansion, column, column_pieri_witness, littlewood_richardson, mn_character,
    schur_in_power_sums, z_factor,
)

half = Fraction(1, 2)


def test_character_examples():
    assert all(mn_character((4,), rho) == 1 for rho in partitions_of(4))
    assert mn_character((1, 1), (2,)) == -1
    assert mn_character((2, 1), (1, 1, 1)) == 2


def test_schur_examples():
    p = PowerSumExpansion.p
    assert schur_in_power_sums((1,)) == p((1,))
    assert schur_in_power_sums((2,)) == p((1, 1)) * half + p((2,)) * half
    assert schur_in_power_sums((1, 1)) == p((1, 1)) * half + p((2,)) * (-half)


def test_lr_examples():
    assert littlewood_richardson((2,), (1,), (1,)) == 1
    assert littlewood_richardson((2, 1), (2,), (1,)) == 1
    assert littlewood_richardson((1, 1, 1), (2,), (1,)) == 0


@pytest.mark.parametrize("k", range(1, 7))
def test_character_orthogonality(k):
    parts = partitions_of(k)
    for lam in parts:
        for mu in parts:
            s = sum(Fraction(mn_character(lam, r) * mn_character(mu, r), z_factor(r)) for r in parts)
            assert s == (1 if lam == mu else 0)


def test_schur_products_are_positive_and_integral():
    for a in range(1, 4):
        for b in range(1, 4):
            for mu in partitions_of(a):
                for nu in partitions_of(b):
                    prod = schur_in_power_sums(mu) * schur_in_power_sums(nu)
                    for lam, c in prod.to_schur().items():
                        assert c.denominator == 1 and c > 0
                        assert c == littlewood_richardson(lam, mu, nu)


def test_column_coefficients_are_zero_or_one():
    for k in range(1, 7):
        for lam in partitions_of(k):
            for l in range(1, k + 1):
                for mu in partitions_of(k - l):
                    assert littlewood_richardson(lam, column(l), mu) in (0, 1)


def test_column_pieri_witness_exists():
    for k in range(1, 7):
        for nu in partitions_of(k):
            l, mu = column_pieri_witness(nu)
            assert l >= 1 and littlewood_richardson(nu, column(l), mu) == 1
    assert column_pieri_witness(Partition()) is None

from fractions import Fraction
from math import factorial

import pytest
from hypothesis import given
from hypothesis import strategies as st

from rspin.partitions import (as_partition, automorphism_count, class_size, completed_cycle,
                              conjugate, dimension, irreducible_character, load_character_table,
                              partitions, save_character_table, shifted_power_sum,
                              stable_central_character, z_mu)

small_partition = st.integers(1, 7).flatmap(lambda n: st.sampled_from(partitions(n)))


def test_partition_counts():
    assert [len(partitions(n)) for n in range(9)] == [1, 1, 2, 3, 5, 7, 11, 15, 22]
    assert partitions(3) == ((3,), (2, 1), (1, 1, 1))


def test_as_partition():
    assert as_partition([1, 3, 2]) == (3, 2, 1)
    with pytest.raises(ValueError):
        as_partition([2, 0])


@given(small_partition)
def test_sum_of_squares_of_dimensions(lam):
    n = sum(lam)
    assert sum(dimension(l) ** 2 for l in partitions(n)) == factorial(n)
    assert irreducible_character(lam, (1,) * n) == dimension(lam)


@given(small_partition)
def test_sign_character(lam):
    n = sum(lam)
    sign = (-1) ** (n - len(lam))
    assert irreducible_character((1,) * n, lam) == sign
    for nu in partitions(n):
        assert irreducible_character(conjugate(nu), lam) == sign * irreducible_character(nu, lam)


@pytest.mark.parametrize("n", range(1, 7))
def test_column_orthogonality(n):
    for mu in partitions(n):
        for nu in partitions(n):
            s = sum(irreducible_character(l, mu) * irreducible_character(l, nu) for l in partitions(n))
            assert s == (z_mu(mu) if mu == nu else 0)


def test_class_sizes():
    assert sum(class_size(mu) for mu in partitions(5)) == 120
    assert automorphism_count((2, 2, 1)) == 2


def test_shifted_power_sum_examples():
    assert shifted_power_sum(1, (3, 1)) == 4
    assert shifted_power_sum(2, (2,)) == 1
    assert shifted_power_sum(3, ()) == 0


@given(small_partition)
def test_transposition_eigenvalue(lam):
    # C_(2) acts by the content sum
    content = sum(j - i for i, row in enumerate(lam) for j in range(row))
    assert stable_central_character((2,), lam) == content


@pytest.mark.parametrize("k,expected", [
    (1, {(1,): 1}),
    (2, {(2,): 1}),
    (3, {(3,): 1, (1, 1): 1, (1,): Fraction(1, 12)}),
    (4, {(4,): 1, (2, 1): 2, (2,): Fraction(5, 4)}),
])
def test_completed_cycles_small(k, expected):
    assert completed_cycle(k).as_dict() == expected


def test_completed_cycle_five():
    c = completed_cycle(5).as_dict()
    assert c[(1,)] == Fraction(1, 80)
    assert c[(3, 1)] == 3 and c[(2, 2)] == 4 and c[(1, 1, 1)] == 4
    assert c[(1, 1)] == Fraction(3, 2)
    # forced by the defining eigenvalue property (see the mu = (3) check below)
    assert c[(3,)] == Fraction(11, 2)


@pytest.mark.parametrize("k", range(1, 7))
def test_completed_cycle_eigenvalues(k):
    cyc = completed_cycle(k)
    for n in range(0, 7):
        for mu in partitions(n):
            assert cyc.eigenvalue(mu) == shifted_power_sum(k, mu)


def test_genus_defect_integral():
    for t in completed_cycle(5).terms:
        assert t.genus_defect.denominator == 1 and t.genus_defect >= 0


def test_character_cache_roundtrip(tmp_path):
    path = tmp_path / "chars.json"
    save_character_table(4, path)
    table = load_character_table(path)
    assert table[((2, 2), (2, 1, 1))] == 0
    assert table[((3, 1), (1, 1, 1, 1))] == 3


def test_character_cache_version(tmp_path):
    path = tmp_path / "chars.json"
    path.write_text('{"version": 0, "entries": []}')
    with pytest.raises(ValueError):
        load_character_table(path)

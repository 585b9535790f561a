import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from momenta.combinatorics import (
    IntPartition, Permutation, SetPartition, bell_number, faa_di_bruno, integer_partitions,
    mfactorial, multi_indices, multi_indices_upto, multiindex_cycle_partition, multinomial_1st,
    multinomial_2nd, multiset_coeff, permutations, pochhammer, pochhammer_mv, set_partitions, shape_of,
)
from momenta.errors import DomainError

from oracles import BELL, PARTITION_COUNTS, brute_int_partitions, brute_set_partitions, cycle_type, stirling2


# ---- enumeration against brute force ----

@pytest.mark.parametrize("n", range(0, 11))
def test_partition_counts(n):
    parts = integer_partitions(n)
    assert len(parts) == PARTITION_COUNTS[n]
    assert sorted(p.parts for p in parts) == brute_int_partitions(n)


def test_partition_examples():
    assert len(integer_partitions(4)) == 5
    assert integer_partitions(0) == [IntPartition(())]
    assert integer_partitions(3, 2) == [IntPartition((1, 1, 0))]


@pytest.mark.parametrize("n", range(1, 8))
def test_partitions_with_r_parts(n):
    for r in range(0, n + 2):
        got = integer_partitions(n, r)
        assert all(p.length == r for p in got)
        assert len(got) == sum(1 for p in brute_int_partitions(n) if len(p) == r)


@pytest.mark.parametrize("n", range(1, 8))
def test_set_partitions_match_brute_force(n):
    got = set_partitions(n)
    assert len(got) == BELL[n]
    as_sets = {frozenset(frozenset(b) for b in sp.blocks) for sp in got}
    assert as_sets == brute_set_partitions(n)


def test_set_partition_examples():
    assert len(set_partitions(3)) == 5
    assert len(set_partitions(4)) == 15
    assert set_partitions(1) == [SetPartition(((1,),))]
    with pytest.raises(DomainError):
        set_partitions(0)


def test_set_partitions_rgs_order():
    # first is the one-block partition, last is all singletons
    sp = set_partitions(4)
    assert sp[0].blocks == ((1, 2, 3, 4),)
    assert sp[-1].blocks == ((1,), (2,), (3,), (4,))


@pytest.mark.parametrize("n", range(0, 11))
def test_bell_triangle_matches_table(n):
    assert bell_number(n) == BELL[n]


# ---- shapes and counting coefficients ----

def test_shape_examples():
    assert shape_of(SetPartition(((1, 2), (3,)))) == IntPartition((1, 1, 0))
    assert shape_of(Permutation((2, 1, 3))) == IntPartition((1, 1, 0))
    assert shape_of(Permutation((1, 2, 3, 4))) == IntPartition((4, 0, 0, 0))


def test_coefficient_examples():
    assert faa_di_bruno(IntPartition((1, 1, 0))) == 3
    assert faa_di_bruno(IntPartition((5, 0, 0, 0, 0))) == 1
    assert faa_di_bruno(IntPartition((0, 2, 0, 0))) == 3
    assert multinomial_2nd(IntPartition((0, 0, 0, 1))) == 6
    assert multinomial_2nd(IntPartition((1, 1, 0))) == 3
    assert multinomial_1st((2, 1)) == 3
    assert multinomial_1st((7,)) == 1
    assert multinomial_1st((1, 1, 1)) == 6


def test_multiset_coeff_examples():
    assert multiset_coeff(2, 3) == 4
    assert multiset_coeff(Fraction(3, 7), 0) == 1
    assert multiset_coeff(Fraction(1, 2), 2) == Fraction(3, 8)
    with pytest.raises(DomainError):
        multiset_coeff(0, 2)


def test_multiindex_cycle_partition_examples():
    lam = multiindex_cycle_partition((1, 2, 0, 4, 0, 1, 0, 0, 3))
    assert lam.n == 11
    assert sorted(lam.parts) == [1, 1, 2, 3, 4]
    assert lam.freq[:5] == (2, 1, 1, 1, 0)
    assert multiindex_cycle_partition((5,)).parts == (5,)
    assert multiindex_cycle_partition((1,) * 4) == IntPartition((4, 0, 0, 0))


@pytest.mark.parametrize("n", range(1, 7))
def test_faa_di_bruno_counts_set_partitions_by_shape(n):
    counts = {}
    for sp in brute_set_partitions(n):
        key = tuple(sorted((len(b) for b in sp), reverse=True))
        counts[key] = counts.get(key, 0) + 1
    for lam in integer_partitions(n):
        assert faa_di_bruno(lam) == counts[lam.parts]


@pytest.mark.parametrize("n", range(1, 7))
def test_multinomial_2nd_counts_permutations_by_cycle_type(n):
    import itertools

    counts = {}
    for p in itertools.permutations(range(n)):
        key = tuple(cycle_type(p))
        counts[key] = counts.get(key, 0) + 1
    for lam in integer_partitions(n):
        assert multinomial_2nd(lam) == counts[lam.parts]


@pytest.mark.parametrize("n", range(1, 7))
def test_permutation_cycles_agree_with_shape(n):
    for p in permutations(n):
        assert sorted(len(c) for c in p.cycles()) == sorted(shape_of(p).parts)
        assert p.compose(p.inverse()) == Permutation(tuple(range(1, n + 1)))


def test_faa_di_bruno_by_size_gives_stirling():
    for n in range(1, 9):
        for r in range(1, n + 1):
            assert sum(faa_di_bruno(l) for l in integer_partitions(n, r)) == stirling2(n, r)


def test_bad_inputs():
    with pytest.raises(DomainError):
        IntPartition((1, -1))
    with pytest.raises(DomainError):
        Permutation((1, 1, 2))
    with pytest.raises(DomainError):
        IntPartition.from_parts((2, 1), n=4)


# ---- multi-indices and Pochhammer ----

def test_multi_indices_count_and_order():
    for k in range(1, 5):
        for n in range(0, 7):
            ms = multi_indices(k, n)
            assert len(ms) == math.comb(n + k - 1, k - 1)
            assert list(ms) == sorted(ms)
            assert all(sum(m) == n for m in ms)
    assert len(multi_indices_upto(3, 4)) == math.comb(7, 3)


def test_pochhammer_basics():
    assert pochhammer(1, 5) == 120
    assert pochhammer(Fraction(1, 2), 2) == Fraction(3, 4)
    assert pochhammer(7, 0) == 1
    assert pochhammer_mv([1, 2], (2, 1)) == 2 * 2
    assert mfactorial((2, 3)) == 12


@given(st.fractions(min_value=-5, max_value=5, max_denominator=9), st.integers(0, 6), st.integers(0, 6))
def test_pochhammer_splits(a, n, m):
    assert pochhammer(a, n + m) == pochhammer(a, n) * pochhammer(a + n, m)


@given(st.fractions(min_value=Fraction(1, 9), max_value=5, max_denominator=9), st.integers(0, 8))
def test_multiset_coeff_is_rising_over_factorial(a, n):
    assert multiset_coeff(a, n) * math.factorial(n) == pochhammer(a, n)


@given(st.lists(st.integers(0, 4), min_size=1, max_size=4))
def test_multinomial_1st_sums_to_power(m):
    # sum over multi-indices of size n of the multinomial = k^n
    k, n = len(m), sum(m)
    assert sum(multinomial_1st(x) for x in multi_indices(k, n)) == k ** n


@given(st.integers(1, 9))
@settings(max_examples=20)
def test_partition_sizes_sum(n):
    for lam in integer_partitions(n):
        assert lam.n == n
        assert IntPartition.from_parts(lam.parts, n) == lam
        assert sum(lam.parts) == n

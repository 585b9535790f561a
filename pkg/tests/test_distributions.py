import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from momenta.combinatorics import IntPartition
from momenta.distributions import (
    UrnState, dirichlet_aggregate, dirichlet_asymptotic_moment, dirichlet_moment_cycleindex,
    dirichlet_moment_multiindex, dirichlet_sample, gamma_moment, humbert_phi2, lauricella_fd,
    lauricella_fd_quadrature, normalized_moment, poisson_moment, urn_table_map,
)
from momenta.errors import DomainError, PoleError

from oracles import rising, simplex_moment_k2, touchard_by_stirling

pos = st.fractions(min_value=Fraction(1, 7), max_value=5, max_denominator=7)
anyq = st.fractions(min_value=-3, max_value=3, max_denominator=5)


def test_poisson_moment_examples():
    assert poisson_moment(1, 3) == 5
    assert poisson_moment(0, 0) == 1
    assert poisson_moment(0, 4) == 0
    assert poisson_moment(2, 2) == 6
    for n in range(8):
        assert poisson_moment(Fraction(3, 4), n) == touchard_by_stirling(Fraction(3, 4), n)
    with pytest.raises(DomainError):
        poisson_moment(-1, 2)


def test_gamma_moment_examples():
    assert gamma_moment(1, 1, 3) == 6
    assert gamma_moment(5, 2, 0) == 1
    assert gamma_moment(Fraction(1, 2), 2, 2) == 3
    with pytest.raises(DomainError):
        gamma_moment(0, 1, 2)


def test_dirichlet_examples():
    assert dirichlet_moment_multiindex([1, 1], [1, 0], 2) == Fraction(1, 3)
    assert dirichlet_moment_cycleindex([1, 1], [1, 0], 2) == Fraction(1, 3)
    assert dirichlet_moment_cycleindex([Fraction(7, 2)], [1], 5) == 1
    assert dirichlet_moment_cycleindex([1, 2], [1, -1], 1) == Fraction(-1, 3)
    for n in range(6):
        assert dirichlet_moment_multiindex([1, 2, 3], [1, 1, 1], n) == 1
    assert dirichlet_moment_multiindex([1, 2], [4, 5], 0) == 1
    with pytest.raises(DomainError):
        dirichlet_moment_cycleindex([0, 1], [1, 1], 2)
    with pytest.raises(DomainError):
        dirichlet_moment_cycleindex([1, 1], [1], 2)


@pytest.mark.parametrize("n", range(0, 7))
def test_uniform_simplex_moments(n):
    assert dirichlet_moment_cycleindex([1, 1], [1, 0], n) == Fraction(1, n + 1)


@pytest.mark.parametrize("a,b,s1,s2,n", [
    (Fraction(1, 2), Fraction(3, 2), Fraction(1), Fraction(-1, 2), 3),
    (Fraction(2), Fraction(5, 3), Fraction(2), Fraction(1, 3), 4),
    (Fraction(3, 4), Fraction(3, 4), Fraction(-1), Fraction(1), 5),
])
def test_dirichlet_matches_simplex_integral(a, b, s1, s2, n):
    exact = dirichlet_moment_cycleindex([a, b], [s1, s2], n)
    num = simplex_moment_k2(float(a), float(b), float(s1), float(s2), n)
    assert abs(float(exact) - num) < 1e-10


@settings(max_examples=30, deadline=None)
@given(st.lists(pos, min_size=1, max_size=4), st.data())
def test_both_dirichlet_routes_agree(alpha, data):
    s = data.draw(st.lists(anyq, min_size=len(alpha), max_size=len(alpha)))
    for n in range(6):
        assert dirichlet_moment_multiindex(alpha, s, n) == dirichlet_moment_cycleindex(alpha, s, n)


def test_aggregate_examples():
    a, b, c = Fraction(1, 2), Fraction(2), Fraction(3)
    assert dirichlet_aggregate([a, b, c], 2) == [a, b + c]
    assert dirichlet_aggregate([a, b, c], IntPartition((3, 0, 0))) == [a, b, c]
    assert sorted(dirichlet_aggregate([1, 1, 1, 1], IntPartition((2, 1, 0, 0)))) == [1, 1, 2]
    with pytest.raises(DomainError):
        dirichlet_aggregate([1, 1], 2)


@settings(max_examples=30, deadline=None)
@given(st.lists(pos, min_size=2, max_size=4), st.data())
def test_aggregation_invariance(alpha, data):
    # equal weights on merged coordinates give the same moments
    i = data.draw(st.integers(1, len(alpha) - 1))
    s = data.draw(st.lists(anyq, min_size=len(alpha), max_size=len(alpha)))
    s[i] = s[i - 1]
    merged_s = s[:i] + s[i + 1:]
    merged = dirichlet_aggregate(alpha, i)
    for n in range(5):
        assert dirichlet_moment_cycleindex(alpha, s, n) == dirichlet_moment_cycleindex(merged, merged_s, n)
        assert normalized_moment(alpha, s, n) == normalized_moment(merged, merged_s, n)


def test_sampler_shapes_and_simplex():
    x = dirichlet_sample([1], 0, 10)
    assert np.all(x == 1.0)
    x = dirichlet_sample([Fraction(1, 2), 1, 2], 3, 1000)
    assert x.shape == (1000, 3)
    assert np.allclose(x.sum(axis=1), 1.0)
    assert np.array_equal(x, dirichlet_sample([Fraction(1, 2), 1, 2], 3, 1000))


def test_humbert_examples():
    ser = humbert_phi2([Fraction(3, 2)], Fraction(3, 2), 6)
    for m in range(7):
        assert ser.coeff((m,)) == Fraction(1, math.factorial(m))
    assert humbert_phi2([1, 2], 3, 4).coeff((0, 0)) == 1
    with pytest.raises(PoleError):
        humbert_phi2([1], -2, 3)


@settings(max_examples=15, deadline=None)
@given(st.lists(pos, min_size=1, max_size=3))
def test_humbert_degree_parts_are_dirichlet_moments(alpha):
    # degree-n part at x = t s equals t^n E[(s.X)^n] / n!
    D = 5
    ser = humbert_phi2(alpha, sum(alpha), D)
    s = [Fraction(j + 1, 3) for j in range(len(alpha))]
    for n in range(D + 1):
        part = sum(c * math.prod((si ** mi for si, mi in zip(s, m)), start=Fraction(1))
                   for m, c in ser.homogeneous(n).items())
        assert part == dirichlet_moment_cycleindex(alpha, s, n) / math.factorial(n)


def test_lauricella_series_and_quadrature():
    assert lauricella_fd(1, [2, 3], 4, 3).coeff((0, 0)) == 1
    val = lauricella_fd_quadrature(1, [1], 2, [0.5])
    assert abs(val - 2 * math.log(2)) < 1e-10
    assert abs(lauricella_fd_quadrature(Fraction(1, 2), [1, 2], 3, [0, 0]) - 1) < 1e-12
    ser = lauricella_fd(1, [1], 2, 60)
    assert abs(ser.evaluate_float([0.5]) - 2 * math.log(2)) < 1e-12
    with pytest.raises(PoleError):
        lauricella_fd(1, [1], 0, 3)
    with pytest.raises(DomainError):
        lauricella_fd_quadrature(2, [1], 1, [0.5])


def test_lauricella_two_variables_against_quadrature():
    a, b, c, x = Fraction(1, 2), [Fraction(1, 3), Fraction(2, 3)], Fraction(7, 4), [0.3, -0.4]
    ser = lauricella_fd(a, b, c, 40).evaluate_float(x)
    assert abs(ser - lauricella_fd_quadrature(a, b, c, x)) < 1e-9


def test_lauricella_confluence():
    # Poch(1/eps, |m|) eps^|m| -> 1 as eps -> 0
    b, c = [Fraction(1, 2), Fraction(2)], Fraction(5, 2)
    phi = humbert_phi2(b, c, 3)
    eps = Fraction(1, 10 ** 6)
    fd = lauricella_fd(1 / eps, b, c, 3)
    for m, v in phi.terms.items():
        assert abs(fd.coeff(m) * eps ** sum(m) - v) < Fraction(1, 10 ** 4)


def test_asymptotic_examples():
    assert dirichlet_asymptotic_moment([1, 1], [1, 0], 2, "zero") == Fraction(1, 2)
    assert dirichlet_asymptotic_moment([1, 1], [1, 0], 2, "infinity") == Fraction(1, 4)
    a, s = [1, 2, 3], [Fraction(1, 2), -1, 2]
    assert dirichlet_asymptotic_moment(a, s, 1, "zero") == dirichlet_asymptotic_moment(a, s, 1, "infinity")
    for beta, lim in ((Fraction(1, 10 ** 4), "zero"), (Fraction(10 ** 4), "infinity")):
        exact = dirichlet_moment_cycleindex([beta / 2, beta / 2], [1, 0], 2)
        assert abs(exact - dirichlet_asymptotic_moment([1, 1], [1, 0], 2, lim)) < Fraction(1, 1000)
    with pytest.raises(DomainError):
        dirichlet_asymptotic_moment([1], [1], 1, "middle")


# ---- urn operations: each row is checked against the moments it describes ----

def _moment(state, n):
    return dirichlet_moment_cycleindex(state.alpha, state.s, n)


def test_urn_type_addition_and_deletion():
    st0 = UrnState((Fraction(1), Fraction(-1, 2)), (Fraction(1), Fraction(2)))
    st1, pre = urn_table_map("type-add", st0, new=(3, Fraction(1, 2)))
    assert pre == 1 and st1.alpha == (1, 2, Fraction(1, 2))
    st2, pre = urn_table_map("type-del", st1)
    assert st2 == st0 and pre == 1


def test_urn_merge_preserves_moments():
    st0 = UrnState((Fraction(2), Fraction(2), Fraction(-1)), (Fraction(1, 2), Fraction(3), Fraction(1)))
    st1, pre = urn_table_map("merge", st0, i=1)
    for n in range(6):
        assert _moment(st0, n) == pre * _moment(st1, n)
    with pytest.raises(DomainError):
        urn_table_map("merge", st0, i=2)


def test_urn_addition_matches_size_biasing():
    # E[X_i (s.X)^n] |alpha| = alpha_i E'[(s.X)^n] under alpha + e_i
    alpha = (Fraction(1, 2), Fraction(3), Fraction(1))
    s = (Fraction(2), Fraction(-1), Fraction(1, 3))
    st0 = UrnState(s, alpha)
    for i in (1, 2, 3):
        st1, pre = urn_table_map("urn-add", st0, i=i)
        assert pre == alpha[i - 1]
        for n in range(5):
            # E[X_i Y] via finite difference of moments in the weight s_i
            lhs = sum(alpha) * _size_biased(alpha, s, i, n)
            assert lhs == pre * _moment(st1, n)


def _size_biased(alpha, s, i, n):
    """E[X_i (s.X)^n] from the multi-index moment formula."""
    from momenta.combinatorics import mfactorial, multi_indices, pochhammer, pochhammer_mv

    total = Fraction(0)
    for m in multi_indices(len(alpha), n):
        mm = list(m)
        mm[i - 1] += 1
        t = Fraction(math.factorial(n), mfactorial(m)) * pochhammer_mv(alpha, mm) / pochhammer(sum(alpha), n + 1)
        for sj, mj in zip(s, m):
            t *= sj ** mj
        total += t
    return total


def test_urn_deletion_inverts_addition():
    st0 = UrnState((Fraction(1), Fraction(2)), (Fraction(5, 2), Fraction(1, 3)))
    st1, pre = urn_table_map("urn-add", st0, i=1)
    st2, pre2 = urn_table_map("urn-del", st1, i=1)
    assert st2 == st0
    assert pre2 == sum(st1.alpha) - 1
    with pytest.raises(DomainError):
        urn_table_map("urn-del", st0, i=2)

# The twelve acceptance criteria, each at its stated size and tolerance.
# Every test records one pass/fail line, printed in the terminal summary.

import itertools
import math
import random
import subprocess
import sys
import time
from fractions import Fraction

from momenta import bellpoly as bp
from momenta import distributions as dist
from momenta import momcum
from momenta import random_measures as rm
from momenta import verify as vf
from momenta.combinatorics import multi_indices, pochhammer

from oracles import brute_orbits


def all_pass(checks):
    bad = [c for c in checks if not c["passed"]]
    return not bad, bad


def test_criterion_01_bell_cycle_index(record_criterion):
    t0 = time.perf_counter()
    checks = vf.bell_identities(10, 3, random.Random(1)) + vf.bell_polynomial_identities(10)
    ok, bad = all_pass(checks)
    elapsed = time.perf_counter() - t0
    record_criterion(1, ok and elapsed < 60, f"{len(checks)} checks, {elapsed:.1f}s")
    assert ok, bad[:5]
    assert elapsed < 60


def test_criterion_02_duality_round_trip(record_criterion):
    rng = random.Random(2)
    ok = True
    for _ in range(20):
        mu = [vf.rand_q(rng) for _ in range(10)]
        ok &= momcum.cumulants_to_moments(momcum.moments_to_cumulants(mu)) == mu
        ok &= momcum.moments_to_cumulants(momcum.cumulants_to_moments(mu)) == mu
    record_criterion(2, ok)
    assert ok


def test_criterion_03_dirichlet_moment_theorem(record_criterion):
    checks = vf.dirichlet_routes(4, 8, 5, random.Random(3))
    ok, bad = all_pass(checks)
    record_criterion(3, ok, f"{len(checks)} checks")
    assert ok, bad[:5]


def test_criterion_04_polya(record_criterion):
    ok = True
    for k in range(1, 4):
        for s in itertools.product((0, 1), repeat=k):
            allowed = [c for c in range(k) if s[c]]
            for n in range(8):
                ok &= bp.pattern_inventory(n, s) == brute_orbits(n, allowed)
    # merging two coordinates that carry the same weight leaves the moment unchanged
    rng = random.Random(4)
    for n in range(8):
        alpha = [vf.rand_q(rng, positive=True) for _ in range(4)]
        w = [vf.rand_q(rng) for _ in range(3)]
        for i in (1, 2, 3):
            s = w[:i] + [w[i - 1]] + w[i:]
            merged = dist.dirichlet_aggregate(alpha, i)
            ok &= dist.normalized_moment(alpha, s, n) == dist.normalized_moment(merged, w, n)
            scale = pochhammer(sum(alpha), n) / math.factorial(n)
            ok &= dist.normalized_moment(alpha, s, n) == scale * dist.dirichlet_moment_multiindex(alpha, s, n)
    record_criterion(4, ok)
    assert ok


def test_criterion_05_humbert_egf(record_criterion):
    checks = vf.humbert_egf(10, 3, random.Random(5))
    ok, bad = all_pass(checks)
    record_criterion(5, ok, f"{len(checks)} checks")
    assert ok, bad[:5]


def test_criterion_06_asymptotics(record_criterion):
    checks = vf.asymptotics(3, 4, random.Random(6))
    ok, bad = all_pass(checks)
    record_criterion(6, ok, f"{len(checks)} checks, worst {max(c['discrepancy'] for c in checks):.2e}")
    assert ok, bad[:5]


def test_criterion_07_monte_carlo(record_criterion):
    N = 200000
    checks = vf.montecarlo(N=N, seed=0, tol=4.0)
    ok, bad = all_pass(checks)
    z = max(c["discrepancy"] for c in checks if "correlation" not in c["name"])
    record_criterion(7, ok, f"max z {z:.2f}")
    assert ok, bad


def test_criterion_08_convolution_exponential(record_criterion):
    ok = True
    count = 0
    for k in (1, 2, 3):
        sigma = [Fraction(1, 2), Fraction(1), Fraction(2)][:k]
        for size in range(7):
            for m in multi_indices(k, size):
                lhs, rhs = rm.conv_exp_check(sigma, m, 10)
                # oracle: product of e^{-c} c^j / j!, with the exponential factored out
                prod = math.prod((c ** j / math.factorial(j) for c, j in zip(sigma, m)), start=Fraction(1))
                ok &= lhs == rhs == prod
                count += 1
    record_criterion(8, ok, f"{count} multi-indices")
    assert ok


def test_criterion_09_mecke(record_criterion):
    ok = True
    for k in (1, 2, 3):
        sigma = [Fraction(1, 2), Fraction(1), Fraction(2)][:k]
        # gamma coordinates: E[eta_x^j] = Poch(sigma_x, j)
        expected = {"1": sum(sigma),
                    "eta": sum(c * pochhammer(c + 1, 1) for c in sigma),
                    "eta2": sum(c * pochhammer(c + 1, 2) for c in sigma)}
        for name, F in (("1", rm.PolyFunctional.constant(k)), ("eta", rm.PolyFunctional.eta_at(k, 1)),
                        ("eta2", rm.PolyFunctional.eta_at(k, 2))):
            lhs, rhs = rm.mecke_check(sigma, F, "exact")
            ok &= isinstance(lhs, Fraction) and lhs == rhs == expected[name]
    record_criterion(9, ok)
    assert ok


def test_criterion_10_fock(record_criterion):
    checks = vf.fock_suite(seed=0, nmax=6)
    ok, bad = all_pass(checks)
    record_criterion(10, ok, f"{len(checks)} checks")
    assert ok, bad[:5]


def test_criterion_11_lie(record_criterion):
    t0 = time.perf_counter()
    checks = vf.liealg_suite(3, 6, seed=0)
    elapsed = time.perf_counter() - t0
    ok, bad = all_pass(checks)
    note = f"{len(checks)} checks, {len(bad)} failed, {elapsed:.1f}s"
    if bad:
        note += "; failing: " + ", ".join(sorted({c["name"].split(" ", 2)[2] for c in bad}))
    record_criterion(11, ok and elapsed < 120, note)
    assert elapsed < 120
    assert ok, [c["name"] for c in bad]


def test_criterion_12_determinism(record_criterion):
    cmd = [sys.executable, "-m", "momenta", "verify", "all", "--seed", "0"]
    a = subprocess.run(cmd, capture_output=True)
    b = subprocess.run(cmd, capture_output=True)
    ok = a.stdout == b.stdout and len(a.stdout) > 0 and a.returncode == b.returncode
    record_criterion(12, ok, f"{len(a.stdout)} bytes, exit {a.returncode}")
    assert ok

"""Poisson, Gamma and Dirichlet-Ferguson random measures on a finite ground set.

A measure sigma on [k] is a sequence of non-negative weights and a test
function is a sequence of values over the same k points.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Mapping, Sequence

import numpy as np

from .bellpoly import bell_complete, cycle_index_sn
from .combinatorics import (
    integer_partitions,
    mfactorial,
    multi_indices,
    pochhammer,
)
from .errors import DomainError


def _measure(sigma) -> list:
    sigma = [Fraction(v) for v in sigma]
    if not sigma or any(v < 0 for v in sigma):
        raise DomainError("measure weights must be non-negative")
    return sigma


def _pair(sigma, f):
    sigma = _measure(sigma)
    f = [Fraction(v) for v in f]
    if len(f) != len(sigma):
        raise DomainError("test function and measure differ in length")
    return sigma, f


def integrate(sigma, f, power: int = 1) -> Fraction:
    """<f^power>_sigma = sum_x sigma_x f(x)^power."""
    sigma, f = _pair(sigma, f)
    return sum((s * v ** power for s, v in zip(sigma, f)), Fraction(0))


def _power_integrals(sigma, f, n: int) -> list:
    return [integrate(sigma, f, i) for i in range(1, n + 1)]


def poisson_measure_moment(sigma, f, n: int) -> Fraction:
    """E[p(f)^n] for the Poisson measure with intensity sigma."""
    if n == 0:
        return Fraction(1)
    return bell_complete(n).evaluate(_power_integrals(sigma, f, n))


def gamma_measure_moment(sigma, f, n: int) -> Fraction:
    """E[gamma(f)^n] = n! Z_n[<f>, <f^2>, ..., <f^n>]."""
    if n == 0:
        return Fraction(1)
    return math.factorial(n) * cycle_index_sn(n).evaluate(_power_integrals(sigma, f, n))


def gamma_measure_cumulant(sigma, f, n: int) -> Fraction:
    if n < 1:
        raise DomainError("cumulants start at order 1")
    return math.factorial(n - 1) * integrate(sigma, f, n)


def gamma_levy_moments(theta=1, rate=1) -> Callable[[int], Fraction]:
    """Moments of the Levy measure theta s^-1 exp(-rate s) ds."""
    theta, rate = Fraction(theta), Fraction(rate)
    return lambda n: theta * math.factorial(n - 1) / rate ** n


def poisson_levy_moments() -> Callable[[int], Fraction]:
    """Moments of the unit point mass at 1."""
    return lambda n: Fraction(1)


def cpt_cumulant(sigma, levy_moments: Callable[[int], Fraction], m: Sequence[int], fs: Sequence) -> Fraction:
    """Joint cumulant of (eta(f_1),...,eta(f_j)) of order m for a compound Poisson type law."""
    sigma = _measure(sigma)
    if len(m) != len(fs):
        raise DomainError("multi-index and function list differ in length")
    order = sum(m)
    if order == 0:
        raise DomainError("cumulant of order 0 is undefined")
    fs = [[Fraction(v) for v in f] for f in fs]
    inner = Fraction(0)
    for x, sx in enumerate(sigma):
        t = sx
        for f, mi in zip(fs, m):
            t *= f[x] ** mi
        inner += t
    return Fraction(levy_moments(order)) * inner


def df_moment(sigma, f, n: int) -> Fraction:
    """E[D(f)^n] for the Dirichlet-Ferguson measure of intensity sigma."""
    sigma = _measure(sigma)
    beta = sum(sigma)
    if beta <= 0:
        raise DomainError("total mass must be positive")
    if n == 0:
        return Fraction(1)
    z = cycle_index_sn(n).evaluate(_power_integrals(sigma, f, n))
    return math.factorial(n) / pochhammer(beta, n) * z


def df_laplace(sigma, f, D: int) -> Fraction:
    """Truncated Laplace transform of the DF measure with unit total mass."""
    sigma, f = _pair(sigma, f)
    if sum(sigma) != 1:
        raise DomainError("df_laplace needs total mass 1")
    if any(abs(v) >= 1 for v in f):
        raise DomainError("df_laplace needs |f| < 1")
    p = _power_integrals(sigma, f, max(D, 1))
    total = Fraction(0)
    for n in range(D + 1):
        for lam in integer_partitions(n):
            t = Fraction(1)
            for i, mi in enumerate(lam.freq, start=1):
                if mi:
                    t *= p[i - 1] ** mi / (i ** mi * math.factorial(mi))
            total += t
    return total


def _exact_root(q: Fraction, k: int):
    """Exact k-th root of a positive rational, or None."""
    def iroot(v):
        lo, hi = 0, 1
        while hi ** k <= v:
            hi *= 2
        while lo < hi - 1:
            mid = (lo + hi) // 2
            if mid ** k <= v:
                lo = mid
            else:
                hi = mid
        return lo if lo ** k == v else None

    a, b = iroot(q.numerator), iroot(q.denominator)
    if a is None or b is None:
        return None
    return Fraction(a, b)


def laplace_gamma(sigma, f):
    """E[exp gamma(f)] = prod (1 - f_x)^(-sigma_x); exact when possible, else float."""
    sigma, f = _pair(sigma, f)
    if any(v >= 1 for v in f):
        raise DomainError("Laplace transform diverges for f >= 1")
    exact = Fraction(1)
    for s, v in zip(sigma, f):
        base = 1 - v
        root = _exact_root(base, s.denominator)
        if root is None:
            return math.exp(-sum(float(s) * math.log1p(-float(v)) for s, v in zip(sigma, f)))
        exact *= root ** (-s.numerator)
    return exact


@dataclass
class MeasureSampleBatch:
    samples: np.ndarray
    seed: int
    kind: str


def sample_measure(kind: str, sigma, seed: int, N: int) -> MeasureSampleBatch:
    """N independent realizations evaluated at the k atoms."""
    sigma = _measure(sigma)
    if N < 1:
        raise DomainError("N must be >= 1")
    rng = np.random.default_rng(seed)
    w = np.array([float(v) for v in sigma])
    if kind == "poisson":
        out = rng.poisson(w, size=(N, len(w))).astype(float)
    elif kind in ("gamma", "df"):
        out = np.zeros((N, len(w)))
        for j, a in enumerate(w):
            if a > 0:
                out[:, j] = rng.standard_gamma(a, size=N)
        if kind == "df":
            out = out / out.sum(axis=1, keepdims=True)
    else:
        raise DomainError(f"unknown kind {kind!r}")
    return MeasureSampleBatch(out, seed, kind)


def mc_mean(values: np.ndarray) -> tuple:
    """Sample mean and its standard error."""
    values = np.asarray(values, dtype=float)
    return float(values.mean()), float(values.std(ddof=1) / math.sqrt(len(values)))


# convolution exponential of the push-forward of sigma under x -> delta_x

def _lattice_convolve(a: Mapping, b: Mapping) -> dict:
    out = {}
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            e = tuple(x + y for x, y in zip(e1, e2))
            out[e] = out.get(e, 0) + c1 * c2
    return out


def conv_exp_check(sigma, m: Sequence[int], M: int) -> tuple:
    """(lhs, rhs): truncated convolution exponential at {m} vs sigma^m/m!."""
    sigma = _measure(sigma)
    k = len(sigma)
    m = tuple(int(v) for v in m)
    if len(m) != k:
        raise DomainError("multi-index and measure differ in length")
    if M < sum(m):
        raise DomainError("truncation M must be >= |m|")
    base = {tuple(int(i == x) for i in range(k)): sigma[x] for x in range(k)}
    power = {(0,) * k: Fraction(1)}
    lhs = Fraction(0)
    for j in range(M + 1):
        lhs += power.get(m, Fraction(0)) / math.factorial(j)
        # only lattice points below m can still reach m
        power = {e: c for e, c in _lattice_convolve(power, base).items() if all(a <= b for a, b in zip(e, m))}
    rhs = Fraction(1)
    for s, mi in zip(sigma, m):
        rhs *= s ** mi
    return lhs, rhs / mfactorial(m)


class PolyFunctional:
    """F(eta, x) = sum_e c_{x,e} eta^e, a polynomial in the atom masses per point x."""

    def __init__(self, k: int, terms: Mapping[int, Mapping[tuple, Fraction]]):
        self.k = k
        self.terms = {x: {tuple(e): Fraction(c) for e, c in t.items()} for x, t in terms.items()}
        for t in self.terms.values():
            if any(len(e) != k for e in t):
                raise DomainError("exponent length does not match k")

    @classmethod
    def constant(cls, k: int, c=1) -> "PolyFunctional":
        return cls(k, {x: {(0,) * k: c} for x in range(k)})

    @classmethod
    def eta_at(cls, k: int, power: int = 1) -> "PolyFunctional":
        """F(eta, x) = eta_x^power."""
        return cls(k, {x: {tuple(power if i == x else 0 for i in range(k)): 1} for x in range(k)})

    def evaluate(self, eta: np.ndarray, x: int) -> np.ndarray:
        out = np.zeros(eta.shape[0])
        for e, c in self.terms.get(x, {}).items():
            out += float(c) * np.prod(eta ** np.array(e), axis=1)
        return out


def _gamma_joint_moment(sigma, e) -> Fraction:
    out = Fraction(1)
    for s, ei in zip(sigma, e):
        out *= pochhammer(s, ei)
    return out


def mecke_check(sigma, F: PolyFunctional, mode: str = "exact", seed: int = 0, N: int = 100000):
    """Both sides of the Mecke identity for the Gamma measure.

    lhs = E sum_x eta_x F(eta, x)
    rhs = sum_x sigma_x int_0^inf e^-s E F(eta + s delta_x, x) ds
    exact mode returns Fractions; mc mode returns (lhs, rhs, standard error).
    """
    sigma = _measure(sigma)
    k = len(sigma)
    if F.k != k:
        raise DomainError("functional and measure differ in dimension")
    if mode == "exact":
        lhs = Fraction(0)
        rhs = Fraction(0)
        for x, terms in F.terms.items():
            for e, c in terms.items():
                bumped = list(e)
                bumped[x] += 1
                lhs += c * _gamma_joint_moment(sigma, bumped)
                # expand (eta_x + s)^{e_x}; int s^p e^-s ds = p!
                ex = e[x]
                acc = Fraction(0)
                for j in range(ex + 1):
                    shifted = list(e)
                    shifted[x] = j
                    acc += math.comb(ex, j) * _gamma_joint_moment(sigma, shifted) * math.factorial(ex - j)
                rhs += sigma[x] * c * acc
        return lhs, rhs
    if mode == "mc":
        rng = np.random.default_rng(seed)
        w = [float(v) for v in sigma]
        eta = np.zeros((N, k))
        for j, a in enumerate(w):
            if a > 0:
                eta[:, j] = rng.standard_gamma(a, size=N)
        s = rng.standard_exponential(size=N)
        lhs_v = np.zeros(N)
        rhs_v = np.zeros(N)
        for x in range(k):
            lhs_v += eta[:, x] * F.evaluate(eta, x)
            shifted = eta.copy()
            shifted[:, x] += s
            rhs_v += w[x] * F.evaluate(shifted, x)
        diff_se = float(np.std(lhs_v - rhs_v, ddof=1) / math.sqrt(N))
        return float(lhs_v.mean()), float(rhs_v.mean()), diff_se
    raise DomainError("mode must be 'exact' or 'mc'")


def decomposition_check(sigma, g, n: int, seed: int = 0, N: int = 200000, tol: float = 4.0) -> dict:
    """Independence of total mass and normalized Gamma measure, from samples."""
    sigma, g = _pair(sigma, g)
    if N < 10000:
        raise DomainError("decomposition_check needs N >= 10^4")
    beta = sum(sigma)
    batch = sample_measure("gamma", sigma, seed, N).samples
    mass = batch.sum(axis=1)
    gbar = (batch / mass[:, None]) @ np.array([float(v) for v in g])
    expected_u = integrate(sigma, g) / beta
    joint, joint_se = mc_mean(mass ** n * gbar)
    joint_exact = pochhammer(beta, n) * expected_u
    mom, mom_se = mc_mean(mass ** n)
    mom_exact = pochhammer(beta, n)
    # constant g makes the normalized integral constant; skip the rounding noise
    if len(set(g)) > 1 and np.std(gbar) > 0:
        corr = float(np.corrcoef(mass, gbar)[0, 1])
    else:
        corr = 0.0
    z_joint = abs(joint - float(joint_exact)) / joint_se if joint_se > 0 else 0.0
    z_mom = abs(mom - float(mom_exact)) / mom_se if mom_se > 0 else 0.0
    bound = tol / math.sqrt(N)
    return {
        "joint_estimate": joint, "joint_exact": joint_exact, "joint_z": z_joint,
        "mass_estimate": mom, "mass_exact": mom_exact, "mass_z": z_mom,
        "correlation": corr, "correlation_bound": bound,
        "passed": bool(z_joint < tol and z_mom < tol and abs(corr) < bound),
    }


def df_asymptotic_check(sigma, f, n: int, beta_grid: Sequence) -> dict:
    """Exact DF moments along beta * normalized sigma, compared with both limits."""
    sigma, f = _pair(sigma, f)
    total = sum(sigma)
    bar = [s / total for s in sigma]
    small = sum((b * v ** n for b, v in zip(bar, f)), Fraction(0))
    large = sum((b * v for b, v in zip(bar, f)), Fraction(0)) ** n
    grid = sorted(Fraction(b) for b in beta_grid)
    values = [df_moment([Fraction(b) * s for s in bar], f, n) for b in grid]
    return {
        "beta": grid,
        "values": values,
        "limit_zero": small,
        "limit_infinity": large,
        "gap_zero": abs(values[0] - small),
        "gap_infinity": abs(values[-1] - large),
        "monotone": all(a <= b for a, b in zip(values, values[1:])) or all(a >= b for a, b in zip(values, values[1:])),
    }


def gamma_laplace_series(sigma, f, D: int) -> list:
    """Taylor coefficients of t -> prod (1 - t f_x)^(-sigma_x) by the generalized binomial series."""
    sigma, f = _pair(sigma, f)
    out = []
    for n in range(D + 1):
        total = Fraction(0)
        for m in multi_indices(len(sigma), n):
            t = Fraction(1)
            for s, v, mi in zip(sigma, f, m):
                t *= pochhammer(s, mi) / math.factorial(mi) * v ** mi
            total += t
        out.append(total)
    return out


def multinomial_poisson_pmf(sigma, m) -> Fraction:
    """e^{|sigma|} times the product Poisson pmf at m (rational)."""
    sigma = _measure(sigma)
    out = Fraction(1)
    for s, mi in zip(sigma, m):
        out *= s ** mi / math.factorial(mi)
    return out


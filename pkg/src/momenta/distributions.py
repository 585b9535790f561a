"""Poisson, Gamma and Dirichlet moments, samplers and hypergeometric series."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .bellpoly import cycle_index_sn, power_sums, touchard
from .combinatorics import IntPartition, mfactorial, multi_indices, pochhammer, pochhammer_mv
from .errors import DomainError, PoleError


def _fr(seq) -> list:
    return [Fraction(v) for v in seq]


def _check_alpha(alpha) -> list:
    alpha = _fr(alpha)
    if not alpha or any(a <= 0 for a in alpha):
        raise DomainError("Dirichlet parameters must be positive")
    return alpha


def _check_pair(alpha, s):
    alpha = _check_alpha(alpha)
    s = _fr(s)
    if len(s) != len(alpha):
        raise DomainError("weight vector and parameters differ in length")
    return alpha, s


def poisson_moment(c, n: int) -> Fraction:
    """n-th raw moment of Poi[c], the Touchard polynomial T_n(c)."""
    c = Fraction(c)
    if c < 0:
        raise DomainError("Poisson parameter must be >= 0")
    return touchard(n).evaluate([c])


def gamma_moment(theta, k, n: int) -> Fraction:
    """n-th raw moment of Gam[theta, k] (shape theta, scale k)."""
    theta, k = Fraction(theta), Fraction(k)
    if theta <= 0 or k <= 0:
        raise DomainError("Gamma parameters must be positive")
    return pochhammer(theta, n) * k ** n


def dirichlet_moment_multiindex(alpha, s, n: int) -> Fraction:
    """E[(s . X)^n] for X ~ Dir[alpha], summed over multi-indices."""
    alpha, s = _check_pair(alpha, s)
    total = Fraction(0)
    for m in multi_indices(len(alpha), n):
        term = pochhammer_mv(alpha, m) / mfactorial(m)
        for si, mi in zip(s, m):
            term *= si ** mi
        total += term
    return math.factorial(n) / pochhammer(sum(alpha), n) * total


def weighted_power_sums(alpha, s, n: int) -> list:
    """The values sum_j alpha_j s_j^i for i = 1..n."""
    return [sum((a * v ** i for a, v in zip(alpha, s)), Fraction(0)) for i in range(1, n + 1)]


def dirichlet_moment_cycleindex(alpha, s, n: int) -> Fraction:
    """E[(s . X)^n] for X ~ Dir[alpha], via the cycle index of S_n."""
    alpha, s = _check_pair(alpha, s)
    if n == 0:
        return Fraction(1)
    z = cycle_index_sn(n).evaluate(weighted_power_sums(alpha, s, n))
    return math.factorial(n) / pochhammer(sum(alpha), n) * z


def dirichlet_aggregate(alpha, how) -> list:
    """Contract Dirichlet parameters.

    ``how`` is either a 1-based merge index i (merge coordinates i, i+1) or an
    IntPartition of k: consecutive coordinates are grouped into blocks, the
    blocks of size 1 first, then those of size 2, and so on.
    """
    alpha = _check_alpha(alpha)
    k = len(alpha)
    if isinstance(how, IntPartition):
        if how.n != k:
            raise DomainError("partition must partition the number of coordinates")
        out, pos = [], 0
        for size, count in enumerate(how.freq, start=1):
            for _ in range(count):
                out.append(sum(alpha[pos:pos + size]))
                pos += size
        return out
    i = int(how)
    if not 1 <= i < k:
        raise DomainError("merge index out of range")
    return alpha[: i - 1] + [alpha[i - 1] + alpha[i]] + alpha[i + 1:]


def gamma_sample(shape: Sequence[float], rng: np.random.Generator, N: int) -> np.ndarray:
    shape = np.asarray(shape, dtype=float)
    out = np.zeros((N, len(shape)))
    for j, a in enumerate(shape):
        if a > 0:
            out[:, j] = rng.standard_gamma(a, size=N)
    return out


def dirichlet_sample(alpha, seed: int, N: int) -> np.ndarray:
    """N draws from Dir[alpha] as normalized independent Gamma variables."""
    alpha = _check_alpha(alpha)
    if N < 1:
        raise DomainError("N must be >= 1")
    rng = np.random.default_rng(seed)
    g = gamma_sample([float(a) for a in alpha], rng, N)
    return g / g.sum(axis=1, keepdims=True)


@dataclass
class TruncSeriesMV:
    """Truncated multivariate series: multi-index -> Fraction, |m| <= D."""

    terms: dict
    k: int
    D: int

    def coeff(self, m) -> Fraction:
        return self.terms.get(tuple(m), Fraction(0))

    def evaluate(self, x) -> Fraction:
        x = _fr(x)
        total = Fraction(0)
        for m, c in self.terms.items():
            t = c
            for xi, mi in zip(x, m):
                t *= xi ** mi
            total += t
        return total

    def evaluate_float(self, x) -> float:
        total = 0.0
        for m, c in self.terms.items():
            t = float(c)
            for xi, mi in zip(x, m):
                t *= float(xi) ** mi
            total += t
        return total

    def homogeneous(self, n: int) -> dict:
        return {m: c for m, c in self.terms.items() if sum(m) == n}


def _check_pole(c):
    if c.denominator == 1 and c <= 0:
        raise PoleError(f"lower parameter {c} is a non-positive integer")


def humbert_phi2(b, c, D: int) -> TruncSeriesMV:
    """Coefficients Poch(b, m) / (Poch(c, |m|) m!) up to total degree D."""
    b, c = _fr(b), Fraction(c)
    _check_pole(c)
    terms = {}
    for n in range(D + 1):
        pc = pochhammer(c, n)
        for m in multi_indices(len(b), n):
            v = pochhammer_mv(b, m) / (pc * mfactorial(m))
            if v:
                terms[m] = v
    return TruncSeriesMV(terms, len(b), D)


def lauricella_fd(a, b, c, D: int) -> TruncSeriesMV:
    """Coefficients Poch(a,|m|) Poch(b,m) / (Poch(c,|m|) m!) up to degree D."""
    a, b, c = Fraction(a), _fr(b), Fraction(c)
    _check_pole(c)
    terms = {}
    for n in range(D + 1):
        ratio = pochhammer(a, n) / pochhammer(c, n)
        for m in multi_indices(len(b), n):
            v = ratio * pochhammer_mv(b, m) / mfactorial(m)
            if v:
                terms[m] = v
    return TruncSeriesMV(terms, len(b), D)


def lauricella_fd_quadrature(a, b, c, x, tol: float = 1e-10) -> float:
    """F_D via its Euler integral, with Jacobi endpoint weights handled by QUADPACK."""
    from scipy import integrate, special

    a, c = float(a), float(c)
    b = [float(v) for v in b]
    x = [float(v) for v in x]
    if not c > a > 0:
        raise DomainError("integral form needs c > a > 0")
    if len(b) != len(x):
        raise DomainError("b and x differ in length")
    if any(abs(v) >= 1 for v in x):
        raise DomainError("integral form needs |x_i| < 1")

    def g(t):
        return math.prod((1.0 - t * xi) ** (-bi) for bi, xi in zip(b, x))

    val, _ = integrate.quad(g, 0.0, 1.0, weight="alg", wvar=(a - 1.0, c - a - 1.0),
                            epsabs=tol, epsrel=tol, limit=200)
    return val / special.beta(a, c - a)


def dirichlet_asymptotic_moment(alpha, s, n: int, limit: str) -> Fraction:
    """Limit of E[(s . X)^n] under alpha -> beta * alpha as beta -> 0 or infinity."""
    alpha, s = _check_pair(alpha, s)
    total = sum(alpha)
    if limit == "zero":
        return sum((a / total * v ** n for a, v in zip(alpha, s)), Fraction(0))
    if limit == "infinity":
        return (sum((a * v for a, v in zip(alpha, s)), Fraction(0)) / total) ** n
    raise DomainError("limit must be 'zero' or 'infinity'")


def normalized_moment(alpha, s, n: int) -> Fraction:
    """Poch(|alpha|, n)/n! * E[(s . X)^n], i.e. Z_n at weighted power sums."""
    alpha, s = _check_pair(alpha, s)
    if n < 0:
        return Fraction(0)
    if n == 0:
        return Fraction(1)
    return cycle_index_sn(n).evaluate(weighted_power_sums(alpha, s, n))


@dataclass(frozen=True)
class UrnState:
    s: tuple
    alpha: tuple


def urn_table_map(op: str, state: UrnState, i: int | None = None, new=None):
    """Apply an urn operation; returns (new state, scalar prefactor).

    The prefactor p satisfies p * Dir[new alpha] as the moment functional
    the operation produces.  ``i`` is 1-based; ``new`` = (s, alpha) of an
    added type.
    """
    s = list(_fr(state.s))
    alpha = list(_check_alpha(state.alpha))
    if len(s) != len(alpha):
        raise DomainError("state lengths differ")
    k = len(alpha)
    if op == "type-add":
        if new is None:
            raise DomainError("type-add needs the new (s, alpha)")
        ns, na = Fraction(new[0]), Fraction(new[1])
        if na <= 0:
            raise DomainError("alpha must be positive")
        return UrnState(tuple(s + [ns]), tuple(alpha + [na])), Fraction(1)
    if op == "type-del":
        if k < 2:
            raise DomainError("cannot delete the only type")
        return UrnState(tuple(s[:-1]), tuple(alpha[:-1])), Fraction(1)
    if i is None or not 1 <= i <= k:
        raise DomainError("urn index out of range")
    if op == "merge":
        if i >= k or s[i - 1] != s[i]:
            raise DomainError("merge needs s_i = s_{i+1}")
        return UrnState(tuple(s[:i] + s[i + 1:]), tuple(dirichlet_aggregate(alpha, i))), Fraction(1)
    if op == "urn-add":
        na = alpha.copy()
        na[i - 1] += 1
        return UrnState(tuple(s), tuple(na)), alpha[i - 1]
    if op == "urn-del":
        if alpha[i - 1] <= 1:
            raise DomainError("urn-del needs alpha_i > 1")
        na = alpha.copy()
        na[i - 1] -= 1
        return UrnState(tuple(s), tuple(na)), sum(alpha) - 1
    raise DomainError(f"unknown urn operation {op!r}")

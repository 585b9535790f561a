"""Moment/cumulant conversions, univariate and multivariate.

Univariate sequences are passed without the zeroth entry: moments as
mu'_1..mu'_N (mu'_0 = 1 is implicit) and cumulants as kappa_1..kappa_N.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .bellpoly import bell_complete, bell_star
from .combinatorics import pochhammer, set_partitions
from .errors import DomainError


def _fr(seq: Iterable) -> list:
    return [Fraction(v) for v in seq]


def cumulants_to_moments(kappa: Sequence) -> list:
    """mu'_n = B_n[kappa_1..kappa_n] for n = 1..N."""
    kappa = _fr(kappa)
    mom = [Fraction(1)]
    for n in range(len(kappa)):
        mom.append(sum((math.comb(n, k) * mom[n - k] * kappa[k] for k in range(n + 1)), Fraction(0)))
    return mom[1:]


def moments_to_cumulants(mu: Sequence) -> list:
    """kappa_n = sum_r (-1)^(r-1) (r-1)! B_{n,r}[mu'] for n = 1..N."""
    mu = _fr(mu)
    return [bell_star(n).evaluate(mu[:n]) for n in range(1, len(mu) + 1)]


def raw_to_central(mu: Sequence) -> list:
    """Central moments mu_1..mu_N from raw moments mu'_1..mu'_N."""
    mu = _fr(mu)
    if not mu:
        return []
    full = [Fraction(1)] + mu
    m1 = mu[0]
    return [
        sum((math.comb(n, k) * (-m1) ** (n - k) * full[k] for k in range(n + 1)), Fraction(0))
        for n in range(1, len(full))
    ]


def central_to_raw(mu: Sequence, mean) -> list:
    """Raw moments from central moments mu_1..mu_N (mu_1 must vanish) and the mean."""
    mu = _fr(mu)
    if mu and mu[0] != 0:
        raise DomainError("first central moment must be 0")
    mean = Fraction(mean)
    full = [Fraction(1)] + mu
    return [
        sum((math.comb(n, k) * mean ** (n - k) * full[k] for k in range(n + 1)), Fraction(0))
        for n in range(1, len(full))
    ]


def shift_moments(mu: Sequence, c) -> list:
    """Raw moments of X + c."""
    return central_to_raw(raw_to_central(mu), Fraction(mu[0]) + Fraction(c)) if mu else []


def scale_moments(mu: Sequence, c) -> list:
    c = Fraction(c)
    return [c ** (n + 1) * Fraction(v) for n, v in enumerate(mu)]


def convolve_moments(mu: Sequence, nu: Sequence) -> list:
    """Raw moments of X + Y for independent X, Y (binomial product)."""
    a = [Fraction(1)] + _fr(mu)
    b = [Fraction(1)] + _fr(nu)
    N = min(len(a), len(b)) - 1
    return [sum((math.comb(n, k) * a[k] * b[n - k] for k in range(n + 1)), Fraction(0)) for n in range(1, N + 1)]


class MultiMomentProvider:
    """Query interface m -> mu'_m for a random vector of given arity."""

    def __init__(self, arity: int, fn: Callable[[tuple], Fraction]):
        self.arity = arity
        self._fn = fn
        self._cache = {}

    def moment(self, m: Sequence[int]) -> Fraction:
        m = tuple(int(v) for v in m)
        if len(m) != self.arity:
            raise DomainError("multi-index length does not match arity")
        if not any(m):
            return Fraction(1)
        if m not in self._cache:
            self._cache[m] = Fraction(self._fn(m))
        return self._cache[m]


def independent_provider(marginals: Sequence[Sequence]) -> MultiMomentProvider:
    """Independent coordinates with given raw moments mu'_1..mu'_N each."""
    margs = [[Fraction(1)] + _fr(m) for m in marginals]

    def fn(m):
        out = Fraction(1)
        for mk, mi in zip(margs, m):
            if mi >= len(mk):
                raise DomainError("moment order exceeds supplied marginal")
            out *= mk[mi]
        return out

    return MultiMomentProvider(len(margs), fn)


def dirichlet_provider(alpha: Sequence) -> MultiMomentProvider:
    """Joint moments of Dir[alpha]: Poch(alpha, m) / Poch(|alpha|, |m|)."""
    alpha = _fr(alpha)
    total = sum(alpha)

    def fn(m):
        out = Fraction(1)
        for a, mi in zip(alpha, m):
            out *= pochhammer(a, mi)
        return out / pochhammer(total, sum(m))

    return MultiMomentProvider(len(alpha), fn)


def univariate_provider(mu: Sequence) -> MultiMomentProvider:
    mu = [Fraction(1)] + _fr(mu)
    return MultiMomentProvider(1, lambda m: mu[m[0]])


def _index_of(p: MultiMomentProvider, labels: Iterable[int], selection) -> tuple:
    m = [0] * p.arity
    for l in labels:
        m[selection[l]] += 1
    return tuple(m)


def _normalize(L, selection, limit):
    L = tuple(sorted(set(L)))
    if not L:
        raise DomainError("cumulant of the empty label set is undefined")
    if len(L) > limit:
        raise DomainError(f"label set larger than limit {limit}")
    if selection is None:
        selection = {l: 0 for l in L}
    elif not isinstance(selection, dict):
        selection = {l: selection[i] for i, l in enumerate(L)}
    return L, selection


def multivariate_cumulant(p: MultiMomentProvider, L: Iterable[int], selection=None,
                          method: str = "partition", limit: int = 12) -> Fraction:
    """Joint cumulant of (y_l)_{l in L}, with y_l the coordinate selection[l].

    ``selection`` maps each label to a 0-based coordinate of the provider; a
    sequence is read in the sorted order of L.  ``method`` is "partition"
    (sum over set partitions) or "recursion" (subset recursion, memoized).
    """
    L, selection = _normalize(L, selection, limit)
    if method == "partition":
        n = len(L)
        total = Fraction(0)
        for sp in set_partitions(n):
            r = len(sp.blocks)
            term = Fraction((-1) ** (r - 1) * math.factorial(r - 1))
            for b in sp.blocks:
                term *= p.moment(_index_of(p, (L[i - 1] for i in b), selection))
            total += term
        return total
    if method == "recursion":
        memo = {}

        def kappa(S: tuple) -> Fraction:
            if S in memo:
                return memo[S]
            pivot, rest = S[0], S[1:]
            val = p.moment(_index_of(p, S, selection))
            for r in range(len(rest)):
                for sub in itertools.combinations(rest, r):
                    I = (pivot,) + sub
                    comp = tuple(l for l in rest if l not in sub)
                    val -= kappa(I) * p.moment(_index_of(p, comp, selection))
            memo[S] = val
            return val

        return kappa(L)
    raise DomainError(f"unknown method {method!r}")


def multivariate_raw_central(p: MultiMomentProvider, m: Sequence[int], direction: str = "raw_to_central",
                             mean: Sequence | None = None) -> Fraction:
    """Binomial transform between raw and central joint moments.

    raw_to_central reads raw moments from p; central_to_raw reads central
    moments from p and needs the mean vector.
    """
    m = tuple(m)
    if direction == "raw_to_central":
        mean = [p.moment(tuple(int(i == j) for j in range(p.arity))) for i in range(p.arity)]
        sign = -1
    elif direction == "central_to_raw":
        if mean is None:
            raise DomainError("central_to_raw needs the mean vector")
        mean = _fr(mean)
        sign = 1
    else:
        raise DomainError(f"unknown direction {direction!r}")
    total = Fraction(0)
    for j in itertools.product(*(range(mi + 1) for mi in m)):
        c = Fraction(1)
        for mi, ji, yi in zip(m, j, mean):
            c *= math.comb(mi, ji) * (sign * yi) ** (mi - ji)
        total += c * p.moment(j)
    return total


def moments_from_bell(kappa: Sequence) -> list:
    """Slow reference route: evaluate complete Bell polynomials directly."""
    kappa = _fr(kappa)
    return [bell_complete(n).evaluate(kappa[:n]) for n in range(1, len(kappa) + 1)]

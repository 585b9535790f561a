"""Truncated exponential generating functions, sum a_n x^n / n!."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import DomainError


@dataclass(frozen=True)
class EgfSeries:
    coeffs: tuple

    def __post_init__(self):
        if len(self.coeffs) == 0:
            raise DomainError("an EGF needs at least the constant coefficient")
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in self.coeffs))

    @property
    def D(self) -> int:
        return len(self.coeffs) - 1

    @classmethod
    def of(cls, coeffs: Sequence, D: int | None = None) -> "EgfSeries":
        coeffs = list(coeffs)
        if D is not None:
            coeffs = (coeffs + [0] * (D + 1))[: D + 1]
        return cls(tuple(coeffs))

    def __getitem__(self, n):
        return self.coeffs[n]

    def __add__(self, other: "EgfSeries") -> "EgfSeries":
        _check_same(self, other)
        return EgfSeries(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def scale(self, c) -> "EgfSeries":
        c = Fraction(c)
        return EgfSeries(tuple(c * a for a in self.coeffs))


def _check_same(f: EgfSeries, g: EgfSeries):
    if f.D != g.D:
        raise DomainError(f"degree mismatch {f.D} != {g.D}")


def egf_mul(f: EgfSeries, g: EgfSeries) -> EgfSeries:
    """Binomial convolution."""
    _check_same(f, g)
    a, b = f.coeffs, g.coeffs
    return EgfSeries(tuple(
        sum((math.comb(n, k) * a[k] * b[n - k] for k in range(n + 1)), Fraction(0))
        for n in range(f.D + 1)
    ))


def egf_exp(f: EgfSeries) -> EgfSeries:
    """exp(f) for f_0 = 0; coefficient n is B_n[f_1..f_n]."""
    if f[0] != 0:
        raise DomainError("egf_exp needs f_0 = 0")
    a = f.coeffs
    c = [Fraction(1)]
    for n in range(f.D):
        c.append(sum((math.comb(n, k) * c[n - k] * a[k + 1] for k in range(n + 1)), Fraction(0)))
    return EgfSeries(tuple(c))


def egf_log(f: EgfSeries) -> EgfSeries:
    """log(f) for f_0 = 1, inverting the recursion used by egf_exp."""
    if f[0] != 1:
        raise DomainError("egf_log needs f_0 = 1")
    c = f.coeffs
    L = [Fraction(0)]
    for n in range(f.D):
        acc = c[n + 1]
        for k in range(n):
            acc -= math.comb(n, k) * c[n - k] * L[k + 1]
        L.append(acc)
    return EgfSeries(tuple(L))


def egf_pow_over_factorial(f: EgfSeries, k: int) -> EgfSeries:
    """f^k / k!."""
    if k < 0:
        raise DomainError("k must be natural")
    out = EgfSeries.of([1], f.D)
    for _ in range(k):
        out = egf_mul(out, f)
    return out.scale(Fraction(1, math.factorial(k)))

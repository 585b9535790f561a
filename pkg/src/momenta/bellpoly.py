"""Bell, Touchard and cycle-index polynomials with exact rational coefficients."""

from __future__ import annotations

import math
from collections import Counter
from fractions import Fraction
from functools import lru_cache
from typing import Mapping, Sequence

from .combinatorics import (
    IntPartition,
    faa_di_bruno,
    integer_partitions,
    multinomial_2nd,
)
from .errors import DomainError


class SparsePoly:
    """Multivariate polynomial: exponent tuple of fixed arity -> Fraction."""

    __slots__ = ("terms", "arity")

    def __init__(self, terms: Mapping | None = None, arity: int = 0):
        self.arity = arity
        self.terms = {}
        for e, c in (terms or {}).items():
            e = tuple(e)
            if len(e) < arity:
                e = e + (0,) * (arity - len(e))
            elif len(e) > arity:
                if any(e[arity:]):
                    raise DomainError("exponent exceeds arity")
                e = e[:arity]
            c = Fraction(c)
            if c:
                self.terms[e] = self.terms.get(e, 0) + c
                if not self.terms[e]:
                    del self.terms[e]

    @classmethod
    def const(cls, c, arity: int = 0) -> "SparsePoly":
        return cls({(0,) * arity: c}, arity)

    @classmethod
    def var(cls, i: int, arity: int) -> "SparsePoly":
        """The variable x_{i+1} (0-based index i)."""
        e = [0] * arity
        e[i] = 1
        return cls({tuple(e): 1}, arity)

    def with_arity(self, arity: int) -> "SparsePoly":
        return SparsePoly(self.terms, arity)

    def _coerce(self, other):
        if isinstance(other, SparsePoly):
            a = max(self.arity, other.arity)
            return self.with_arity(a), other.with_arity(a)
        return self, SparsePoly.const(other, self.arity)

    def __add__(self, other):
        a, b = self._coerce(other)
        out = dict(a.terms)
        for e, c in b.terms.items():
            out[e] = out.get(e, 0) + c
        return SparsePoly(out, a.arity)

    __radd__ = __add__

    def __neg__(self):
        return SparsePoly({e: -c for e, c in self.terms.items()}, self.arity)

    def __sub__(self, other):
        return self + (-other if isinstance(other, SparsePoly) else -Fraction(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, SparsePoly):
            other = Fraction(other)
            return SparsePoly({e: c * other for e, c in self.terms.items()}, self.arity)
        a, b = self._coerce(other)
        out = {}
        for e1, c1 in a.terms.items():
            for e2, c2 in b.terms.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return SparsePoly(out, a.arity)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self * (1 / Fraction(other))

    def __pow__(self, k: int):
        out = SparsePoly.const(1, self.arity)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if not isinstance(other, SparsePoly):
            other = SparsePoly.const(other, self.arity)
        a, b = self._coerce(other)
        return a.terms == b.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def homogeneous_part(self, d: int) -> "SparsePoly":
        return SparsePoly({e: c for e, c in self.terms.items() if sum(e) == d}, self.arity)

    def coeff(self, e: Sequence[int]) -> Fraction:
        e = tuple(e) + (0,) * (self.arity - len(e))
        return self.terms.get(e, Fraction(0))

    def evaluate(self, values: Sequence) -> Fraction:
        """Exact evaluation; missing trailing values are treated as errors."""
        if len(values) < self.arity:
            raise DomainError(f"need {self.arity} values, got {len(values)}")
        vals = [Fraction(v) for v in values[: self.arity]]
        total = Fraction(0)
        for e, c in self.terms.items():
            term = c
            for v, k in zip(vals, e):
                if k:
                    term *= v ** k
            total += term
        return total

    def substitute(self, polys: Sequence["SparsePoly"]) -> "SparsePoly":
        """Compose: replace x_i by polys[i]."""
        if len(polys) < self.arity:
            raise DomainError("not enough substitutions")
        arity = max((p.arity for p in polys), default=0)
        polys = [p.with_arity(arity) for p in polys]
        powers = {}
        out = SparsePoly({}, arity)
        for e, c in self.terms.items():
            term = SparsePoly.const(c, arity)
            for i, k in enumerate(e):
                if k:
                    if (i, k) not in powers:
                        powers[(i, k)] = polys[i] ** k
                    term = term * powers[(i, k)]
            out = out + term
        return out

    def to_string(self, var: str = "x") -> str:
        if not self.terms:
            return "0"
        pieces = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            mono = "*".join(
                (f"{var}{i + 1}" if k == 1 else f"{var}{i + 1}^{k}") for i, k in enumerate(e) if k
            )
            if not mono:
                pieces.append(str(c))
            elif c == 1:
                pieces.append(mono)
            elif c == -1:
                pieces.append("-" + mono)
            else:
                pieces.append(f"{c}*{mono}")
        return " + ".join(pieces).replace("+ -", "- ")

    def __repr__(self):
        return f"SparsePoly({self.to_string()})"


def _monomial(lam: IntPartition, arity: int) -> tuple:
    e = list(lam.freq[:arity]) + [0] * max(0, arity - len(lam.freq))
    return tuple(e)


@lru_cache(maxsize=None)
def bell_partial(n: int, r: int) -> SparsePoly:
    """Partial Bell polynomial B_{n,r} in x_1..x_n."""
    if n < 0 or r < 0:
        raise DomainError("n, r must be natural")
    if r > n:
        raise DomainError("partial Bell polynomial needs r <= n")
    return SparsePoly({_monomial(lam, n): faa_di_bruno(lam) for lam in integer_partitions(n, r)}, n)


@lru_cache(maxsize=None)
def bell_complete(n: int) -> SparsePoly:
    """Complete Bell polynomial B_n = sum_r B_{n,r}."""
    if n < 0:
        raise DomainError("n must be natural")
    return SparsePoly({_monomial(lam, n): faa_di_bruno(lam) for lam in integer_partitions(n)}, n)


def touchard(n: int) -> SparsePoly:
    """Univariate Touchard polynomial T_n(x) = B_n[x,...,x]."""
    out = {}
    for lam in integer_partitions(n):
        out[(lam.length,)] = out.get((lam.length,), 0) + faa_di_bruno(lam)
    return SparsePoly(out, 1)


@lru_cache(maxsize=None)
def cycle_index_sn(n: int) -> SparsePoly:
    """Cycle index of the symmetric group S_n."""
    if n < 0:
        raise DomainError("n must be natural")
    nf = math.factorial(n)
    return SparsePoly({_monomial(lam, n): multinomial_2nd(lam) / nf for lam in integer_partitions(n)}, n)


def cycle_index_group(census: Mapping[IntPartition, int]) -> SparsePoly:
    """Cycle index of a permutation group given its cycle-type census."""
    if not census:
        raise DomainError("empty group census")
    degrees = {lam.n for lam in census}
    if len(degrees) != 1:
        raise DomainError("cycle types of different degrees")
    if any(m <= 0 for m in census.values()):
        raise DomainError("multiplicities must be positive")
    (n,) = degrees
    order = sum(census.values())
    return SparsePoly({_monomial(lam, n): Fraction(m, order) for lam, m in census.items()}, n)


def census_of(perms) -> dict:
    """Cycle-type census of an explicit list of permutations."""
    from .combinatorics import shape_of

    return dict(Counter(shape_of(p) for p in perms))


@lru_cache(maxsize=None)
def bell_star(n: int) -> SparsePoly:
    """Inverse Bell polynomial: sum_r (-1)^(r-1) (r-1)! B_{n,r}."""
    if n < 1:
        raise DomainError("bell_star needs n >= 1")
    out = SparsePoly({}, n)
    for r in range(1, n + 1):
        out = out + bell_partial(n, r) * ((-1) ** (r - 1) * math.factorial(r - 1))
    return out


def power_sums(s: Sequence, n: int) -> list:
    s = [Fraction(v) for v in s]
    return [sum((v ** i for v in s), Fraction(0)) for i in range(1, n + 1)]


def pattern_inventory(n: int, s: Sequence, census: Mapping[IntPartition, int] | None = None) -> Fraction:
    """Cycle index (S_n by default) evaluated at the power sums of the weights s."""
    if n == 0:
        return Fraction(1)
    z = cycle_index_sn(n) if census is None else cycle_index_group(census)
    return z.evaluate(power_sums(s, n))

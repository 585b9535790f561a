"""Integer partitions, set partitions, permutations and multinomial numbers.

Integer partitions are stored in frequency representation: ``freq[i]`` is
the number of parts equal to ``i + 1``.  All counting functions return
``Fraction`` so that downstream code never mixes ints and rationals.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Sequence

from .errors import DomainError


@dataclass(frozen=True, order=True)
class IntPartition:
    freq: tuple

    def __post_init__(self):
        object.__setattr__(self, "freq", tuple(int(v) for v in self.freq))
        if any(v < 0 for v in self.freq):
            raise DomainError("negative frequency")

    @property
    def n(self) -> int:
        return sum((i + 1) * v for i, v in enumerate(self.freq))

    @property
    def length(self) -> int:
        """Number of parts."""
        return sum(self.freq)

    @property
    def parts(self) -> tuple:
        """Parts in non-increasing order."""
        out = []
        for i in range(len(self.freq) - 1, -1, -1):
            out.extend([i + 1] * self.freq[i])
        return tuple(out)

    @classmethod
    def from_parts(cls, parts: Sequence[int], n: int | None = None) -> "IntPartition":
        parts = [int(p) for p in parts if p != 0]
        if any(p < 0 for p in parts):
            raise DomainError("negative part")
        size = sum(parts) if n is None else n
        if sum(parts) != size:
            raise DomainError("parts do not sum to n")
        freq = [0] * size
        for p in parts:
            freq[p - 1] += 1
        return cls(tuple(freq))


@dataclass(frozen=True)
class SetPartition:
    blocks: tuple

    def __post_init__(self):
        blocks = tuple(sorted((tuple(sorted(b)) for b in self.blocks), key=lambda b: b[0] if b else 0))
        if any(len(b) == 0 for b in blocks):
            raise DomainError("empty block")
        object.__setattr__(self, "blocks", blocks)

    @property
    def n(self) -> int:
        return sum(len(b) for b in self.blocks)


@dataclass(frozen=True)
class Permutation:
    one_line: tuple

    def __post_init__(self):
        one_line = tuple(int(v) for v in self.one_line)
        if sorted(one_line) != list(range(1, len(one_line) + 1)):
            raise DomainError("not a permutation of 1..n")
        object.__setattr__(self, "one_line", one_line)

    @property
    def n(self) -> int:
        return len(self.one_line)

    def __call__(self, i: int) -> int:
        return self.one_line[i - 1]

    def compose(self, other: "Permutation") -> "Permutation":
        """Return self ∘ other."""
        return Permutation(tuple(self(other(i)) for i in range(1, other.n + 1)))

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for i, v in enumerate(self.one_line, start=1):
            inv[v - 1] = i
        return Permutation(tuple(inv))

    def cycles(self) -> list:
        seen = set()
        out = []
        for start in range(1, self.n + 1):
            if start in seen:
                continue
            cyc = [start]
            seen.add(start)
            j = self(start)
            while j != start:
                cyc.append(j)
                seen.add(j)
                j = self(j)
            out.append(tuple(cyc))
        return out


def _partitions_desc(n: int, largest: int) -> Iterator[list]:
    if n == 0:
        yield []
        return
    for p in range(min(n, largest), 0, -1):
        for rest in _partitions_desc(n - p, p):
            yield [p] + rest


def integer_partitions(n: int, r: int | None = None) -> list:
    """All partitions of ``n`` (optionally with exactly ``r`` parts), sorted by freq vector."""
    if n < 0:
        raise DomainError("n must be a natural number")
    out = [IntPartition.from_parts(p, n) for p in _partitions_desc(n, n)]
    if r is not None:
        out = [lam for lam in out if lam.length == r]
    return sorted(out, key=lambda lam: lam.freq)


def set_partitions(n: int) -> list:
    """Set partitions of {1..n} in restricted-growth-string order."""
    if n < 1:
        raise DomainError("set partitions are defined for n >= 1")
    out = []

    def rec(i, rgs, nblocks):
        if i == n:
            blocks = [[] for _ in range(nblocks)]
            for elem, b in enumerate(rgs, start=1):
                blocks[b].append(elem)
            out.append(SetPartition(tuple(tuple(b) for b in blocks)))
            return
        for b in range(nblocks + 1):
            rec(i + 1, rgs + [b], max(nblocks, b + 1))

    rec(0, [], 0)
    return out


def permutations(n: int) -> Iterator[Permutation]:
    import itertools

    for p in itertools.permutations(range(1, n + 1)):
        yield Permutation(p)


def shape_of(p: SetPartition | Permutation) -> IntPartition:
    """Block-size profile of a set partition, or cycle type of a permutation."""
    if isinstance(p, SetPartition):
        return IntPartition.from_parts([len(b) for b in p.blocks], p.n)
    if isinstance(p, Permutation):
        return IntPartition.from_parts([len(c) for c in p.cycles()], p.n)
    raise DomainError("expected SetPartition or Permutation")


def faa_di_bruno(lam: IntPartition) -> Fraction:
    """Number of set partitions of [n] with block profile ``lam``."""
    den = 1
    for i, v in enumerate(lam.freq, start=1):
        den *= math.factorial(i) ** v * math.factorial(v)
    return Fraction(math.factorial(lam.n), den)


def multinomial_2nd(lam: IntPartition) -> Fraction:
    """Number of permutations of [n] with cycle type ``lam``."""
    den = 1
    for i, v in enumerate(lam.freq, start=1):
        den *= i ** v * math.factorial(v)
    return Fraction(math.factorial(lam.n), den)


def multinomial_1st(m: Sequence[int]) -> Fraction:
    """Multinomial coefficient |m|!/m!."""
    if any(v < 0 for v in m):
        raise DomainError("negative multi-index entry")
    den = 1
    for v in m:
        den *= math.factorial(v)
    return Fraction(math.factorial(sum(m)), den)


def pochhammer(a, n: int) -> Fraction:
    """Rising factorial a(a+1)...(a+n-1); 1 for n = 0."""
    if n < 0:
        raise DomainError("negative Pochhammer order")
    a = Fraction(a)
    out = Fraction(1)
    for j in range(n):
        out *= a + j
    return out


def pochhammer_mv(a: Sequence, m: Sequence[int]) -> Fraction:
    out = Fraction(1)
    for ai, mi in zip(a, m):
        out *= pochhammer(ai, mi)
    return out


def multiset_coeff(alpha, n: int) -> Fraction:
    """Generalized multiset number Poch(alpha, n)/n!."""
    alpha = Fraction(alpha)
    if alpha <= 0:
        raise DomainError("multiset coefficient needs alpha > 0")
    return pochhammer(alpha, n) / math.factorial(n)


def mfactorial(m: Sequence[int]) -> int:
    out = 1
    for v in m:
        out *= math.factorial(v)
    return out


@lru_cache(maxsize=None)
def _compositions(k: int, n: int) -> tuple:
    if k == 0:
        return ((),) if n == 0 else ()
    out = []
    for first in range(n + 1):
        for rest in _compositions(k - 1, n - first):
            out.append((first,) + rest)
    return tuple(out)


def multi_indices(k: int, n: int) -> tuple:
    """All length-k multi-indices of size exactly n, lexicographic."""
    return _compositions(k, n)


def multi_indices_upto(k: int, D: int) -> list:
    out = []
    for n in range(D + 1):
        out.extend(multi_indices(k, n))
    return out


def multiindex_cycle_partition(m: Sequence[int]) -> IntPartition:
    """Partition of |m| whose parts are the non-zero entries of m."""
    if any(v < 0 for v in m):
        raise DomainError("negative multi-index entry")
    return IntPartition.from_parts([v for v in m if v > 0], sum(m))


def bell_number(n: int) -> int:
    # Bell triangle, used as an independent count
    row = [1]
    for _ in range(n):
        new = [row[-1]]
        for v in row:
            new.append(new[-1] + v)
        row = new
    return row[0]

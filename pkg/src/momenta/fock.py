"""Contractions, extended Fock inner products and compensated Poisson MSI on [k].

Scalars are real rationals, so complex conjugation is the identity.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .combinatorics import IntPartition, faa_di_bruno, integer_partitions, multinomial_2nd, set_partitions
from .errors import DomainError
from .random_measures import gamma_measure_moment, integrate


@dataclass(frozen=True)
class SymTensor:
    """Symmetric function on [k]^n, keyed by sorted n-tuples (0-based points)."""

    k: int
    n: int
    values: dict

    def __call__(self, *xs) -> Fraction:
        return self.values.get(tuple(sorted(xs)), Fraction(0))

    @classmethod
    def from_function(cls, k: int, n: int, fn: Callable) -> "SymTensor":
        vals = {}
        for key in itertools.combinations_with_replacement(range(k), n):
            v = Fraction(fn(*key))
            if v:
                vals[key] = v
        return cls(k, n, vals)

    @classmethod
    def coherent(cls, f: Sequence, n: int) -> "SymTensor":
        """f^{(x)n}."""
        f = [Fraction(v) for v in f]
        return cls.from_function(len(f), n, lambda *xs: math.prod((f[x] for x in xs), start=Fraction(1)))

    @classmethod
    def sym_product(cls, fs: Sequence[Sequence]) -> "SymTensor":
        """Symmetrization f_1 (.) ... (.) f_n, averaged over S_n."""
        fs = [[Fraction(v) for v in f] for f in fs]
        n = len(fs)
        k = len(fs[0])
        nf = math.factorial(n)

        def fn(*xs):
            return sum(
                (math.prod((fs[p][x] for p, x in zip(perm, xs)), start=Fraction(1))
                 for perm in itertools.permutations(range(n))),
                Fraction(0),
            ) / nf

        return cls.from_function(k, n, fn)


@dataclass(frozen=True)
class Tensor:
    """General function on [k]^r, keyed by full tuples."""

    k: int
    r: int
    values: dict

    def __call__(self, *ys) -> Fraction:
        return self.values.get(tuple(ys), Fraction(0))


def block_sizes(lam: IntPartition) -> list:
    """Block sizes in increasing order, one entry per part."""
    out = []
    for size, count in enumerate(lam.freq, start=1):
        out.extend([size] * count)
    return out


def contract(phi: SymTensor, lam: IntPartition) -> Tensor:
    """phi_{*lam}(y_1..y_r) = phi with y_j repeated according to the j-th block size."""
    if lam.n != phi.n:
        raise DomainError("partition does not partition the tensor order")
    sizes = block_sizes(lam)
    vals = {}
    for ys in itertools.product(range(phi.k), repeat=len(sizes)):
        args = []
        for y, s in zip(ys, sizes):
            args.extend([y] * s)
        v = phi(*args)
        if v:
            vals[ys] = v
    return Tensor(phi.k, len(sizes), vals)


def _weight(sigma, ys) -> Fraction:
    return math.prod((sigma[y] for y in ys), start=Fraction(1))


def ext_inner_coherent(sigma, phi: Sequence, psi: Sequence, n: int) -> Fraction:
    """<phi^{(x)n}, psi^{(x)n}>_ext = n! Z_n[<(phi psi)^i>_sigma]."""
    prod = [Fraction(a) * Fraction(b) for a, b in zip(phi, psi)]
    return gamma_measure_moment(sigma, prod, n)


def ext_inner_general(sigma, phi: SymTensor, psi: SymTensor) -> Fraction:
    """Sum over lam |- n of (permutations of type lam) * <phi_{*lam} psi_{*lam}> over sigma^{(x)|lam|}."""
    if phi.n != psi.n:
        raise DomainError("tensor orders differ")
    sigma = [Fraction(v) for v in sigma]
    if len(sigma) != phi.k or phi.k != psi.k:
        raise DomainError("ground sets differ")
    if phi.n == 0:
        return phi() * psi()
    total = Fraction(0)
    for lam in integer_partitions(phi.n):
        a, b = contract(phi, lam), contract(psi, lam)
        inner = sum((_weight(sigma, ys) * v * b(*ys) for ys, v in a.values.items()), Fraction(0))
        total += multinomial_2nd(lam) * inner
    return total


def plain_inner(sigma, phi: SymTensor, psi: SymTensor) -> Fraction:
    """Ordinary L^2(sigma^{(x)n}) inner product."""
    sigma = [Fraction(v) for v in sigma]
    return sum(
        (_weight(sigma, xs) * phi(*xs) * psi(*xs) for xs in itertools.product(range(phi.k), repeat=phi.n)),
        Fraction(0),
    )


def recursive_identity_check(sigma, phi, psi, n: int) -> tuple:
    """Both sides of the Bell-type recursion for coherent inner products.

    rhs = sum_k C(n,k) <phi^k, psi^k>_ext (n-k)! <(phi psi)^{n-k+1}>_sigma
    """
    prod = [Fraction(a) * Fraction(b) for a, b in zip(phi, psi)]
    lhs = ext_inner_coherent(sigma, phi, psi, n + 1)
    rhs = sum(
        (math.comb(n, k) * ext_inner_coherent(sigma, phi, psi, k)
         * math.factorial(n - k) * integrate(sigma, prod, n - k + 1) for k in range(n + 1)),
        Fraction(0),
    )
    return lhs, rhs


def binomial_identity_check(sigma, phi1, psi1, phi2, psi2, n: int) -> tuple:
    """Binomial-type splitting for cross-disjoint pairs (phi_1, psi_1), (phi_2, psi_2)."""
    sigma = [Fraction(v) for v in sigma]
    for a, b in ((phi1, psi2), (phi2, psi1)):
        if any(s and Fraction(x) and Fraction(y) for s, x, y in zip(sigma, a, b)):
            raise DomainError("supports of phi_i and psi_j overlap for i != j")
    phi = [Fraction(a) + Fraction(b) for a, b in zip(phi1, phi2)]
    psi = [Fraction(a) + Fraction(b) for a, b in zip(psi1, psi2)]
    lhs = ext_inner_coherent(sigma, phi, psi, n)
    rhs = sum(
        (math.comb(n, k) * ext_inner_coherent(sigma, phi1, psi1, k) * ext_inner_coherent(sigma, phi2, psi2, n - k)
         for k in range(n + 1)),
        Fraction(0),
    )
    return lhs, rhs


@dataclass(frozen=True)
class DisjointProductFunction:
    """Factors f_1..f_n over [k] with pairwise sigma-disjoint supports."""

    sigma: tuple
    factors: tuple

    def __post_init__(self):
        sigma = tuple(Fraction(v) for v in self.sigma)
        factors = tuple(tuple(Fraction(v) for v in f) for f in self.factors)
        if any(len(f) != len(sigma) for f in factors):
            raise DomainError("factor length differs from ground set")
        for i, j in itertools.combinations(range(len(factors)), 2):
            if any(s and a and b for s, a, b in zip(sigma, factors[i], factors[j])):
                raise DomainError("factor supports overlap")
        object.__setattr__(self, "sigma", sigma)
        object.__setattr__(self, "factors", factors)

    @property
    def n(self) -> int:
        return len(self.factors)

    @property
    def k(self) -> int:
        return len(self.sigma)

    def kernel(self, xs) -> Fraction:
        """n! f^(.)(xs) = sum over permutations of prod f_{pi(i)}(x_i)."""
        return sum(
            (math.prod((self.factors[p][x] for p, x in zip(perm, xs)), start=Fraction(1))
             for perm in itertools.permutations(range(self.n))),
            Fraction(0),
        )


def _falling(c: int, j: int) -> int:
    out = 1
    for i in range(j):
        out *= c - i
    return out


def contraction_with_points(f: DisjointProductFunction, counts: Sequence[int], j: int) -> Fraction:
    """f_{*j}: sum over ordered j-tuples of distinct atoms of p, remaining arguments integrated by sigma."""
    n, k = f.n, f.k
    total = Fraction(0)
    for xs in itertools.product(range(k), repeat=j):
        mult = 1
        for x in set(xs):
            mult *= _falling(int(counts[x]), xs.count(x))
        if not mult:
            continue
        for ys in itertools.product(range(k), repeat=n - j):
            w = _weight(f.sigma, ys)
            if w:
                total += mult * w * f.kernel(xs + ys)
    return total


def msi_compensated(f: DisjointProductFunction, counts: Sequence[int]) -> Fraction:
    """I_n(n! f^(.)) for the compensated Poisson measure at the outcome ``counts``."""
    n = f.n
    return sum(
        (math.comb(n, j) * (-1) ** (n - j) * contraction_with_points(f, counts, j) for j in range(n + 1)),
        Fraction(0),
    )


def compensated_product(f: DisjointProductFunction, counts: Sequence[int]) -> Fraction:
    """n! prod_i (p(f_i) - sigma(f_i))."""
    out = Fraction(math.factorial(f.n))
    for fi in f.factors:
        out *= sum((c * v for c, v in zip(counts, fi)), Fraction(0)) - integrate(f.sigma, fi)
    return out


def centered_poisson_moment(sigma, hs: Sequence[Sequence]) -> Fraction:
    """E prod_l (p(h_l) - sigma(h_l)) via joint cumulants sigma(prod_B h) over blocks of size >= 2."""
    sigma = [Fraction(v) for v in sigma]
    hs = [[Fraction(v) for v in h] for h in hs]
    if not hs:
        return Fraction(1)
    total = Fraction(0)
    for sp in set_partitions(len(hs)):
        if any(len(b) == 1 for b in sp.blocks):
            continue
        term = Fraction(1)
        for b in sp.blocks:
            term *= sum((s * math.prod((hs[i - 1][x] for i in b), start=Fraction(1)) for x, s in enumerate(sigma)),
                        Fraction(0))
        total += term
    return total


def msi_orthogonality(sigma, f: DisjointProductFunction, g: DisjointProductFunction) -> Fraction:
    """E[I_n(n! f^(.)) I_m(m! g^(.))] computed from the centered Poisson moment algebra."""
    return math.factorial(f.n) * math.factorial(g.n) * centered_poisson_moment(sigma, list(f.factors) + list(g.factors))


def diagonal_decomposition(rho, phi: SymTensor) -> tuple:
    """(total, {lam: term}) splitting <phi>_{rho^{(x)n}} by the diagonal pattern of the arguments."""
    rho = [Fraction(v) for v in rho]
    n, k = phi.n, phi.k
    total = sum((_weight(rho, xs) * phi(*xs) for xs in itertools.product(range(k), repeat=n)), Fraction(0))
    if n == 0:
        return total, {IntPartition(()): total}
    parts = {}
    for lam in integer_partitions(n):
        sizes = block_sizes(lam)
        c = contract(phi, lam)
        acc = Fraction(0)
        for ys, v in c.values.items():
            if len(set(ys)) != len(ys):
                continue
            acc += v * math.prod((rho[y] ** s for y, s in zip(ys, sizes)), start=Fraction(1))
        parts[lam] = faa_di_bruno(lam) * acc
    return total, parts


def pascal_fock_weight(r, alpha, n: int) -> Fraction:
    """n! ((1 - alpha)/alpha^2)^n."""
    r, alpha = Fraction(r), Fraction(alpha)
    if r <= 0 or not 0 < alpha < 1:
        raise DomainError("need r > 0 and 0 < alpha < 1")
    return math.factorial(n) * ((1 - alpha) / alpha ** 2) ** n


def negative_binomial_pmf(r, alpha, m: int) -> Fraction:
    """alpha^r Poch(r, m)/m! (1 - alpha)^m."""
    from .combinatorics import multiset_coeff

    r, alpha = Fraction(r), Fraction(alpha)
    if r <= 0 or not 0 < alpha < 1:
        raise DomainError("need r > 0 and 0 < alpha < 1")
    if r.denominator != 1:
        raise DomainError("exact pmf needs integer r")
    return alpha ** int(r) * multiset_coeff(r, m) * (1 - alpha) ** m

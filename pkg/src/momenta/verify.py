"""Invariant suites behind `momenta verify`.

Each suite returns a list of check records {"name", "passed", "discrepancy"}.
Random draws come from random.Random(seed) so reports are reproducible.
"""

from __future__ import annotations

import itertools
import math
import random
from fractions import Fraction

import numpy as np

from . import bellpoly as bp
from . import distributions as dist
from . import fock
from . import liealg
from . import momcum
from . import random_measures as rm
from .combinatorics import integer_partitions, multi_indices, pochhammer


def rand_q(rng: random.Random, positive: bool = False, span: int = 9) -> Fraction:
    if positive:
        return Fraction(rng.randint(1, span), rng.randint(1, 7))
    return Fraction(rng.randint(-span, span), rng.randint(1, 7))


def _check(name: str, lhs, rhs, tol=None) -> dict:
    if tol is None:
        diff = Fraction(lhs) - Fraction(rhs)
        return {"name": name, "passed": diff == 0, "discrepancy": abs(diff)}
    diff = abs(float(lhs) - float(rhs))
    return {"name": name, "passed": diff <= tol, "discrepancy": diff}


def _flag(name: str, ok: bool, discrepancy=None) -> dict:
    if discrepancy is None:
        discrepancy = 0 if ok else 1
    return {"name": name, "passed": bool(ok), "discrepancy": discrepancy}


# ---- exact identities ----------------------------------------------------

def bell_identities(nmax: int, draws: int, rng: random.Random) -> list:
    """Homogeneity, both recursions, binomial type and the Bell/cycle-index relation."""
    out = []
    for d in range(draws):
        a, b = rand_q(rng), rand_q(rng)
        x = [rand_q(rng) for _ in range(nmax + 1)]
        y = [rand_q(rng) for _ in range(nmax + 1)]
        for n in range(nmax + 1):
            B = bp.bell_complete(n)
            scaled = [a ** i * x[i - 1] for i in range(1, n + 1)]
            ok = B.evaluate(scaled) == a ** n * B.evaluate(x[:n])
            for r in range(n + 1):
                if n == 0 and r == 0:
                    continue
                if r == 0:
                    continue
                P = bp.bell_partial(n, r)
                sc = [b * a ** i * x[i - 1] for i in range(1, n + 1)]
                ok = ok and P.evaluate(sc) == a ** n * b ** r * P.evaluate(x[:n])
            out.append(_flag(f"homogeneity n={n} draw={d}", ok))
            xy = [p + q for p, q in zip(x, y)]
            rhs = sum((math.comb(n, k) * bp.bell_complete(k).evaluate(x[:k]) * bp.bell_complete(n - k).evaluate(y[:n - k])
                       for k in range(n + 1)), Fraction(0))
            out.append(_check(f"binomial type n={n} draw={d}", B.evaluate(xy[:n]), rhs))
            gx = [math.factorial(i - 1) * x[i - 1] for i in range(1, n + 1)]
            out.append(_check(f"bell/cycle-index n={n} draw={d}",
                              bp.cycle_index_sn(n).evaluate(x[:n]) if n else 1,
                              B.evaluate(gx) / math.factorial(n)))
            if n < nmax:
                rec = sum((math.comb(n, k) * bp.bell_complete(n - k).evaluate(x[:n - k]) * x[k] for k in range(n + 1)),
                          Fraction(0))
                out.append(_check(f"bell recursion n={n} draw={d}", bp.bell_complete(n + 1).evaluate(x[:n + 1]), rec))
                Z = lambda m: bp.cycle_index_sn(m).evaluate(x[:m]) if m else Fraction(1)
                recz = sum((Z(n - k) * x[k] for k in range(n + 1)), Fraction(0))
                out.append(_check(f"cycle-index recursion n={n} draw={d}", (n + 1) * Z(n + 1), recz))
    return out


def bell_polynomial_identities(nmax: int) -> list:
    """Symbolic forms of the same identities, as exact polynomial equalities."""
    out = []
    for n in range(nmax):
        lhs = bp.bell_complete(n + 1)
        rhs = bp.SparsePoly({}, n + 1)
        for k in range(n + 1):
            rhs = rhs + bp.bell_complete(n - k).with_arity(n + 1) * bp.SparsePoly.var(k, n + 1) * math.comb(n, k)
        out.append(_flag(f"bell recursion symbolic n={n}", lhs == rhs))
    for n in range(1, nmax + 1):
        gam = [bp.SparsePoly.var(i - 1, n) * math.factorial(i - 1) for i in range(1, n + 1)]
        out.append(_flag(f"bell/cycle-index symbolic n={n}",
                         bp.cycle_index_sn(n) == bp.bell_complete(n).substitute(gam) / math.factorial(n)))
    return out


def duality_roundtrip(N: int, draws: int, rng: random.Random) -> list:
    out = []
    for d in range(draws):
        mu = [rand_q(rng) for _ in range(N)]
        back = momcum.cumulants_to_moments(momcum.moments_to_cumulants(mu))
        out.append(_flag(f"moments->cumulants->moments N={N} draw={d}", back == mu))
        kap = [rand_q(rng) for _ in range(N)]
        back = momcum.moments_to_cumulants(momcum.cumulants_to_moments(kap))
        out.append(_flag(f"cumulants->moments->cumulants N={N} draw={d}", back == kap))
    return out


def dirichlet_routes(kmax: int, nmax: int, draws: int, rng: random.Random) -> list:
    out = []
    for k in range(1, kmax + 1):
        for d in range(draws):
            alpha = [rand_q(rng, positive=True) for _ in range(k)]
            s = [rand_q(rng) for _ in range(k)]
            for n in range(nmax + 1):
                out.append(_check(f"dirichlet routes k={k} n={n} draw={d}",
                                  dist.dirichlet_moment_multiindex(alpha, s, n),
                                  dist.dirichlet_moment_cycleindex(alpha, s, n)))
    for n in range(7):
        out.append(_check(f"uniform simplex n={n}", dist.dirichlet_moment_cycleindex([1, 1], [1, 0], n),
                          Fraction(1, n + 1)))
    return out


def polya_orbits(nmax: int, kmax: int) -> list:
    """Cycle index at {0,1} weights versus explicit orbit enumeration under S_n."""
    out = []
    for k in range(1, kmax + 1):
        for s in itertools.product((0, 1), repeat=k):
            for n in range(nmax + 1):
                orbits = {tuple(sorted(c)) for c in itertools.product(range(k), repeat=n)
                          if all(s[v] for v in c)}
                out.append(_check(f"polya n={n} s={s}", bp.pattern_inventory(n, s), len(orbits)))
    return out


def polya_aggregation(nmax: int, rng: random.Random) -> list:
    out = []
    for n in range(nmax + 1):
        v, w = rand_q(rng), rand_q(rng)
        merged = dist.dirichlet_aggregate([1, 1, 2], 1)
        lhs = dist.normalized_moment([1, 1, 2], [v, v, w], n)
        rhs = dist.normalized_moment(merged, [v, w], n)
        out.append(_check(f"aggregation n={n}", lhs, rhs))
    return out


def humbert_egf(nmax: int, kmax: int, rng: random.Random) -> list:
    """Degree-n part of Phi2[alpha; |alpha|; x] equals Z_n[x^i . alpha]/Poch(|alpha|, n)."""
    out = []
    for k in range(1, kmax + 1):
        alpha = [rand_q(rng, positive=True) for _ in range(k)]
        total = sum(alpha)
        series = dist.humbert_phi2(alpha, total, nmax)
        for n in range(nmax + 1):
            lhs = bp.SparsePoly(series.homogeneous(n), k)
            if n == 0:
                rhs = bp.SparsePoly.const(1, k)
            else:
                psums = [sum((bp.SparsePoly.var(j, k) ** i * alpha[j] for j in range(k)), bp.SparsePoly({}, k))
                         for i in range(1, n + 1)]
                rhs = bp.cycle_index_sn(n).substitute(psums) / pochhammer(total, n)
            out.append(_flag(f"humbert egf k={k} n={n}", lhs == rhs))
    return out


def asymptotics(kmax: int, nmax: int, rng: random.Random) -> list:
    out = []
    for k in range(1, kmax + 1):
        alpha = [rand_q(rng, positive=True) for _ in range(k)]
        s = [rand_q(rng) / 9 for _ in range(k)]
        total = sum(alpha)
        bar = [a / total for a in alpha]
        for n in range(1, nmax + 1):
            for beta, lim in ((Fraction(1, 10 ** 4), "zero"), (Fraction(10 ** 4), "infinity")):
                exact = dist.dirichlet_moment_cycleindex([beta * b for b in bar], s, n)
                out.append(_check(f"dirichlet asymptotic k={k} n={n} beta={beta}", exact,
                                  dist.dirichlet_asymptotic_moment(alpha, s, n, lim), tol=1e-3))
                dfv = rm.df_moment([beta * b for b in bar], s, n)
                limv = (sum((b * v ** n for b, v in zip(bar, s)), Fraction(0)) if lim == "zero"
                        else sum((b * v for b, v in zip(bar, s)), Fraction(0)) ** n)
                out.append(_check(f"df asymptotic k={k} n={n} beta={beta}", dfv, limv, tol=1e-3))
    return out


def conv_exp(kmax: int, mmax: int, M: int, rng: random.Random) -> list:
    out = []
    for k in range(1, kmax + 1):
        sigma = [rand_q(rng, positive=True) for _ in range(k)]
        for size in range(mmax + 1):
            for m in multi_indices(k, size):
                lhs, rhs = rm.conv_exp_check(sigma, m, M)
                out.append(_check(f"convolution exponential k={k} m={m}", lhs, rhs))
    return out


def mecke(kmax: int, rng: random.Random) -> list:
    out = []
    for k in range(1, kmax + 1):
        sigma = [rand_q(rng, positive=True) for _ in range(k)]
        for name, F in (("1", rm.PolyFunctional.constant(k)), ("eta_x", rm.PolyFunctional.eta_at(k, 1)),
                        ("eta_x^2", rm.PolyFunctional.eta_at(k, 2))):
            lhs, rhs = rm.mecke_check(sigma, F, "exact")
            out.append(_check(f"mecke k={k} F={name}", lhs, rhs))
    return out


def identities(D: int = 8, seed: int = 0) -> list:
    rng = random.Random(seed)
    nmax = max(D, 1)
    checks = []
    checks += bell_identities(nmax, 1, rng)
    checks += bell_polynomial_identities(min(nmax, 8))
    checks += duality_roundtrip(nmax, 1, rng)
    checks += dirichlet_routes(3, min(nmax, 6), 1, rng)
    checks += polya_orbits(min(nmax, 5), 2)
    checks += polya_aggregation(min(nmax, 6), rng)
    checks += humbert_egf(min(nmax, 6), 2, rng)
    checks += asymptotics(2, 3, rng)
    checks += conv_exp(2, 4, 6, rng)
    checks += mecke(3, rng)
    return checks


# ---- Monte Carlo -----------------------------------------------------------

def _z_check(name: str, samples: np.ndarray, exact, tol: float) -> dict:
    est, se = rm.mc_mean(samples)
    z = abs(est - float(exact)) / se if se > 0 else (0.0 if est == float(exact) else math.inf)
    return {"name": name, "passed": bool(z < tol), "discrepancy": z}


def montecarlo(N: int = 200000, seed: int = 0, tol: float = 4.0,
               sigma=(Fraction(1, 2), Fraction(1), Fraction(2)),
               f=(Fraction(1), Fraction(-1, 2), Fraction(1, 3))) -> list:
    sigma = [Fraction(v) for v in sigma]
    f = [Fraction(v) for v in f]
    fv = np.array([float(v) for v in f])
    checks = []
    dir_x = dist.dirichlet_sample(sigma, seed, N) @ fv
    gam = rm.sample_measure("gamma", sigma, seed, N).samples
    poi = rm.sample_measure("poisson", sigma, seed, N).samples
    gam_f, poi_f = gam @ fv, poi @ fv
    for n in range(1, 5):
        checks.append(_z_check(f"dirichlet moment n={n}", dir_x ** n, dist.dirichlet_moment_cycleindex(sigma, f, n), tol))
        checks.append(_z_check(f"gamma measure moment n={n}", gam_f ** n, rm.gamma_measure_moment(sigma, f, n), tol))
        checks.append(_z_check(f"poisson measure moment n={n}", poi_f ** n, rm.poisson_measure_moment(sigma, f, n), tol))
    mass = gam.sum(axis=1)
    for n in range(1, 4):
        checks.append(_z_check(f"gamma total mass n={n}", mass ** n, pochhammer(sum(sigma), n), tol))
    rep = rm.decomposition_check(sigma, f, 2, seed, N, tol)
    checks.append({"name": "decomposition correlation", "passed": abs(rep["correlation"]) < rep["correlation_bound"],
                   "discrepancy": abs(rep["correlation"])})
    checks.append({"name": "decomposition joint moment", "passed": rep["joint_z"] < tol, "discrepancy": rep["joint_z"]})
    # Lukacs: Y + W independent of Y/(Y + W)
    rng = np.random.default_rng(seed + 1)
    y = rng.standard_gamma(float(sigma[0]), size=N)
    w = rng.standard_gamma(float(sigma[2]), size=N)
    corr = float(np.corrcoef(y + w, y / (y + w))[0, 1])
    checks.append({"name": "lukacs correlation", "passed": abs(corr) < tol / math.sqrt(N), "discrepancy": abs(corr)})
    lhs, rhs, se = rm.mecke_check(sigma, rm.PolyFunctional.eta_at(len(sigma), 1), "mc", seed, N)
    checks.append({"name": "mecke mc eta_x", "passed": abs(lhs - rhs) < tol * se, "discrepancy": abs(lhs - rhs) / se})
    return checks


# ---- Fock space --------------------------------------------------------------

def fock_suite(seed: int = 0, nmax: int = 6) -> list:
    rng = random.Random(seed)
    checks = []
    for k in (1, 2, 3):
        sigma = [rand_q(rng, positive=True) for _ in range(k)]
        phi = [rand_q(rng) for _ in range(k)]
        psi = [rand_q(rng) for _ in range(k)]
        for n in range(nmax + 1):
            general = fock.ext_inner_general(sigma, fock.SymTensor.coherent(phi, n), fock.SymTensor.coherent(psi, n))
            checks.append(_check(f"coherent inner k={k} n={n}", general, fock.ext_inner_coherent(sigma, phi, psi, n)))
            checks.append(_check(f"coherent inner = gamma moment k={k} n={n}", general,
                                 rm.gamma_measure_moment(sigma, [a * b for a, b in zip(phi, psi)], n)))
            lhs, rhs = fock.recursive_identity_check(sigma, phi, psi, n)
            checks.append(_check(f"recursive identity k={k} n={n}", lhs, rhs))
    # binomial-type splitting with cross-disjoint supports on [4]
    sigma = [rand_q(rng, positive=True) for _ in range(4)]
    phi1 = [rand_q(rng), rand_q(rng), 0, 0]
    psi1 = [rand_q(rng), 0, 0, 0]
    phi2 = [0, 0, rand_q(rng), 0]
    psi2 = [0, 0, rand_q(rng), rand_q(rng)]
    for n in range(nmax + 1):
        lhs, rhs = fock.binomial_identity_check(sigma, phi1, psi1, phi2, psi2, n)
        checks.append(_check(f"binomial splitting n={n}", lhs, rhs))
    # disjoint supports: only the all-singleton pattern survives, leaving the plain L^2 product
    sigma = [rand_q(rng, positive=True) for _ in range(4)]
    fs = [[rand_q(rng, positive=True) if x == i else 0 for x in range(4)] for i in range(3)]
    gs = [[rand_q(rng, positive=True) if x == i else 0 for x in range(4)] for i in range(3)]
    for n in range(1, 4):
        A, B = fock.SymTensor.sym_product(fs[:n]), fock.SymTensor.sym_product(gs[:n])
        plain = fock.plain_inner(sigma, A, B)
        checks.append(_check(f"fock embedding n={n}", fock.ext_inner_general(sigma, A, B), plain))
        checks.append(_flag(f"fock embedding nontrivial n={n}", plain != 0))
    # diagonal decomposition
    for k in (1, 2, 3, 4):
        rho = [rand_q(rng, positive=True) for _ in range(k)]
        for n in range(1, 6):
            vals = {key: rand_q(rng) for key in itertools.combinations_with_replacement(range(k), n)}
            phi_t = fock.SymTensor(k, n, vals)
            total, parts = fock.diagonal_decomposition(rho, phi_t)
            checks.append(_check(f"diagonal decomposition k={k} n={n}", total, sum(parts.values(), Fraction(0))))
    # MSI on disjoint product functions
    sigma = (Fraction(1, 2), Fraction(1), Fraction(3, 2))
    for n in range(1, 4):
        facs = [[Fraction(i + 2, 3) if x == i else 0 for x in range(3)] for i in range(n)]
        f = fock.DisjointProductFunction(sigma, facs)
        ok = True
        for counts in itertools.product(range(4), repeat=3):
            if fock.msi_compensated(f, counts) != fock.compensated_product(f, counts):
                ok = False
                break
        checks.append(_flag(f"msi product identity n={n}", ok))
        checks.append(_check(f"msi mean n={n}", fock.msi_orthogonality(sigma, f, fock.DisjointProductFunction(sigma, [])), 0))
    for n in range(1, 4):
        for m in range(1, 4):
            f = fock.DisjointProductFunction(sigma, [[Fraction(i + 1) if x == i else 0 for x in range(3)] for i in range(n)])
            g = fock.DisjointProductFunction(sigma, [[Fraction(i + 2) if x == i else 0 for x in range(3)] for i in range(m)])
            val = fock.msi_orthogonality(sigma, f, g)
            if n != m:
                checks.append(_check(f"msi orthogonality n={n} m={m}", val, 0))
            else:
                A = fock.SymTensor.sym_product(f.factors)
                B = fock.SymTensor.sym_product(g.factors)
                expect = math.factorial(n) * fock.plain_inner(sigma, A, B) * math.factorial(n) ** 2
                checks.append(_check(f"msi isometry n={n}", val, expect))
    return checks


# ---- Lie algebra ---------------------------------------------------------------

def liealg_suite(kmax: int = 3, D: int = 6, seed: int = 0) -> list:
    rng = random.Random(seed)
    checks = []
    for k in range(1, kmax + 1):
        for d in range(3):
            b = [rand_q(rng, positive=True) + Fraction(1, 11) for _ in range(k)]
            c = rand_q(rng, positive=True) + Fraction(1, 13)
            for lab in liealg.phi2_basis_labels(k):
                rep = liealg.verify_action("phi2", lab, {"b": b, "c": c}, D)
                checks.append({"name": f"action {lab} k={k} draw={d}", "passed": rep["passed"],
                               "discrepancy": rep.get("max_discrepancy", 1)})
            cb = sum(b)
            for i in range(1, k + 1):
                up = liealg.verify_action("phi2", ("Ep", i), {"b": b, "c": cb}, D)
                checks.append({"name": f"raising at c=|b| i={i} k={k} draw={d}", "passed": up["passed"],
                               "discrepancy": up["max_discrepancy"]})
                down = liealg.verify_action("phi2", ("Em", i), {"b": b, "c": cb}, D)
                checks.append({"name": f"lowering at c=|b| i={i} k={k} draw={d}", "passed": down["passed"],
                               "discrepancy": down["max_discrepancy"]})
        for desc, lhs, rhs in liealg.commutation_relations(k):
            ok = lhs == rhs and liealg.same_action(lhs, rhs, D)
            checks.append(_flag(f"relation k={k} {desc}", ok))
        for desc, lhs, rhs in liealg.corrected_relations(k):
            checks.append(_flag(f"relation (sign from actions) k={k} {desc}", lhs == rhs and liealg.same_action(lhs, rhs, D)))
        sc = liealg.structure_constants(k)
        checks.append(_flag(f"dimension k={k}", sc.dim == k * (k + 2), sc.dim))
        checks.append(_flag(f"antisymmetry k={k}", liealg.antisymmetry_ok(sc)))
        checks.append(_flag(f"jacobi k={k}", liealg.jacobi_defect(sc) == 0, liealg.jacobi_defect(sc)))
        det = liealg.killing_nondegeneracy(sc)
        checks.append({"name": f"killing determinant k={k}", "passed": det != 0, "discrepancy": det})
        checks.append(_flag(f"sl isomorphism k={k}", liealg.sl_isomorphism_check(sc, k)))
        for perm in itertools.permutations(range(1, k + 1)):
            rep = liealg.permutation_equivariance(k, perm, sc)
            checks.append(_flag(f"permutation equivariance k={k} perm={list(perm)}", rep["passed"]))
    for k in (1, 2):
        a = Fraction(3, 7)
        b = [Fraction(2, 7) + j for j in range(k)]
        c = Fraction(11, 5) + k
        for lab in [("Eb", i) for i in range(1, k + 1)] + [("Ec",)] + [("Eabc", i) for i in range(1, k + 1)] \
                + [("Ja",)] + [("Jb", i) for i in range(1, k + 1)] + [("Jc",)]:
            rep = liealg.verify_action("fd", lab, {"a": a, "b": b, "c": c}, 5)
            checks.append({"name": f"fd action {lab} k={k}", "passed": rep["passed"],
                           "discrepancy": rep["max_discrepancy"]})
    return checks


SUITES = ("identities", "montecarlo", "fock", "liealg")


def run_suite(name: str, D: int = 8, N: int = 200000, seed: int = 0, tol: float = 4.0, k: int = 3) -> list:
    if name == "identities":
        return identities(D, seed)
    if name == "montecarlo":
        return montecarlo(N, seed, tol)
    if name == "fock":
        return fock_suite(seed)
    if name == "liealg":
        return liealg_suite(k, 6 if D is None else D, seed)
    raise ValueError(f"unknown suite {name!r}")

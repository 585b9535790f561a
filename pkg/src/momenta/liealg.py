"""Raising/lowering operators on hypergeometric basis functions.

A basis function is f = body(x) * u^beta * t^gamma (and s^a for the F_D
family).  The bookkeeping variables are never evaluated: a function is a
truncated x-series together with its exact weight vector w.

An operator is a finite sum of normal-ordered terms

    c * w^e * x^a d_x^d, followed by the weight shift w -> w + s,

where w^e reads the weight of the input.  Keys are (s, a, d, e).  Because
x^a d^d w^e is a basis of the (weight-extended) Weyl algebra, two operators
are equal iff their normal forms coincide.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .combinatorics import multi_indices_upto, pochhammer
from .distributions import humbert_phi2, lauricella_fd
from .errors import DomainError, PoleError, VerificationError


def _add(u, v):
    return tuple(x + y for x, y in zip(u, v))


def _unit(n, i, v=1):
    return tuple(v if j == i else 0 for j in range(n))


def _falling(m: int, j: int) -> int:
    out = 1
    for i in range(j):
        out *= m - i
    return out


@dataclass(frozen=True)
class Layout:
    """Which weight slots exist: k u-variables plus gamma, optionally a leading a."""

    k: int
    with_a: bool = False

    @property
    def W(self) -> int:
        return self.k + 1 + int(self.with_a)

    def beta(self, i: int) -> int:
        """Slot of beta_i (1-based i)."""
        return i - 1 + int(self.with_a)

    @property
    def gamma(self) -> int:
        return self.W - 1

    @property
    def a(self) -> int:
        if not self.with_a:
            raise DomainError("layout has no a slot")
        return 0


class LieOperator:
    """Normal-ordered differential operator with weight shifts."""

    def __init__(self, layout: Layout, terms: dict | None = None):
        self.layout = layout
        self.terms = {}
        for key, c in (terms or {}).items():
            c = Fraction(c)
            if c:
                self.terms[key] = self.terms.get(key, 0) + c
        self.terms = {key: c for key, c in self.terms.items() if c}

    @classmethod
    def term(cls, layout: Layout, c=1, shift=None, a=None, d=None, e=None) -> "LieOperator":
        k, W = layout.k, layout.W
        key = (tuple(shift or (0,) * W), tuple(a or (0,) * k), tuple(d or (0,) * k), tuple(e or (0,) * W))
        return cls(layout, {key: c})

    def __add__(self, other: "LieOperator") -> "LieOperator":
        out = dict(self.terms)
        for key, c in other.terms.items():
            out[key] = out.get(key, 0) + c
        return LieOperator(self.layout, out)

    def __neg__(self):
        return LieOperator(self.layout, {key: -c for key, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, c):
        c = Fraction(c)
        return LieOperator(self.layout, {key: v * c for key, v in self.terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, LieOperator) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self) -> bool:
        return not self.terms

    def shifts(self) -> set:
        return {key[0] for key in self.terms}

    def compose(self, other: "LieOperator") -> "LieOperator":
        """self after other."""
        out = {}
        for (sA, aA, dA, eA), cA in self.terms.items():
            for (sB, aB, dB, eB), cB in other.terms.items():
                shift = _add(sA, sB)
                # (w + sB)^eA expanded in powers of w
                wpoly = {(0,) * len(eA): Fraction(1)}
                for slot, ex in enumerate(eA):
                    if not ex:
                        continue
                    new = {}
                    for p in range(ex + 1):
                        coef = math.comb(ex, p) * Fraction(sB[slot]) ** (ex - p)
                        if not coef:
                            continue
                        for e, c in wpoly.items():
                            e2 = list(e)
                            e2[slot] += p
                            e2 = tuple(e2)
                            new[e2] = new.get(e2, 0) + c * coef
                    wpoly = new
                # d^dA x^aB = sum_j C(dA, j) falling(aB, j) x^(aB - j) d^(dA - j)
                ranges = [range(min(x, y) + 1) for x, y in zip(dA, aB)]
                for j in itertools.product(*ranges):
                    wcoef = 1
                    for di, ai, ji in zip(dA, aB, j):
                        wcoef *= math.comb(di, ji) * _falling(ai, ji)
                    a = tuple(x + y - z for x, y, z in zip(aA, aB, j))
                    d = tuple(x - z + y for x, z, y in zip(dA, j, dB))
                    for e, c in wpoly.items():
                        key = (shift, a, d, _add(e, eB))
                        out[key] = out.get(key, 0) + cA * cB * c * wcoef
        return LieOperator(self.layout, out)

    def permuted(self, perm: Sequence[int]) -> "LieOperator":
        """Relabel variable i -> perm[i-1] (1-based) in x, beta slots."""
        lay = self.layout
        k = lay.k

        def pk(t):
            out = [0] * k
            for i in range(k):
                out[perm[i] - 1] = t[i]
            return tuple(out)

        def pw(t):
            out = list(t)
            for i in range(1, k + 1):
                out[lay.beta(perm[i - 1])] = t[lay.beta(i)]
            return tuple(out)

        return LieOperator(lay, {(pw(s), pk(a), pk(d), pw(e)): c for (s, a, d, e), c in self.terms.items()})

    def __repr__(self):
        return f"LieOperator({len(self.terms)} terms)"


def commutator(A: LieOperator, B: LieOperator) -> LieOperator:
    return A.compose(B) - B.compose(A)


@dataclass
class WeightedSeries:
    """Truncated x-series with exact weight; coefficients valid up to degree D."""

    weight: tuple
    body: dict
    D: int
    k: int = field(default=0)

    def scaled(self, c) -> "WeightedSeries":
        c = Fraction(c)
        return WeightedSeries(self.weight, {m: v * c for m, v in self.body.items() if v * c}, self.D, self.k)


def _weight_value(w: tuple, e: tuple) -> Fraction:
    out = Fraction(1)
    for wi, ei in zip(w, e):
        if ei:
            out *= wi ** ei
    return out


def apply(op: LieOperator, f: WeightedSeries):
    """Apply op to f.  Returns a WeightedSeries, or a dict weight -> WeightedSeries
    when the result spreads over several weights.  Output coefficients are kept
    only up to the guaranteed degree."""
    lay = op.layout
    if len(f.weight) != lay.W:
        raise DomainError("weight length does not match operator layout")
    loss = max((sum(d) - sum(a) for (_, a, d, _) in op.terms), default=0)
    valid = f.D - max(loss, 0)
    out = {}
    for (s, a, d, e), c in op.terms.items():
        scal = c * _weight_value(f.weight, e)
        if not scal:
            continue
        target = _add(f.weight, s)
        body = out.setdefault(target, {})
        for m, v in f.body.items():
            coef = scal * v
            for mi, di in zip(m, d):
                coef *= _falling(mi, di)
            if not coef:
                continue
            m2 = tuple(mi - di + ai for mi, di, ai in zip(m, d, a))
            if sum(m2) > valid:
                continue
            body[m2] = body.get(m2, 0) + coef
    series = {
        w: WeightedSeries(w, {m: v for m, v in b.items() if v}, valid, f.k)
        for w, b in out.items()
    }
    if len(series) == 1:
        return next(iter(series.values()))
    if not series:
        return WeightedSeries(f.weight, {}, valid, f.k)
    return series


def apply_symbolic(op: LieOperator, m: Sequence[int]) -> dict:
    """Action on the monomial x^m with symbolic weight: (shift, exponent) -> {w-exponent: coef}."""
    out = {}
    for (s, a, d, e), c in op.terms.items():
        coef = c
        for mi, di in zip(m, d):
            coef *= _falling(mi, di)
        if not coef:
            continue
        m2 = tuple(mi - di + ai for mi, di, ai in zip(m, d, a))
        slot = out.setdefault((s, m2), {})
        slot[e] = slot.get(e, 0) + coef
    return {key: {e: c for e, c in v.items() if c} for key, v in out.items() if any(v.values())}


def same_action(A: LieOperator, B: LieOperator, D: int) -> bool:
    """A and B agree on every x-monomial of degree <= D, with symbolic weights."""
    for m in multi_indices_upto(A.layout.k, D):
        if apply_symbolic(A, m) != apply_symbolic(B, m):
            return False
    return True


# ---- operator families --------------------------------------------------

def phi2_operator(k: int, label: tuple) -> LieOperator:
    """Operators on f_{b,c} = Phi2[b; c; x] u^b t^c.  Labels (1-based):
    ("J", i), ("E", i, j) with i != j, ("Ep", i), ("Em", i)."""
    lay = Layout(k)
    T = lambda **kw: LieOperator.term(lay, **kw)
    W = lay.W
    kind = label[0]
    if kind == "J":
        i = label[1]
        return T(e=_unit(W, lay.gamma)) + T(e=_unit(W, lay.beta(i))) + T(c=-1)
    if kind == "E":
        i, j = label[1], label[2]
        if i == j:
            raise DomainError("E needs i != j")
        shift = _add(_unit(W, lay.beta(i)), _unit(W, lay.beta(j), -1))
        return (T(shift=shift, a=_unit(k, i - 1), d=_unit(k, i - 1))
                + T(c=-1, shift=shift, a=_unit(k, j - 1), d=_unit(k, i - 1))
                + T(shift=shift, e=_unit(W, lay.beta(i))))
    if kind == "Ep":
        i = label[1]
        shift = _add(_unit(W, lay.beta(i)), _unit(W, lay.gamma))
        op = T(shift=shift, a=_unit(k, i - 1), d=_unit(k, i - 1)) + T(shift=shift, e=_unit(W, lay.beta(i)))
        for l in range(k):
            op = op + T(c=-1, shift=shift, a=_unit(k, l), d=_add(_unit(k, l), _unit(k, i - 1)))
        return op
    if kind == "Em":
        i = label[1]
        shift = _add(_unit(W, lay.beta(i), -1), _unit(W, lay.gamma, -1))
        op = T(shift=shift, a=_unit(k, i - 1)) + T(c=-1, shift=shift, e=_unit(W, lay.gamma)) + T(shift=shift)
        for l in range(k):
            op = op + T(c=-1, shift=shift, a=_unit(k, l), d=_unit(k, l))
        return op
    raise DomainError(f"unknown label {label!r}")


def fd_operator(k: int, label: tuple) -> LieOperator:
    """Weight-homogeneous operators on f_{a,b,c} = B(a, c-a) F_D[a; b; c; x] s^a u^b t^c.
    Labels: ("Eb", i), ("Ec",), ("Eabc", i), ("Ja",), ("Jb", i), ("Jc",)."""
    lay = Layout(k, with_a=True)
    T = lambda **kw: LieOperator.term(lay, **kw)
    W = lay.W
    beta_all = [lay.beta(i) for i in range(1, k + 1)]
    kind = label[0]
    if kind == "Eb":
        i = label[1]
        shift = _unit(W, lay.beta(i))
        return T(shift=shift, a=_unit(k, i - 1), d=_unit(k, i - 1)) + T(shift=shift, e=_unit(W, lay.beta(i)))
    if kind == "Ec":
        shift = _unit(W, lay.gamma)
        op = T(shift=shift, e=_unit(W, lay.gamma)) + T(c=-1, shift=shift, e=_unit(W, lay.a))
        for l in range(k):
            op = op + T(shift=shift, d=_unit(k, l)) + T(c=-1, shift=shift, a=_unit(k, l), d=_unit(k, l))
            op = op + T(c=-1, shift=shift, e=_unit(W, beta_all[l]))
        return op
    if kind == "Eabc":
        i = label[1]
        shift = _add(_add(_unit(W, lay.a), _unit(W, lay.beta(i))), _unit(W, lay.gamma))
        return T(shift=shift, d=_unit(k, i - 1))
    if kind == "Ja":
        return T(c=2, e=_unit(W, lay.a)) + T(c=-1, e=_unit(W, lay.gamma))
    if kind == "Jb":
        i = label[1]
        op = T(e=_unit(W, lay.beta(i))) + T(c=-1, e=_unit(W, lay.gamma))
        for s in beta_all:
            op = op + T(e=_unit(W, s))
        return op
    if kind == "Jc":
        op = T(c=2, e=_unit(W, lay.gamma)) + T(c=-1, e=_unit(W, lay.a)) + T(c=-1)
        for s in beta_all:
            op = op + T(c=-1, e=_unit(W, s))
        return op
    raise DomainError(f"unknown label {label!r}")


# ---- basis functions and stated actions --------------------------------

def build_basis_series(family: str, params: dict, D: int) -> WeightedSeries:
    """phi2: params {"b", "c"}; fd: params {"a", "b", "c"} (the Beta factor is implicit)."""
    b = [Fraction(v) for v in params["b"]]
    c = Fraction(params["c"])
    if family == "phi2":
        body = humbert_phi2(b, c, D).terms
        return WeightedSeries(tuple(b) + (c,), dict(body), D, len(b))
    if family == "fd":
        a = Fraction(params["a"])
        body = lauricella_fd(a, b, c, D).terms
        return WeightedSeries((a,) + tuple(b) + (c,), dict(body), D, len(b))
    raise DomainError(f"unknown family {family!r}")


def gamma_ratio(x, p: int) -> Fraction:
    """Gamma(x + p)/Gamma(x) for integer p."""
    x = Fraction(x)
    if p >= 0:
        return pochhammer(x, p)
    den = pochhammer(x + p, -p)
    if den == 0:
        raise PoleError("Gamma ratio hits a pole")
    return 1 / den


def beta_ratio(a, c, da: int, dc: int) -> Fraction:
    """B(a + da, c + dc - a - da) / B(a, c - a)."""
    a, c = Fraction(a), Fraction(c)
    return gamma_ratio(a, da) * gamma_ratio(c - a, dc - da) / gamma_ratio(c, dc)


def stated_action(family: str, label: tuple, params: dict) -> tuple:
    """(scalar, target params) of the action claimed for a basis function."""
    b = [Fraction(v) for v in params["b"]]
    c = Fraction(params["c"])
    sb = sum(b)
    kind = label[0]
    if family == "phi2":
        if kind == "J":
            i = label[1]
            return c + b[i - 1] - 1, {"b": b, "c": c}
        if kind == "E":
            i, j = label[1], label[2]
            nb = list(b)
            nb[i - 1] += 1
            nb[j - 1] -= 1
            return b[i - 1], {"b": nb, "c": c}
        if kind == "Ep":
            i = label[1]
            nb = list(b)
            nb[i - 1] += 1
            return b[i - 1], {"b": nb, "c": c + 1}
        if kind == "Em":
            i = label[1]
            nb = list(b)
            nb[i - 1] -= 1
            return 1 - c, {"b": nb, "c": c - 1}
    if family == "fd":
        a = Fraction(params["a"])
        same = {"a": a, "b": b, "c": c}
        if kind == "Eb":
            i = label[1]
            nb = list(b)
            nb[i - 1] += 1
            return b[i - 1], {"a": a, "b": nb, "c": c}
        if kind == "Ec":
            return c - sb, {"a": a, "b": b, "c": c + 1}
        if kind == "Eabc":
            i = label[1]
            nb = list(b)
            nb[i - 1] += 1
            return b[i - 1], {"a": a + 1, "b": nb, "c": c + 1}
        if kind == "Ja":
            return 2 * a - c, same
        if kind == "Jb":
            return b[label[1] - 1] + sb - c, same
        if kind == "Jc":
            return 2 * c - a - sb - 1, same
    raise DomainError(f"no stated action for {family}/{label!r}")


def operator_for(family: str, k: int, label: tuple) -> LieOperator:
    if family == "phi2":
        return phi2_operator(k, label)
    if family == "fd":
        return fd_operator(k, label)
    raise DomainError(f"unknown family {family!r}")


def verify_action(family: str, label: tuple, params: dict, D: int) -> dict:
    """Compare op(f) with the stated multiple of the shifted basis function, coefficientwise."""
    k = len(params["b"])
    op = operator_for(family, k, label)
    f = build_basis_series(family, params, D)
    res = apply(op, f)
    if isinstance(res, dict):
        return {"label": list(label), "passed": False, "reason": "result spreads over several weights"}
    scalar, tparams = stated_action(family, label, params)
    target = build_basis_series(family, tparams, D)
    if family == "fd":
        da = int(tparams["a"] - Fraction(params["a"]))
        dc = int(tparams["c"] - Fraction(params["c"]))
        scalar = scalar * beta_ratio(params["a"], params["c"], da, dc)
    weight_ok = res.weight == target.weight or not res.body
    valid = res.D
    worst = Fraction(0)
    for m in multi_indices_upto(k, valid):
        diff = abs(res.body.get(m, Fraction(0)) - scalar * target.body.get(m, Fraction(0)))
        worst = max(worst, diff)
    return {
        "label": list(label),
        "weight_ok": bool(weight_ok),
        "valid_degree": valid,
        "max_discrepancy": worst,
        "passed": bool(weight_ok and worst == 0),
    }


# ---- the algebra spanned by the Phi2 operators ---------------------------

def phi2_basis_labels(k: int) -> list:
    labels = [("J", i) for i in range(1, k + 1)]
    labels += [("E", i, j) for i in range(1, k + 1) for j in range(1, k + 1) if i != j]
    labels += [("Ep", i) for i in range(1, k + 1)]
    labels += [("Em", i) for i in range(1, k + 1)]
    return labels


def _solve_exact(rows: list, rhs: list):
    """Solve A x = rhs (A given by rows, possibly overdetermined). None if inconsistent."""
    n = len(rows[0]) if rows else 0
    M = [list(r) + [v] for r, v in zip(rows, rhs)]
    piv_cols = []
    r = 0
    for col in range(n):
        piv = next((i for i in range(r, len(M)) if M[i][col] != 0), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = 1 / M[r][col]
        M[r] = [v * inv for v in M[r]]
        for i in range(len(M)):
            if i != r and M[i][col] != 0:
                f = M[i][col]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        piv_cols.append(col)
        r += 1
    if any(all(v == 0 for v in row[:-1]) and row[-1] != 0 for row in M):
        return None, r
    x = [Fraction(0)] * n
    for i, col in enumerate(piv_cols):
        x[col] = M[i][-1]
    return x, r


def determinant(M: list) -> Fraction:
    M = [[Fraction(v) for v in row] for row in M]
    n = len(M)
    det = Fraction(1)
    for col in range(n):
        piv = next((i for i in range(col, n) if M[i][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            M[col], M[piv] = M[piv], M[col]
            det = -det
        det *= M[col][col]
        for i in range(col + 1, n):
            f = M[i][col] / M[col][col]
            if f:
                M[i] = [a - f * b for a, b in zip(M[i], M[col])]
    return det


@dataclass
class StructureConstants:
    labels: list
    table: dict  # (a, b) -> list of coefficients over labels

    @property
    def dim(self) -> int:
        return len(self.labels)

    def bracket(self, x: Sequence, y: Sequence) -> list:
        """Bracket of two coordinate vectors."""
        out = [Fraction(0)] * self.dim
        for a, xa in enumerate(x):
            if not xa:
                continue
            for b, yb in enumerate(y):
                if not yb:
                    continue
                for g, c in enumerate(self.table[(a, b)]):
                    if c:
                        out[g] += xa * yb * c
        return out


def expand_in_basis(op: LieOperator, basis: list):
    keys = sorted({key for b in basis for key in b.terms} | set(op.terms))
    rows = [[b.terms.get(key, Fraction(0)) for b in basis] for key in keys]
    rhs = [op.terms.get(key, Fraction(0)) for key in keys]
    return _solve_exact(rows, rhs)


def structure_constants(k: int, ops: dict | None = None, labels: list | None = None) -> StructureConstants:
    """Bracket table of the Phi2 operator basis (or of a supplied family)."""
    labels = labels or phi2_basis_labels(k)
    ops = ops or {lab: phi2_operator(k, lab) for lab in labels}
    basis = [ops[lab] for lab in labels]
    # linear independence
    zero_sol, rank = expand_in_basis(LieOperator(basis[0].layout), basis)
    if rank != len(basis):
        raise VerificationError(f"basis operators are linearly dependent (rank {rank} < {len(basis)})")
    table = {}
    for a, A in enumerate(basis):
        for b, B in enumerate(basis):
            if b < a:
                table[(a, b)] = [-v for v in table[(b, a)]]
                continue
            coeffs, _ = expand_in_basis(commutator(A, B), basis)
            if coeffs is None:
                raise VerificationError(f"bracket [{labels[a]}, {labels[b]}] leaves the span")
            table[(a, b)] = coeffs
    return StructureConstants(list(labels), table)


def jacobi_defect(sc: StructureConstants) -> int:
    """Number of basis triples violating the Jacobi identity."""
    n = sc.dim
    e = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    bad = 0
    for a, b, c in itertools.combinations(range(n), 3):
        t1 = sc.bracket(sc.bracket(e[a], e[b]), e[c])
        t2 = sc.bracket(sc.bracket(e[b], e[c]), e[a])
        t3 = sc.bracket(sc.bracket(e[c], e[a]), e[b])
        if any(x + y + z for x, y, z in zip(t1, t2, t3)):
            bad += 1
    return bad


def antisymmetry_ok(sc: StructureConstants) -> bool:
    return all(sc.table[(a, b)] == [-v for v in sc.table[(b, a)]] for a in range(sc.dim) for b in range(sc.dim))


def killing_matrix(sc: StructureConstants) -> list:
    n = sc.dim
    ad = [[[sc.table[(a, b)][g] for b in range(n)] for g in range(n)] for a in range(n)]
    K = [[Fraction(0)] * n for _ in range(n)]
    for a in range(n):
        for b in range(n):
            K[a][b] = sum((ad[a][g][h] * ad[b][h][g] for g in range(n) for h in range(n)), Fraction(0))
    return K


def killing_nondegeneracy(sc: StructureConstants) -> Fraction:
    """Determinant of the Killing form."""
    return determinant(killing_matrix(sc))


def commutation_relations(k: int) -> list:
    """The stated relations as (description, lhs operator, rhs operator)."""
    op = lambda lab: phi2_operator(k, lab)
    rels = []
    for i in range(1, k + 1):
        Jp, Jm, J0 = op(("Ep", i)), op(("Em", i)), op(("J", i))
        rels.append((f"[E_b{i},c , E_-b{i},-c] = J_b{i},c", commutator(Jp, Jm), J0))
        rels.append((f"[J_b{i},c , E_b{i},c] = 2 E_b{i},c", commutator(J0, Jp), 2 * Jp))
        rels.append((f"[J_b{i},c , E_-b{i},-c] = -2 E_-b{i},-c", commutator(J0, Jm), -2 * Jm))
    for i, j in itertools.permutations(range(1, k + 1), 2):
        Jp, Jm = op(("E", i, j)), op(("E", j, i))
        J0 = op(("J", i)) - op(("J", j))
        if i < j:
            rels.append((f"[E_b{i},-b{j} , E_b{j},-b{i}] = J_b{i},c - J_b{j},c", commutator(Jp, Jm), J0))
            rels.append((f"[J_b{i},c - J_b{j},c , E_b{i},-b{j}] = 2 E_b{i},-b{j}", commutator(J0, Jp), 2 * Jp))
            rels.append((f"[J_b{i},c - J_b{j},c , E_b{j},-b{i}] = -2 E_b{j},-b{i}", commutator(J0, Jm), -2 * Jm))
        rels.append((f"[E_b{i},-b{j} , E_-b{i},-c] = E_-b{j},-c", commutator(Jp, op(("Em", i))), op(("Em", j))))
        rels.append((f"[E_b{j},-b{i} , E_b{i},c] = E_b{j},c", commutator(Jm, op(("Ep", i))), op(("Ep", j))))
    return rels


def corrected_relations(k: int) -> list:
    """Upper-sign mixed relation with the sign forced by the basis actions:
    [E_bi,-bj , E_-bi,-c] = -E_-bj,-c."""
    op = lambda lab: phi2_operator(k, lab)
    return [
        (f"[E_b{i},-b{j} , E_-b{i},-c] = -E_-b{j},-c", commutator(op(("E", i, j)), op(("Em", i))), -op(("Em", j)))
        for i, j in itertools.permutations(range(1, k + 1), 2)
    ]


def sl_matrix_image(k: int, label: tuple) -> list:
    """Image in sl_{k+1}: J_i -> E_00 - E_ii, Ep_i -> E_0i, Em_i -> E_i0, E_(i,j) -> -E_ji."""
    n = k + 1
    M = [[Fraction(0)] * n for _ in range(n)]
    kind = label[0]
    if kind == "J":
        M[0][0] = Fraction(1)
        M[label[1]][label[1]] = Fraction(-1)
    elif kind == "Ep":
        M[0][label[1]] = Fraction(1)
    elif kind == "Em":
        M[label[1]][0] = Fraction(1)
    elif kind == "E":
        M[label[2]][label[1]] = Fraction(-1)
    return M


def _matmul(A, B):
    n = len(A)
    return [[sum((A[i][l] * B[l][j] for l in range(n)), Fraction(0)) for j in range(n)] for i in range(n)]


def sl_isomorphism_check(sc: StructureConstants, k: int) -> bool:
    """The explicit matrix images satisfy the same bracket table."""
    imgs = [sl_matrix_image(k, lab) for lab in sc.labels]
    for (a, b), coeffs in sc.table.items():
        A, B = imgs[a], imgs[b]
        AB, BA = _matmul(A, B), _matmul(B, A)
        lhs = [[x - y for x, y in zip(r1, r2)] for r1, r2 in zip(AB, BA)]
        rhs = [[sum((c * imgs[g][i][j] for g, c in enumerate(coeffs)), Fraction(0)) for j in range(k + 1)]
               for i in range(k + 1)]
        if lhs != rhs:
            return False
    return True


def _permute_label(label: tuple, perm: Sequence[int]) -> tuple:
    return (label[0],) + tuple(perm[i - 1] for i in label[1:])


def permutation_equivariance(k: int, perm: Sequence[int], sc: StructureConstants | None = None) -> dict:
    """Relabel variables by perm; operators and bracket table must be permuted consistently."""
    perm = list(perm)
    if sorted(perm) != list(range(1, k + 1)):
        raise DomainError("not a permutation of 1..k")
    sc = sc or structure_constants(k)
    labels = sc.labels
    index = {lab: n for n, lab in enumerate(labels)}
    ops_ok = all(
        phi2_operator(k, lab).permuted(perm) == phi2_operator(k, _permute_label(lab, perm)) for lab in labels
    )
    pi = [index[_permute_label(lab, perm)] for lab in labels]
    table_ok = True
    for (a, b), coeffs in sc.table.items():
        target = sc.table[(pi[a], pi[b])]
        moved = [Fraction(0)] * sc.dim
        for g, c in enumerate(coeffs):
            moved[pi[g]] = c
        if moved != target:
            table_ok = False
            break
    # Cartan images diag(1, 0.., -1 at i, ..0) are permuted along with the labels
    diag_ok = all(
        sl_matrix_image(k, ("J", perm[i - 1]))[perm[i - 1]][perm[i - 1]] == -1 for i in range(1, k + 1)
    )
    return {"perm": perm, "operators_ok": ops_ok, "table_ok": table_ok, "cartan_ok": diag_ok,
            "passed": bool(ops_ok and table_ok and diag_ok)}

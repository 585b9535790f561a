"""`momenta <group> <subcommand> [flags]`: JSON in, JSON out.

Exit codes: 0 ok, 1 domain error, 2 usage error, 3 verification failure.
Config precedence: flags > MOMENTA_* environment variables > config file > defaults.
"""

from __future__ import annotations

import json
import math
import os
import sys
from fractions import Fraction

import click

from . import bellpoly as bp
from . import combinatorics as comb
from . import distributions as dist
from . import fock
from . import liealg
from . import momcum
from . import random_measures as rm
from . import verify as vf
from .errors import DomainError, VerificationError

DEFAULTS = {"D": 8, "N": 200000, "seed": 0, "tol": 4.0, "format": "json"}
_CASTS = {"D": int, "N": int, "seed": int, "tol": float, "format": str}


# ---- config ----------------------------------------------------------------

def _read_config_file(path):
    if not path:
        return {}
    try:
        with open(path) as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise click.UsageError(f"cannot read config file {path}: {exc}")
    if not isinstance(data, dict):
        raise click.UsageError("config file must hold a JSON object")
    unknown = set(data) - set(DEFAULTS)
    if unknown:
        raise click.UsageError(f"unknown config keys: {', '.join(sorted(unknown))}")
    return data


def resolve_config(config_path=None, **flags) -> dict:
    """Merge defaults, file, environment and flags, in increasing priority."""
    cfg = dict(DEFAULTS)
    cfg.update(_read_config_file(config_path or os.environ.get("MOMENTA_CONFIG")))
    for key in DEFAULTS:
        env = os.environ.get(f"MOMENTA_{key.upper()}")
        if env is not None:
            cfg[key] = env
    for key, val in flags.items():
        if val is not None:
            cfg[key] = val
    try:
        cfg = {key: _CASTS[key](val) for key, val in cfg.items()}
    except (TypeError, ValueError) as exc:
        raise click.UsageError(f"bad config value: {exc}")
    if cfg["D"] < 0 or cfg["N"] < 1:
        raise click.UsageError("need D >= 0 and N >= 1")
    if cfg["format"] not in ("json", "table"):
        raise click.UsageError("format must be json or table")
    return cfg


# ---- serialization -------------------------------------------------------------

def to_plain(obj):
    """Recursively convert results into JSON-ready values; rationals become "p/q"."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, int):
        return obj
    if isinstance(obj, float):
        return _Float(obj)
    if isinstance(obj, comb.IntPartition):
        return [int(v) for v in obj.freq]
    if isinstance(obj, comb.SetPartition):
        return [list(b) for b in obj.blocks]
    if isinstance(obj, dict):
        return {str(k): to_plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_plain(v) for v in obj]
    raise TypeError(f"cannot serialize {type(obj).__name__}")


class _Float(float):
    pass


def _dump(obj) -> str:
    if isinstance(obj, _Float):
        if math.isfinite(obj):
            return format(float(obj), ".17g")
        return json.dumps(str(float(obj)))
    if isinstance(obj, dict):
        return "{" + ",".join(json.dumps(k) + ":" + _dump(v) for k, v in obj.items()) + "}"
    if isinstance(obj, list):
        return "[" + ",".join(_dump(v) for v in obj) + "]"
    return json.dumps(obj)


def _table(obj, prefix="") -> list:
    lines = []
    if isinstance(obj, dict):
        for k, v in obj.items():
            lines += _table(v, f"{prefix}{k}." if isinstance(v, (dict, list)) else f"{prefix}{k}")
        return lines
    if isinstance(obj, list) and any(isinstance(v, (dict, list)) for v in obj):
        for i, v in enumerate(obj):
            lines += _table(v, f"{prefix}{i}" + ("." if isinstance(v, (dict, list)) else ""))
        return lines
    if isinstance(obj, list):
        return [f"{prefix.rstrip('.')}\t" + " ".join(_dump(v).strip('"') for v in obj)]
    return [f"{prefix}\t{_dump(obj).strip(chr(34))}"]


def emit(result, fmt: str = "json") -> None:
    plain = to_plain(result)
    if fmt == "table":
        click.echo("\n".join(_table(plain)))
    else:
        click.echo(_dump(plain))


# ---- argument parsing -----------------------------------------------------------

def parse_q(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise click.BadParameter(f"not a rational number: {text!r}")


def parse_qlist(text) -> list:
    if text is None:
        return None
    text = text.strip()
    if not text:
        return []
    return [parse_q(t) for t in text.split(",")]


def _read_stdin_json(path):
    try:
        if path and path != "-":
            with open(path) as fh:
                return json.load(fh)
        return json.load(sys.stdin)
    except (OSError, json.JSONDecodeError) as exc:
        raise click.UsageError(f"cannot read JSON input: {exc}")


def _cfg(ctx, **flags) -> dict:
    return resolve_config(ctx.obj.get("config_path"), format=ctx.obj.get("format"), **flags)


# ---- root --------------------------------------------------------------------------

@click.group()
@click.option("--config", "config_path", type=click.Path(dir_okay=False), default=None,
              help="JSON config file with keys D, N, seed, tol, format.")
@click.option("--format", "fmt", type=click.Choice(["json", "table"]), default=None, help="Output format.")
@click.version_option(package_name="artifact", prog_name="momenta")
@click.pass_context
def cli(ctx, config_path, fmt):
    """Exact moments, cumulants and random-measure identities."""
    ctx.ensure_object(dict)
    ctx.obj["config_path"] = config_path
    ctx.obj["format"] = fmt


# ---- combinatorics -------------------------------------------------------------------

@cli.group("combinatorics")
def combinatorics_group():
    """Partitions, Bell polynomials, cycle indices."""


@combinatorics_group.command("partitions")
@click.option("--n", "n", type=int, required=True)
@click.option("--r", "r", type=int, default=None, help="Restrict to r parts.")
@click.pass_context
def partitions_cmd(ctx, n, r):
    """Integer partitions of n as frequency vectors."""
    cfg = _cfg(ctx)
    parts = comb.integer_partitions(n, r)
    emit({"count": len(parts), "partitions": parts}, cfg["format"])


@combinatorics_group.command("set-partitions")
@click.option("--n", "n", type=int, required=True)
@click.pass_context
def set_partitions_cmd(ctx, n):
    """Set partitions of {1..n} in restricted-growth order."""
    cfg = _cfg(ctx)
    parts = comb.set_partitions(n)
    emit({"count": len(parts), "partitions": parts}, cfg["format"])


@combinatorics_group.command("bell")
@click.option("--n", "n", type=int, required=True)
@click.option("--r", "r", type=int, default=None, help="Partial Bell polynomial B_{n,r}.")
@click.option("--eval", "values", default=None, help="Comma-separated arguments x_1,...")
@click.pass_context
def bell_cmd(ctx, n, r, values):
    """Complete or partial Bell polynomial, symbolic or evaluated."""
    cfg = _cfg(ctx)
    poly = bp.bell_complete(n) if r is None else bp.bell_partial(n, r)
    if values is None:
        emit({"poly": poly.to_string()}, cfg["format"])
    else:
        emit({"value": Fraction(poly.evaluate(parse_qlist(values)))}, cfg["format"])


@combinatorics_group.command("cycle-index")
@click.option("--n", "n", type=int, required=True)
@click.option("--eval", "values", default=None)
@click.pass_context
def cycle_index_cmd(ctx, n, values):
    """Cycle index Z_n of the symmetric group."""
    cfg = _cfg(ctx)
    if n < 0:
        raise DomainError("n must be >= 0")
    poly = bp.cycle_index_sn(n) if n else bp.SparsePoly.const(1, 0)
    if values is None:
        emit({"poly": poly.to_string()}, cfg["format"])
    else:
        emit({"value": poly.evaluate(parse_qlist(values)) if n else Fraction(1)}, cfg["format"])


@combinatorics_group.command("pattern-inventory")
@click.option("--n", "n", type=int, required=True)
@click.option("--s", "s", required=True, help="Color weights s_1,...,s_k.")
@click.pass_context
def pattern_inventory_cmd(ctx, n, s):
    """Weighted count of n-multisets of colors (Polya inventory)."""
    cfg = _cfg(ctx)
    emit({"value": Fraction(bp.pattern_inventory(n, parse_qlist(s)))}, cfg["format"])


# ---- moments ---------------------------------------------------------------------------

KINDS = ("moments", "cumulants", "central")


@cli.group("moments")
def moments_group():
    """Moment/cumulant conversions and closed-form moments."""


@moments_group.command("convert")
@click.option("--from", "src", type=click.Choice(KINDS), required=True)
@click.option("--to", "dst", type=click.Choice(KINDS), required=True)
@click.option("--mean", "mean", default=None, help="Mean, needed to leave central moments.")
@click.argument("values")
@click.pass_context
def convert_cmd(ctx, src, dst, mean, values):
    """Convert a sequence indexed from 1 (raw moments, cumulants or central moments)."""
    cfg = _cfg(ctx)
    seq = parse_qlist(values)
    if src == "central":
        if mean is None:
            raise click.UsageError("--mean is required when converting from central moments")
        seq = momcum.central_to_raw(seq, parse_q(mean))
    elif src == "cumulants":
        seq = momcum.cumulants_to_moments(seq)
    if dst == "cumulants":
        seq = momcum.moments_to_cumulants(seq)
    elif dst == "central":
        seq = momcum.raw_to_central(seq)
    emit({"values": [Fraction(v) for v in seq]}, cfg["format"])


@moments_group.command("dirichlet")
@click.option("--alpha", required=True)
@click.option("--s", "s", required=True)
@click.option("--n", "n", type=int, required=True)
@click.pass_context
def dirichlet_cmd(ctx, alpha, s, n):
    """E[(s.X)^n] for X ~ Dir[alpha] by both formulas."""
    cfg = _cfg(ctx)
    a, w = parse_qlist(alpha), parse_qlist(s)
    emit({"multiindex": dist.dirichlet_moment_multiindex(a, w, n),
          "cycleindex": dist.dirichlet_moment_cycleindex(a, w, n)}, cfg["format"])


def _measure_cmd(name, fn, doc):
    @moments_group.command(name, help=doc)
    @click.option("--sigma", required=True, help="Atom masses of the base measure.")
    @click.option("--f", "f", required=True, help="Test function values at the atoms.")
    @click.option("--n", "n", type=int, required=True)
    @click.pass_context
    def cmd(ctx, sigma, f, n):
        cfg = _cfg(ctx)
        emit({"value": Fraction(fn(parse_qlist(sigma), parse_qlist(f), n))}, cfg["format"])
    return cmd


_measure_cmd("gamma-measure", rm.gamma_measure_moment, "E[G(f)^n] for the Gamma measure.")
_measure_cmd("poisson-measure", rm.poisson_measure_moment, "E[P(f)^n] for the Poisson measure.")
_measure_cmd("df", rm.df_moment, "E[D(f)^n] for the Dirichlet-Ferguson measure with intensity sigma.")


@moments_group.command("poisson")
@click.option("--c", "c", required=True)
@click.option("--n", "n", type=int, required=True)
@click.pass_context
def poisson_cmd(ctx, c, n):
    """n-th raw moment of Poi[c]."""
    cfg = _cfg(ctx)
    emit({"value": dist.poisson_moment(parse_q(c), n)}, cfg["format"])


@moments_group.command("gamma")
@click.option("--theta", required=True)
@click.option("--k", "k", default="1")
@click.option("--n", "n", type=int, required=True)
@click.pass_context
def gamma_cmd(ctx, theta, k, n):
    """n-th raw moment of Gam[theta, k]."""
    cfg = _cfg(ctx)
    emit({"value": dist.gamma_moment(parse_q(theta), parse_q(k), n)}, cfg["format"])


@moments_group.command("lauricella")
@click.option("--a", "a", required=True)
@click.option("--b", "b", required=True)
@click.option("--c", "c", required=True)
@click.option("--x", "x", required=True)
@click.option("--D", "degree", type=int, default=None)
@click.pass_context
def lauricella_cmd(ctx, a, b, c, x, degree):
    """Truncated F_D series value next to its integral representation."""
    cfg = _cfg(ctx, D=degree)
    av, bv, cv, xv = parse_q(a), parse_qlist(b), parse_q(c), parse_qlist(x)
    series = dist.lauricella_fd(av, bv, cv, cfg["D"])
    out = {"D": cfg["D"], "series": series.evaluate(xv)}
    if cv > av > 0 and all(abs(v) < 1 for v in xv):
        out["quadrature"] = dist.lauricella_fd_quadrature(av, bv, cv, xv)
    emit(out, cfg["format"])


# ---- fock ------------------------------------------------------------------------------

def _sym_tensor(obj, k) -> fock.SymTensor:
    """{"coherent": [...], "n": n} or {"n": n, "values": {"i,j,...": "p/q"}} with 0-based points."""
    if not isinstance(obj, dict) or "n" not in obj:
        raise click.UsageError("tensor must be an object with key 'n'")
    n = int(obj["n"])
    if "coherent" in obj:
        return fock.SymTensor.coherent([parse_q(str(v)) for v in obj["coherent"]], n)
    vals = {}
    for key, v in obj.get("values", {}).items():
        pts = tuple(sorted(int(t) for t in str(key).split(",") if t.strip()))
        if len(pts) != n or any(not 0 <= p < k for p in pts):
            raise DomainError(f"bad tensor key {key!r}")
        vals[pts] = parse_q(str(v))
    return fock.SymTensor(k, n, {p: v for p, v in vals.items() if v})


@cli.group("fock")
def fock_group():
    """Extended Fock inner products; tensors are read as JSON from stdin."""


@fock_group.command("inner")
@click.option("--input", "path", default="-", help="JSON file, '-' for stdin.")
@click.pass_context
def fock_inner_cmd(ctx, path):
    """Input {"sigma": [...], "phi": tensor, "psi": tensor}; reports extended and plain inner products."""
    cfg = _cfg(ctx)
    data = _read_stdin_json(path)
    try:
        sigma = [parse_q(str(v)) for v in data["sigma"]]
        phi, psi = _sym_tensor(data["phi"], len(sigma)), _sym_tensor(data["psi"], len(sigma))
    except (KeyError, TypeError) as exc:
        raise click.UsageError(f"malformed input: {exc}")
    emit({"extended": fock.ext_inner_general(sigma, phi, psi), "plain": fock.plain_inner(sigma, phi, psi)},
         cfg["format"])


@fock_group.command("diagonal")
@click.option("--input", "path", default="-")
@click.pass_context
def fock_diagonal_cmd(ctx, path):
    """Input {"rho": [...], "phi": tensor}; splits the integral by diagonal pattern."""
    cfg = _cfg(ctx)
    data = _read_stdin_json(path)
    try:
        rho = [parse_q(str(v)) for v in data["rho"]]
        phi = _sym_tensor(data["phi"], len(rho))
    except (KeyError, TypeError) as exc:
        raise click.UsageError(f"malformed input: {exc}")
    total, parts = fock.diagonal_decomposition(rho, phi)
    emit({"total": total, "terms": [{"partition": lam, "value": v} for lam, v in parts.items()]}, cfg["format"])


# ---- lie ---------------------------------------------------------------------------------

@cli.group("lie")
def lie_group():
    """Differential-operator algebra of the Humbert function."""


@lie_group.command("structure")
@click.option("--k", "k", type=int, default=2)
@click.pass_context
def lie_structure_cmd(ctx, k):
    """Basis labels, nonzero brackets and Killing-form determinant."""
    cfg = _cfg(ctx)
    if k < 1:
        raise DomainError("k must be >= 1")
    sc = liealg.structure_constants(k)
    name = lambda lab: lab[0] + "".join(str(i) for i in lab[1:])
    brackets = []
    for (a, b), coeffs in sorted(sc.table.items()):
        if a < b and any(coeffs):
            brackets.append({"x": name(sc.labels[a]), "y": name(sc.labels[b]),
                             "result": {name(sc.labels[g]): c for g, c in enumerate(coeffs) if c}})
    emit({"dim": sc.dim, "basis": [name(lab) for lab in sc.labels], "brackets": brackets,
          "killing_determinant": Fraction(liealg.killing_nondegeneracy(sc))}, cfg["format"])


# ---- verify --------------------------------------------------------------------------------

def _disc(d):
    return d if isinstance(d, float) else Fraction(d)


def _report(name, checks) -> dict:
    return {"suite": name, "passed": all(c["passed"] for c in checks),
            "n_checks": len(checks), "n_failed": sum(not c["passed"] for c in checks),
            "checks": [{"name": c["name"], "status": "pass" if c["passed"] else "fail",
                        "discrepancy": _disc(c["discrepancy"])} for c in checks]}


@cli.command("verify")
@click.argument("suite", type=click.Choice(vf.SUITES + ("all",)))
@click.option("--D", "degree", type=int, default=None, help="Truncation degree.")
@click.option("--N", "n_samples", type=int, default=None, help="Monte Carlo sample count.")
@click.option("--seed", type=int, default=None)
@click.option("--tol", type=float, default=None, help="Tolerance in standard errors.")
@click.option("--k", "k", type=int, default=3, help="Largest number of variables for the Lie suite.")
@click.pass_context
def verify_cmd(ctx, suite, degree, n_samples, seed, tol, k):
    """Run invariant suites; exit 3 if any check fails."""
    cfg = _cfg(ctx, D=degree, N=n_samples, seed=seed, tol=tol)
    names = vf.SUITES if suite == "all" else (suite,)
    reports = []
    for name in names:
        checks = vf.run_suite(name, D=cfg["D"], N=cfg["N"], seed=cfg["seed"], tol=cfg["tol"], k=k)
        reports.append(_report(name, checks))
    config = {key: cfg[key] for key in ("D", "N", "seed", "tol")}
    config["k"] = k
    out = {"config": config, "passed": all(r["passed"] for r in reports), "suites": reports}
    emit(out, cfg["format"])
    if not out["passed"]:
        raise VerificationError("some checks failed")


# ---- entry point ------------------------------------------------------------------------------

def main(argv=None) -> int:
    try:
        cli.main(args=argv, prog_name="momenta", standalone_mode=False)
    except click.exceptions.Exit as exc:
        return exc.exit_code
    except click.ClickException as exc:
        exc.show()
        return 2
    except click.exceptions.Abort:
        click.echo("aborted", err=True)
        return 2
    except VerificationError as exc:
        click.echo(f"verification failed: {exc}", err=True)
        return 3
    except DomainError as exc:
        click.echo(f"domain error: {exc}", err=True)
        return 1
    return 0

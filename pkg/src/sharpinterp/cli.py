"""Command line front end: ``sharpinterp <command> [options]``.

Exit codes: 0 success, 2 invalid input, 3 a checked inequality failed.
"""
from __future__ import annotations

import csv
import io
import json
import math
import sys
import time

import click
import numpy as np

from . import asympt, extremal, green, oracle
from .green import ProblemSpec
from .specfun import DomainError

EXIT_FAIL = 3
KIND_ALIASES = {
    "interval": "interval_dirichlet",
    "halfline": "halfline_dirichlet",
    "bessel": "halfline_bessel",
}


def _fmt(x):
    if isinstance(x, float):
        return "inf" if math.isinf(x) else f"{x:.17g}"
    return x


def _emit(rows, fmt, out, fields=None):
    """Write a list of dicts as CSV or JSON to ``out`` (a path) or stdout."""
    if fmt == "json":
        text = json.dumps(rows if len(rows) != 1 else rows[0], indent=2, default=float) + "\n"
    else:
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=fields or list(rows[0]), lineterminator="\n")
        w.writeheader()
        for r in rows:
            w.writerow({k: _fmt(v) for k, v in r.items()})
        text = buf.getvalue()
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        click.echo(text, nl=False)


def _spec_options(f):
    opts = [
        click.option("--kind", default=None, help="rn, torus, sphere2, sphere3, interval, halfline, bessel, interval4"),
        click.option("--n", "n", type=int, default=1, show_default=True),
        click.option("--l", "l", type=float, default=0.0, show_default=True),
        click.option("--m", "m", type=float, default=None, help="default: 1 (2 for sphere2)"),
        click.option("--L", "L", type=float, default=1.0, show_default=True, help="interval length"),
        click.option("--xi", type=float, default=None, help="point for the xi-dependent problems"),
        click.option("--sphere3", "shortcut", flag_value="sphere3"),
        click.option("--interval4", "shortcut", flag_value="interval4"),
        click.option("--bessel", "shortcut", flag_value="halfline_bessel"),
    ]
    for o in reversed(opts):
        f = o(f)
    return f


def _build_spec(kind, n, l, m, L, shortcut):
    kind = shortcut or kind
    if kind is None:
        raise click.UsageError("give --kind or one of --sphere3/--interval4/--bessel")
    kind = KIND_ALIASES.get(kind, kind)
    try:
        if kind == "sphere2":
            return ProblemSpec.sphere2(2.0 if m is None else m)
        if kind == "sphere3":
            return ProblemSpec.sphere3()
        if kind == "interval_dirichlet":
            return ProblemSpec.interval_dirichlet(L)
        if kind in ("halfline_dirichlet", "halfline_bessel", "interval4"):
            return getattr(ProblemSpec, kind)()
        return ProblemSpec(kind, n, float(l), 1.0 if m is None else float(m))
    except ValueError as e:  # DomainError included
        raise click.UsageError(str(e)) from None


def _format_option(f):
    f = click.option("--out", type=click.Path(dir_okay=False), default=None, help="write to file instead of stdout")(f)
    return click.option("--format", "fmt", type=click.Choice(["csv", "json"]), default="json", show_default=True)(f)


@click.group()
@click.version_option(package_name="artifact")
def main():
    """Sharp constants and correction terms in L-infinity interpolation inequalities."""


@main.command()
@_spec_options
@click.option("--tol", type=float, default=1e-10, show_default=True)
@_format_option
def constant(kind, n, l, m, L, xi, shortcut, tol, fmt, out):
    """Sharp constant K = S sup lam^theta G(lam) and where it is attained."""
    spec = _build_spec(kind, n, l, m, L, shortcut)
    if tol <= 0:
        raise click.UsageError("tol must be positive")
    try:
        sc = extremal.sharp_constant(spec, xi, tol)
    except DomainError as e:
        raise click.UsageError(str(e)) from None
    row = {
        "spec": spec.label(),
        "K": sc.K,
        "S": sc.S,
        "theta": sc.theta,
        "attained_at": "infinity" if sc.at_infinity else sc.attained_at,
        "sup_value": sc.sup_value,
        "limit": sc.limit,
        "xi": sc.xi,
    }
    if spec.kind == "interval4":
        row["factor_over_line"] = sc.K / oracle.C_T1M2
    if spec.kind == "halfline_bessel":
        row["r_star"] = math.sqrt(sc.attained_at) * sc.xi
    _emit([row], fmt, out)


@main.command()
@_spec_options
@click.option("--dmin", type=float, default=None, help="default: max(lambda0, 1)")
@click.option("--dmax", type=float, default=1e6, show_default=True)
@click.option("--points", type=int, default=256, show_default=True)
@click.option("--linear", is_flag=True, help="linear instead of log-spaced grid")
@click.option("--tol", type=float, default=1e-10, show_default=True)
@click.option("--out", type=click.Path(dir_okay=False), default=None)
@click.option("--format", "fmt", type=click.Choice(["csv", "json"]), default="csv", show_default=True)
def vcurve(kind, n, l, m, L, xi, shortcut, dmin, dmax, points, linear, tol, out, fmt):
    """V(D) on a grid with the expansion, the known bound and the margin."""
    spec = _build_spec(kind, n, l, m, L, shortcut)
    lo = max(spec.lambda0, 1.0) if dmin is None else dmin
    if not (lo < dmax and points >= 2 and tol > 0):
        raise click.UsageError("need dmin < dmax, points >= 2 and tol > 0")
    if lo < spec.lambda0:
        raise click.UsageError(f"dmin must be >= lambda0 = {spec.lambda0:g}")
    Ds = np.linspace(lo, dmax, points) if linear else np.geomspace(lo, dmax, points)
    pts = extremal.v_curve(spec, Ds, xi, min(tol, 1e-12))
    try:
        three = asympt.v_three_term(asympt.coeffs_for(spec), Ds)
    except (asympt.UnsupportedSpec, DomainError):
        three = np.full(Ds.shape, math.nan)
    bound, label = extremal.corrected_bound(spec, Ds, xi)
    rows = []
    for p, t, b in zip(pts, np.broadcast_to(three, Ds.shape), bound):
        rows.append({"D": p.D, "lambda_star": p.lambda_star, "V": p.V, "V_three_term": float(t), "bound": float(b), "margin": float(b - p.V)})
    _emit(rows, fmt, out)
    worst = min(r["margin"] for r in rows)
    click.echo(f"# bound: {label}; min margin {worst:.3e}", err=True)
    if worst < -tol:
        sys.exit(EXIT_FAIL)


@main.command()
@_format_option
def beta(fmt, out):
    """beta_2 (closed form) and beta_3 (lattice sum), each with an independent fit."""
    b2 = green.beta2_constant()
    lam = 100.0
    g2 = green.green_torus_series(2, 1, 2, lam).value
    fit2 = 4.0 * math.pi ** 2 * lam * g2 - math.pi * math.log(lam) - 1.0 / lam
    t = time.perf_counter()
    b3 = green.beta3_constant()
    elapsed = time.perf_counter() - t
    lam = 1e4
    g3 = green.green_torus_series(3, 1, 2, lam).value
    fit3 = 8.0 * math.pi ** 3 * lam * g3 - 2.0 * math.pi ** 2 * math.sqrt(lam) - 1.0 / lam

    def digits(a, b):
        d = abs(a - b)
        return 17 if d == 0 else int(math.floor(-math.log10(d / abs(a))))

    rows = [
        {"name": "beta2", "value": b2, "check": fit2, "agreeing_digits": digits(b2, fit2)},
        {"name": "beta3", "value": b3, "check": fit3, "agreeing_digits": digits(b3, fit3), "seconds": elapsed},
    ]
    _emit(rows, fmt, out, fields=["name", "value", "check", "agreeing_digits", "seconds"])


_VERIFY_N = {1: 8, 2: 4, 3: 2}


@main.command()
@click.option("--ineq", type=click.Choice(["t1m1", "t1m2", "t2m2", "t3l1m2", "carlson", "all"]), default="all", show_default=True)
@click.option("--count", type=int, default=1000, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@_format_option
def verify(ineq, count, seed, fmt, out):
    """Monte-Carlo check of the torus and Carlson inequalities; reports minimum margins."""
    if count < 1:
        raise click.UsageError("count must be >= 1")
    names = {"t1m1": "T1_m1", "t1m2": "T1_m2", "t2m2": "T2_m2", "t3l1m2": "T3_l1m2"}
    todo = list(names) + ["carlson"] if ineq == "all" else [ineq]
    rows = []
    for key in todo:
        if key == "carlson":
            seqs = oracle.sample_carlson(seed, count)
            ms = np.array([oracle.carlson_margins(a) for a in seqs])
            rows.append({"check": "carlson_1", "count": count, "min_margin": float(ms[:, 0].min())})
            rows.append({"check": "carlson_2", "count": count, "min_margin": float(ms[:, 1].min())})
            continue
        name = names[key]
        dim = oracle._DIM[name]
        N = _VERIFY_N[dim]
        levels = 3 if dim == 1 else 2
        worst = min(
            oracle.inequality_margin(oracle.sample_trig_poly(dim, N, [seed, i]), name, levels=levels) for i in range(count)
        )
        rows.append({"check": name, "count": count, "min_margin": float(worst)})
    _emit(rows, fmt, out)
    if any(r["min_margin"] < 0 for r in rows):
        sys.exit(EXIT_FAIL)


@main.command("em-check")
@click.option("--mu", type=float, default=0.1, show_default=True)
@click.option("--halvings", type=int, default=4, show_default=True)
@_format_option
def em_check(mu, halvings, fmt, out):
    """Error of the three-term Euler-Maclaurin formula as mu is halved (ratio ~ 4)."""
    if not (mu > 0 and halvings >= 1):
        raise click.UsageError("need mu > 0 and halvings >= 1")
    cases = {
        "exp(-x)": (lambda x: np.exp(-x), 1.0, 1.0, -1.0),
        "1/(1+x^2)": (lambda x: 1.0 / (1.0 + x * x), math.pi / 2.0, 1.0, 0.0),
    }
    rows = []
    for name, (f, F0, f0, fp0) in cases.items():
        prev = None
        for j in range(halvings + 1):
            h = mu / 2 ** j
            err = abs(asympt.em_direct(f, h) - asympt.em_expansion(F0, f0, fp0, h))
            rows.append({"f": name, "mu": h, "error": err, "ratio": math.nan if prev is None else prev / err})
            prev = err
    _emit(rows, fmt, out)


@main.command()
@_format_option
def proofs(fmt, out):
    """Dense-grid negativity checks of the explicit functions in the proofs."""
    rows = []
    for case in extremal.PROOF_CASES:
        pc = extremal.proof_check_negativity(case)
        rows.append({"case": case, "max_value": pc.max_value, "arg_max": pc.arg_max, "negative": pc.negative})
    _emit(rows, fmt, out)
    if not all(r["negative"] for r in rows):
        sys.exit(EXIT_FAIL)


if __name__ == "__main__":
    main()

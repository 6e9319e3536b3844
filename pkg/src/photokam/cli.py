"""Command-line front end.

Every subcommand prints a table (CSV by default, ``--format json`` for an
array of row objects) to stdout or ``--out``. Exit status: 0 on success, 2
for invalid input or a configuration outside a formula's domain, 3 for a
numerical singularity (the offending factor is named on stderr), 1 for I/O
failures.
"""

from __future__ import annotations

import argparse
import sys

from . import report
from .dynamics import PhaseState, integrate
from .equilibria import refine_equilibrium, residual_norm, triangular_point_full
from .errors import DomainError, SingularityError, StepUnderflowError
from .kam import classify, critical_masses_for, d_classical, kam_determinant
from .linear import frequencies, frequency_relations, mu_c0, mu_c0_root
from .normal_form import moser_divisor_check, normal_form_abc
from .params import C_D_DEFAULT, derive_params, load_config

GLOBAL_DEFAULTS = {"mu": None, "q1": 1.0, "a2": 0.0, "c_d": C_D_DEFAULT,
                   "format": "csv", "out": None, "tol": 1e-6, "config": None}


def _globals_parser() -> argparse.ArgumentParser:
    # SUPPRESS lets the flags appear before or after the subcommand
    g = argparse.ArgumentParser(add_help=False)
    s = argparse.SUPPRESS
    g.add_argument("--mu", type=float, default=s, help="mass ratio")
    g.add_argument("--q1", type=float, default=s, help="mass reduction factor (default 1)")
    g.add_argument("--a2", type=float, default=s, help="oblateness coefficient (default 0)")
    g.add_argument("--cd", dest="c_d", type=float, default=s,
                   help="dimensionless speed of light (default %g)" % C_D_DEFAULT)
    g.add_argument("--format", choices=report.FORMATS, default=s, help="csv (default) or json")
    g.add_argument("--out", default=s, help="output file (default stdout)")
    g.add_argument("--tol", type=float, default=s, help="classification tolerance (default 1e-6)")
    g.add_argument("--config", default=s, help="key=value file with mu, q1, a2, cd")
    return g


def build_parser() -> argparse.ArgumentParser:
    common = _globals_parser()
    parser = argparse.ArgumentParser(
        prog="photokam", parents=[common],
        description="Stability of the triangular points with radiation, "
                    "oblateness and Poynting-Robertson drag.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help_):
        return sub.add_parser(name, parents=[common], help=help_)

    p = add("eq-point", "L4/L5 position")
    p.add_argument("--branch", choices=("L4", "L5"), default="L4")
    p.add_argument("--refine", action="store_true", help="Newton-refine the point")
    add("frequencies", "linear frequencies omega1 > omega2")
    p = add("mu-c0", "Routh critical mass")
    p.add_argument("--root", action="store_true",
                   help="also solve the discriminant boundary numerically")
    p = add("normal-form", "fourth-order normal-form coefficients A, B, C")
    p.add_argument("--variant", choices=("verbatim", "symmetric"), default="verbatim")
    add("critical-masses", "mu_c0 .. mu_c3 for the given q1, a2, cd")
    p = add("kam-d", "KAM determinant D")
    p.add_argument("--mode", choices=("closed", "normal-form"), default="closed")
    p.add_argument("--u2", type=float, help="evaluate only the classical term at u^2")
    add("classify", "nonlinear stability verdict for mu")
    p = add("integrate", "integrate the equations of motion")
    p.add_argument("--x", type=float, help="initial x (default: L4)")
    p.add_argument("--y", type=float, help="initial y (default: L4)")
    p.add_argument("--dx", type=float, default=0.0, help="offset added to x")
    p.add_argument("--dy", type=float, default=0.0, help="offset added to y")
    p.add_argument("--vx", type=float, default=0.0)
    p.add_argument("--vy", type=float, default=0.0)
    p.add_argument("--t-final", type=float, required=True)
    p.add_argument("--method", choices=("dopri5", "rk4"), default="dopri5")
    p.add_argument("--step", type=float, help="rk4 step, or first dopri5 trial step")
    p.add_argument("--rtol", type=float, default=1e-10)
    p.add_argument("--atol", type=float, default=1e-12)
    p.add_argument("--cadence", type=float, help="output spacing")
    add("table1", "critical masses against q1 (A2 = 0)")
    add("table2", "critical masses against A2 (q1 = 1)")
    p = add("region", "stability-region sweep")
    p.add_argument("--axis", action="append", required=True, type=report.Axis.parse,
                   help="name:min:max:count, name in mu, q1, a2; give once or twice")
    p.add_argument("--workers", type=int, default=1)
    add("errata", "inconsistencies in the source formulas and their resolutions")
    return parser


def _settings(ns: argparse.Namespace) -> dict:
    opts = dict(GLOBAL_DEFAULTS)
    if getattr(ns, "config", None):
        opts.update(load_config(ns.config))
    for key in GLOBAL_DEFAULTS:
        if hasattr(ns, key):
            opts[key] = getattr(ns, key)
    return opts


def _params(opts: dict):
    if opts["mu"] is None:
        raise DomainError("--mu is required for this command")
    return derive_params(opts["mu"], opts["q1"], opts["a2"], opts["c_d"])


def _cmd_eq_point(ns, opts):
    p = _params(opts)
    pt = triangular_point_full(p, ns.branch)
    if ns.refine:
        pt = refine_equilibrium(pt, p)
    return [{"branch": pt.branch, "formula": pt.formula, "x": pt.x, "y": pt.y,
             "residual": residual_norm(pt, p)}]


def _cmd_frequencies(ns, opts):
    p = _params(opts)
    s, prod = frequency_relations(p)
    fr = frequencies(p)
    return [{"omega1": fr.omega1, "omega2": fr.omega2, "u": fr.u, "ratio": fr.ratio,
             "sum_sq": s, "product_sq": prod, "boundary": fr.boundary,
             "resonance": fr.resonance or ""}]


def _cmd_mu_c0(ns, opts):
    q1, a2, c_d = opts["q1"], opts["a2"], opts["c_d"]
    eps = 1.0 - q1
    cm = critical_masses_for(q1, a2, c_d)
    row = {"q1": q1, "a2": a2, "mu_c0": cm.mu_c0,
           "mu_c0_w1_zero": mu_c0(eps, a2, 0.0)}
    if ns.root:
        row["mu_c0_root"] = mu_c0_root(q1, a2, c_d)
    return [row]


def _cmd_normal_form(ns, opts):
    p = _params(opts)
    fr = frequencies(p)
    nf = normal_form_abc(p, fr, ns.variant)
    div = moser_divisor_check(fr)
    row = {"omega1": fr.omega1, "omega2": fr.omega2, "A": nf.a, "B": nf.b, "C": nf.c,
           "variant": nf.variant, "resonance": nf.resonance or "",
           "min_combination": div.min_combination, "argmin": "%d,%d" % div.argmin,
           "divisor_resonant": div.resonant}
    # diagnostic: D from A, B, C against the closed form; not expected to agree
    row["D_from_abc"] = kam_determinant(p, fr, nf, mode="normal-form").total
    try:
        row["D_closed"] = kam_determinant(p, fr, mode="closed").total
    except SingularityError:
        row["D_closed"] = None
    return [row]


def _cmd_critical_masses(ns, opts):
    cm = critical_masses_for(opts["q1"], opts["a2"], opts["c_d"])
    return [{"q1": opts["q1"], "a2": opts["a2"], **cm.as_dict()}]


def _cmd_kam_d(ns, opts):
    if ns.u2 is not None:
        return [{"u2": ns.u2, "d_classical": d_classical(ns.u2)}]
    p = _params(opts)
    fr = frequencies(p)
    parts = kam_determinant(p, fr, mode=ns.mode)
    row = {"omega1": fr.omega1, "omega2": fr.omega2, "u2": fr.u**2,
           "mode": parts.mode, "d_classical": parts.d_classical}
    row.update({f"D{i}": v for i, v in enumerate(parts.d, start=2)})
    row["D"] = parts.total
    return [row]


def _cmd_classify(ns, opts):
    p = _params(opts)
    v = classify(p.mu, p, opts["tol"])
    return [{"mu": p.mu, "verdict": v.label, "code": v.code, "detail": v.detail,
             **v.masses.as_dict()}]


def _cmd_integrate(ns, opts):
    p = _params(opts)
    x, y = ns.x, ns.y
    if x is None or y is None:
        pt = triangular_point_full(p)
        x = pt.x if x is None else x
        y = pt.y if y is None else y
    state = PhaseState(x + ns.dx, y + ns.dy, ns.vx, ns.vy)
    traj = integrate(state, p, ns.t_final, step=ns.step, method=ns.method,
                     rtol=ns.rtol, atol=ns.atol, cadence=ns.cadence)
    jac = traj.jacobi(p)
    return [{"t": t, "x": z[0], "y": z[1], "vx": z[2], "vy": z[3], "jacobi": c}
            for t, z, c in zip(traj.t, traj.z, jac)]


def _cmd_region(ns, opts):
    fixed = {}
    names = {a.name for a in ns.axis}
    for key in ("mu", "q1", "a2"):
        if key not in names and opts.get(key) is not None:
            fixed[key] = opts[key]
    spec = report.SweepSpec(tuple(ns.axis), fixed, c_d=opts["c_d"], tol=opts["tol"],
                            format=opts["format"], out=opts["out"], workers=ns.workers)
    return report.region_sweep(spec)


def _cmd_errata(ns, opts):
    entries = report.errata_report()
    if opts["format"] == "json":
        return entries
    return [{k: e[k] for k in ("id", "anchor", "issue", "resolution")} for e in entries]


COMMANDS = {
    "eq-point": _cmd_eq_point,
    "frequencies": _cmd_frequencies,
    "mu-c0": _cmd_mu_c0,
    "normal-form": _cmd_normal_form,
    "critical-masses": _cmd_critical_masses,
    "kam-d": _cmd_kam_d,
    "classify": _cmd_classify,
    "integrate": _cmd_integrate,
    "table1": lambda ns, opts: report.table1(opts["c_d"]),
    "table2": lambda ns, opts: report.table2(opts["c_d"]),
    "region": _cmd_region,
    "errata": _cmd_errata,
}


def main(argv=None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        opts = _settings(ns)
        rows = COMMANDS[ns.command](ns, opts)
        report.write_output(report.render(rows, opts["format"]), opts["out"])
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except SingularityError as exc:
        print(f"singular: {exc.factor}: {exc}", file=sys.stderr)
        return 3
    except StepUnderflowError as exc:
        print(f"singular: step underflow: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())

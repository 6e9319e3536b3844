"""Table reproduction, stability-region sweeps and the errata listing.

Rows are plain dicts so the same data serializes to CSV (one header row,
9 significant digits) or JSON (array of row objects).
"""

from __future__ import annotations

import csv
import io
import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import DomainError
from .kam import (PUBLISHED_ALPHAS, classical_d_crosscheck, classical_frequencies_at_u0,
                  classify, critical_masses_for, mu_c3_pipeline)
from .linear import mu_c0
from .normal_form import A13_W6
from .params import C_D_DEFAULT, derive_params

TABLE1_Q1 = (0.95, 0.96, 0.97, 0.98, 0.99, 1.00)
TABLE2_A2 = (0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7)
SWEEP_AXES = ("mu", "q1", "a2")
FORMATS = ("csv", "json")
SIG_DIGITS = 9


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return str(int(value))
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        v = float(value)
        if v == 0.0:
            return "0"
        return f"{v:.{SIG_DIGITS}g}"
    return str(value)


def _round_sig(value):
    """Float rounded to the CSV precision, so JSON and CSV carry the same digits."""
    if isinstance(value, (float, np.floating)) and math.isfinite(value):
        return float(_fmt(value))
    if isinstance(value, np.integer):
        return int(value)
    return value


def to_csv(rows: list[dict]) -> str:
    if not rows:
        return ""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    header = list(rows[0])
    writer.writerow(header)
    for row in rows:
        writer.writerow([_fmt(row[k]) for k in header])
    return buf.getvalue()


def to_json(rows) -> str:
    def clean(obj):
        if isinstance(obj, dict):
            return {k: clean(v) for k, v in obj.items()}
        if isinstance(obj, (list, tuple)):
            return [clean(v) for v in obj]
        return _round_sig(obj)

    return json.dumps(clean(rows), indent=2) + "\n"


def render(rows, fmt: str = "csv") -> str:
    if fmt not in FORMATS:
        raise DomainError(f"format must be one of {FORMATS}, got {fmt!r}")
    return to_csv(rows) if fmt == "csv" else to_json(rows)


def write_output(text: str, out: str | Path | None) -> None:
    """Write to ``out`` or stdout; I/O failures carry the path."""
    if out is None or str(out) == "-":
        import sys
        sys.stdout.write(text)
        return
    path = Path(out)
    try:
        path.write_text(text)
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc.strerror or exc}") from exc


# -- tables ----------------------------------------------------------------

def _mass_row(key: str, value: float, q1: float, a2: float, c_d: float) -> dict:
    cm = critical_masses_for(q1=q1, a2=a2, c_d=c_d)
    return {key: value, "mu_c1": cm.mu_c1, "mu_c2": cm.mu_c2, "mu_c3": cm.mu_c3}


def table1(c_d: float = C_D_DEFAULT) -> list[dict]:
    """Critical masses against q1 with A2 = 0 (drag on)."""
    return [_mass_row("q1", q1, q1, 0.0, c_d) for q1 in TABLE1_Q1]


def table2(c_d: float = C_D_DEFAULT) -> list[dict]:
    """Critical masses against A2 with q1 = 1 (no drag)."""
    return [_mass_row("a2", a2, 1.0, a2, c_d) for a2 in TABLE2_A2]


# -- region sweeps ---------------------------------------------------------

@dataclass(frozen=True)
class Axis:
    name: str
    min: float
    max: float
    count: int

    def __post_init__(self):
        if self.name not in SWEEP_AXES:
            raise DomainError(f"axis name must be one of {SWEEP_AXES}, got {self.name!r}")
        if int(self.count) != self.count or self.count < 2:
            raise DomainError(f"axis {self.name}: count must be an integer >= 2")
        if not (math.isfinite(self.min) and math.isfinite(self.max)) or not self.min < self.max:
            raise DomainError(f"axis {self.name}: need finite min < max")

    def values(self) -> np.ndarray:
        return np.linspace(self.min, self.max, int(self.count))

    @classmethod
    def parse(cls, text: str) -> Axis:
        """``name:min:max:count``, e.g. ``a2:0:0.7:8``."""
        parts = text.split(":")
        if len(parts) != 4:
            raise DomainError(f"axis must look like name:min:max:count, got {text!r}")
        try:
            return cls(parts[0], float(parts[1]), float(parts[2]), int(parts[3]))
        except ValueError as exc:
            raise DomainError(f"bad axis {text!r}: {exc}") from None


@dataclass(frozen=True)
class SweepSpec:
    """Up to two axes over (mu, q1, a2); the rest held at ``fixed`` values.

    ``mu`` only matters for the verdict column; the critical curves depend
    on (q1, a2, c_d).
    """

    axes: tuple[Axis, ...]
    fixed: dict = field(default_factory=dict)
    c_d: float = C_D_DEFAULT
    tol: float = 1e-6
    format: str = "csv"
    out: str | None = None
    workers: int = 1

    def __post_init__(self):
        if not 1 <= len(self.axes) <= 2:
            raise DomainError("a sweep needs one or two axes")
        names = [a.name for a in self.axes]
        if len(set(names)) != len(names):
            raise DomainError(f"repeated axis {names}")
        for key in self.fixed:
            if key not in SWEEP_AXES:
                raise DomainError(f"unknown fixed parameter {key!r}")
            if key in names:
                raise DomainError(f"{key!r} is both an axis and fixed")
        if self.format not in FORMATS:
            raise DomainError(f"format must be one of {FORMATS}")
        if self.workers < 1:
            raise DomainError("workers must be >= 1")

    def value(self, name: str) -> float:
        default = {"mu": 0.01, "q1": 1.0, "a2": 0.0}[name]
        return float(self.fixed.get(name, default))

    def cells(self) -> list[dict]:
        grids = [a.values() for a in self.axes]
        if len(grids) == 1:
            combos = [(v,) for v in grids[0]]
        else:
            combos = [(u, v) for u in grids[0] for v in grids[1]]
        base = {k: self.value(k) for k in SWEEP_AXES}
        out = []
        for combo in combos:
            cell = dict(base)
            cell.update({a.name: float(v) for a, v in zip(self.axes, combo)})
            out.append(cell)
        return out


def _sweep_cell(cell: dict, c_d: float, tol: float, axis_names) -> dict:
    q1, a2, mu = cell["q1"], cell["a2"], cell["mu"]
    cm = critical_masses_for(q1=q1, a2=a2, c_d=c_d)
    row = {name: cell[name] for name in axis_names}
    row.update({"mu_c0": cm.mu_c0, "mu_c1": cm.mu_c1, "mu_c2": cm.mu_c2,
                "mu_c3": cm.mu_c3})
    try:
        p = derive_params(mu, q1, a2, c_d)
        verdict = classify(mu, p, tol)
        row["verdict"] = verdict.code
    except DomainError:
        row["verdict"] = -1
    return row


def region_sweep(spec: SweepSpec) -> list[dict]:
    """One row per grid cell: axis values, the four critical curves and the
    verdict code for ``mu`` (see :data:`photokam.kam.VERDICT_CODES`; -1 if
    the parameters are invalid). Row order is the grid order for any number
    of workers."""
    names = [a.name for a in spec.axes]
    cells = spec.cells()
    if spec.workers == 1:
        return [_sweep_cell(c, spec.c_d, spec.tol, names) for c in cells]
    with ThreadPoolExecutor(max_workers=spec.workers) as pool:
        return list(pool.map(lambda c: _sweep_cell(c, spec.c_d, spec.tol, names), cells))


# -- errata ----------------------------------------------------------------

def _entry(key, anchor, issue, resolution, **data):
    out = {"id": key, "anchor": anchor, "issue": issue, "resolution": resolution}
    if data:
        out["data"] = data
    return out


def errata_report(alpha_tol: float = 1e-3) -> list[dict]:
    """Every inconsistency in the source formulas that the package works
    around, with the resolution adopted. Computed values are included so the
    listing stays in step with the code."""
    pipe = mu_c3_pipeline()
    w1_u0, w2_u0 = classical_frequencies_at_u0()
    cross = classical_d_crosscheck(0.01)
    caption_u2 = (0.924270 * 0.381742) ** 2
    entries = [
        _entry(
            "printed-G",
            r"G&=&\frac{\sqrt{3}}{8}\Bigl[2\epsilon+6A_2",
            "G has no gamma-independent classical term, so the quartic built "
            "from (E, F, G) cannot match the product relation at eps = A2 = W1 = 0.",
            "g_corrected = G - (3*sqrt(3)/4)*gamma is used in the characteristic "
            "quartic; the printed G is kept for reference.",
        ),
        _entry(
            "G-parenthesis",
            r"\frac{(11W_1}{2\sqrt{3}}",
            "unbalanced parenthesis in the W1 term of G.",
            "read as 11*W1/(2*sqrt(3)).",
        ),
        _entry(
            "A13-coefficient",
            r"\frac{8141559\omega_1^6}{32",
            "the omega1^6 coefficient of A_{1,3} breaks the A/C mirror "
            "structure (C_{1,3} carries -407/16 on omega2^6).",
            "verbatim value by default; variant='symmetric' uses -407/16.",
            verbatim=float(A13_W6["verbatim"]), symmetric=float(A13_W6["symmetric"]),
        ),
        _entry(
            "C11-mirror",
            r"C_{1,1}&=&\frac{9}{8(-1+2\omega_2^2)^2(-1+5\omega_2^2)}",
            "C_{1,1} is not A_{1,1} with the frequencies swapped: two numerators "
            "differ and the last term has omega1 denominators. With it the A, B, C "
            "route does not reproduce the classical closed form of D.",
            "closed-form D is authoritative; the tables stay verbatim. Swapping "
            "omega1<->omega2 in A_{1,1} reproduces the closed form up to an "
            "overall sign.",
            mu=cross["mu"], d_closed_form=cross["d_closed_form"],
            d_from_abc=cross["d_from_abc"],
            d_from_abc_mirrored_c=cross["d_from_abc_mirrored_c"],
        ),
        _entry(
            "figure-2-caption",
            r"\omega_1=0.924270, \omega_2=0.381742,\ D_0= 0",
            "the caption frequencies satisfy omega1^2 + omega2^2 = 1 but give "
            f"u^2 = {caption_u2:.6f}, not the root u0 = {pipe.u0:.6f} of D.",
            "frequencies are derived from u0 instead.",
            omega1=w1_u0, omega2=w2_u0, u0=pipe.u0, caption_u2=caption_u2,
        ),
        _entry(
            "mu-c0-caption",
            r"\mu_{c0}=.035829",
            "the 3D figure quotes a Routh value that differs from the classical "
            "0.038521 used everywhere else.",
            "0.038521 and the linear boundary formula are used; the caption value "
            "is not.",
            mu_c0_classical=mu_c0(0.0, 0.0, 0.0),
        ),
        _entry(
            "sum-relation",
            r"\omega_1^2+\omega_2^2&=& 1-\frac{\gamma \epsilon}{2}",
            "the first-order sum/product relations disagree with the eigenvalues "
            "of the linearized equations of motion already at first order in eps "
            "and A2.",
            "frequencies() follows the relations; linearize() is reported as an "
            "independent check and the gap is left visible.",
        ),
        _entry(
            "resonance-quadratics",
            r"\mu^2\left(-\frac{27}{4}-\frac{3\epsilon}{2}",
            "the mu-quadratics for the 2:1 and 3:1 resonances and the linear "
            "closed forms differ at second order in the perturbations.",
            "closed forms are authoritative for the tables; the quadratics are a "
            "cross-check.",
        ),
    ]
    dev = max(abs(d) for d in pipe.alpha_deviation)
    if dev > alpha_tol:
        entries.append(_entry(
            "alpha-pipeline",
            r"\mu_{c3}&=&0.010914-0.120489",
            "recomputing alpha1..alpha3 from the transcribed D2..D7 at the u0 "
            "frequencies does not reproduce the published slopes.",
            "the closed form for mu_c3 stays authoritative; the recomputed slopes "
            "are reported only.",
            computed=list(pipe.alphas), published=list(PUBLISHED_ALPHAS),
            max_abs_deviation=dev,
        ))
    return entries


def errata_json(entries: list[dict] | None = None) -> str:
    return json.dumps(entries if entries is not None else errata_report(),
                      indent=2, sort_keys=True) + "\n"

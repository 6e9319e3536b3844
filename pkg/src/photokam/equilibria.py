"""Triangular equilibrium points L4/L5.

Three ways to get a point:

* :func:`triangular_point_full` -- closed form, first order in W1 and A2,
  exact in q1 through ``delta = q1**(1/3)``;
* :func:`series_point_L4` -- the same point expanded in eps = 1 - q1;
* :func:`refine_equilibrium` -- Newton polish of either one on the actual
  force field, used when a point must be an equilibrium to round-off.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Literal

import numpy as np
from scipy.optimize import root

from .errors import DegeneratePointError, DomainError
from .params import SystemParams
from .potential import distances, force_field

SQRT3 = math.sqrt(3.0)

Branch = Literal["L4", "L5"]


@dataclass(frozen=True)
class EquilibriumPoint:
    x: float
    y: float
    branch: Branch = "L4"
    formula: str = "full"

    def __iter__(self):
        return iter((self.x, self.y))


def _sign(branch: Branch) -> float:
    if branch == "L4":
        return 1.0
    if branch == "L5":
        return -1.0
    raise DomainError(f"branch must be 'L4' or 'L5', got {branch!r}")


def classical_point(mu: float, branch: Branch = "L4") -> EquilibriumPoint:
    return EquilibriumPoint(0.5 - mu, _sign(branch) * SQRT3 / 2.0, branch, "classical")


def triangular_point_full(p: SystemParams, branch: Branch = "L4") -> EquilibriumPoint:
    """First-order perturbed L4/L5 with radiation, oblateness and drag.

    The x-correction is multiplied through by ``x0`` so that ``x0 = 0`` (which
    happens for ``delta**2 = 2 mu``) is not a removable singularity. The
    y-formula keeps its square root unexpanded.

    Raises
    ------
    DegeneratePointError
        If the factor under the square root is negative.
    """
    s = _sign(branch)
    mu, a2, w1, n, d2 = p.mu, p.a2, p.w1, p.n, p.delta**2
    x0 = d2 / 2.0 - mu
    y0 = s * p.delta * math.sqrt(1.0 - d2 / 4.0)
    scale = 3.0 * mu * (1.0 - mu)

    x_drag = n * w1 * ((1.0 - mu) * (1.0 + 2.5 * a2) + mu * (1.0 - a2 / 2.0) * d2 / 2.0)
    x = x0 - x_drag / (scale * y0) - (d2 / 2.0) * a2

    # inner bracket grouping: delta^2 * [2mu - 1 - mu(1 - 3A2/2) delta^2/2 + 7(1-mu)A2/2]
    y_drag = n * w1 * d2 * (2.0 * mu - 1.0 - mu * (1.0 - 1.5 * a2) * d2 / 2.0
                            + 7.0 * (1.0 - mu) * a2 / 2.0)
    under = 1.0 - y_drag / (scale * y0**3) - d2 * (1.0 - d2 / 2.0) * a2 / y0**2
    if under < 0.0:
        raise DegeneratePointError(f"negative factor {under!r} under the square root for y*")
    y = y0 * math.sqrt(under)
    formula = "classical" if (p.is_classical and p.w1 == 0.0) else "full"
    return EquilibriumPoint(x, y, branch, formula)


@dataclass(frozen=True)
class SeriesPoint:
    x: float
    y: float
    a: float
    b: float


def series_point_L4(p: SystemParams) -> SeriesPoint:
    """L4 expanded to first order in eps, A2, W1 (with the eps*A2, eps*W1 cross terms).

    ``a`` and ``b`` are the coordinates of L4 measured from the larger
    primary, ``a = x + mu``, ``b = y``.
    """
    eps, a2, w1, g = p.eps, p.a2, p.w1, p.gamma
    if abs(eps) > 0.1:
        warnings.warn(f"eps={eps} is not small; the series point is unreliable", stacklevel=2)
    x = (g / 2 - eps / 3 - a2 / 2 + a2 * eps / 3
         - (9 + g) * w1 / (6 * SQRT3) - 4 * g * eps * w1 / (27 * SQRT3))
    y = (SQRT3 / 2) * (1 - 2 * eps / 9 - a2 / 3 - 2 * a2 * eps / 9
                       + (1 + g) * w1 / (9 * SQRT3) - 4 * g * eps * w1 / (27 * SQRT3))
    a = 0.5 * (1 - 2 * eps / 3 - a2 + 2 * a2 * eps / 3
               - (9 + g) * w1 / (3 * SQRT3) - 8 * g * eps * w1 / (27 * SQRT3))
    return SeriesPoint(x, y, a, y)


def equilibrium_residual(point: EquilibriumPoint | tuple[float, float],
                         p: SystemParams) -> tuple[float, float]:
    """Force field (U_x, U_y) at the point with the particle at rest.

    At rest the drag factors reduce to ``n1 = -n y`` and ``n2 = n (x + mu)``.
    Raises :class:`CollisionError` within 1e-12 of a primary.
    """
    x, y = point
    distances(x, y, p.mu)
    return force_field(x, y, 0.0, 0.0, p)


def residual_norm(point, p: SystemParams) -> float:
    return math.hypot(*equilibrium_residual(point, p))


def refine_equilibrium(point: EquilibriumPoint, p: SystemParams,
                       tol: float = 1e-14) -> EquilibriumPoint:
    """Polish ``point`` to a root of the at-rest force field."""
    sol = root(lambda z: np.array(equilibrium_residual(z, p)),
               np.array([point.x, point.y]), method="hybr", tol=tol)
    x, y = (float(v) for v in sol.x)
    out = EquilibriumPoint(x, y, point.branch, "refined")
    if residual_norm(out, p) > 1e-10:
        raise DegeneratePointError(f"Newton refinement did not converge: {sol.message}")
    return out

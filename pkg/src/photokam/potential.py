"""Effective potential U1, its analytic gradient, and the P-R drag terms.

Shared by the equilibrium and dynamics modules. Scalar ``math`` code: the
state is four numbers and these functions sit in the integrator inner loop.
"""

from __future__ import annotations

import math

from .errors import CollisionError
from .params import SystemParams

MIN_DISTANCE = 1e-12


def distances(x: float, y: float, mu: float) -> tuple[float, float]:
    r1 = math.hypot(x + mu, y)
    r2 = math.hypot(x + mu - 1.0, y)
    if r1 < MIN_DISTANCE:
        raise CollisionError("r1", r1)
    if r2 < MIN_DISTANCE:
        raise CollisionError("r2", r2)
    return r1, r2


def u1(x: float, y: float, p: SystemParams) -> float:
    r1, r2 = distances(x, y, p.mu)
    return (0.5 * p.n**2 * (x * x + y * y) + (1.0 - p.mu) * p.q1 / r1
            + p.mu / r2 + p.mu * p.a2 / (2.0 * r2**3))


def grad_u1(x: float, y: float, p: SystemParams) -> tuple[float, float]:
    mu = p.mu
    r1, r2 = distances(x, y, mu)
    k1 = (1.0 - mu) * p.q1 / r1**3
    k2 = mu / r2**3 + 1.5 * mu * p.a2 / r2**5
    n2 = p.n**2
    gx = n2 * x - k1 * (x + mu) - k2 * (x + mu - 1.0)
    gy = n2 * y - k1 * y - k2 * y
    return gx, gy


def drag_terms(x: float, y: float, vx: float, vy: float,
               p: SystemParams) -> tuple[float, float]:
    """The velocity-dependent pieces ``W1 n1 / r1^2`` and ``W1 n2 / r1^2``.

    These enter the equations of motion with a minus sign.
    """
    if p.w1 == 0.0:
        return 0.0, 0.0
    mu, n = p.mu, p.n
    r1, _ = distances(x, y, mu)
    rr = r1 * r1
    radial = ((x + mu) * vx + y * vy) / rr
    n1 = (x + mu) * radial + vx - n * y
    n2 = y * radial + vy + n * (x + mu)
    return p.w1 * n1 / rr, p.w1 * n2 / rr


def force_field(x: float, y: float, vx: float, vy: float,
                p: SystemParams) -> tuple[float, float]:
    """U_x and U_y including drag, i.e. the right-hand sides before Coriolis."""
    gx, gy = grad_u1(x, y, p)
    dx, dy = drag_terms(x, y, vx, vy, p)
    return gx - dx, gy - dy

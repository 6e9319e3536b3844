"""Direct integration of the planar equations of motion in the rotating frame.

    x'' - 2 n y' = dU1/dx - W1 n1 / r1^2
    y'' + 2 n x' = dU1/dy - W1 n2 / r1^2

Used as an empirical cross-check of the analytic results: equilibrium
residuals, linearization eigenvalues, small-oscillation periods and the
Jacobi integral of the drag-free flow.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .equilibria import EquilibriumPoint, residual_norm
from .errors import DomainError, NonEquilibriumError
from .integrators import DormandPrince, rk4
from .params import SystemParams
from .potential import force_field, u1


@dataclass(frozen=True)
class PhaseState:
    x: float
    y: float
    vx: float = 0.0
    vy: float = 0.0
    t: float = 0.0

    def __post_init__(self):
        if not all(math.isfinite(v) for v in (self.x, self.y, self.vx, self.vy, self.t)):
            raise DomainError(f"non-finite state {self}")

    def vector(self) -> np.ndarray:
        return np.array([self.x, self.y, self.vx, self.vy])

    @classmethod
    def from_vector(cls, v, t: float = 0.0) -> PhaseState:
        return cls(float(v[0]), float(v[1]), float(v[2]), float(v[3]), float(t))


def acceleration(state: PhaseState, p: SystemParams) -> tuple[float, float]:
    """(x'', y'') at ``state``; raises :class:`CollisionError` at a primary."""
    fx, fy = force_field(state.x, state.y, state.vx, state.vy, p)
    return 2.0 * p.n * state.vy + fx, -2.0 * p.n * state.vx + fy


def rhs(p: SystemParams):
    """First-order vector field ``z' = F(z)`` on ``z = (x, y, vx, vy)``."""
    n2 = 2.0 * p.n

    def f(z):
        x, y, vx, vy = z
        fx, fy = force_field(x, y, vx, vy, p)
        return np.array([vx, vy, n2 * vy + fx, -n2 * vx + fy])

    return f


def jacobi_constant(state: PhaseState, p: SystemParams) -> float:
    """``2 U1 - v^2``; a first integral only when W1 = 0."""
    return 2.0 * u1(state.x, state.y, p) - (state.vx**2 + state.vy**2)


@dataclass(frozen=True)
class Trajectory:
    t: np.ndarray
    z: np.ndarray      # shape (len(t), 4)

    def __len__(self):
        return len(self.t)

    def __getitem__(self, i) -> PhaseState:
        return PhaseState.from_vector(self.z[i], self.t[i])

    def states(self) -> list[PhaseState]:
        return [self[i] for i in range(len(self))]

    def jacobi(self, p: SystemParams) -> np.ndarray:
        return np.array([jacobi_constant(s, p) for s in self.states()])


METHODS = ("dopri5", "rk4")


def integrate(state0: PhaseState, p: SystemParams, t_final: float,
              step: float | None = None, method: str = "dopri5",
              rtol: float = 1e-10, atol: float = 1e-12,
              cadence: float | None = None) -> Trajectory:
    """Integrate from ``state0`` for ``t_final`` time units.

    Parameters
    ----------
    step : float
        Step for ``rk4`` (required); initial trial step for ``dopri5``.
    cadence : float, optional
        Output spacing. Without it only the start and end states are kept.

    Raises
    ------
    CollisionError, StepUnderflowError
    """
    if t_final < 0:
        raise DomainError("t_final must be non-negative")
    if step is not None and step <= 0:
        raise DomainError("step must be positive")
    if method not in METHODS:
        raise DomainError(f"method must be one of {METHODS}")
    if cadence is not None and cadence <= 0:
        raise DomainError("cadence must be positive")
    t_out = None
    if cadence is not None and t_final > 0:
        k = int(math.floor(t_final / cadence + 1e-9))
        t_out = [cadence * i for i in range(1, k + 1)]
        if not t_out or t_final - t_out[-1] > 1e-12 * max(1.0, t_final):
            t_out.append(t_final)
    f = rhs(p)
    z0 = state0.vector()
    if t_final == 0:
        return Trajectory(np.array([state0.t]), z0[None, :])
    if method == "rk4":
        if step is None:
            raise DomainError("rk4 needs a step")
        ts, zs = rk4(f, z0, t_final, step, t_out)
    else:
        ts, zs = DormandPrince(f, rtol=rtol, atol=atol, h0=step).integrate(z0, t_final, t_out)
    return Trajectory(ts + state0.t, zs)


@dataclass(frozen=True)
class Linearization:
    matrix: np.ndarray
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def frequencies(self) -> tuple[float, ...]:
        """Distinct positive imaginary parts, largest first."""
        im = sorted({round(float(abs(v.imag)), 14) for v in self.eigenvalues}, reverse=True)
        return tuple(im)

    @property
    def max_real_part(self) -> float:
        return float(np.max(self.eigenvalues.real))


def linearize(point: EquilibriumPoint, p: SystemParams, h: float = 1e-7,
              residual_tol: float = 1e-6) -> Linearization:
    """Central-difference Jacobian of the vector field at the point (at rest).

    Raises
    ------
    NonEquilibriumError
        If the at-rest residual exceeds ``residual_tol``.
    """
    res = residual_norm(point, p)
    if res > residual_tol:
        raise NonEquilibriumError(f"residual {res:.3e} exceeds {residual_tol:g}")
    f = rhs(p)
    z0 = np.array([point.x, point.y, 0.0, 0.0])
    jac = np.empty((4, 4))
    for j in range(4):
        dz = np.zeros(4)
        dz[j] = h
        jac[:, j] = (f(z0 + dz) - f(z0 - dz)) / (2.0 * h)
    vals, vecs = np.linalg.eig(jac)
    return Linearization(jac, vals, vecs)


def reflect(state: PhaseState) -> PhaseState:
    """Time-reversal involution of the drag-free rotating-frame flow,
    ``(x, y, vx, vy) -> (x, -y, -vx, vy)``."""
    return PhaseState(state.x, -state.y, -state.vx, state.vy, state.t)


def crossing_period(t: np.ndarray, signal: np.ndarray) -> float:
    """Mean spacing of upward zero crossings, linearly interpolated."""
    idx = np.nonzero((signal[:-1] < 0) & (signal[1:] >= 0))[0]
    if len(idx) < 2:
        raise DomainError("need at least two upward crossings to measure a period")
    tc = t[idx] - signal[idx] * (t[idx + 1] - t[idx]) / (signal[idx + 1] - signal[idx])
    return float((tc[-1] - tc[0]) / (len(tc) - 1))

"""Explicit Runge-Kutta integrators for small autonomous systems.

``rk4_step`` is the classical fixed-step method (used for convergence-order
checks). :class:`DormandPrince` is the 5(4) embedded pair with the usual
PI-free step control; it propagates the 5th-order solution (local
extrapolation).
"""

from __future__ import annotations

import numpy as np

from .errors import StepUnderflowError


def rk4_step(f, y: np.ndarray, h: float) -> np.ndarray:
    k1 = f(y)
    k2 = f(y + 0.5 * h * k1)
    k3 = f(y + 0.5 * h * k2)
    k4 = f(y + h * k3)
    return y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


def rk4(f, y0, t_final: float, h: float, t_out=None) -> tuple[np.ndarray, np.ndarray]:
    """Fixed-step RK4 from t = 0. The last step is shortened to land on each
    output time exactly."""
    t_out = _output_times(t_final, t_out)
    y = np.asarray(y0, dtype=float)
    ts, ys = [0.0], [y.copy()]
    t = 0.0
    for target in t_out:
        while target - t > 1e-14 * max(1.0, abs(target)):
            step = min(h, target - t)
            y = rk4_step(f, y, step)
            t += step
        t = target
        ts.append(t)
        ys.append(y.copy())
    return np.array(ts), np.array(ys)


def _output_times(t_final, t_out):
    if t_out is None:
        return [t_final] if t_final > 0 else []
    return [t for t in t_out if t > 0]


# Dormand & Prince (1980) tableau
_C = np.array([0.0, 1 / 5, 3 / 10, 4 / 5, 8 / 9, 1.0, 1.0])
_A = [
    [],
    [1 / 5],
    [3 / 40, 9 / 40],
    [44 / 45, -56 / 15, 32 / 9],
    [19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729],
    [9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656],
    [35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84],
]
_B5 = np.array([35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84, 0.0])
_B4 = np.array([5179 / 57600, 0.0, 7571 / 16695, 393 / 640, -92097 / 339200,
                187 / 2100, 1 / 40])
_E = _B5 - _B4


class DormandPrince:
    """Adaptive 5(4) integrator with FSAL.

    Parameters
    ----------
    rtol, atol : float
        Mixed error tolerance per component, ``atol + rtol * max(|y|, |y_new|)``.
    h0 : float, optional
        First trial step; a crude estimate is used when omitted.
    """

    safety = 0.9
    min_factor = 0.2
    max_factor = 5.0

    def __init__(self, f, rtol: float = 1e-10, atol: float = 1e-12,
                 h0: float | None = None, max_steps: int = 10_000_000):
        self.f = f
        self.rtol = rtol
        self.atol = atol
        self.h0 = h0
        self.max_steps = max_steps
        self.n_steps = 0
        self.n_rejected = 0

    def _initial_step(self, y, k1):
        scale = self.atol + self.rtol * np.abs(y)
        d0 = np.linalg.norm(y / scale) / np.sqrt(y.size)
        d1 = np.linalg.norm(k1 / scale) / np.sqrt(y.size)
        h = 1e-6 if (d0 < 1e-5 or d1 < 1e-5) else 0.01 * d0 / d1
        return min(h, 0.1)

    def _attempt(self, y, k1, h):
        ks = [k1]
        for i in range(1, 7):
            yi = y + h * sum(a * k for a, k in zip(_A[i], ks))
            ks.append(self.f(yi))
        y_new = y + h * sum(b * k for b, k in zip(_B5, ks) if b != 0.0)
        err_vec = h * sum(e * k for e, k in zip(_E, ks) if e != 0.0)
        scale = self.atol + self.rtol * np.maximum(np.abs(y), np.abs(y_new))
        err = np.sqrt(np.mean((err_vec / scale) ** 2))
        return y_new, ks[-1], err

    def integrate(self, y0, t_final: float, t_out=None) -> tuple[np.ndarray, np.ndarray]:
        y = np.asarray(y0, dtype=float)
        targets = _output_times(t_final, t_out)
        ts, ys = [0.0], [y.copy()]
        if not targets:
            return np.array(ts), np.array(ys)
        t = 0.0
        k1 = self.f(y)
        h = self.h0 or self._initial_step(y, k1)
        for target in targets:
            while t < target:
                if self.n_steps >= self.max_steps:
                    raise StepUnderflowError(f"exceeded {self.max_steps} steps at t={t}")
                last = False
                if t + h >= target:
                    h_try, last = target - t, True
                else:
                    h_try = h
                if h_try < 16 * np.finfo(float).eps * max(1.0, abs(t)) and not last:
                    raise StepUnderflowError(f"step {h_try!r} underflowed at t={t}")
                y_new, k_last, err = self._attempt(y, k1, h_try)
                if not np.isfinite(err):
                    err = np.inf
                if err <= 1.0:
                    t = target if last else t + h_try
                    y, k1 = y_new, k_last
                    self.n_steps += 1
                    factor = self.max_factor if err == 0 else min(
                        self.max_factor, self.safety * err ** -0.2)
                    if not last:
                        h = h_try * factor
                else:
                    self.n_rejected += 1
                    h = h_try * max(self.min_factor, self.safety * err ** -0.2)
                    if h < 16 * np.finfo(float).eps * max(1.0, abs(t)):
                        raise StepUnderflowError(f"step {h!r} underflowed at t={t}")
            ts.append(t)
            ys.append(y.copy())
        return np.array(ts), np.array(ys)

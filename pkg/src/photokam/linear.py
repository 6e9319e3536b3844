"""Linear stability of L4: quadratic form, characteristic quartic, frequencies.

Frequencies come from the sum/product relations for omega1^2 + omega2^2 and
omega1^2 omega2^2. The quartic built from (E, F, G) is kept as an independent
cross-check. The printed G has no gamma-independent classical term and
cannot reproduce the product relation. :attr:`QuadraticForm.g_corrected`
restores ``-(3 sqrt3 / 4) gamma``, which is the classical value of -U_xy at L4.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .errors import InstabilityError
from .params import SystemParams, derive_params

SQRT3 = math.sqrt(3.0)

# coefficients of the linearized Routh boundary:
# (1, eps, A2, eps*A2, W1, eps*W1)
MU_C0_COEFFS = (0.038521, -0.221896, 2.103887, 0.493433, 0.704139, 0.401154)

RESONANCE_TOL = 1e-9
BOUNDARY_TOL = 1e-12


@dataclass(frozen=True)
class QuadraticForm:
    e: float
    f: float
    g: float
    g_corrected: float
    n: float


@dataclass(frozen=True)
class FrequencyPair:
    omega1: float
    omega2: float
    boundary: bool = False
    resonance: str | None = None

    @property
    def u(self) -> float:
        return self.omega1 * self.omega2

    @property
    def ratio(self) -> float:
        return self.omega1 / self.omega2


def quadratic_coeffs(p: SystemParams) -> QuadraticForm:
    eps, a2, w1, g = p.eps, p.a2, p.w1, p.gamma
    e = (2 - 6 * eps - 3 * a2 - 31 * a2 * eps / 2 - 69 * w1 / (6 * SQRT3)
         + g * (2 * eps + 12 * a2 + a2 * eps / 3 + 199 * w1 / (6 * SQRT3))) / 16
    f = -(10 - 2 * eps + 21 * a2 - 717 * a2 * eps / 18 - 67 * w1 / (6 * SQRT3)
          + g * (6 * eps - 293 * a2 * eps / 18 + 187 * w1 / (6 * SQRT3))) / 16
    gg = (SQRT3 / 8) * (2 * eps + 6 * a2 - 37 * a2 * eps / 2 - 13 * w1 / (2 * SQRT3)
                        - g * (6 * eps - eps / 3 + 13 * a2 - 33 * a2 * eps / 2
                               + 11 * w1 / (2 * SQRT3)))
    return QuadraticForm(e, f, gg, gg - 0.75 * SQRT3 * g, p.n)


def characteristic_quartic(qf: QuadraticForm, corrected: bool = True) -> tuple[float, float]:
    """Coefficients (c2, c0) of ``lambda^4 + c2 lambda^2 + c0 = 0``."""
    g = qf.g_corrected if corrected else qf.g
    n2 = qf.n**2
    c2 = 2 * (qf.e + qf.f + n2)
    c0 = 4 * qf.e * qf.f - g * g + n2 * n2 - 2 * n2 * (qf.e + qf.f)
    return c2, c0


def quartic_roots(c2: float, c0: float) -> np.ndarray:
    """All four roots via companion-matrix eigenvalues (``numpy.roots``)."""
    return np.roots([1.0, 0.0, c2, 0.0, c0])


def discriminant(p: SystemParams, corrected: bool = True) -> float:
    """``c2^2 - 4 c0`` of the quartic; positive inside the stable region."""
    c2, c0 = characteristic_quartic(quadratic_coeffs(p), corrected)
    return c2 * c2 - 4 * c0


def mu_c0(eps: float, a2: float, w1: float) -> float:
    k = MU_C0_COEFFS
    return k[0] + k[1] * eps + k[2] * a2 + k[3] * eps * a2 + k[4] * w1 + k[5] * eps * w1


def mu_c0_root(q1: float = 1.0, a2: float = 0.0, c_d: float | None = None) -> float:
    """Mass ratio where :func:`discriminant` vanishes, by bracketing root search.

    W1 is re-derived at every trial mu, so this is self-consistent.
    """
    kw = {} if c_d is None else {"c_d": c_d}

    def d(mu):
        return discriminant(derive_params(mu, q1, a2, **kw))

    return brentq(d, 1e-6, 0.2, xtol=1e-15, rtol=4 * np.finfo(float).eps)


def frequency_relations(p: SystemParams) -> tuple[float, float]:
    """(omega1^2 + omega2^2, omega1^2 omega2^2) as functions of the parameters."""
    eps, a2, w1, g = p.eps, p.a2, p.w1, p.gamma
    s = (1 - g * eps / 2 + 3 * g * a2 / 2 + 83 * eps * a2 / 12 - w1 / (24 * SQRT3))
    prod = (27 / 16 - 27 * g * g / 16 + 9 * eps / 8 + 9 * g * eps / 8 + 117 * g * a2 / 16
            - 241 * eps * a2 / 32 + 35 * w1 / (16 * SQRT3) - 55 * SQRT3 * g * w1 / 16)
    return s, prod


def _resonance(w1: float, w2: float) -> str | None:
    for k in (2, 3):
        if abs(w1 / w2 - k) < RESONANCE_TOL:
            return f"{k}:1"
    return None


def frequencies_from_relations(s: float, prod: float) -> FrequencyPair:
    disc = s * s - 4 * prod
    if abs(disc) <= BOUNDARY_TOL:
        w = math.sqrt(s / 2)
        return FrequencyPair(w, w, boundary=True)
    if disc < 0 or prod <= 0:
        raise InstabilityError(
            f"complex frequencies: sum={s!r}, product={prod!r}, sum^2-4*product={disc!r}")
    root = math.sqrt(disc)
    big = (s + root) / 2
    small = prod / big  # avoids cancellation in (s - root)/2
    w1, w2 = math.sqrt(big), math.sqrt(small)
    return FrequencyPair(w1, w2, resonance=_resonance(w1, w2))


def frequencies(p: SystemParams) -> FrequencyPair:
    """Ordered pair omega1 > omega2 of the linearized motion about L4.

    Raises
    ------
    InstabilityError
        When ``sum^2 < 4 product``; at equality the double frequency
        ``sqrt(sum/2)`` is returned with ``boundary=True``.
    """
    return frequencies_from_relations(*frequency_relations(p))


def gamma_sq_from_frequency(omega: float, p: SystemParams) -> float:
    """gamma^2 from a single frequency omega_j (either one)."""
    eps, a2, w1, g = p.eps, p.a2, p.w1, p.gamma
    w2 = omega * omega
    c0 = 1 + 4 * eps / 9 - 107 * eps * a2 / 27 + 2 * g * eps / 3 - 25 * w1 / (27 * SQRT3)
    c1 = (-16 / 27 + 32 * eps / 243 + 208 * a2 / 81 - 8 * g * a2 / 27
          - 4868 * eps * a2 / 729 + 296 * w1 / (243 * SQRT3))
    c2 = (16 / 27 - 32 * eps / 243 - 208 * a2 / 81 - 1880 * eps * a2 / 729
          - 2720 * w1 / (2187 * SQRT3))
    return c0 + c1 * w2 + c2 * w2 * w2


def gamma_sq_from_u(u: float, p: SystemParams) -> float:
    """gamma^2 from the frequency product u = omega1 omega2."""
    eps, a2, w1, g = p.eps, p.a2, p.w1, p.gamma
    c0 = 1 + 4 * eps / 9 - 107 * eps * a2 / 27 - 25 * w1 / (27 * SQRT3)
    cg = g * (2 * eps / 3 + 1579 * eps * a2 / 324 - 55 * g * w1 / (9 * SQRT3))
    cu = (-16 / 27 + 32 * eps / 243 + 208 * a2 / 81 - 1880 * eps * a2 / 729
          + 320 * w1 / (243 * SQRT3))
    return c0 + cg + cu * u * u

"""Nonlinear (KAM) stability: resonance masses, the determinant D, mu_c3.

The first KAM condition fails on the 2:1 and 3:1 resonances (mu_c1, mu_c2).
The second fails where the determinant

    D = -(A w2^2 + 2 B w1 w2 + C w1^2)

vanishes (mu_c3). D is the classical rational function of u^2 = (w1 w2)^2
plus first-order corrections whose coefficients D2..D7 are rational
functions of the frequencies. They are transcribed term by term in
:func:`appendix2_coeffs`.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field

from ._freqfactors import FreqFactors
from ._rational import as_number, total
from .errors import NoRealRootError, ResonancePoleError
from .linear import FrequencyPair, mu_c0
from .normal_form import NormalFormCoeffs, appendix1_entry, normal_form_abc
from .params import C_D_DEFAULT, SystemParams, drag_strength

SQRT3 = math.sqrt(3.0)

# closed-form linear fits: (constant, eps, A2, W1)
MU_C1_COEFFS = (0.024294, -0.312692, -0.036851, 1.001052)
MU_C2_COEFFS = (0.013516, -0.29724, -0.019383, 1.007682)
MU_C3_COEFFS = (0.010914, -0.120489, -0.373118, 2.904291)

# the three alpha values quoted for the mu_c3 fit
PUBLISHED_ALPHAS = (-0.120489, -0.373118, 2.904291)


def _linear(k, eps, a2, w1):
    return k[0] + k[1] * eps + k[2] * a2 + k[3] * w1


def mu_c1(eps: float, a2: float, w1: float) -> float:
    """Mass ratio of the 2:1 resonance w1 = 2 w2 (closed form)."""
    return _linear(MU_C1_COEFFS, eps, a2, w1)


def mu_c2(eps: float, a2: float, w1: float) -> float:
    """Mass ratio of the 3:1 resonance w1 = 3 w2 (closed form)."""
    return _linear(MU_C2_COEFFS, eps, a2, w1)


def mu_c3_closed(eps: float, a2: float, w1: float) -> float:
    """Mass ratio where the KAM determinant vanishes (closed form)."""
    return _linear(MU_C3_COEFFS, eps, a2, w1)


def _resonance_quadratic(kind: int, eps, a2, w1) -> tuple[float, float, float]:
    if kind == 2:
        return (-27 / 4 - 3 * eps / 2 - 117 * a2 / 4 - 221 * w1 / (15 * SQRT3),
                27 / 4 - 107 * eps / 100 + 3021 * a2 / 100 + 4291 * w1 / (120 * SQRT3),
                -4 / 25 + 407 * eps / 200 - 12 * a2 / 25 - 23991 * w1 / (200 * SQRT3))
    return (-27 / 4 - 3 * eps / 2 - 117 * a2 / 4 - 99 * SQRT3 * w1 / 20,
            27 / 4 - 93 * eps / 100 + 2979 * a2 / 100 + 119 * SQRT3 * w1 / 10,
            -9 / 100 + 393 * eps / 200 - 27 * a2 / 100 - 4777 * w1 / (400 * SQRT3))


def _solve_resonance(kind: int, eps, a2, w1) -> float:
    a, b, c = _resonance_quadratic(kind, eps, a2, w1)
    disc = b * b - 4 * a * c
    if disc < 0:
        raise NoRealRootError(f"{kind}:1 resonance quadratic has discriminant {disc!r}")
    sq = math.sqrt(disc)
    # stable pair of roots (no cancellation)
    qq = -0.5 * (b + math.copysign(sq, b))
    roots = [qq / a, c / qq]
    in_range = [r for r in roots if 0 < r < 0.5]
    if len(in_range) == 1:
        return in_range[0]
    # outside (0, 1/2): follow the branch that is the small root classically
    return min(roots, key=abs)


def mu_c1_quadratic(eps: float, a2: float, w1: float) -> float:
    """Root of the 2:1 resonance quadratic in mu lying in (0, 1/2)."""
    return _solve_resonance(2, eps, a2, w1)


def mu_c2_quadratic(eps: float, a2: float, w1: float) -> float:
    """Root of the 3:1 resonance quadratic in mu lying in (0, 1/2)."""
    return _solve_resonance(3, eps, a2, w1)


def classical_resonance_mass(ratio: int) -> float:
    """Exact classical mass for w1 = ratio * w2.

    With w1^2 + w2^2 = 1 the product is r^2/(1+r^2)^2; solving
    27 (1 - gamma^2)/16 = that product gives gamma.
    """
    prod = ratio**2 / (1 + ratio**2) ** 2
    gamma = math.sqrt(1 - 16 * prod / 27)
    return (1 - gamma) / 2


# -- determinant -------------------------------------------------------------

def d_classical(u2):
    """``(644 u^4 - 541 u^2 + 36) / (8 (4u^2 - 1)(25u^2 - 4))`` in terms of u^2.

    Exact for Fraction/sympy input. Raises :class:`ResonancePoleError` at
    u^2 = 1/4 and u^2 = 4/25.
    """
    u2 = as_number(u2)
    f1 = 4 * u2 - 1
    f2 = 25 * u2 - 4
    for name, v in (("(4*u^2-1)", f1), ("(25*u^2-4)", f2)):
        if (abs(v) <= 1e-14) if isinstance(v, float) else (v == 0):
            raise ResonancePoleError(name, v)
    return (644 * u2 * u2 - 541 * u2 + 36) / (8 * f1 * f2)


def _d2(f: FreqFactors):
    s1, s2, p1, q1, p2, q2 = f.s1, f.s2, f.p1, f.q1, f.p2, f.q2
    t1, t2 = 9 + 4 * s1, 9 + 4 * s2
    qq = q1 * q1 * p1 * p1 * t1 * q2 * q2 * p2 * p2 * t2   # (1-5s)^2 == (-1+5s)^2
    h2 = f.check("(9-14*omega2^2-8*omega2^4)", 9 - 14 * s2 - 8 * s2 * s2)
    pref = s1 * s2 / 884736
    inner = [
        1620864 / (p1 * p1),
        2507364 / (-p1),
        706482 / (p1 * p1 * f.k12),
        71663616000 / (p1 * t2),
        8062156800 / (p2 * t2 * t2),
        1074954240 / (p1 * p1 * t2),
        112969617408 / qq,
        17146183680 / h2,
    ]
    uu = s1 * s2
    return total(
        [567 * (-151 + 16 * s1) / (16384 * p1 * p1 * t1 * t1)]
        + [pref * v for v in inner]
        + [1028577 * uu**2 / (16 * qq), 8026049 * uu**3 / (8 * qq), 303951 * uu**4 / (4 * qq)]
    )


def _d3(f: FreqFactors):
    w1, w2, s1, s2, p1, q1, p2, q2 = f.w1, f.w2, f.s1, f.s2, f.p1, f.q1, f.p2, f.q2
    t1, t2 = 9 + 4 * s1, 9 + 4 * s2
    rr = (-q1) * p1 * t1 * (-q2) * p2 * t2   # (1-5s1)(-1+2s1)(9+4s1)(1-5s2)(-1+2s2)(9+4s2)
    h2 = f.check("(9-14*omega2^2-8*omega2^4)", 9 - 14 * s2 - 8 * s2 * s2)
    lin = f.check("(2*omega1+omega2)(omega1+2*omega2)", (2 * w1 + w2) * (w1 + 2 * w2))
    t2_lin = 9 + 4 * w2                       # (9+4 omega2)^2: first power, as transcribed
    pre = 3 / (8192 * p1)
    head = [pre * 819, pre * 8064 / (lin * t2_lin * t2_lin), -pre * 6883328 / rr]
    pref = s1 * s2 / 147456
    inner = [
        706240 / p1,
        289737 / (-p1) * f.k12,              # multiplies, as transcribed
        -530841600 / (p1 * t2 * t2),
        59719680 / (p2 * t2 * t2),
        59719680 * s2 / (p1 * t2 * t2),
        3317760 / (p2 * p2 * t2),
        71516160 / h2,
        24772608 / (f.k21 * p2 * t2),
        22637076480 / rr,
    ]
    uu = s1 * s2
    tail = [-100200 * uu**2 / rr, 758804 * uu**3 / rr, 130401 * uu**4 / (2 * rr)]
    return total(head + [pref * v for v in inner] + tail)


def _d4(f: FreqFactors):
    s1, s2, p1, p2 = f.s1, f.s2, f.p1, f.p2
    h1 = f.check("(9-14*omega1^2-8*omega1^4)", 9 - 14 * s1 - 8 * s1 * s1)
    h2 = f.check("(9-14*omega2^2-8*omega2^4)", 9 - 14 * s2 - 8 * s2 * s2)
    g1 = f.check("(1-7*omega1^2+10*omega1^4)", 1 - 7 * s1 + 10 * s1 * s1)
    g2 = f.check("(1-7*omega2^2+10*omega2^4)", 1 - 7 * s2 + 10 * s2 * s2)
    block1 = [243 * v for v in (58477 / (p1 * p1), 89216 / h1, 7872 / (p2 * p2), 33456 / h2)]
    block2 = [2 * s1 * s2 * v for v in (
        5864788 / (-p1),
        -186165 / (p1 * p1 * f.k12),
        1885814784 / (f.k21 * h2),
        18210816 / (g1 * g2),
    )]
    tail = [-111689728 * s1 * s1 * s2 * s2 / (g1 * g2)]
    return total(block1 + block2 + tail) / 294912


def _d5(f: FreqFactors):
    s1, s2, p1, q1, q2 = f.s1, f.s2, f.p1, f.q1, f.q2
    t2 = 9 + 4 * s2
    h1 = f.check("(9-14*omega1^2-8*omega1^4)", 9 - 14 * s1 - 8 * s1 * s1)
    h2 = f.check("(9-14*omega2^2-8*omega2^4)", 9 - 14 * s2 - 8 * s2 * s2)
    ss = q1 * q1 * h1 * q2 * q2 * h2          # (-1+5s1)^2 (9-14s1-8s1^2) (-1+5s2)^2 (...)
    ss_neg = q1 * q1 * (-h1) * q2 * q2 * (-h2)
    block1 = [9 * v for v in (-2457 / (p1 * p1), 6426 / (-h1), -30450688 / ss)]
    block2 = [s1 * s2 * v for v in (
        90048 / (p1 * p1),
        139298 / (p1 * p1),
        39249 / (p1 * p1 * f.k12),
        447897600 / (p1 * t2),
        952565760 / h2,
        6276089856 / ss_neg,
        -594542592 / (f.k21 * (-h2)),
    )]
    uu = s1 * s2
    tail = [3159788544 * uu**2 / ss_neg, 49312045056 * uu**3 / ss_neg,
            3734949888 * uu**4 / ss_neg]
    return total(block1 + block2 + tail) / 49152


def _d6(f: FreqFactors):
    s1, s2, p1 = f.s1, f.s2, f.p1
    h2 = f.check("(9-14*omega2^2-8*omega2^4)", 9 - 14 * s2 - 8 * s2 * s2)
    terms = [29889 * 52 / (p1 * p1), 29889 * 7 / h2] + [2 * s1 * s2 * v for v in (
        -738 / (p1 * p1),
        93899 / (p1 * p1),
        91445760 / (f.k21 * h2),
    )]
    return total(terms) / (82944 * f.r3)


def _d7(f: FreqFactors):
    s1, s2, p1, p2 = f.s1, f.s2, f.p1, f.p2
    t2 = 9 + 4 * s2
    h2 = f.check("(9-14*omega2^2-8*omega2^4)", 9 - 14 * s2 - 8 * s2 * s2)
    k21 = f.k21
    block1 = [27 * v for v in (
        5904 / (p1 * p1),
        122157 / (k21 * p1 * p1),
        -758086 / (k21 * p1),
        5904 / h2,
    )]
    block2 = [2 * s1 * s2 * v for v in (
        -492 / (p1 * p1),
        370964 / p1,
        -58653 / (f.k12 * p1 * p1),
        13893120 / (t2 * t2 * (-p2)),
        -116702208 / (k21 * p2 * p2 * t2 * t2),
        103680 / (t2 * p2 * p2),
        870912 / (k21 * p2 * p2 * t2 * t2),
        62519040 / (-h2),
        -246177792 / (k21 * t2 * t2),
    )]
    return total(block1 + block2) / (110592 * f.r3)


def appendix2_coeffs(omega1, omega2) -> tuple:
    """(D2, D3, D4, D5, D6, D7) at the frequency pair.

    Raises
    ------
    SingularDenominatorError
        When a denominator factor vanishes; ``err.factor`` names it.
    """
    f = FreqFactors(omega1, omega2)
    return (_d2(f), _d3(f), _d4(f), _d5(f), _d6(f), _d7(f))


@dataclass(frozen=True)
class KamDeterminantParts:
    d_classical: float
    d: tuple          # (D2, ..., D7); empty in normal-form mode
    total: float
    mode: str = "closed"


def kam_determinant(p: SystemParams, freqs: FrequencyPair,
                    nf: NormalFormCoeffs | None = None,
                    mode: str = "closed") -> KamDeterminantParts:
    """Assemble D at (p, freqs).

    ``mode="closed"`` uses the classical rational term plus D2..D7.
    ``mode="normal-form"`` evaluates ``-(A w2^2 + 2 B w1 w2 + C w1^2)`` from
    the normal-form coefficients (computed when ``nf`` is None). It is a
    diagnostic and need not agree with the closed mode.
    """
    u2 = freqs.u**2
    dc = d_classical(u2)
    if mode == "closed":
        d = appendix2_coeffs(freqs.omega1, freqs.omega2)
        g = p.gamma
        tot = total([dc, (d[0] + d[1] * g) * p.eps, (d[2] + d[3] * g) * p.a2,
                     (d[4] + d[5] * g) * p.w1])
        return KamDeterminantParts(dc, d, tot, mode)
    if mode == "normal-form":
        if nf is None:
            nf = normal_form_abc(p, freqs)
        w1, w2 = freqs.omega1, freqs.omega2
        tot = -(nf.a * w2 * w2 + 2 * nf.b * w1 * w2 + nf.c * w1 * w1)
        return KamDeterminantParts(dc, (), tot, mode)
    raise ValueError(f"unknown mode {mode!r}")


# -- mu_c3 pipeline ----------------------------------------------------------

U0 = (541 - math.sqrt(199945)) / 1288


@dataclass(frozen=True)
class Mu3Pipeline:
    u0: float
    gamma0: float
    mu0: float
    omega1: float
    omega2: float
    u_coeffs: tuple        # (u1, ..., u6)
    d0: tuple              # (D2, ..., D7) at the unperturbed frequencies
    alphas: tuple
    mu_c3: float
    alpha_deviation: tuple = field(default=())

    def as_dict(self) -> dict:
        return asdict(self)


def classical_frequencies_at_u0() -> tuple[float, float]:
    root = math.sqrt(1 - 4 * U0)
    big = (1 + root) / 2
    return math.sqrt(big), math.sqrt(U0 / big)


def mu_c3_pipeline(eps: float = 0.0, a2: float = 0.0, w1: float = 0.0) -> Mu3Pipeline:
    """Rebuild mu_c3 = mu0 + a1 eps + a2 A2 + a3 W1 from D2..D7.

    D2..D7 are evaluated at the classical frequencies with u^2 = u0, i.e.
    the unperturbed problem at gamma = gamma0.
    """
    u0 = U0
    g0 = math.sqrt(1 - 16 * u0 / 27)
    mu0 = (1 - g0) / 2
    om1, om2 = classical_frequencies_at_u0()
    u1 = 27 * g0**2 / 16 + 9 * g0 / 8 + 9 / 8
    u2 = u4 = 27 * g0 / 4
    u3 = 117 * (1 - g0**2) / 16
    u5 = (27 * g0**2 + 165 * g0 + 35) / (16 * SQRT3)
    u6 = 27 * g0 / (4 * SQRT3)
    d0 = appendix2_coeffs(om1, om2)
    slope = 1288 * u0 - 541
    poles = 8 * (4 * u0 - 1) * (25 * u0 - 4)

    def alpha(ua, ub, dlo, dhi):
        return -(slope * ua + (dlo + dhi * g0) * poles) / (ub * slope)

    alphas = (alpha(u1, u2, d0[0], d0[1]),
              alpha(u3, u4, d0[2], d0[3]),
              alpha(u5, u6, d0[4], d0[5]))
    mu3 = mu0 + alphas[0] * eps + alphas[1] * a2 + alphas[2] * w1
    dev = tuple(a - b for a, b in zip(alphas, PUBLISHED_ALPHAS))
    return Mu3Pipeline(u0, g0, mu0, om1, om2, (u1, u2, u3, u4, u5, u6), d0, alphas, mu3, dev)


# -- critical mass sets and classification -----------------------------------

@dataclass(frozen=True)
class CriticalMassSet:
    mu_c0: float
    mu_c1: float
    mu_c2: float
    mu_c3: float

    def applicable(self, name: str) -> bool:
        v = getattr(self, name)
        if name == "mu_c0":
            return 0 < v <= 0.5
        return 0 < v < self.mu_c0

    @property
    def flags(self) -> dict:
        return {k: self.applicable(k) for k in ("mu_c0", "mu_c1", "mu_c2", "mu_c3")}

    def as_dict(self) -> dict:
        out = asdict(self)
        out.update({f"{k}_applicable": v for k, v in self.flags.items()})
        return out


def critical_masses(eps: float, a2: float, w1: float) -> CriticalMassSet:
    """All four closed-form critical masses at fixed (eps, A2, W1)."""
    return CriticalMassSet(mu_c0(eps, a2, w1), mu_c1(eps, a2, w1),
                           mu_c2(eps, a2, w1), mu_c3_closed(eps, a2, w1))


def critical_masses_for(q1: float = 1.0, a2: float = 0.0,
                        c_d: float = C_D_DEFAULT) -> CriticalMassSet:
    """Critical masses with W1 = (1 - mu)(1 - q1)/c_d substituted once.

    W1 depends on mu itself. Each mass is evaluated at W1 = 0, W1 is then
    taken at that candidate mass, and the formula is evaluated again.
    There is no further iteration.
    """
    eps = 1.0 - q1
    out = []
    for fn in (mu_c0, mu_c1, mu_c2, mu_c3_closed):
        candidate = fn(eps, a2, 0.0)
        out.append(fn(eps, a2, drag_strength(candidate, q1, c_d)))
    return CriticalMassSet(*out)


VERDICT_CODES = {"kam-stable": 0, "resonance-excluded": 1, "degenerate-D": 2,
                 "linearly-unstable": 3}


@dataclass(frozen=True)
class Verdict:
    label: str
    detail: str
    masses: CriticalMassSet

    @property
    def code(self) -> int:
        return VERDICT_CODES[self.label]


def classify(mu: float, p: SystemParams, tol: float = 1e-6) -> Verdict:
    """Nonlinear-stability verdict for mass ratio ``mu``.

    ``p`` supplies q1, A2 and c_d; W1 is evaluated at ``mu``.
    """
    w1 = drag_strength(mu, p.q1, p.c_d)
    cm = critical_masses(p.eps, p.a2, w1)
    if mu > cm.mu_c0:
        return Verdict("linearly-unstable", f"mu > mu_c0 = {cm.mu_c0:.9g}", cm)
    if abs(mu - cm.mu_c1) < tol:
        return Verdict("resonance-excluded", "2:1 resonance (mu_c1)", cm)
    if abs(mu - cm.mu_c2) < tol:
        return Verdict("resonance-excluded", "3:1 resonance (mu_c2)", cm)
    if abs(mu - cm.mu_c3) < tol:
        return Verdict("degenerate-D", "KAM determinant vanishes (mu_c3)", cm)
    return Verdict("kam-stable", "both KAM conditions hold", cm)


def classical_d_crosscheck(mu: float, variant: str = "verbatim") -> dict:
    """Compare D from the A, B, C tables with the classical closed form.

    Diagnostic only; the two are not expected to agree given the state of
    the coefficient tables.
    """
    from .linear import frequencies
    from .params import derive_params

    p = derive_params(mu)
    fr = frequencies(p)
    nf = normal_form_abc(p, fr, variant)
    closed = d_classical(fr.u**2)
    from_abc = kam_determinant(p, fr, nf, mode="normal-form").total
    # C_{1,1} taken as A_{1,1} with the frequencies swapped
    c_mirror = appendix1_entry("A11", fr.omega2, fr.omega1)
    w1, w2 = fr.omega1, fr.omega2
    from_mirror = -(nf.a * w2 * w2 + 2.0 * nf.b * w1 * w2 + c_mirror * w1 * w1)
    return {
        "mu": mu, "omega1": w1, "omega2": w2, "u2": fr.u**2,
        "A": nf.a, "B": nf.b, "C": nf.c, "variant": variant,
        "d_closed_form": closed, "d_from_abc": from_abc,
        "abs_difference": abs(from_abc - closed),
        "C_mirrored": c_mirror, "d_from_abc_mirrored_c": from_mirror,
    }

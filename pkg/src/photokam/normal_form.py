"""Fourth-order Birkhoff normal form about L4.

The coefficients A, B, C of ``(1/2)(A I1^2 + 2 B I1 I2 + C I2^2)`` are
assembled from 21 rational functions of the frequencies (the ``A_{1,i}``,
``B_{1,i}``, ``C_{1,i}`` tables). They are transcribed term by term, odd
coefficients included; ``variant="symmetric"`` swaps the one coefficient in
``A_{1,3}`` that breaks the A/C mirror structure (see :data:`A13_W6`).

All table functions accept floats or exact rationals (``Fraction``, sympy)
for omega1 and omega2.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction as R

from ._freqfactors import FreqFactors
from ._rational import total
from .errors import DomainError
from .linear import FrequencyPair
from .params import SystemParams

# omega1^6 coefficient of A_{1,3}: the transcribed value and the value that
# mirrors C_{1,3}'s omega2^6 term.
A13_W6 = {"verbatim": R(-8141559, 32), "symmetric": R(-407, 16)}


def _poly_over(coeffs, s, den):
    """Terms ``c_k s^k / den`` as a list, for compensated summation."""
    out = []
    power = 1
    for c in coeffs:
        out.append(c * power / den)
        power = power * s
    return out


def _a11(f, variant):
    return total(_poly_over([R(-9, 8), R(259, 24), R(-205, 18), R(31, 18)], f.s1, _d2(f.p1, f.q1)))


def _a12(f, variant):
    return total(_poly_over([R(1, 36), R(-13, 18), R(13, 27), R(167, 72), R(107, 108)],
                            f.s1, _d2(f.p1, f.q1)))


def _a13(f, variant):
    return total(_poly_over([R(1, 2), R(-421, 32), R(-19, 2), A13_W6[variant], R(29)],
                            f.s1, _d3(f.p1, f.q1)))


def _a14(f, variant):
    return total(_poly_over([R(1319, 436), R(-12639, 436), R(14275, 436), R(-799, 218)],
                            f.s1, _d2(f.p1, f.q1)))


def _a15(f, variant):
    return total(_poly_over([R(57, 52), R(-525, 52), R(-475, 26), R(1559, 26), R(283, 13)],
                            f.s1, _d3(f.p1, f.q1)))


def _a16(f, variant):
    s, r3, p = f.s1, f.r3, f.p1
    t = 9 + 4 * s
    return total([
        -2747 * s / (10368 * r3 * p),
        41 * t / (9216 * r3 * p * p),
        -93899 * t / (331776 * r3 * p),
        12875 * s * t / (82944 * r3 * p * p),
    ])


def _a17(f, variant):
    s, w, r3, p = f.s1, f.w1, f.r3, f.p1
    t = 9 + 4 * s
    return total([
        -1337 / (6144 * r3 * p),
        779 * w * t / (10368 * r3 * p * p),
        41 * t / (18432 * r3 * p * p),
        -227347 * s * t / (331776 * r3 * p),
        -37259 * t / (82944 * r3 * p),
        6517 * s * t / (3072 * r3 * p * p * f.k12),
    ])


def _d2(p, q):
    """``(1-2s)^2 (-1+5s)``, equal to ``(-1+2s)^2 (-1+5s)``."""
    return p * p * q


def _d3(p, q):
    """``(1-2s)^3 (-1+5s)^2``."""
    return -(p**3) * q * q


def _m_mixed(f):
    """``(1-5s1)(-1+2s1)(1-5s2)(1-2s2)``."""
    return -f.q1 * f.p1 * f.q2 * f.p2


def _m_plain(f):
    """``(1-5s1)(1-2s1)(1-5s2)(1-2s2)``."""
    return f.q1 * f.p1 * f.q2 * f.p2


def _k(f):
    """``(-1+2s1)(9+4s2)^2``."""
    t2 = 9 + 4 * f.s2
    return f.p1 * t2 * t2


def _b11(f, variant):
    u, m = f.w1_ * f.w2_, _m_mixed(f)
    return total([43 * u / (6 * m), 32 * u**3 / (3 * m)])


def _b12(f, variant):
    u, m = f.w1_ * f.w2_, _m_plain(f)
    return total([309 * u / (8 * m), 5904 * u / _k(f), -407 * u**3 / (6 * m)])


def _b13(f, variant):
    s1, s2 = f.s1, f.s2
    u, uu = f.w1_ * f.w2_, s1 * s2
    cub1 = f.check("(9-59*omega1^2+62*omega1^4+40*omega1^6)", 9 - 59 * s1 + 62 * s1**2 + 40 * s1**3)
    cub2 = f.check("(9-59*omega2^2+62*omega2^4+40*omega2^6)", 9 - 59 * s2 + 62 * s2**2 + 40 * s2**3)
    den = 8 * u * cub1 * cub2
    return total([1800 * u / _k(f)]
                 + [c * uu**j / den for j, c in
                    enumerate((10083, -614070, 400800, -3035216, -260802))])


def _b14(f, variant):
    u, m = f.w1_ * f.w2_, _m_plain(f)
    return total([247 * u / (4 * m), 6817 * u**3 / (36 * m)])


def _b15(f, variant):
    s1, s2 = f.s1, f.s2
    u, uu = f.w1_ * f.w2_, s1 * s2
    quad1 = f.check("(-9+14*omega1^2+8*omega1^4)", -9 + 14 * s1 + 8 * s1**2)
    quad2m = f.check("(-9-14*omega2^2+8*omega2^4)", -9 - 14 * s2 + 8 * s2**2)
    den = 32 * u * f.q1 ** 2 * f.q2 ** 2 * quad1 * quad2m
    return total([
        1800 * u / _k(f),
        -89211 / den,
        2042998 * uu / den,
        1028577 * uu**2 * s1 / den,      # extra omega1^2 kept as transcribed
        16052098 * uu**3 / den,
        1215804 * uu**4 / den,
    ])


def _b16(f, variant):
    u = f.w1_ * f.w2_
    return 1599 * f.r3 * (9 + 192 * u + f.s2) / (512 * u * _k(f))


def _b17(f, variant):
    w1, w2, s1, s2, r3 = f.w1_, f.w2_, f.s1, f.s2, f.r3
    quad2 = f.check("(-9+14*omega2^2+8*omega2^4)", -9 + 14 * s2 + 8 * s2**2)
    den = 512 * s1 * s2 * s2 * f.p1 * quad2
    w2_3 = w2 * s2
    # numerator parenthesis is unbalanced in the source; closed after the w2^7 term
    return total([
        -3 * r3 * 2398599 / den,
        3 * r3 * 9031680 * s2 / den,
        3 * r3 * 369 * w1 * w2_3 / den,
        -3 * r3 * 574 * w1 * w2_3 * s2 / den,
        -3 * r3 * 15744 * s1 * s2**3 / den,
        -3 * r3 * 328 * w2_3 * s2 * s2 / den,
        -192 * (-41601 + 41 * s1) * s2 * s2 / den,
    ])


def _c11(f, variant):
    s = f.s2
    # last term carries omega1 factors as transcribed
    return total(_poly_over([R(9, 8), R(205, 24), R(-205, 18)], s, _d2(f.p2, f.q2))
                 + [R(31, 18) * s**3 / _d2(f.p1, f.q1)])


def _c12(f, variant):
    return total(_poly_over([R(1, 36), R(-13, 18), R(13, 27), R(-167, 72), R(107, 108)],
                            f.s2, _d2(f.p2, f.q2)))


def _c13(f, variant):
    s = f.s2
    return total(_poly_over([R(1, 2), R(-421, 32), R(-19, 2), R(-407, 16)], s, _d3(f.p2, f.q2))
                 + [29 * s**4 / _d3(f.p1, f.q1)])


def _c14(f, variant):
    return total(_poly_over([R(1319, 436), R(-12639, 436), R(14275, 436), R(-799, 218)],
                            f.s2, _d2(f.p2, f.q2)))


def _c15(f, variant):
    return total(_poly_over([R(57, 52), R(525, 52), R(-475, 26), R(1559, 26), R(283, 13)],
                            f.s2, _d3(f.p2, f.q2)))


def _c16(f, variant):
    s = f.s2
    quad2 = f.check("(-9+14*omega2^2+8*omega2^4)", -9 + 14 * s + 8 * s * s)
    return -287 * f.r3 * (-3 + 32 * s + 48 * s * s) / (1024 * s * quad2)


def _c17(f, variant):
    s, w2, r3, s1 = f.s2, f.w2, f.r3, f.s1
    sq = f.check("(omega2^2-2*omega2^3)", s - 2 * w2 * s)
    z = 512 * (9 + 4 * s) * (-f.k21) * sq * sq
    return total([
        -r3 * 82 * s1 * 3 / z,
        r3 * 82 * s1 * 38 * s / z,
        -r3 * 82 * s1 * 16 * s**2 / z,
        -r3 * 82 * s1 * 96 * s**3 / z,
        3 * r3 * s * -142911 / z,
        3 * r3 * s * 195110 * s / z,
        3 * r3 * s * 74728 * s**2 / z,
        3 * r3 * s * 66784 * s**3 / z,
    ])


ENTRIES = {
    "A": (_a11, _a12, _a13, _a14, _a15, _a16, _a17),
    "B": (_b11, _b12, _b13, _b14, _b15, _b16, _b17),
    "C": (_c11, _c12, _c13, _c14, _c15, _c16, _c17),
}


def _check_variant(variant):
    if variant not in A13_W6:
        raise DomainError(f"unknown variant {variant!r}; expected one of {sorted(A13_W6)}")


def appendix1_entry(name: str, omega1, omega2, variant: str = "verbatim"):
    """One table entry, e.g. ``appendix1_entry("A11", w1, w2)``.

    Only the denominator factors this entry uses are checked, so ``A11`` is
    finite at omega2^2 = 1/5 even though the B and C tables are not.
    """
    _check_variant(variant)
    table, idx = name[0].upper(), int(name[-1])
    if table not in ENTRIES or not 1 <= idx <= 7 or len(name) not in (3, 4):
        raise DomainError(f"unknown entry {name!r}")
    return ENTRIES[table][idx - 1](FreqFactors(omega1, omega2), variant)


@dataclass(frozen=True)
class AppendixTables:
    a1: tuple
    b1: tuple
    c1: tuple


def appendix1_coeffs(omega1, omega2, variant: str = "verbatim") -> AppendixTables:
    """Evaluate all 21 table entries at (omega1, omega2).

    Raises
    ------
    SingularDenominatorError
        When any denominator factor vanishes; ``err.factor`` names it.
    """
    _check_variant(variant)
    f = FreqFactors(omega1, omega2)
    f.require_core()
    return AppendixTables(*(tuple(fn(f, variant) for fn in ENTRIES[k]) for k in "ABC"))


@dataclass(frozen=True)
class NormalFormCoeffs:
    a: float
    b: float
    c: float
    a1: tuple
    b1: tuple
    c1: tuple
    resonance: str | None = None
    variant: str = "verbatim"

    def frequency_corrections(self, i1: float, i2: float) -> tuple[float, float]:
        """Second-order frequency shifts ``f2 = A I1 + B I2``, ``g2 = B I1 + C I2``."""
        return self.a * i1 + self.b * i2, self.b * i1 + self.c * i2


def combine(t: tuple, gamma, eps, a2, w1):
    """``t1 + (t2 + t3 g) eps + (t4 + t5 g) A2 + (t6 + t7 g) W1``."""
    return total([t[0], (t[1] + t[2] * gamma) * eps,
                  (t[3] + t[4] * gamma) * a2, (t[5] + t[6] * gamma) * w1])


def normal_form_abc(p: SystemParams, freqs: FrequencyPair,
                    variant: str = "verbatim") -> NormalFormCoeffs:
    tab = appendix1_coeffs(freqs.omega1, freqs.omega2, variant)
    args = (p.gamma, p.eps, p.a2, p.w1)
    return NormalFormCoeffs(
        combine(tab.a1, *args), combine(tab.b1, *args), combine(tab.c1, *args),
        tab.a1, tab.b1, tab.c1, resonance=near_resonance(freqs), variant=variant,
    )


def near_resonance(freqs: FrequencyPair, tol: float = 1e-5) -> str | None:
    """'2:1' or '3:1' when ``|w1 - k w2| < tol``; looser than the flag on
    :class:`FrequencyPair`, which only marks exact resonance."""
    if freqs.resonance:
        return freqs.resonance
    for k in (2, 3):
        if abs(freqs.omega1 - k * freqs.omega2) < tol:
            return f"{k}:1"
    return None


@dataclass(frozen=True)
class ActionPair:
    i1: float
    i2: float
    phi1: float = 0.0
    phi2: float = 0.0

    def __post_init__(self):
        if self.i1 < 0 or self.i2 < 0:
            raise DomainError(f"actions must be non-negative, got ({self.i1}, {self.i2})")
        object.__setattr__(self, "phi1", math.fmod(self.phi1, 2 * math.pi) % (2 * math.pi))
        object.__setattr__(self, "phi2", math.fmod(self.phi2, 2 * math.pi) % (2 * math.pi))


def normalized_hamiltonian(actions: ActionPair, freqs: FrequencyPair,
                           nf: NormalFormCoeffs) -> float:
    i1, i2 = actions.i1, actions.i2
    return (freqs.omega1 * i1 - freqs.omega2 * i2
            + 0.5 * (nf.a * i1 * i1 + 2 * nf.b * i1 * i2 + nf.c * i2 * i2))


def small_divisor(omega1: float, omega2: float, p: int, q: int) -> float:
    """``[w1^2 - (w1 p - w2 q)^2][w2^2 - (w1 p - w2 q)^2]``."""
    v = omega1 * p - omega2 * q
    return (omega1**2 - v * v) * (omega2**2 - v * v)


DIVISOR_PAIRS = ((0, 0), (2, 0), (0, 2), (1, 1), (1, -1))


@dataclass(frozen=True)
class DivisorReport:
    min_combination: float
    argmin: tuple[int, int]
    vanishing: tuple[tuple[int, int], ...]
    divisors: dict
    vanishing_divisors: tuple[tuple[int, int], ...]

    @property
    def resonant(self) -> bool:
        return bool(self.vanishing or self.vanishing_divisors)

    def as_dict(self) -> dict:
        return {
            "min_combination": self.min_combination,
            "argmin": list(self.argmin),
            "vanishing": [list(k) for k in self.vanishing],
            "divisors": {f"{p},{q}": v for (p, q), v in self.divisors.items()},
            "vanishing_divisors": [list(k) for k in self.vanishing_divisors],
            "resonant": self.resonant,
        }


def moser_divisor_check(freqs: FrequencyPair, order: int = 4,
                        tol: float = 1e-5) -> DivisorReport:
    """Scan ``k1 w1 + k2 w2`` for ``1 <= |k1| + |k2| <= order``.

    Pairs are taken up to overall sign. A combination or divisor counts as
    vanishing when its magnitude is below ``tol``.
    """
    w1, w2 = freqs.omega1, freqs.omega2
    if w1 <= 0 or w2 <= 0:
        raise DomainError("frequencies must be positive")
    combos = {}
    for k1, k2 in itertools.product(range(0, order + 1), range(-order, order + 1)):
        if (k1, k2) == (0, 0) or abs(k1) + abs(k2) > order or (k1 == 0 and k2 < 0):
            continue
        combos[(k1, k2)] = abs(k1 * w1 + k2 * w2)
    argmin = min(combos, key=combos.get)
    vanishing = tuple(k for k, v in combos.items() if v < tol)
    divisors = {pq: small_divisor(w1, w2, *pq) for pq in DIVISOR_PAIRS}
    vanishing_div = tuple(pq for pq, v in divisors.items() if abs(v) < tol)
    return DivisorReport(combos[argmin], argmin, vanishing, divisors, vanishing_div)

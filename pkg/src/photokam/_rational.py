"""Helpers for rational functions that accept floats or exact numbers.

The coefficient tables are written once and evaluated with either ``float``
(production, compensated summation) or ``fractions.Fraction`` / sympy
rationals (test fixtures, exact arithmetic).
"""

from __future__ import annotations

import math
from fractions import Fraction

from .errors import SingularDenominatorError

FLOAT_ZERO_TOL = 1e-12


def is_exact(x) -> bool:
    return not isinstance(x, float)


def total(terms) -> object:
    """Sum terms with ``math.fsum`` when all are floats, exactly otherwise."""
    terms = list(terms)
    if all(isinstance(t, float) for t in terms):
        return math.fsum(terms)
    acc = 0
    for t in terms:
        acc = acc + t
    return acc


def sqrt3(like):
    """sqrt(3) in the number system of ``like``.

    sympy inputs get the exact radical; Fraction inputs have no exact
    sqrt(3), so the float is returned and the result degrades to float.
    """
    try:
        import sympy
    except ImportError:  # pragma: no cover
        sympy = None
    if sympy is not None and isinstance(like, sympy.Basic):
        return sympy.sqrt(3)
    return math.sqrt(3.0)


def nonzero(name: str, value):
    """Return ``value`` unless it vanishes; raise naming the factor otherwise."""
    if isinstance(value, float):
        if abs(value) <= FLOAT_ZERO_TOL or not math.isfinite(value):
            raise SingularDenominatorError(name, value)
    elif value == 0:
        raise SingularDenominatorError(name, value)
    return value


def as_number(x):
    """Ints become Fractions so that ``1/x`` stays exact."""
    if isinstance(x, int):
        return Fraction(x)
    return x

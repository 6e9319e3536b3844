"""Named denominator factors shared by both coefficient tables."""

from __future__ import annotations

from ._rational import as_number, nonzero, sqrt3

# resonance/singular set that every full-table evaluation requires
CORE_FACTORS = ("w1_", "w2_", "p1", "q1", "p2", "q2", "k12", "k21")


class FreqFactors:
    """Denominator factors of a frequency pair, checked on first access.

    Reading ``p1`` raises :class:`SingularDenominatorError` naming
    ``(-1+2*omega1^2)`` if that factor vanishes, and so on. A single table
    entry therefore only fails on the factors it actually divides by.
    """

    _names = {
        "w1_": "omega1",
        "w2_": "omega2",
        "p1": "(-1+2*omega1^2)",
        "q1": "(-1+5*omega1^2)",
        "p2": "(-1+2*omega2^2)",
        "q2": "(-1+5*omega2^2)",
        "k12": "(4*omega1^2-omega2^2)",
        "k21": "(omega1^2-4*omega2^2)",
    }

    def __init__(self, omega1, omega2):
        w1, w2 = as_number(omega1), as_number(omega2)
        self.w1, self.w2 = w1, w2
        self.s1, self.s2 = w1 * w1, w2 * w2
        self.r3 = sqrt3(w1)
        s1, s2 = self.s1, self.s2
        self._raw = {
            "w1_": w1, "w2_": w2,
            "p1": -1 + 2 * s1, "q1": -1 + 5 * s1,
            "p2": -1 + 2 * s2, "q2": -1 + 5 * s2,
            "k12": 4 * s1 - s2, "k21": s1 - 4 * s2,
        }

    def __getattr__(self, key):
        raw = self.__dict__.get("_raw")
        if raw is None or key not in raw:
            raise AttributeError(key)
        value = nonzero(self._names[key], raw[key])
        setattr(self, key, value)
        return value

    def require_core(self) -> None:
        for key in CORE_FACTORS:
            getattr(self, key)

    def check(self, name: str, value):
        return nonzero(name, value)

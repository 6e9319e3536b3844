"""Physical parameters of the photogravitational problem with P-R drag.

All quantities are in normalized rotating-frame units: unit separation of
the primaries, unit total mass, unit mean motion for the classical problem.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from pathlib import Path

from .errors import DomainError

C_D_DEFAULT = 299792458.0

CONFIG_KEYS = {"mu": "mu", "q1": "q1", "a2": "a2", "cd": "c_d"}


@dataclass(frozen=True)
class SystemParams:
    """Raw inputs plus derived quantities.

    Build through :func:`derive_params`; the derived fields are computed in
    ``__post_init__`` so they can never drift from the raw ones.
    """

    mu: float
    q1: float = 1.0
    a2: float = 0.0
    c_d: float = C_D_DEFAULT
    eps: float = field(init=False)
    w1: float = field(init=False)
    n: float = field(init=False)
    gamma: float = field(init=False)
    delta: float = field(init=False)

    def __post_init__(self):
        vals = (self.mu, self.q1, self.a2, self.c_d)
        if not all(math.isfinite(v) for v in vals):
            raise DomainError(f"non-finite parameter in {vals}")
        if not 0.0 < self.mu <= 0.5:
            raise DomainError(f"mu={self.mu} outside (0, 0.5]")
        if not 0.0 < self.q1 <= 1.0:
            raise DomainError(f"q1={self.q1} outside (0, 1]")
        if self.a2 < 0.0:
            raise DomainError(f"a2={self.a2} is negative")
        if self.c_d <= 0.0:
            raise DomainError(f"c_d={self.c_d} must be positive")
        set_ = object.__setattr__
        set_(self, "eps", 1.0 - self.q1)
        set_(self, "w1", (1.0 - self.mu) * (1.0 - self.q1) / self.c_d)
        set_(self, "n", math.sqrt(1.0 + 1.5 * self.a2))
        set_(self, "gamma", 1.0 - 2.0 * self.mu)
        set_(self, "delta", self.q1 ** (1.0 / 3.0))

    @property
    def is_classical(self) -> bool:
        return self.q1 == 1.0 and self.a2 == 0.0

    def replace(self, **changes) -> SystemParams:
        raw = dict(mu=self.mu, q1=self.q1, a2=self.a2, c_d=self.c_d)
        raw.update(changes)
        return SystemParams(**raw)

    def as_dict(self) -> dict:
        return dict(
            mu=self.mu, q1=self.q1, a2=self.a2, c_d=self.c_d, eps=self.eps,
            w1=self.w1, n=self.n, gamma=self.gamma, delta=self.delta,
        )


def derive_params(mu: float, q1: float = 1.0, a2: float = 0.0,
                  c_d: float = C_D_DEFAULT) -> SystemParams:
    """Validate raw inputs and return the populated parameter record.

    Raises
    ------
    DomainError
        If ``mu`` is outside (0, 0.5], ``q1`` outside (0, 1], ``a2 < 0`` or
        ``c_d <= 0``.
    """
    return SystemParams(float(mu), float(q1), float(a2), float(c_d))


def drag_strength(mu: float, q1: float, c_d: float = C_D_DEFAULT) -> float:
    """W1 = (1 - mu)(1 - q1)/c_d without building a full record."""
    return (1.0 - mu) * (1.0 - q1) / c_d


def parse_config(text: str) -> dict[str, float]:
    """Parse ``key=value`` lines (keys mu, q1, a2, cd); '#' starts a comment."""
    out: dict[str, float] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise DomainError(f"config line {lineno}: expected key=value, got {raw!r}")
        key, value = (s.strip() for s in line.split("=", 1))
        if key not in CONFIG_KEYS:
            raise DomainError(f"config line {lineno}: unknown key {key!r}")
        try:
            out[CONFIG_KEYS[key]] = float(value)
        except ValueError:
            raise DomainError(f"config line {lineno}: {value!r} is not a number") from None
    return out


def load_config(path: str | Path) -> dict[str, float]:
    return parse_config(Path(path).read_text())

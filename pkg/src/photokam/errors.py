"""Exception hierarchy shared by every module.

Domain errors (bad inputs) map to CLI exit code 2, numerical singularities
to exit code 3.
"""


class DomainError(ValueError):
    """Parameters outside the validity range of a formula."""


class DegeneratePointError(DomainError):
    """Equilibrium formula undefined for the requested parameters."""


class NoRealRootError(DomainError):
    """A resonance quadratic has negative discriminant."""


class InstabilityError(DomainError):
    """Frequencies are complex: the point is linearly unstable."""


class NonEquilibriumError(DomainError):
    """A point passed for linearization is not an equilibrium."""


class SingularityError(ArithmeticError):
    """A denominator or distance vanished.

    ``factor`` names the offending expression so that callers (and the CLI)
    can report which factor is responsible.
    """

    def __init__(self, factor: str, value: float | None = None):
        self.factor = factor
        self.value = value
        msg = f"singular factor {factor}"
        if value is not None:
            msg += f" (value {value!r})"
        super().__init__(msg)


class SingularDenominatorError(SingularityError):
    pass


class ResonancePoleError(SingularityError):
    pass


class CollisionError(SingularityError):
    pass


class StepUnderflowError(ArithmeticError):
    """Adaptive integrator step fell below the representable minimum."""

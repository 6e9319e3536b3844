"""Nonlinear stability of the triangular Lagrange points under radiation
pressure, oblateness of the smaller primary and Poynting-Robertson drag."""

from .dynamics import PhaseState, integrate, jacobi_constant, linearize
from .equilibria import (EquilibriumPoint, refine_equilibrium, series_point_L4,
                         triangular_point_full)
from .errors import (CollisionError, DomainError, ResonancePoleError,
                     SingularDenominatorError, SingularityError, StepUnderflowError)
from .kam import (CriticalMassSet, classify, critical_masses, critical_masses_for,
                  d_classical, kam_determinant, mu_c1, mu_c2, mu_c3_closed, mu_c3_pipeline)
from .linear import FrequencyPair, frequencies, frequency_relations, mu_c0
from .normal_form import appendix1_coeffs, moser_divisor_check, normal_form_abc
from .params import SystemParams, derive_params

__all__ = [
    "PhaseState", "integrate", "jacobi_constant", "linearize",
    "EquilibriumPoint", "refine_equilibrium", "series_point_L4", "triangular_point_full",
    "CollisionError", "DomainError", "ResonancePoleError", "SingularDenominatorError",
    "SingularityError", "StepUnderflowError",
    "CriticalMassSet", "classify", "critical_masses", "critical_masses_for",
    "d_classical", "kam_determinant", "mu_c1", "mu_c2", "mu_c3_closed", "mu_c3_pipeline",
    "FrequencyPair", "frequencies", "frequency_relations", "mu_c0",
    "appendix1_coeffs", "moser_divisor_check", "normal_form_abc",
    "SystemParams", "derive_params",
]

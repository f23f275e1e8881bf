"""Deformed oscillator and Kepler Hamiltonians on conformally flat planes.

A family catalog of position-dependent-mass systems with extra integrals
of motion, a forward-mode bracket engine that certifies each conservation
claim numerically, an adaptive symplectic-flow integrator with invariant
monitors, and flat-plane cross-checks of the n = 0 reductions.
"""

from .brackets import (BRACKET_TOL, gradient, gradient_fd, poisson_bracket,
                       poisson_bracket_fd, scaled_residual)
from .certify import (Certificate, CheckResult, SampleConfig,
                      bracket_residual_suite, certificate, independence_rank,
                      involution_check, killing_tensor_check)
from .dual import Dual
from .dynamics import (COMPLETED, SINGULARITY, STEP_FAILURE, DriftReport,
                       IntegratorConfig, Trajectory, drift_report,
                       final_state_distance, fixed_step_config,
                       hamilton_vector_field, integrate, time_reversal_defect)
from .errors import PdmError
from .families import (CATALOG, euclid_equivalence_residual,
                       euclidean_potential, hamiltonian, kinetic, potential)
from .geometry import (curvature_R1212, killing_vector, lie_derivative_metric,
                       metric, noether_momentum)
from .observables import (complex_a, complex_m, complex_n, family_integrals,
                          family_observables, integral, lambda_factor)
from .phase import (FAMILIES, DomainBox, ModelParams, PhasePoint,
                    polar_to_cartesian, sample_points, validate)

__version__ = "0.1.0"

__all__ = [
    "BRACKET_TOL", "CATALOG", "COMPLETED", "Certificate", "CheckResult",
    "DomainBox", "DriftReport", "Dual", "FAMILIES", "IntegratorConfig",
    "ModelParams", "PdmError", "PhasePoint", "SINGULARITY", "STEP_FAILURE",
    "SampleConfig", "Trajectory", "bracket_residual_suite", "certificate",
    "complex_a", "complex_m", "complex_n", "curvature_R1212", "drift_report",
    "euclid_equivalence_residual", "euclidean_potential", "family_integrals",
    "family_observables", "final_state_distance", "fixed_step_config",
    "gradient", "gradient_fd", "hamilton_vector_field", "hamiltonian",
    "independence_rank", "integral", "integrate", "involution_check",
    "killing_tensor_check", "killing_vector", "kinetic", "lambda_factor",
    "lie_derivative_metric", "metric", "noether_momentum", "poisson_bracket",
    "poisson_bracket_fd", "polar_to_cartesian", "potential", "sample_points",
    "scaled_residual", "time_reversal_defect", "validate",
]

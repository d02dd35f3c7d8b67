"""Finite element curve shortening flow with orthogonal boundary contact,
coupled to a reaction-diffusion equation on the evolving curve."""

from ._core import (
    ConfigError,
    SolverError,
    __version__,
    boundary_eval,
    compare,
    convergence_study,
    eoc,
    exact_curve,
    exact_field,
    run,
    run_config_file,
)

__all__ = [
    "ConfigError",
    "SolverError",
    "__version__",
    "boundary_eval",
    "compare",
    "convergence_study",
    "eoc",
    "exact_curve",
    "exact_field",
    "run",
    "run_config_file",
]

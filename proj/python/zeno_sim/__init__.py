"""Python bindings for the zeno simulator."""

from ._zeno import (
    NumericalError,
    ProjectorKind,
    RabiModel,
    ValidationError,
    detect,
    evolve_with_measurements,
    hermitian_propagator,
    lindblad_delta_train,
    reduce,
    reference_model,
    run_experiment,
    survival_curve,
)

__all__ = [
    "NumericalError",
    "ProjectorKind",
    "RabiModel",
    "ValidationError",
    "detect",
    "evolve_with_measurements",
    "hermitian_propagator",
    "lindblad_delta_train",
    "reduce",
    "reference_model",
    "run_experiment",
    "survival_curve",
]

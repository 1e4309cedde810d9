"""Constraint analysis and fractional angular-momentum spectra for a trapped polarizable atom."""

from ._core import (
    FieldSelection,
    FracamError,
    HamiltonianSystem,
    ModelConfig,
    PhaseExpression,
    ReductionMode,
    analyze,
    build_model,
    fam_formula,
    fam_spectrum,
    full_model_angular_spectrum,
    integrate,
    poisson_bracket,
    run_acceptance,
)

__all__ = [
    "FieldSelection",
    "FracamError",
    "HamiltonianSystem",
    "ModelConfig",
    "PhaseExpression",
    "ReductionMode",
    "analyze",
    "build_model",
    "fam_formula",
    "fam_spectrum",
    "full_model_angular_spectrum",
    "integrate",
    "poisson_bracket",
    "run_acceptance",
]

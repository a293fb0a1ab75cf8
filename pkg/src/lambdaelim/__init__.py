"""Adiabatic elimination of the excited state of a driven lambda system."""

from .core import (
    REFERENCE_INITIAL,
    REFERENCE_PARAMS,
    ConfigError,
    DegeneracyError,
    LambdaElimError,
    LambdaParams,
    ReducedParams,
    RegimeError,
    RegimeWarning,
    State2,
    State3,
    Trajectory,
    expand,
    reduce,
)
from .exact import (
    ModeDecomposition,
    build_hamiltonian,
    characteristic_roots,
    decompose,
    exact_propagator,
    propagate_exact,
)
from .elim import (
    EffectiveHamiltonian2,
    gamma_relevant,
    gamma_relevant_exact,
    propagate_effective,
    rough_effective,
    shifted_rough_effective,
)
from .resolvent import (
    ProjectedResolvent,
    ResidueSet,
    displacement_operator,
    green_effective,
    pole_approx_resolvent,
    projected_propagator,
    residues,
    resolvent_poles,
)
from .analysis import (
    ErrorReport,
    ScalingFit,
    compare_trajectories,
    driven_mode_solution,
    expansion_check,
    scaling_study,
)

__all__ = [
    "REFERENCE_INITIAL",
    "REFERENCE_PARAMS",
    "ConfigError",
    "DegeneracyError",
    "LambdaElimError",
    "LambdaParams",
    "ReducedParams",
    "RegimeError",
    "RegimeWarning",
    "State2",
    "State3",
    "Trajectory",
    "expand",
    "reduce",
    "ModeDecomposition",
    "build_hamiltonian",
    "characteristic_roots",
    "decompose",
    "exact_propagator",
    "propagate_exact",
    "EffectiveHamiltonian2",
    "gamma_relevant",
    "gamma_relevant_exact",
    "propagate_effective",
    "rough_effective",
    "shifted_rough_effective",
    "ProjectedResolvent",
    "ResidueSet",
    "displacement_operator",
    "green_effective",
    "pole_approx_resolvent",
    "projected_propagator",
    "residues",
    "resolvent_poles",
    "ErrorReport",
    "ScalingFit",
    "compare_trajectories",
    "driven_mode_solution",
    "expansion_check",
    "scaling_study",
]

__version__ = "0.1.0"

"""Model-predictive coordination of connected vehicles at a signalized junction.

The package bundles the full control stack for a simulated approach
corridor: a velocity scheduler keyed to the signal timing, pairwise
collision-avoidance halfplanes, online control-invariant terminal sets,
a condensed quadratic-program controller with a certified terminal
weight, cooperative lane changing, and a synchronous multi-vehicle
simulation loop with a command-line front end.
"""

__version__ = "0.1.0"

from .geometry import Polytope, linear_image, set_equal  # noqa: F401
from .vehicle import (  # noqa: F401
    LinearModel,
    VehicleParams,
    continuous_matrices,
    discretize,
    linear_model,
    nonlinear_step,
    step,
)

__all__ = [
    "Polytope",
    "linear_image",
    "set_equal",
    "VehicleParams",
    "LinearModel",
    "continuous_matrices",
    "discretize",
    "linear_model",
    "step",
    "nonlinear_step",
]

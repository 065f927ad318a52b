"""Conway k-spirals, static equilibria of convex polyhedra and mono-monostatic 0-skeletons."""

from monostatic.errors import (
    ConstructionError,
    DegenerateError,
    InvalidParameterError,
    MonostaticError,
    NonConvexError,
    OptimizationError,
    OutsideBodyError,
)
from monostatic.geometry import Polygon2D, Polyhedron, hull_polyhedron
from monostatic.spiral import (
    SpiralParams,
    SpiralProfile,
    apex_lift,
    build_double_spiral,
    build_k_spiral,
    classical_spiral,
    modified_spiral,
    outwardness,
    profile,
)
from monostatic.mass import Centroid, MassModel, balance_residual, centroid, zc_closed_form
from monostatic.equilibria import (
    EquilibriumReport,
    classify,
    classify_2d,
    complexity,
    radial_monotonicity,
    sampling_oracle,
    tipping_test,
)
from monostatic.optimize import OptimizationResult, objective, objective_gradient, optimize, scan

__version__ = "0.1.0"

__all__ = [
    "ConstructionError",
    "DegenerateError",
    "InvalidParameterError",
    "MonostaticError",
    "NonConvexError",
    "OptimizationError",
    "OutsideBodyError",
    "Polygon2D",
    "Polyhedron",
    "hull_polyhedron",
    "SpiralParams",
    "SpiralProfile",
    "apex_lift",
    "build_double_spiral",
    "build_k_spiral",
    "classical_spiral",
    "modified_spiral",
    "outwardness",
    "profile",
    "Centroid",
    "MassModel",
    "balance_residual",
    "centroid",
    "zc_closed_form",
    "EquilibriumReport",
    "classify",
    "classify_2d",
    "complexity",
    "radial_monotonicity",
    "sampling_oracle",
    "tipping_test",
    "OptimizationResult",
    "objective",
    "objective_gradient",
    "optimize",
    "scan",
]

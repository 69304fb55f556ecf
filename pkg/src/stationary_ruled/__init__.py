"""Stationary surfaces of the Dirichlet energy written as an anisotropic area.

Ruled, rotational and cylindrical families with verification oracles: the
pointwise anisotropic mean curvature identity, the degree-5 coefficient
extraction for ruled surfaces, a finite-difference PDE check and a
discrete first-variation test.
"""

from .anisotropy import anisotropic_mean_curvature, lambda_residual, lambda_value
from .cases import SCHEMAS, build_case
from .errors import ConfigError, GeometryError
from .geometry import fundamental_data, graph_map, jet_of, mean_curvature
from .ruled import Branch, RuledSpec, branch_coefficients, coeff_extract, detect_branch
from .verify import run_checks

__all__ = [
    "Branch",
    "ConfigError",
    "GeometryError",
    "RuledSpec",
    "SCHEMAS",
    "anisotropic_mean_curvature",
    "branch_coefficients",
    "build_case",
    "coeff_extract",
    "detect_branch",
    "fundamental_data",
    "graph_map",
    "jet_of",
    "lambda_residual",
    "lambda_value",
    "mean_curvature",
    "run_checks",
]

__version__ = "0.1.0"

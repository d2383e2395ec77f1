"""SUSY factorization toolkit for 1-D position-dependent-mass Schrodinger problems.

Units: hbar = 2 m0 = 1 throughout, so the kinetic operator is -d/dz (1/M) d/dz.
"""

from .expr import (DomainError, Expression, ExpressionError, ParseError,
                   UnknownIdentifierError, differentiate, evaluate,
                   evaluate_grid, parse, to_text)
from .mass import (NAMED_ORDERINGS, EffectivePotential, MassProfile,
                   NonPositiveMassError, OrderingParameters, constant_mass_value,
                   effective_potential, inverse_sqrt_mass, mass_at, mass_profile,
                   modification_term, named_ordering, ordering_from_alpha_gamma,
                   quotient_square_mass, quotient_square_parameter)
from .numerics import (ConvergenceEstimate, ConvergenceFailure, Grid,
                       GridFunction, Spectrum, TridiagonalHamiltonian,
                       ZeroFunctionError, adaptive_simpson, convergence_order,
                       cumulative_integral, discretize, lowest_eigenpairs,
                       normalize, sturm_count_below)
from .shapeinv import (ClosedFormUnavailableError, MorseLikeModel,
                       UniformShiftModel, morse_coefficients,
                       morse_f0_quadrature, morse_like_model,
                       morse_superpotential_closed_form,
                       morse_superpotential_expression,
                       morse_superpotential_general, pct_coordinate, si_spectrum,
                       uniform_shift_ground_state, uniform_shift_model,
                       uniform_shift_spectrum, uniform_shift_superpotential)
from .susy import (GridMismatchError, PartnerPair, SuperpotentialDecomposition,
                   apply_ladder, delta_w, duality_check, energy_shift_term,
                   grid_max_abs, modification_residual, partner_potentials,
                   riccati_residual_unperturbed)

__version__ = "0.1.0"

__all__ = [
    "DomainError", "Expression", "ExpressionError", "ParseError",
    "UnknownIdentifierError", "differentiate", "evaluate", "evaluate_grid",
    "parse", "to_text",
    "NAMED_ORDERINGS", "EffectivePotential", "MassProfile",
    "NonPositiveMassError", "OrderingParameters", "constant_mass_value",
    "effective_potential", "inverse_sqrt_mass", "mass_at", "mass_profile",
    "modification_term", "named_ordering", "ordering_from_alpha_gamma",
    "quotient_square_mass", "quotient_square_parameter",
    "ConvergenceEstimate", "ConvergenceFailure", "Grid", "GridFunction",
    "Spectrum", "TridiagonalHamiltonian", "ZeroFunctionError",
    "adaptive_simpson", "convergence_order", "cumulative_integral",
    "discretize", "lowest_eigenpairs", "normalize", "sturm_count_below",
    "ClosedFormUnavailableError", "MorseLikeModel", "UniformShiftModel",
    "morse_coefficients", "morse_f0_quadrature", "morse_like_model",
    "morse_superpotential_closed_form", "morse_superpotential_expression",
    "morse_superpotential_general", "pct_coordinate", "si_spectrum",
    "uniform_shift_ground_state", "uniform_shift_model",
    "uniform_shift_spectrum", "uniform_shift_superpotential",
    "GridMismatchError", "PartnerPair", "SuperpotentialDecomposition",
    "apply_ladder", "delta_w", "duality_check", "energy_shift_term",
    "grid_max_abs", "modification_residual", "partner_potentials",
    "riccati_residual_unperturbed",
    "__version__",
]

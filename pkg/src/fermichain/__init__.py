"""Entanglement entropy of quadratic fermion chains and its logarithmic scaling."""

__version__ = "0.1.0"

from .asymptotics import compute_K, fit_entropy, predict, predict_kappa, predict_kappa_tilde
from .correlation import (
    CorrelationMatrix,
    pfaffian,
    polar_factor,
    t_matrix_finite,
    t_matrix_limit_unitary,
    truncate,
    two_point_correlator,
    wick_expectation,
)
from .entropy import EntropyCurve, binary_entropy, entanglement_entropy, entropy_curve, entropy_via_contour, mode_spectrum
from .errors import ChainError, DegenerateGroundStateError, DegenerateSymbolError, ModelError, SpectralBoundError
from .model import CouplingLaw, ModelSpec, SymmetryClass, build_A_matrix, build_B_matrix, validate, xx_model
from .symbol import (
    JumpSet,
    TrigSymbol,
    dispersion_finite,
    find_jumps,
    sign_symbol_fourier,
    sign_symbol_values,
    symbol_from_model,
)

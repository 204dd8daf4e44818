"""Numerical laboratory for sub-Hardy spaces ``H_k(b)`` of radial kernels on the ball.

The package computes Gram-matrix positivity, finite-sample norm and
multiplier-norm bounds, orthonormal-monomial truncations with exact
multiplication matrices, the model of ``H_k(b)`` inside ``H_k + L_Delta``, and
density residuals. Point dimension ``d`` is the number of complex
coordinates; the unit disk is ``d = 1``.
"""

from .errors import (ConfigError, DeltaNotInjectiveError, DimensionMismatchError, NotPositiveError,
                     OutsideBallError, RKHSLabError, TailBoundError)
from .kernels import (BallAutomorphism, BergmanType, BlaschkeProduct, Point, Polynomial, Product, RadialCoeff,
                      RadialPower, RowMultiplier, SampleSet, ScaledCoordinate, SubKernel, dirichlet, eval_kernel,
                      eval_multiplier, radial_coeffs, scalar, szego, taylor_expand_component)
from .gram import (GramMatrix, PsdReport, PsdVerdict, build_gram, check_psd, mult_norm_estimate,
                   norm_lower_bound)
from .truncation import (OperatorMatrix, TruncatedSpace, defect_matrices, hkb_norm_curve, hkb_norm_estimate,
                         multiplication_matrix)
from .inequalities import (backward_shift_check, check_bergman_type_inequality, check_shimorin,
                           hypercontraction_tower)
from .model import (ModelPair, ModelSpace, Representer, kernel_model_pair, pointeval_bound_LDelta, project_onto_M,
                    representer_l_y, verify_norm_identity)
from .diagnostics import (EmbeddingProfile, boundary_modulus_scan, embedding_profile, expansivity_check,
                          verify_ball_automorphism_identity, verify_blaschke_identity)
from .density import DensityCurve, density_curve, kernel_span_residual, poly_projection_residual

__version__ = "0.1.0"

__all__ = [
    "ConfigError", "DeltaNotInjectiveError", "DimensionMismatchError", "NotPositiveError", "OutsideBallError",
    "RKHSLabError", "TailBoundError", "BallAutomorphism", "BergmanType", "BlaschkeProduct", "Point",
    "Polynomial", "Product", "RadialCoeff", "RadialPower", "RowMultiplier", "SampleSet", "ScaledCoordinate",
    "SubKernel", "dirichlet", "eval_kernel", "eval_multiplier", "radial_coeffs", "scalar", "szego",
    "taylor_expand_component", "GramMatrix", "PsdReport", "PsdVerdict", "build_gram", "check_psd",
    "mult_norm_estimate", "norm_lower_bound", "OperatorMatrix", "TruncatedSpace", "defect_matrices",
    "hkb_norm_curve", "hkb_norm_estimate", "multiplication_matrix", "backward_shift_check",
    "check_bergman_type_inequality", "check_shimorin", "hypercontraction_tower", "ModelPair", "ModelSpace",
    "Representer", "kernel_model_pair", "pointeval_bound_LDelta", "project_onto_M", "representer_l_y",
    "verify_norm_identity", "EmbeddingProfile", "boundary_modulus_scan", "embedding_profile",
    "expansivity_check", "verify_ball_automorphism_identity", "verify_blaschke_identity", "DensityCurve",
    "density_curve", "kernel_span_residual", "poly_projection_residual",
]

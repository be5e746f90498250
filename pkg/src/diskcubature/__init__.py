"""Polyharmonic cubature for weighted integrals over a disk."""
from .baselines import midpoint_rule, peirce_rule
from .bounds import SmoothnessData, dft_error_bound, gauss_error_bound, tail_bound, zeta
from .cubature import (CubatureParams, PlanarCubature, flatten_cubature, polyharmonic_cubature,
                       polyharmonic_cubature_fft, semidiscrete_cubature, stability_sum)
from .exceptions import DomainError, NumericError, RuleGenerationError
from .gauss_jacobi import GaussRule, gauss_rule, leading_coefficient_kappa
from .harmonics import ModeIndex, eval_harmonic
from .weights import (JacobiTerm, ModeMeasure, WeightSpec, builtin_poisson, builtin_unit, builtin_w1,
                      builtin_w2, builtin_weight, summability_norm)

"""Desk-scale verification toolkit for two-parameter lattice exponential sums,
backwards Newton diagrams, rational-arc decompositions, and the oscillation
semi-norms controlling multi-parameter averages."""

__version__ = "0.1.0"

from .arith import (
    coefficient_gcd,
    dirichlet_approx,
    golden_ratio_conjugate,
    reduce,
    rescale_approx,
)
from .poly import Poly2, RealPoly2, UniPoly, axis_decompose, is_degenerate, parse_poly, scale
from .newton import (
    NewtonDiagram,
    build_diagram,
    canonical_sector,
    dominant_monomial,
    dominant_scale,
    sector_membership,
    subsector,
    vertex_gap,
)
from .expsum import ExpSumValue, double_sum, double_sum_abs, sum_integral_gap, weyl_sum
from .complete import (
    VinogradovCount,
    averaged_partial,
    gauss_sum,
    moment_identity_gap,
    partial_gauss,
    vinogradov_count,
    vinogradov_table,
)
from .iw import IWParams, build_p_le, build_sigma, verify_iw_properties
from .osc import IncreasingSequence, IndexedFamily, oscillation, rademacher_menshov_sides, validate_sequence, variation
from .ergodic import AverageSpec, FiniteFunction, character_average, degenerate_factorization_gap, sector_grid, shift_average
from .circle import (
    ArcClassification,
    arc_classify,
    continuous_multiplier,
    cutoff_eta,
    discrete_multiplier,
    major_approximant,
    partial_approx_error,
    projection_multiplier,
)

"""Exact strength and slice rank of homogeneous forms, with the algebra behind them."""

from .certificate import StrengthCertificate
from .cohomology import LineBundleClass, SpaceDescriptor, h_twist, x3_bound
from .errors import (
    BudgetExceeded,
    DegreeMismatch,
    NoRationalPoint,
    NotRealTarget,
    ParseError,
    StrengthLabError,
    ZeroSectionError,
)
from .ideal import (
    GradedIdeal,
    graded_membership,
    groebner,
    hilbert_function,
    is_regular_sequence,
    solvable_over_closure,
)
from .kernels import BACKEND
from .loci import count_types, dim_decomposition_set, dim_Gamma, dim_Z, fiber_dim_oracle
from .multiplication import build_mult_map, image_dim, koszul_formula_dim
from .poly import HomogeneousPolynomial, LinearChange, apply_change, parse_poly
from .quadratic import QuadraticForm, quadratic_real_strength_bounds, quadratic_strength
from .strength import (
    d14_decompose,
    decide_strength_leq,
    realify,
    slice_rank,
    strength_lower_from_fano,
    strength_one_test,
)
from .surface_cone import PicardLattice2, effective_cone, line_obstruction, surface_invariants

__version__ = "0.1.0"

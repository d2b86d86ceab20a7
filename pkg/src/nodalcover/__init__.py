"""Exact verification of nodal complete-intersection surfaces and their
(Z/2)^r coverings: number-field tower arithmetic, sparse multivariate
polynomials, a Buchberger Groebner engine, projective-scheme queries,
linear systems of hypersurfaces, covering numerology, and a scenario
pipeline replaying the full verification with exact or mod-p arithmetic.
"""

from .arith import (
    FieldTower,
    PrimeField,
    PrimeReduction,
    ReductionError,
    TowerElement,
    TowerError,
    find_prime_reduction,
    invert,
    rational,
    reduce_mod_p,
    tower_construct,
)
from .cover import (
    BranchAssignment,
    CertificateError,
    CharClassData,
    DivisibilityCertificate,
    PartitionSearchError,
    SurfaceInvariants,
    TropeTable,
    branch_char_set,
    canonical_factors,
    chi_cover,
    chi_nodal,
    gf2_certify,
    ksq_cover,
    partition_search,
    pg_cover,
    quotient_data,
    trope_pair_set,
)
from .groebner import (
    Ideal,
    ReducedGB,
    eliminate,
    exact_divide,
    groebner_basis,
    hilbert_dim_degree,
    homogeneous_part,
    ideal_equal,
    ideal_intersect,
    ideal_quotient,
    normal_form,
    radical,
    saturate,
    saturate_irrelevant,
    spolynomial,
)
from .linsys import LinSys, complete_system, through_points, through_scheme, trace_dimension
from .pipeline import ConfigError, Report, load_scenario, run_scenario
from .poly import (
    MonomialOrder,
    ParseError,
    Poly,
    PolyRing,
    apply_linear,
    homogeneous_degree,
    jacobian,
    minors,
    parse,
)
from .scheme import (
    PointCertificate,
    PointNotOnSchemeError,
    ProjScheme,
    RationalPoint,
    certify_zero_dim_points,
    contains_point,
    intersect,
    is_ordinary_double_point,
    points_on,
    reduced_subscheme,
    scheme_equal,
    singular_subscheme,
    smooth_at_points,
    union,
)

__version__ = "0.1.0"

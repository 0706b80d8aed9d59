"""Face lattices of convex polytopes and lower bounds on their face numbers."""
from .bounds import (
    BoundReport,
    EqualityClass,
    WitnessSequence,
    binomial,
    check_lower_bound,
    classify_equality,
    closed_fk_tdsm,
    count_kfaces_containing,
    facet_profile_check,
    phi,
    witness_sequence,
)
from .construction import parse
from .construction import build as build_spec
from .isomorphism import NotOfThisForm, classify_simplicial_d2, find_isomorphism, is_isomorphic
from .lattice import (
    AntichainViolation,
    FaceLattice,
    LatticeError,
    NotGraded,
    RankMismatch,
    VertexFacetIncidence,
    bipyramid,
    build_from_incidence,
    direct_sum,
    direct_sum_simplices,
    dual,
    f_vector,
    k_fold_pyramid,
    pyramid,
    simplex,
    t_dsm,
    vertex_figure,
)
from .oracle import (
    Hyperplane,
    PointConfig,
    affine_dim,
    facet_enumeration,
    lattice_from_points,
    random_polytope,
    realize,
)

__version__ = "0.1.0"

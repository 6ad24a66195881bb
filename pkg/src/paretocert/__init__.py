"""Exact certificates of Pareto optimality over convex polyhedra.

The public entry points are re-exported here; see the README for a tour.
"""

from .economy import (
    Economy,
    Piece,
    PLCUtility,
    WalrasianResult,
    build_dc_utility_set,
    check_up_equals_uplus,
    dc_utility_set_by_pieces,
    eval_plc,
    second_welfare_prices,
    strict_monotonicity_sufficient,
    utility_set,
)
from .errors import (
    CertificateRejected,
    ChainError,
    DomainError,
    EndowmentNotParetoError,
    InputError,
    NonMonotoneError,
    NotInSetError,
    NotMaximalError,
    NotMinimalError,
    ParetoCertError,
    ResourceLimitError,
)
from .kernels import BACKEND
from .linalg import indicator, inner_product, support
from .lp import LPResult, feasible_point, maximize, strictly_positive_in_cone
from .pareto import (
    BargainingPlan,
    Certificate,
    Classification,
    GivenChain,
    WelfareFunction,
    bargaining_plan,
    build_welfare,
    classify,
    construct_certificate,
    evaluate,
    is_maximal,
    search_partition_certificate,
    verify_bargaining,
    verify_certificate,
    verify_partition_certificate,
)
from .polyhedron import (
    Face,
    HRep,
    NormalCone,
    Unbounded,
    VRep,
    canonical,
    cartesian_product,
    downward_closure,
    enumerate_faces,
    exposed_face,
    hrep_from_vrep,
    hull,
    minimal_face_at,
    minkowski_sum,
    normal_cone_at,
    project_eliminate,
    same_set,
    vrep_from_hrep,
)

__version__ = "0.1.0"

"""Floating-point and exact-rational dynamics on the 2-torus."""

from .lyapunov import (
    IntegratedExponent,
    LyapunovEstimate,
    LyapunovEstimator,
    check_exponent_symmetry,
    exponent_symmetry,
    integrated_exponent_estimate,
    lyapunov_plus,
)
from .maps import (
    FixedSet,
    LinearInvolution,
    ReversibilityResidual,
    StandardMap,
    StandardReversor,
    ToralAutomorphism,
    apply,
    apply_inverse,
    check_reversibility,
    fix_set,
    jacobian,
    map_from_json,
    reversor_from_json,
    torus_distance,
)
from .orbits import FreeVerdict, rational_orbit, rf_free_test
from .splitting import (
    OseledetsEstimator,
    SplittingEstimate,
    check_splitting_swap,
    domination_check,
    line_angle,
    oseledets_directions,
    reflected_domination_ratio,
)

__all__ = [
    "FixedSet",
    "FreeVerdict",
    "IntegratedExponent",
    "LinearInvolution",
    "LyapunovEstimate",
    "LyapunovEstimator",
    "OseledetsEstimator",
    "ReversibilityResidual",
    "SplittingEstimate",
    "StandardMap",
    "StandardReversor",
    "ToralAutomorphism",
    "apply",
    "apply_inverse",
    "check_exponent_symmetry",
    "check_reversibility",
    "check_splitting_swap",
    "domination_check",
    "exponent_symmetry",
    "fix_set",
    "integrated_exponent_estimate",
    "jacobian",
    "line_angle",
    "lyapunov_plus",
    "map_from_json",
    "oseledets_directions",
    "rational_orbit",
    "reflected_domination_ratio",
    "reversor_from_json",
    "rf_free_test",
    "torus_distance",
]

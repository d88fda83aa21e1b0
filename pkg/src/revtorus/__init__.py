"""Exact and numerical tools for reversible area-preserving maps of the 2-torus."""

from .algebra import (
    IDENTITY,
    IntMatrix2,
    RationalVec2,
    derivative_constraint_check,
    det,
    is_hyperbolic,
    is_involution,
    mat_inv,
    mat_mul,
    mat_pow,
    reversibility_check,
    unimodular,
)
from .involutions import (
    FixedLine,
    InvolutionClass,
    classify_involution,
    construct_reversible_anosov,
    enumerate_involutions,
    fixed_line,
    reconstruct,
)
from .pell import (
    ContinuedFractionExpansion,
    PellProblem,
    PellSolution,
    PellSolutionSet,
    brute_force_pell,
    cf_sqrt,
    fundamental_unit,
    solve_pell,
)
from .reversors import (
    ObstructionRecord,
    ReversorReport,
    find_reversors,
    orientation_reversing_obstruction,
    pell_to_involution,
    r_centralizer_orbit,
)

__version__ = "0.1.0"

__all__ = [
    "IDENTITY",
    "ContinuedFractionExpansion",
    "FixedLine",
    "IntMatrix2",
    "InvolutionClass",
    "ObstructionRecord",
    "PellProblem",
    "PellSolution",
    "PellSolutionSet",
    "RationalVec2",
    "ReversorReport",
    "brute_force_pell",
    "cf_sqrt",
    "classify_involution",
    "construct_reversible_anosov",
    "derivative_constraint_check",
    "det",
    "enumerate_involutions",
    "find_reversors",
    "fixed_line",
    "fundamental_unit",
    "is_hyperbolic",
    "is_involution",
    "mat_inv",
    "mat_mul",
    "mat_pow",
    "orientation_reversing_obstruction",
    "pell_to_involution",
    "r_centralizer_orbit",
    "reconstruct",
    "reversibility_check",
    "solve_pell",
    "unimodular",
]

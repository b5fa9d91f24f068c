"""Chains on simplicial 2-complexes, filling area and radius, and loop functionals."""

from .area import FillingResult, NotFillable, min_filling_area
from .complex import (
    Chain,
    InvalidChain,
    InvalidComplex,
    Loop,
    SimplicialComplex2,
    boundary_matrices,
    boundary_of,
    is_cycle,
)
from .hlambda import (
    HLambdaResult,
    LoopLipschitzError,
    WitnessPair,
    contour_loop,
    h_lambda_estimate,
    square_loop,
    stokes_sum,
)
from .patches import (
    MeshTooCoarse,
    disk_cycle,
    hyperbolic7_patch,
    plane_patch,
    ring_loops,
    trace_polygon,
)
from .profile import (
    ProfileResult,
    SemiEllipticityResult,
    isoperimetric_profile,
    loop_length,
    semi_ellipticity_check,
)
from .radius import (
    filling_radius,
    kuratowski_filling_radius,
    kuratowski_neighborhood_complex,
    rips_filling_radius,
)

__all__ = [
    "Chain", "FillingResult", "HLambdaResult", "InvalidChain", "InvalidComplex", "Loop",
    "LoopLipschitzError", "MeshTooCoarse", "NotFillable", "ProfileResult",
    "SemiEllipticityResult", "SimplicialComplex2", "WitnessPair", "boundary_matrices",
    "boundary_of", "contour_loop", "disk_cycle", "filling_radius", "h_lambda_estimate",
    "hyperbolic7_patch", "is_cycle", "isoperimetric_profile", "kuratowski_filling_radius",
    "kuratowski_neighborhood_complex", "loop_length", "min_filling_area", "plane_patch",
    "ring_loops", "rips_filling_radius", "semi_ellipticity_check", "square_loop", "stokes_sum",
]

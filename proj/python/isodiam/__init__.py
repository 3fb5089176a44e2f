"""Polytope positions, enclosing ellipsoids, decompositions of the identity,
and Dvoretzky-Rogers volume constants."""

from ._core import (  # noqa: F401
    Ellipsoid,
    IsodiamError,
    Polytope,
    behrend_normalize,
    diameter,
    diametrical_directions,
    difference_body,
    distribution_check,
    dr_lower_bound,
    dr_search,
    dr_simplex_value,
    duality_check,
    equiangular_check,
    fit_weights,
    greedy_simplex_bound,
    iq,
    is_behrend,
    is_loewner,
    isominwidth_normalize,
    iwq,
    john_ellipsoid_symmetric,
    make_body,
    min_width,
    mvee,
    polar,
    subspace_angle,
    verify_decomposition,
    verify_paper,
    volume,
    witness,
)

__version__ = "0.1.0"

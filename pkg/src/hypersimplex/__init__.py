"""Inradius, incenter and skeleton distances of simplices in hyperbolic space.

The package works in the hyperboloid model: points of H^n are vectors of
R^{1,n} with the Lorentz form ``x0 y0 - sum xi yi``.  Modules:

``lorentz``     the form, Gram matrices, dual bases, half-spaces and isometries
``models``      hyperboloid / Klein chart conversions, distances, hyperplane pairs
``simplex``     simplices with their duals, incenter, inradius, regular simplices
``skeleton``    distances to m-faces and maximizers of the distance to the m-skeleton
``disphenoid``  the Euclidean disphenoid family and its maximizer census
``figures``     deterministic SVG diagrams
``cli``         the ``hypersimplex`` command
"""

from . import disphenoid, lorentz, models, simplex, skeleton
from .errors import *  # noqa: F401,F403
from .lorentz import HalfSpace, LorentzMap, dual_basis, gram, isometry_from_gram, lorentz_form
from .simplex import (
    Simplex,
    build_simplex,
    incenter_inradius,
    incentred_model,
    regular_ideal_simplex,
    regular_simplex,
    simplex_from_klein,
    validate_dual_gram,
)
from .skeleton import Face, delta_n_m, dist_to_face, enumerate_local_maximizers

__version__ = "0.1.0"

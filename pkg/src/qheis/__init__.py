"""Quaternionic Heisenberg group geometry and discreteness certificates.

The package certifies that two Heisenberg translations of the quaternionic
hyperbolic plane's isometry group generate a free, discrete subgroup, by
evaluating sufficient ball- and strip-separation conditions and backing
every closed-form bound with an independent brute-force oracle.
"""

from ._kernels import BACKEND
from .bounds import (
    BoundReport,
    SphereAngles,
    boundary_profile,
    boundary_profile_argmax,
    boundary_profile_max,
    brute_force_max,
    chord_bound,
    chord_bound_max,
    containment_radius,
    diameter_factor,
    distance_sq_bound,
    enclosing_radius,
    equality_residual,
)
from .certifier import (
    Certificate,
    ComplexParams,
    ComplexSliceReport,
    KleinReport,
    WordReport,
    ball_condition,
    certify,
    complex_slice_conditions,
    gauge_product_test,
    generators,
    klein_verify,
    strip_condition,
    strip_condition_cross,
    strip_condition_swapped,
    word_nontriviality,
)
from .fans import Fan, Strip, fan_contains, strip_contains, translate_fan, vertical_projection
from .heisenberg import (
    ORIGIN,
    CyganSphere,
    HeisPoint,
    KoranyiCoords,
    compose,
    cygan_distance,
    from_koranyi,
    gauge,
    in_ball,
    kappa,
    on_sphere,
    sample_sphere,
    to_koranyi,
)
from .quaternion import Quaternion, polar_decompose, similar
from .spgroup import (
    INFINITY,
    GroupMatrix,
    act,
    dilation_matrix,
    hermitian_form,
    inversion_coords,
    inversion_matrix,
    isometric_sphere,
    lift,
    rotation_matrix,
    sp_inverse,
    translation_fixing_origin,
    translation_matrix,
)

__version__ = "0.1.0"


def backend() -> str:
    """Which kernel backend is active: 'compiled' or 'python'."""
    return BACKEND

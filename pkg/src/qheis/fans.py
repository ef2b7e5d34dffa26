"""Fans, vertical projection, translation strips, and the strip test.

A fan is the preimage under the vertical projection of a real affine
hyperplane Re(q conj(u0)) = level in the quaternions.  A non-vertical
translation by (zeta2, v2) shifts the family of fans with direction
u0 = zeta2/|zeta2| by |zeta2| per application (in the coordinate
Re(q conj(u0)) = Re(q conj(zeta2))/|zeta2|), so the region between two
consecutive fans is a fundamental strip for the translation.

The strip test asks whether the vertical projections of both isometric
spheres of the origin-fixing translation fit inside one such strip.  The
two projected disks have radius 1/K(p1) and their centers differ by
2 |zeta1|^2 zeta1 / K^4(p1) along the strip coordinate, so the fit needs

    |zeta2| K(p1) >= 2 |zeta1|^2 |Re(zeta1 conj(zeta2))| / (|zeta2| K(p1)^3) + 2.

The absolute value matters: the signed variant is satisfied by pairs whose
sphere disks provably do not fit (and which generate non-free groups), so
only the absolute form is a trustworthy certificate.
"""

from __future__ import annotations

from dataclasses import dataclass

from .exceptions import MisalignedFan, OriginInput, ZeroHorizontalPart
from .heisenberg import CyganSphere, HeisPoint, gauge, gauge_sq
from .quaternion import Quaternion

#: Direction/level tolerance for fan membership and alignment checks.
TOL_FAN = 1e-9
#: Margin for the closed strip inequality.
TOL_MARGIN = 1e-12


@dataclass(frozen=True)
class Fan:
    """Hyperplane preimage with unit direction u0 and real level."""

    u0: Quaternion
    level: float

    def __post_init__(self):
        if not self.u0.is_unit():
            raise ValueError("fan direction must be a unit quaternion")


@dataclass(frozen=True)
class Strip:
    """Closed region between two parallel fans, projected to the quaternions."""

    u0: Quaternion
    low: float
    high: float

    def __post_init__(self):
        if not self.u0.is_unit():
            raise ValueError("strip direction must be a unit quaternion")
        if self.low > self.high:
            raise ValueError("strip bounds must satisfy low <= high")


def vertical_projection(p: HeisPoint) -> Quaternion:
    """The map (zeta, v) -> zeta."""
    return p.zeta


def fan_coordinate(u0: Quaternion, q: Quaternion) -> float:
    """Affine coordinate Re(q conj(u0)) measuring offset along direction u0."""
    return (q * u0.conjugate()).real


def fan_contains(f: Fan, p: HeisPoint, tol: float = TOL_FAN) -> bool:
    return abs(fan_coordinate(f.u0, p.zeta) - f.level) <= tol


def translate_fan(p2: HeisPoint, f: Fan, tol: float = TOL_FAN) -> Fan:
    """Image of a fan under the translation fixing infinity defined by p2.

    Requires the fan direction to be zeta2/|zeta2|: in the coordinate
    Re(q conj(u0)) the translation then adds exactly |zeta2| to the level.
    Any other direction does not map fans of the family to fans of the
    family, hence MisalignedFan.
    """
    zn = p2.zeta.modulus()
    if zn <= TOL_MARGIN:
        raise ZeroHorizontalPart("fan translation needs a non-vertical p2")
    direction = p2.zeta / zn
    if abs(f.u0 - direction) > tol:
        raise MisalignedFan(
            "fan direction must equal zeta2/|zeta2| for this translation"
        )
    return Fan(f.u0, f.level + zn)


def strip_contains(s: Strip, q: Quaternion, tol: float = 0.0) -> bool:
    coord = fan_coordinate(s.u0, q)
    return s.low - tol <= coord <= s.high + tol


def projected_sphere(s: CyganSphere) -> tuple[Quaternion, float]:
    """Center and radius of the disk holding a Cygan sphere's projection.

    The squared Cygan distance dominates |zeta - zeta_center|^2, so the
    projection lies in the disk of the sphere's own radius.
    """
    return s.center.zeta, s.radius


@dataclass(frozen=True)
class StripCheck:
    """Outcome of the strip-containment inequality."""

    lhs: float
    rhs: float
    holds: bool


def strip_containment_check(p1: HeisPoint, p2: HeisPoint,
                            tol: float = TOL_MARGIN) -> StripCheck:
    """Test that the projected isometric-sphere disks of the origin-fixing
    translation (built from p1) fit inside a width-|zeta2| strip.

    lhs = |zeta2| K(p1),
    rhs = 2 |zeta1|^2 |Re(zeta1 conj(zeta2))| / (|zeta2| K(p1)^3) + 2.
    """
    z2n = p2.zeta.modulus()
    if z2n <= TOL_MARGIN:
        raise ZeroHorizontalPart("strip test needs a non-vertical p2")
    k1 = gauge(p1)
    if k1 <= TOL_MARGIN:
        raise OriginInput("strip test needs p1 distinct from the origin")
    z1n2 = p1.zeta.modulus_sq()
    overlap = (p1.zeta * p2.zeta.conjugate()).real
    lhs = z2n * k1
    rhs = 2.0 * z1n2 * abs(overlap) / (z2n * gauge_sq(p1) * k1) + 2.0
    return StripCheck(lhs, rhs, lhs >= rhs - tol)

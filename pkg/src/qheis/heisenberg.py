"""The quaternionic Heisenberg group: gauge, metric, spheres, coordinates.

Points are pairs p = (zeta, v) with zeta a quaternion and v purely
imaginary, multiplied by

    (zeta_p, v_p) * (zeta_q, v_q)
        = (zeta_p + zeta_q, v_p + v_q + 2 Im(conj(zeta_q) zeta_p)).

The Cygan distance is the gauge of the left quotient q^{-1} p, which makes
it invariant under left translations; rotations and dilations act as
similarities.  Note that expanding the left quotient in components yields a
cross term +2 Im(conj(zeta_q) zeta_p); the variant with the opposite sign
is the gauge of p q^{-1} and is only right-invariant.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .exceptions import NonPositive
from .quaternion import I, ONE, Quaternion

#: Largest tolerated real part for the vertical component of a point.
TOL_IMAGINARY = 1e-9
#: Default tolerance for sphere membership tests.
TOL_SPHERE = 1e-9


@dataclass(frozen=True)
class HeisPoint:
    """Boundary point (zeta, v); v is forced purely imaginary on input."""

    zeta: Quaternion
    v: Quaternion

    def __post_init__(self):
        if abs(self.v.w) > TOL_IMAGINARY:
            raise ValueError(
                f"vertical component has real part {self.v.w!r}; "
                "points carry a purely imaginary v"
            )
        if self.v.w != 0.0:
            object.__setattr__(self, "v", Quaternion(0.0, self.v.x, self.v.y, self.v.z))
        # the two gauge formulas must agree once Re(v) = 0
        assert math.isclose(
            math.sqrt(Quaternion(-self.zeta.modulus_sq(), self.v.x, self.v.y,
                                 self.v.z).modulus()),
            (self.zeta.modulus_sq() ** 2 + self.v.modulus_sq()) ** 0.25,
            rel_tol=1e-12,
            abs_tol=1e-12,
        )

    def is_origin(self, tol: float = 0.0) -> bool:
        return self.zeta.modulus() <= tol and self.v.modulus() <= tol


ORIGIN = HeisPoint(Quaternion(), Quaternion())


def compose(p: HeisPoint, q: HeisPoint) -> HeisPoint:
    """Group product p * q (p acts on the left).

    The twist term 2 Im(conj(zeta_q) zeta_p) is computed in antisymmetrized
    form conj(zeta_q) zeta_p - conj(zeta_p) zeta_q, which cancels exactly
    (not just to rounding) when the factors share a zeta; this is what makes
    the Cygan distance of a point to itself come out as literal zero.
    """
    twist = (q.zeta.conjugate() * p.zeta) - (p.zeta.conjugate() * q.zeta)
    return HeisPoint(p.zeta + q.zeta, p.v + q.v + twist.imag)


def inverse(p: HeisPoint) -> HeisPoint:
    """Group inverse (-zeta, -v)."""
    return HeisPoint(-p.zeta, -p.v)


def kappa(p: HeisPoint) -> Quaternion:
    """The map (zeta, v) -> -|zeta|^2 + v whose modulus squares the gauge."""
    return Quaternion(-p.zeta.modulus_sq(), p.v.x, p.v.y, p.v.z)


def gauge(p: HeisPoint) -> float:
    """Koranyi gauge K(p) = |kappa(p)|^(1/2) = (|zeta|^4 + |v|^2)^(1/4)."""
    return (p.zeta.modulus_sq() ** 2 + p.v.modulus_sq()) ** 0.25


def gauge_sq(p: HeisPoint) -> float:
    """K(p)^2 computed as a single square root.

    Preferred over gauge(p)**2 where exactness matters: for vertical points
    it returns |v| as the very same float, so ratios like |v|/K^2 come out
    exactly 1 instead of 1 plus rounding noise.
    """
    return math.sqrt(p.zeta.modulus_sq() ** 2 + p.v.modulus_sq())


def cygan_distance(p: HeisPoint, q: HeisPoint) -> float:
    """Left-invariant Cygan distance: gauge of compose(inverse(q), p)."""
    return gauge(compose(inverse(q), p))


# -- Koranyi spherical coordinates ---------------------------------------


@dataclass(frozen=True)
class KoranyiCoords:
    """Spherical representation (zeta, v) = (r sqrt(cos psi) U, r^2 sin psi u2).

    The angle psi is stored in [0, pi/2]; the sign freedom of sin(psi) is
    carried entirely by the axis u2.  U is a unit quaternion, u2 a purely
    imaginary unit quaternion; degenerate inputs use U = 1 and u2 = i.
    """

    r: float
    psi: float
    u_dir: Quaternion
    u2: Quaternion

    def __post_init__(self):
        if self.r < 0.0:
            raise ValueError("radius must be nonnegative")
        if not -1e-12 <= self.psi <= math.pi / 2 + 1e-12:
            raise ValueError("psi must lie in [0, pi/2]")
        if not self.u_dir.is_unit():
            raise ValueError("U must be a unit quaternion")
        if not (self.u2.is_unit() and self.u2.is_imaginary()):
            raise ValueError("u2 must be a purely imaginary unit quaternion")


def to_koranyi(p: HeisPoint) -> KoranyiCoords:
    r = gauge(p)
    if r == 0.0:
        return KoranyiCoords(0.0, 0.0, ONE, I)
    zn = p.zeta.modulus()
    vn = p.v.modulus()
    psi = math.atan2(vn, zn * zn)
    u_dir = p.zeta / zn if zn > 0.0 else ONE
    u2 = p.v / vn if vn > 0.0 else I
    return KoranyiCoords(r, psi, u_dir, u2)


def from_koranyi(c: KoranyiCoords) -> HeisPoint:
    zeta = c.u_dir * (c.r * math.sqrt(max(math.cos(c.psi), 0.0)))
    v = c.u2 * (c.r * c.r * math.sin(c.psi))
    return HeisPoint(zeta, v.imag)


# -- Cygan spheres ---------------------------------------------------------


@dataclass(frozen=True)
class CyganSphere:
    center: HeisPoint
    radius: float

    def __post_init__(self):
        if self.radius <= 0.0:
            raise NonPositive("sphere radius must be positive")


def on_sphere(s: CyganSphere, p: HeisPoint, tol: float = TOL_SPHERE) -> bool:
    return abs(cygan_distance(p, s.center) - s.radius) <= tol


def in_ball(s: CyganSphere, p: HeisPoint) -> bool:
    return cygan_distance(p, s.center) < s.radius


# -- array bridge and sampling ---------------------------------------------


def point_to_array(p: HeisPoint) -> np.ndarray:
    """Pack a point into the 7-component kernel layout."""
    z = p.zeta
    return np.array([z.w, z.x, z.y, z.z, p.v.x, p.v.y, p.v.z])


def point_from_array(row) -> HeisPoint:
    row = np.asarray(row, dtype=float)
    return HeisPoint(
        Quaternion(row[0], row[1], row[2], row[3]),
        Quaternion(0.0, row[4], row[5], row[6]),
    )


def points_to_array(points) -> np.ndarray:
    return np.array([point_to_array(p) for p in points])


def _unit_imaginary(rng: np.random.Generator, n: int) -> np.ndarray:
    """(n, 3) rows of unit 3-vectors; redraws the measure-zero tiny draws."""
    vec = rng.normal(size=(n, 3))
    norms = np.linalg.norm(vec, axis=1)
    while np.any(norms < 1e-8):
        bad = norms < 1e-8
        vec[bad] = rng.normal(size=(int(bad.sum()), 3))
        norms = np.linalg.norm(vec, axis=1)
    return vec / norms[:, None]


def sample_sphere_array(s: CyganSphere, n: int, seed: int) -> np.ndarray:
    """(n, 7) array of points on the sphere, via uniform Koranyi angles.

    psi, phi and the two imaginary axes are drawn uniformly, the point is
    assembled in coordinates and then left-translated by the center; left
    invariance of the metric keeps it on the sphere.
    """
    if n < 1:
        raise ValueError("need at least one sample")
    rng = np.random.default_rng(seed)
    psi = rng.uniform(0.0, math.pi / 2, n)
    phi = rng.uniform(0.0, 2 * math.pi, n)
    u1 = _unit_imaginary(rng, n)
    u2 = _unit_imaginary(rng, n)

    big_u = np.empty((n, 4))
    big_u[:, 0] = np.cos(phi)
    big_u[:, 1:4] = np.sin(phi)[:, None] * u1

    pts = np.empty((n, 7))
    pts[:, 0:4] = (s.radius * np.sqrt(np.cos(psi)))[:, None] * big_u
    pts[:, 4:7] = (s.radius**2 * np.sin(psi))[:, None] * u2

    center = np.broadcast_to(point_to_array(s.center), (n, 7))
    return _kernels.compose(center, pts)


def sample_sphere(s: CyganSphere, n: int, seed: int) -> list[HeisPoint]:
    return [point_from_array(row) for row in sample_sphere_array(s, n, seed)]

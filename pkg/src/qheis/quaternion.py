"""Non-commutative quaternion arithmetic with fixed conventions.

A quaternion is written a = w + x*i + y*j + z*k with real components and
unit relations i^2 = j^2 = k^2 = ijk = -1.  Everything downstream (the
Heisenberg group, the matrix group, the certificates) reduces to this
algebra, so the conventions here are deliberately rigid: conjugation flips
the sign of the imaginary part, the modulus is the Euclidean 4-norm, and
the polar form uses theta in [0, pi] with a purely imaginary unit axis.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .exceptions import ZeroDivisor

#: Relative tolerance for single algebraic identities in double precision.
TOL_ALGEBRAIC = 1e-12
#: Drift budget for values produced by long chains of operations.
TOL_COMPOSED = 1e-9
#: Acceptable deviation of |q| from 1 for quaternions used as units.
TOL_UNIT = 1e-9


@dataclass(frozen=True)
class Quaternion:
    """Element of the quaternion division ring, stored as four floats."""

    w: float = 0.0
    x: float = 0.0
    y: float = 0.0
    z: float = 0.0

    # -- ring structure -------------------------------------------------

    def __add__(self, other: Quaternion) -> Quaternion:
        return Quaternion(self.w + other.w, self.x + other.x,
                          self.y + other.y, self.z + other.z)

    def __sub__(self, other: Quaternion) -> Quaternion:
        return Quaternion(self.w - other.w, self.x - other.x,
                          self.y - other.y, self.z - other.z)

    def __neg__(self) -> Quaternion:
        return Quaternion(-self.w, -self.x, -self.y, -self.z)

    def __mul__(self, other):
        """Hamilton product, or scaling when `other` is a real number.

        Non-commutative: i*j = k but j*i = -k.
        """
        if isinstance(other, Quaternion):
            a, b = self, other
            return Quaternion(
                a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
                a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
                a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
                a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w,
            )
        if isinstance(other, (int, float)):
            return Quaternion(self.w * other, self.x * other,
                              self.y * other, self.z * other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, float)):
            return Quaternion(self.w * other, self.x * other,
                              self.y * other, self.z * other)
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, (int, float)):
            return Quaternion(self.w / other, self.x / other,
                              self.y / other, self.z / other)
        return NotImplemented

    # -- conjugation, modulus, parts -------------------------------------

    def conjugate(self) -> Quaternion:
        return Quaternion(self.w, -self.x, -self.y, -self.z)

    def modulus_sq(self) -> float:
        return self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z

    def modulus(self) -> float:
        return math.sqrt(self.modulus_sq())

    def __abs__(self) -> float:
        return self.modulus()

    @property
    def real(self) -> float:
        return self.w

    @property
    def imag(self) -> Quaternion:
        return Quaternion(0.0, self.x, self.y, self.z)

    def inverse(self) -> Quaternion:
        """Two-sided inverse conj(a)/|a|^2; raises ZeroDivisor at zero."""
        n2 = self.modulus_sq()
        if n2 == 0.0:
            raise ZeroDivisor("zero quaternion has no inverse")
        return Quaternion(self.w / n2, -self.x / n2, -self.y / n2, -self.z / n2)

    def normalized(self) -> Quaternion:
        n = self.modulus()
        if n == 0.0:
            raise ZeroDivisor("cannot normalize the zero quaternion")
        return self / n

    def is_unit(self, tol: float = TOL_UNIT) -> bool:
        return abs(self.modulus() - 1.0) <= tol

    def is_imaginary(self, tol: float = TOL_UNIT) -> bool:
        return abs(self.w) <= tol

    def dot(self, other: Quaternion) -> float:
        """Euclidean 4-dot product (used for angles between unit axes)."""
        return (self.w * other.w + self.x * other.x
                + self.y * other.y + self.z * other.z)

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.w, self.x, self.y, self.z)


ZERO = Quaternion()
ONE = Quaternion(1.0)
I = Quaternion(0.0, 1.0)
J = Quaternion(0.0, 0.0, 1.0)
K = Quaternion(0.0, 0.0, 0.0, 1.0)


def polar_decompose(a: Quaternion) -> tuple[float, float, Quaternion]:
    """Write a = r*(cos(theta) + mu*sin(theta)) with r >= 0, theta in [0, pi].

    mu is a purely imaginary unit quaternion.  Degenerate conventions keep
    round trips deterministic: real input fixes mu = i with theta in {0, pi}
    by the sign of the real part, and zero input returns (0, 0, i).
    """
    r = a.modulus()
    if r == 0.0:
        return 0.0, 0.0, I
    im = a.imag
    im_norm = im.modulus()
    if im_norm == 0.0:
        return r, (0.0 if a.w > 0 else math.pi), I
    theta = math.atan2(im_norm, a.w)
    return r, theta, im / im_norm


def from_polar(r: float, theta: float, mu: Quaternion) -> Quaternion:
    """Recompose r*(cos(theta) + mu*sin(theta))."""
    s = r * math.sin(theta)
    return Quaternion(r * math.cos(theta), mu.x * s, mu.y * s, mu.z * s)


def similar(a: Quaternion, b: Quaternion, tol: float = TOL_ALGEBRAIC) -> bool:
    """Whether a and b are conjugate by some nonzero quaternion.

    Holds exactly when the real parts and the moduli agree; the comparison
    is absolute-tolerance on both quantities.
    """
    return abs(a.real - b.real) <= tol and abs(a.modulus() - b.modulus()) <= tol

"""Sp(2,1) over the quaternions: Hermitian form, boundary action, spheres.

Vectors live in a right quaternionic vector space of signature (2, 1); the
form matrix has ones on the antidiagonal, so <z, w> = conj(w3) z1 +
conj(w2) z2 + conj(w1) z3.  Matrices act on the left and projective
rescaling multiplies lifts on the right, which is what makes the boundary
action well defined.

The lift of a finite point is (-|zeta|^2 + v, sqrt(2) zeta, 1)^T; the
sqrt(2) is pinned down by requiring that the displayed translation matrices
move the origin to their defining point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .exceptions import (
    FixesInfinity,
    NonPositive,
    NonUnit,
    NotSymplectic,
    OriginInput,
)
from .heisenberg import CyganSphere, HeisPoint, kappa
from .quaternion import ONE, TOL_UNIT, ZERO, Quaternion

SQRT2 = math.sqrt(2.0)

#: Form-preservation tolerance expected of factory-constructed matrices.
TOL_CONSTRUCTOR = 1e-10
#: Default form tolerance accepted by the closed-form inverse; loose enough
#: for words of ~50 generators whose defect grows multiplicatively.
TOL_WORD = 1e-6
#: Relative threshold below which a lift's third component counts as zero.
TOL_PROJECTIVE = 1e-12


class BoundaryInfinity:
    """The compactification point; a singleton, compared by identity."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INFINITY"


INFINITY = BoundaryInfinity()

BoundaryPoint = HeisPoint | BoundaryInfinity


def hermitian_form(z, w) -> Quaternion:
    """<z, w> = conj(w3) z1 + conj(w2) z2 + conj(w1) z3 on column 3-vectors."""
    return (
        w[2].conjugate() * z[0]
        + w[1].conjugate() * z[1]
        + w[0].conjugate() * z[2]
    )


def lift(p: BoundaryPoint) -> tuple[Quaternion, Quaternion, Quaternion]:
    """Null lift of a boundary point; infinity lifts to (1, 0, 0)^T."""
    if p is INFINITY:
        return (ONE, ZERO, ZERO)
    return (kappa(p), p.zeta * SQRT2, ONE)


@dataclass(frozen=True)
class GroupMatrix:
    """3x3 quaternionic matrix, row-major entries, acting on the left."""

    entries: tuple[Quaternion, ...]

    def __post_init__(self):
        if len(self.entries) != 9:
            raise ValueError("a GroupMatrix needs exactly 9 entries")

    @classmethod
    def from_rows(cls, rows) -> GroupMatrix:
        return cls(tuple(q for row in rows for q in row))

    @classmethod
    def identity(cls) -> GroupMatrix:
        return cls.from_rows([[ONE, ZERO, ZERO], [ZERO, ONE, ZERO], [ZERO, ZERO, ONE]])

    def entry(self, i: int, j: int) -> Quaternion:
        return self.entries[3 * i + j]

    def __matmul__(self, other: GroupMatrix) -> GroupMatrix:
        out = []
        for i in range(3):
            for j in range(3):
                acc = ZERO
                for k in range(3):
                    acc = acc + self.entry(i, k) * other.entry(k, j)
                out.append(acc)
        return GroupMatrix(tuple(out))

    def apply(self, vec) -> tuple[Quaternion, Quaternion, Quaternion]:
        """Matrix times column vector; matrix entries multiply on the left."""
        return tuple(
            self.entry(i, 0) * vec[0]
            + self.entry(i, 1) * vec[1]
            + self.entry(i, 2) * vec[2]
            for i in range(3)
        )

    def conjugate_transpose(self) -> GroupMatrix:
        return GroupMatrix(
            tuple(self.entry(j, i).conjugate() for i in range(3) for j in range(3))
        )

    def form_defect(self) -> float:
        """Max entry modulus of P* H P - H; zero for exact Sp(2,1) members."""
        star_h = _times_form(self.conjugate_transpose())
        prod = star_h @ self
        defect = 0.0
        for i in range(3):
            for j in range(3):
                target = ONE if i + j == 2 else ZERO
                defect = max(defect, abs(prod.entry(i, j) - target))
        return defect

    def to_array(self) -> np.ndarray:
        out = np.empty((3, 3, 4))
        for i in range(3):
            for j in range(3):
                out[i, j] = self.entry(i, j).as_tuple()
        return out

    @classmethod
    def from_array(cls, arr) -> GroupMatrix:
        arr = np.asarray(arr, dtype=float)
        return cls(
            tuple(
                Quaternion(*arr[i, j]) for i in range(3) for j in range(3)
            )
        )


def _times_form(m: GroupMatrix) -> GroupMatrix:
    """Right-multiply by the antidiagonal form matrix (swap columns 0 and 2)."""
    return GroupMatrix(
        tuple(m.entry(i, [2, 1, 0][j]) for i in range(3) for j in range(3))
    )


# -- generators of the similarity group and the inversion -------------------


def translation_matrix(p0: HeisPoint) -> GroupMatrix:
    """Heisenberg left translation by p0, fixing infinity."""
    z = p0.zeta
    return GroupMatrix.from_rows(
        [
            [ONE, z.conjugate() * (-SQRT2), kappa(p0)],
            [ZERO, ONE, z * SQRT2],
            [ZERO, ZERO, ONE],
        ]
    )


def translation_fixing_origin(p1: HeisPoint) -> GroupMatrix:
    """The inversion conjugate of translation_matrix(p1); fixes the origin."""
    z = p1.zeta
    return GroupMatrix.from_rows(
        [
            [ONE, ZERO, ZERO],
            [z * SQRT2, ONE, ZERO],
            [kappa(p1), z.conjugate() * (-SQRT2), ONE],
        ]
    )


def rotation_matrix(mu: Quaternion) -> GroupMatrix:
    """Rotation (zeta, v) -> (mu zeta, v) for unit mu."""
    if not mu.is_unit(TOL_UNIT):
        raise NonUnit(f"rotation axis must be a unit quaternion, |mu| = {abs(mu)!r}")
    return GroupMatrix.from_rows([[ONE, ZERO, ZERO], [ZERO, mu, ZERO], [ZERO, ZERO, ONE]])


def dilation_matrix(delta: float) -> GroupMatrix:
    """Dilation (zeta, v) -> (delta zeta, delta^2 v) for delta > 0."""
    if delta <= 0.0:
        raise NonPositive(f"dilation factor must be positive, got {delta!r}")
    return GroupMatrix.from_rows(
        [
            [Quaternion(delta), ZERO, ZERO],
            [ZERO, ONE, ZERO],
            [ZERO, ZERO, Quaternion(1.0 / delta)],
        ]
    )


def inversion_matrix() -> GroupMatrix:
    """The involution exchanging the origin and infinity (the form matrix)."""
    return GroupMatrix.from_rows([[ZERO, ZERO, ONE], [ZERO, ONE, ZERO], [ONE, ZERO, ZERO]])


# -- action and inverses -----------------------------------------------------


def act(m: GroupMatrix, p: BoundaryPoint) -> BoundaryPoint:
    """Projective action on the boundary.

    Applies the matrix to the lift and right-normalizes by the inverse of
    the third component; a (relatively) vanishing third component means the
    image is infinity.  Right normalization makes scalar right-multiples of
    lifts act identically.
    """
    y = m.apply(lift(p))
    scale = max(abs(y[0]), abs(y[1]), abs(y[2]))
    if abs(y[2]) <= TOL_PROJECTIVE * max(scale, 1.0):
        return INFINITY
    inv3 = y[2].inverse()
    first = y[0] * inv3
    second = y[1] * inv3
    return HeisPoint(second / SQRT2, first.imag)


def sp_inverse(m: GroupMatrix, tol: float = TOL_WORD) -> GroupMatrix:
    """Closed-form inverse: conjugate anti-transpose across the antidiagonal.

    Only valid on matrices preserving the form; the defect is checked first.
    """
    defect = m.form_defect()
    if defect > tol:
        raise NotSymplectic(f"form defect {defect:.3e} exceeds tolerance {tol:.3e}")
    e = m.entry
    return GroupMatrix.from_rows(
        [
            [e(2, 2).conjugate(), e(1, 2).conjugate(), e(0, 2).conjugate()],
            [e(2, 1).conjugate(), e(1, 1).conjugate(), e(0, 1).conjugate()],
            [e(2, 0).conjugate(), e(1, 0).conjugate(), e(0, 0).conjugate()],
        ]
    )


def isometric_sphere(m: GroupMatrix, tol: float = 1e-12) -> CyganSphere:
    """Cygan sphere centered at the preimage of infinity, radius 1/sqrt(|g|).

    g is the lower-left entry; it must be nonzero, otherwise the matrix
    fixes infinity and has no isometric sphere.
    """
    g = m.entry(2, 0)
    if abs(g) <= tol:
        raise FixesInfinity("matrix fixes infinity; no isometric sphere")
    center = act(sp_inverse(m), INFINITY)
    assert isinstance(center, HeisPoint)
    return CyganSphere(center, 1.0 / math.sqrt(abs(g)))


def inversion_coords(p: HeisPoint) -> HeisPoint:
    """Image of a finite nonzero point under the inversion, via the matrix.

    Satisfies the gauge identity K(image) = 1/K(p).  The closed coordinate
    expression some sources display carries extra factors of 2 and 4 that
    break this identity, so the matrix action is the ground truth here.
    """
    if p.is_origin():
        raise OriginInput("the inversion sends the origin to infinity")
    image = act(inversion_matrix(), p)
    assert isinstance(image, HeisPoint)
    return image


def inversion_coords_array(pts: np.ndarray) -> np.ndarray:
    """Bulk inversion on (n, 7) point arrays: zeta -> zeta kappa^{-1}, etc.

    Componentwise transcription of act(inversion_matrix(), .): with
    kappa = -|zeta|^2 + v one has zeta' = zeta kappa^{-1} and v' = -v / K^4.
    """
    from . import _kernels

    pts = np.asarray(pts, dtype=float)
    zn2 = (pts[:, 0:4] ** 2).sum(axis=1)
    vn2 = (pts[:, 4:7] ** 2).sum(axis=1)
    k4 = zn2 * zn2 + vn2
    if np.any(k4 == 0.0):
        raise OriginInput("the inversion sends the origin to infinity")
    kappa_inv = np.empty((len(pts), 4))
    kappa_inv[:, 0] = -zn2 / k4
    kappa_inv[:, 1:4] = -pts[:, 4:7] / k4[:, None]
    out = np.empty_like(pts)
    out[:, 0:4] = _kernels.quat_mul(pts[:, 0:4], kappa_inv)
    out[:, 4:7] = -pts[:, 4:7] / k4[:, None]
    return out


def boundary_equal(a: BoundaryPoint, b: BoundaryPoint, tol: float = 1e-9) -> bool:
    """Convenience comparison treating infinity separately."""
    if a is INFINITY or b is INFINITY:
        return a is b
    from .heisenberg import cygan_distance

    return cygan_distance(a, b) <= tol

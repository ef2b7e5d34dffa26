"""NumPy reference implementation of the bulk kernels.

Array layout (float64 throughout):

* quaternion: trailing axis of length 4, components (w, x, y, z)
* Heisenberg point: trailing axis of length 7, components
  (zeta_w, zeta_x, zeta_y, zeta_z, v_x, v_y, v_z); the vertical part v is
  purely imaginary so it carries no real slot.

These functions broadcast over leading axes.  The compiled backend pins the
documented (n, 4) / (n, 7) shapes; callers should stick to those.
"""

import numpy as np


def quat_mul(a, b):
    """Hamilton products of paired quaternion arrays, (..., 4) x (..., 4)."""
    aw, ax, ay, az = a[..., 0], a[..., 1], a[..., 2], a[..., 3]
    bw, bx, by, bz = b[..., 0], b[..., 1], b[..., 2], b[..., 3]
    return np.stack(
        (
            aw * bw - ax * bx - ay * by - az * bz,
            aw * bx + ax * bw + ay * bz - az * by,
            aw * by - ax * bz + ay * bw + az * bx,
            aw * bz + ax * by - ay * bx + az * bw,
        ),
        axis=-1,
    )


def gauge(p):
    """Koranyi gauge (|zeta|^4 + |v|^2)^(1/4) of points (..., 7)."""
    zn2 = p[..., 0] ** 2 + p[..., 1] ** 2 + p[..., 2] ** 2 + p[..., 3] ** 2
    vn2 = p[..., 4] ** 2 + p[..., 5] ** 2 + p[..., 6] ** 2
    return (zn2 * zn2 + vn2) ** 0.25


_CONJ_SIGNS = np.array([1.0, -1.0, -1.0, -1.0])


def _twist(zp, zq):
    """2 Im(conj(zeta_q) zeta_p) in the antisymmetrized form
    conj(zeta_q) zeta_p - conj(zeta_p) zeta_q, exact for zeta_p == zeta_q."""
    cross = quat_mul(zq * _CONJ_SIGNS, zp) - quat_mul(zp * _CONJ_SIGNS, zq)
    return cross[..., 1:4]


def compose(p, q):
    """Heisenberg products p*q of paired point arrays (..., 7).

    (zeta_p + zeta_q, v_p + v_q + 2 Im(conj(zeta_q) zeta_p)).
    """
    zp = p[..., 0:4]
    zq = q[..., 0:4]
    out = np.empty(np.broadcast_shapes(p.shape, q.shape), dtype=np.float64)
    out[..., 0:4] = zp + zq
    out[..., 4:7] = p[..., 4:7] + q[..., 4:7] + _twist(zp, zq)
    return out


def cygan(p, q):
    """Cygan distances between paired point arrays (..., 7).

    Distance of the left-quotient: gauge of compose(inverse(q), p).
    """
    dz = p[..., 0:4] - q[..., 0:4]
    wv = p[..., 4:7] - q[..., 4:7] + _twist(p[..., 0:4], q[..., 0:4])
    m2 = dz[..., 0] ** 2 + dz[..., 1] ** 2 + dz[..., 2] ** 2 + dz[..., 3] ** 2
    wn2 = wv[..., 0] ** 2 + wv[..., 1] ** 2 + wv[..., 2] ** 2
    return (m2 * m2 + wn2) ** 0.25


def qmat_mul(a, b):
    """Product of 3x3 quaternionic matrices, shapes (..., 3, 3, 4).

    Entry order matters: c[i, j] = sum_k a[i, k] * b[k, j] with the left
    factor's entry on the left of each Hamilton product.
    """
    acc = None
    for k in range(3):
        term = quat_mul(a[..., :, k, None, :], b[..., None, k, :, :])
        acc = term if acc is None else acc + term
    return acc


def _identity_matrix():
    out = np.zeros((3, 3, 4))
    for i in range(3):
        out[i, i, 0] = 1.0
    return out


def word_deviation(gens, words):
    """Distance of word products from +/- identity, vectorized over words.

    gens: (5, 3, 3, 4) array of generator matrices; index 4 must hold the
    identity and is used as padding for words shorter than the row length.
    words: (m, L) int64 array of generator indices.

    Returns (m,) array of min(||W - I||, ||W + I||) where ||.|| is the
    maximum over entries of the quaternion modulus.
    """
    m, length = words.shape
    state = np.broadcast_to(_identity_matrix(), (m, 3, 3, 4)).copy()
    for step in range(length):
        state = qmat_mul(state, gens[words[:, step]])
    ident = _identity_matrix()
    dev_minus = np.sqrt(((state - ident) ** 2).sum(axis=-1)).max(axis=(-2, -1))
    dev_plus = np.sqrt(((state + ident) ** 2).sum(axis=-1)).max(axis=(-2, -1))
    return np.minimum(dev_minus, dev_plus)

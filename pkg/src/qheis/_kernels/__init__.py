"""Bulk numerical kernels with backend selection at import time.

The compiled extension (`qheis._kernels._fast`, Cython) is preferred; when
it is not built the NumPy reference (`qheis._kernels._ref`) takes over with
identical semantics.  `BACKEND` records which one is active.

Public contract (float64 arrays):

* ``quat_mul(a, b)``: (n, 4) x (n, 4) -> (n, 4) Hamilton products
* ``gauge(p)``: (n, 7) -> (n,) Koranyi gauges
* ``compose(p, q)``: (n, 7) x (n, 7) -> (n, 7) Heisenberg products
* ``cygan(p, q)``: (n, 7) x (n, 7) -> (n,) Cygan distances
* ``qmat_mul(a, b)``: (3, 3, 4) x (3, 3, 4) -> (3, 3, 4)
* ``word_deviation(gens, words)``: (5, 3, 3, 4), (m, L) int64 -> (m,)
"""

import numpy as np

from . import _ref

try:
    from . import _fast as _impl

    BACKEND = "compiled"
except ImportError:  # extension not built; NumPy fallback
    _impl = _ref
    BACKEND = "python"


def _as_c(arr, dtype=np.float64):
    return np.ascontiguousarray(arr, dtype=dtype)


def quat_mul(a, b):
    return _impl.quat_mul(_as_c(a), _as_c(b))


def gauge(p):
    return _impl.gauge(_as_c(p))


def compose(p, q):
    return _impl.compose(_as_c(p), _as_c(q))


def cygan(p, q):
    return _impl.cygan(_as_c(p), _as_c(q))


def qmat_mul(a, b):
    return _impl.qmat_mul(_as_c(a), _as_c(b))


def word_deviation(gens, words):
    return _impl.word_deviation(_as_c(gens), _as_c(words, dtype=np.int64))

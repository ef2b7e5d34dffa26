"""Distance estimates and their closed-form extrema, with grid oracles.

The closed forms certify the geometry (sphere diameters, enclosing radii);
the oracles re-derive each extremum by dense grid search plus golden-section
refinement so that no closed form is ever used to validate itself.

Conventions: `chord_bound` is the normalized upper bound for the squared
Cygan distance between two points of a common sphere, expressed in Koranyi
latitudes psi and the angle phi between the vertical axes; its maximum over
the second point is `diameter_factor`, whose square root scales the sphere
radius into a containment radius.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels, heisenberg
from .exceptions import DomainError, OriginInput, UnknownFunction
from .heisenberg import CyganSphere, HeisPoint, KoranyiCoords, from_koranyi, gauge
from .quaternion import I, ONE, Quaternion

_QUARTER_PI = math.pi / 4
_HALF_PI = math.pi / 2
#: Slack for floating endpoints of the closed angle domains.
_EDGE = 1e-12


def _check_range(name, value, lo, hi):
    arr = np.asarray(value, dtype=float)
    if np.any(arr < lo - _EDGE) or np.any(arr > hi + _EDGE):
        raise DomainError(f"{name} must lie in [{lo:.6g}, {hi:.6g}]")
    return arr


def _match_input(out, *raw):
    """Collapse to a plain float when every raw input was scalar."""
    if all(np.ndim(r) == 0 for r in raw):
        return float(out)
    return out


@dataclass(frozen=True)
class SphereAngles:
    """Latitudes of two sphere points and the angle between vertical axes."""

    psi1: float
    psi2: float
    phi: float

    def __post_init__(self):
        _check_range("psi1", self.psi1, -_HALF_PI, _HALF_PI)
        _check_range("psi2", self.psi2, -_HALF_PI, _HALF_PI)
        _check_range("phi", self.phi, 0.0, math.pi)


@dataclass(frozen=True)
class BoundReport:
    """Closed form next to its independently computed brute-force value."""

    name: str
    closed_form: float
    brute_force: float
    argmax: tuple
    abs_gap: float

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "closed_form": self.closed_form,
            "brute_force": self.brute_force,
            "argmax": list(self.argmax),
            "abs_gap": self.abs_gap,
        }


def _report(name, closed_form, brute_force, argmax) -> BoundReport:
    return BoundReport(name, float(closed_form), float(brute_force),
                       tuple(float(a) for a in argmax),
                       abs(float(closed_form) - float(brute_force)))


# -- the estimate on the squared Cygan distance ------------------------------


def distance_sq_bound(p1: HeisPoint, p2: HeisPoint) -> float:
    """Upper bound for the squared Cygan distance of two points.

    sqrt((|zeta1|^2 + |zeta2|^2)^2 + |v1 - v2|^2) + 2 |zeta1| |zeta2|;
    follows from the triangle inequality applied to the quotient's kappa,
    so it dominates cygan_distance(p1, p2)^2 for every pair.
    """
    a = p1.zeta.modulus_sq() + p2.zeta.modulus_sq()
    dv = (p1.v - p2.v).modulus_sq()
    return math.sqrt(a * a + dv) + 2.0 * p1.zeta.modulus() * p2.zeta.modulus()


def equality_residual(p1: HeisPoint, p2: HeisPoint, lam: float) -> float:
    """Norm of |zeta1|^2 + |zeta2|^2 + v1 - v2 - 2 lam conj(zeta2) zeta1.

    Vanishing for some lam <= 0 is the alignment certificate for equality
    in distance_sq_bound.
    """
    cross = p2.zeta.conjugate() * p1.zeta
    resid = (
        Quaternion(p1.zeta.modulus_sq() + p2.zeta.modulus_sq())
        + (p1.v - p2.v)
        - cross * (2.0 * lam)
    )
    return abs(resid)


# -- closed-form extrema ------------------------------------------------------


def boundary_profile(alpha, theta):
    """cos(theta + alpha) + sqrt(cos(2 theta) cos(2 alpha)) on [-pi/4, pi/4]^2.

    This is the half-angle profile of the chord bound along its extreme
    relative orientations; both arguments accept arrays.
    """
    a = _check_range("alpha", alpha, -_QUARTER_PI, _QUARTER_PI)
    t = _check_range("theta", theta, -_QUARTER_PI, _QUARTER_PI)
    prod = np.maximum(np.cos(2.0 * t) * np.cos(2.0 * a), 0.0)
    return _match_input(np.cos(t + a) + np.sqrt(prod), alpha, theta)


def boundary_profile_max(alpha):
    """Closed-form maximum of the profile over theta.

    (1/sqrt(2)) * ((1 - sin 2a)^(1/3) + (1 + sin 2a)^(1/3))^(3/2).
    """
    a = _check_range("alpha", alpha, -_QUARTER_PI, _QUARTER_PI)
    s = np.sin(2.0 * a)
    inner = np.cbrt(np.maximum(1.0 - s, 0.0)) + np.cbrt(np.maximum(1.0 + s, 0.0))
    return _match_input(inner**1.5 / math.sqrt(2.0), alpha)


def boundary_profile_argmax(alpha):
    """The maximizing theta, via the cube-root substitution at the critical
    point; continuous up to the corners where it reaches -/+ pi/4."""
    a = _check_range("alpha", alpha, -_QUARTER_PI, _QUARTER_PI)
    lam = np.cbrt(np.maximum(np.cos(a) - np.sin(a), 0.0))
    mu = np.cbrt(np.maximum(np.cos(a) + np.sin(a), 0.0))
    denom = np.sqrt(2.0 * (lam * lam + mu * mu))
    return _match_input(np.arctan2((lam - mu) / denom, (lam + mu) / denom), alpha)


def diameter_factor(psi1):
    """sqrt(2) * ((1 - sin psi)^(1/3) + (1 + sin psi)^(1/3))^(3/2).

    Equals 2 at the poles psi = +/- pi/2 and peaks at 4 on the equator.
    """
    p = _check_range("psi1", psi1, -_HALF_PI, _HALF_PI)
    s = np.sin(p)
    inner = np.cbrt(np.maximum(1.0 - s, 0.0)) + np.cbrt(np.maximum(1.0 + s, 0.0))
    return _match_input(math.sqrt(2.0) * inner**1.5, psi1)


def chord_bound(psi1, psi2, phi):
    """Normalized bound on the squared distance between two sphere points.

    sqrt(2 (1 + cos psi1 cos psi2 + cos phi sin psi1 sin psi2))
      + 2 sqrt(cos psi1 cos psi2),
    with psi in [-pi/2, pi/2] and phi in [0, pi].
    """
    p1 = _check_range("psi1", psi1, -_HALF_PI, _HALF_PI)
    p2 = _check_range("psi2", psi2, -_HALF_PI, _HALF_PI)
    ph = _check_range("phi", phi, 0.0, math.pi)
    c1, c2 = np.cos(p1), np.cos(p2)
    s1, s2 = np.sin(p1), np.sin(p2)
    inner = np.maximum(2.0 * (1.0 + c1 * c2 + np.cos(ph) * s1 * s2), 0.0)
    out = np.sqrt(inner) + 2.0 * np.sqrt(np.maximum(c1 * c2, 0.0))
    return _match_input(out, psi1, psi2, phi)


def chord_bound_max(psi1):
    """Maximum of the chord bound over the second point; the diameter factor."""
    return diameter_factor(psi1)


def containment_radius(r: float, psi1) -> float:
    """Radius about a sphere point at latitude psi1 containing the sphere.

    2^(1/4) r ((1 - sin psi1)^(1/3) + (1 + sin psi1)^(1/3))^(3/4), which is
    r times the square root of the diameter factor.
    """
    if r <= 0.0:
        raise DomainError("sphere radius must be positive")
    p = _check_range("psi1", psi1, -_HALF_PI, _HALF_PI)
    s = np.sin(p)
    inner = np.cbrt(np.maximum(1.0 - s, 0.0)) + np.cbrt(np.maximum(1.0 + s, 0.0))
    return _match_input(2.0**0.25 * r * inner**0.75, psi1)


def enclosing_radius(p1: HeisPoint) -> float:
    """Radius of the origin-centered ball containing both isometric spheres
    of the translation fixing the origin defined by p1.

    (2^(1/4) / K) ((1 - |v|/K^2)^(1/3) + (1 + |v|/K^2)^(1/3))^(3/4).
    The 1 - |v|/K^2 term is evaluated as |zeta|^4 / (K^2 (K^2 + |v|)), which
    avoids the cancellation (and its cube-root amplification) near vertical
    points.
    """
    k = gauge(p1)
    if k == 0.0:
        raise OriginInput("enclosing radius is undefined for the origin")
    k2 = heisenberg.gauge_sq(p1)
    vn = p1.v.modulus()
    minus = p1.zeta.modulus_sq() ** 2 / (k2 * (k2 + vn))
    plus = (k2 + vn) / k2
    inner = minus ** (1.0 / 3.0) + plus ** (1.0 / 3.0)
    return 2.0**0.25 / k * inner**0.75


# -- brute-force oracles ------------------------------------------------------


def _golden_max(f, lo: float, hi: float, iters: int = 50) -> tuple[float, float]:
    """Golden-section maximization; returns (argmax, value)."""
    inv_phi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    c = b - inv_phi * (b - a)
    d = a + inv_phi * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(iters):
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - inv_phi * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + inv_phi * (b - a)
            fd = f(d)
    xs = [a, c, d, b]
    vals = [f(x) for x in xs]
    best = int(np.argmax(vals))
    return xs[best], vals[best]


def _grid_refine_1d(f, lo, hi, resolution, iters=50):
    grid = np.linspace(lo, hi, resolution)
    vals = f(grid)
    k = int(np.argmax(vals))
    step = (hi - lo) / (resolution - 1)
    x, v = _golden_max(lambda t: float(f(t)), max(lo, grid[k] - step),
                       min(hi, grid[k] + step), iters)
    if vals[k] > v:
        return float(grid[k]), float(vals[k])
    return float(x), float(v)


def _grid_refine_2d(f, box, resolution, iters=50, sweeps=3):
    (lo1, hi1), (lo2, hi2) = box
    g1 = np.linspace(lo1, hi1, resolution)
    g2 = np.linspace(lo2, hi2, resolution)
    vals = f(g1[:, None], g2[None, :])
    k1, k2 = np.unravel_index(int(np.argmax(vals)), vals.shape)
    x1, x2 = float(g1[k1]), float(g2[k2])
    best = float(vals[k1, k2])
    step1 = (hi1 - lo1) / (resolution - 1)
    step2 = (hi2 - lo2) / (resolution - 1)
    for _ in range(sweeps):
        x1, v = _golden_max(lambda t: float(f(t, x2)),
                            max(lo1, x1 - step1), min(hi1, x1 + step1), iters)
        x2, v = _golden_max(lambda t: float(f(x1, t)),
                            max(lo2, x2 - step2), min(hi2, x2 + step2), iters)
        best = max(best, v)
    return (x1, x2), best


def _sphere_base_point(r: float, psi1: float) -> HeisPoint:
    """Canonical sphere point at latitude psi1 (axis conventions U=1, u2=i)."""
    return from_koranyi(KoranyiCoords(r, abs(psi1), ONE, I))


def brute_force_max(function_id: str, fixed_params: dict | None = None,
                    grid_resolution: int = 500, seed: int = 0) -> BoundReport:
    """Grid oracle for the closed-form extrema.

    Supported ids: ``boundary_profile`` (fixed alpha), ``chord_bound``
    (fixed psi1), ``diameter_factor_max``, ``diameter_factor_min``, and
    ``sphere_diameter`` (fixed r and psi1; Monte Carlo over sphere samples,
    grid_resolution^2 of them unless n_samples overrides).

    The dense grid is followed by golden-section refinement around the best
    cell, so the oracle value is independent of the closed forms it checks.
    """
    if grid_resolution < 100:
        raise DomainError("grid resolution must be at least 100 per axis")
    params = dict(fixed_params or {})

    if function_id == "boundary_profile":
        alpha = float(params["alpha"])
        closed = boundary_profile_max(alpha)
        arg, val = _grid_refine_1d(lambda t: boundary_profile(alpha, t),
                                   -_QUARTER_PI, _QUARTER_PI, grid_resolution)
        return _report(function_id, closed, val, (arg,))

    if function_id == "chord_bound":
        psi1 = float(params["psi1"])
        closed = chord_bound_max(psi1)
        arg, val = _grid_refine_2d(lambda a, b: chord_bound(psi1, a, b),
                                   ((-_HALF_PI, _HALF_PI), (0.0, math.pi)),
                                   grid_resolution)
        return _report(function_id, closed, val, arg)

    if function_id == "diameter_factor_max":
        arg, val = _grid_refine_1d(diameter_factor, -_HALF_PI, _HALF_PI,
                                   grid_resolution)
        return _report(function_id, 4.0, val, (arg,))

    if function_id == "diameter_factor_min":
        arg, val = _grid_refine_1d(lambda t: -diameter_factor(t),
                                   -_HALF_PI, _HALF_PI, grid_resolution)
        return _report(function_id, 2.0, -val, (arg,))

    if function_id == "sphere_diameter":
        r = float(params.get("r", 1.0))
        psi1 = float(params["psi1"])
        n = int(params.get("n_samples", grid_resolution * grid_resolution))
        closed = containment_radius(r, psi1)
        base = _sphere_base_point(r, psi1)
        sphere = CyganSphere(heisenberg.ORIGIN, r)
        samples = heisenberg.sample_sphere_array(sphere, n, seed)
        base_arr = np.broadcast_to(heisenberg.point_to_array(base), (n, 7))
        dists = _kernels.cygan(samples, base_arr)
        k = int(np.argmax(dists))
        return _report(function_id, closed, float(dists[k]),
                       tuple(samples[k]))

    raise UnknownFunction(f"no brute-force oracle named {function_id!r}")

"""Discreteness and freeness certificates for pairs of Heisenberg translations.

Given distinct nonzero points p1, p2, the generators are the translation A
fixing infinity (built from p2) and the inversion-conjugated translation B
fixing the origin (built from p1).  Three sufficient conditions are
evaluated; if any applicable one holds, the generated group is free and
discrete:

* ball condition: the enclosing balls of the two families of isometric
  spheres are separated by the inversion, K(p1) K(p2) >= rhs with rhs built
  from the enclosing radii (rhs ranges over [2, 4]);
* strip condition: the projected isometric-sphere disks of B fit inside a
  fundamental strip of A (needs |zeta2| > 0);
* swapped strip condition: the same with the roles of the generators
  exchanged (needs |zeta1| > 0).

A cross-paired variant of the swapped condition (its left side against the
unswapped right side) is computed for reference but never feeds the
verdict, since it is inconsistent with the role swap it claims to encode.
The simple gauge-product threshold K(p1) K(p2) >= 2 is likewise reported
on its own: it does not dominate the ball condition for mixed parameters,
so neither verdict is derived from the other.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels, fans
from .bounds import enclosing_radius
from .exceptions import (
    BudgetExceeded,
    DegenerateInput,
    PreconditionFailed,
    ZeroHorizontalPart,
)
from .heisenberg import (
    HeisPoint,
    cygan_distance,
    gauge,
    gauge_sq,
    point_to_array,
    sample_sphere_array,
)
from .quaternion import Quaternion
from .spgroup import (
    GroupMatrix,
    inversion_coords_array,
    inversion_matrix,
    isometric_sphere,
    sp_inverse,
    translation_fixing_origin,
    translation_matrix,
)

#: Absolute margin on every inequality gap; callers wanting strict
#: interiors filter on lhs - rhs themselves.
TOL_MARGIN = 1e-12
#: Below this, a horizontal part counts as zero for applicability.
TOL_DEGENERATE = 1e-12


@dataclass(frozen=True)
class ConditionReport:
    lhs: float
    rhs: float
    holds: bool
    applicable: bool = True

    def to_dict(self) -> dict:
        return {
            "lhs": None if math.isnan(self.lhs) else self.lhs,
            "rhs": None if math.isnan(self.rhs) else self.rhs,
            "holds": self.holds,
            "applicable": self.applicable,
        }


@dataclass(frozen=True)
class ThresholdReport:
    lhs: float
    holds: bool

    def to_dict(self) -> dict:
        return {"lhs": self.lhs, "holds": self.holds}


@dataclass(frozen=True)
class Certificate:
    p1: HeisPoint
    p2: HeisPoint
    ball: ConditionReport
    strip: ConditionReport
    strip_swapped: ConditionReport
    strip_cross: ConditionReport
    gauge_threshold: ThresholdReport
    free_and_discrete: bool

    def to_dict(self) -> dict:
        return {
            "p1": list(point_to_array(self.p1)),
            "p2": list(point_to_array(self.p2)),
            "ball": self.ball.to_dict(),
            "strip": self.strip.to_dict(),
            "strip_swapped": self.strip_swapped.to_dict(),
            "strip_cross": self.strip_cross.to_dict(),
            "gauge_threshold": self.gauge_threshold.to_dict(),
            "free_and_discrete": self.free_and_discrete,
        }


def _check_inputs(p1: HeisPoint, p2: HeisPoint) -> None:
    if gauge(p1) <= TOL_DEGENERATE:
        raise DegenerateInput("p1 is the origin")
    if gauge(p2) <= TOL_DEGENERATE:
        raise DegenerateInput("p2 is the origin")
    if cygan_distance(p1, p2) <= TOL_DEGENERATE:
        raise DegenerateInput("p1 and p2 must be distinct points")


def generators(p1: HeisPoint, p2: HeisPoint) -> tuple[GroupMatrix, GroupMatrix]:
    """The matrices (A, B): A translates by p2 fixing infinity, B is the
    inversion conjugate translating by p1 and fixing the origin."""
    return translation_matrix(p2), translation_fixing_origin(p1)


def _enclosure_factor(p: HeisPoint) -> float:
    # (1 - |v|/K^2)^(1/3) + (1 + |v|/K^2)^(1/3); the first term is computed
    # as |zeta|^4 / (K^2 (K^2 + |v|)) so vertical points give exactly 0
    k2 = gauge_sq(p)
    vn = p.v.modulus()
    minus = p.zeta.modulus_sq() ** 2 / (k2 * (k2 + vn))
    plus = (k2 + vn) / k2
    return minus ** (1.0 / 3.0) + plus ** (1.0 / 3.0)


def ball_condition(p1: HeisPoint, p2: HeisPoint) -> ConditionReport:
    """K(p1) K(p2) against sqrt(2) times the enclosure factors^(3/4).

    Equivalent to enclosing_radius(p1) * enclosing_radius(p2) <= 1, i.e. the
    ball holding B's isometric spheres sits inside the inversion image of
    the ball holding A's.
    """
    _check_inputs(p1, p2)
    lhs = gauge(p1) * gauge(p2)
    rhs = math.sqrt(2.0) * (_enclosure_factor(p1) * _enclosure_factor(p2)) ** 0.75
    return ConditionReport(lhs, rhs, lhs >= rhs - TOL_MARGIN)


def strip_condition(p1: HeisPoint, p2: HeisPoint) -> ConditionReport:
    """Fit of B's projected isometric spheres in a fundamental strip of A."""
    _check_inputs(p1, p2)
    try:
        check = fans.strip_containment_check(p1, p2, tol=TOL_MARGIN)
    except ZeroHorizontalPart:
        return ConditionReport(math.nan, math.nan, False, applicable=False)
    return ConditionReport(check.lhs, check.rhs, check.holds)


def strip_condition_swapped(p1: HeisPoint, p2: HeisPoint) -> ConditionReport:
    """The strip condition with the roles of the generators exchanged."""
    _check_inputs(p1, p2)
    try:
        check = fans.strip_containment_check(p2, p1, tol=TOL_MARGIN)
    except ZeroHorizontalPart:
        return ConditionReport(math.nan, math.nan, False, applicable=False)
    return ConditionReport(check.lhs, check.rhs, check.holds)


def strip_condition_cross(p1: HeisPoint, p2: HeisPoint) -> ConditionReport:
    """Reference variant pairing the swapped left side with the unswapped
    right side (signed overlap, no absolute value).

    Inconsistent with the role swap it suggests; computed for comparison
    and never used in the verdict.
    """
    _check_inputs(p1, p2)
    z1n = p1.zeta.modulus()
    z2n = p2.zeta.modulus()
    if z1n <= TOL_DEGENERATE or z2n <= TOL_DEGENERATE:
        return ConditionReport(math.nan, math.nan, False, applicable=False)
    k1 = gauge(p1)
    lhs = z1n * gauge(p2)
    rhs = 2.0 * z1n**2 * (p1.zeta * p2.zeta.conjugate()).real / (z2n * k1**3) + 2.0
    return ConditionReport(lhs, rhs, lhs >= rhs - TOL_MARGIN)


def gauge_product_test(p1: HeisPoint, p2: HeisPoint) -> ThresholdReport:
    """The simple threshold K(p1) K(p2) >= 2, reported separately."""
    _check_inputs(p1, p2)
    lhs = gauge(p1) * gauge(p2)
    return ThresholdReport(lhs, lhs >= 2.0 - TOL_MARGIN)


def certify(p1: HeisPoint, p2: HeisPoint) -> Certificate:
    """Evaluate every condition; the verdict is their applicable disjunction."""
    _check_inputs(p1, p2)
    ball = ball_condition(p1, p2)
    strip = strip_condition(p1, p2)
    swapped = strip_condition_swapped(p1, p2)
    cross = strip_condition_cross(p1, p2)
    threshold = gauge_product_test(p1, p2)
    verdict = (
        ball.holds
        or (strip.applicable and strip.holds)
        or (swapped.applicable and swapped.holds)
    )
    return Certificate(p1, p2, ball, strip, swapped, cross, threshold, verdict)


# -- restriction to the complex slice ----------------------------------------


@dataclass(frozen=True)
class ComplexParams:
    """Parameters (s e^{i theta}, t i) of a pair restricted to C x R."""

    s1: float
    theta1: float
    t1: float
    s2: float
    theta2: float
    t2: float

    def __post_init__(self):
        if self.s1 < 0.0 or self.s2 < 0.0:
            raise ValueError("the moduli s1, s2 must be nonnegative")

    def to_points(self) -> tuple[HeisPoint, HeisPoint]:
        z1 = Quaternion(self.s1 * math.cos(self.theta1),
                        self.s1 * math.sin(self.theta1))
        z2 = Quaternion(self.s2 * math.cos(self.theta2),
                        self.s2 * math.sin(self.theta2))
        return (HeisPoint(z1, Quaternion(0.0, self.t1)),
                HeisPoint(z2, Quaternion(0.0, self.t2)))


@dataclass(frozen=True)
class ComplexSliceReport:
    """Complex-slice inequalities next to the quaternionic certificate."""

    a: ConditionReport
    b: ConditionReport
    c: ConditionReport
    c_alt_split: ConditionReport
    split_warning: bool
    certificate: Certificate

    def to_dict(self) -> dict:
        return {
            "a": self.a.to_dict(),
            "b": self.b.to_dict(),
            "c": self.c.to_dict(),
            "c_alt_split": self.c_alt_split.to_dict(),
            "split_warning": self.split_warning,
            "certificate": self.certificate.to_dict(),
        }


def complex_slice_conditions(params: ComplexParams) -> ComplexSliceReport:
    """Evaluate the complex-slice inequalities independently of the
    quaternionic code path and cross-check item (a) against the ball
    condition (they must agree to 1e-12).

    Item (c)'s inner case split tests the second modulus where symmetry
    with item (b) calls for the first; both variants are reported and
    `split_warning` flags inputs on which they differ.
    """
    p1, p2 = params.to_points()
    cert = certify(p1, p2)

    s1, t1, s2, t2 = params.s1, params.t1, params.s2, params.t2
    r1 = (s1**4 + t1**2) ** 0.25
    r2 = (s2**4 + t2**2) ** 0.25
    dtheta = params.theta1 - params.theta2

    def factor(t, s):
        # (1 - t/r^2)^(1/3) + (1 + t/r^2)^(1/3), with the cancelling branch
        # rewritten as s^4 / (r^2 (r^2 +- t)) for stability near |t| = r^2
        r2_exact = math.sqrt(s**4 + t * t)
        if t >= 0.0:
            minus = s**4 / (r2_exact * (r2_exact + t))
            plus = (r2_exact + t) / r2_exact
        else:
            minus = (r2_exact - t) / r2_exact
            plus = s**4 / (r2_exact * (r2_exact - t))
        return minus ** (1.0 / 3.0) + plus ** (1.0 / 3.0)

    a_lhs = r1 * r2
    a_rhs = math.sqrt(2.0) * (factor(t2, s2) * factor(t1, s1)) ** 0.75
    item_a = ConditionReport(a_lhs, a_rhs, a_lhs >= a_rhs - TOL_MARGIN)
    if (abs(item_a.lhs - cert.ball.lhs) > 1e-12
            or abs(item_a.rhs - cert.ball.rhs) > 1e-12):
        raise AssertionError(
            "complex-slice item (a) disagrees with the quaternionic ball "
            f"condition: {item_a} vs {cert.ball}"
        )

    if s1 == 0.0:
        item_b = ConditionReport(math.nan, math.nan, False, applicable=False)
    else:
        b_rhs = 2.0 * (s2 / r2) ** 3 * math.cos(dtheta) + 2.0 if s2 != 0.0 else 2.0
        item_b = ConditionReport(s1 * r2, b_rhs, s1 * r2 >= b_rhs - TOL_MARGIN)

    if s2 == 0.0:
        item_c = ConditionReport(math.nan, math.nan, False, applicable=False)
        item_c_alt = item_c
        split_warning = False
    else:
        # inner split on the second modulus: always the first branch under
        # the outer guard, so it evaluates to 2 (s1/r1)^3 cos + 2 regardless
        c_rhs = 2.0 * (s1 / r1) ** 3 * math.cos(dtheta) + 2.0
        item_c = ConditionReport(s2 * r1, c_rhs, s2 * r1 >= c_rhs - TOL_MARGIN)
        c_alt_rhs = c_rhs if s1 != 0.0 else 2.0
        item_c_alt = ConditionReport(s2 * r1, c_alt_rhs,
                                     s2 * r1 >= c_alt_rhs - TOL_MARGIN)
        # flag inputs where the two readings of the split pick different
        # branches (the numerical values coincide at 2 there, but the
        # ambiguity is worth surfacing)
        split_warning = s1 == 0.0

    return ComplexSliceReport(item_a, item_b, item_c, item_c_alt,
                              split_warning, cert)


# -- geometric and word-level verification -----------------------------------


@dataclass(frozen=True)
class KleinReport:
    ok: bool
    min_gap: float

    def to_dict(self) -> dict:
        return {"ok": self.ok, "min_gap": self.min_gap}


def klein_verify(p1: HeisPoint, p2: HeisPoint, n_samples: int = 2000,
                 seed: int = 0) -> KleinReport:
    """Sample the isometric spheres and confirm the separated-ball picture.

    Requires the ball condition; then every sampled point of B's isometric
    spheres must have gauge at most enclosing_radius(p1), every inversion
    image of a sampled point of A's (conjugated) isometric spheres must
    have gauge at least 1/enclosing_radius(p2), and the two radii must be
    ordered.  min_gap = 1/enclosing_radius(p2) - enclosing_radius(p1).
    """
    _check_inputs(p1, p2)
    if not ball_condition(p1, p2).holds:
        raise PreconditionFailed("klein_verify requires the ball condition")

    a_mat, b_mat = generators(p1, p2)
    iota = inversion_matrix()
    a_conj = iota @ a_mat @ iota

    r_o = enclosing_radius(p1)
    r_inf = enclosing_radius(p2)
    min_gap = 1.0 / r_inf - r_o

    ok = min_gap >= -1e-9
    for idx, mat in enumerate((b_mat, sp_inverse(b_mat))):
        sphere = isometric_sphere(mat)
        pts = sample_sphere_array(sphere, n_samples, seed + idx)
        gauges = _kernels.gauge(pts)
        ok = ok and bool(gauges.max() <= r_o + 1e-9 * (1.0 + r_o))
    for idx, mat in enumerate((a_conj, sp_inverse(a_conj))):
        sphere = isometric_sphere(mat)
        pts = sample_sphere_array(sphere, n_samples, seed + 2 + idx)
        gauges = _kernels.gauge(pts)
        ok = ok and bool(gauges.max() <= r_inf + 1e-9 * (1.0 + r_inf))
        inverted = inversion_coords_array(pts)
        inv_gauges = _kernels.gauge(inverted)
        floor = 1.0 / r_inf
        ok = ok and bool(inv_gauges.min() >= floor - 1e-9 * (1.0 + floor))
    return KleinReport(ok, min_gap)


@dataclass(frozen=True)
class WordReport:
    all_nontrivial: bool
    worst_distance: float
    n_words: int
    max_len: int

    def to_dict(self) -> dict:
        return {
            "all_nontrivial": self.all_nontrivial,
            "worst_distance": self.worst_distance,
            "n_words": self.n_words,
            "max_len": self.max_len,
        }


def _generator_stack(p1: HeisPoint, p2: HeisPoint) -> np.ndarray:
    a_mat, b_mat = generators(p1, p2)
    mats = [a_mat, sp_inverse(a_mat), b_mat, sp_inverse(b_mat),
            GroupMatrix.identity()]
    return np.array([m.to_array() for m in mats])


def word_matrix(p1: HeisPoint, p2: HeisPoint, letters) -> GroupMatrix:
    """Product of generators for a word over indices 0:A, 1:A^-1, 2:B, 3:B^-1."""
    a_mat, b_mat = generators(p1, p2)
    table = [a_mat, sp_inverse(a_mat), b_mat, sp_inverse(b_mat)]
    out = GroupMatrix.identity()
    for g in letters:
        out = out @ table[int(g)]
    return out


def sample_reduced_words(max_len: int, n_words: int, seed: int) -> np.ndarray:
    """(n_words, max_len) indices of reduced words, padded with 4 (identity).

    Lengths are uniform on 1..max_len; each extension chooses uniformly
    among the three letters that do not cancel the previous one (the
    inverse of letter g is g XOR 1).
    """
    rng = np.random.default_rng(seed)
    lengths = rng.integers(1, max_len + 1, size=n_words)
    words = np.full((n_words, max_len), 4, dtype=np.int64)
    words[:, 0] = rng.integers(0, 4, size=n_words)
    for pos in range(1, max_len):
        active = lengths > pos
        if not np.any(active):
            break
        draw = rng.integers(0, 3, size=n_words)
        forbidden = words[:, pos - 1] ^ 1
        step = draw + (draw >= forbidden)
        words[active, pos] = step[active]
    return words


def word_nontriviality(p1: HeisPoint, p2: HeisPoint, max_len: int = 12,
                       n_words: int = 1000, seed: int = 0) -> WordReport:
    """Check sampled reduced words stay away from plus or minus identity.

    A necessary condition for freeness; records the minimum over words of
    min(||W - I||, ||W + I||) in the max-entry norm.  Word length is capped
    at 30 to keep multiplicative rounding growth below the 1e-4 verdict
    threshold.
    """
    if max_len > 30:
        raise BudgetExceeded("word length budget is 30 letters")
    if max_len < 1 or n_words < 1:
        raise DegenerateInput("need max_len >= 1 and n_words >= 1")
    _check_inputs(p1, p2)
    gens = _generator_stack(p1, p2)
    words = sample_reduced_words(max_len, n_words, seed)
    deviations = _kernels.word_deviation(gens, words)
    worst = float(deviations.min())
    return WordReport(worst > 1e-4, worst, n_words, max_len)

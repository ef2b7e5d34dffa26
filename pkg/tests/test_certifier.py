import math

import numpy as np
import pytest

from qheis.bounds import enclosing_radius
from qheis.certifier import (
    ComplexParams,
    GroupMatrix,
    ball_condition,
    certify,
    complex_slice_conditions,
    gauge_product_test,
    generators,
    klein_verify,
    sample_reduced_words,
    strip_condition,
    strip_condition_swapped,
    word_matrix,
    word_nontriviality,
)
from qheis.exceptions import BudgetExceeded, DegenerateInput, PreconditionFailed
from qheis.heisenberg import HeisPoint, compose, gauge
from qheis.spgroup import INFINITY, act

from conftest import make_point, random_point, random_unit_quaternion


def random_distinct_pair(rng, scale=2.0):
    while True:
        p1, p2 = random_point(rng, scale), random_point(rng, scale)
        if gauge(p1) > 0.2 and gauge(p2) > 0.2 and \
                gauge(compose(p1, HeisPoint(-p2.zeta, -p2.v))) > 0.1:
            return p1, p2


class TestBallCondition:
    def test_vertical_reduction(self):
        # vertical pairs certify exactly when sqrt(|t1 t2|) >= 2
        for t1, t2, expect in [(4.0, 4.0, True), (2.0, 2.0, True),
                               (1.9, 2.0, False), (16.0, 0.25, True)]:
            rep = ball_condition(make_point(vx=t1), make_point(vy=t2))
            assert rep.rhs == pytest.approx(2.0, abs=1e-12)
            assert rep.holds is expect

    def test_horizontal_reduction(self):
        for a, b, expect in [(1.0, 4.0, True), (0.5, 8.0, True),
                             (1.0, 3.9, False)]:
            rep = ball_condition(make_point(zw=a), make_point(zw=b))
            assert rep.rhs == pytest.approx(4.0, abs=1e-12)
            assert rep.holds is expect

    def test_mixed_threshold(self):
        # p1 = (0, 4i), p2 = (c, 0): holds iff 2|c| >= 2 sqrt(2)
        for c, expect in [(1.5, True), (math.sqrt(2), True), (1.41, False)]:
            rep = ball_condition(make_point(vx=4), make_point(zw=c))
            assert rep.holds is expect

    def test_symmetric_under_swap(self, rng):
        for _ in range(100):
            p1, p2 = random_distinct_pair(rng)
            a = ball_condition(p1, p2)
            b = ball_condition(p2, p1)
            assert a.lhs == pytest.approx(b.lhs, rel=1e-12)
            assert a.rhs == pytest.approx(b.rhs, rel=1e-12)

    def test_rhs_matches_enclosing_radii(self, rng):
        for _ in range(100):
            p1, p2 = random_distinct_pair(rng)
            rep = ball_condition(p1, p2)
            product = (enclosing_radius(p1) * enclosing_radius(p2)
                       * gauge(p1) * gauge(p2))
            assert rep.rhs == pytest.approx(product, rel=1e-10)
            assert 2.0 - 1e-12 <= rep.rhs <= 4.0 + 1e-12

    def test_rotation_invariance(self, rng):
        for _ in range(50):
            p1, p2 = random_distinct_pair(rng)
            mu = random_unit_quaternion(rng)
            q1 = HeisPoint(mu * p1.zeta, p1.v)
            q2 = HeisPoint(mu * p2.zeta, p2.v)
            a, b = certify(p1, p2), certify(q1, q2)
            assert a.ball.lhs == pytest.approx(b.ball.lhs, abs=1e-10)
            assert a.ball.rhs == pytest.approx(b.ball.rhs, abs=1e-10)
            if a.strip.applicable:
                assert a.strip.lhs == pytest.approx(b.strip.lhs, abs=1e-10)
                assert a.strip.rhs == pytest.approx(b.strip.rhs, abs=1e-10)

    def test_dilation_covariance(self, rng):
        for _ in range(50):
            p1, p2 = random_distinct_pair(rng)
            delta = float(rng.uniform(0.3, 3.0))
            q1 = HeisPoint(p1.zeta * delta, p1.v * delta**2)
            q2 = HeisPoint(p2.zeta * delta, p2.v * delta**2)
            a, b = ball_condition(p1, p2), ball_condition(q1, q2)
            assert b.lhs == pytest.approx(delta**2 * a.lhs, rel=1e-10)
            assert b.rhs == pytest.approx(a.rhs, rel=1e-10)


class TestStripConditions:
    def test_boundary_example(self):
        rep = strip_condition(make_point(zw=1), make_point(zw=4))
        assert rep.holds and rep.applicable

    def test_vertical_p2_not_applicable(self):
        rep = strip_condition(make_point(zw=1), make_point(vx=1))
        assert not rep.applicable and not rep.holds

    def test_swapped_boundary_example(self):
        rep = strip_condition_swapped(make_point(zw=4), make_point(zw=1))
        assert rep.holds
        assert rep.lhs == pytest.approx(4.0, abs=1e-12)
        assert rep.rhs == pytest.approx(4.0, abs=1e-12)

    def test_swapped_vertical_p1_not_applicable(self):
        rep = strip_condition_swapped(make_point(vx=1), make_point(zw=1))
        assert not rep.applicable

    def test_cross_variant_never_feeds_verdict(self):
        # the cross pairing accepts this non-free pair; the verdict refuses it
        cert = certify(make_point(zw=1), make_point(zw=-3))
        assert cert.strip_cross.holds
        assert not cert.free_and_discrete


class TestGaugeThreshold:
    def test_boundary(self):
        rep = gauge_product_test(make_point(vx=4), make_point(vx=0, vy=1))
        assert rep.lhs == pytest.approx(2.0, abs=1e-12) and rep.holds

    def test_below(self):
        rep = gauge_product_test(make_point(zw=1), make_point(zw=1.001))
        assert not rep.holds

    def test_vertical_agrees_with_ball(self, rng):
        for _ in range(100):
            t1, t2 = rng.uniform(0.3, 6.0, 2)
            p1, p2 = make_point(vx=t1), make_point(vy=t2)
            assert gauge_product_test(p1, p2).holds == \
                ball_condition(p1, p2).holds


class TestCertify:
    def test_identical_points_rejected(self):
        with pytest.raises(DegenerateInput):
            certify(make_point(vx=4), make_point(vx=4))

    def test_origin_rejected(self):
        with pytest.raises(DegenerateInput, match="p1"):
            certify(make_point(), make_point(zw=1))
        with pytest.raises(DegenerateInput, match="p2"):
            certify(make_point(zw=1), make_point())

    def test_vertical_pair_certificate(self):
        cert = certify(make_point(vx=2), make_point(vy=2))
        assert cert.ball.holds and cert.free_and_discrete
        assert not cert.strip.applicable

    def test_near_pair_fails(self):
        cert = certify(make_point(zw=1), make_point(zw=1, vx=1e-3))
        assert not cert.free_and_discrete
        assert cert.ball.lhs == pytest.approx(1.0, abs=1e-3)

    def test_verdict_is_disjunction(self, rng):
        for _ in range(200):
            p1, p2 = random_distinct_pair(rng)
            cert = certify(p1, p2)
            expected = (cert.ball.holds
                        or (cert.strip.applicable and cert.strip.holds)
                        or (cert.strip_swapped.applicable
                            and cert.strip_swapped.holds))
            assert cert.free_and_discrete == expected

    def test_to_dict_round_trip(self):
        import json

        cert = certify(make_point(vx=4), make_point(vy=4))
        payload = json.dumps(cert.to_dict(), sort_keys=True)
        back = json.loads(payload)
        assert back["free_and_discrete"] is True
        assert back["strip"]["lhs"] is None  # not applicable -> null

    def test_vertical_verdict_monotone_under_dilation(self, rng):
        # scaling both vertical points by a common dilation with delta >= 1
        # never turns a certified pair into a refused one
        for _ in range(50):
            t1, t2 = rng.uniform(0.3, 6.0, 2)
            p1, p2 = make_point(vx=float(t1)), make_point(vy=float(t2))
            if not certify(p1, p2).free_and_discrete:
                continue
            delta = float(rng.uniform(1.0, 5.0))
            q1 = HeisPoint(p1.zeta * delta, p1.v * delta**2)
            q2 = HeisPoint(p2.zeta * delta, p2.v * delta**2)
            assert certify(q1, q2).free_and_discrete


class TestComplexSlice:
    def test_vertical_matches_ball(self):
        rep = complex_slice_conditions(ComplexParams(0.0, 0.0, 4.0, 0.0, 0.0, -4.0))
        assert rep.a.holds
        assert rep.a.lhs == pytest.approx(rep.certificate.ball.lhs, abs=1e-12)
        assert rep.a.rhs == pytest.approx(rep.certificate.ball.rhs, abs=1e-12)

    def test_agreement_on_random_inputs(self, rng):
        for _ in range(200):
            params = ComplexParams(
                float(rng.uniform(0, 2)), float(rng.uniform(-math.pi, math.pi)),
                float(rng.uniform(-3, 3)), float(rng.uniform(0, 2)),
                float(rng.uniform(-math.pi, math.pi)), float(rng.uniform(-3, 3)))
            try:
                rep = complex_slice_conditions(params)
            except DegenerateInput:
                continue
            assert abs(rep.a.lhs - rep.certificate.ball.lhs) <= 1e-12
            assert abs(rep.a.rhs - rep.certificate.ball.rhs) <= 1e-12

    def test_item_b_matches_swapped_condition_when_aligned(self, rng):
        # for cos(theta1 - theta2) >= 0 item (b) and the swapped strip
        # condition are the same inequality
        count = 0
        while count < 50:
            params = ComplexParams(
                float(rng.uniform(0.1, 2)), float(rng.uniform(-math.pi, math.pi)),
                float(rng.uniform(-3, 3)), float(rng.uniform(0.1, 2)),
                float(rng.uniform(-math.pi, math.pi)), float(rng.uniform(-3, 3)))
            if math.cos(params.theta1 - params.theta2) < 0:
                continue
            try:
                rep = complex_slice_conditions(params)
            except DegenerateInput:
                continue
            count += 1
            sw = rep.certificate.strip_swapped
            assert rep.b.lhs == pytest.approx(sw.lhs, rel=1e-12)
            assert rep.b.rhs == pytest.approx(sw.rhs, rel=1e-11, abs=1e-12)

    def test_perpendicular_reduction(self):
        # theta1 - theta2 = pi/2, t = 0: item (b) reduces to s1 s2 >= 2
        rep = complex_slice_conditions(ComplexParams(2.0, math.pi / 2, 0.0,
                                              1.0, 0.0, 0.0))
        assert rep.b.lhs == pytest.approx(2.0, abs=1e-12)
        assert rep.b.rhs == pytest.approx(2.0, abs=1e-12)
        assert rep.b.holds

    def test_aligned_horizontal_reduction(self):
        # equal angles, t = 0, r2 = s2: item (b) reads s1 s2 >= 4
        rep = complex_slice_conditions(ComplexParams(1.0, 0.3, 0.0, 4.0, 0.3, 0.0))
        assert rep.b.lhs == pytest.approx(4.0, abs=1e-12)
        assert rep.b.rhs == pytest.approx(4.0, abs=1e-12)

    def test_negative_s_rejected(self):
        with pytest.raises(ValueError):
            ComplexParams(-1.0, 0.0, 0.0, 1.0, 0.0, 0.0)


class TestGenerators:
    def test_fixed_points(self, rng):
        p1, p2 = random_distinct_pair(rng)
        a_mat, b_mat = generators(p1, p2)
        assert act(a_mat, INFINITY) is INFINITY
        from qheis.heisenberg import ORIGIN

        img = act(b_mat, ORIGIN)
        assert img is not INFINITY and gauge(img) < 1e-12

    def test_word_matrix_single_letters(self, rng):
        p1, p2 = random_distinct_pair(rng)
        a_mat, b_mat = generators(p1, p2)
        assert word_matrix(p1, p2, [0]).entries == a_mat.entries
        assert word_matrix(p1, p2, [2]).entries == b_mat.entries
        prod = word_matrix(p1, p2, [0, 1])
        ident = GroupMatrix.identity()
        assert max(abs(prod.entry(i, j) - ident.entry(i, j))
                   for i in range(3) for j in range(3)) < 1e-12


class TestKleinVerify:
    def test_comfortable_pair(self):
        rep = klein_verify(make_point(vx=9), make_point(vy=9),
                           n_samples=1000, seed=5)
        assert rep.ok and rep.min_gap > 0

    def test_boundary_pair(self):
        rep = klein_verify(make_point(vx=2), make_point(vy=2),
                           n_samples=1000, seed=5)
        assert rep.ok
        assert rep.min_gap == pytest.approx(0.0, abs=1e-9)

    def test_precondition(self):
        with pytest.raises(PreconditionFailed):
            klein_verify(make_point(zw=1), make_point(zw=1.1))

    def test_ok_whenever_ball_condition_holds(self, rng):
        found = 0
        while found < 100:
            p1, p2 = random_distinct_pair(rng, scale=2.5)
            if not ball_condition(p1, p2).holds:
                continue
            found += 1
            rep = klein_verify(p1, p2, n_samples=300, seed=found)
            assert rep.ok and rep.min_gap >= -1e-9


class TestWords:
    def test_single_letters_nontrivial(self):
        p1, p2 = make_point(vx=4), make_point(vx=1)
        rep = word_nontriviality(p1, p2, max_len=1, n_words=50, seed=0)
        assert rep.all_nontrivial

    def test_commutator_nontrivial(self):
        p1, p2 = make_point(vx=4), make_point(vx=1)
        w = word_matrix(p1, p2, [0, 2, 1, 3])
        ident = GroupMatrix.identity()
        dev = max(abs(w.entry(i, j) - ident.entry(i, j))
                  for i in range(3) for j in range(3))
        assert dev > 1e-3

    def test_boundary_vertical_pair(self):
        rep = word_nontriviality(make_point(vx=4), make_point(vx=1),
                                 max_len=12, n_words=1000, seed=3)
        assert rep.all_nontrivial and rep.worst_distance > 1e-4

    def test_budget(self):
        with pytest.raises(BudgetExceeded):
            word_nontriviality(make_point(vx=4), make_point(vx=1), max_len=31)

    def test_degenerate_points(self):
        with pytest.raises(DegenerateInput):
            word_nontriviality(make_point(vx=4), make_point(vx=4))

    def test_reduced_words_have_no_cancellation(self):
        words = sample_reduced_words(max_len=12, n_words=500, seed=7)
        assert words.shape == (500, 12)
        for row in words:
            letters = [g for g in row if g != 4]
            assert len(letters) >= 1
            for a, b in zip(letters, letters[1:]):
                assert b != a ^ 1
            # padding only at the tail
            tail = list(row).index(4) if 4 in row else 12
            assert all(g == 4 for g in row[tail:])

    def test_deterministic(self):
        a = sample_reduced_words(10, 100, seed=3)
        b = sample_reduced_words(10, 100, seed=3)
        assert np.array_equal(a, b)

    def test_nonfree_pair_has_trivial_word(self):
        # (1,0) with (-3,0): the alternating sixth power collapses to the
        # identity, so this pair can never be certified
        p1, p2 = make_point(zw=1), make_point(zw=-3)
        w = word_matrix(p1, p2, [1, 2, 1, 2, 1, 2])
        ident = GroupMatrix.identity()
        dev = max(abs(w.entry(i, j) - ident.entry(i, j))
                  for i in range(3) for j in range(3))
        assert dev < 1e-12
        assert not certify(p1, p2).free_and_discrete

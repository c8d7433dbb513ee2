import numpy as np
import pytest
from numpy.testing import assert_allclose

from helpers import cloud_spectrum, rng_for
from offcorners import (
    build_t2_unitary,
    corner_pair,
    coordinate_projection,
    falsify_deterministic,
    falsify_search,
    fit_circline,
    numerical_rank,
    operator_norm,
    random_normal,
    random_unitary,
    solve_t2_parameters,
    t2_determinant_gap,
    verify_witness,
    witness_4x4,
)
from offcorners.errors import (
    BetaRealError,
    DeltaDegenerateError,
    DeltaRealError,
    DimensionMismatchError,
    FullOrZeroRankError,
    NotNormalError,
    VerificationFailedError,
)


def _t2_invariants_hold(p):
    ratio = np.exp(1j * p.theta) * p.sigma**2 / p.gamma**2
    return (
        abs(p.sigma**2 + p.gamma**2 - 1.0) < 1e-12
        and abs(p.sigma - p.gamma) > 1e-9
        and abs(p.theta - np.pi * round(p.theta / np.pi)) > 1e-9
        and abs(ratio + 1.0 / ratio - p.beta) < 1e-9 * max(1.0, abs(p.beta))
    )


class TestT2Parameters:
    def test_beta_2i_hand_solution(self):
        # zeta^2 - 2i zeta + 1 = 0 has roots i(1 +- sqrt2); |zeta| > 1 picks i(1+sqrt2)
        p = solve_t2_parameters(2j)
        assert abs(p.zeta - 1j * (1.0 + np.sqrt(2.0))) < 1e-12
        assert p.theta == pytest.approx(np.pi / 2, abs=1e-12)
        assert p.sigma**2 / p.gamma**2 == pytest.approx(1.0 + np.sqrt(2.0), abs=1e-12)

    def test_beta_from_delta_i(self):
        # delta = i corresponds to beta = 8/(2-i) - 6 = -2.8 + 1.6i
        beta = 8.0 / (2.0 - 1j) - 6.0
        assert abs(beta - (-2.8 + 1.6j)) < 1e-12
        assert _t2_invariants_hold(solve_t2_parameters(beta))

    def test_invariants_property(self):
        rng = rng_for(60)
        count = 0
        for _ in range(10_000):
            beta = complex(rng.standard_normal(), rng.standard_normal())
            if abs(beta.imag) <= 1e-9 * (1.0 + abs(beta)):
                continue
            count += 1
            assert _t2_invariants_hold(solve_t2_parameters(beta))
        assert count > 9_900

    def test_real_beta_rejected(self):
        with pytest.raises(BetaRealError):
            solve_t2_parameters(5.0)

    def test_root_outside_unit_disc(self):
        rng = rng_for(61)
        for _ in range(100):
            beta = complex(rng.standard_normal(), rng.standard_normal())
            if abs(beta.imag) <= 1e-6:
                continue
            assert abs(solve_t2_parameters(beta).zeta) > 1.0


class TestT2Unitary:
    def test_unitarity(self):
        rng = rng_for(62)
        for _ in range(50):
            beta = complex(rng.standard_normal(), rng.standard_normal())
            if abs(beta.imag) <= 1e-6:
                continue
            u = build_t2_unitary(solve_t2_parameters(beta))
            assert operator_norm(u.conj().T @ u - np.eye(4)) < 1e-12

    def test_determinant_closed_form(self):
        rng = rng_for(63)
        for _ in range(100):
            beta = complex(rng.standard_normal(), rng.standard_normal())
            if abs(beta.imag) <= 1e-6:
                continue
            params = solve_t2_parameters(beta)
            u = build_t2_unitary(params)
            t = np.diag(np.array([0.0, 1.0, 2.0, 2.0 - 8.0 / (beta + 6.0)], dtype=complex))
            m = u.conj().T @ t @ u
            det_gap = np.linalg.det(m[:2, 2:]) - np.linalg.det(m[2:, :2])
            expect = t2_determinant_gap(params)
            assert abs(det_gap - expect) < 1e-9 * max(1.0, abs(expect))
            # the ne determinant itself vanishes: rank <= 1
            assert abs(np.linalg.det(m[:2, 2:])) < 1e-12
            assert numerical_rank(m[:2, 2:]) <= 1
            assert numerical_rank(m[2:, :2]) == 2


class TestWitness4x4:
    def test_delta_i(self):
        t, w = witness_4x4(1j)
        assert_allclose(np.diag(t), [0.0, 1.0, 2.0, 1j], atol=1e-15)
        assert w.rank_ne == 1 and w.rank_sw == 2
        assert abs(w.norm_ne - w.norm_sw) > 1e-6
        assert w.kind == "both"

    def test_delta_one_plus_i(self):
        _, w = witness_4x4(1.0 + 1j)
        assert w.rank_ne < w.rank_sw

    def test_measured_against_model(self):
        t, w = witness_4x4(2j)
        rep = corner_pair(t, w.projection)
        assert rep.rank_ne == w.rank_ne and rep.rank_sw == w.rank_sw
        assert rep.norm_ne == pytest.approx(w.norm_ne, abs=1e-12)

    def test_real_delta_rejected(self):
        with pytest.raises(DeltaRealError):
            witness_4x4(0.5)

    def test_near_two_rejected(self):
        with pytest.raises(DeltaDegenerateError):
            witness_4x4(2.0 + 1e-12j)


class TestFalsifyDeterministic:
    def test_flagship_example(self):
        w = falsify_deterministic(np.diag([0.0, 1.0, 2.0, 1j]))
        assert w is not None
        assert {w.rank_ne, w.rank_sw} == {1, 2}
        assert abs(w.norm_ne - w.norm_sw) > 1e-6

    def test_collinear_returns_none(self):
        assert falsify_deterministic(np.diag([1.0, 2.0, 3.0, 4.0])) is None

    def test_circle_returns_none(self):
        assert falsify_deterministic(np.diag([1.0, 1j, -1.0, -1j])) is None

    def test_six_dim_embedding(self):
        rng = rng_for(64)
        lam = np.array([0.0, 1.0, 2.0, 1j, 5.0, 7.0])
        t = random_normal(6, lam, rng)
        w = falsify_deterministic(t)
        assert w is not None
        assert w.rank_ne != w.rank_sw
        # independent re-measurement against the full matrix
        rep = corner_pair(t, w.projection)
        assert rep.rank_ne != rep.rank_sw
        assert abs(rep.norm_ne - rep.norm_sw) > 1e-6

    def test_repeated_eigenvalues_deduped(self):
        rng = rng_for(65)
        lam = np.array([0.0, 0.0, 1.0, 2.0, 1j])
        t = random_normal(5, lam, rng)
        w = falsify_deterministic(t)
        assert w is not None and w.rank_ne != w.rank_sw

    def test_agrees_with_circline_classifier(self):
        rng = rng_for(66)
        for i in range(40):
            n = int(rng.integers(4, 9))
            lam = cloud_spectrum(rng, n)
            t = random_normal(n, lam, rng)
            circlinear = fit_circline(lam).kind != "none"
            w = falsify_deterministic(t)
            assert (w is None) == circlinear

    def test_requires_normal(self):
        t = np.diag([0.0, 1.0, 2.0, 1j])
        t[0, 1] = 1.0
        with pytest.raises(NotNormalError):
            falsify_deterministic(t)

    def test_requires_dim_4(self):
        with pytest.raises(DimensionMismatchError):
            falsify_deterministic(np.diag([1.0, 2.0, 3.0]))


class TestFalsifySearch:
    def test_hermitian_returns_none(self):
        rng = rng_for(67)
        g = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
        h = g + g.conj().T
        assert falsify_search(h, 2, restarts=4, steps=60, seed=0) is None

    def test_nilpotent_gap_one(self):
        # the optimum P = span(e1) has gap exactly 1; the climb should get close
        w = falsify_search(np.array([[0.0, 1.0], [0.0, 0.0]]), 1, restarts=32, steps=200, seed=0)
        assert w is not None
        assert abs(w.norm_ne - w.norm_sw) > 0.9

    def test_matches_deterministic_gap(self):
        t = np.diag([0.0, 1.0, 2.0, 1j])
        det = falsify_deterministic(t)
        g_det = abs(det.norm_ne - det.norm_sw)
        srch = falsify_search(t, 2, restarts=32, steps=200, seed=5)
        assert srch is not None
        assert abs(srch.norm_ne - srch.norm_sw) > max(0.01, 0.5 * g_det)

    def test_deterministic_given_seed(self):
        t = np.diag([0.0, 1.0, 2.0, 1j])
        w1 = falsify_search(t, 2, restarts=4, steps=50, seed=9)
        w2 = falsify_search(t, 2, restarts=4, steps=50, seed=9)
        assert w1.norm_ne == w2.norm_ne and w1.norm_sw == w2.norm_sw
        assert_allclose(w1.projection.frame, w2.projection.frame, atol=0)

    def test_invalid_rank_rejected(self):
        with pytest.raises(FullOrZeroRankError):
            falsify_search(np.eye(3), 3)


class TestVerifyWitness:
    def test_round_trip(self):
        t = np.diag([0.0, 1.0, 2.0, 1j])
        w = falsify_deterministic(t)
        again = verify_witness(t, w)
        assert again.rank_ne == w.rank_ne and again.rank_sw == w.rank_sw
        assert again.norm_ne == pytest.approx(w.norm_ne, abs=1e-12)

    def test_rejects_gapless_projection(self):
        w = falsify_deterministic(np.diag([0.0, 1.0, 2.0, 1j]))
        with pytest.raises(VerificationFailedError):
            verify_witness(np.eye(4), w)


def test_unitary_search_finds_nothing():
    u = random_unitary(4, 3)
    assert falsify_search(u, 2, restarts=4, steps=60, seed=1) is None


def test_projection_reuses_coordinate_split():
    # anchor the ne/sw orientation: ne maps the complement into the range
    t = np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex)
    rep = corner_pair(t, coordinate_projection(2, 1))
    assert rep.norm_ne == 1.0 and rep.norm_sw == 0.0

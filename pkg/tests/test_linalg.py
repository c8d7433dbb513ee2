import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from numpy.testing import assert_allclose

from helpers import rng_for
from offcorners import (
    DEFAULT_TOLS,
    Tolerances,
    eig_normal,
    frobenius_norm,
    is_normal,
    numerical_rank,
    operator_norm,
    qr_orthonormal_frame,
    random_normal,
    random_unitary,
    singular_values,
)
from offcorners.errors import (
    DimensionMismatchError,
    NonFiniteError,
    NotNormalError,
    RankDeficientError,
)

NILPOTENT = np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex)


class TestNorms:
    def test_operator_norm_zero(self):
        assert operator_norm(np.zeros((3, 3))) == 0.0

    def test_operator_norm_unitary(self):
        u = random_unitary(5, 11)
        assert abs(operator_norm(u) - 1.0) < 1e-12

    def test_operator_norm_diagonal(self):
        assert operator_norm(np.diag([3.0, 4.0])) == pytest.approx(4.0, abs=1e-12)

    def test_frobenius_identity(self):
        assert frobenius_norm(np.eye(7)) == pytest.approx(np.sqrt(7.0), abs=1e-12)

    def test_frobenius_ones(self):
        assert frobenius_norm(np.ones((2, 2))) == pytest.approx(2.0, abs=1e-12)

    def test_frobenius_diagonal(self):
        assert frobenius_norm(np.diag([3.0, 4.0])) == pytest.approx(5.0, abs=1e-12)

    def test_rejects_nan(self):
        with pytest.raises(NonFiniteError):
            operator_norm(np.array([[np.nan, 0.0], [0.0, 1.0]]))


class TestSingularValues:
    def test_identity(self):
        assert_allclose(singular_values(np.eye(3)), [1.0, 1.0, 1.0], atol=1e-12)

    def test_rank_one_outer(self):
        rng = rng_for(3)
        u = rng.standard_normal(4) + 1j * rng.standard_normal(4)
        v = rng.standard_normal(4) + 1j * rng.standard_normal(4)
        u /= np.linalg.norm(u)
        v /= np.linalg.norm(v)
        sv = singular_values(np.outer(u, v.conj()))
        assert_allclose(sv, [1.0, 0.0, 0.0, 0.0], atol=1e-12)

    def test_shift(self):
        assert_allclose(singular_values(np.array([[0.0, 2.0], [0.0, 0.0]])), [2.0, 0.0], atol=1e-12)

    def test_adjoint_same_singular_values(self):
        rng = rng_for(4)
        m = rng.standard_normal((5, 3)) + 1j * rng.standard_normal((5, 3))
        assert_allclose(singular_values(m), singular_values(m.conj().T), atol=1e-10)


class TestNumericalRank:
    def test_zero(self):
        assert numerical_rank(np.zeros((4, 4))) == 0

    def test_identity(self):
        assert numerical_rank(np.eye(4)) == 4

    def test_below_threshold(self):
        assert numerical_rank(np.diag([1.0, 1e-14])) == 1

    def test_unitary_invariance(self):
        rng = rng_for(5)
        for i in range(20):
            n = int(rng.integers(2, 9))
            r = int(rng.integers(0, n + 1))
            d = np.zeros(n)
            d[:r] = rng.uniform(0.5, 2.0, size=r)
            m = (random_unitary(n, rng) * d) @ random_unitary(n, rng).conj().T
            assert numerical_rank(m) == r


class TestIsNormal:
    def test_diagonal(self):
        assert is_normal(np.diag([1.0, 2.0, 3.0 + 1j]))

    def test_nilpotent(self):
        assert not is_normal(NILPOTENT)

    def test_hermitian(self):
        rng = rng_for(6)
        g = rng.standard_normal((6, 6)) + 1j * rng.standard_normal((6, 6))
        assert is_normal(g + g.conj().T)

    def test_zero(self):
        assert is_normal(np.zeros((3, 3)))

    def test_non_square_rejected(self):
        with pytest.raises(DimensionMismatchError):
            is_normal(np.ones((2, 3)))


class TestEigNormal:
    def test_diagonal(self):
        dec = eig_normal(np.diag([2.0, 1j]))
        assert_allclose(dec.eigenvalues, [2.0, 1j], atol=1e-12)
        assert_allclose(np.abs(dec.eigenframe), np.eye(2), atol=1e-12)

    def test_symmetry(self):
        dec = eig_normal(np.array([[0.0, 1.0], [1.0, 0.0]]))
        assert_allclose(dec.eigenvalues, [1.0, -1.0], atol=1e-12)

    def test_sorted_descending(self):
        dec = eig_normal(np.diag([1.0, 3.0, 1.0 + 1j, 3.0 - 2j]))
        keys = [(z.real, z.imag) for z in dec.eigenvalues]
        assert keys == sorted(keys, reverse=True)

    def test_round_trip_random(self):
        # oracle: build a known spectral decomposition, recover the spectrum
        for seed in range(10):
            rng = rng_for(7, seed)
            n = int(rng.integers(2, 33))
            lam = rng.standard_normal(n) + 1j * rng.standard_normal(n)
            t = random_normal(n, lam, rng)
            dec = eig_normal(t)
            got = sorted(dec.eigenvalues, key=lambda z: (z.real, z.imag))
            want = sorted(lam, key=lambda z: (z.real, z.imag))
            assert_allclose(got, want, atol=1e-9)
            recon = (dec.eigenframe * dec.eigenvalues) @ dec.eigenframe.conj().T
            assert operator_norm(t - recon) < 1e-10 * max(1.0, operator_norm(t))

    def test_degenerate_spectrum_frame_unitary(self):
        rng = rng_for(8)
        lam = np.array([2.0, 2.0, 2.0, 1j, 1j, -1.0])
        t = random_normal(6, lam, rng)
        dec = eig_normal(t)
        gram = dec.eigenframe.conj().T @ dec.eigenframe
        assert np.abs(gram - np.eye(6)).max() < 1e-12

    def test_rejects_non_normal(self):
        with pytest.raises(NotNormalError):
            eig_normal(NILPOTENT)


class TestFrames:
    def test_identity_frame(self):
        assert_allclose(qr_orthonormal_frame(np.eye(4)), np.eye(4), atol=1e-12)

    def test_scaled_basis_vector(self):
        f = qr_orthonormal_frame(2.0 * np.eye(3)[:, :1])
        assert abs(abs(f[0, 0]) - 1.0) < 1e-12
        assert np.abs(f[1:, 0]).max() < 1e-12

    def test_random_orthonormal(self):
        rng = rng_for(9)
        a = rng.standard_normal((6, 2)) + 1j * rng.standard_normal((6, 2))
        f = qr_orthonormal_frame(a)
        assert np.abs(f.conj().T @ f - np.eye(2)).max() < 1e-12

    def test_rank_deficient_rejected(self):
        a = np.ones((4, 2), dtype=complex)
        with pytest.raises(RankDeficientError):
            qr_orthonormal_frame(a)


class TestRandomGenerators:
    def test_unitary_is_unitary(self):
        for seed in range(5):
            u = random_unitary(7, seed)
            assert np.abs(u.conj().T @ u - np.eye(7)).max() < 1e-12

    def test_deterministic(self):
        assert_allclose(random_unitary(5, 42), random_unitary(5, 42), atol=0)

    def test_normal_round_trip(self):
        rng = rng_for(10)
        lam = rng.standard_normal(8) + 1j * rng.standard_normal(8)
        t = random_normal(8, lam, 123)
        got = sorted(eig_normal(t).eigenvalues, key=lambda z: (z.real, z.imag))
        assert_allclose(got, sorted(lam, key=lambda z: (z.real, z.imag)), atol=1e-9)

    def test_scalar_case(self):
        assert_allclose(random_normal(1, [2.0 - 1j], 0), [[2.0 - 1j]], atol=0)

    def test_spectrum_length_checked(self):
        with pytest.raises(DimensionMismatchError):
            random_normal(3, [1.0, 2.0], 0)


@settings(max_examples=60, deadline=None)
@given(
    n=st.integers(min_value=1, max_value=8),
    m=st.integers(min_value=1, max_value=8),
    seed=st.integers(min_value=0, max_value=2**32 - 1),
)
def test_norm_chain(n, m, seed):
    rng = np.random.default_rng(seed)
    a = rng.standard_normal((n, m)) + 1j * rng.standard_normal((n, m))
    op = operator_norm(a)
    fro = frobenius_norm(a)
    assert op <= fro + 1e-10
    assert fro <= np.sqrt(min(n, m)) * op + 1e-10


def test_tolerances_must_be_positive():
    with pytest.raises(ValueError):
        Tolerances(tol_rank=0.0)
    assert DEFAULT_TOLS.tol_rank == 1e-8

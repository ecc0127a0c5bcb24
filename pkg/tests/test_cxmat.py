import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from hypothesis.extra.numpy import arrays

from conftest import random_gl, random_unitary
from slaglab.cxmat import (
    complex_determinant,
    is_invertible,
    is_special_unitary,
    is_unitary,
    orthonormalize,
    polar_factors,
    polar_retract,
    to_complex,
    to_real,
    unitary_part,
)
from slaglab.errors import DimensionMismatch, OutOfRange, SingularMatrix


def newton_unitary_factor(M, iters=60):
    """Independent polar factor: Newton iteration U <- (U + U^{-*}) / 2."""
    U = np.array(M, dtype=complex)
    for _ in range(iters):
        U = 0.5 * (U + np.linalg.inv(U).conj().T)
    return U


def test_unitary_is_fixed(rng):
    U = random_unitary(3, rng)
    for t in (0.0, 0.3, 1.0):
        assert np.allclose(polar_retract(U, t), U, atol=1e-12)


def test_positive_diagonal_retract():
    assert np.allclose(polar_retract(np.diag([2.0, 1.0]), 0.5), np.diag([1.5, 1.0]))


def test_unitary_part_examples():
    assert np.allclose(unitary_part(np.eye(2)), np.eye(2))
    assert np.allclose(unitary_part(np.diag([3.0, 0.5])), np.eye(2))
    w = np.exp(1j * np.pi / 3)
    assert np.allclose(unitary_part(np.diag([2 * w, 1.0])), np.diag([w, 1.0]), atol=1e-12)


def test_eigen_and_newton_polar_agree(rng):
    for n in (2, 3, 4):
        for _ in range(20):
            M = random_gl(n, rng)
            assert np.allclose(unitary_part(M), newton_unitary_factor(M), atol=1e-10)


def test_left_equivariance_example(rng):
    M, A = random_gl(3, rng), random_unitary(3, rng)
    for t in np.linspace(0, 1, 5):
        assert np.allclose(polar_retract(A @ M, t), A @ polar_retract(M, t), atol=1e-10)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_retraction_properties(n, rng):
    for _ in range(100):
        M, A, B = random_gl(n, rng), random_unitary(n, rng), random_unitary(n, rng)
        assert np.max(np.abs(polar_retract(M, 0.0) - M)) <= 1e-12 * max(1.0, np.abs(M).max()) * 10
        assert is_unitary(polar_retract(M, 1.0))
        t = rng.uniform()
        R = polar_retract(M, t)
        assert np.max(np.abs(polar_retract(A @ M, t) - A @ R)) <= 1e-9
        assert np.max(np.abs(polar_retract(M @ B, t) - R @ B)) <= 1e-9
        assert abs(np.linalg.det(R)) > 1e-8


def test_real_input_gives_orthogonal(rng):
    M = rng.normal(size=(4, 4))
    U = unitary_part(M)
    assert np.max(np.abs(U.imag)) < 1e-12
    assert np.allclose(U.real @ U.real.T, np.eye(4), atol=1e-10)


def test_singular_and_range_errors():
    with pytest.raises(SingularMatrix):
        polar_retract(np.array([[1, 2], [2, 4]]), 0.5)
    with pytest.raises(OutOfRange):
        polar_retract(np.eye(2), 1.5)


def test_predicates(rng):
    U = random_unitary(3, rng)
    assert is_unitary(U)
    assert is_special_unitary(U / np.linalg.det(U) ** (1 / 3))
    assert not is_unitary(2 * U)
    assert not is_invertible(np.zeros((2, 2)))
    P, U2 = polar_factors(random_gl(3, rng))
    assert np.allclose(P, P.conj().T)
    assert np.all(np.linalg.eigvalsh(P) > 0)


def test_complex_determinant_examples():
    n = 3
    standard = np.zeros((n, 2 * n))
    standard[np.arange(n), 2 * np.arange(n)] = 1.0
    assert np.isclose(complex_determinant(standard), 1.0)
    alpha = 0.37
    rotated = to_real(np.exp(1j * alpha) * np.eye(n))
    assert np.isclose(complex_determinant(rotated), np.exp(1j * n * alpha))


def test_complex_determinant_on_cone_frame():
    p, q, theta = 1, 2, np.pi / 4
    s = np.sqrt(p + q)
    gamma = np.array([np.sqrt(q) * np.exp(1j * p * theta), 1j * np.sqrt(p) * np.exp(-1j * q * theta)]) / s
    dgamma = np.array([1j * p * np.sqrt(q) * np.exp(1j * p * theta), q * np.sqrt(p) * np.exp(-1j * q * theta)]) / s
    frame = np.array([to_real(gamma), to_real(dgamma / np.linalg.norm(dgamma))])
    assert np.isclose(complex_determinant(frame), np.exp(-1j * np.pi / 4), atol=1e-12)


def test_complex_determinant_shape():
    with pytest.raises(DimensionMismatch):
        complex_determinant(np.zeros((2, 6)))


def test_lagrangian_frames_have_unit_determinant(rng):
    for n in (2, 3, 4):
        for _ in range(20):
            U = random_unitary(n, rng)
            # the columns of a unitary matrix span the Lagrangian plane U R^n
            frame = orthonormalize(to_real(U.T))
            assert abs(abs(complex_determinant(frame)) - 1) < 1e-9


@settings(max_examples=50, deadline=None)
@given(arrays(np.float64, (3, 6), elements=st.floats(-10, 10)))
def test_orthonormalize_properties(F):
    try:
        Q = orthonormalize(F)
    except DimensionMismatch:
        return
    assert np.allclose(Q @ Q.T, np.eye(3), atol=1e-9)
    # same span: each input row is a combination of the output rows
    assert np.allclose(F, (F @ Q.T) @ Q, atol=1e-6 * max(1.0, np.abs(F).max()))


def test_real_complex_roundtrip(rng):
    z = rng.normal(size=4) + 1j * rng.normal(size=4)
    assert np.array_equal(to_complex(to_real(z)), z)

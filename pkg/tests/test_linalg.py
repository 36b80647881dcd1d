import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from dqd import kernels
from dqd.errors import DomainError, InvalidDistribution, NoConvergence, NotHermitian, NotState
from dqd.linalg import (
    SIGMA_X,
    SIGMA_Y,
    SIGMA_Z,
    hermitian_eigen,
    kron,
    matrix_function,
    partial_trace,
    shannon_entropy,
    singular_values,
    state_eigenvalues,
    von_neumann_entropy,
)

finite = st.floats(-10, 10, allow_nan=False, allow_infinity=False)


def _herm(re, im):
    a = re + 1j * im
    return (a + a.conj().T) / 2


@st.composite
def hermitian(draw, n=4):
    re = draw(arrays(float, (n, n), elements=finite))
    im = draw(arrays(float, (n, n), elements=finite))
    return _herm(re, im)


@given(hermitian())
def test_eigen_matches_lapack(h):
    w, v = hermitian_eigen(h)
    scale = max(1.0, np.abs(h).max())
    assert np.allclose(w, np.linalg.eigvalsh(h), atol=1e-12 * scale)
    assert np.allclose(v.conj().T @ v, np.eye(4), atol=1e-12)
    assert np.allclose((v * w) @ v.conj().T, h, atol=1e-11 * scale)


@given(hermitian(3))
def test_eigen_phase_convention(h):
    _, v = hermitian_eigen(h)
    for k in range(3):
        idx = int(np.argmax(np.abs(v[:, k]) >= np.abs(v[:, k]).max() - 1e-12))
        assert v[idx, k].imag == 0.0
        assert v[idx, k].real > 0.0


def test_eigen_is_deterministic():
    h = kron(SIGMA_X, SIGMA_X) + 0.3 * kron(SIGMA_Z, SIGMA_Y)
    a = hermitian_eigen(h)
    b = hermitian_eigen(h.copy())
    assert np.array_equal(a.eigenvalues, b.eigenvalues)
    assert np.array_equal(a.eigenvectors, b.eigenvectors)


def test_pauli_spectra():
    for s in (SIGMA_X, SIGMA_Y, SIGMA_Z):
        assert np.allclose(hermitian_eigen(s).eigenvalues, [-1, 1], atol=1e-15)


@pytest.mark.parametrize(
    "bad", [np.array([[0, 1], [0, 0]], dtype=complex), np.ones((2, 3)), np.ones(4)]
)
def test_not_hermitian(bad):
    with pytest.raises(NotHermitian):
        hermitian_eigen(bad)


def test_sweep_cap_raises(rng):
    a = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    h = np.ascontiguousarray(a + a.conj().T)
    with pytest.raises(NoConvergence):
        kernels.jacobi_eigh(h, 1, 1e-14)


def test_matrix_function_exp_matches_scipy():
    from scipy.linalg import expm

    h = 0.7 * kron(SIGMA_X, SIGMA_Z) - 1.1 * kron(SIGMA_Y, SIGMA_Y)
    assert np.allclose(matrix_function(h, math.exp), expm(h), atol=1e-13)


def test_matrix_function_domain():
    with pytest.raises(DomainError):
        matrix_function(-np.eye(2, dtype=complex), math.log)
    with pytest.raises(DomainError):
        matrix_function(np.eye(2, dtype=complex), lambda x: math.inf)


def test_partial_trace_of_product(rng):
    a = _herm(rng.normal(size=(2, 2)), rng.normal(size=(2, 2)))
    b = _herm(rng.normal(size=(2, 2)), rng.normal(size=(2, 2)))
    ab = kron(a, b)
    assert np.allclose(partial_trace(ab, 1), a * np.trace(b))
    assert np.allclose(partial_trace(ab, 2), b * np.trace(a))
    with pytest.raises(ValueError):
        partial_trace(ab, 3)


def test_entropy_limits():
    assert von_neumann_entropy(np.eye(4) / 4) == pytest.approx(2.0, abs=1e-14)
    assert von_neumann_entropy(np.eye(4) / 4, math.e) == pytest.approx(math.log(4), abs=1e-14)
    pure = np.zeros((4, 4), dtype=complex)
    pure[0, 0] = 1
    assert von_neumann_entropy(pure) == 0.0


def test_entropy_rejects_non_states():
    with pytest.raises(NotState):
        von_neumann_entropy(np.eye(4) / 2)
    with pytest.raises(NotState):
        state_eigenvalues(np.diag([1.1, -0.1, 0, 0]).astype(complex))


def test_shannon():
    assert shannon_entropy([0.5, 0.5]) == pytest.approx(1.0)
    assert shannon_entropy([1.0, 0.0]) == 0.0
    with pytest.raises(InvalidDistribution):
        shannon_entropy([0.7, 0.7])
    with pytest.raises(InvalidDistribution):
        shannon_entropy([1.2, -0.2])


@given(arrays(float, (3, 3), elements=finite))
def test_singular_values_match_lapack(a):
    ref = np.linalg.svd(a, compute_uv=False)
    assert np.allclose(singular_values(a), ref, atol=1e-12 * max(1.0, ref[0]))


def test_singular_values_resolve_tiny():
    a = np.diag([1.0, 1e-9, 3e-12])
    assert np.allclose(singular_values(a), [1.0, 1e-9, 3e-12], rtol=1e-6, atol=0)

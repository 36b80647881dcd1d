"""Small dense complex linear algebra for 2-, 3- and 4-dimensional operators.

Matrices are plain ``numpy.ndarray`` objects of dtype ``complex128``. The
Hermitian eigensolver is the cyclic Jacobi method from :mod:`dqd.kernels`
(compiled when available), wrapped with sorting and a deterministic phase
convention so results are reproducible bit for bit.
"""
from __future__ import annotations

import math
from typing import Callable, NamedTuple

import numpy as np

from . import kernels
from .errors import DomainError, InvalidDistribution, NotHermitian, NotState

SIGMA_0 = np.eye(2, dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULIS = (SIGMA_X, SIGMA_Y, SIGMA_Z)

HERMITIAN_TOL = 1e-10
STATE_TOL = 1e-8
MAX_SWEEPS = 100
OFFDIAG_TOL = 1e-14


class HermitianEigen(NamedTuple):
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return np.kron(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex))


def dagger(a: np.ndarray) -> np.ndarray:
    return np.conj(a).T


def _fix_phase(vecs: np.ndarray) -> np.ndarray:
    # largest-magnitude component of each column made real positive;
    # near-ties resolved towards the lowest index
    out = vecs.copy()
    for k in range(out.shape[1]):
        mags = np.abs(out[:, k])
        idx = int(np.flatnonzero(mags >= mags.max() - 1e-12)[0])
        out[:, k] *= np.conj(out[idx, k]) / mags[idx]
        out[idx, k] = mags[idx]
    return out


def hermitian_eigen(h: np.ndarray) -> HermitianEigen:
    """Eigendecomposition of a Hermitian matrix.

    Parameters
    ----------
    h : ndarray
        Square matrix with ``max|h - h^dagger| <= 1e-10``.

    Returns
    -------
    HermitianEigen
        Ascending eigenvalues and unitary eigenvector matrix (columns). Each
        eigenvector has its largest-magnitude component real and positive.

    Raises
    ------
    NotHermitian
        If ``h`` is not square or not Hermitian within tolerance.
    NoConvergence
        If Jacobi exceeds 100 sweeps.
    """
    h = np.asarray(h, dtype=complex)
    if h.ndim != 2 or h.shape[0] != h.shape[1]:
        raise NotHermitian(f"expected a square matrix, got shape {h.shape}")
    if h.size and np.max(np.abs(h - dagger(h))) > HERMITIAN_TOL:
        raise NotHermitian("matrix is not Hermitian within 1e-10")
    w, v = kernels.jacobi_eigh(np.ascontiguousarray(h), MAX_SWEEPS, OFFDIAG_TOL)
    order = np.argsort(w, kind="stable")
    return HermitianEigen(w[order], _fix_phase(v[:, order]))


def eigvalsh(h: np.ndarray) -> np.ndarray:
    return hermitian_eigen(h).eigenvalues


def matrix_function(h: np.ndarray, f: Callable[[float], float]) -> np.ndarray:
    """Apply a real scalar function to a Hermitian matrix, ``V f(L) V^dagger``.

    ``f`` is called once per eigenvalue. A ``ValueError`` from ``f`` or a
    non-finite return value is reported as :class:`DomainError`.
    """
    w, v = hermitian_eigen(h)
    vals = []
    for x in w:
        try:
            y = float(f(float(x)))
        except (ValueError, ZeroDivisionError, OverflowError) as exc:
            raise DomainError(f"function undefined at eigenvalue {x!r}: {exc}") from exc
        if not math.isfinite(y):
            raise DomainError(f"function not finite at eigenvalue {x!r}")
        vals.append(y)
    out = (v * np.asarray(vals)) @ dagger(v)
    return 0.5 * (out + dagger(out))


def partial_trace(rho: np.ndarray, keep: int) -> np.ndarray:
    """Reduce a two-qubit operator to subsystem ``keep`` (1 or 2)."""
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (4, 4):
        raise ValueError(f"expected a 4x4 operator, got {rho.shape}")
    t = rho.reshape(2, 2, 2, 2)
    if keep == 1:
        return np.einsum("ijkj->ik", t)
    if keep == 2:
        return np.einsum("ijil->jl", t)
    raise ValueError(f"keep must be 1 or 2, got {keep!r}")


def _log(x: float, base: float) -> float:
    return math.log(x) if base == math.e else math.log(x) / math.log(base)


def state_eigenvalues(rho: np.ndarray) -> np.ndarray:
    """Eigenvalues of a density matrix, validated and clamped to [0, 1]."""
    rho = np.asarray(rho, dtype=complex)
    tr = np.trace(rho)
    if abs(tr - 1.0) > STATE_TOL:
        raise NotState(f"trace {tr.real:.12g} deviates from 1")
    try:
        w = eigvalsh(rho)
    except NotHermitian as exc:
        raise NotState(str(exc)) from exc
    if w[0] < -STATE_TOL:
        raise NotState(f"negative eigenvalue {w[0]:.3e}")
    return np.clip(w, 0.0, 1.0)


def entropy_of_spectrum(p, base: float = 2.0) -> float:
    return -sum(x * _log(x, base) for x in p if x > 0.0)


def von_neumann_entropy(rho: np.ndarray, base: float = 2.0) -> float:
    """``-Tr rho log rho`` with ``0 log 0 = 0``; ``base`` is 2 or ``math.e``."""
    return entropy_of_spectrum(state_eigenvalues(rho), base)


def shannon_entropy(p, base: float = 2.0) -> float:
    p = np.asarray(p, dtype=float)
    if np.any(p < -1e-12) or np.any(p > 1.0 + 1e-12):
        raise InvalidDistribution("probabilities must lie in [0, 1]")
    if abs(p.sum() - 1.0) > 1e-10:
        raise InvalidDistribution(f"probabilities sum to {p.sum():.12g}")
    return entropy_of_spectrum(np.clip(p, 0.0, 1.0), base)


def singular_values(a: np.ndarray) -> np.ndarray:
    """Singular values, descending, from the Hermitian dilation ``[[0, A], [A^dagger, 0]]``.

    The dilation keeps small singular values accurate to machine precision,
    which squaring through ``A^dagger A`` would not.
    """
    a = np.asarray(a, dtype=complex)
    m, n = a.shape
    dil = np.zeros((m + n, m + n), dtype=complex)
    dil[:m, m:] = a
    dil[m:, :m] = dagger(a)
    w = eigvalsh(dil)
    return np.clip(w[::-1][: min(m, n)], 0.0, None)

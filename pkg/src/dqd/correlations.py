"""Two-qubit correlation quantifiers.

Information quantities are in bits. Steering is available in two modes:
``SteeringMode.PAPER`` evaluates fixed closed-form expressions in the
entries of the thermal pattern. ``SteeringMode.ORACLE`` builds the Pauli
outcome distributions from the state and computes conditional entropies
directly. The two disagree in general; see the README.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize

from . import kernels
from .errors import BellDiagonalityViolated, DomainError, PatternMismatch
from .linalg import (
    PAULIS,
    SIGMA_0,
    SIGMA_Y,
    dagger,
    eigvalsh,
    hermitian_eigen,
    kron,
    partial_trace,
    shannon_entropy,
    singular_values,
    state_eigenvalues,
    von_neumann_entropy,
)
from .model import pattern_deviation, thermal_pattern

PATTERN_TOL = 1e-8
BELL_DIAGONAL_TOL = 1e-6
L_MAX = 6.0
_NUMERICAL_ZERO = 4 * np.finfo(float).eps


class SteeringMode(str, enum.Enum):
    PAPER = "paper"
    ORACLE = "oracle"


DIRECTIONS = ("1->2", "2->1")


@dataclass(frozen=True)
class BlochDecomposition:
    """Local Bloch vectors ``u`` (dot 1), ``v`` (dot 2) and correlation matrix ``r``."""

    u: np.ndarray
    v: np.ndarray
    r: np.ndarray

    def block_matrix(self) -> np.ndarray:
        """4x4 matrix ``[[1, v^T], [u, r]]`` of all Pauli expectation values."""
        out = np.empty((4, 4))
        out[0, 0] = 1.0
        out[0, 1:] = self.v
        out[1:, 0] = self.u
        out[1:, 1:] = self.r
        return out

    def reconstruct(self) -> np.ndarray:
        rho = kron(SIGMA_0, SIGMA_0).copy()
        for k, s in enumerate(PAULIS):
            rho += self.u[k] * kron(s, SIGMA_0) + self.v[k] * kron(SIGMA_0, s)
            for m, t in enumerate(PAULIS):
                rho += self.r[k, m] * kron(s, t)
        return rho / 4.0


@dataclass(frozen=True)
class CorrelationReport:
    discord: float
    concurrence: float
    steering_12: float
    steering_21: float
    bell_m: float
    bell_b: float


_LOCAL_1 = [kron(s, SIGMA_0) for s in PAULIS]
_LOCAL_2 = [kron(SIGMA_0, s) for s in PAULIS]
_PAIRS = [[kron(s, t) for t in PAULIS] for s in PAULIS]


def _expect(rho: np.ndarray, op: np.ndarray) -> float:
    # Tr(rho op) without forming the product
    return float(np.einsum("ij,ji->", rho, op).real)


def bloch_decomposition(rho) -> BlochDecomposition:
    rho = np.asarray(rho, dtype=complex)
    u = np.array([_expect(rho, op) for op in _LOCAL_1])
    v = np.array([_expect(rho, op) for op in _LOCAL_2])
    r = np.array([[_expect(rho, op) for op in row] for row in _PAIRS])
    return BlochDecomposition(u, v, r)


def chsh_quantities(rho) -> tuple[float, float]:
    """Horodecki ``M`` (sum of the two largest eigenvalues of ``R^T R``) and ``B``."""
    r = bloch_decomposition(rho).r
    lam = eigvalsh(r.T @ r)
    m = float(lam[-1] + lam[-2])
    return m, math.sqrt(max(0.0, m - 1.0))


def concurrence(rho) -> float:
    """Wootters concurrence.

    The square roots of the eigenvalues of ``rho (sy sy) rho* (sy sy)`` are
    obtained as singular values of ``sqrt(rho) sqrt(rho~)``, which avoids
    square roots of rounding noise.
    """
    rho = np.asarray(rho, dtype=complex)
    w, vecs = hermitian_eigen(rho)
    w = np.where(w < _NUMERICAL_ZERO, 0.0, w)
    root = (vecs * np.sqrt(w)) @ dagger(vecs)
    yy = kron(SIGMA_Y, SIGMA_Y)
    root_tilde = yy @ np.conj(root) @ yy
    s = singular_values(root @ root_tilde)
    return float(max(0.0, s[0] - s[1] - s[2] - s[3]))


def _joint_outcomes(rho: np.ndarray, pauli: np.ndarray) -> np.ndarray:
    proj = [(SIGMA_0 + a * pauli) / 2.0 for a in (1.0, -1.0)]
    return np.array([[_expect(rho, kron(pa, pb)) for pb in proj] for pa in proj])


def _oracle_l(rho: np.ndarray, direction: str) -> float:
    total = 0.0
    for pauli in PAULIS:
        joint = _joint_outcomes(rho, pauli)
        h_joint = shannon_entropy(joint.ravel())
        cond_axis = 1 if direction == "1->2" else 0
        total += h_joint - shannon_entropy(joint.sum(axis=cond_axis))
    return float(total)


def _xlogx(x: float) -> float:
    if x < -1e-12:
        raise DomainError(f"log of negative argument {x!r}")
    return 0.0 if x <= 0.0 else x * math.log2(x)


def paper_steering_terms(rho) -> dict[str, float]:
    """Individual summands of the paper-mode closed forms (before the 1/2 factor).

    ``extra`` is present only in the dot-1-to-dot-2 expression.
    """
    rho = np.asarray(rho, dtype=complex)
    dev = pattern_deviation(rho)
    if dev > PATTERN_TOL:
        raise PatternMismatch(f"state deviates from thermal pattern by {dev:.3e}")
    e = thermal_pattern(rho)
    r11, r22, r12, r14, r23 = e["r11"], e["r22"], e["r12"], e["r14"], e["r23"]
    return {
        "common": (
            _xlogx(2 * r11)
            + _xlogx(4 * r11)
            + 2 * _xlogx(4 * r22)
            + 2 * _xlogx(1 - 2 * (-r14 + r23))
            + 2 * _xlogx(1 + 2 * (-r14 + r23))
            + 2 * _xlogx(1 - 2 * (r14 + r23))
            + _xlogx(1 + 2 * (4 * r12 + r14 + r23))
        ),
        "extra": _xlogx(1 - 2 * (4 * r12 - r14 - r23)),
    }


def steering_L(rho, direction: str = "1->2", mode: SteeringMode = SteeringMode.ORACLE) -> float:
    """Entropic steering sum over the three Pauli settings.

    ``direction`` is ``"1->2"`` (dot 1 steers dot 2) or ``"2->1"``.
    """
    if direction not in DIRECTIONS:
        raise ValueError(f"direction must be one of {DIRECTIONS}")
    mode = SteeringMode(mode)
    rho = np.asarray(rho, dtype=complex)
    if mode is SteeringMode.ORACLE:
        return _oracle_l(rho, direction)
    t = paper_steering_terms(rho)
    total = t["common"] + (t["extra"] if direction == "1->2" else 0.0)
    return 0.5 * total


def steering_degree(rho, direction: str = "1->2", mode: SteeringMode = SteeringMode.ORACLE) -> float:
    """Paper mode: ``max(0, (L-2)/(L_max-2))``. Oracle mode: ``max(0, (2-L)/2)``."""
    mode = SteeringMode(mode)
    value = steering_L(rho, direction, mode)
    if mode is SteeringMode.PAPER:
        return float(max(0.0, (value - 2.0) / (L_MAX - 2.0)))
    return float(max(0.0, (2.0 - value) / 2.0))


def mutual_information(rho, base: float = 2.0) -> float:
    rho = np.asarray(rho, dtype=complex)
    return (
        von_neumann_entropy(partial_trace(rho, 1), base)
        + von_neumann_entropy(partial_trace(rho, 2), base)
        - von_neumann_entropy(rho, base)
    )


def discord_luo(rho) -> float:
    """Closed-form discord for states with maximally mixed marginals."""
    rho = np.asarray(rho, dtype=complex)
    bd = bloch_decomposition(rho)
    if max(np.linalg.norm(bd.u), np.linalg.norm(bd.v)) > BELL_DIAGONAL_TOL:
        raise BellDiagonalityViolated("local Bloch vectors are not zero; use discord_numeric")
    deltas = state_eigenvalues(rho)
    info = 2.0 + sum(d * math.log2(d) for d in deltas if d > 0.0)
    # largest |C_j| in the Bloch normal form = top singular value of r
    c = min(1.0, float(singular_values(bd.r)[0]))
    lo, hi = (1.0 - c) / 2.0, (1.0 + c) / 2.0
    classical = (lo * math.log2(lo) if lo > 0 else 0.0) + (hi * math.log2(hi) if hi > 0 else 0.0) + 1.0
    return max(0.0, info - classical)


def _direction(theta: float, phi: float) -> np.ndarray:
    return np.array(
        [math.sin(theta) * math.cos(phi), math.sin(theta) * math.sin(phi), math.cos(theta)]
    )


def classical_correlation(rho, grid: tuple[int, int] = (64, 128), tol: float = 1e-7) -> float:
    """Largest one-way classical correlation, projective measurements on dot 1 (bits)."""
    rho = np.asarray(rho, dtype=complex)
    bd = bloch_decomposition(rho)
    n_theta, n_phi = grid
    thetas = np.linspace(0.0, math.pi, n_theta)
    phis = 2.0 * math.pi * np.arange(n_phi) / n_phi
    values = kernels.measured_entropy_grid(bd.u, bd.v, bd.r, thetas, phis)

    def objective(x):
        return kernels.measured_entropy(bd.u, bd.v, bd.r, float(x[0]), float(x[1]))

    i0, j0 = np.unravel_index(np.argmin(values), values.shape)
    starts = [(thetas[i0], phis[j0])]
    # second start from the best direction outside the first basin (n and -n are equivalent)
    st = np.sin(thetas)[:, None]
    dirs = np.stack(
        np.broadcast_arrays(st * np.cos(phis), st * np.sin(phis), np.cos(thetas)[:, None]), axis=-1
    )
    other = np.abs(dirs @ _direction(*starts[0])) < 0.9
    if other.any():
        i1, j1 = np.unravel_index(np.argmin(np.where(other, values, np.inf)), values.shape)
        starts.append((thetas[i1], phis[j1]))

    d_theta = math.pi / (n_theta - 1)
    d_phi = 2.0 * math.pi / n_phi
    best = float(values.min())
    for theta, phi in starts:
        simplex = np.array([[theta, phi], [theta + d_theta, phi], [theta, phi + d_phi]])
        res = minimize(
            objective,
            np.array([theta, phi]),
            method="Nelder-Mead",
            options={"initial_simplex": simplex, "xatol": tol, "fatol": tol * tol, "maxiter": 2000},
        )
        best = min(best, float(res.fun))
    s2 = von_neumann_entropy(partial_trace(rho, 2))
    return float(s2 - best)


def discord_numeric(rho, grid: tuple[int, int] = (64, 128), tol: float = 1e-7) -> float:
    """Discord by coarse grid search plus Nelder-Mead refinement over measurement axes.

    Parameters
    ----------
    rho : ndarray
        Two-qubit density matrix.
    grid : (int, int)
        Polar and azimuthal resolution of the initial search.
    tol : float
        Angular tolerance of the refinement.
    """
    value = mutual_information(rho) - classical_correlation(rho, grid, tol)
    return float(max(0.0, value))


def correlation_report(rho, mode: SteeringMode = SteeringMode.ORACLE) -> CorrelationReport:
    m, b = chsh_quantities(rho)
    return CorrelationReport(
        discord=discord_numeric(rho),
        concurrence=concurrence(rho),
        steering_12=steering_degree(rho, "1->2", mode),
        steering_21=steering_degree(rho, "2->1", mode),
        bell_m=m,
        bell_b=b,
    )

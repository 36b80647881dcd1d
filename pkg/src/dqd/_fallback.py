"""Pure-Python implementations of the hot kernels.

Used when the compiled ``dqd._kernels`` extension is not built, or when
``DQD_PURE_PYTHON=1`` is set. Semantics match the Cython versions exactly;
results agree to rounding.
"""
from __future__ import annotations

import math

import numpy as np

from .errors import NoConvergence


def jacobi_eigh(a: np.ndarray, max_sweeps: int = 100, tol: float = 1e-14):
    """Cyclic complex Jacobi diagonalization of a Hermitian matrix.

    Returns unsorted eigenvalues and the matrix whose columns are the
    corresponding eigenvectors. Iteration stops once the off-diagonal
    Frobenius norm drops below ``tol`` times the full Frobenius norm.
    """
    n = a.shape[0]
    A = [[complex(a[i, j]) for j in range(n)] for i in range(n)]
    V = [[1.0 + 0j if i == j else 0j for j in range(n)] for i in range(n)]
    for i in range(n):
        A[i][i] = complex(A[i][i].real, 0.0)

    scale = math.sqrt(sum(abs(x) ** 2 for row in A for x in row))
    threshold = tol * scale

    for sweep in range(max_sweeps + 1):
        off = 0.0
        for i in range(n):
            for j in range(n):
                if i != j:
                    off += abs(A[i][j]) ** 2
        if math.sqrt(off) <= threshold:
            break
        if sweep == max_sweeps:
            raise NoConvergence(f"Jacobi did not converge in {max_sweeps} sweeps")
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p][q]
                mag = abs(apq)
                if mag == 0.0:
                    continue
                phase = apq / mag
                app = A[p][p].real
                aqq = A[q][q].real
                tau = (aqq - app) / (2.0 * mag)
                t = (1.0 if tau >= 0.0 else -1.0) / (abs(tau) + math.sqrt(1.0 + tau * tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                se = s * phase
                sec = s * phase.conjugate()
                for k in range(n):
                    akp = A[k][p]
                    akq = A[k][q]
                    A[k][p] = c * akp - sec * akq
                    A[k][q] = se * akp + c * akq
                for k in range(n):
                    apk = A[p][k]
                    aqk = A[q][k]
                    A[p][k] = c * apk - se * aqk
                    A[q][k] = sec * apk + c * aqk
                for k in range(n):
                    vkp = V[k][p]
                    vkq = V[k][q]
                    V[k][p] = c * vkp - sec * vkq
                    V[k][q] = se * vkp + c * vkq
                A[p][q] = 0j
                A[q][p] = 0j
                A[p][p] = complex(app - t * mag, 0.0)
                A[q][q] = complex(aqq + t * mag, 0.0)

    w = np.array([A[i][i].real for i in range(n)])
    return w, np.array(V, dtype=complex)


def _binary_entropy_bloch(r):
    # entropy (bits) of a qubit whose Bloch vector has length r
    r = np.clip(r, 0.0, 1.0)
    hi = (1.0 + r) / 2.0
    lo = (1.0 - r) / 2.0
    with np.errstate(divide="ignore", invalid="ignore"):
        out = -(hi * np.log2(hi)) - np.where(lo > 0.0, lo * np.log2(lo), 0.0)
    return out


def measured_entropy_grid(u, v, r, thetas, phis) -> np.ndarray:
    """Average post-measurement entropy of dot 2 over a (theta, phi) grid.

    Dot 1 is measured along ``n = (sin t cos f, sin t sin f, cos t)``. For
    outcome ``s = +-1`` the probability is ``(1 + s n.u)/2`` and dot 2 is
    left with Bloch vector ``(v + s R^T n)/(1 + s n.u)``.
    """
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    r = np.asarray(r, dtype=float)
    th = np.asarray(thetas, dtype=float)[:, None]
    ph = np.asarray(phis, dtype=float)[None, :]
    n = np.stack(
        np.broadcast_arrays(np.sin(th) * np.cos(ph), np.sin(th) * np.sin(ph), np.cos(th)),
        axis=-1,
    )
    nu = n @ u
    rn = n @ r
    total = np.zeros(nu.shape)
    for s in (1.0, -1.0):
        weight = 1.0 + s * nu
        safe = np.where(weight > 1e-300, weight, 1.0)
        length = np.linalg.norm(v + s * rn, axis=-1) / safe
        total += np.where(weight > 1e-300, 0.5 * weight * _binary_entropy_bloch(length), 0.0)
    return total


def measured_entropy(u, v, r, theta: float, phi: float) -> float:
    return float(measured_entropy_grid(u, v, r, [theta], [phi])[0, 0])

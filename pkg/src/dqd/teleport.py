"""Teleportation quality of a two-qubit resource state.

Both the maximal average fidelity and the fidelity deviation are defined only
for states whose correlation matrix has negative determinant; elsewhere the
functions raise :class:`~dqd.errors.ValidityDomain`.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .correlations import bloch_decomposition
from .errors import ValidityDomain
from .linalg import singular_values

CLASSICAL_FIDELITY = 2.0 / 3.0


@dataclass(frozen=True)
class TeleportReport:
    det_r: float
    max_fidelity: float
    fidelity_deviation: float
    useful: bool


def det_r(rho) -> float:
    return float(np.linalg.det(bloch_decomposition(rho).r))


def _moduli(rho) -> np.ndarray:
    # |r_j|: singular values of the correlation matrix, which equal the
    # eigenvalue moduli when it is symmetric
    r = bloch_decomposition(rho).r
    d = float(np.linalg.det(r))
    if not d < 0.0:
        raise ValidityDomain(f"det(R) = {d:.3e} is not negative")
    return singular_values(r)


def max_fidelity(rho) -> float:
    return float((3.0 + _moduli(rho).sum()) / 6.0)


def fidelity_deviation(rho) -> float:
    a = _moduli(rho)
    spread = sum((a[j] - a[k]) ** 2 for j in range(3) for k in range(j + 1, 3))
    return float(math.sqrt(spread) / (3.0 * math.sqrt(10.0)))


def teleport_report(rho) -> TeleportReport:
    """All metrics at once; raises ``ValidityDomain`` if ``det(R) >= 0``."""
    d = det_r(rho)
    f = max_fidelity(rho)
    return TeleportReport(
        det_r=d,
        max_fidelity=f,
        fidelity_deviation=fidelity_deviation(rho),
        useful=bool(d < 0.0 and f > CLASSICAL_FIDELITY),
    )

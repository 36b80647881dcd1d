"""Two coupled double quantum dots: Hamiltonian, spectrum and thermal state.

Basis ordering is ``|LL>, |LR>, |RL>, |RR>`` with ``|L> = |0>``. Units have
``hbar = k_B = 1`` so couplings and temperature share one energy unit.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateTunneling, InvalidParams
from .linalg import SIGMA_0, SIGMA_X, SIGMA_Z, hermitian_eigen, kron, matrix_function

SWAP = np.array(
    [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]], dtype=complex
)


@dataclass(frozen=True)
class ModelParams:
    """Coulomb coupling ``j``, tunneling ``delta`` and temperature."""

    j: float
    delta: float
    temperature: float

    def __post_init__(self):
        for name in ("j", "delta", "temperature"):
            object.__setattr__(self, name, float(getattr(self, name)))
            if not math.isfinite(getattr(self, name)):
                raise InvalidParams(f"{name} must be finite")
        if self.temperature <= 0.0:
            raise InvalidParams("temperature must be strictly positive")
        if self.delta < 0.0:
            raise InvalidParams("delta must be non-negative")

    @property
    def beta(self) -> float:
        return 1.0 / self.temperature


@dataclass(frozen=True)
class SpectrumClosedForm:
    e1: float
    e2: float
    e3: float
    e4: float
    alpha_plus: float
    alpha_minus: float
    beta_plus: float
    beta_minus: float

    @property
    def energies(self) -> tuple[float, float, float, float]:
        return (self.e1, self.e2, self.e3, self.e4)

    def eigenvectors(self) -> list[np.ndarray]:
        """Normalized eigenvectors paired with ``e1..e4``."""
        s = 1.0 / math.sqrt(2.0)
        ap, am, bp, bm = self.alpha_plus, self.alpha_minus, self.beta_plus, self.beta_minus
        return [
            np.array([0.0, -s, s, 0.0], dtype=complex),
            np.array([-s, 0.0, 0.0, s], dtype=complex),
            bp * np.array([1.0, -ap, -ap, 1.0], dtype=complex),
            bm * np.array([1.0, -am, -am, 1.0], dtype=complex),
        ]


def hamiltonian(p: ModelParams) -> np.ndarray:
    h1, h2, h12 = bare_hamiltonians(p)
    return h1 + h2 + h12


def bare_hamiltonians(p: ModelParams) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Tunneling terms of each dot and the Coulomb term, embedded in 4x4."""
    return (
        p.delta * kron(SIGMA_X, SIGMA_0),
        p.delta * kron(SIGMA_0, SIGMA_X),
        p.j * kron(SIGMA_Z, SIGMA_Z),
    )


def local_hamiltonian(p: ModelParams) -> np.ndarray:
    """Single-dot tunneling Hamiltonian ``delta * sigma_x`` (2x2)."""
    return p.delta * SIGMA_X


def _coupling_norm(p: ModelParams) -> float:
    return math.hypot(p.j, 2.0 * p.delta)


def spectrum_closed_form(p: ModelParams) -> SpectrumClosedForm:
    if p.delta == 0.0:
        raise DegenerateTunneling("closed-form eigenvectors need delta > 0")
    k = _coupling_norm(p)
    if p.j >= 0.0:
        ap = (p.j + k) / (2.0 * p.delta)
        am = -1.0 / ap
    else:
        am = (p.j - k) / (2.0 * p.delta)
        ap = -1.0 / am
    return SpectrumClosedForm(
        e1=-p.j,
        e2=p.j,
        e3=-k,
        e4=k,
        alpha_plus=ap,
        alpha_minus=am,
        beta_plus=1.0 / math.sqrt(2.0 * (1.0 + ap * ap)),
        beta_minus=1.0 / math.sqrt(2.0 * (1.0 + am * am)),
    )


def _freeze(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


def thermal_state(p: ModelParams) -> np.ndarray:
    """Gibbs state ``exp(-H/T)/Z``, computed with the ground energy shifted out.

    The returned array is read-only.
    """
    h = hamiltonian(p)
    e0 = hermitian_eigen(h).eigenvalues[0]
    t = p.temperature
    unnorm = matrix_function(h, lambda x: math.exp(-(x - e0) / t))
    rho = unnorm / np.trace(unnorm).real
    return _freeze(rho)


def log_partition_function(p: ModelParams) -> float:
    """``ln Z`` from ``Z = 2 (cosh(J/T) + cosh(K/T))``, ``K = sqrt(J^2 + 4 delta^2)``."""
    b = p.beta
    a = abs(p.j) * b
    k = _coupling_norm(p) * b
    # 2(cosh a + cosh k) = e^k (1 + e^-2k + e^(a-k) + e^(-a-k)), and k >= a
    return k + math.log(1.0 + math.exp(-2.0 * k) + math.exp(a - k) + math.exp(-a - k))


def partition_function(p: ModelParams) -> float:
    """Closed-form partition function; ``inf`` if it overflows a double."""
    try:
        return math.exp(log_partition_function(p))
    except OverflowError:
        return math.inf


def log_trace_exp(h: np.ndarray, temperature: float) -> float:
    """``ln Tr exp(-h/T)`` via the eigenvalues of ``h``, overflow-safe."""
    w = hermitian_eigen(h).eigenvalues
    e0 = w[0]
    return -e0 / temperature + math.log(sum(math.exp(-(x - e0) / temperature) for x in w))


def thermal_elements_closed_form(p: ModelParams) -> np.ndarray:
    """Thermal state assembled from closed-form matrix elements.

    Elements follow from the spectral sum over the four eigenpairs; every
    Boltzmann factor is taken relative to the ground energy ``e3`` so that
    low temperatures do not overflow.
    """
    sp = spectrum_closed_form(p)
    b = p.beta
    w1, w2, w3, w4 = (math.exp(-b * (e - sp.e3)) for e in sp.energies)
    z = w1 + w2 + w3 + w4
    bp2 = sp.beta_plus**2
    bm2 = sp.beta_minus**2
    ap, am = sp.alpha_plus, sp.alpha_minus

    r11 = (w2 / 2.0 + bp2 * w3 + bm2 * w4) / z
    r22 = (w1 / 2.0 + ap * ap * bp2 * w3 + am * am * bm2 * w4) / z
    r12 = -(ap * bp2 * w3 + am * bm2 * w4) / z
    r14 = (-w2 / 2.0 + bp2 * w3 + bm2 * w4) / z
    r23 = (-w1 / 2.0 + ap * ap * bp2 * w3 + am * am * bm2 * w4) / z

    rho = np.array(
        [
            [r11, r12, r12, r14],
            [r12, r22, r23, r12],
            [r12, r23, r22, r12],
            [r14, r12, r12, r11],
        ],
        dtype=complex,
    )
    return _freeze(rho)


def thermal_pattern(rho: np.ndarray) -> dict[str, float]:
    """The five independent entries of the symmetric thermal pattern (1-based names)."""
    return {
        "r11": float(rho[0, 0].real),
        "r22": float(rho[1, 1].real),
        "r12": float(rho[0, 1].real),
        "r14": float(rho[0, 3].real),
        "r23": float(rho[1, 2].real),
    }


def pattern_deviation(rho: np.ndarray) -> float:
    """Largest violation of the thermal symmetry pattern, including imaginary parts."""
    rho = np.asarray(rho, dtype=complex)
    e = thermal_pattern(rho)
    ref = np.array(
        [
            [e["r11"], e["r12"], e["r12"], e["r14"]],
            [e["r12"], e["r22"], e["r23"], e["r12"]],
            [e["r12"], e["r23"], e["r22"], e["r12"]],
            [e["r14"], e["r12"], e["r12"], e["r11"]],
        ]
    )
    return float(np.max(np.abs(rho - ref)))

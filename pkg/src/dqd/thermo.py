"""Work extraction from switching on the inter-dot coupling.

All entropies here are in nats, so that ``T * S`` carries energy units.
The reference product state is ``rho_1 (x) rho_2`` with ``rho_k`` the Gibbs
state of the bare single-dot tunneling Hamiltonian at the same temperature.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import Undefined
from .linalg import matrix_function, partial_trace, von_neumann_entropy
from .model import (
    ModelParams,
    bare_hamiltonians,
    hamiltonian,
    local_hamiltonian,
    log_trace_exp,
    thermal_state,
)

NATS = math.e
INTERACTION_EPS = 1e-12


@dataclass(frozen=True)
class ThermoReport:
    work: float
    efficiency: Optional[float]
    global_entropic: float
    energy_difference: float
    local_entropic: float
    local_work: float
    mutual_info_nats: float


def local_gibbs_state(p: ModelParams) -> np.ndarray:
    """Gibbs state of one uncoupled dot (2x2)."""
    h = local_hamiltonian(p)
    t = p.temperature
    unnorm = matrix_function(h, lambda x: math.exp(-(x + p.delta) / t))
    return unnorm / np.trace(unnorm).real


def interaction_energy(p: ModelParams, rho=None) -> float:
    """``<H12> = Tr[H rho] - Tr[(H1 + H2) rho]`` in the coupled thermal state."""
    if rho is None:
        rho = thermal_state(p)
    h1, h2, _ = bare_hamiltonians(p)
    return float(np.trace(hamiltonian(p) @ rho).real - np.trace((h1 + h2) @ rho).real)


def extractable_work(p: ModelParams) -> float:
    t = p.temperature
    log_z1 = log_trace_exp(local_hamiltonian(p), t)
    log_zs = log_trace_exp(hamiltonian(p), t)
    return float(t * (2.0 * log_z1 - log_zs) - interaction_energy(p))


def efficiency(p: ModelParams) -> float:
    """Work over the interaction energy released, ``W / (-<H12>)``."""
    e12 = interaction_energy(p)
    if abs(e12) <= INTERACTION_EPS:
        raise Undefined("interaction energy vanishes; efficiency undefined")
    return float(extractable_work(p) / (-e12))


def _product_entropy(p: ModelParams) -> float:
    return 2.0 * von_neumann_entropy(local_gibbs_state(p), NATS)


def _marginal_entropies(rho) -> float:
    return von_neumann_entropy(partial_trace(rho, 1), NATS) + von_neumann_entropy(
        partial_trace(rho, 2), NATS
    )


def global_entropic_term(p: ModelParams) -> float:
    rho = thermal_state(p)
    return float(p.temperature * (von_neumann_entropy(rho, NATS) - _product_entropy(p)))


def energy_difference(p: ModelParams) -> float:
    return extractable_work(p) + global_entropic_term(p)


def local_entropic_term(p: ModelParams) -> float:
    rho = thermal_state(p)
    return float(p.temperature * (_marginal_entropies(rho) - _product_entropy(p)))


def _mutual(s_marg: float, s_rho: float) -> float:
    # subadditivity makes this non-negative; only rounding can push it below 0
    return float(max(0.0, s_marg - s_rho))


def mutual_information_nats(p: ModelParams) -> float:
    rho = thermal_state(p)
    return _mutual(_marginal_entropies(rho), von_neumann_entropy(rho, NATS))


def local_work(p: ModelParams) -> float:
    return extractable_work(p) - p.temperature * mutual_information_nats(p)


def thermo_report(p: ModelParams) -> ThermoReport:
    """All quantities at one point; ``efficiency`` is ``None`` where undefined."""
    t = p.temperature
    rho = thermal_state(p)
    s_rho = von_neumann_entropy(rho, NATS)
    s_prod = _product_entropy(p)
    s_marg = _marginal_entropies(rho)
    e12 = interaction_energy(p, rho)
    work = float(
        t * (2.0 * log_trace_exp(local_hamiltonian(p), t) - log_trace_exp(hamiltonian(p), t)) - e12
    )
    mutual = _mutual(s_marg, s_rho)
    s_global = float(t * (s_rho - s_prod))
    return ThermoReport(
        work=work,
        efficiency=None if abs(e12) <= INTERACTION_EPS else work / (-e12),
        global_entropic=s_global,
        energy_difference=work + s_global,
        local_entropic=float(t * (s_marg - s_prod)),
        local_work=work - t * mutual,
        mutual_info_nats=mutual,
    )

"""Quantum correlations, teleportation and work extraction in two coupled double quantum dots."""
from .correlations import (
    SteeringMode,
    bloch_decomposition,
    chsh_quantities,
    concurrence,
    correlation_report,
    discord_luo,
    discord_numeric,
    steering_degree,
    steering_L,
)
from .kernels import BACKEND
from .model import (
    ModelParams,
    hamiltonian,
    partition_function,
    spectrum_closed_form,
    thermal_elements_closed_form,
    thermal_state,
)
from .teleport import det_r, fidelity_deviation, max_fidelity, teleport_report
from .thermo import thermo_report

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "ModelParams",
    "SteeringMode",
    "bloch_decomposition",
    "chsh_quantities",
    "concurrence",
    "correlation_report",
    "det_r",
    "discord_luo",
    "discord_numeric",
    "fidelity_deviation",
    "hamiltonian",
    "max_fidelity",
    "partition_function",
    "spectrum_closed_form",
    "steering_L",
    "steering_degree",
    "teleport_report",
    "thermal_elements_closed_form",
    "thermal_state",
    "thermo_report",
]

"""Compare the compiled kernels with the pure-Python fallback.

Run with ``python3 benchmarks/bench_kernels.py``. Prints mean time per call
for each kernel and backend and the resulting speed-up.
"""
from __future__ import annotations

import argparse
import timeit

import numpy as np

from dqd import _fallback
from dqd.correlations import bloch_decomposition
from dqd.model import ModelParams, hamiltonian, thermal_state

try:
    from dqd import _kernels
except ImportError:
    _kernels = None


def _cases():
    p = ModelParams(6.0, 9.0, 4.0)
    h = np.ascontiguousarray(hamiltonian(p))
    bd = bloch_decomposition(thermal_state(p))
    thetas = np.linspace(0.0, np.pi, 64)
    phis = 2.0 * np.pi * np.arange(128) / 128
    return {
        "jacobi_eigh 4x4": lambda mod: mod.jacobi_eigh(h),
        "entropy grid 64x128": lambda mod: mod.measured_entropy_grid(bd.u, bd.v, bd.r, thetas, phis),
        "entropy single axis": lambda mod: mod.measured_entropy(bd.u, bd.v, bd.r, 0.7, 1.3),
    }


def bench(repeat: int = 5, number: int = 200) -> list[tuple[str, float, float]]:
    rows = []
    for name, fn in _cases().items():
        n = max(1, number // 20) if "grid" in name else number
        t_py = min(timeit.repeat(lambda: fn(_fallback), repeat=repeat, number=n)) / n
        t_c = float("nan")
        if _kernels is not None:
            t_c = min(timeit.repeat(lambda: fn(_kernels), repeat=repeat, number=n)) / n
        rows.append((name, t_c, t_py))
    return rows


def bench_discord(repeat: int = 3) -> dict[str, float]:
    """End-to-end discord evaluation per backend (subprocess-free: swaps the module)."""
    from dqd import correlations, kernels

    rho = thermal_state(ModelParams(6.0, 9.0, 4.0))
    out = {}
    for label, mod in (("cython", _kernels), ("python", _fallback)):
        if mod is None:
            continue
        saved = (kernels.measured_entropy_grid, kernels.measured_entropy)
        kernels.measured_entropy_grid, kernels.measured_entropy = mod.measured_entropy_grid, mod.measured_entropy
        try:
            out[label] = min(timeit.repeat(lambda: correlations.discord_numeric(rho), repeat=repeat, number=5)) / 5
        finally:
            kernels.measured_entropy_grid, kernels.measured_entropy = saved
    return out


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    parser.add_argument("--number", type=int, default=200)
    args = parser.parse_args()
    print(f"{'kernel':<22}{'compiled':>14}{'fallback':>14}{'speed-up':>10}")
    for name, t_c, t_py in bench(args.repeat, args.number):
        print(f"{name:<22}{t_c * 1e6:>11.1f} us{t_py * 1e6:>11.1f} us{t_py / t_c:>9.1f}x")
    d = bench_discord()
    if "cython" in d:
        print(f"{'discord_numeric':<22}{d['cython'] * 1e3:>11.2f} ms{d['python'] * 1e3:>11.2f} ms"
              f"{d['python'] / d['cython']:>9.1f}x")


if __name__ == "__main__":
    main()

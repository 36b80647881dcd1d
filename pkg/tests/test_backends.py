import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from dqd import _fallback, kernels
from dqd.correlations import bloch_decomposition
from dqd.model import ModelParams, hamiltonian, thermal_state

compiled = pytest.importorskip("dqd._kernels")


def test_compiled_backend_selected():
    assert kernels.BACKEND == "cython"


@given(st.integers(0, 10_000))
def test_jacobi_agrees(seed):
    rng = np.random.default_rng(seed)
    a = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    h = np.ascontiguousarray(a + a.conj().T)
    wc, vc = compiled.jacobi_eigh(h)
    wp, vp = _fallback.jacobi_eigh(h)
    assert np.allclose(np.sort(wc), np.sort(wp), atol=1e-12)
    for w, v in ((wc, vc), (wp, vp)):
        assert np.allclose((v * w) @ v.conj().T, h, atol=1e-12)


@given(st.floats(-10, 10), st.floats(0.1, 10), st.floats(0.1, 20))
def test_entropy_kernels_agree(j, delta, t):
    bd = bloch_decomposition(thermal_state(ModelParams(j, delta, t)))
    thetas = np.linspace(0, np.pi, 9)
    phis = np.linspace(0, 2 * np.pi, 12, endpoint=False)
    gc = compiled.measured_entropy_grid(bd.u, bd.v, bd.r, thetas, phis)
    gp = _fallback.measured_entropy_grid(bd.u, bd.v, bd.r, thetas, phis)
    assert np.allclose(gc, gp, atol=1e-12)
    assert compiled.measured_entropy(bd.u, bd.v, bd.r, 0.4, 2.0) == pytest.approx(
        _fallback.measured_entropy(bd.u, bd.v, bd.r, 0.4, 2.0), abs=1e-12
    )


def test_jacobi_hamiltonian_exact():
    h = np.ascontiguousarray(hamiltonian(ModelParams(6, 9, 1)))
    for mod in (compiled, _fallback):
        w, _ = mod.jacobi_eigh(h)
        assert np.allclose(np.sort(w), [-np.sqrt(360), -6, 6, np.sqrt(360)], atol=1e-12)


def test_pure_python_environment_switch():
    code = (
        "from dqd import kernels, discord_numeric, thermal_state, ModelParams;"
        "print(kernels.BACKEND, repr(discord_numeric(thermal_state(ModelParams(6, 9, 4)))))"
    )
    out = {}
    for flag in ("0", "1"):
        env = dict(os.environ, DQD_PURE_PYTHON=flag)
        proc = subprocess.run([sys.executable, "-c", code], capture_output=True, text=True, env=env, check=True)
        backend, value = proc.stdout.split()
        out[backend] = float(value)
    assert set(out) == {"cython", "python"}
    assert out["cython"] == pytest.approx(out["python"], abs=1e-9)

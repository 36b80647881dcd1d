import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from dqd.correlations import chsh_quantities
from dqd.errors import ValidityDomain
from dqd.linalg import PAULIS, kron
from dqd.model import ModelParams, thermal_state
from dqd.teleport import CLASSICAL_FIDELITY, det_r, fidelity_deviation, max_fidelity, teleport_report

# numpy det / svd of the explicitly traced correlation matrix at (J=6, delta=9, T=1)
DET_T1 = -0.09999907173628482
F_T1 = 0.7720749038365026
DEV_T1 = 0.10193016393433875

TEMPS = np.round(np.arange(0.1, 12.0001, 0.1), 10)


def from_r(diag):
    rho = np.eye(4, dtype=complex)
    for c, s in zip(diag, PAULIS):
        rho = rho + c * kron(s, s)
    return rho / 4


def test_frozen_values(gibbs):
    rep = teleport_report(gibbs(6, 9, 1))
    assert rep.det_r == pytest.approx(DET_T1, abs=1e-13)
    assert rep.max_fidelity == pytest.approx(F_T1, abs=1e-13)
    assert rep.fidelity_deviation == pytest.approx(DEV_T1, abs=1e-13)
    assert rep.useful


def test_bell_state():
    rho = from_r([1, -1, 1])
    assert det_r(rho) == pytest.approx(-1.0)
    assert max_fidelity(rho) == pytest.approx(1.0)
    assert fidelity_deviation(rho) == pytest.approx(0.0, abs=1e-15)


def test_deviation_example():
    rho = from_r([-1, -1, -0.5])
    assert fidelity_deviation(rho) == pytest.approx(math.sqrt(0.5) / (3 * math.sqrt(10)), abs=1e-14)
    assert fidelity_deviation(rho) == pytest.approx(0.0745, abs=5e-5)


@pytest.mark.parametrize("eps", [1e-2, 1e-4, 1e-6])
def test_fidelity_small_anticorrelation(eps):
    assert max_fidelity(from_r([-eps] * 3)) == pytest.approx(0.5 + eps / 2, abs=1e-14)


@pytest.mark.parametrize("p", [0.1, 0.5, 0.9])
def test_werner_family_has_no_deviation(p):
    rho = from_r([-p] * 3)
    assert fidelity_deviation(rho) == pytest.approx(0.0, abs=1e-14)


def test_validity_domain():
    assert det_r(np.eye(4) / 4) == 0.0
    for rho in (np.eye(4, dtype=complex) / 4, from_r([0.5, 0.5, 0.5])):
        with pytest.raises(ValidityDomain):
            max_fidelity(rho)
        with pytest.raises(ValidityDomain):
            fidelity_deviation(rho)
        with pytest.raises(ValidityDomain):
            teleport_report(rho)


@given(st.floats(-10, 10), st.floats(0.1, 10), st.floats(0.1, 20))
def test_matches_svd_oracle(j, delta, t):
    rho = thermal_state(ModelParams(j, delta, t))
    d, f, dev = oracles.teleport(rho)
    assert det_r(rho) == pytest.approx(d, abs=1e-12)
    if d < -1e-12:
        assert max_fidelity(rho) == pytest.approx(f, abs=1e-12)
        assert fidelity_deviation(rho) == pytest.approx(dev, abs=1e-12)


@given(st.integers(0, 1000))
def test_local_unitary_invariance(seed):
    from scipy.stats import unitary_group

    rho = from_r([-0.8, 0.3, 0.6])
    u = np.kron(unitary_group.rvs(2, random_state=seed), unitary_group.rvs(2, random_state=seed + 7))
    rot = u @ rho @ u.conj().T
    assert max_fidelity(rot) == pytest.approx(max_fidelity(rho), abs=1e-8)
    assert fidelity_deviation(rot) == pytest.approx(fidelity_deviation(rho), abs=1e-8)


def test_thermal_sweep_shape():
    reports = [teleport_report(thermal_state(ModelParams(6, 9, t))) for t in TEMPS]
    assert all(r.det_r < 0 for r in reports)
    f = np.array([r.max_fidelity for r in reports])
    assert np.all(np.diff(f) <= 1e-12)
    for t, r in zip(TEMPS, reports):
        if chsh_quantities(thermal_state(ModelParams(6, 9, t)))[1] > 0:
            assert r.max_fidelity > CLASSICAL_FIDELITY
    assert all(r.useful == (r.det_r < 0 and r.max_fidelity > CLASSICAL_FIDELITY) for r in reports)

import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from dqd.errors import Undefined
from dqd.linalg import kron
from dqd.model import ModelParams, thermal_state
from dqd.thermo import (
    efficiency,
    energy_difference,
    extractable_work,
    global_entropic_term,
    interaction_energy,
    local_entropic_term,
    local_gibbs_state,
    local_work,
    mutual_information_nats,
    thermo_report,
)

# scipy expm traces and explicit entropies at (J=1, delta=1, T=1)
FROZEN_1_1_1 = {
    "work": 0.2410828691044009,
    "efficiency": 0.46639385980006126,
    "global_entropic": -0.036366267427435095,
    "energy_difference": 0.20471660167696581,
    "local_entropic": 0.18231533087458074,
    "local_work": 0.022401270802385076,
    "mutual_info_nats": 0.21868159830201583,
}

DELTAS = np.linspace(0.5, 3.0, 15)
TEMPS = np.linspace(0.2, 20.0, 15)


def grid_reports():
    return [(d, t, thermo_report(ModelParams(1, d, t))) for d in DELTAS for t in TEMPS]


def test_frozen_report():
    rep = thermo_report(ModelParams(1, 1, 1))
    for k, v in FROZEN_1_1_1.items():
        assert getattr(rep, k) == pytest.approx(v, abs=1e-12), k


def test_single_functions_agree_with_report():
    p = ModelParams(1, 1, 1)
    rep = thermo_report(p)
    assert extractable_work(p) == pytest.approx(rep.work, abs=1e-14)
    assert efficiency(p) == pytest.approx(rep.efficiency, abs=1e-14)
    assert global_entropic_term(p) == pytest.approx(rep.global_entropic, abs=1e-14)
    assert energy_difference(p) == pytest.approx(rep.energy_difference, abs=1e-14)
    assert local_entropic_term(p) == pytest.approx(rep.local_entropic, abs=1e-14)
    assert local_work(p) == pytest.approx(rep.local_work, abs=1e-14)
    assert mutual_information_nats(p) == pytest.approx(rep.mutual_info_nats, abs=1e-14)


@given(st.floats(-5, 5), st.floats(0.1, 5), st.floats(0.2, 20))
def test_matches_expm_oracle(j, delta, t):
    rep = thermo_report(ModelParams(j, delta, t))
    ref = oracles.thermo(j, delta, t)
    assert rep.work == pytest.approx(ref["work"], abs=1e-10)
    assert rep.global_entropic == pytest.approx(ref["s_global"], abs=1e-10)
    assert rep.local_entropic == pytest.approx(ref["s_local"], abs=1e-10)
    assert rep.local_work == pytest.approx(ref["work_local"], abs=1e-10)


@given(st.floats(-5, 5), st.floats(0.1, 5), st.floats(0.2, 20))
def test_energy_difference_is_bare_energy_change(j, delta, t):
    # E = Tr[(H1 + H2)(rho - rho1 (x) rho2)], derived independently of W and S_G
    rep = thermo_report(ModelParams(j, delta, t))
    assert rep.energy_difference == pytest.approx(oracles.thermo(j, delta, t)["energy_diff"], abs=1e-10)


def test_local_gibbs_state():
    p = ModelParams(1, 2, 0.7)
    loc = local_gibbs_state(p)
    ref = oracles.gibbs(0, 2, 0.7)
    assert np.allclose(kron(loc, loc), ref, atol=1e-14)


class TestGridIdentities:
    def test_identities(self):
        for d, t, r in grid_reports():
            assert r.energy_difference == pytest.approx(r.work + r.global_entropic, abs=1e-10)
            assert r.local_work == pytest.approx(r.work - t * r.mutual_info_nats, abs=1e-10)
            assert r.local_work <= r.work + 1e-15
            assert r.mutual_info_nats >= 0.0
            assert r.efficiency is None or r.efficiency <= 1 + 1e-10

    def test_work_non_negative_on_plotted_range(self):
        assert min(r.work for _, _, r in grid_reports()) >= 0.0


class TestLimits:
    @pytest.mark.parametrize("delta,t", [(0.5, 0.3), (1, 1), (3, 10)])
    def test_no_interaction(self, delta, t):
        r = thermo_report(ModelParams(0, delta, t))
        for k in ("work", "global_entropic", "energy_difference", "local_entropic", "local_work"):
            assert abs(getattr(r, k)) < 1e-12, k
        assert r.efficiency is None
        with pytest.raises(Undefined):
            efficiency(ModelParams(0, delta, t))

    def test_high_temperature(self):
        r = thermo_report(ModelParams(1, 1, 1e4))
        for k in ("work", "global_entropic", "energy_difference", "local_entropic", "local_work"):
            assert abs(getattr(r, k)) < 1e-3, k
        assert abs(interaction_energy(ModelParams(1, 1, 1e4))) < 1e-3


class TestCurveShapes:
    def test_efficiency_plateau(self):
        assert 0.45 <= efficiency(ModelParams(1, 1, 50)) <= 0.55

    def test_efficiency_grows_with_tunneling(self):
        assert efficiency(ModelParams(1, 2, 2)) > efficiency(ModelParams(1, 1, 2))

    def test_global_entropic_negative_over_wide_range(self):
        temps = np.linspace(1, 20, 40)
        assert all(global_entropic_term(ModelParams(1, 1, t)) < 0 for t in temps)

    def test_local_work_below_work(self):
        p = ModelParams(1, 1, 0.5)
        assert local_work(p) < extractable_work(p)

    def test_local_work_fades_near_t2(self):
        w0 = local_work(ModelParams(1, 1, 0.2))
        assert local_work(ModelParams(1, 1, 2)) < 0.02 * w0
        assert all(0 <= local_work(ModelParams(1, 1, t)) < 0.01 for t in np.linspace(2, 20, 19))

    def test_work_increases_with_tunneling(self):
        # expected trend; the model gives the opposite one
        w = [extractable_work(ModelParams(1, d, 2)) for d in (0.5, 1, 1.5, 2, 2.5, 3)]
        assert np.all(np.diff(w) >= 0), w

import json

import numpy as np
import pytest

import oracles
from dqd.errors import MissingFixture, ToleranceExceeded
from dqd.fixtures import bless_fixtures, check_fixtures, load_fixtures


def test_packaged_fixtures_pass():
    report = check_fixtures()
    assert report.ok, report.lines()


def test_packaged_fixtures_match_oracles():
    fx = load_fixtures()
    rho = np.array(fx["thermal_state[j=6,delta=9,T=2]"]["value"])
    assert np.allclose(rho, oracles.gibbs_mp(6, 9, 2)[0], atol=1e-14)
    assert fx["concurrence[j=6,delta=9,T=1]"]["value"] == pytest.approx(oracles.concurrence_mp(6, 9, 1), abs=1e-12)
    brute = oracles.discord_bruteforce(oracles.gibbs(6, 9, 4), 400, 400)
    assert fx["discord[j=6,delta=9,T=4]"]["value"] == pytest.approx(brute, abs=1e-6)
    ref = oracles.thermo(1, 1, 1)
    for key in ("work", "efficiency", "s_local", "work_local"):
        assert fx[f"{key}[j=1,delta=1,T=1]"]["value"] == pytest.approx(ref[key], abs=1e-12)


def test_fresh_bless_passes(tmp_path):
    path = tmp_path / "fx.json"
    bless_fixtures(str(path))
    assert check_fixtures(str(path)).ok


def test_perturbed_fixture(tmp_path):
    path = tmp_path / "fx.json"
    doc = bless_fixtures(str(path))
    doc["fixtures"]["concurrence[j=6,delta=9,T=1]"]["value"] += 1e-3
    path.write_text(json.dumps(doc))
    report = check_fixtures(str(path))
    assert not report.ok
    assert [r.key for r in report.failures] == ["concurrence[j=6,delta=9,T=1]"]
    with pytest.raises(ToleranceExceeded) as exc:
        check_fixtures(str(path), strict=True)
    assert exc.value.key == "concurrence[j=6,delta=9,T=1]"
    assert exc.value.delta == pytest.approx(1e-3, rel=1e-6)


def test_optimizer_tolerance(tmp_path):
    path = tmp_path / "fx.json"
    doc = bless_fixtures(str(path))
    doc["fixtures"]["discord[j=6,delta=9,T=4]"]["value"] += 5e-7
    path.write_text(json.dumps(doc))
    assert check_fixtures(str(path)).ok


def test_other_point_is_missing(tmp_path):
    path = tmp_path / "fx.json"
    bless_fixtures(str(path), j=5.0, delta=8.0)
    with pytest.raises(MissingFixture):
        check_fixtures(str(path))


def test_malformed_file(tmp_path):
    path = tmp_path / "fx.json"
    path.write_text("{}")
    with pytest.raises(MissingFixture):
        check_fixtures(str(path))

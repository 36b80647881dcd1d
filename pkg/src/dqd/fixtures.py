"""Regression fixtures: bless a set of reference values, recheck them later.

A fixture file is a JSON object ``{"fixtures": {key: entry}}`` where each
entry stores ``value`` (a number or a nested list for matrices),
``tolerance`` and ``kind`` (``closed`` or ``optimizer``). Keys carry the
parameter point, e.g. ``concurrence[j=6,delta=9,T=1]``, so a file blessed at a
different point does not match the canonical registry.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from importlib import resources
from typing import Callable, Optional, Union

import numpy as np

from . import correlations as corr
from . import teleport, thermo
from .correlations import SteeringMode
from .errors import MissingFixture, ToleranceExceeded
from .linalg import von_neumann_entropy
from .model import ModelParams, partition_function, spectrum_closed_form, thermal_state

CLOSED_TOL = 1e-9
OPTIMIZER_TOL = 1e-6

Value = Union[float, list]


@dataclass(frozen=True)
class FixtureSpec:
    key: str
    compute: Callable[[], Value]
    kind: str = "closed"

    @property
    def tolerance(self) -> float:
        return OPTIMIZER_TOL if self.kind == "optimizer" else CLOSED_TOL


@dataclass(frozen=True)
class FixtureResult:
    key: str
    expected: Value
    actual: Value
    delta: float
    tolerance: float

    @property
    def ok(self) -> bool:
        return self.delta <= self.tolerance


@dataclass
class FixtureReport:
    results: list[FixtureResult] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.results)

    @property
    def failures(self) -> list[FixtureResult]:
        return [r for r in self.results if not r.ok]

    def lines(self) -> list[str]:
        return [
            f"{'PASS' if r.ok else 'FAIL'} {r.key} delta={r.delta:.3e} tol={r.tolerance:.0e}"
            for r in self.results
        ]


def _tag(j: float, delta: float, t: float) -> str:
    return f"[j={j:g},delta={delta:g},T={t:g}]"


def fixture_specs(
    j: float = 6.0, delta: float = 9.0, j_thermo: float = 1.0, delta_thermo: float = 1.0
) -> list[FixtureSpec]:
    """Canonical fixture registry. Defaults are the points used throughout the tests."""
    specs: list[FixtureSpec] = []

    def add(name, p, fn, kind="closed"):
        specs.append(FixtureSpec(name + _tag(p.j, p.delta, p.temperature), fn, kind))

    p2 = ModelParams(j, delta, 2.0)
    add("thermal_state", p2, lambda: thermal_state(p2).real.tolist())
    add("partition_function", p2, lambda: partition_function(p2))
    add("entropy_nats", p2, lambda: von_neumann_entropy(thermal_state(p2), math.e))
    add("alpha_plus", p2, lambda: spectrum_closed_form(p2).alpha_plus)
    add("beta_plus_sq", p2, lambda: spectrum_closed_form(p2).beta_plus ** 2)

    p1 = ModelParams(j, delta, 1.0)
    rho1 = lambda: thermal_state(p1)  # noqa: E731
    add("bell_b", p1, lambda: corr.chsh_quantities(rho1())[1])
    add("concurrence", p1, lambda: corr.concurrence(rho1()))
    add("discord", p1, lambda: corr.discord_numeric(rho1()), "optimizer")
    for mode in SteeringMode:
        for direction, tag in (("1->2", "12"), ("2->1", "21")):
            add(
                f"steering_L_{mode.value}_{tag}",
                p1,
                lambda m=mode, d=direction: corr.steering_L(rho1(), d, m),
            )
    add("det_r", p1, lambda: teleport.det_r(rho1()))
    add("fidelity", p1, lambda: teleport.max_fidelity(rho1()))
    add("fidelity_deviation", p1, lambda: teleport.fidelity_deviation(rho1()))

    p4 = ModelParams(j, delta, 4.0)
    add("discord", p4, lambda: corr.discord_numeric(thermal_state(p4)), "optimizer")
    add("concurrence", p4, lambda: corr.concurrence(thermal_state(p4)))

    pt = ModelParams(j_thermo, delta_thermo, 1.0)
    fields = {
        "work": "work",
        "efficiency": "efficiency",
        "s_global": "global_entropic",
        "energy_diff": "energy_difference",
        "s_local": "local_entropic",
        "work_local": "local_work",
        "mutual_info_nats": "mutual_info_nats",
    }
    for name, attr in fields.items():
        add(name, pt, lambda a=attr: getattr(thermo.thermo_report(pt), a))
    return specs


def _delta(expected: Value, actual: Value) -> float:
    e = np.asarray(expected, dtype=float)
    a = np.asarray(actual, dtype=float)
    if e.shape != a.shape:
        return math.inf
    # absolute below 1, relative above
    scale = np.maximum(1.0, np.abs(e))
    return float(np.max(np.abs(a - e) / scale)) if e.size else 0.0


def bless_fixtures(path: Optional[str] = None, **points) -> dict:
    """Compute every fixture and write the file (if ``path`` is given)."""
    doc = {
        "fixtures": {
            s.key: {"value": s.compute(), "tolerance": s.tolerance, "kind": s.kind}
            for s in fixture_specs(**points)
        }
    }
    if path is not None:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            json.dump(doc, fh, indent=2, sort_keys=True)
            fh.write("\n")
    return doc


def load_fixtures(path: Optional[str] = None) -> dict:
    """Read a fixture file; ``None`` loads the copy shipped with the package."""
    if path is None:
        text = resources.files("dqd").joinpath("data/fixtures.json").read_text("utf-8")
    else:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    doc = json.loads(text)
    if not isinstance(doc, dict) or not isinstance(doc.get("fixtures"), dict):
        raise MissingFixture("file has no 'fixtures' table")
    return doc["fixtures"]


def check_fixtures(path: Optional[str] = None, strict: bool = False) -> FixtureReport:
    """Recompute the canonical registry and compare it with a blessed file.

    Raises
    ------
    MissingFixture
        A canonical key is absent from the file.
    ToleranceExceeded
        Only with ``strict=True``: the first value outside its tolerance.
    """
    stored = load_fixtures(path)
    specs = fixture_specs()
    missing = [s.key for s in specs if s.key not in stored]
    if missing:
        raise MissingFixture(f"fixture {missing[0]!r} not in file ({len(missing)} missing)")
    report = FixtureReport()
    for s in specs:
        entry = stored[s.key]
        tol = float(entry.get("tolerance", s.tolerance))
        actual = s.compute()
        result = FixtureResult(s.key, entry["value"], actual, _delta(entry["value"], actual), tol)
        if strict and not result.ok:
            raise ToleranceExceeded(s.key, result.delta, tol)
        report.results.append(result)
    return report

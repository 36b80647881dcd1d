"""Parameter sweeps over (J, delta, T) with CSV / JSON output."""
from __future__ import annotations

import csv
import io
import json
import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import correlations as corr
from . import teleport, thermo
from .correlations import SteeringMode
from .errors import DQDError, ParseError, ValidationError
from .model import ModelParams, thermal_state

log = logging.getLogger("dqd")

PARAMETERS = ("j", "delta", "temperature")
QUANTITIES = (
    "discord",
    "concurrence",
    "steering12",
    "steering21",
    "bell",
    "fidelity",
    "fidelity_deviation",
    "det_r",
    "work",
    "efficiency",
    "s_global",
    "energy_diff",
    "s_local",
    "work_local",
)
THERMO_FIELDS = {
    "work": "work",
    "efficiency": "efficiency",
    "s_global": "global_entropic",
    "energy_diff": "energy_difference",
    "s_local": "local_entropic",
    "work_local": "local_work",
}
OUTPUT_FORMATS = ("csv", "json")
_CONFIG_KEYS = set(PARAMETERS) | {"quantities", "steering_mode", "output_format", "plot"}


@dataclass(frozen=True)
class SweepConfig:
    j: tuple[float, ...]
    delta: tuple[float, ...]
    temperature: tuple[float, ...]
    quantities: tuple[str, ...] = QUANTITIES
    steering_mode: SteeringMode = SteeringMode.ORACLE
    output_format: str = "csv"
    plot: Optional[str] = None


@dataclass
class SweepRow:
    j: float
    delta: float
    temperature: float
    values: dict[str, Optional[float]]
    warnings: list[str] = field(default_factory=list)

    def as_dict(self, quantities=None) -> dict[str, Optional[float]]:
        out = {"j": self.j, "delta": self.delta, "temperature": self.temperature}
        for q in quantities or self.values:
            out[q] = self.values.get(q)
        return out


def _number(value, name: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ValidationError(name, "expected a number")
    if not math.isfinite(value):
        raise ValidationError(name, "must be finite")
    return float(value)


def _axis(spec, name: str, log_spacing: bool = False) -> tuple[float, ...]:
    if isinstance(spec, dict):
        extra = set(spec) - {"min", "max", "steps", "spacing"}
        if extra:
            raise ValidationError(f"{name}.{sorted(extra)[0]}", "unknown field")
        for key in ("min", "max", "steps"):
            if key not in spec:
                raise ValidationError(f"{name}.{key}", "missing")
        lo = _number(spec["min"], f"{name}.min")
        hi = _number(spec["max"], f"{name}.max")
        steps = spec["steps"]
        if isinstance(steps, bool) or not isinstance(steps, int) or steps < 2:
            raise ValidationError(f"{name}.steps", "must be an integer >= 2")
        if not lo < hi:
            raise ValidationError(name, "min must be smaller than max")
        spacing = spec.get("spacing", "log" if log_spacing else "linear")
        if spacing == "linear":
            return tuple(float(x) for x in np.linspace(lo, hi, steps))
        if spacing == "log":
            if lo <= 0.0:
                raise ValidationError(f"{name}.min", "log spacing needs min > 0")
            return tuple(float(x) for x in np.geomspace(lo, hi, steps))
        raise ValidationError(f"{name}.spacing", "must be 'linear' or 'log'")
    if isinstance(spec, list):
        if not spec:
            raise ValidationError(name, "empty list")
        values = [_number(x, name) for x in spec]
        if len(set(values)) != len(values):
            raise ValidationError(name, "duplicate values")
        return tuple(sorted(values))
    return (_number(spec, name),)


def parse_config(text: str, *, log_temperature: bool = False) -> SweepConfig:
    """Parse and validate a JSON sweep configuration.

    Raises
    ------
    ParseError
        Malformed JSON, with line and column.
    ValidationError
        A field is missing or invalid; ``.field`` names it.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from exc
    if not isinstance(doc, dict):
        raise ValidationError("<root>", "expected a JSON object")
    unknown = set(doc) - _CONFIG_KEYS
    if unknown:
        raise ValidationError(sorted(unknown)[0], "unknown field")
    for name in PARAMETERS:
        if name not in doc:
            raise ValidationError(name, "missing")

    j = _axis(doc["j"], "j")
    delta = _axis(doc["delta"], "delta")
    temperature = _axis(doc["temperature"], "temperature", log_temperature)
    if min(delta) < 0.0:
        raise ValidationError("delta", "must be non-negative")
    if min(temperature) <= 0.0:
        raise ValidationError("temperature", "must be strictly positive")

    quantities = doc.get("quantities", list(QUANTITIES))
    if not isinstance(quantities, list) or not quantities:
        raise ValidationError("quantities", "expected a non-empty list")
    bad = [q for q in quantities if q not in QUANTITIES]
    if bad:
        raise ValidationError("quantities", f"unknown quantity {bad[0]!r}")
    chosen = set(quantities)

    try:
        mode = SteeringMode(doc.get("steering_mode", "oracle"))
    except ValueError:
        raise ValidationError("steering_mode", "must be 'paper' or 'oracle'") from None
    fmt = doc.get("output_format", "csv")
    if fmt not in OUTPUT_FORMATS:
        raise ValidationError("output_format", "must be 'csv' or 'json'")
    plot = doc.get("plot")
    if plot is not None and not isinstance(plot, str):
        raise ValidationError("plot", "expected a file path")

    return SweepConfig(
        j=j,
        delta=delta,
        temperature=temperature,
        quantities=tuple(q for q in QUANTITIES if q in chosen),
        steering_mode=mode,
        output_format=fmt,
        plot=plot,
    )


def _finite(x) -> Optional[float]:
    if x is None:
        return None
    x = float(x)
    return x if math.isfinite(x) else None


def evaluate_point(
    j: float,
    delta: float,
    temperature: float,
    quantities=QUANTITIES,
    mode: SteeringMode = SteeringMode.ORACLE,
) -> SweepRow:
    """Compute the requested quantities at one parameter point.

    Failures of individual quantities become ``None`` with a message in
    ``row.warnings``; they never abort the row.
    """
    row = SweepRow(j, delta, temperature, {})
    where = f"j={j:g} delta={delta:g} T={temperature:g}"
    p = ModelParams(j, delta, temperature)
    rho = None
    report = None

    def compute(q):
        nonlocal rho, report
        if q in THERMO_FIELDS:
            if report is None:
                report = thermo.thermo_report(p)
            return getattr(report, THERMO_FIELDS[q])
        if rho is None:
            rho = thermal_state(p)
        if q == "discord":
            return corr.discord_numeric(rho)
        if q == "concurrence":
            return corr.concurrence(rho)
        if q == "steering12":
            return corr.steering_degree(rho, "1->2", mode)
        if q == "steering21":
            return corr.steering_degree(rho, "2->1", mode)
        if q == "bell":
            return corr.chsh_quantities(rho)[1]
        if q == "fidelity":
            return teleport.max_fidelity(rho)
        if q == "fidelity_deviation":
            return teleport.fidelity_deviation(rho)
        if q == "det_r":
            return teleport.det_r(rho)
        raise KeyError(q)

    for q in quantities:
        try:
            value = _finite(compute(q))
            if value is None:
                row.warnings.append(f"{where}: {q} undefined")
        except DQDError as exc:
            value = None
            row.warnings.append(f"{where}: {q}: {exc}")
        row.values[q] = value
    return row


def _evaluate(args) -> SweepRow:
    return evaluate_point(*args)


def grid_points(cfg: SweepConfig):
    return [(j, d, t) for j in cfg.j for d in cfg.delta for t in cfg.temperature]


def run_sweep(cfg: SweepConfig, workers: int = 1) -> list[SweepRow]:
    """Evaluate every grid point in lexicographic (j, delta, T) order.

    With ``workers > 1`` rows are computed in a process pool; output order
    and content do not depend on the worker count.
    """
    tasks = [(j, d, t, cfg.quantities, cfg.steering_mode) for j, d, t in grid_points(cfg)]
    if workers <= 1 or len(tasks) < 2:
        rows = [_evaluate(t) for t in tasks]
    else:
        chunk = max(1, len(tasks) // (4 * workers))
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_evaluate, tasks, chunksize=chunk))
    for row in rows:
        for msg in row.warnings:
            log.warning(msg)
    return rows


def sweep_failed(rows: list[SweepRow]) -> bool:
    """True when no row produced a single value."""
    return all(v is None for row in rows for v in row.values.values())


def _fmt(x: Optional[float]) -> str:
    return "" if x is None else format(x, ".12g")


def _round(x: Optional[float]) -> Optional[float]:
    return None if x is None else float(format(x, ".12g"))


def emit_csv(rows: list[SweepRow], quantities=QUANTITIES) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow([*PARAMETERS, *quantities])
    for row in rows:
        writer.writerow([_fmt(v) for v in row.as_dict(quantities).values()])
    return buf.getvalue()


def emit_json(rows: list[SweepRow], quantities=QUANTITIES) -> str:
    data = [{k: _round(v) for k, v in row.as_dict(quantities).items()} for row in rows]
    return json.dumps(data, indent=2)

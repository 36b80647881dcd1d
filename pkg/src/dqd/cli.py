"""Command-line entry point ``dqd``.

Exit status: 0 on success, 1 when a computation fails, 2 for usage or
configuration errors.
"""
from __future__ import annotations

import argparse
import dataclasses
import json
import logging
import os
import sys
from typing import Optional

from . import __version__
from . import correlations as corr
from . import fixtures, teleport, thermo
from .correlations import SteeringMode
from .errors import ConfigError, DQDError, InvalidParams, ValidationError
from .linalg import hermitian_eigen
from .model import ModelParams, hamiltonian, partition_function, thermal_state
from .sweep import OUTPUT_FORMATS, emit_csv, emit_json, parse_config, run_sweep, sweep_failed
from .svgplot import emit_svg_plot

log = logging.getLogger("dqd")

EXIT_OK, EXIT_FAILURE, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _write(text: str, path: Optional[str]) -> None:
    if path is None:
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def _workers(arg: Optional[int]) -> int:
    if arg is not None:
        value = arg
    else:
        raw = os.environ.get("DQD_WORKERS", "1")
        try:
            value = int(raw)
        except ValueError:
            raise UsageError(f"DQD_WORKERS must be an integer, got {raw!r}") from None
    if value < 1:
        raise UsageError("worker count must be >= 1")
    return value


def _point(args) -> ModelParams:
    flags = {"j": args.j, "delta": args.delta, "temperature": args.temperature}
    if args.config is not None:
        cfg = parse_config(_read(args.config))
        values = {"j": cfg.j, "delta": cfg.delta, "temperature": cfg.temperature}
        for name, axis in values.items():
            if flags[name] is None:
                if len(axis) != 1:
                    raise ValidationError(name, "single-point commands need a scalar value")
                flags[name] = axis[0]
    missing = [k for k, v in flags.items() if v is None]
    if missing:
        raise UsageError(f"missing parameter {missing[0]!r} (use --config or --{missing[0]})")
    return ModelParams(**flags)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _params_dict(p: ModelParams) -> dict:
    return {"j": p.j, "delta": p.delta, "temperature": p.temperature}


def cmd_state(args) -> int:
    p = _point(args)
    rho = thermal_state(p)
    eig = hermitian_eigen(rho)
    out = {
        "params": _params_dict(p),
        "rho": rho.real.tolist(),
        "populations": [float(x) for x in eig.eigenvalues],
        "hamiltonian_spectrum": [float(x) for x in hermitian_eigen(hamiltonian(p)).eigenvalues],
        "partition_function": partition_function(p),
    }
    _write(_dump(out), args.out)
    return EXIT_OK


def cmd_correlations(args) -> int:
    p = _point(args)
    report = corr.correlation_report(thermal_state(p), SteeringMode(args.steering_mode))
    out = {"params": _params_dict(p), "steering_mode": args.steering_mode}
    out.update(dataclasses.asdict(report))
    _write(_dump(out), args.out)
    return EXIT_OK


def cmd_teleport(args) -> int:
    p = _point(args)
    out = {"params": _params_dict(p)}
    out.update(dataclasses.asdict(teleport.teleport_report(thermal_state(p))))
    _write(_dump(out), args.out)
    return EXIT_OK


def cmd_thermo(args) -> int:
    p = _point(args)
    out = {"params": _params_dict(p)}
    out.update(dataclasses.asdict(thermo.thermo_report(p)))
    _write(_dump(out), args.out)
    return EXIT_OK


def cmd_sweep(args) -> int:
    if args.config is None:
        raise UsageError("sweep needs --config")
    cfg = parse_config(_read(args.config), log_temperature=args.log_temperature)
    overrides = {}
    if args.steering_mode is not None:
        overrides["steering_mode"] = SteeringMode(args.steering_mode)
    if args.format is not None:
        overrides["output_format"] = args.format
    if args.plot is not None:
        overrides["plot"] = args.plot
    cfg = dataclasses.replace(cfg, **overrides)

    rows = run_sweep(cfg, workers=_workers(args.workers))
    emit = emit_json if cfg.output_format == "json" else emit_csv
    text = emit(rows, cfg.quantities)
    if cfg.output_format == "json":
        text += "\n"
    _write(text, args.out)
    if cfg.plot:
        emit_svg_plot(rows, "temperature", cfg.quantities, cfg.plot)
    if rows and sweep_failed(rows):
        log.error("every point of the sweep failed")
        return EXIT_FAILURE
    return EXIT_OK


def cmd_check(args) -> int:
    if args.bless:
        if args.config is None:
            raise UsageError("--bless needs --config naming the file to write")
        fixtures.bless_fixtures(args.config)
        log.info("blessed fixtures written to %s", args.config)
        return EXIT_OK
    report = fixtures.check_fixtures(args.config)
    text = "\n".join(report.lines()) + "\n"
    _write(text, args.out)
    return EXIT_OK if report.ok else EXIT_FAILURE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dqd", description="Correlations and work extraction in coupled double quantum dots."
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging on stderr")
    sub = parser.add_subparsers(dest="command", metavar="<subcommand>")
    sub.required = True

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON configuration (fixture file for 'check')")
    common.add_argument("--out", help="write output here instead of stdout")

    point = argparse.ArgumentParser(add_help=False)
    point.add_argument("--j", type=float, help="Coulomb coupling J")
    point.add_argument("--delta", type=float, help="tunneling coupling")
    point.add_argument("--temperature", "-T", type=float, help="temperature")

    modes = [m.value for m in SteeringMode]
    commands = {
        "state": (cmd_state, "thermal state and spectrum at one point"),
        "correlations": (cmd_correlations, "discord, concurrence, steering and Bell at one point"),
        "teleport": (cmd_teleport, "teleportation fidelity at one point"),
        "thermo": (cmd_thermo, "work extraction quantities at one point"),
    }
    for name, (fn, help_text) in commands.items():
        p = sub.add_parser(name, parents=[common, point], help=help_text)
        if name == "correlations":
            p.add_argument("--steering-mode", choices=modes, default="oracle")
        p.set_defaults(func=fn)

    p = sub.add_parser("sweep", parents=[common], help="evaluate a parameter grid")
    p.add_argument("--plot", help="write an SVG plot of the quantities against T")
    p.add_argument("--workers", type=int, help="process count (default: $DQD_WORKERS or 1)")
    p.add_argument("--steering-mode", choices=modes, help="override the config value")
    p.add_argument("--format", choices=OUTPUT_FORMATS, help="override the config value")
    p.add_argument("--log-temperature", action="store_true", help="log-spaced temperature ranges")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("check", parents=[common], help="verify blessed regression fixtures")
    p.add_argument("--bless", action="store_true", help="write fresh fixtures to --config")
    p.set_defaults(func=cmd_check)
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(levelname)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        return args.func(args)
    except (UsageError, ConfigError, InvalidParams, OSError) as exc:
        print(f"dqd: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DQDError, ArithmeticError, ValueError) as exc:
        print(f"dqd: computation failed: {exc}", file=sys.stderr)
        return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())

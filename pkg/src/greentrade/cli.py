"""Command-line front end.

Precedence: command-line flags > config file > built-in defaults. Exit codes:
0 on success, 1 on usage or configuration errors, 2 on domain/solver errors.
"""

from __future__ import annotations

import argparse
import dataclasses
import os
import sys
from dataclasses import dataclass, field

import numpy as np

from . import experiments as ex
from .deployment import DeploymentConfig, place_users, write_deployment_csv
from .model import EnergyRangeError, ResourcePoint, SystemParams, channel_gain, total_energy_per_bit
from .optimizer import SolverConfig, SolverError, optimal_bandwidth, optimal_delay


class ConfigError(ValueError):
    pass


# key -> (section, field, type, description with units)
CONFIG_KEYS = {
    "noise_psd": ("system", "noise_psd", float, "noise power spectral density N0 (W/Hz)"),
    "circuit_power_per_hz": ("system", "circuit_power_per_hz", float, "bandwidth-proportional circuit power P_cir (W/Hz)"),
    "static_power": ("system", "static_power", float, "static circuit power P_sb (W)"),
    "tx_gain": ("system", "tx_gain", float, "transmit antenna gain G_t (linear)"),
    "rx_gain": ("system", "rx_gain", float, "receive antenna gain G_r (linear)"),
    "wavelength_m": ("system", "wavelength", float, "carrier wavelength (m); overrides carrier_frequency_hz"),
    "carrier_frequency_hz": ("system", "carrier_frequency", float, "carrier frequency f_c (Hz); wavelength = c/f_c"),
    "system_loss": ("system", "system_loss", float, "system loss L (linear, >= 1)"),
    "path_loss_exponent": ("system", "path_loss_exponent", float, "path-loss exponent alpha (>= 2)"),
    "cell_count": ("deployment", "cell_count", int, "number of hexagonal cells"),
    "cell_radius_m": ("deployment", "cell_radius", float, "cell circumradius R (m)"),
    "user_count": ("deployment", "user_count", int, "number of users"),
    "min_user_distance_m": ("deployment", "min_user_distance", float, "minimum BS-user distance (m)"),
    "seed": ("deployment", "rng_seed", int, "RNG seed (unsigned 64-bit)"),
    "relative_tolerance": ("solver", "relative_tolerance", float, "root-finder relative tolerance"),
    "max_iterations": ("solver", "max_iterations", int, "root-finder iteration cap"),
    "bracket_growth_factor": ("solver", "bracket_growth_factor", float, "bracket expansion factor"),
    "output_dir": ("run", "output_dir", str, "directory for CSV output (default: stdout)"),
}


@dataclass(frozen=True)
class RunConfig:
    system: SystemParams = field(default_factory=SystemParams)
    deployment: DeploymentConfig = field(default_factory=DeploymentConfig)
    solver: SolverConfig = field(default_factory=SolverConfig)
    output_dir: str | None = None

    @property
    def seed(self) -> int:
        return self.deployment.rng_seed


def _build(values: dict) -> RunConfig:
    sections = {"system": {}, "deployment": {}, "solver": {}, "run": {}}
    for key, value in values.items():
        section, name, _, _ = CONFIG_KEYS[key]
        sections[section][name] = value
    system = sections["system"]
    if "carrier_frequency" in system and "wavelength" not in system:
        system["wavelength"] = None
    return RunConfig(
        system=SystemParams(**system),
        deployment=DeploymentConfig(**sections["deployment"]),
        solver=SolverConfig(**sections["solver"]),
        output_dir=sections["run"].get("output_dir"),
    )


def _read_values(path) -> tuple[dict, dict]:
    values, lines = {}, {}
    with open(path) as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigError(f"{path}:{lineno}: expected 'key = value'")
            key, text = (part.strip() for part in line.split("=", 1))
            if key not in CONFIG_KEYS:
                raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
            kind = CONFIG_KEYS[key][2]
            try:
                values[key] = kind(text) if kind is not int else int(text, 0)
            except ValueError:
                raise ConfigError(f"{path}:{lineno}: {key}: malformed value {text!r}") from None
            lines[key] = lineno
    return values, lines


def parse_config(path, overrides: dict | None = None) -> RunConfig:
    """Read a flat ``key = value`` file; missing keys keep their defaults.

    Raises
    ------
    ConfigError
        Unknown key, malformed number or violated invariant, naming the key
        and line.
    """
    values, lines = _read_values(path) if path is not None else ({}, {})
    values.update(overrides or {})
    try:
        return _build(values)
    except ValueError as err:
        # find the offending key from the message for a line reference
        for key, (_, name, _, _) in CONFIG_KEYS.items():
            if name in str(err) and key in lines:
                raise ConfigError(f"{path}:{lines[key]}: {key}: {err}") from None
        raise ConfigError(str(err)) from None


def _write(table_or_writer, out_dir, filename, stdout):
    if out_dir is None:
        table_or_writer(stdout)
        return
    os.makedirs(out_dir, exist_ok=True)
    with open(os.path.join(out_dir, filename), "w", newline="") as fh:
        table_or_writer(fh)


def _parse_steps(text):
    steps = []
    for tok in text.split(","):
        tok = tok.strip()
        if tok in ("continuous", "inf"):
            steps.append(None)
        else:
            n = int(tok)
            if n < 1:
                raise argparse.ArgumentTypeError("step counts must be >= 1")
            steps.append(n)
    return tuple(steps)


def _config_epilog():
    lines = ["config keys (flat 'key = value' file, '#' comments, SI units):"]
    for key, (_, _, _, desc) in CONFIG_KEYS.items():
        lines.append(f"  {key:<24}{desc}")
    return "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", metavar="PATH", help="flat key = value config file")
    common.add_argument("--out", metavar="DIR", help="write CSV files into DIR instead of stdout")
    common.add_argument("--seed", metavar="U64", type=int, help="deployment RNG seed")

    parser = argparse.ArgumentParser(
        prog="greentrade",
        description="Minimum energy per bit by trading bandwidth and delay.",
        epilog=_config_epilog(),
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", metavar="SUBCOMMAND")

    p = sub.add_parser("optimal", parents=[common], help="optimal bandwidth and delay at a distance")
    p.add_argument("--distance", metavar="METERS", type=float, default=1000.0)
    p.add_argument("--gain", type=float, help="use this channel gain instead of --distance")

    p = sub.add_parser("energy", parents=[common], help="energy breakdown at one (W, t) point")
    p.add_argument("--bandwidth", type=float, required=True, help="bandwidth per bit")
    p.add_argument("--delay", type=float, required=True, help="delay per bit (s)")
    p.add_argument("--distance", metavar="METERS", type=float, default=1000.0)
    p.add_argument("--gain", type=float, help="use this channel gain instead of --distance")

    p = sub.add_parser("table1", parents=[common], help="energy at W, t in 0.1..1.0 (other fixed at 1)")
    p.add_argument("--gain", type=float, default=ex.TABLE_GAIN)

    p = sub.add_parser("surface", parents=[common], help="joint energy surface over (W, t)")
    p.add_argument("--window", choices=sorted(ex.SURFACE_WINDOWS), default="full")
    p.add_argument("--points", type=int, default=21)
    p.add_argument("--gain", type=float, default=ex.TABLE_GAIN)

    p = sub.add_parser("curves", parents=[common], help="transmit-only and total energy curves per distance")
    p.add_argument("--axis", choices=["W", "t"], default="W")
    p.add_argument("--lo", type=float, default=0.05)
    p.add_argument("--hi", type=float, default=1.0)
    p.add_argument("--points", type=int, default=96)
    p.add_argument("--distances", default="600,800,1000", help="comma-separated metres")

    for name, what in (("sweep-bandwidth", "available bandwidth"), ("sweep-delay", "acceptable delay")):
        p = sub.add_parser(name, parents=[common], help=f"mean energy versus {what}")
        p.add_argument("--steps", metavar="LIST", type=_parse_steps,
                       default=ex.DEFAULT_STEPS + (None,),
                       help="comma-separated step counts, 'continuous' for per-user optima")
        p.add_argument("--lo", type=float, default=1e-2)
        p.add_argument("--hi", type=float, default=1e1)
        p.add_argument("--points", type=int, default=200)
        p.add_argument("--representative", choices=["outer", "midpoint", "inner"], default="outer")

    sub.add_parser("deploy", parents=[common], help="generate the hexagonal deployment")
    return parser


class _UsageError(Exception):
    pass


def _gain(args, cfg):
    if getattr(args, "gain", None) is not None:
        if not args.gain > 0:
            raise ValueError("gain must be positive")
        return args.gain
    return channel_gain(args.distance, cfg.system)


def _run(args, cfg: RunConfig, stdout) -> None:
    out = args.out if args.out is not None else cfg.output_dir
    params = cfg.system
    cmd = args.command

    if cmd == "optimal":
        g = _gain(args, cfg)
        w = optimal_bandwidth(g, params, cfg.solver)
        t = optimal_delay(g, params, cfg.solver)
        table = ex.ResultTable(
            ["gain", "optimal_bandwidth", "energy_at_bandwidth", "optimal_delay", "energy_at_delay"],
            [(g, w.value, w.energy_at_optimum, t.value, t.energy_at_optimum)],
            {"experiment": "optimal", "params": dataclasses.asdict(params),
             "solver": dataclasses.asdict(cfg.solver)},
        )
        _write(table.to_csv, out, "optimal.csv", stdout)
    elif cmd == "energy":
        g = _gain(args, cfg)
        b = total_energy_per_bit(ResourcePoint(args.bandwidth, args.delay), g, params)
        table = ex.ResultTable(
            ["bandwidth", "delay", "gain", "e_transmit", "e_circuit", "e_total"],
            [(args.bandwidth, args.delay, g, b.e_transmit, b.e_circuit, b.e_total)],
            {"experiment": "energy", "params": dataclasses.asdict(params)},
        )
        _write(table.to_csv, out, "energy.csv", stdout)
    elif cmd == "table1":
        _write(ex.table1(params, args.gain).to_csv, out, "table1.csv", stdout)
    elif cmd == "surface":
        if args.points < 1:
            raise _UsageError("--points must be >= 1")
        table = ex.energy_surface(params, args.gain, window=args.window, points=args.points)
        _write(table.to_csv, out, f"surface-{args.window}.csv", stdout)
    elif cmd == "curves":
        if args.points < 2 or not 0 < args.lo < args.hi:
            raise _UsageError("need 0 < --lo < --hi and --points >= 2")
        try:
            dists = [float(x) for x in args.distances.split(",")]
        except ValueError:
            raise _UsageError(f"bad --distances {args.distances!r}") from None
        table = ex.distance_curves(params, args.axis, np.linspace(args.lo, args.hi, args.points), dists)
        _write(table.to_csv, out, f"curves-{args.axis}.csv", stdout)
    elif cmd in ("sweep-bandwidth", "sweep-delay"):
        kind = "bandwidth" if cmd == "sweep-bandwidth" else "delay"
        try:
            spec = ex.SweepSpec.logspace(args.lo, args.hi, args.points, steps=args.steps,
                                         representative=args.representative)
        except ValueError as err:
            raise _UsageError(str(err)) from None
        dep = place_users(cfg.deployment)
        table = ex.availability_sweep(kind, dep, spec, params, cfg.solver)
        _write(table.to_csv, out, f"{cmd}.csv", stdout)
    elif cmd == "deploy":
        dep = place_users(cfg.deployment)
        _write(lambda fh: write_deployment_csv(dep, fh), out, "deploy.csv", stdout)


def main(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 0 for --help and 2 for usage errors
        return 0 if exc.code == 0 else 1
    if args.command is None:
        parser.print_usage(stderr)
        stderr.write("greentrade: error: a subcommand is required\n")
        return 1
    overrides = {"seed": args.seed} if args.seed is not None else {}
    try:
        cfg = parse_config(args.config, overrides)
    except (ConfigError, OSError) as err:
        stderr.write(f"greentrade: config error: {err}\n")
        return 1
    try:
        _run(args, cfg, stdout)
    except _UsageError as err:
        stderr.write(f"greentrade: error: {err}\n")
        return 1
    except (ValueError, ArithmeticError, SolverError, RuntimeError) as err:
        stderr.write(f"greentrade: {type(err).__name__}: {err}\n")
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end for the verification suites and model flows."""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from ..errors import BracketLabError, SimulationDiverged
from ..systems import SYSTEMS, build_grid, get_system
from .checks import SUITES, dispersion_report, initial_state, run_suite
from .dispersion import D_CHOICES
from .evolution import bracket_flow, build_monitors, evolve


def _parse_points(value) -> tuple[int, ...] | None:
    if value is None:
        return None
    if isinstance(value, int):
        return (value,)
    if isinstance(value, str):
        return tuple(int(p) for p in value.split(",") if p.strip())
    return tuple(int(p) for p in value)


def _load_config(path: str) -> dict:
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise BracketLabError(f"could not read config {path!r}: {exc}") from exc
    if not isinstance(data, dict):
        raise BracketLabError("config file must hold a JSON object")
    return data


# Flag names on the left, the config-file spellings they also answer to on
# the right.  "seeds" may be {"base": N} (the report shape) or a bare int;
# "tolerances" may be {"scale": S} or a bare number; output paths live under
# {"output": {"report": ..., "csv": ...}}.
_CONFIG_ALIASES = {"seed": "seeds", "tol": "tolerances"}
_OUTPUT_KEYS = {"out": "report", "csv": "csv"}
_DICT_FIELDS = {"seeds": "base", "tolerances": "scale"}


def _pick(args: argparse.Namespace, config: dict, key: str, default=None):
    """CLI flag wins, then the config file, then the built-in default."""
    value = getattr(args, key, None)
    if value is not None:
        return value
    if key in config:
        return config[key]
    alias = _CONFIG_ALIASES.get(key)
    if alias and alias in config:
        value = config[alias]
        field = _DICT_FIELDS.get(alias)
        if isinstance(value, dict) and field:
            return value.get(field, default)
        return value
    sub = _OUTPUT_KEYS.get(key)
    if sub:
        out = config.get("output")
        if isinstance(out, dict) and sub in out:
            return out[sub]
    return default


def _emit(report, out_path) -> int:
    for line in report.summary_lines():
        print(line)
    if out_path:
        report.write(out_path)
        print(f"report written to {out_path}")
    return 0 if report.passed else 1


def _cmd_verify(args: argparse.Namespace) -> int:
    config = _load_config(args.config) if args.config else {}
    system = _pick(args, config, "system")
    if not system:
        raise BracketLabError("verify needs a system name (argument or config)")
    grid = build_grid(system, _parse_points(_pick(args, config, "grid")))
    report = run_suite(
        system,
        seed=int(_pick(args, config, "seed", 0)),
        grid=grid,
        tol_scale=float(_pick(args, config, "tol", 1.0)),
        **config.get("system_params", {}),
    )
    return _emit(report, _pick(args, config, "out"))


def _cmd_simulate(args: argparse.Namespace) -> int:
    config = _load_config(args.config) if args.config else {}
    name = _pick(args, config, "system")
    if not name:
        raise BracketLabError("simulate needs a system name (argument or config)")
    grid = build_grid(name, _parse_points(_pick(args, config, "grid")))
    system = get_system(name, grid=grid, **config.get("system_params", {}))

    monitors = _pick(args, config, "monitors")
    if monitors is None:
        monitors = ["norm"] + (["energy"] if system.hamiltonian else [])
    elif isinstance(monitors, str):
        monitors = [m.strip() for m in monitors.split(",") if m.strip()]

    seed = int(_pick(args, config, "seed", 0))
    dt = float(_pick(args, config, "dt", 1e-3))
    steps = int(_pick(args, config, "steps", 100))
    chi0 = initial_state(system, seed)
    rhs = bracket_flow(system, _pick(args, config, "bracket"))
    try:
        result = evolve(rhs, chi0, dt, steps,
                        monitors=build_monitors(system, monitors))
    except SimulationDiverged as exc:
        print(f"simulation diverged: {exc}", file=sys.stderr)
        return 2

    print(f"{name}: {steps} steps of dt={dt:g} (seed {seed})")
    for mon, series in result.monitors.items():
        print(f"  {mon}: initial={series[0]:.12g} final={series[-1]:.12g} "
              f"drift={result.monitor_drift(mon):.3e}")
    csv_path = _pick(args, config, "csv")
    if csv_path:
        result.to_csv(csv_path)
        print(f"monitor series written to {csv_path}")
    return 0


def _cmd_dispersion(args: argparse.Namespace) -> int:
    config = _load_config(args.config) if args.config else {}
    d_name = _pick(args, config, "d")
    if d_name not in D_CHOICES:
        raise BracketLabError(
            f"dispersion needs --d from {sorted(D_CHOICES)}")
    wavevector = _parse_points(_pick(args, config, "k"))
    if not wavevector:
        raise BracketLabError("dispersion needs a wavevector, e.g. --k 1,0,0")
    points = _parse_points(_pick(args, config, "grid"))
    grid = build_grid("vorticity", points) if points else None
    tol = _pick(args, config, "tol")
    report = dispersion_report(
        d_name, wavevector, grid=grid,
        periods=int(_pick(args, config, "periods", 10)),
        samples_per_period=int(_pick(args, config, "samples", 48)),
        tol=None if tol is None else float(tol),
    )
    return _emit(report, _pick(args, config, "out"))


def _cmd_list(args: argparse.Namespace) -> int:
    for name in sorted(SYSTEMS):
        system = get_system(name)
        brackets = ", ".join(sorted(system.brackets))
        print(f"{name}")
        print(f"  brackets: {brackets} (default {system.default_bracket})")
        if system.casimirs:
            print(f"  casimir families: {', '.join(sorted(system.casimirs))}")
        if system.constraints:
            print(f"  constraint sets: {', '.join(sorted(system.constraints))}")
        has_h = "yes" if system.hamiltonian is not None else "no"
        print(f"  hamiltonian: {has_h}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bracketlab",
        description="Verify bracket constructions and run constrained flows.")
    sub = parser.add_subparsers(dest="command", required=True)

    verify = sub.add_parser("verify", help="run a system's check suite")
    verify.add_argument("system", nargs="?", choices=sorted(SUITES),
                        help="system to check (may come from --config)")
    verify.add_argument("--grid", help="grid points, e.g. 16 or 16,16,16")
    verify.add_argument("--seed", type=int, help="base probe seed (default 0)")
    verify.add_argument("--tol", type=float,
                        help="scale factor applied to every tolerance")
    verify.add_argument("--out", help="write the JSON report here")
    verify.add_argument("--config", help="JSON config file (CLI flags win)")
    verify.set_defaults(func=_cmd_verify)

    simulate = sub.add_parser("simulate", help="integrate a bracket flow")
    simulate.add_argument("system", nargs="?", choices=sorted(SYSTEMS))
    simulate.add_argument("--bracket", help="bracket name (system default otherwise)")
    simulate.add_argument("--dt", type=float, help="time step (default 1e-3)")
    simulate.add_argument("--steps", type=int, help="step count (default 100)")
    simulate.add_argument("--monitors",
                          help="comma list: energy, norm, div:<slot>, "
                               "dev:<slot>, casimir:<family>")
    simulate.add_argument("--csv", help="write monitor series to this CSV file")
    simulate.add_argument("--grid", help="grid points, e.g. 16 or 16,16,16")
    simulate.add_argument("--seed", type=int, help="initial-state seed")
    simulate.add_argument("--config", help="JSON config file (CLI flags win)")
    simulate.set_defaults(func=_cmd_simulate)

    disp = sub.add_parser("dispersion",
                          help="measure the constraint-pair wave frequency")
    disp.add_argument("--d", choices=sorted(D_CHOICES),
                      help="multiplier operator closing the pair")
    disp.add_argument("--k", help="integer wavevector, e.g. 1,0,0")
    disp.add_argument("--grid", help="grid points, e.g. 16 or 16,16,16")
    disp.add_argument("--periods", type=int, help="periods to integrate (10)")
    disp.add_argument("--samples", type=int, help="samples per period (48)")
    disp.add_argument("--tol", type=float, help="frequency tolerance")
    disp.add_argument("--out", help="write the JSON report here")
    disp.add_argument("--config", help="JSON config file (CLI flags win)")
    disp.set_defaults(func=_cmd_dispersion)

    lst = sub.add_parser("list", help="list systems, brackets and families")
    lst.set_defaults(func=_cmd_list)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (BracketLabError, KeyError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

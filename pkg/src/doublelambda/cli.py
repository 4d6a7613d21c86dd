"""Command-line interface.

Subcommands: point, sweep, lasing-search, evolve, verify-adiabatic, cavity.
Every subcommand reads a scenario file via --config or a shipped preset via
--preset.  Exit codes: 0 success, 1 configuration error, 2 solver error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from importlib import resources

import numpy as np

from . import __version__
from .cavity import (
    calibrate_prefactor,
    find_equal_gain_points,
    lasing_feasibility,
    threshold_gain,
)
from .configfile import (
    Scenario,
    build_scenario,
    check_frequency_resonance,
    load_scenario,
    parse_pairs,
    schema_help,
)
from .errors import ConfigError, DoubleLambdaError
from .liouville import (
    DensityMatrix,
    build_liouvillian,
    evolve,
    exact_coherences,
    operators_as_json,
    steady_state,
)
from .effective import effective_coherences
from .medium import susceptibility
from .sweeps import (
    PRESET_SWEEPS,
    AxisSpec,
    SweepSpec,
    run_sweep,
    verify_adiabaticity,
)

PRESET_NAMES = ("fig2", "fig3", "fig4")


def _load_preset(name: str) -> Scenario:
    if name not in PRESET_NAMES:
        raise ConfigError(f"unknown preset {name!r}; choose from {PRESET_NAMES}")
    text = resources.files("doublelambda").joinpath(
        f"presets/{name}.cfg").read_text(encoding="utf-8")
    return build_scenario(parse_pairs(text))


def _scenario_from_args(args) -> tuple[Scenario, str | None]:
    if getattr(args, "preset", None):
        return _load_preset(args.preset), args.preset
    if getattr(args, "config", None):
        return load_scenario(args.config), None
    raise ConfigError("provide --config <file> or --preset <name>")


def _resolve_medium(scenario: Scenario, engine: str = "exact"):
    """Medium parameters with any calibration target resolved."""
    if scenario.medium is None:
        return None
    if scenario.calibrate_alpha is None:
        return scenario.medium
    medium, _point = calibrate_prefactor(
        scenario.config, scenario.medium, scenario.calibrate_alpha,
        engine=engine)
    return medium


def _parse_axis(text: str) -> AxisSpec:
    parts = text.split(":")
    if len(parts) not in (4, 5):
        raise ConfigError(
            f"axis spec must be name:lo:hi:n[:noendpoint], got {text!r}")
    endpoint = True
    if len(parts) == 5:
        if parts[4] != "noendpoint":
            raise ConfigError(f"trailing axis flag must be 'noendpoint': {text!r}")
        endpoint = False
    return AxisSpec(parts[0], float(parts[1]), float(parts[2]), int(parts[3]),
                    endpoint=endpoint)


def _write(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)


def _json_dump(payload: dict, out: str | None) -> None:
    _write(json.dumps(payload, indent=2, sort_keys=True) + "\n", out)


def cmd_point(args) -> int:
    scenario, _ = _scenario_from_args(args)
    cfg = scenario.config
    medium = _resolve_medium(scenario, "exact" if args.engine == "both"
                             else args.engine)
    payload: dict = {"config_hash": scenario.config_hash, "engines": {}}
    failures: list[DoubleLambdaError] = []
    if args.engine in ("exact", "both"):
        try:
            liou = build_liouvillian(cfg)
            rho = steady_state(liou)
            r14, r24, r13, r23 = exact_coherences(rho)
            entry = {
                "rho14": [r14.real, r14.imag],
                "rho24": [r24.real, r24.imag],
                "rho13": [r13.real, r13.imag],
                "rho23": [r23.real, r23.imag],
                "populations": [rho.population(i) for i in range(4)],
            }
            if medium is not None:
                resp = susceptibility(cfg, (r14, r24), medium)
                entry["alpha14"] = resp.alpha14
                entry["alpha24"] = resp.alpha24
            if args.dump_operators:
                with open(args.dump_operators, "w", encoding="utf-8") as fh:
                    json.dump(operators_as_json(liou), fh, indent=2)
        except DoubleLambdaError as exc:
            failures.append(exc)
            entry = {"error": f"{type(exc).__name__}: {exc}"}
        payload["engines"]["exact"] = entry
    if args.engine in ("effective", "both"):
        try:
            res = effective_coherences(cfg)
            entry = {
                "rho14": [res["rho14"].real, res["rho14"].imag],
                "rho24": [res["rho24"].real, res["rho24"].imag],
                "rho11": [res["rho11"].real, res["rho11"].imag],
                "rho12": [res["rho12"].real, res["rho12"].imag],
                "pop_D": res["rho2"].population(0),
                "pop_B": res["rho2"].population(1),
            }
            if medium is not None:
                resp = susceptibility(cfg, (res["rho14"], res["rho24"]), medium)
                entry["alpha14"] = resp.alpha14
                entry["alpha24"] = resp.alpha24
        except DoubleLambdaError as exc:
            failures.append(exc)
            entry = {"error": f"{type(exc).__name__}: {exc}"}
        payload["engines"]["effective"] = entry
    if failures and len(failures) == len(payload["engines"]):
        raise failures[0]
    _json_dump(payload, args.out)
    return 0


def cmd_sweep(args) -> int:
    scenario, preset = _scenario_from_args(args)
    if args.axis:
        axes = [_parse_axis(a) for a in args.axis]
        if len(axes) > 2:
            raise ConfigError("at most two sweep axes are supported")
        outputs = tuple(args.outputs.split(",")) if args.outputs else \
            ("rho14_re", "rho14_im", "rho24_re", "rho24_im")
        spec = SweepSpec(
            axis1=axes[0],
            axis2=axes[1] if len(axes) > 1 else None,
            engine=args.engine,
            outputs=outputs,
        )
    elif preset is not None:
        spec = PRESET_SWEEPS[preset]
        if args.outputs:
            spec = SweepSpec(spec.axis1, spec.axis2, spec.engine,
                             tuple(args.outputs.split(",")))
    else:
        raise ConfigError("provide --axis name:lo:hi:n or use --preset")
    medium = None
    if any(o.startswith(("alpha", "xi")) for o in spec.outputs):
        medium = _resolve_medium(
            scenario, "exact" if spec.engine == "both" else spec.engine)
    result = run_sweep(spec, scenario.config, medium=medium,
                       parallel=args.parallel,
                       config_hash=scenario.config_hash)
    if args.format == "csv":
        _write(result.to_csv(), args.out)
    else:
        _json_dump(result.as_dict(), args.out)
    return 0


def cmd_lasing_search(args) -> int:
    scenario, _ = _scenario_from_args(args)
    if scenario.medium is None:
        raise ConfigError("lasing-search needs the medium block in the scenario")
    cfg = scenario.config
    medium = scenario.medium
    if scenario.calibrate_alpha is not None:
        medium, _pt = calibrate_prefactor(cfg, medium, scenario.calibrate_alpha,
                                          engine=args.engine)
    check_frequency_resonance(scenario)
    points = find_equal_gain_points(
        cfg, medium, samples=args.samples, engine=args.engine,
        cavity=scenario.cavity)
    payload: dict = {
        "config_hash": scenario.config_hash,
        "engine": args.engine,
        "crossings": [
            {
                "phi0": p.phi0,
                "phi0_over_pi": p.phi0 / math.pi,
                "delta4": p.delta4,
                "gain_m^-1": p.gain,
                "alpha14": p.alpha14,
                "alpha24": p.alpha24,
                "margin": None if math.isnan(p.margin) else p.margin,
                "per_pass": None if math.isnan(p.per_pass) else p.per_pass,
            }
            for p in points
        ],
    }
    both_positive = [p for p in points if p.alpha14 > 0 and p.alpha24 > 0]
    if both_positive and scenario.cavity is not None:
        best = max(both_positive, key=lambda p: p.gain)
        payload["operating_point"] = lasing_feasibility(
            best, scenario.cavity).as_dict()
    _json_dump(payload, args.out)
    return 0


def cmd_evolve(args) -> int:
    scenario, _ = _scenario_from_args(args)
    cfg = scenario.config
    liou = build_liouvillian(cfg)
    rho0 = np.zeros((4, 4), dtype=complex)
    start = {"ground1": 0, "ground2": 1, "excited3": 2, "excited4": 3}
    rho0[start[args.initial], start[args.initial]] = 1.0
    times, states = evolve(liou, DensityMatrix.from_matrix(rho0),
                           t_final=args.t_final, dt=args.dt,
                           max_samples=args.samples)
    header = ["t", "pop1", "pop2", "pop3", "pop4",
              "rho14_re", "rho14_im", "rho24_re", "rho24_im"]
    lines = [f"# config-hash={scenario.config_hash}", ",".join(header)]
    for t, st in zip(times, states):
        r14, r24, _, _ = exact_coherences(st)
        row = [t] + [st.population(i) for i in range(4)] + [
            r14.real, r14.imag, r24.real, r24.imag]
        lines.append(",".join(f"{v:.17g}" for v in row))
    _write("\n".join(lines) + "\n", args.out)
    return 0


def cmd_verify_adiabatic(args) -> int:
    scenario, _ = _scenario_from_args(args)
    report = verify_adiabaticity(scenario.config, t_final=args.t_final)
    payload = {"config_hash": scenario.config_hash, **report.as_dict()}
    _json_dump(payload, args.out)
    return 0


def cmd_cavity(args) -> int:
    scenario, _ = _scenario_from_args(args)
    if scenario.cavity is None:
        raise ConfigError(
            "cavity report needs ground_splitting_hz and cavity_transmittivity")
    check_frequency_resonance(scenario)
    spec = scenario.cavity
    alpha_thr, per_pass_thr = threshold_gain(spec)
    payload = {
        "config_hash": scenario.config_hash,
        "splitting_rad_s": spec.splitting,
        "mode_index": spec.mode_index,
        "cavity_length_m": spec.length,
        "transmittivity": spec.transmittivity,
        "threshold_m^-1": alpha_thr,
        "per_pass_threshold": per_pass_thr,
    }
    _json_dump(payload, args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="doublelambda",
        description=__doc__,
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog=schema_help(),
    )
    parser.add_argument("--version", action="version",
                        version=f"doublelambda {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, engine_default="exact"):
        p.add_argument("--config", help="scenario file path")
        p.add_argument("--preset", choices=PRESET_NAMES,
                       help="shipped scenario preset")
        p.add_argument("--out", help="output path (default stdout)")
        p.add_argument("--engine", default=engine_default,
                       choices=("exact", "effective", "both"))

    p = sub.add_parser("point", help="single steady-state evaluation")
    common(p, engine_default="both")
    p.add_argument("--dump-operators", metavar="PATH",
                   help="write H and L as JSON (row-major [re, im] pairs)")
    p.set_defaults(func=cmd_point)

    p = sub.add_parser("sweep", help="1-D or 2-D parameter sweep")
    common(p)
    p.add_argument("--axis", action="append",
                   help="axis spec name:lo:hi:n[:noendpoint]; repeat for 2-D")
    p.add_argument("--outputs", help="comma-separated observable list")
    p.add_argument("--format", default="csv", choices=("csv", "json"))
    p.add_argument("--parallel", type=int, default=1, metavar="N",
                   help="worker processes (rows stay in grid order)")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("lasing-search", help="equal-gain phase search")
    common(p)
    p.add_argument("--samples", type=int, default=720)
    p.set_defaults(func=cmd_lasing_search)

    p = sub.add_parser("evolve", help="time evolution from a pure state")
    common(p)
    p.add_argument("--t-final", type=float, required=True)
    p.add_argument("--dt", type=float, default=None)
    p.add_argument("--samples", type=int, default=500)
    p.add_argument("--initial", default="ground1",
                   choices=("ground1", "ground2", "excited3", "excited4"))
    p.set_defaults(func=cmd_evolve)

    p = sub.add_parser("verify-adiabatic",
                       help="excited-state following deviation report")
    common(p)
    p.add_argument("--t-final", type=float, default=None)
    p.set_defaults(func=cmd_verify_adiabatic)

    p = sub.add_parser("cavity", help="cavity length and threshold report")
    common(p)
    p.set_defaults(func=cmd_cavity)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 1
    except FileNotFoundError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 1
    except DoubleLambdaError as exc:
        print(f"solver error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

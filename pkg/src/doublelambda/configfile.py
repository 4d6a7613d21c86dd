"""Flat key-value scenario files.

One line per key, ``key = value``, ``#`` starts a comment.  All rates are in
units of gamma3 unless the key is suffixed ``_hz`` (plain Hz) or ``_si``
(SI base units: rad/s, m, C*m).  Unknown keys are rejected with the schema
printed, so a typo cannot silently change physics.

A scenario bundles the drive configuration with the optional SI block needed
by the medium and cavity layers.  The medium prefactor can be given three
ways, exactly one of which may be used: explicit dipole moments, an explicit
shared coupling prefactor, or a calibration target gain that the lasing
search resolves into a prefactor.
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass

from .cavity import CavitySpec
from .errors import ConfigError
from .medium import MediumParams
from .model import (
    AtomLevels,
    DoubleLambdaConfig,
    DriveField,
    ValidatedConfig,
    validate_config,
)

TWO_PI = 2.0 * math.pi

# key -> (default, documentation).  None means "unset".
SCHEMA: dict[str, tuple[float | int | None, str]] = {
    "gamma3": (1.0, "decay rate of |3> in internal units (normally 1.0)"),
    "gamma4": (1.0, "decay rate of |4> in units of gamma3"),
    "ground_decoherence": (0.0, "pure dephasing rate between |1> and |2>"),
    "omega13_rabi": (None, "pump Rabi frequency on 1-3 (required)"),
    "omega23_rabi": (None, "pump Rabi frequency on 2-3 (required)"),
    "omega14_rabi": (None, "probe Rabi frequency on 1-4 (required)"),
    "omega24_rabi": (None, "probe Rabi frequency on 2-4 (required)"),
    "delta13": (0.0, "detuning of the 1-3 field"),
    "delta23": (0.0, "detuning of the 2-3 field"),
    "delta14": (0.0, "detuning of the 1-4 field"),
    "delta24": (0.0, "detuning of the 2-4 field"),
    "phi0_13": (0.0, "constant phase of the 1-3 field (rad)"),
    "phi0_23": (0.0, "constant phase of the 2-3 field (rad)"),
    "phi0_14": (0.0, "constant phase of the 1-4 field (rad)"),
    "phi0_24": (0.0, "constant phase of the 2-4 field (rad)"),
    "ground_splitting_hz": (None, "|1>-|2> splitting in Hz (SI anchor)"),
    "gamma3_hz": (None, "gamma3 / 2pi in Hz (SI anchor)"),
    "probe_carrier_thz": (None, "1-4 transition frequency in THz"),
    "density_si": (None, "atomic number density in m^-3"),
    "dipole14_si": (None, "1-4 transition dipole magnitude in C*m"),
    "dipole24_si": (None, "2-4 transition dipole magnitude in C*m"),
    "kappa_si": (None, "shared coupling prefactor mu0*N*|M|^2*c^2/hbar"),
    "calibrate_alpha": (None, "target equal gain in m^-1 (resolved by search)"),
    "cavity_mode_index": (1, "ring-cavity mode index m >= 1"),
    "cavity_transmittivity": (None, "output-coupler transmittivity in (0, 1)"),
}

REQUIRED = ("omega13_rabi", "omega23_rabi", "omega14_rabi", "omega24_rabi")

INT_KEYS = ("cavity_mode_index",)


def schema_help() -> str:
    lines = ["scenario file schema (key = value, '#' comments):"]
    for key, (default, doc) in SCHEMA.items():
        d = "required" if key in REQUIRED else f"default {default}"
        lines.append(f"  {key:<24} {doc} [{d}]")
    return "\n".join(lines)


@dataclass(frozen=True)
class Scenario:
    """Validated drive configuration plus the optional SI design block."""

    config: ValidatedConfig
    medium: MediumParams | None
    calibrate_alpha: float | None
    cavity: CavitySpec | None
    config_hash: str
    values: dict


def parse_pairs(text: str) -> dict:
    """Parse the flat key-value format, rejecting unknown keys."""
    values: dict = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(
                f"line {lineno}: expected 'key = value', got {raw!r}\n"
                + schema_help())
        key, _, val = line.partition("=")
        key = key.strip()
        val = val.strip()
        if key not in SCHEMA:
            raise ConfigError(f"unknown key {key!r} on line {lineno}\n"
                              + schema_help())
        if key in values:
            raise ConfigError(f"duplicate key {key!r} on line {lineno}")
        try:
            values[key] = int(val) if key in INT_KEYS else float(val)
        except ValueError as exc:
            raise ConfigError(
                f"line {lineno}: cannot parse value for {key!r}: {val!r}"
            ) from exc
    return values


def canonical_text(values: dict) -> str:
    """Canonical serialization used for hashing: schema order, 17 digits."""
    parts = []
    for key in SCHEMA:
        if key in values and values[key] is not None:
            v = values[key]
            parts.append(f"{key}={v:d}" if key in INT_KEYS else f"{key}={v:.17g}")
    return "\n".join(parts)


def scenario_hash(values: dict) -> str:
    return hashlib.sha256(canonical_text(values).encode("ascii")).hexdigest()


def build_scenario(values: dict) -> Scenario:
    missing = [k for k in REQUIRED if values.get(k) is None]
    if missing:
        raise ConfigError(f"missing required keys: {', '.join(missing)}\n"
                          + schema_help())
    merged = {k: values.get(k, SCHEMA[k][0]) for k in SCHEMA}
    for k in SCHEMA:
        if merged[k] is None and SCHEMA[k][0] is not None:
            merged[k] = SCHEMA[k][0]

    gamma3_hz = merged["gamma3_hz"]
    splitting_hz = merged["ground_splitting_hz"]
    splitting_units = 0.0
    if splitting_hz is not None and gamma3_hz is not None:
        splitting_units = splitting_hz / gamma3_hz

    levels = AtomLevels.for_rates(
        gamma3=merged["gamma3"],
        gamma4=merged["gamma4"],
        ground_splitting=splitting_units,
    )
    raw = DoubleLambdaConfig(
        levels=levels,
        d13=DriveField(merged["omega13_rabi"], merged["delta13"], merged["phi0_13"]),
        d23=DriveField(merged["omega23_rabi"], merged["delta23"], merged["phi0_23"]),
        d14=DriveField(merged["omega14_rabi"], merged["delta14"], merged["phi0_14"]),
        d24=DriveField(merged["omega24_rabi"], merged["delta24"], merged["phi0_24"]),
        ground_decoherence=merged["ground_decoherence"],
    )
    config = validate_config(raw)

    medium = None
    calibrate = merged["calibrate_alpha"]
    has_dipoles = merged["dipole14_si"] is not None or merged["dipole24_si"] is not None
    has_kappa = merged["kappa_si"] is not None
    modes = sum([has_dipoles, has_kappa, calibrate is not None])
    if modes > 1:
        raise ConfigError(
            "choose one of: dipole14_si/dipole24_si, kappa_si, calibrate_alpha")
    if merged["density_si"] is not None:
        for need in ("gamma3_hz", "probe_carrier_thz", "ground_splitting_hz"):
            if merged[need] is None:
                raise ConfigError(
                    f"medium block needs {need} alongside density_si")
        omega14 = TWO_PI * merged["probe_carrier_thz"] * 1e12
        omega24 = omega14 - TWO_PI * merged["ground_splitting_hz"]
        gamma3_si = TWO_PI * merged["gamma3_hz"]
        if has_dipoles:
            medium = MediumParams(
                density=merged["density_si"],
                omega14=omega14,
                omega24=omega24,
                gamma3_si=gamma3_si,
                dipole14=merged["dipole14_si"] or 0.0,
                dipole24=merged["dipole24_si"] or 0.0,
            )
        else:
            # Explicit or to-be-calibrated shared prefactor; start from the
            # given kappa or a unit seed that calibration rescales.
            seed = merged["kappa_si"] if has_kappa else 1.0
            medium = MediumParams(
                density=merged["density_si"],
                omega14=omega14,
                omega24=omega24,
                gamma3_si=gamma3_si,
                kappa14=seed,
                kappa24=seed,
            )

    cavity = None
    if merged["cavity_transmittivity"] is not None:
        if merged["ground_splitting_hz"] is None:
            raise ConfigError("cavity block needs ground_splitting_hz")
        cavity = CavitySpec(
            splitting=TWO_PI * merged["ground_splitting_hz"],
            mode_index=int(merged["cavity_mode_index"]),
            transmittivity=merged["cavity_transmittivity"],
        )

    return Scenario(
        config=config,
        medium=medium,
        calibrate_alpha=calibrate,
        cavity=cavity,
        config_hash=scenario_hash(values),
        values=merged,
    )


def load_scenario(path) -> Scenario:
    with open(path, "r", encoding="utf-8") as fh:
        return build_scenario(parse_pairs(fh.read()))


def check_frequency_resonance(scenario: Scenario, tol: float = 1e-6) -> float:
    """Residual of the probe-beat / splitting consistency, in gamma3 units.

    The cavity length assumes the probe beat equals the ground splitting plus
    the probe two-photon detuning; the residual compares the configured
    splitting with the one the cavity was built from.
    """
    if scenario.cavity is None or scenario.values["gamma3_hz"] is None:
        return 0.0
    gamma3_si = TWO_PI * scenario.values["gamma3_hz"]
    configured = scenario.config.levels.ground_splitting * gamma3_si
    residual = abs(configured - scenario.cavity.splitting) / gamma3_si
    if residual > tol:
        raise ConfigError(
            f"cavity splitting disagrees with the configured ground splitting "
            f"by {residual:.3g} gamma3 units")
    return residual

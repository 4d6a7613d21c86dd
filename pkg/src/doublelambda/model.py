"""Domain types, validation, and the closed-loop phase of the drive fields.

The atom has two metastable ground states |1>, |2> and two excited states
|3>, |4>.  Four laser fields drive the dipole-allowed legs: 1-3 and 2-3 (the
strong pair, "pumps") and 1-4 and 2-4 (the weak pair, "probes"); 1-2 and 3-4
carry no dipole moment.  Each per-field detuning is laser frequency minus
transition frequency.

All rates and detunings are dimensionless, expressed in units of the |3>
population decay rate; SI units enter only at the medium/cavity boundary.

For each Lambda pair we form the common detuning (half-sum of the two leg
detunings) and the two-photon detuning (their difference).  A steady state
without population pulsations exists only when both pairs share the same
two-photon detuning, so validation enforces that to floating-point tolerance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

from .errors import NegativeRate, NonMatchingTwoPhotonDetuning

TWO_PI = 2.0 * math.pi

# Probe pair counts as perturbative when its total squared Rabi frequency is
# at most 1% of the pump pair's.  Recorded, never enforced.
PERTURBATIVE_RATIO = 0.01

# Two-photon detuning mismatch tolerance, relative to gamma3.
TWO_PHOTON_TOL = 1e-9


@dataclass(frozen=True)
class DriveField:
    """One laser field: Rabi frequency, detuning, constant phase.

    The Rabi frequency is non-negative by convention; all sign and phase
    information lives in ``phase0``.  ``wavevector`` (rad/m) is optional and
    used only by the phase-matching check.
    """

    rabi: float
    detuning: float = 0.0
    phase0: float = 0.0
    wavevector: float | None = None

    def __post_init__(self):
        if self.rabi < 0:
            raise NegativeRate(f"Rabi frequency must be >= 0, got {self.rabi}")


@dataclass(frozen=True)
class AtomLevels:
    """Level frequencies and excited-state decay rates.

    ``ground_splitting`` is omega2 - omega1 exactly; pass None to have it
    derived.  The absolute optical frequencies do not enter the rotating-frame
    dynamics; only the ground splitting (cavity design) and the decay rates do.
    """

    omega1: float
    omega2: float
    omega3: float
    omega4: float
    gamma3: float
    gamma4: float
    ground_splitting: float | None = None

    def __post_init__(self):
        if self.gamma3 <= 0 or self.gamma4 <= 0:
            raise NegativeRate(
                f"decay rates must be positive, got gamma3={self.gamma3}, "
                f"gamma4={self.gamma4}"
            )
        if not (self.omega1 <= self.omega2 < self.omega3):
            raise ValueError("level ordering requires omega1 <= omega2 < omega3")
        if not (self.omega2 < self.omega4):
            raise ValueError("level ordering requires omega2 < omega4")
        split = self.omega2 - self.omega1
        if self.ground_splitting is None:
            object.__setattr__(self, "ground_splitting", split)
        elif self.ground_splitting != split:
            raise ValueError(
                f"ground_splitting={self.ground_splitting} does not equal "
                f"omega2 - omega1 = {split}"
            )

    @classmethod
    def for_rates(
        cls,
        gamma3: float = 1.0,
        gamma4: float = 1.0,
        ground_splitting: float = 0.0,
        omega3: float | None = None,
        omega4: float | None = None,
    ) -> "AtomLevels":
        """Levels with omega1 = 0; optical frequencies default to placeholders."""
        if omega3 is None:
            omega3 = ground_splitting + 1.0e8
        if omega4 is None:
            omega4 = omega3 + 1.0e6
        return cls(0.0, ground_splitting, omega3, omega4, gamma3, gamma4,
                   ground_splitting)


@dataclass(frozen=True)
class DoubleLambdaConfig:
    """Raw drive configuration: the four fields plus optional ground dephasing."""

    levels: AtomLevels
    d13: DriveField
    d23: DriveField
    d14: DriveField
    d24: DriveField
    ground_decoherence: float = 0.0

    def __post_init__(self):
        if self.ground_decoherence < 0:
            raise NegativeRate(
                f"ground_decoherence must be >= 0, got {self.ground_decoherence}"
            )


@dataclass(frozen=True)
class ValidatedConfig:
    """A configuration with all derived detunings populated.

    ``delta3``/``delta4`` are the common detunings, ``two_photon3``/
    ``two_photon4`` the two-photon (Raman) detunings of the pump and probe
    pairs.  ``phi0`` is the closed-loop phase reduced to [0, 2*pi).
    ``probe_perturbative`` records whether the probe pair is weak enough for
    the effective model's accuracy contract; the exact solver ignores it.
    """

    levels: AtomLevels
    d13: DriveField
    d23: DriveField
    d14: DriveField
    d24: DriveField
    ground_decoherence: float
    delta3: float
    delta4: float
    two_photon3: float
    two_photon4: float
    phi0: float
    probe_perturbative: bool

    # Shorthand accessors used throughout the solvers.
    @property
    def omega13(self) -> float:
        return self.d13.rabi

    @property
    def omega23(self) -> float:
        return self.d23.rabi

    @property
    def omega14(self) -> float:
        return self.d14.rabi

    @property
    def omega24(self) -> float:
        return self.d24.rabi

    @property
    def gamma3(self) -> float:
        return self.levels.gamma3

    @property
    def gamma4(self) -> float:
        return self.levels.gamma4

    def with_fields(self, **fields) -> "ValidatedConfig":
        """Return a re-validated copy with drive fields replaced."""
        raw = DoubleLambdaConfig(
            levels=fields.get("levels", self.levels),
            d13=fields.get("d13", self.d13),
            d23=fields.get("d23", self.d23),
            d14=fields.get("d14", self.d14),
            d24=fields.get("d24", self.d24),
            ground_decoherence=fields.get(
                "ground_decoherence", self.ground_decoherence),
        )
        return validate_config(raw)


def closed_loop_phase(cfg: DoubleLambdaConfig | ValidatedConfig) -> float:
    """Closed-loop phase (phi24 - phi23) - (phi14 - phi13), reduced to [0, 2*pi).

    This combination is gauge invariant: it is unchanged by a global phase
    shift of all four fields and by shifting both legs of one Lambda pair by
    the same amount.
    """
    phi = (cfg.d24.phase0 - cfg.d23.phase0) - (cfg.d14.phase0 - cfg.d13.phase0)
    return phi % TWO_PI


def validate_config(
    cfg: DoubleLambdaConfig | ValidatedConfig,
    tol: float = TWO_PHOTON_TOL,
) -> ValidatedConfig:
    """Populate derived detunings and reject physically inconsistent input.

    Idempotent: validating a ValidatedConfig returns it unchanged.
    """
    if isinstance(cfg, ValidatedConfig):
        return cfg

    delta3 = 0.5 * (cfg.d13.detuning + cfg.d23.detuning)
    delta4 = 0.5 * (cfg.d14.detuning + cfg.d24.detuning)
    two_photon3 = cfg.d13.detuning - cfg.d23.detuning
    two_photon4 = cfg.d14.detuning - cfg.d24.detuning

    if abs(two_photon3 - two_photon4) > tol * cfg.levels.gamma3:
        raise NonMatchingTwoPhotonDetuning(
            f"two-photon detunings differ: pump {two_photon3!r} vs probe "
            f"{two_photon4!r}; no pulsation-free steady state exists"
        )

    pump_sq = cfg.d13.rabi**2 + cfg.d23.rabi**2
    probe_sq = cfg.d14.rabi**2 + cfg.d24.rabi**2
    perturbative = probe_sq <= PERTURBATIVE_RATIO * pump_sq

    return ValidatedConfig(
        levels=cfg.levels,
        d13=cfg.d13,
        d23=cfg.d23,
        d14=cfg.d14,
        d24=cfg.d24,
        ground_decoherence=cfg.ground_decoherence,
        delta3=delta3,
        delta4=delta4,
        two_photon3=two_photon3,
        two_photon4=two_photon4,
        phi0=closed_loop_phase(cfg),
        probe_perturbative=perturbative,
    )


def make_config(
    omega13: float,
    omega23: float,
    omega14: float,
    omega24: float,
    delta3: float = 0.0,
    delta4: float = 0.0,
    two_photon: float = 0.0,
    phi0: float = 0.0,
    gamma3: float = 1.0,
    gamma4: float = 1.0,
    ground_decoherence: float = 0.0,
    ground_splitting: float = 0.0,
) -> ValidatedConfig:
    """Convenience constructor from common/two-photon detunings.

    The closed-loop phase is placed entirely on the 2-4 field; individual
    field phases are physically irrelevant beyond their loop combination.
    """
    levels = AtomLevels.for_rates(gamma3, gamma4, ground_splitting)
    raw = DoubleLambdaConfig(
        levels=levels,
        d13=DriveField(omega13, delta3 + 0.5 * two_photon),
        d23=DriveField(omega23, delta3 - 0.5 * two_photon),
        d14=DriveField(omega14, delta4 + 0.5 * two_photon),
        d24=DriveField(omega24, delta4 - 0.5 * two_photon, phase0=phi0),
        ground_decoherence=ground_decoherence,
    )
    return validate_config(raw)


def set_closed_loop_phase(cfg: ValidatedConfig, phi0: float) -> ValidatedConfig:
    """Copy of ``cfg`` whose closed-loop phase equals ``phi0``.

    Only the 2-4 field phase is moved; the other three are untouched.
    """
    target = phi0 + (cfg.d23.phase0 + cfg.d14.phase0 - cfg.d13.phase0)
    return cfg.with_fields(d24=replace(cfg.d24, phase0=target))


def set_probe_detuning(cfg: ValidatedConfig, delta4: float) -> ValidatedConfig:
    """Copy of ``cfg`` with probe common detuning ``delta4``.

    The probe two-photon detuning is preserved so the configuration stays
    valid.
    """
    dd = cfg.two_photon4
    return cfg.with_fields(
        d14=replace(cfg.d14, detuning=delta4 + 0.5 * dd),
        d24=replace(cfg.d24, detuning=delta4 - 0.5 * dd),
    )


def set_pump_detuning(cfg: ValidatedConfig, delta3: float) -> ValidatedConfig:
    """Copy of ``cfg`` with pump common detuning ``delta3``; two-photon kept."""
    dd = cfg.two_photon3
    return cfg.with_fields(
        d13=replace(cfg.d13, detuning=delta3 + 0.5 * dd),
        d23=replace(cfg.d23, detuning=delta3 - 0.5 * dd),
    )

"""Ring-cavity design for simultaneous lasing of both probe legs.

The cavity round trip must hold one beat period of the two probes, so the
length is set by the ground-state splitting alone: L_c = 2*pi*m*c / splitting
(splitting as an angular frequency).  Lasing requires the medium gain of each
probe to beat the output-coupler loss, alpha >= T / (2 L_c).

The equal-gain search scans the closed-loop phase for roots of
g(phi0) = alpha14(phi0) - alpha24(phi0) by dense sampling plus bisection.
Phases where both coefficients vanish identically (the trapping points where
the medium does not respond at all) also solve g = 0; they are skipped, since
they carry no light-matter response and are useless as operating points.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .effective import effective_coherences
from .errors import NoCrossings, SolverError
from .liouville import DecayModel, build_liouvillian, exact_coherences, steady_state
from .medium import MediumParams, MediumResponse, susceptibility
from .model import ValidatedConfig, set_closed_loop_phase, set_probe_detuning

TWO_PI = 2.0 * math.pi

GAIN_TOL = 1e-6        # m^-1, root tolerance on alpha14 - alpha24
PHASE_TOL = 1e-6       # rad, bracket width at which bisection stops
TRIVIAL_GAIN_TOL = 1e-6  # m^-1, below this both-zero roots are non-responses


@dataclass(frozen=True)
class CavitySpec:
    """Ring cavity: ground-state splitting (rad/s), mode index, coupler loss."""

    splitting: float
    mode_index: int
    transmittivity: float

    def __post_init__(self):
        if self.splitting <= 0:
            raise ValueError(f"splitting must be positive, got {self.splitting}")
        if self.mode_index < 1:
            raise ValueError(f"mode_index must be >= 1, got {self.mode_index}")
        if not 0.0 < self.transmittivity < 1.0:
            raise ValueError(
                f"transmittivity must lie in (0, 1), got {self.transmittivity}")

    @property
    def length(self) -> float:
        """Cavity length in meters."""
        return cavity_length(self.splitting, self.mode_index)


def cavity_length(splitting: float, mode_index: int) -> float:
    """L_c = 2*pi*m*c / splitting, with the splitting as angular frequency."""
    from scipy.constants import c as c_light

    return TWO_PI * mode_index * c_light / splitting


def threshold_gain(spec: CavitySpec) -> tuple[float, float]:
    """Gain-loss balance: (alpha threshold in m^-1, per-pass threshold T/2)."""
    return spec.transmittivity / (2.0 * spec.length), spec.transmittivity / 2.0


@dataclass(frozen=True)
class LasingPoint:
    """One equal-gain root of the phase scan.

    ``gain`` is the common coefficient at the root; ``margin`` and
    ``per_pass`` are filled when a cavity is supplied (NaN otherwise).
    """

    phi0: float
    delta4: float
    gain: float
    margin: float
    per_pass: float
    pump_context: ValidatedConfig
    alpha14: float
    alpha24: float


@dataclass(frozen=True)
class FeasibilityReport:
    phi0: float
    gain: float
    threshold: float
    margin: float
    per_pass: float
    max_transmittivity: float
    cavity_length_m: float
    mode_index: int
    feasible: bool
    phase_lock: str

    def as_dict(self) -> dict:
        return {
            "phi0": self.phi0,
            "gain_m^-1": self.gain,
            "threshold_m^-1": self.threshold,
            "margin": self.margin,
            "per_pass": self.per_pass,
            "max_T": self.max_transmittivity,
            "cavity_length_m": self.cavity_length_m,
            "mode_index": self.mode_index,
            "feasible": self.feasible,
            "phase_lock": self.phase_lock,
        }


def evaluate_gains(
    cfg: ValidatedConfig,
    medium: MediumParams,
    engine: str = "exact",
    decay: DecayModel = DecayModel(),
) -> MediumResponse:
    """Gain coefficients of both probes at one configuration."""
    if engine == "exact":
        rho = steady_state(build_liouvillian(cfg, decay))
        coh = exact_coherences(rho)
    elif engine == "effective":
        res = effective_coherences(cfg)
        coh = (res["rho14"], res["rho24"])
    else:
        raise ValueError(f"unknown engine {engine!r}")
    return susceptibility(cfg, coh, medium)


def find_equal_gain_points(
    cfg_template: ValidatedConfig,
    medium: MediumParams,
    delta4: float | None = None,
    phi0_range: tuple[float, float] = (0.0, TWO_PI),
    samples: int = 720,
    engine: str = "exact",
    cavity: CavitySpec | None = None,
    decay: DecayModel = DecayModel(),
) -> list[LasingPoint]:
    """All phases in ``phi0_range`` where both probes see the same gain.

    Dense sampling over the range (endpoint excluded when the range spans a
    full period, which also enables the wrap-around bracket) followed by
    bisection to |alpha14 - alpha24| <= 1e-6 m^-1.  Roots where the medium
    does not respond at all (both coefficients below 1e-6 m^-1, the trapping
    phases) are dropped.  Raises NoCrossings when no sign change exists.
    """
    lo, hi = phi0_range
    if hi <= lo or samples < 2:
        raise ValueError("phi0_range must be increasing and samples >= 2")
    base = cfg_template if delta4 is None else set_probe_detuning(
        cfg_template, delta4)
    periodic = abs((hi - lo) - TWO_PI) <= 1e-12

    def g(phi: float) -> tuple[float, float, float]:
        resp = evaluate_gains(set_closed_loop_phase(base, phi), medium,
                              engine, decay)
        return resp.alpha14 - resp.alpha24, resp.alpha14, resp.alpha24

    n_grid = samples if periodic else samples + 1
    step = (hi - lo) / samples if periodic else (hi - lo) / (samples)
    phis = [lo + i * step for i in range(n_grid)]
    vals = [g(p) for p in phis]

    brackets: list[tuple[float, float, float]] = []
    pair_count = len(phis) if periodic else len(phis) - 1
    for i in range(pair_count):
        j = (i + 1) % len(phis)
        ga, gb = vals[i][0], vals[j][0]
        pa = phis[i]
        pb = phis[i] + step
        if ga == 0.0:
            brackets.append((pa, pa, ga))
            continue
        if ga * gb < 0.0:
            brackets.append((pa, pb, ga))

    if not brackets:
        diffs = [v[0] for v in vals]
        raise NoCrossings(
            f"no equal-gain sign change over [{lo:.6g}, {hi:.6g}]; "
            f"g ranges over [{min(diffs):.3e}, {max(diffs):.3e}] m^-1"
        )

    points: list[LasingPoint] = []
    seen: list[float] = []
    for a, b, ga in brackets:
        if a == b:
            root = a
        else:
            flo = ga
            loc_a, loc_b = a, b
            root = 0.5 * (loc_a + loc_b)
            for _ in range(200):
                mid = 0.5 * (loc_a + loc_b)
                fm = g(mid)[0]
                root = mid
                # Both tolerances must hold at the returned root; stop early
                # only at an exact zero or the floating-point floor.
                done = abs(fm) <= GAIN_TOL and (loc_b - loc_a) <= PHASE_TOL
                floor = (loc_b - loc_a) <= 16.0 * np.finfo(float).eps * max(
                    abs(loc_a), abs(loc_b), 1.0)
                if fm == 0.0 or done or floor:
                    break
                if (fm > 0.0) == (flo > 0.0):
                    loc_a, flo = mid, fm
                else:
                    loc_b = mid
        root_mod = root % TWO_PI if periodic else root
        if any(abs(root_mod - s) < 1e-6 or abs(abs(root_mod - s) - TWO_PI) < 1e-6
               for s in seen):
            continue
        gd, a14, a24 = g(root)
        if max(abs(a14), abs(a24)) <= TRIVIAL_GAIN_TOL:
            continue  # trapping phase: no medium response, not an operating point
        seen.append(root_mod)
        gain = 0.5 * (a14 + a24)
        if cavity is not None:
            thr, _ = threshold_gain(cavity)
            margin = gain - thr
            per_pass = gain * cavity.length
        else:
            margin = float("nan")
            per_pass = float("nan")
        points.append(LasingPoint(
            phi0=root_mod,
            delta4=base.delta4,
            gain=gain,
            margin=margin,
            per_pass=per_pass,
            pump_context=set_closed_loop_phase(base, root_mod),
            alpha14=a14,
            alpha24=a24,
        ))
    if not points:
        diffs = [v[0] for v in vals]
        raise NoCrossings(
            "all equal-gain roots sit at zero medium response (trapping "
            f"phases); g ranges over [{min(diffs):.3e}, {max(diffs):.3e}] m^-1"
        )
    points.sort(key=lambda p: p.phi0)
    return points


def lasing_feasibility(point: LasingPoint, spec: CavitySpec) -> FeasibilityReport:
    """Threshold comparison and phase-lock statement for one operating point."""
    threshold, _ = threshold_gain(spec)
    gain = point.gain
    length = spec.length
    cfg = point.pump_context
    lock = (
        "output phases are locked to the pumps: "
        f"(phi24 - phi14) = {point.phi0:.9g} + (phi23 - phi13) = "
        f"{(point.phi0 + cfg.d23.phase0 - cfg.d13.phase0) % TWO_PI:.9g} rad"
    )
    return FeasibilityReport(
        phi0=point.phi0,
        gain=gain,
        threshold=threshold,
        margin=gain - threshold,
        per_pass=gain * length,
        max_transmittivity=2.0 * gain * length,
        cavity_length_m=length,
        mode_index=spec.mode_index,
        feasible=gain >= threshold,
        phase_lock=lock,
    )


def calibrate_prefactor(
    cfg: ValidatedConfig,
    medium: MediumParams,
    alpha_target: float,
    delta4: float | None = None,
    samples: int = 720,
    engine: str = "exact",
    decay: DecayModel = DecayModel(),
) -> tuple[MediumParams, LasingPoint]:
    """Scale the coupling prefactor so the best equal-gain point hits a target.

    The crossing structure itself is independent of a common prefactor, so
    the search runs once with the supplied medium and the single scale factor
    is read off the both-positive crossing with the largest common gain.
    """
    if alpha_target <= 0:
        raise ValueError(f"alpha_target must be positive, got {alpha_target}")
    points = find_equal_gain_points(
        cfg, medium, delta4=delta4, samples=samples, engine=engine, decay=decay)
    positive = [p for p in points if p.alpha14 > 0 and p.alpha24 > 0]
    if not positive:
        raise SolverError(
            "no equal-gain point with both probes amplifying; cannot calibrate")
    best = max(positive, key=lambda p: p.gain)
    factor = alpha_target / best.gain
    scaled = medium.scaled(factor)
    # Margins depend on a cavity, which calibration does not have; callers get
    # them from lasing_feasibility once a CavitySpec is chosen.
    rescaled = LasingPoint(
        phi0=best.phi0,
        delta4=best.delta4,
        gain=best.gain * factor,
        margin=float("nan"),
        per_pass=float("nan"),
        pump_context=best.pump_context,
        alpha14=best.alpha14 * factor,
        alpha24=best.alpha24 * factor,
    )
    return scaled, rescaled

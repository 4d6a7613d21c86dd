"""Parameter sweeps, the adiabaticity verification run, and CSV export.

A sweep evaluates one or both engines over a 1-D or 2-D grid of drive
parameters.  Grid points are independent, so they may be farmed out to a
process pool; results are gathered and written in grid order, which keeps the
CSV bit-identical for identical inputs regardless of the worker count.
Per-point solver failures are recorded in an ``error`` column and never abort
the sweep.

CSV layout: line 1 is ``# config-hash=<hex>``, line 2 the column headers,
then one row per grid point with floats at 17 significant digits.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from multiprocessing import Pool

import numpy as np

from . import __version__
from .effective import (
    adiabatic_coefficients,
    dark_bright,
    effective_coherences,
    ground_block,
    pump_saturation,
)
from .errors import ConfigError, DoubleLambdaError
from .liouville import (
    DecayModel,
    DensityMatrix,
    build_liouvillian,
    evolve,
    exact_coherences,
    steady_state,
)
from .medium import MediumParams, susceptibility
from .model import (
    ValidatedConfig,
    set_closed_loop_phase,
    set_probe_detuning,
    set_pump_detuning,
)

TWO_PI = 2.0 * math.pi

AXIS_NAMES = ("delta4", "delta3", "phi0", "omega4", "omega3", "two_photon")

OBSERVABLES = (
    "rho14_re", "rho14_im", "rho24_re", "rho24_im",
    "rho13_re", "rho13_im", "rho23_re", "rho23_im",
    "pop1", "pop2", "pop3", "pop4", "pop_D", "pop_B",
    "xi14_re", "xi14_im", "xi24_re", "xi24_im", "alpha14", "alpha24",
)

# Observables the reduced model cannot produce.
EXACT_ONLY = ("rho13_re", "rho13_im", "rho23_re", "rho23_im")

MEDIUM_OBSERVABLES = ("xi14_re", "xi14_im", "xi24_re", "xi24_im",
                      "alpha14", "alpha24")


@dataclass(frozen=True)
class AxisSpec:
    """One swept parameter: name, inclusive range, point count.

    ``endpoint=False`` drops the upper edge, which is the natural grid for a
    full period of the closed-loop phase.  A single-point axis is allowed as
    the degenerate case and requires lo == hi.
    """

    name: str
    lo: float
    hi: float
    n: int
    endpoint: bool = True

    def __post_init__(self):
        if self.name not in AXIS_NAMES:
            raise ConfigError(
                f"unknown sweep parameter {self.name!r}; choose from {AXIS_NAMES}")
        if not (math.isfinite(self.lo) and math.isfinite(self.hi)):
            raise ConfigError("sweep range must be finite")
        if self.n < 1 or (self.n == 1 and self.lo != self.hi):
            raise ConfigError("need n >= 2, or n = 1 with lo == hi")

    def values(self) -> np.ndarray:
        if self.n == 1:
            return np.array([self.lo])
        return np.linspace(self.lo, self.hi, self.n, endpoint=self.endpoint)


@dataclass(frozen=True)
class SweepSpec:
    axis1: AxisSpec
    axis2: AxisSpec | None = None
    engine: str = "exact"
    outputs: tuple[str, ...] = ("rho14_re", "rho14_im", "rho24_re", "rho24_im")

    def __post_init__(self):
        if self.engine not in ("exact", "effective", "both"):
            raise ConfigError(f"unknown engine {self.engine!r}")
        for name in self.outputs:
            if name not in OBSERVABLES:
                raise ConfigError(
                    f"unknown observable {name!r}; choose from {OBSERVABLES}")


@dataclass
class SweepResult:
    axes: list[str]
    grid: np.ndarray  # (n_points, n_axes)
    columns: dict[str, np.ndarray]
    errors: list[str]
    metadata: dict = field(default_factory=dict)

    def to_csv(self) -> str:
        header = list(self.axes) + list(self.columns.keys()) + ["error"]
        lines = [f"# config-hash={self.metadata.get('config_hash', '')}"]
        lines.append(",".join(header))
        n = self.grid.shape[0]
        cols = [self.grid[:, i] for i in range(self.grid.shape[1])]
        cols += [self.columns[k] for k in self.columns]
        for row in range(n):
            cells = [f"{col[row]:.17g}" for col in cols]
            cells.append(self.errors[row])
            lines.append(",".join(cells))
        return "\n".join(lines) + "\n"

    def as_dict(self) -> dict:
        return {
            "config_hash": self.metadata.get("config_hash", ""),
            "engine": self.metadata.get("engine", ""),
            "package": self.metadata.get("package", ""),
            "axes": {name: self.grid[:, i].tolist()
                     for i, name in enumerate(self.axes)},
            "columns": {k: v.tolist() for k, v in self.columns.items()},
            "errors": self.errors,
        }


def apply_axis(cfg: ValidatedConfig, name: str, value: float) -> ValidatedConfig:
    if name == "delta4":
        return set_probe_detuning(cfg, value)
    if name == "delta3":
        return set_pump_detuning(cfg, value)
    if name == "phi0":
        return set_closed_loop_phase(cfg, value)
    if name == "omega4":
        norm = math.hypot(cfg.omega14, cfg.omega24)
        if norm == 0.0:
            raise ConfigError("cannot scale a zero probe pair")
        s = value / norm
        return cfg.with_fields(d14=replace(cfg.d14, rabi=cfg.omega14 * s),
                               d24=replace(cfg.d24, rabi=cfg.omega24 * s))
    if name == "omega3":
        norm = math.hypot(cfg.omega13, cfg.omega23)
        if norm == 0.0:
            raise ConfigError("cannot scale a zero pump pair")
        s = value / norm
        return cfg.with_fields(d13=replace(cfg.d13, rabi=cfg.omega13 * s),
                               d23=replace(cfg.d23, rabi=cfg.omega23 * s))
    if name == "two_photon":
        return cfg.with_fields(
            d13=replace(cfg.d13, detuning=cfg.delta3 + 0.5 * value),
            d23=replace(cfg.d23, detuning=cfg.delta3 - 0.5 * value),
            d14=replace(cfg.d14, detuning=cfg.delta4 + 0.5 * value),
            d24=replace(cfg.d24, detuning=cfg.delta4 - 0.5 * value),
        )
    raise ConfigError(f"unknown sweep parameter {name!r}")


def _exact_observables(cfg: ValidatedConfig, outputs, medium, decay) -> dict:
    rho = steady_state(build_liouvillian(cfg, decay))
    r14, r24, r13, r23 = exact_coherences(rho)
    vals = {
        "rho14_re": r14.real, "rho14_im": r14.imag,
        "rho24_re": r24.real, "rho24_im": r24.imag,
        "rho13_re": r13.real, "rho13_im": r13.imag,
        "rho23_re": r23.real, "rho23_im": r23.imag,
        "pop1": rho.population(0), "pop2": rho.population(1),
        "pop3": rho.population(2), "pop4": rho.population(3),
    }
    if "pop_D" in outputs or "pop_B" in outputs:
        g = ground_block(rho, dark_bright(cfg))
        vals["pop_D"] = g[0, 0].real
        vals["pop_B"] = g[1, 1].real
    if any(o in MEDIUM_OBSERVABLES for o in outputs):
        if medium is None:
            raise ConfigError("medium parameters required for xi/alpha outputs")
        resp = susceptibility(cfg, (r14, r24), medium)
        vals.update({
            "xi14_re": resp.xi14.real, "xi14_im": resp.xi14.imag,
            "xi24_re": resp.xi24.real, "xi24_im": resp.xi24.imag,
            "alpha14": resp.alpha14, "alpha24": resp.alpha24,
        })
    return vals


def _effective_observables(cfg: ValidatedConfig, outputs, medium) -> dict:
    res = effective_coherences(cfg)
    r14, r24 = res["rho14"], res["rho24"]
    rho2 = res["rho2"].matrix
    vals = {
        "rho14_re": r14.real, "rho14_im": r14.imag,
        "rho24_re": r24.real, "rho24_im": r24.imag,
        "pop_D": rho2[0, 0].real, "pop_B": rho2[1, 1].real,
        "pop1": res["rho11"].real,
        "pop2": 1.0 - res["rho11"].real,
    }
    if "pop3" in outputs or "pop4" in outputs:
        coeff = adiabatic_coefficients(cfg)
        vals["pop3"] = pump_saturation(cfg) * rho2[1, 1].real
        vals["pop4"] = float((
            abs(coeff.a_d) ** 2 * rho2[0, 0]
            + coeff.a_d * np.conj(coeff.a_b) * rho2[0, 1]
            + coeff.a_b * np.conj(coeff.a_d) * rho2[1, 0]
            + abs(coeff.a_b) ** 2 * rho2[1, 1]
        ).real)
    if any(o in MEDIUM_OBSERVABLES for o in outputs):
        if medium is None:
            raise ConfigError("medium parameters required for xi/alpha outputs")
        resp = susceptibility(cfg, (r14, r24), medium)
        vals.update({
            "xi14_re": resp.xi14.real, "xi14_im": resp.xi14.imag,
            "xi24_re": resp.xi24.real, "xi24_im": resp.xi24.imag,
            "alpha14": resp.alpha14, "alpha24": resp.alpha24,
        })
    return vals


def _point_task(args) -> tuple[int, dict | None, str]:
    """Evaluate one grid point.  Engine failures are per-engine: a singular
    reduced model must not discard the exact solver's values for the point."""
    (index, base, axes, values, engine, outputs, medium, decay) = args
    cfg = base
    try:
        for name, value in zip(axes, values):
            cfg = apply_axis(cfg, name, value)
    except DoubleLambdaError as exc:
        return index, None, f"{type(exc).__name__}: {exc}"
    out: dict = {}
    errors: list[str] = []
    if engine in ("exact", "both"):
        try:
            ex = _exact_observables(cfg, outputs, medium, decay)
            out.update({f"{k}_exact": ex[k] for k in outputs if k in ex})
        except DoubleLambdaError as exc:
            errors.append(f"exact: {type(exc).__name__}: {exc}")
    if engine in ("effective", "both"):
        try:
            ef = _effective_observables(cfg, outputs, medium)
            out.update({f"{k}_effective": ef[k] for k in outputs if k in ef})
        except DoubleLambdaError as exc:
            errors.append(f"effective: {type(exc).__name__}: {exc}")
    if engine == "both":
        for leg in ("rho14", "rho24"):
            re_e = out.get(f"{leg}_re_exact")
            im_e = out.get(f"{leg}_im_exact")
            re_a = out.get(f"{leg}_re_effective")
            im_a = out.get(f"{leg}_im_effective")
            if None not in (re_e, im_e, re_a, im_a):
                out[f"dev_{leg}"] = math.hypot(re_e - re_a, im_e - im_a)
    return index, out, "; ".join(errors)


def column_names(spec: SweepSpec) -> list[str]:
    names = []
    if spec.engine in ("exact", "both"):
        names += [f"{k}_exact" for k in spec.outputs]
    if spec.engine in ("effective", "both"):
        names += [f"{k}_effective" for k in spec.outputs
                  if k not in EXACT_ONLY]
    if spec.engine == "both":
        for leg in ("rho14", "rho24"):
            if f"{leg}_re" in spec.outputs and f"{leg}_im" in spec.outputs:
                names.append(f"dev_{leg}")
    return names


def run_sweep(
    spec: SweepSpec,
    base: ValidatedConfig,
    medium: MediumParams | None = None,
    decay: DecayModel = DecayModel(),
    parallel: int = 1,
    config_hash: str = "",
) -> SweepResult:
    """Evaluate the requested engines over the grid; never aborts on a point."""
    axes = [spec.axis1.name]
    vals1 = spec.axis1.values()
    if spec.axis2 is not None:
        axes.append(spec.axis2.name)
        vals2 = spec.axis2.values()
        grid = np.array([(a, b) for a in vals1 for b in vals2])
    else:
        grid = vals1.reshape(-1, 1)

    tasks = [
        (i, base, tuple(axes), tuple(grid[i]), spec.engine, spec.outputs,
         medium, decay)
        for i in range(grid.shape[0])
    ]
    if parallel > 1:
        with Pool(parallel) as pool:
            raw = pool.map(_point_task, tasks, chunksize=16)
    else:
        raw = [_point_task(t) for t in tasks]
    raw.sort(key=lambda item: item[0])

    names = column_names(spec)
    columns = {name: np.full(grid.shape[0], np.nan) for name in names}
    errors = [""] * grid.shape[0]
    for index, out, err in raw:
        errors[index] = err
        if out is None:
            continue
        for name in names:
            if name in out:
                columns[name][index] = out[name]

    return SweepResult(
        axes=axes,
        grid=grid,
        columns=columns,
        errors=errors,
        metadata={
            "config_hash": config_hash,
            "engine": spec.engine,
            "package": f"doublelambda-{__version__}",
        },
    )


@dataclass(frozen=True)
class AdiabaticityReport:
    """How well the excited states track the instantaneous ground amplitudes.

    ``*_steady`` are the relative deviations at the end of the run (the
    boundary-layer-free figures of merit); ``*_max`` are the windowed maxima
    after the burn-in.  Pump metrics compare the |3> population against its
    saturation prediction; probe metrics compare the 1-4 and 2-4 coherences
    against the elimination amplitudes applied to the exact ground block.
    """

    pump_dev_max: float
    pump_dev_steady: float
    probe_dev_max: float
    probe_dev_steady: float
    t_burn: float
    t_final: float
    n_samples: int

    def as_dict(self) -> dict:
        return {
            "pump_dev_max": self.pump_dev_max,
            "pump_dev_steady": self.pump_dev_steady,
            "probe_dev_max": self.probe_dev_max,
            "probe_dev_steady": self.probe_dev_steady,
            "t_burn": self.t_burn,
            "t_final": self.t_final,
            "n_samples": self.n_samples,
        }


def _slowest_rate(matrix: np.ndarray) -> float:
    rates = np.abs(np.linalg.eigvals(matrix).real)
    rates = rates[rates > 1e-9]
    return float(rates.min()) if rates.size else 1.0


def verify_adiabaticity(
    cfg: ValidatedConfig,
    t_final: float | None = None,
    decay: DecayModel = DecayModel(),
    t_burn: float | None = None,
) -> AdiabaticityReport:
    """Evolve from |1><1| and measure the excited-state following errors."""
    liou = build_liouvillian(cfg, decay)
    basis = dark_bright(cfg)
    l3 = pump_saturation(cfg)
    coeff = adiabatic_coefficients(cfg)
    if t_burn is None:
        t_burn = 3.0 / cfg.gamma3
    if t_final is None:
        t_final = t_burn + 8.0 / _slowest_rate(liou.matrix)

    rho0 = np.zeros((4, 4), dtype=complex)
    rho0[0, 0] = 1.0
    scale = max(abs(cfg.delta3), abs(cfg.delta4), cfg.omega13, cfg.omega23,
                cfg.omega14, cfg.omega24, cfg.gamma3, cfg.gamma4, 1e-30)
    times, states = evolve(liou, DensityMatrix.from_matrix(rho0), t_final,
                           dt=0.04 / scale, max_samples=400)

    dvec, bvec = basis.dark_vector, basis.bright_vector
    pump_num = pump_den = probe_num = probe_den = 0.0
    last_pump = last_probe = (0.0, 0.0)
    for t, st in zip(times, states):
        if t < t_burn:
            continue
        g = ground_block(st, basis)
        p33 = st.population(2)
        dev3 = abs(p33 - l3 * g[1, 1].real)
        pump_num = max(pump_num, dev3)
        pump_den = max(pump_den, abs(p33))
        m = st.matrix
        pred14 = np.conj(coeff.a_d) * (m @ dvec)[0] + np.conj(coeff.a_b) * (m @ bvec)[0]
        pred24 = np.conj(coeff.a_d) * (m @ dvec)[1] + np.conj(coeff.a_b) * (m @ bvec)[1]
        dev4 = abs(m[0, 3] - pred14) + abs(m[1, 3] - pred24)
        mag4 = abs(m[0, 3]) + abs(m[1, 3])
        probe_num = max(probe_num, dev4)
        probe_den = max(probe_den, mag4)
        last_pump = (dev3, abs(p33))
        last_probe = (dev4, mag4)

    def ratio(num: float, den: float) -> float:
        return num / den if den > 1e-30 else 0.0

    return AdiabaticityReport(
        pump_dev_max=ratio(pump_num, pump_den),
        pump_dev_steady=ratio(*last_pump),
        probe_dev_max=ratio(probe_num, probe_den),
        probe_dev_steady=ratio(*last_probe),
        t_burn=t_burn,
        t_final=float(times[-1]),
        n_samples=len(times),
    )


PI = math.pi

PRESET_SWEEPS: dict[str, SweepSpec] = {
    "fig2": SweepSpec(
        axis1=AxisSpec("delta4", -50.0, 50.0, 501),
        axis2=AxisSpec("phi0", 0.0, PI / 4.0, 2),
        engine="both",
        outputs=("rho14_re", "rho14_im", "rho24_re", "rho24_im"),
    ),
    "fig3": SweepSpec(
        axis1=AxisSpec("delta4", 2.0, 40.0, 96),
        axis2=AxisSpec("phi0", 0.0, TWO_PI, 129),
        engine="exact",
        outputs=("alpha14", "alpha24"),
    ),
    "fig4": SweepSpec(
        axis1=AxisSpec("phi0", 0.0, TWO_PI, 720, endpoint=False),
        engine="exact",
        outputs=("alpha14", "alpha24"),
    ),
}

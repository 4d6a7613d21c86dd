"""Steady-state and lasing-design solver for a four-level double-Lambda medium.

Two engines compute the probe coherences of a bi-chromatically pumped atom:
an exact Lindblad solver on the full four-level system, and a reduced
effective two-level model obtained by adiabatic elimination of both excited
states.  On top of them sit the medium response (susceptibilities and
gain/absorption coefficients), a ring-cavity design layer, and a sweep CLI.
"""

from .errors import (
    ConfigError,
    DegenerateSteadyState,
    DoubleLambdaError,
    InvalidDensityMatrix,
    NegativeRate,
    NoCrossings,
    NonMatchingTwoPhotonDetuning,
    NoRelaxation,
    ProbeResonanceSingularity,
    SolverError,
    StepSizeTooLarge,
    ZeroProbe,
    ZeroProbeDetuning,
    ZeroPump,
)
from .model import (
    AtomLevels,
    DoubleLambdaConfig,
    DriveField,
    ValidatedConfig,
    closed_loop_phase,
    make_config,
    set_closed_loop_phase,
    set_probe_detuning,
    set_pump_detuning,
    validate_config,
)
from .liouville import (
    DecayModel,
    DensityMatrix,
    Liouvillian,
    build_hamiltonian_rwa,
    build_liouvillian,
    evolve,
    exact_coherences,
    steady_state,
)
from .effective import (
    AdiabaticCoefficients,
    DarkBrightBasis,
    EffectiveTwoLevel,
    adiabatic_coefficients,
    dark_bright,
    effective_coherences,
    equal_beams_steady_state,
    final_two_level,
    pump_effective,
    reconstruct_coherences,
    three_state_hamiltonian,
    two_level_steady_state,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]

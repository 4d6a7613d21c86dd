"""Exception hierarchy.

``ConfigError`` subclasses signal invalid or inconsistent input and map to
CLI exit code 1; ``SolverError`` subclasses signal numerical failures and map
to exit code 2.  Physics-precondition violations (zero pump, zero probe
detuning, ...) derive from the base class directly.
"""


class DoubleLambdaError(Exception):
    """Base class for all package-specific errors."""


class ConfigError(DoubleLambdaError):
    """Invalid configuration input (file, schema, or physical parameters)."""


class NegativeRate(ConfigError):
    """A decay rate or Rabi frequency was negative."""


class NonMatchingTwoPhotonDetuning(ConfigError):
    """The two Lambda sub-systems have different two-photon detunings.

    A time-independent rotating frame, and with it a pulsation-free steady
    state, exists only when both sub-systems share the same two-photon
    detuning.
    """


class SolverError(DoubleLambdaError):
    """A numerical routine failed to produce a trustworthy result."""


class DegenerateSteadyState(SolverError):
    """The Liouvillian null space has dimension greater than one."""


class StepSizeTooLarge(SolverError):
    """Time integration violated density-matrix invariants."""


class InvalidDensityMatrix(SolverError):
    """A state failed the Hermiticity / trace / positivity checks."""


class ProbeResonanceSingularity(SolverError):
    """Adiabatic elimination denominator fell below the numerical floor."""


class NoCrossings(SolverError):
    """The equal-gain search found no sign change over the sampled phases."""


class ZeroPump(DoubleLambdaError):
    """The pump pair is off; the dark/bright decomposition is undefined."""


class ZeroProbeDetuning(DoubleLambdaError):
    """The effective two-level reduction diverges at zero probe detuning."""


class ZeroProbe(DoubleLambdaError):
    """A probe Rabi frequency is zero; its susceptibility is undefined."""


class NoRelaxation(DoubleLambdaError):
    """The effective two-level system has no decay channel."""

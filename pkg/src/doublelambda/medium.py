"""Medium response: susceptibility factors and gain/absorption coefficients.

The dimensionless susceptibility factor of each probe leg is

    xi_mn = kappa_mn * rho_mn(frame) / Omega_mn,

with kappa_mn = mu0 * N * |M_mn|^2 * c^2 / hbar, the Rabi frequency in rad/s,
and the coherence taken in the frame of the driving field itself.  For the
1-4 leg that is the rotated-frame coherence directly; the 2-4 leg's rotated
coherence is referenced to the closed-loop phase, so the polarization seen by
that field carries the conjugate loop factor exp(-i*Phi0).  Dropping the
factor (or conjugating it) moves the equal-gain operating point away from the
phase where both probes amplify, so it is load-bearing and pinned by tests.

Sign convention: alpha_mn = Im(xi_mn) * omega_mn / c exactly, with positive
alpha meaning growth of the probe along the medium.

The pumps are never depleted by propagation; the pump Rabi frequencies are
external knobs, not dynamical variables.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.constants import c as C_LIGHT
from scipy.constants import hbar as HBAR
from scipy.constants import mu_0 as MU_0

from .errors import ConfigError, ZeroProbe
from .model import ValidatedConfig


@dataclass(frozen=True)
class MediumParams:
    """Atomic density, dipole moments, and the SI bridge for the probe pair.

    ``kappa14``/``kappa24`` (rad^2/s^2 per unit coherence) override the
    dipole-based prefactors when set; the calibration workflow uses them to
    scale the response so a chosen operating point reaches a target gain.
    ``gamma3_si`` converts the dimensionless internal rates to rad/s.
    """

    density: float
    omega14: float
    omega24: float
    gamma3_si: float
    dipole14: float = 0.0
    dipole24: float = 0.0
    kappa14: float | None = None
    kappa24: float | None = None
    mu0: float = MU_0
    hbar: float = HBAR
    c: float = C_LIGHT

    def __post_init__(self):
        if self.density <= 0:
            raise ConfigError(f"density must be positive, got {self.density}")
        if self.dipole14 < 0 or self.dipole24 < 0:
            raise ConfigError("dipole magnitudes must be >= 0")
        if self.gamma3_si <= 0:
            raise ConfigError("gamma3_si must be positive")

    def prefactors(self) -> tuple[float, float]:
        """Coupling prefactors kappa_mn, explicit or dipole-derived."""
        k14 = self.kappa14
        k24 = self.kappa24
        if k14 is None:
            k14 = self.mu0 * self.density * self.dipole14**2 * self.c**2 / self.hbar
        if k24 is None:
            k24 = self.mu0 * self.density * self.dipole24**2 * self.c**2 / self.hbar
        return k14, k24

    def scaled(self, factor: float) -> "MediumParams":
        """Copy with both coupling prefactors multiplied by ``factor``."""
        k14, k24 = self.prefactors()
        return MediumParams(
            density=self.density,
            omega14=self.omega14,
            omega24=self.omega24,
            gamma3_si=self.gamma3_si,
            dipole14=self.dipole14,
            dipole24=self.dipole24,
            kappa14=k14 * factor,
            kappa24=k24 * factor,
            mu0=self.mu0,
            hbar=self.hbar,
            c=self.c,
        )


@dataclass(frozen=True)
class MediumResponse:
    """Complex susceptibility factors and the derived gain coefficients."""

    xi14: complex
    xi24: complex
    alpha14: float
    alpha24: float


def susceptibility(
    cfg: ValidatedConfig,
    coherences: tuple,
    medium: MediumParams,
) -> MediumResponse:
    """Susceptibility factors and gain coefficients from probe coherences.

    ``coherences`` holds (rho14, rho24, ...) in the rotated frame, as
    produced by either engine.
    """
    if cfg.omega14 == 0.0 or cfg.omega24 == 0.0:
        raise ZeroProbe(
            "susceptibility requires both probe Rabi frequencies nonzero")
    rho14, rho24 = complex(coherences[0]), complex(coherences[1])
    k14, k24 = medium.prefactors()
    omega14_si = cfg.omega14 * medium.gamma3_si
    omega24_si = cfg.omega24 * medium.gamma3_si
    xi14 = k14 * rho14 / omega14_si
    xi24 = k24 * rho24 * np.exp(-1j * cfg.phi0) / omega24_si
    return MediumResponse(
        xi14=complex(xi14),
        xi24=complex(xi24),
        alpha14=float(xi14.imag) * medium.omega14 / medium.c,
        alpha24=float(xi24.imag) * medium.omega24 / medium.c,
    )


def phase_matching_check(
    k13: float,
    k23: float,
    k14: float,
    k24: float,
    tol: float = 1e-9,
) -> tuple[bool, float]:
    """Residual of (k24 - k14) = (k23 - k13) and pass/fail against ``tol``.

    A position-independent closed-loop phase requires this wavevector
    condition; tolerance is in the same units as the inputs (rad/m).
    """
    residual = abs((k24 - k14) - (k23 - k13))
    return residual <= tol, residual


def self_consistency_check(
    response: MediumResponse,
    omega14: float,
    omega24: float,
) -> complex:
    """Complex residual omega14*xi14 - omega24*xi24.

    Vanishes (imaginary part by construction, real part reported) at a
    self-consistent bi-lasing operating point; elsewhere it is a diagnostic,
    not an error.
    """
    return complex(omega14 * response.xi14 - omega24 * response.xi24)

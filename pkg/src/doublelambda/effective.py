"""Reduction of the driven four-level atom to an effective two-level system.

The chain, applied to a validated configuration:

1. Rotate the ground manifold to the dark/bright basis of the pump pair,
   |D> = (O23 |1> - O13 |2>) / O3 and |B> = (O13 |1> + O23 |2>) / O3 with
   O3 = sqrt(O13^2 + O23^2).  |D> has no dipole coupling to |3>.
2. Adiabatically eliminate |3>: the bright state picks up the complex shift
   (L3/2)(2*delta3 - i*gamma3) with L3 = O3^2 / (gamma3^2 + 4*delta3^2).
3. Add the probe pair.  On {|D>, |B>, |4>} the generator has couplings
   h_D4 = -(O23*O14 - O13*O24 e^{-i Phi0}) / O3 (dark leg) and
   h_B4 = -(O13*O14 + O23*O24 e^{-i Phi0}) / O3 (bright leg), each entering
   as h/2, and |4> sits at -(2*delta4 + i*gamma4)/2.
4. Eliminate |4>: its amplitude follows the ground pair as
   c4 = A_D c_D + A_B c_B with A = h*/(2*delta4 + i*gamma4).  Dropping
   gamma4 inside the resulting level shifts (valid far off probe resonance)
   gives the final non-Hermitian two-level matrix ``EffectiveTwoLevel``.

The two-level steady state treats the anti-Hermitian bright-state width as a
jump |D><B| at rate gamma_eq = L3*gamma3 plus a trace-conserving source into
|D>, and the probe coherences are rebuilt from it with the prefactor
O4 / (2*delta4 - i*gamma4) and the mixing-angle trigonometry
(cos(theta3) = O23/O3, cos(theta4) = O24/O4).

gamma4 is kept in the elimination amplitudes and in the coherence
reconstruction but deliberately dropped from the two-level level shifts; the
mismatch is part of the approximation under test, not a bug.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    NoRelaxation,
    ProbeResonanceSingularity,
    ZeroProbeDetuning,
    ZeroPump,
)
from .liouville import DensityMatrix, lindblad_superoperator, steady_state, Liouvillian
from .model import ValidatedConfig

# |2*delta4 + i*gamma4| below this floor is treated as singular.  Cannot
# trigger for gamma4 > 0; the guard is defensive.
DENOMINATOR_FLOOR = 1e-300


@dataclass(frozen=True)
class DarkBrightBasis:
    """Mixing angles and the ground-manifold rotation of the pump pair.

    ``transform`` maps amplitudes (c1, c2) to (cD, cB); rows are the dark and
    bright bra vectors.
    """

    theta3: float
    theta4: float
    omega3_eff: float
    omega4_eff: float
    transform: np.ndarray

    @property
    def dark_vector(self) -> np.ndarray:
        """|D> as a 4-component column in the (1, 2, 3, 4) basis."""
        v = np.zeros(4, dtype=complex)
        v[0] = math.cos(self.theta3)
        v[1] = -math.sin(self.theta3)
        return v

    @property
    def bright_vector(self) -> np.ndarray:
        v = np.zeros(4, dtype=complex)
        v[0] = math.sin(self.theta3)
        v[1] = math.cos(self.theta3)
        return v


@dataclass(frozen=True)
class EffectiveTwoLevel:
    """Parameters of the final two-level model on (|D>, |B>).

    ``hamiltonian2`` is the non-Hermitian 2x2 matrix (hbar = 1, the 1/2
    factors included); its only anti-Hermitian content is the bright-state
    width -i*gamma_eq/2.  ``omega_eq`` and ``level_energies`` are the
    equal-beams drive strength and level positions; for general beam ratios
    they generalize to Im(h_D4 conj(h_B4))/(2*delta4) and the diagonal gap.
    """

    l3: float
    gamma_eq: float
    h_d4: complex
    h_b4: complex
    omega_eq: float
    level_energies: tuple[float, float]
    hamiltonian2: np.ndarray


@dataclass(frozen=True)
class AdiabaticCoefficients:
    """Amplitude ratios of |4> to the dark/bright pair: c4 = a_d cD + a_b cB."""

    a_d: complex
    a_b: complex


def dark_bright(cfg: ValidatedConfig) -> DarkBrightBasis:
    """Dark/bright decomposition of the ground manifold for the pump pair."""
    omega3 = math.hypot(cfg.omega13, cfg.omega23)
    if omega3 == 0.0:
        raise ZeroPump("pump pair is off; dark/bright basis undefined")
    omega4 = math.hypot(cfg.omega14, cfg.omega24)
    theta3 = math.atan2(cfg.omega13, cfg.omega23)
    # Probe mixing angle defaults to 0 when the probe pair is off.
    theta4 = math.atan2(cfg.omega14, cfg.omega24) if omega4 > 0 else 0.0
    c, s = math.cos(theta3), math.sin(theta3)
    transform = np.array([[c, -s], [s, c]], dtype=complex)
    return DarkBrightBasis(theta3, theta4, omega3, omega4, transform)


def pump_saturation(cfg: ValidatedConfig) -> float:
    """Pump saturation factor L3 = O3^2 / (gamma3^2 + 4*delta3^2)."""
    omega3_sq = cfg.omega13**2 + cfg.omega23**2
    return omega3_sq / (cfg.gamma3**2 + 4.0 * cfg.delta3**2)


def pump_effective(cfg: ValidatedConfig) -> tuple[float, np.ndarray]:
    """Two-level model of the pump pair after eliminating |3>.

    Returns L3 and the 2x2 matrix whose single nontrivial entry is the
    bright-state complex energy (L3/2)(2*delta3 - i*gamma3).
    """
    l3 = pump_saturation(cfg)
    h = np.zeros((2, 2), dtype=complex)
    h[1, 1] = 0.5 * l3 * (2.0 * cfg.delta3 - 1j * cfg.gamma3)
    return l3, h


def probe_couplings(cfg: ValidatedConfig) -> tuple[complex, complex]:
    """Dark-leg and bright-leg probe couplings (h_D4, h_B4)."""
    omega3 = math.hypot(cfg.omega13, cfg.omega23)
    if omega3 == 0.0:
        raise ZeroPump("pump pair is off; probe couplings undefined")
    loop = np.exp(-1j * cfg.phi0)
    h_d4 = -(cfg.omega23 * cfg.omega14 - cfg.omega13 * cfg.omega24 * loop) / omega3
    h_b4 = -(cfg.omega13 * cfg.omega14 + cfg.omega23 * cfg.omega24 * loop) / omega3
    return complex(h_d4), complex(h_b4)


def three_state_hamiltonian(cfg: ValidatedConfig) -> np.ndarray:
    """Non-Hermitian generator on (|D>, |B>, |4>) after eliminating |3>."""
    l3 = pump_saturation(cfg)
    h_d4, h_b4 = probe_couplings(cfg)
    h = np.zeros((3, 3), dtype=complex)
    h[1, 1] = 0.5 * l3 * (2.0 * cfg.delta3 - 1j * cfg.gamma3)
    h[2, 2] = -0.5 * (2.0 * cfg.delta4 + 1j * cfg.gamma4)
    h[0, 2] = 0.5 * h_d4
    h[1, 2] = 0.5 * h_b4
    h[2, 0] = np.conj(h[0, 2])
    h[2, 1] = np.conj(h[1, 2])
    return h


def adiabatic_coefficients(cfg: ValidatedConfig) -> AdiabaticCoefficients:
    """Amplitude ratios tying |4> to the ground pair, gamma4 retained."""
    h_d4, h_b4 = probe_couplings(cfg)
    denom = 2.0 * cfg.delta4 + 1j * cfg.gamma4
    if abs(denom) < DENOMINATOR_FLOOR:
        raise ProbeResonanceSingularity(
            "elimination denominator |2*delta4 + i*gamma4| is numerically zero")
    return AdiabaticCoefficients(
        a_d=np.conj(h_d4) / denom,
        a_b=np.conj(h_b4) / denom,
    )


def final_two_level(cfg: ValidatedConfig) -> EffectiveTwoLevel:
    """Final two-level model after eliminating both excited states.

    Singular at delta4 = 0: the level shifts divide by the probe detuning and
    the reduction genuinely diverges there, so this is an error rather than a
    regularized limit.
    """
    if cfg.delta4 == 0.0:
        raise ZeroProbeDetuning(
            "effective two-level model is singular at zero probe detuning")
    l3 = pump_saturation(cfg)
    h_d4, h_b4 = probe_couplings(cfg)
    inv4 = 1.0 / (4.0 * cfg.delta4)
    h = np.zeros((2, 2), dtype=complex)
    h[0, 0] = abs(h_d4) ** 2 * inv4
    h[1, 1] = abs(h_b4) ** 2 * inv4 + 0.5 * l3 * (2.0 * cfg.delta3 - 1j * cfg.gamma3)
    h[0, 1] = h_d4 * np.conj(h_b4) * inv4
    h[1, 0] = np.conj(h[0, 1])
    gap = (abs(h_b4) ** 2 - abs(h_d4) ** 2) * inv4 + l3 * cfg.delta3
    return EffectiveTwoLevel(
        l3=l3,
        gamma_eq=l3 * cfg.gamma3,
        h_d4=h_d4,
        h_b4=h_b4,
        omega_eq=float((h_d4 * np.conj(h_b4)).imag) * 2.0 * inv4,
        level_energies=(0.0, float(gap)),
        hamiltonian2=h,
    )


def equal_beams_hamiltonian(cfg: ValidatedConfig, rtol: float = 1e-9) -> np.ndarray:
    """Two-level matrix specialized to equal pump and equal probe amplitudes.

    Dark level gauged to zero energy: the bright entry is
    (1/2)[(O4^2/(2*delta4)) cos(Phi0) + L3 (2*delta3 - i*gamma3)] and the
    coupling is (i/2)(O4^2/(4*delta4)) sin(Phi0).  This equals the general
    matrix minus its dark-state diagonal, which the tests pin entrywise.
    """
    if abs(cfg.omega13 - cfg.omega23) > rtol * max(cfg.omega13, 1.0) or abs(
            cfg.omega14 - cfg.omega24) > rtol * max(cfg.omega14, 1.0):
        raise ValueError("equal-beams form requires O13 = O23 and O14 = O24")
    if cfg.delta4 == 0.0:
        raise ZeroProbeDetuning(
            "effective two-level model is singular at zero probe detuning")
    l3 = pump_saturation(cfg)
    omega4_sq = cfg.omega14**2 + cfg.omega24**2
    h = np.zeros((2, 2), dtype=complex)
    h[1, 1] = 0.5 * (omega4_sq / (2.0 * cfg.delta4) * math.cos(cfg.phi0)
                     + l3 * (2.0 * cfg.delta3 - 1j * cfg.gamma3))
    h[0, 1] = 0.5j * omega4_sq / (4.0 * cfg.delta4) * math.sin(cfg.phi0)
    h[1, 0] = np.conj(h[0, 1])
    return h


def two_level_steady_state(
    eff: EffectiveTwoLevel | np.ndarray,
    gamma_eq: float,
) -> DensityMatrix:
    """Steady state of the effective two-level master equation.

    The Hermitian part of the two-level matrix drives the coherent evolution;
    the anti-Hermitian bright-state width is re-expressed as the jump
    |D><B| at rate gamma_eq, whose feeding term is the trace-conserving
    source into the dark state.
    """
    if gamma_eq <= 0.0:
        raise NoRelaxation(f"gamma_eq must be positive, got {gamma_eq}")
    h = eff.hamiltonian2 if isinstance(eff, EffectiveTwoLevel) else np.asarray(eff)
    h_herm = 0.5 * (h + h.conj().T)
    jump = np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex)
    sup = lindblad_superoperator(h_herm, [(gamma_eq, jump)])
    liou = Liouvillian(dim=2, matrix=sup, hamiltonian=h_herm,
                       collapse_ops=[(gamma_eq, jump)])
    return steady_state(liou)


def equal_beams_steady_state(cfg: ValidatedConfig) -> tuple[float, complex]:
    """Closed-form steady state (rho_BB, rho_DB) for equal beam pairs.

    Direct evaluation of the analytic solution; the numeric route through
    ``two_level_steady_state`` must agree elementwise and the two are kept
    independent so each checks the other.
    """
    if cfg.delta4 == 0.0:
        raise ZeroProbeDetuning(
            "analytic steady state is singular at zero probe detuning")
    l3 = pump_saturation(cfg)
    omega3_sq = cfg.omega13**2 + cfg.omega23**2
    omega4_sq = cfg.omega14**2 + cfg.omega24**2
    sin_p, cos_p = math.sin(cfg.phi0), math.cos(cfg.phi0)
    denom = (
        2.0 * omega4_sq**2 * (1.0 + cos_p**2)
        + 16.0 * l3 * omega3_sq * cfg.delta4**2
        + 32.0 * l3 * omega4_sq * cfg.delta3 * cfg.delta4 * cos_p
    )
    rho_bb = omega4_sq**2 * sin_p**2 / denom
    rho_db = -(
        4.0 * omega4_sq * cfg.delta4 * sin_p * l3 * (cfg.gamma3 + 2j * cfg.delta3)
        + 1j * omega4_sq**2 * math.sin(2.0 * cfg.phi0)
    ) / denom
    return float(rho_bb), complex(rho_db)


def reconstruct_coherences(
    rho2: DensityMatrix,
    basis: DarkBrightBasis,
    cfg: ValidatedConfig,
) -> tuple[complex, complex, complex, complex]:
    """Rebuild (rho11, rho12, rho14, rho24) from the two-level steady state.

    The two-level state is taken in (|D>, |B>) ordering; the light-shift
    corrections to the state vectors themselves are dropped, which is exactly
    the approximation whose quality the exact engine measures.
    """
    if rho2.dim != 2:
        raise ValueError(f"need a 2-level state, got dim={rho2.dim}")
    m = rho2.matrix
    rho_dd, rho_db = complex(m[0, 0]), complex(m[0, 1])
    rho_bd, rho_bb = complex(m[1, 0]), complex(m[1, 1])

    c3, s3 = math.cos(basis.theta3), math.sin(basis.theta3)
    c4, s4 = math.cos(basis.theta4), math.sin(basis.theta4)
    loop = np.exp(-1j * cfg.phi0)

    rho11 = (c3**2 * rho_dd + 0.5 * math.sin(2.0 * basis.theta3) * (rho_db + rho_bd)
             + s3**2 * rho_bb)
    rho12 = (c3**2 * rho_db + 0.5 * math.sin(2.0 * basis.theta3) * (rho_bb - rho_dd)
             - s3**2 * rho_bd)

    prefactor = basis.omega4_eff / (2.0 * cfg.delta4 - 1j * cfg.gamma4)
    dark_leg = -c3 * s4 + s3 * c4 * loop
    bright_leg = s3 * s4 + c3 * c4 * loop
    rho14 = prefactor * (
        dark_leg * (c3 * rho_dd + s3 * rho_bd)
        - bright_leg * (c3 * rho_db + s3 * rho_bb)
    )
    rho24 = prefactor * (
        dark_leg * (c3 * rho_bd - s3 * rho_dd)
        - bright_leg * (c3 * rho_bb - s3 * rho_db)
    )
    return complex(rho11), complex(rho12), complex(rho14), complex(rho24)


def effective_coherences(cfg: ValidatedConfig) -> dict:
    """Full reduced-model pipeline for one configuration.

    Returns the two-level steady state together with the reconstructed
    ground-state and probe coherences.
    """
    basis = dark_bright(cfg)
    eff = final_two_level(cfg)
    rho2 = two_level_steady_state(eff, eff.gamma_eq)
    rho11, rho12, rho14, rho24 = reconstruct_coherences(rho2, basis, cfg)
    return {
        "basis": basis,
        "model": eff,
        "rho2": rho2,
        "rho11": rho11,
        "rho12": rho12,
        "rho14": rho14,
        "rho24": rho24,
    }


def ground_block(rho: DensityMatrix, basis: DarkBrightBasis) -> np.ndarray:
    """Project a 4-level state onto the (|D>, |B>) ground block, unnormalized."""
    d = basis.dark_vector
    b = basis.bright_vector
    m = rho.matrix
    return np.array([
        [d.conj() @ m @ d, d.conj() @ m @ b],
        [b.conj() @ m @ d, b.conj() @ m @ b],
    ], dtype=complex)

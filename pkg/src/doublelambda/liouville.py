"""Exact four-level engine: rotating-frame Hamiltonian, Lindblad superoperator,
steady states, and time evolution.

Frame convention.  In the rotating frame tied to the pump fields (and the
probe beat for |4>), the Hamiltonian is time independent whenever both Lambda
pairs share the two-photon detuning Delta.  With hbar = 1 the diagonal reads

    (+Delta/2, -Delta/2, -delta3, -delta4)

on (|1>, |2>, |3>, |4>), and each driven leg carries -Omega/2 off-diagonal.
Only the 2-4 leg keeps a phase: its upper-triangle entry is
-(Omega24/2) exp(-i Phi0) with Phi0 the closed-loop phase; the individual
field phases cancel leg by leg.  With this sign choice the bright state of
the pump pair acquires a light shift of +L3*delta3 for positive detuning,
which a unit test pins against the eigenvalues of the pump block.

Decay enters as Lindblad jumps |1><3|, |2><3| (branching b3, 1-b3 of gamma3)
and |1><4|, |2><4| (b4, 1-b4 of gamma4), plus optional pure dephasing between
the ground states.  Jump operators of the form |g><e| are invariant under the
diagonal frame rotation, so the lab-frame dissipator carries over unchanged.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import (
    DegenerateSteadyState,
    InvalidDensityMatrix,
    NonMatchingTwoPhotonDetuning,
    SolverError,
    StepSizeTooLarge,
)
from .model import ValidatedConfig

HERMITICITY_TOL = 1e-12
TRACE_TOL = 1e-10
POSITIVITY_TOL = 1e-9
STEADY_RESIDUAL_TOL = 1e-9
# Null-space gap below this fraction of the largest singular value counts as
# a degenerate steady state.
DEGENERACY_RTOL = 1e-12


@dataclass(frozen=True)
class DensityMatrix:
    """Complex Hermitian unit-trace state of dimension 2, 3, or 4."""

    dim: int
    matrix: np.ndarray

    @classmethod
    def from_matrix(cls, m: np.ndarray, validate: bool = True) -> "DensityMatrix":
        m = np.asarray(m, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise InvalidDensityMatrix(f"not square: shape {m.shape}")
        obj = cls(dim=m.shape[0], matrix=m)
        if validate:
            obj.check()
        return obj

    def check(
        self,
        hermiticity_tol: float = HERMITICITY_TOL,
        trace_tol: float = TRACE_TOL,
        positivity_tol: float = POSITIVITY_TOL,
    ) -> None:
        """Raise InvalidDensityMatrix unless Hermitian, unit trace, and PSD."""
        m = self.matrix
        herm = np.max(np.abs(m - m.conj().T))
        if herm > hermiticity_tol:
            raise InvalidDensityMatrix(f"Hermiticity violated by {herm:.3e}")
        tr = abs(np.trace(m) - 1.0)
        if tr > trace_tol:
            raise InvalidDensityMatrix(f"trace deviates from 1 by {tr:.3e}")
        lo = float(np.min(np.linalg.eigvalsh(0.5 * (m + m.conj().T))))
        if lo < -positivity_tol:
            raise InvalidDensityMatrix(f"negative eigenvalue {lo:.3e}")

    def population(self, i: int) -> float:
        return float(self.matrix[i, i].real)

    def coherence(self, i: int, j: int) -> complex:
        return complex(self.matrix[i, j])


@dataclass(frozen=True)
class DecayModel:
    """Branching of the excited decays into |1> versus |2>.

    The total rates gamma3, gamma4 live in the configuration; ``branch3`` and
    ``branch4`` give the fraction of each that lands in |1>.  The default 1/2
    feeds the ground manifold isotropically, which leaves the pump dark state
    exactly stationary.
    """

    branch3: float = 0.5
    branch4: float = 0.5

    def __post_init__(self):
        for name in ("branch3", "branch4"):
            b = getattr(self, name)
            if not 0.0 <= b <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1], got {b}")


@dataclass(frozen=True)
class Liouvillian:
    """Superoperator acting on the column-stacked density matrix."""

    dim: int
    matrix: np.ndarray
    hamiltonian: np.ndarray
    collapse_ops: list[tuple[float, np.ndarray]] = field(default_factory=list)


def build_hamiltonian_rwa(cfg: ValidatedConfig) -> np.ndarray:
    """Time-independent rotating-frame Hamiltonian (hbar = 1), 4x4 Hermitian."""
    if cfg.two_photon3 != cfg.two_photon4 and abs(
            cfg.two_photon3 - cfg.two_photon4) > 1e-9 * cfg.gamma3:
        raise NonMatchingTwoPhotonDetuning(
            "no common rotating frame: two-photon detunings differ")
    dd = cfg.two_photon3
    h = np.zeros((4, 4), dtype=complex)
    h[0, 0] = +0.5 * dd
    h[1, 1] = -0.5 * dd
    h[2, 2] = -cfg.delta3
    h[3, 3] = -cfg.delta4
    h[0, 2] = -0.5 * cfg.omega13
    h[1, 2] = -0.5 * cfg.omega23
    h[0, 3] = -0.5 * cfg.omega14
    h[1, 3] = -0.5 * cfg.omega24 * np.exp(-1j * cfg.phi0)
    h[2, 0] = np.conj(h[0, 2])
    h[2, 1] = np.conj(h[1, 2])
    h[3, 0] = np.conj(h[0, 3])
    h[3, 1] = np.conj(h[1, 3])
    return h


def lindblad_superoperator(
    hamiltonian: np.ndarray,
    jumps: list[tuple[float, np.ndarray]],
) -> np.ndarray:
    """Matrix of rho -> -i[H, rho] + sum_k g_k (C rho C+ - {C+C, rho}/2).

    Column-major stacking: vec(A rho B) = kron(B.T, A) vec(rho).
    """
    dim = hamiltonian.shape[0]
    eye = np.eye(dim)
    sup = -1j * (np.kron(eye, hamiltonian) - np.kron(hamiltonian.T, eye))
    for rate, c in jumps:
        if rate == 0.0:
            continue
        cdc = c.conj().T @ c
        sup += rate * (
            np.kron(c.conj(), c)
            - 0.5 * np.kron(eye, cdc)
            - 0.5 * np.kron(cdc.T, eye)
        )
    return sup


def _lower(dim: int, g: int, e: int) -> np.ndarray:
    c = np.zeros((dim, dim), dtype=complex)
    c[g, e] = 1.0
    return c


def build_liouvillian(
    cfg: ValidatedConfig,
    decay: DecayModel = DecayModel(),
) -> Liouvillian:
    """Full 16x16 generator for the four-level system."""
    h = build_hamiltonian_rwa(cfg)
    jumps: list[tuple[float, np.ndarray]] = [
        (decay.branch3 * cfg.gamma3, _lower(4, 0, 2)),
        ((1.0 - decay.branch3) * cfg.gamma3, _lower(4, 1, 2)),
        (decay.branch4 * cfg.gamma4, _lower(4, 0, 3)),
        ((1.0 - decay.branch4) * cfg.gamma4, _lower(4, 1, 3)),
    ]
    if cfg.ground_decoherence > 0.0:
        # C = |1><1| - |2><2| at rate g/2 makes rho_12 decay at rate g.
        deph = np.zeros((4, 4), dtype=complex)
        deph[0, 0] = 1.0
        deph[1, 1] = -1.0
        jumps.append((0.5 * cfg.ground_decoherence, deph))
    jumps = [(r, c) for r, c in jumps if r > 0.0]
    return Liouvillian(
        dim=4,
        matrix=lindblad_superoperator(h, jumps),
        hamiltonian=h,
        collapse_ops=jumps,
    )


def trace_residual(liou: Liouvillian) -> float:
    """Norm of the trace row applied to the generator; zero if trace preserving."""
    idx = np.arange(liou.dim) * (liou.dim + 1)
    row = np.zeros(liou.dim**2, dtype=complex)
    row[idx] = 1.0
    return float(np.linalg.norm(row @ liou.matrix))


def steady_state(liou: Liouvillian) -> DensityMatrix:
    """Unique null vector of the generator, normalized to unit trace.

    Solves the bordered linear system in which one row of the generator is
    replaced by the trace constraint.  Degenerate null spaces are reported,
    not silently resolved.
    """
    n = liou.dim**2
    sv = np.linalg.svd(liou.matrix, compute_uv=False)
    scale = max(float(sv[0]), 1.0)
    if sv[-2] <= DEGENERACY_RTOL * scale:
        raise DegenerateSteadyState(
            f"second singular value {sv[-2]:.3e} below degeneracy threshold "
            f"{DEGENERACY_RTOL * scale:.3e}; steady state is not unique"
        )
    trace_row = np.zeros(n, dtype=complex)
    trace_row[np.arange(liou.dim) * (liou.dim + 1)] = 1.0
    rhs = np.zeros(n, dtype=complex)
    vec = None
    for row in range(n):
        a = liou.matrix.copy()
        a[row, :] = trace_row
        b = rhs.copy()
        b[row] = 1.0
        try:
            cand = np.linalg.solve(a, b)
        except np.linalg.LinAlgError:
            continue
        if np.all(np.isfinite(cand)):
            vec = cand
            break
    if vec is None:
        raise SolverError("bordered steady-state system is singular")

    residual = float(np.linalg.norm(liou.matrix @ vec))
    if residual > STEADY_RESIDUAL_TOL:
        raise SolverError(f"steady-state residual {residual:.3e} too large")

    rho = vec.reshape((liou.dim, liou.dim), order="F")
    rho = 0.5 * (rho + rho.conj().T)
    rho = rho / np.trace(rho).real
    return DensityMatrix.from_matrix(rho)


def _fastest_scale(liou: Liouvillian) -> float:
    h = liou.hamiltonian
    scale = float(np.max(np.abs(np.diag(h))))
    off = np.abs(h - np.diag(np.diag(h)))
    scale = max(scale, 2.0 * float(np.max(off)))
    for rate, _c in liou.collapse_ops:
        scale = max(scale, rate)
    return max(scale, 1e-30)


def evolve(
    liou: Liouvillian,
    rho0: DensityMatrix,
    t_final: float,
    dt: float | None = None,
    max_samples: int = 2000,
) -> tuple[np.ndarray, list[DensityMatrix]]:
    """Fixed-step 4th-order integration of d(rho)/dt = L(rho).

    The step must resolve the fastest scale: dt <= 0.05 / max(|detuning|,
    Rabi, decay rate).  Every retained sample is validated; a violation of
    the density-matrix invariants raises StepSizeTooLarge.
    """
    scale = _fastest_scale(liou)
    dt_max = 0.05 / scale
    if dt is None:
        dt = min(0.02 / scale, t_final) if t_final > 0 else dt_max
    if dt <= 0:
        raise StepSizeTooLarge(f"dt must be positive, got {dt}")
    if dt > dt_max * (1 + 1e-12):
        raise StepSizeTooLarge(
            f"dt={dt:.3e} exceeds 0.05/max-rate = {dt_max:.3e}")

    n_steps = max(1, int(np.ceil(t_final / dt))) if t_final > 0 else 0
    stride = max(1, n_steps // max_samples)
    lmat = liou.matrix
    v = rho0.matrix.reshape(-1, order="F").astype(complex)

    times = [0.0]
    states = [rho0]
    t = 0.0
    for step in range(1, n_steps + 1):
        h = min(dt, t_final - t)
        k1 = lmat @ v
        k2 = lmat @ (v + 0.5 * h * k1)
        k3 = lmat @ (v + 0.5 * h * k2)
        k4 = lmat @ (v + h * k3)
        v = v + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        t += h
        if step % stride == 0 or step == n_steps:
            rho = v.reshape((liou.dim, liou.dim), order="F")
            try:
                state = DensityMatrix.from_matrix(rho)
            except InvalidDensityMatrix as exc:
                raise StepSizeTooLarge(
                    f"invariant violation at t={t:.6g}: {exc}") from exc
            times.append(t)
            states.append(state)
    return np.asarray(times), states


def exact_coherences(rho: DensityMatrix) -> tuple[complex, complex, complex, complex]:
    """Rotated-frame coherences (rho14, rho24, rho13, rho23) of a 4-level state."""
    if rho.dim != 4:
        raise ValueError(f"need a 4-level state, got dim={rho.dim}")
    m = rho.matrix
    return complex(m[0, 3]), complex(m[1, 3]), complex(m[0, 2]), complex(m[1, 2])


def operators_as_json(liou: Liouvillian) -> dict:
    """Debug dump of H and L as row-major [re, im] pairs."""

    def encode(mat: np.ndarray) -> list:
        return [[[float(z.real), float(z.imag)] for z in row] for row in mat]

    return {
        "dim": liou.dim,
        "hamiltonian": encode(liou.hamiltonian),
        "liouvillian": encode(liou.matrix),
        "collapse_rates": [float(r) for r, _ in liou.collapse_ops],
    }

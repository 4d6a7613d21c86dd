import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from doublelambda import (
    DecayModel,
    DegenerateSteadyState,
    DensityMatrix,
    InvalidDensityMatrix,
    StepSizeTooLarge,
    build_hamiltonian_rwa,
    build_liouvillian,
    dark_bright,
    evolve,
    exact_coherences,
    make_config,
    steady_state,
)
from doublelambda.effective import ground_block, pump_saturation
from doublelambda.liouville import trace_residual

rabi = st.floats(0.0, 15.0)
det = st.floats(-30.0, 30.0)


def random_config(o13, o23, o14, o24, d3, d4, phi):
    return make_config(o13, o23, o14, o24, delta3=d3, delta4=d4, phi0=phi,
                       gamma4=1.05)


def test_zero_drive_zero_hamiltonian():
    cfg = make_config(0.0, 0.0, 0.0, 0.0)
    assert np.all(build_hamiltonian_rwa(cfg) == 0.0)


@given(o13=rabi, o23=rabi, o14=rabi, o24=rabi, d3=det, d4=det,
       phi=st.floats(0, 2 * math.pi))
@settings(max_examples=50, deadline=None)
def test_hamiltonian_hermitian(o13, o23, o14, o24, d3, d4, phi):
    h = build_hamiltonian_rwa(random_config(o13, o23, o14, o24, d3, d4, phi))
    assert np.max(np.abs(h - h.conj().T)) < 1e-14


def test_diagonal_sign_convention():
    cfg = make_config(1.0, 1.0, 0.5, 0.5, delta3=2.0, delta4=5.0, two_photon=0.4)
    h = build_hamiltonian_rwa(cfg)
    assert h[0, 0] == pytest.approx(+0.2)
    assert h[1, 1] == pytest.approx(-0.2)
    assert h[2, 2] == pytest.approx(-2.0)
    assert h[3, 3] == pytest.approx(-5.0)
    assert h[0, 2] == pytest.approx(-0.5)


def test_pump_block_light_shift_matches_saturation_formula():
    """Bright-state eigenvalue of the pump block equals L3*delta3 far detuned.

    Uses the 10:7 pump ratio in the perturbative regime where the
    saturation formula is accurate to relative O((Omega3/delta3)^2,
    (gamma3/delta3)^2)."""
    cfg = make_config(1.0, 0.7, 0.0, 0.0, delta3=10.0)
    h = build_hamiltonian_rwa(cfg)[:3, :3].real
    eig = np.linalg.eigvalsh(h)
    omega3_sq = cfg.omega13**2 + cfg.omega23**2
    shift = pump_saturation(cfg) * cfg.delta3
    # Bright branch: the small positive eigenvalue.
    bright = eig[np.argmin(np.abs(eig - shift))]
    budget = (omega3_sq / cfg.delta3**2 + cfg.gamma3**2 / cfg.delta3**2) * shift
    assert abs(bright - shift) <= budget
    assert bright > 0.0


@given(o13=rabi, o23=rabi, o14=rabi, o24=rabi, d3=det, d4=det,
       phi=st.floats(0, 2 * math.pi), b3=st.floats(0, 1), b4=st.floats(0, 1))
@settings(max_examples=40, deadline=None)
def test_liouvillian_preserves_trace(o13, o23, o14, o24, d3, d4, phi, b3, b4):
    liou = build_liouvillian(random_config(o13, o23, o14, o24, d3, d4, phi),
                             DecayModel(b3, b4))
    assert trace_residual(liou) <= 1e-10


def test_pure_decay_is_exponential():
    cfg = make_config(0.0, 0.0, 0.0, 0.0, gamma4=1.05)
    liou = build_liouvillian(cfg)
    rho0 = np.zeros((4, 4), dtype=complex)
    rho0[2, 2] = 1.0
    times, states = evolve(liou, DensityMatrix.from_matrix(rho0), 3.0)
    for t, st_ in zip(times, states):
        assert abs(st_.population(2) - math.exp(-t)) < 1e-6
        assert abs(np.trace(st_.matrix) - 1) < 1e-10


@pytest.mark.parametrize("b3", [0.0, 0.3, 0.5, 1.0])
def test_total_excited_decay_independent_of_branching(b3):
    cfg = make_config(0.0, 0.0, 0.0, 0.0, gamma4=1.05)
    liou = build_liouvillian(cfg, DecayModel(branch3=b3))
    rho0 = np.zeros((4, 4), dtype=complex)
    rho0[2, 2] = 1.0
    times, states = evolve(liou, DensityMatrix.from_matrix(rho0), 2.0)
    assert abs(states[-1].population(2) - math.exp(-times[-1])) < 1e-6
    assert states[-1].population(0) == pytest.approx(
        b3 * (1 - math.exp(-times[-1])), abs=1e-6)


def test_pumps_only_steady_state_is_dark():
    cfg = make_config(10.0, 7.0, 0.0, 0.0, delta3=1.0, gamma4=1.05)
    rho = steady_state(build_liouvillian(cfg))
    g = ground_block(rho, dark_bright(cfg))
    assert g[0, 0].real >= 1.0 - 1e-8


def test_equal_beams_zero_phase_traps_both_excited_states():
    cfg = make_config(5.0, 5.0, 0.4, 0.4, delta3=2.0, delta4=11.0, phi0=0.0,
                      gamma4=1.05)
    rho = steady_state(build_liouvillian(cfg))
    assert rho.population(2) + rho.population(3) <= 1e-8


def test_nonzero_common_two_photon_detuning_still_solves():
    cfg = make_config(10.0, 7.0, 0.2, 0.5, delta3=1.0, delta4=7.0,
                      two_photon=0.8, gamma4=1.05)
    rho = steady_state(build_liouvillian(cfg))
    rho.check()


def test_no_drive_is_degenerate():
    cfg = make_config(0.0, 0.0, 0.0, 0.0)
    with pytest.raises(DegenerateSteadyState):
        steady_state(build_liouvillian(cfg))


def test_probe_sweep_has_dispersive_real_and_absorptive_imag(fig2_config):
    grid = np.linspace(-50.0, 50.0, 41)
    re, im = [], []
    for d4 in grid:
        rho = steady_state(build_liouvillian(fig2_config(delta4=d4)))
        r14, _, _, _ = exact_coherences(rho)
        re.append(r14.real)
        im.append(r14.imag)
    re, im = np.array(re), np.array(im)
    # Dispersive: the real part changes sign across the resonance.
    assert re.min() < 0 < re.max()
    # Absorptive: a dominant single-signed interior peak.
    peak = np.argmax(np.abs(im))
    assert 0 < peak < len(grid) - 1
    assert np.abs(im[peak]) > 10 * np.abs(im[0])


def test_evolution_converges_to_steady_state(fig2_config):
    cfg = fig2_config(delta4=7.0, phi0=math.pi / 4)
    liou = build_liouvillian(cfg)
    target = steady_state(liou)
    ev = np.linalg.eigvals(liou.matrix)
    slowest = min(abs(ev.real[np.abs(ev.real) > 1e-9]))
    rho0 = np.zeros((4, 4), dtype=complex)
    rho0[0, 0] = 1.0
    _, states = evolve(liou, DensityMatrix.from_matrix(rho0), 16.0 / slowest)
    assert np.max(np.abs(states[-1].matrix - target.matrix)) <= 1e-6


def test_zero_generator_keeps_state_constant():
    cfg = make_config(0.0, 0.0, 0.0, 0.0)
    liou = build_liouvillian(cfg)
    rho0 = np.diag([0.25, 0.75, 0.0, 0.0]).astype(complex)
    _, states = evolve(liou, DensityMatrix.from_matrix(rho0), 5.0)
    assert np.max(np.abs(states[-1].matrix - rho0)) < 1e-12


def test_oversized_step_rejected():
    cfg = make_config(10.0, 7.0, 0.2, 0.5, delta3=1.0, delta4=30.0, gamma4=1.05)
    liou = build_liouvillian(cfg)
    rho0 = np.zeros((4, 4), dtype=complex)
    rho0[0, 0] = 1.0
    with pytest.raises(StepSizeTooLarge):
        evolve(liou, DensityMatrix.from_matrix(rho0), 10.0, dt=1.0)


def test_exact_coherences_trivial_and_hermitian(fig2_config):
    pure = DensityMatrix.from_matrix(np.diag([1.0, 0, 0, 0]).astype(complex))
    assert exact_coherences(pure) == (0, 0, 0, 0)
    rho = steady_state(build_liouvillian(fig2_config(delta4=3.0)))
    r14, _, _, _ = exact_coherences(rho)
    assert rho.matrix[3, 0] == pytest.approx(np.conj(r14))


def test_frozen_coherence_fixture(fig2_config):
    """Regression anchor for the steady-state solver at a representative point."""
    rho = steady_state(build_liouvillian(fig2_config(delta4=0.0,
                                                     phi0=math.pi / 4)))
    r14, r24, r13, r23 = exact_coherences(rho)
    assert r14 == pytest.approx(0.11039014545457825 + 0.06668781944072355j,
                                abs=1e-9)
    assert r24 == pytest.approx(-0.1584181075620979 - 0.09495901603954607j,
                                abs=1e-9)
    assert r13 == pytest.approx(-0.012418390784043987 - 0.00895638947734255j,
                                abs=1e-9)
    assert r23 == pytest.approx(-0.003979400843687735 + 0.0019080014661216405j,
                                abs=1e-9)


def test_density_matrix_validation():
    with pytest.raises(InvalidDensityMatrix):
        DensityMatrix.from_matrix(np.array([[1.0, 0.5], [0.0, 0.0]]))
    with pytest.raises(InvalidDensityMatrix):
        DensityMatrix.from_matrix(np.diag([0.7, 0.7]).astype(complex))
    with pytest.raises(InvalidDensityMatrix):
        DensityMatrix.from_matrix(np.diag([1.5, -0.5]).astype(complex))


def test_ground_dephasing_damps_ground_coherence():
    cfg = make_config(0.0, 0.0, 0.0, 0.0, ground_decoherence=0.5)
    liou = build_liouvillian(cfg)
    rho0 = np.full((2, 2), 0.5, dtype=complex)
    full = np.zeros((4, 4), dtype=complex)
    full[:2, :2] = rho0
    times, states = evolve(liou, DensityMatrix.from_matrix(full), 4.0)
    for t, st_ in zip(times, states):
        assert abs(st_.coherence(0, 1) - 0.5 * math.exp(-0.5 * t)) < 1e-6

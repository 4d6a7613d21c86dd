import math

import pytest
from hypothesis import given, strategies as st

from doublelambda import (
    AtomLevels,
    DoubleLambdaConfig,
    DriveField,
    NegativeRate,
    NonMatchingTwoPhotonDetuning,
    ValidatedConfig,
    closed_loop_phase,
    make_config,
    validate_config,
)

TWO_PI = 2 * math.pi


def raw_config(d13=0.0, d23=0.0, d14=0.0, d24=0.0,
               p13=0.0, p23=0.0, p14=0.0, p24=0.0):
    return DoubleLambdaConfig(
        levels=AtomLevels.for_rates(1.0, 1.05),
        d13=DriveField(10.0, d13, p13),
        d23=DriveField(7.0, d23, p23),
        d14=DriveField(0.2, d14, p14),
        d24=DriveField(0.5, d24, p24),
    )


def test_zero_detunings_all_derived_zero():
    cfg = validate_config(raw_config())
    assert cfg.delta3 == cfg.delta4 == 0.0
    assert cfg.two_photon3 == cfg.two_photon4 == 0.0


def test_common_detunings_derived_from_leg_values():
    cfg = validate_config(raw_config(d13=1.0, d23=1.0, d14=20.0, d24=20.0))
    assert cfg.delta3 == 1.0
    assert cfg.delta4 == 20.0
    assert cfg.two_photon3 == cfg.two_photon4 == 0.0


def test_mismatched_two_photon_rejected():
    with pytest.raises(NonMatchingTwoPhotonDetuning):
        validate_config(raw_config(d13=1.0, d23=0.0, d14=0.0, d24=0.0))


def test_negative_rates_rejected():
    with pytest.raises(NegativeRate):
        DriveField(-1.0)
    with pytest.raises(NegativeRate):
        AtomLevels.for_rates(gamma3=-1.0)
    with pytest.raises(NegativeRate):
        AtomLevels.for_rates(gamma4=0.0)


def test_validation_is_idempotent():
    cfg = validate_config(raw_config(d13=0.3, d23=0.3))
    assert validate_config(cfg) is cfg
    assert isinstance(cfg, ValidatedConfig)


def test_probe_perturbative_flag_recorded():
    weak = make_config(10.0, 7.0, 0.2, 0.5)
    strong = make_config(1.0, 1.0, 5.0, 5.0)
    assert weak.probe_perturbative
    assert not strong.probe_perturbative


def test_ground_splitting_must_match_levels():
    with pytest.raises(ValueError):
        AtomLevels(0.0, 1.0, 1e8, 2e8, 1.0, 1.0, ground_splitting=2.0)


def test_closed_loop_phase_examples():
    assert closed_loop_phase(raw_config()) == 0.0
    assert closed_loop_phase(raw_config(p24=math.pi)) == pytest.approx(math.pi)
    cfg = raw_config(p13=0.1, p23=0.4, p14=0.7, p24=1.5)
    assert closed_loop_phase(cfg) == pytest.approx((1.5 - 0.4) - (0.7 - 0.1))


phases = st.floats(-10.0, 10.0, allow_nan=False)


@given(p13=phases, p23=phases, p14=phases, p24=phases, shift=phases)
def test_loop_phase_gauge_invariance(p13, p23, p14, p24, shift):
    base = closed_loop_phase(raw_config(p13=p13, p23=p23, p14=p14, p24=p24))
    # Global phase shift on all four fields.
    allshift = closed_loop_phase(raw_config(
        p13=p13 + shift, p23=p23 + shift, p14=p14 + shift, p24=p24 + shift))
    # Shift both legs of the pump pair by the same amount.
    pumpshift = closed_loop_phase(raw_config(
        p13=p13 + shift, p23=p23 + shift, p14=p14, p24=p24))
    for other in (allshift, pumpshift):
        diff = (base - other) % TWO_PI
        assert min(diff, TWO_PI - diff) < 1e-9


@given(phi=st.floats(0.0, TWO_PI - 1e-9))
def test_loop_phase_range(phi):
    cfg = raw_config(p24=phi)
    assert 0.0 <= closed_loop_phase(cfg) < TWO_PI

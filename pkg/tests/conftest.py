import math

import numpy as np
import pytest

from doublelambda import make_config
from doublelambda.medium import MediumParams

SQ2 = math.sqrt(2)

# Rb-like SI anchors used wherever gains in m^-1 are needed.
GAMMA3_SI = 2 * math.pi * 5.75e6
OMEGA14_SI = 2 * math.pi * 384.2304844685e12
OMEGA24_SI = OMEGA14_SI - 2 * math.pi * 6.834682610904e9


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)


@pytest.fixture
def fig2_config():
    """Unequal pumps and probes; probe detuning and loop phase are knobs."""

    def build(delta4=0.0, phi0=0.0):
        return make_config(10.0, 7.0, 0.2, 0.5, delta3=1.0, delta4=delta4,
                           phi0=phi0, gamma4=1.05)

    return build


@pytest.fixture
def fig4_config():
    """Equal pump pair (total 10) and equal probe pair (total 1), far detuned."""

    def build(phi0=0.0, delta4=20.0):
        return make_config(10 / SQ2, 10 / SQ2, 1 / SQ2, 1 / SQ2,
                           delta3=10.0, delta4=delta4, phi0=phi0, gamma4=1.05)

    return build


@pytest.fixture
def rb_medium():
    """Dipole-mode medium with Rb-like numbers; gains land near 1 m^-1."""
    return MediumParams(
        density=1e15,
        omega14=OMEGA14_SI,
        omega24=OMEGA24_SI,
        gamma3_si=GAMMA3_SI,
        dipole14=2.5e-29,
        dipole24=2.5e-29,
    )

#!/usr/bin/env python3
"""Excited-state following quality versus pump and probe detuning.

Prints the steady deviation metrics; both columns should fall as the
corresponding detuning grows.
"""
import math

from doublelambda import make_config
from doublelambda.sweeps import verify_adiabaticity

SQ2 = math.sqrt(2)

print("pump side (probes off, total pump Rabi 10):")
for d3 in (5.0, 10.0, 20.0, 40.0):
    cfg = make_config(10 / SQ2, 10 / SQ2, 0.0, 0.0, delta3=d3, gamma4=1.05)
    rep = verify_adiabaticity(cfg)
    print(f"  delta3={d3:5.1f}  steady={rep.pump_dev_steady:.4e}  "
          f"max={rep.pump_dev_max:.4e}")

print("probe side (unequal weak probes):")
for d4 in (5.0, 10.0, 20.0, 40.0):
    cfg = make_config(10.0, 7.0, 0.2, 0.5, delta3=1.0, delta4=d4,
                      phi0=math.pi / 4, gamma4=1.05)
    rep = verify_adiabaticity(cfg)
    print(f"  delta4={d4:5.1f}  steady={rep.probe_dev_steady:.4e}  "
          f"max={rep.probe_dev_max:.4e}")

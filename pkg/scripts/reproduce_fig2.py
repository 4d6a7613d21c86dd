#!/usr/bin/env python3
"""Probe-coherence comparison sweep: exact vs reduced model.

Writes out/fig2.csv with both engines' 1-4 and 2-4 coherences over the probe
detuning at closed-loop phases 0 and pi/4.  Render with:
    render_figs fig2 --in out/fig2.csv --out out/fig2.svg
"""
import pathlib
import sys

from doublelambda.cli import main

OUT = pathlib.Path(__file__).resolve().parent.parent / "out"
OUT.mkdir(exist_ok=True)

sys.exit(main([
    "sweep", "--preset", "fig2", "--out", str(OUT / "fig2.csv"),
]))

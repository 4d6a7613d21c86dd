#!/usr/bin/env python3
"""Gain/absorption maps over probe detuning and closed-loop phase.

Writes out/fig3.csv (exact engine, calibrated medium).  Render with:
    render_figs fig3 --in out/fig3.csv --out out/fig3.svg
"""
import pathlib
import sys

from doublelambda.cli import main

OUT = pathlib.Path(__file__).resolve().parent.parent / "out"
OUT.mkdir(exist_ok=True)

sys.exit(main([
    "sweep", "--preset", "fig3", "--out", str(OUT / "fig3.csv"),
]))

#!/usr/bin/env python3
"""Gain-vs-phase scan and the equal-gain lasing report.

Writes out/fig4.csv and out/fig4_lasing.json.  Render with:
    render_figs fig4 --in out/fig4.csv --out out/fig4.svg
"""
import pathlib
import sys

from doublelambda.cli import main

OUT = pathlib.Path(__file__).resolve().parent.parent / "out"
OUT.mkdir(exist_ok=True)

rc = main(["sweep", "--preset", "fig4", "--out", str(OUT / "fig4.csv")])
if rc == 0:
    rc = main(["lasing-search", "--preset", "fig4",
               "--out", str(OUT / "fig4_lasing.json")])
sys.exit(rc)

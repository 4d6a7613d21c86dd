import json
import math
import pathlib

import pytest

from doublelambda.cli import main
from doublelambda.configfile import (
    SCHEMA,
    build_scenario,
    load_scenario,
    parse_pairs,
    scenario_hash,
    schema_help,
)
from doublelambda.errors import ConfigError

REPO = pathlib.Path(__file__).resolve().parent.parent
PKG_PRESETS = REPO / "src" / "doublelambda" / "presets"
TOP_PRESETS = REPO / "presets"

MINIMAL = """
omega13_rabi = 10.0
omega23_rabi = 7.0
omega14_rabi = 0.2
omega24_rabi = 0.5
delta13 = 1.0
delta23 = 1.0
delta14 = 5.0
delta24 = 5.0
gamma4 = 1.05
"""


# ---------- scenario files ----------

def test_parse_and_build_minimal():
    scenario = build_scenario(parse_pairs(MINIMAL))
    assert scenario.config.delta3 == 1.0
    assert scenario.config.delta4 == 5.0
    assert scenario.medium is None and scenario.cavity is None


def test_unknown_key_rejected_with_schema():
    with pytest.raises(ConfigError) as err:
        parse_pairs("omega13_rabi = 1\nbogus_key = 2\n")
    assert "bogus_key" in str(err.value)
    assert "scenario file schema" in str(err.value)


def test_duplicate_and_malformed_lines_rejected():
    with pytest.raises(ConfigError):
        parse_pairs("omega13_rabi = 1\nomega13_rabi = 2\n")
    with pytest.raises(ConfigError):
        parse_pairs("omega13_rabi 1\n")


def test_missing_required_keys_listed():
    with pytest.raises(ConfigError) as err:
        build_scenario(parse_pairs("omega13_rabi = 1\n"))
    assert "omega23_rabi" in str(err.value)


def test_hash_ignores_comments_and_order():
    a = parse_pairs(MINIMAL)
    b = parse_pairs("# a comment\n" + "\n".join(
        reversed(MINIMAL.strip().splitlines())))
    assert scenario_hash(a) == scenario_hash(b)


def test_conflicting_medium_modes_rejected():
    text = MINIMAL + """
density_si = 1e15
gamma3_hz = 5.75e6
probe_carrier_thz = 384.23
ground_splitting_hz = 6.8347e9
kappa_si = 1.0
calibrate_alpha = 1.8
"""
    with pytest.raises(ConfigError):
        build_scenario(parse_pairs(text))


def test_schema_help_covers_all_keys():
    text = schema_help()
    for key in SCHEMA:
        assert key in text


def test_shipped_presets_match_top_level_copies():
    for name in ("fig2", "fig3", "fig4"):
        packaged = (PKG_PRESETS / f"{name}.cfg").read_text()
        top = (TOP_PRESETS / f"{name}.cfg").read_text()
        assert packaged == top
        build_scenario(parse_pairs(packaged))  # parses and validates


# ---------- CLI ----------

def test_point_fig4(tmp_path, capsys):
    out = tmp_path / "point.json"
    rc = main(["point", "--preset", "fig4", "--engine", "both",
               "--out", str(out)])
    assert rc == 0
    data = json.loads(out.read_text())
    assert {"exact", "effective"} <= set(data["engines"])
    assert "alpha14" in data["engines"]["exact"]
    r14 = data["engines"]["exact"]["rho14"]
    assert len(r14) == 2 and all(isinstance(v, float) for v in r14)


def test_point_reports_engine_error_without_failing(tmp_path):
    out = tmp_path / "p.json"
    rc = main(["point", "--preset", "fig2", "--engine", "both",
               "--out", str(out)])
    assert rc == 0
    data = json.loads(out.read_text())
    assert "error" in data["engines"]["effective"]
    assert "rho14" in data["engines"]["exact"]


def test_sweep_custom_axis_csv(tmp_path):
    out = tmp_path / "s.csv"
    rc = main(["sweep", "--preset", "fig2", "--engine", "exact",
               "--axis", "delta4:-5:5:11", "--out", str(out)])
    assert rc == 0
    lines = out.read_text().splitlines()
    assert lines[0].startswith("# config-hash=")
    assert lines[1].split(",")[0] == "delta4"
    assert len(lines) == 2 + 11


def test_sweep_json_format(tmp_path):
    out = tmp_path / "s.json"
    rc = main(["sweep", "--preset", "fig2", "--engine", "exact",
               "--axis", "delta4:-5:5:3", "--format", "json",
               "--out", str(out)])
    assert rc == 0
    data = json.loads(out.read_text())
    assert len(data["axes"]["delta4"]) == 3
    assert "rho14_re_exact" in data["columns"]


def test_config_errors_exit_one(tmp_path, capsys):
    bad = tmp_path / "bad.cfg"
    bad.write_text("omega13_rabi = 1\nnope = 3\n")
    rc = main(["point", "--config", str(bad)])
    assert rc == 1
    assert "scenario file schema" in capsys.readouterr().err
    rc = main(["point", "--config", str(tmp_path / "missing.cfg")])
    assert rc == 1


def test_solver_errors_exit_two(tmp_path):
    cfg = tmp_path / "off.cfg"
    cfg.write_text("""
omega13_rabi = 0.0
omega23_rabi = 0.0
omega14_rabi = 0.0
omega24_rabi = 0.0
""")
    rc = main(["point", "--config", str(cfg), "--engine", "exact"])
    assert rc == 2  # fully undriven atom has a degenerate steady state


def test_lasing_search_fig4(tmp_path):
    out = tmp_path / "lasing.json"
    rc = main(["lasing-search", "--preset", "fig4", "--samples", "180",
               "--out", str(out)])
    assert rc == 0
    data = json.loads(out.read_text())
    assert len(data["crossings"]) == 3
    op = data["operating_point"]
    assert abs(op["phi0"] - 1.5 * math.pi) < 0.1
    assert op["gain_m^-1"] == pytest.approx(1.8, rel=1e-3)
    assert op["per_pass"] == pytest.approx(0.079, abs=0.002)


def test_evolve_csv(tmp_path):
    out = tmp_path / "evolve.csv"
    rc = main(["evolve", "--preset", "fig2", "--t-final", "5.0",
               "--samples", "50", "--out", str(out)])
    assert rc == 0
    lines = out.read_text().splitlines()
    assert lines[1].split(",")[0] == "t"
    last = [float(x) for x in lines[-1].split(",")]
    assert last[0] == pytest.approx(5.0)
    assert sum(last[1:5]) == pytest.approx(1.0, abs=1e-9)


def test_cavity_report():
    rc = main(["cavity", "--preset", "fig4", "--out", "/dev/null"])
    assert rc == 0


def test_verify_adiabatic_cli(tmp_path):
    out = tmp_path / "adiab.json"
    rc = main(["verify-adiabatic", "--preset", "fig2", "--t-final", "20",
               "--out", str(out)])
    assert rc == 0
    data = json.loads(out.read_text())
    assert "probe_dev_steady" in data

"""Config parsing, file formats, end-to-end runs and exit codes."""

import json
import hashlib
from pathlib import Path

import numpy as np
import pytest

import walkoffsim as ws
from walkoffsim import cli


FULL_CONFIG = """\
# reference configuration
lambda_p_nm    = 354.7
pump_fwhm_um   = 70        # beam FWHM
L_total_mm     = 6
stack          = all
grid_n         = 21
grid_span_rad  = 0.05
engine         = closed
oracle_z_panels = 128
oracle_x_nodes  = 64
oracle_tol      = 1e-8
outdir          = out
"""


def test_parse_config_full():
    cfg = cli.parse_config(FULL_CONFIG, source="inline")
    assert cfg.lambda_p_nm == 354.7
    assert cfg.pump_fwhm_um == 70.0
    assert cfg.L_total_mm == 6.0
    assert cfg.stack == "all"
    assert cfg.grid_n == 21
    assert cfg.grid_span_rad == 0.05
    assert cfg.engine == "closed"
    assert cfg.oracle_z_panels == 128
    assert cfg.oracle_x_nodes == 64
    assert cfg.oracle_tol == 1e-8
    assert cfg.outdir == "out"


def test_parse_config_defaults():
    cfg = cli.parse_config(
        "lambda_p_nm = 354.7\npump_fwhm_um = 70\nL_total_mm = 6\nstack = comp\n"
    )
    assert cfg.grid_n == 201
    assert cfg.grid_span_rad is None
    assert cfg.engine == "closed"
    assert cfg.outdir == "runs"
    assert cfg.medium_file is None


def test_parse_config_explicit_stack():
    cfg = cli.parse_config(
        "lambda_p_nm = 354.7\npump_fwhm_um = 70\nL_total_mm = 6\n"
        "stack = explicit:+3,-3\n"
    )
    assert cfg.stack == "explicit"
    assert cfg.explicit_slabs_mm == ((3.0, 1), (3.0, -1))


@pytest.mark.parametrize(
    "text, needle",
    [
        ("lambda_p_nm = 354.7\n", "missing required keys"),
        ("lambda_p_nm = 354.7\nwavelength = 3\n", ":2: unknown key"),
        ("lambda_p_nm = 354.7\nlambda_p_nm = 354.7\n", ":2: repeated"),
        ("lambda_p_nm = abc\npump_fwhm_um = 70\nL_total_mm = 6\nstack = comp\n", "not a number"),
        ("lambda_p_nm = -1\npump_fwhm_um = 70\nL_total_mm = 6\nstack = comp\n", "positive"),
        ("lambda_p_nm = 354.7\npump_fwhm_um = 70\nL_total_mm = 6\nstack = pyramid\n", "stack"),
        ("lambda_p_nm = 354.7\npump_fwhm_um = 70\nL_total_mm = 6\nstack = explicit:+3,0\n", "zero"),
        ("lambda_p_nm = 354.7\npump_fwhm_um = 70\nL_total_mm = 6\nstack = comp\ngrid_n = 8\n", "grid_n"),
        ("lambda_p_nm = 354.7\npump_fwhm_um = 70\nL_total_mm = 6\nstack = comp\nengine = fast\n", "engine"),
        ("lambda_p_nm 354.7\n", "key = value"),
        ("lambda_p_nm =\n", "empty value"),
    ],
)
def test_parse_config_rejects(text, needle):
    with pytest.raises(cli.ConfigError) as err:
        cli.parse_config(text, source="bad")
    assert needle in str(err.value)


def test_load_config_missing_file():
    with pytest.raises(cli.ConfigError):
        cli.load_config("/no/such/config.cfg")


def test_grid_csv_roundtrip(tmp_path, stacks, pump, pm):
    spec = ws.GridSpec(-0.02, 0.02, 16)
    grid = ws.evaluate_grid(stacks["comp"], pump, pm, spec)
    path = tmp_path / "grid.csv"
    cli.write_grid_csv(path, grid)
    ts, ti, values = cli.read_grid_csv(path)
    # %.17g formatting is lossless for doubles
    np.testing.assert_array_equal(ts, grid.signal_angles)
    np.testing.assert_array_equal(ti, grid.idler_angles)
    np.testing.assert_array_equal(values, grid.values)


def test_marginal_csv_roundtrip(tmp_path):
    angles = np.linspace(-0.01, 0.01, 33)
    p = np.exp(-((angles / 3e-3) ** 2))
    path = tmp_path / "m.csv"
    cli.write_marginal_csv(path, angles, p)
    a2, p2 = cli.read_marginal_csv(path)
    np.testing.assert_array_equal(a2, angles)
    np.testing.assert_array_equal(p2, p)


def _hot_pixel_grid(n=16):
    spec = ws.GridSpec(-0.01, 0.01, n)
    vals = np.full((n, n), 1e-3, dtype=complex)
    vals[n - 1, n - 1] = 1.0  # largest signal angle, largest idler angle
    return ws.TPAGrid(
        values=vals, signal_grid=spec, idler_grid=spec,
        peak_normalized=True, engine="closed_form",
    )


def test_pgm_format_and_orientation(tmp_path):
    grid = _hot_pixel_grid()
    path = tmp_path / "img.pgm"
    cli.write_pgm(path, grid)
    raw = path.read_bytes()
    assert raw.startswith(b"P5\n16 16\n65535\n")
    img = cli.read_pgm(path)
    assert img.dtype == np.dtype(">u2")
    assert img.shape == (16, 16)
    # idler descends along rows, signal ascends along columns
    assert img[0, -1] == 65535
    assert img[-1, 0] != 65535
    assert int(np.max(img)) == 65535


def _write_config(tmp_path, **overrides):
    base = {
        "lambda_p_nm": "354.7",
        "pump_fwhm_um": "70",
        "L_total_mm": "6",
        "stack": "all",
        "grid_n": "21",
        "outdir": str(tmp_path / "run"),
    }
    base.update(overrides)
    text = "\n".join(f"{k} = {v}" for k, v in base.items()) + "\n"
    path = tmp_path / "run.cfg"
    path.write_text(text, encoding="utf-8")
    return path


def test_simulate_end_to_end(tmp_path):
    cfg_path = _write_config(tmp_path)
    assert cli.main(["simulate", str(cfg_path)]) == 0
    out = tmp_path / "run"
    report = json.loads((out / "report.json").read_text())
    assert report["format"] == "walkoffsim-report-1"
    assert set(report["scenarios"]) == {"single_iso", "single_aniso", "noncomp", "comp"}
    for name in report["scenarios"]:
        for fname in (
            "grid.csv", "tpa.pgm", "marginal_signal.csv", "marginal_idler.csv",
            "conditional_neg.csv", "conditional_zero.csv", "conditional_pos.csv",
        ):
            key = f"{name}/{fname}"
            path = out / key
            assert path.is_file()
            digest = hashlib.sha256(path.read_bytes()).hexdigest()
            assert report["manifest_sha256"][key] == digest
    comp = report["scenarios"]["comp"]
    assert comp["swap_asym"] < 1e-10
    assert abs(comp["conditional_angles_rad"][0]) == comp["conditional_angles_rad"][2]


def test_simulate_is_deterministic(tmp_path):
    cfg_path = _write_config(tmp_path, stack="comp")
    assert cli.main(["simulate", str(cfg_path), "--outdir", str(tmp_path / "a")]) == 0
    assert cli.main(["simulate", str(cfg_path), "--outdir", str(tmp_path / "b")]) == 0
    rep_a = json.loads((tmp_path / "a" / "report.json").read_text())
    rep_b = json.loads((tmp_path / "b" / "report.json").read_text())
    assert rep_a["manifest_sha256"] == rep_b["manifest_sha256"]
    rep_a.pop("timestamp_utc")
    rep_b.pop("timestamp_utc")
    assert rep_a == rep_b
    same = (tmp_path / "a" / "comp" / "grid.csv").read_bytes() == (
        tmp_path / "b" / "comp" / "grid.csv"
    ).read_bytes()
    assert same


def test_simulate_oracle_engine(tmp_path):
    cfg_path = _write_config(tmp_path, stack="single_iso", grid_n="16")
    assert cli.main(["simulate", str(cfg_path), "--engine", "oracle"]) == 0
    report = json.loads((tmp_path / "run" / "report.json").read_text())
    assert report["engine"] == "oracle"
    stats = report["scenarios"]["single_iso"]["oracle"]
    assert stats["z_panels"] >= 2
    assert stats["max_delta"] <= stats["tol_abs"]


def test_simulate_explicit_stack(tmp_path):
    cfg_path = _write_config(tmp_path, stack="explicit:+3,-3")
    assert cli.main(["simulate", str(cfg_path)]) == 0
    report = json.loads((tmp_path / "run" / "report.json").read_text())
    assert set(report["scenarios"]) == {"explicit"}
    # equal and opposite halves compensate like the comp preset
    assert report["scenarios"]["explicit"]["swap_asym"] < 1e-10


def test_sweep_end_to_end(tmp_path):
    cfg_path = _write_config(tmp_path, stack="single_aniso")
    code = cli.main([
        "sweep", str(cfg_path), "--param", "pump_fwhm", "--values", "70,140",
        "--outdir", str(tmp_path / "sw"),
    ])
    assert code == 0
    table = (tmp_path / "sw" / "sweep_pump_fwhm_single_aniso.csv").read_text()
    lines = table.strip().split("\n")
    assert lines[0] == "value,swap_asym,skewness,schmidt_K"
    assert len(lines) == 3


def test_exit_codes(tmp_path):
    assert cli.main(["simulate", str(tmp_path / "missing.cfg")]) == 2
    bad = tmp_path / "bad.cfg"
    bad.write_text("nonsense = 1\n", encoding="utf-8")
    assert cli.main(["simulate", str(bad)]) == 2
    cfg_path = _write_config(tmp_path, stack="comp")
    assert cli.main(["sweep", str(cfg_path), "--param", "L_total", "--values", "6"]) == 2
    blocker = tmp_path / "blocker"
    blocker.write_text("x", encoding="utf-8")
    assert cli.main([
        "simulate", str(cfg_path), "--outdir", str(blocker / "sub"),
    ]) == 4


def test_selfcheck_passes():
    assert cli.main(["selfcheck", "--grid-n", "16"]) == 0

"""Command-line front end: config parsing, scenario runs, file emission.

Config files are UTF-8 ``key = value`` lines with ``#`` comments.  Keys
carry their unit as a suffix (``lambda_p_nm``, ``pump_fwhm_um``,
``L_total_mm``, ``grid_span_rad``); unknown keys are errors, with line
numbers, so typos cannot silently fall back to defaults.

Three subcommands::

    walkoffsim simulate <config> [--engine closed|oracle] [--outdir DIR]
    walkoffsim sweep <config> --param pump_fwhm|L_total --values v1,v2,... [--outdir DIR]
    walkoffsim selfcheck [--grid-n N]

``simulate`` writes one directory per scenario (amplitude grid CSV, 16-bit
PGM intensity image, marginal and conditional CSVs) plus ``report.json``
with the resolved geometry, the distortion metrics and SHA-256 hashes of
every emitted data file.  Reruns are byte-identical except for the report
timestamp, which is excluded from hashing.  Exit codes: 0 success, 2 config
error, 3 numeric error, 4 I/O error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import math
import sys
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from .analysis import (
    FitRegionError,
    GridSpec,
    TPAGrid,
    asymmetry_report,
    auto_grid_spec,
    conditional_distribution,
    double_gauss_fit,
    evaluate_grid,
    schmidt_decompose,
    unconditional_distribution,
    _half_max_angle,
)
from .dispersion import (
    MediumFileError,
    PhaseMatchingError,
    bbo,
    load_medium,
    phase_matching_solution,
)
from .geometry import CrystalSlab, CrystalStack, PumpBeam, make_standard_stacks
from .tpa import OracleConvergenceError, QuadratureSpec

__all__ = [
    "ConfigError",
    "RunConfig",
    "RunReport",
    "parse_config",
    "load_config",
    "run_scenarios",
    "sweep",
    "selfcheck",
    "main",
    "write_grid_csv",
    "read_grid_csv",
    "write_marginal_csv",
    "read_marginal_csv",
    "write_pgm",
    "read_pgm",
]

_FLOAT_FMT = "%.17g"
_PRESETS = ("all", "single_iso", "single_aniso", "noncomp", "comp")
_ENGINE_NAMES = {"closed": "closed_form", "oracle": "oracle"}
_SELFCHECK_TOL = 1e-6


class ConfigError(ValueError):
    """Bad run configuration (unknown key, missing key, bad value)."""


@dataclass
class RunConfig:
    """Parsed, validated run configuration."""

    lambda_p_nm: float
    pump_fwhm_um: float
    L_total_mm: float
    stack: str
    explicit_slabs_mm: tuple[tuple[float, int], ...] | None = None
    medium_file: str | None = None
    grid_n: int = 201
    grid_span_rad: float | None = None
    engine: str = "closed"
    oracle_z_panels: int = 2000
    oracle_x_nodes: int = 400
    oracle_tol: float = 1e-9
    outdir: str = "runs"


_REQUIRED_KEYS = ("lambda_p_nm", "pump_fwhm_um", "L_total_mm", "stack")
_OPTIONAL_KEYS = (
    "medium_file",
    "grid_n",
    "grid_span_rad",
    "engine",
    "oracle_z_panels",
    "oracle_x_nodes",
    "oracle_tol",
    "outdir",
)


def _parse_positive_float(key: str, value: str, lineno: int, source: str) -> float:
    try:
        out = float(value)
    except ValueError:
        raise ConfigError(f"{source}:{lineno}: {key}: not a number: {value!r}") from None
    if not (out > 0.0) or not math.isfinite(out):
        raise ConfigError(f"{source}:{lineno}: {key} must be positive, got {value}")
    return out


def _parse_stack_value(value: str, lineno: int, source: str):
    if value in _PRESETS:
        return value, None
    if value.startswith("explicit:"):
        body = value[len("explicit:"):]
        slabs = []
        for tok in body.split(","):
            tok = tok.strip()
            if not tok:
                raise ConfigError(f"{source}:{lineno}: empty slab entry in {value!r}")
            try:
                length_mm = float(tok)
            except ValueError:
                raise ConfigError(
                    f"{source}:{lineno}: bad slab length {tok!r} (signed mm expected)"
                ) from None
            if length_mm == 0.0:
                raise ConfigError(f"{source}:{lineno}: slab length may not be zero")
            sign = 1 if length_mm > 0 else -1
            slabs.append((abs(length_mm), sign))
        return "explicit", tuple(slabs)
    raise ConfigError(
        f"{source}:{lineno}: stack must be one of {', '.join(_PRESETS)} "
        f"or 'explicit:<signed mm lengths>', got {value!r}"
    )


def parse_config(text: str, source: str = "<config>") -> RunConfig:
    """Parse and validate a config; raise :class:`ConfigError` on any flaw."""
    seen: dict[str, tuple[int, str]] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{source}:{lineno}: expected 'key = value'")
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if key not in _REQUIRED_KEYS and key not in _OPTIONAL_KEYS:
            raise ConfigError(f"{source}:{lineno}: unknown key '{key}'")
        if key in seen:
            raise ConfigError(f"{source}:{lineno}: repeated key '{key}'")
        if not value:
            raise ConfigError(f"{source}:{lineno}: empty value for '{key}'")
        seen[key] = (lineno, value)
    missing = [k for k in _REQUIRED_KEYS if k not in seen]
    if missing:
        raise ConfigError(f"{source}: missing required keys: {', '.join(missing)}")

    def get(key: str) -> tuple[int, str] | None:
        return seen.get(key)

    lineno, value = seen["stack"]
    stack_kind, explicit = _parse_stack_value(value, lineno, source)

    def positive(key: str) -> float:
        lineno, value = seen[key]
        return _parse_positive_float(key, value, lineno, source)

    cfg = RunConfig(
        lambda_p_nm=positive("lambda_p_nm"),
        pump_fwhm_um=positive("pump_fwhm_um"),
        L_total_mm=positive("L_total_mm"),
        stack=stack_kind,
        explicit_slabs_mm=explicit,
    )
    if (entry := get("medium_file")) is not None:
        cfg.medium_file = entry[1]
    if (entry := get("grid_n")) is not None:
        lineno, value = entry
        try:
            cfg.grid_n = int(value)
        except ValueError:
            raise ConfigError(f"{source}:{lineno}: grid_n: not an integer: {value!r}") from None
        if cfg.grid_n < 16:
            raise ConfigError(f"{source}:{lineno}: grid_n must be >= 16, got {cfg.grid_n}")
    if (entry := get("grid_span_rad")) is not None:
        cfg.grid_span_rad = _parse_positive_float("grid_span_rad", entry[1], entry[0], source)
    if (entry := get("engine")) is not None:
        lineno, value = entry
        if value not in _ENGINE_NAMES:
            raise ConfigError(f"{source}:{lineno}: engine must be 'closed' or 'oracle', got {value!r}")
        cfg.engine = value
    if (entry := get("oracle_z_panels")) is not None:
        lineno, value = entry
        try:
            cfg.oracle_z_panels = int(value)
        except ValueError:
            raise ConfigError(f"{source}:{lineno}: oracle_z_panels: not an integer: {value!r}") from None
        if cfg.oracle_z_panels < 1:
            raise ConfigError(f"{source}:{lineno}: oracle_z_panels must be >= 1")
    if (entry := get("oracle_x_nodes")) is not None:
        lineno, value = entry
        try:
            cfg.oracle_x_nodes = int(value)
        except ValueError:
            raise ConfigError(f"{source}:{lineno}: oracle_x_nodes: not an integer: {value!r}") from None
        if cfg.oracle_x_nodes < 8:
            raise ConfigError(f"{source}:{lineno}: oracle_x_nodes must be >= 8")
    if (entry := get("oracle_tol")) is not None:
        cfg.oracle_tol = _parse_positive_float("oracle_tol", entry[1], entry[0], source)
    if (entry := get("outdir")) is not None:
        cfg.outdir = entry[1]
    return cfg


def load_config(path: str | Path) -> RunConfig:
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except FileNotFoundError:
        raise ConfigError(f"config file not found: {p}") from None
    return parse_config(text, source=str(p))


# ---------------------------------------------------------------------------
# File formats
# ---------------------------------------------------------------------------


def write_grid_csv(path: Path, grid: TPAGrid) -> None:
    """Long-format amplitude table, 17 significant digits per float."""
    ts = grid.signal_angles
    ti = grid.idler_angles
    lines = ["theta_s_rad,theta_i_rad,re_F,im_F,abs2_F"]
    v = grid.values
    for j in range(len(ts)):
        for k in range(len(ti)):
            f = v[j, k]
            lines.append(
                ",".join(
                    _FLOAT_FMT % x
                    for x in (ts[j], ti[k], f.real, f.imag, abs(f) ** 2)
                )
            )
    path.write_text("\n".join(lines) + "\n", encoding="utf-8", newline="\n")


def read_grid_csv(path: Path):
    """Inverse of :func:`write_grid_csv`; returns (theta_s, theta_i, values)."""
    lines = Path(path).read_text(encoding="utf-8").splitlines()
    header = lines[0]
    if header != "theta_s_rad,theta_i_rad,re_F,im_F,abs2_F":
        raise ValueError(f"{path}: unexpected grid CSV header: {header!r}")
    rows = [line.split(",") for line in lines[1:] if line]
    ts = np.array(sorted({float(r[0]) for r in rows}))
    ti = np.array(sorted({float(r[1]) for r in rows}))
    values = np.empty((len(ts), len(ti)), dtype=complex)
    n_i = len(ti)
    for idx, r in enumerate(rows):
        j, k = divmod(idx, n_i)
        values[j, k] = complex(float(r[2]), float(r[3]))
    return ts, ti, values


def write_marginal_csv(path: Path, angles: np.ndarray, p: np.ndarray) -> None:
    lines = ["theta_rad,p"]
    for t, q in zip(angles, p):
        lines.append(f"{_FLOAT_FMT % t},{_FLOAT_FMT % q}")
    path.write_text("\n".join(lines) + "\n", encoding="utf-8", newline="\n")


def read_marginal_csv(path: Path):
    lines = Path(path).read_text(encoding="utf-8").splitlines()
    if lines[0] != "theta_rad,p":
        raise ValueError(f"{path}: unexpected marginal CSV header: {lines[0]!r}")
    rows = [line.split(",") for line in lines[1:] if line]
    angles = np.array([float(r[0]) for r in rows])
    p = np.array([float(r[1]) for r in rows])
    return angles, p


def write_pgm(path: Path, grid: TPAGrid) -> None:
    """16-bit binary PGM of |F|^2, linearly scaled so the peak maps to 65535.

    Columns run over the signal angle (left to right, ascending), rows over
    the idler angle (top to bottom, descending), most significant byte first.
    """
    intensity = grid.intensity()
    peak = float(np.max(intensity))
    if peak <= 0.0:
        raise ValueError("cannot render an identically zero grid")
    img = np.rint(intensity.T[::-1, :] / peak * 65535.0).astype(">u2")
    height, width = img.shape
    header = f"P5\n{width} {height}\n65535\n".encode("ascii")
    path.write_bytes(header + img.tobytes())


def read_pgm(path: Path):
    """Parse a binary 16-bit PGM; returns the raw integer image array."""
    data = Path(path).read_bytes()
    parts = data.split(b"\n", 3)
    if parts[0] != b"P5":
        raise ValueError(f"{path}: not a binary PGM")
    width, height = (int(tok) for tok in parts[1].split())
    maxval = int(parts[2])
    if maxval != 65535:
        raise ValueError(f"{path}: expected 16-bit maxval, got {maxval}")
    img = np.frombuffer(parts[3], dtype=">u2", count=width * height)
    return img.reshape(height, width)


def _sha256(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()


# ---------------------------------------------------------------------------
# Scenario orchestration
# ---------------------------------------------------------------------------


@dataclass
class RunReport:
    """Everything ``simulate`` resolved and measured, JSON-serialisable."""

    engine: str
    medium_name: str
    inputs: dict
    phase_matching: dict
    grid: dict
    scenarios: dict
    manifest_sha256: dict
    timestamp_utc: str
    outdir: str

    def to_json_dict(self) -> dict:
        return {
            "format": "walkoffsim-report-1",
            "timestamp_utc": self.timestamp_utc,
            "engine": self.engine,
            "medium": self.medium_name,
            "inputs": self.inputs,
            "phase_matching": self.phase_matching,
            "grid": self.grid,
            "scenarios": self.scenarios,
            "manifest_sha256": self.manifest_sha256,
        }


def _build_stacks(cfg: RunConfig, theta: float) -> dict[str, CrystalStack]:
    L = cfg.L_total_mm * 1e-3
    if cfg.stack == "all":
        return make_standard_stacks(L, theta)
    if cfg.stack == "explicit":
        slabs = tuple(
            CrystalSlab(length_mm * 1e-3, sign) for length_mm, sign in cfg.explicit_slabs_mm
        )
        return {"explicit": CrystalStack(slabs, theta)}
    return {cfg.stack: make_standard_stacks(L, theta)[cfg.stack]}


def _span_reference_stack(stacks: dict[str, CrystalStack]) -> CrystalStack:
    # widest, most distorted case preferred so one grid serves all scenarios
    return stacks.get("single_aniso", next(iter(stacks.values())))


def _scenario_metrics(grid: TPAGrid, t_star: float) -> dict:
    report = asymmetry_report(grid)
    schmidt = schmidt_decompose(grid)
    try:
        fit = double_gauss_fit(grid)
        fit_entry = {
            "a": fit.a,
            "b": fit.b,
            "residual": fit.residual,
            "applicable": fit.applicable,
        }
    except FitRegionError as exc:
        fit_entry = {"error": str(exc)}
    entry = {
        "swap_asym": report.swap_asym,
        "marginal_skewness": report.marginal_skewness,
        "bend_offset_rad": report.bend_offset,
        "schmidt_K": schmidt.K,
        "schmidt_lambdas_top8": [float(x) for x in schmidt.lambdas[:8]],
        "double_gauss": fit_entry,
        "conditional_angles_rad": [-t_star, 0.0, t_star],
    }
    if grid.oracle_stats is not None:
        entry["oracle"] = {
            "z_panels": grid.oracle_stats.z_panels,
            "x_nodes": grid.oracle_stats.x_nodes,
            "refinements": grid.oracle_stats.refinements,
            "max_delta": grid.oracle_stats.max_delta,
            "tol_abs": grid.oracle_stats.tol_abs,
        }
    return entry


def _resolve_medium(cfg: RunConfig):
    return load_medium(cfg.medium_file) if cfg.medium_file else bbo()


def run_scenarios(
    cfg: RunConfig,
    outdir: str | Path | None = None,
    engine: str | None = None,
) -> RunReport:
    """Evaluate every configured scenario and emit its files.

    ``outdir`` and ``engine`` override the config (CLI flags).  Returns the
    report that was also written to ``<outdir>/report.json``.
    """
    engine_key = engine if engine is not None else cfg.engine
    if engine_key not in _ENGINE_NAMES:
        raise ConfigError(f"engine must be 'closed' or 'oracle', got {engine_key!r}")
    out_root = Path(outdir if outdir is not None else cfg.outdir)

    medium = _resolve_medium(cfg)
    pm = phase_matching_solution(medium, cfg.lambda_p_nm * 1e-3)
    pump = PumpBeam(lambda_p=cfg.lambda_p_nm * 1e-9, d=cfg.pump_fwhm_um * 1e-6)
    stacks = _build_stacks(cfg, pm.theta_walkoff)

    if cfg.grid_span_rad is not None:
        grid_spec = GridSpec(-cfg.grid_span_rad, cfg.grid_span_rad, cfg.grid_n)
    else:
        grid_spec = auto_grid_spec(_span_reference_stack(stacks), pump, pm, n=cfg.grid_n)

    quad = QuadratureSpec(
        z_panels=cfg.oracle_z_panels, x_nodes=cfg.oracle_x_nodes, tol=cfg.oracle_tol
    )

    out_root.mkdir(parents=True, exist_ok=True)
    scenarios: dict[str, dict] = {}
    manifest: dict[str, str] = {}
    for name, stack in stacks.items():
        grid = evaluate_grid(
            stack, pump, pm, grid_spec, engine=_ENGINE_NAMES[engine_key], quad=quad
        )
        sdir = out_root / name
        sdir.mkdir(parents=True, exist_ok=True)

        marg_s = unconditional_distribution(grid, axis="signal")
        marg_i = unconditional_distribution(grid, axis="idler")
        t_star = min(_half_max_angle(marg_i), grid.idler_grid.theta_max)
        files = {
            "grid.csv": lambda p, g=grid: write_grid_csv(p, g),
            "tpa.pgm": lambda p, g=grid: write_pgm(p, g),
            "marginal_signal.csv": lambda p, m=marg_s: write_marginal_csv(p, m.angles, m.p),
            "marginal_idler.csv": lambda p, m=marg_i: write_marginal_csv(p, m.angles, m.p),
        }
        for tag, angle in (("neg", -t_star), ("zero", 0.0), ("pos", t_star)):
            cond = conditional_distribution(grid, angle)
            files[f"conditional_{tag}.csv"] = (
                lambda p, c=cond: write_marginal_csv(p, c.angles, c.p)
            )
        for fname, writer in files.items():
            fpath = sdir / fname
            writer(fpath)
            manifest[f"{name}/{fname}"] = _sha256(fpath)
        scenarios[name] = _scenario_metrics(grid, t_star)

    report = RunReport(
        engine=engine_key,
        medium_name=medium.name,
        inputs={
            "lambda_p_nm": cfg.lambda_p_nm,
            "pump_fwhm_um": cfg.pump_fwhm_um,
            "L_total_mm": cfg.L_total_mm,
            "stack": cfg.stack,
            "explicit_slabs_mm": [
                [length, sign] for length, sign in (cfg.explicit_slabs_mm or ())
            ] or None,
        },
        phase_matching={
            "alpha_rad": pm.alpha,
            "theta_walkoff_rad": pm.theta_walkoff,
            "k_p_rad_per_m": pm.k_p,
            "k_s_rad_per_m": pm.k_s,
            "k_i_rad_per_m": pm.k_i,
        },
        grid={
            "n": grid_spec.n,
            "theta_min_rad": grid_spec.theta_min,
            "theta_max_rad": grid_spec.theta_max,
        },
        scenarios=scenarios,
        manifest_sha256=manifest,
        timestamp_utc=datetime.now(timezone.utc).isoformat(timespec="seconds"),
        outdir=str(out_root),
    )
    with open(out_root / "report.json", "w", encoding="utf-8", newline="\n") as fh:
        json.dump(report.to_json_dict(), fh, indent=2)
        fh.write("\n")
    return report


# ---------------------------------------------------------------------------
# Parameter sweeps
# ---------------------------------------------------------------------------

_SWEEP_PARAMS = ("pump_fwhm", "L_total")


def sweep(
    cfg: RunConfig,
    param: str,
    values: list[float],
    outdir: str | Path | None = None,
) -> dict[str, list[dict]]:
    """Metric tables versus one swept parameter, one CSV per scenario.

    ``param`` is ``pump_fwhm`` (micrometres) or ``L_total`` (millimetres).
    Needs at least two values.  Returns {scenario: [row dicts]} and writes
    ``sweep_<param>_<scenario>.csv`` tables; monotonicity of the
    single-crystal swap asymmetry is printed when that scenario is swept.
    """
    if param not in _SWEEP_PARAMS:
        raise ConfigError(f"sweep param must be one of {_SWEEP_PARAMS}, got {param!r}")
    if len(values) < 2:
        raise ConfigError(f"sweep needs >= 2 values, got {len(values)}")
    if any(not (v > 0.0) for v in values):
        raise ConfigError("sweep values must be positive")
    out_root = Path(outdir if outdir is not None else cfg.outdir)
    out_root.mkdir(parents=True, exist_ok=True)

    medium = _resolve_medium(cfg)
    pm = phase_matching_solution(medium, cfg.lambda_p_nm * 1e-3)

    tables: dict[str, list[dict]] = {}
    for value in values:
        pump_fwhm_um = value if param == "pump_fwhm" else cfg.pump_fwhm_um
        L_total_mm = value if param == "L_total" else cfg.L_total_mm
        pump = PumpBeam(lambda_p=cfg.lambda_p_nm * 1e-9, d=pump_fwhm_um * 1e-6)
        sub = RunConfig(
            lambda_p_nm=cfg.lambda_p_nm,
            pump_fwhm_um=pump_fwhm_um,
            L_total_mm=L_total_mm,
            stack=cfg.stack,
            explicit_slabs_mm=cfg.explicit_slabs_mm,
        )
        stacks = _build_stacks(sub, pm.theta_walkoff)
        if cfg.grid_span_rad is not None:
            grid_spec = GridSpec(-cfg.grid_span_rad, cfg.grid_span_rad, cfg.grid_n)
        else:
            grid_spec = auto_grid_spec(_span_reference_stack(stacks), pump, pm, n=cfg.grid_n)
        for name, stack in stacks.items():
            grid = evaluate_grid(stack, pump, pm, grid_spec)
            report = asymmetry_report(grid)
            K = schmidt_decompose(grid).K
            tables.setdefault(name, []).append(
                {
                    "value": value,
                    "swap_asym": report.swap_asym,
                    "skewness": report.marginal_skewness,
                    "schmidt_K": K,
                }
            )

    for name, rows in tables.items():
        lines = ["value,swap_asym,skewness,schmidt_K"]
        for row in rows:
            lines.append(
                ",".join(
                    _FLOAT_FMT % row[key]
                    for key in ("value", "swap_asym", "skewness", "schmidt_K")
                )
            )
        path = out_root / f"sweep_{param}_{name}.csv"
        path.write_text("\n".join(lines) + "\n", encoding="utf-8", newline="\n")

    if "single_aniso" in tables:
        ordered = sorted(tables["single_aniso"], key=lambda r: r["value"])
        asyms = [r["swap_asym"] for r in ordered]
        decreasing = all(b < a for a, b in zip(asyms, asyms[1:]))
        increasing = all(b > a for a, b in zip(asyms, asyms[1:]))
        direction = (
            "strictly decreasing" if decreasing
            else "strictly increasing" if increasing
            else "not monotonic"
        )
        print(f"single_aniso swap asymmetry vs {param}: {direction}")
    return tables


# ---------------------------------------------------------------------------
# Self check
# ---------------------------------------------------------------------------


def selfcheck(grid_n: int = 21) -> dict[str, float]:
    """Closed form against the quadrature oracle on every standard stack.

    Uses the reference configuration (BBO, 354.7 nm pump, 70 um FWHM, 6 mm
    total length).  Returns the per-stack worst deviation of the
    peak-normalised amplitudes and prints one line each.
    """
    medium = bbo()
    pm = phase_matching_solution(medium, 0.3547)
    pump = PumpBeam(lambda_p=354.7e-9, d=70e-6)
    stacks = make_standard_stacks(6e-3, pm.theta_walkoff)
    grid_spec = auto_grid_spec(stacks["single_aniso"], pump, pm, n=grid_n)
    deviations: dict[str, float] = {}
    for name, stack in stacks.items():
        closed = evaluate_grid(stack, pump, pm, grid_spec, engine="closed_form")
        oracle = evaluate_grid(stack, pump, pm, grid_spec, engine="oracle")
        dev = float(np.max(np.abs(closed.values - oracle.values)))
        deviations[name] = dev
        status = "ok" if dev < _SELFCHECK_TOL else "FAIL"
        print(f"{name:13s} max |closed - oracle| = {dev:.3e}  [{status}]")
    return deviations


# ---------------------------------------------------------------------------
# Entry point
# ---------------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="walkoffsim",
        description="Angular two-photon amplitudes of type-I down-conversion "
        "in birefringent crystal stacks",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_sim = sub.add_parser("simulate", help="run the configured scenarios")
    p_sim.add_argument("config", help="path to a key = value config file")
    p_sim.add_argument("--engine", choices=sorted(_ENGINE_NAMES), default=None)
    p_sim.add_argument("--outdir", default=None)

    p_sweep = sub.add_parser("sweep", help="sweep one parameter, tabulate metrics")
    p_sweep.add_argument("config")
    p_sweep.add_argument("--param", required=True, choices=_SWEEP_PARAMS)
    p_sweep.add_argument("--values", required=True, help="comma-separated numbers")
    p_sweep.add_argument("--outdir", default=None)

    p_check = sub.add_parser("selfcheck", help="closed form vs quadrature oracle")
    p_check.add_argument("--grid-n", type=int, default=21)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "simulate":
            cfg = load_config(args.config)
            report = run_scenarios(cfg, outdir=args.outdir, engine=args.engine)
            print(f"wrote {len(report.manifest_sha256)} files to {report.outdir}")
            return 0
        if args.command == "sweep":
            cfg = load_config(args.config)
            try:
                values = [float(tok) for tok in args.values.split(",") if tok.strip()]
            except ValueError:
                raise ConfigError(f"bad --values list: {args.values!r}") from None
            tables = sweep(cfg, args.param, values, outdir=args.outdir)
            print(f"swept {args.param} over {len(values)} values, "
                  f"{len(tables)} scenario tables")
            return 0
        if args.command == "selfcheck":
            deviations = selfcheck(grid_n=args.grid_n)
            worst = max(deviations.values())
            if worst >= _SELFCHECK_TOL:
                print(f"selfcheck FAILED: worst deviation {worst:.3e}")
                return 3
            print(f"selfcheck passed: worst deviation {worst:.3e}")
            return 0
        parser.error(f"unknown command {args.command!r}")
    except (ConfigError, MediumFileError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except (
        OracleConvergenceError,
        PhaseMatchingError,
        FitRegionError,
        FloatingPointError,
        np.linalg.LinAlgError,
    ) as exc:
        print(f"numeric error: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 4
    return 0


if __name__ == "__main__":
    raise SystemExit(main())

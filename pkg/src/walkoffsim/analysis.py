"""Grids, angular distributions, asymmetry metrics and Schmidt spectra.

Amplitude grids are square matrices F[j, k] = F(theta_s[j], theta_i[k]) on
uniform angle axes; distributions are intensity readings (|F|^2) normalised
so that sum(p) * dtheta = 1.  The asymmetry report condenses the visual
signatures of walk-off distortion into three scalars: the swap asymmetry
|| |F| - |F|^T || / || |F| ||, the skewness of the unconditional marginal,
and the bend offset of conditional peaks away from the degenerate ridge
theta_s = theta_i.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .geometry import CrystalStack, PumpBeam
from .tpa import OracleStats, QuadratureSpec, quadrature_oracle_with_stats, tpa_stack

# np.trapz was renamed in numpy 2.0; support both spellings
_trapezoid = getattr(np, "trapezoid", None) or np.trapz

__all__ = [
    "GridSpec",
    "TPAGrid",
    "AngularDistribution",
    "AsymmetryReport",
    "SchmidtSpectrum",
    "DoubleGaussFit",
    "FitRegionError",
    "evaluate_grid",
    "auto_grid_spec",
    "conditional_distribution",
    "unconditional_distribution",
    "asymmetry_report",
    "marginal_skewness",
    "schmidt_decompose",
    "double_gauss_fit",
]

_ENGINES = ("closed_form", "oracle")


class FitRegionError(ValueError):
    """Too few grid points above threshold to fit a model."""


@dataclass(frozen=True)
class GridSpec:
    """Uniform angular axis: ``n`` samples from ``theta_min`` to ``theta_max``."""

    theta_min: float
    theta_max: float
    n: int = 201

    def __post_init__(self) -> None:
        if self.n < 16:
            raise ValueError(f"grid needs at least 16 samples, got {self.n}")
        if not (self.theta_max > self.theta_min):
            raise ValueError("theta_max must exceed theta_min")

    def axis(self) -> np.ndarray:
        return np.linspace(self.theta_min, self.theta_max, self.n)

    @property
    def spacing(self) -> float:
        return (self.theta_max - self.theta_min) / (self.n - 1)


@dataclass
class TPAGrid:
    """Sampled amplitude F[j, k] = F(signal angle j, idler angle k)."""

    values: np.ndarray
    signal_grid: GridSpec
    idler_grid: GridSpec
    peak_normalized: bool
    engine: str
    oracle_stats: OracleStats | None = None

    @property
    def signal_angles(self) -> np.ndarray:
        return self.signal_grid.axis()

    @property
    def idler_angles(self) -> np.ndarray:
        return self.idler_grid.axis()

    def intensity(self) -> np.ndarray:
        return np.square(np.abs(self.values))


@dataclass(frozen=True)
class AngularDistribution:
    """1-D angular probability density on a uniform axis."""

    angles: np.ndarray
    p: np.ndarray
    kind: str
    fixed_angle: float | None = None


@dataclass(frozen=True)
class AsymmetryReport:
    """Scalar distortion metrics of one amplitude grid."""

    swap_asym: float
    marginal_skewness: float
    bend_offset: float


@dataclass(frozen=True)
class SchmidtSpectrum:
    """Schmidt coefficients and leading continuum-normalised modes."""

    lambdas: np.ndarray
    K: float
    modes_signal: np.ndarray
    modes_idler: np.ndarray


@dataclass(frozen=True)
class DoubleGaussFit:
    """Least-squares double-Gaussian model of |F|^2.

    The model is |F|^2 ~ exp[-2a (ts + ti)^2 - 2b (ts - ti)^2]; ``residual``
    is the relative L2 misfit over the fitted region and ``applicable``
    flags whether the model describes the data (residual <= 0.1).
    """

    a: float
    b: float
    residual: float

    @property
    def applicable(self) -> bool:
        return self.residual <= 0.1


def evaluate_grid(
    stack: CrystalStack,
    pump: PumpBeam,
    pm,
    grid: GridSpec,
    engine: str = "closed_form",
    quad: QuadratureSpec | None = None,
) -> TPAGrid:
    """Sample the stack amplitude on a square grid and peak-normalise it.

    ``engine`` selects the closed form or the quadrature oracle; the oracle's
    convergence record is kept on the returned grid.
    """
    if engine not in _ENGINES:
        raise ValueError(f"unknown engine {engine!r}, expected one of {_ENGINES}")
    axis = grid.axis()
    ths, thi = np.meshgrid(axis, axis, indexing="ij")
    stats = None
    if engine == "closed_form":
        values = tpa_stack(ths, thi, pump, stack, pm)
    else:
        values, stats = quadrature_oracle_with_stats(ths, thi, pump, stack, pm, quad)
    values = np.asarray(values, dtype=complex)
    if not np.all(np.isfinite(values)):
        raise FloatingPointError("amplitude grid contains non-finite values")
    peak = float(np.max(np.abs(values)))
    if peak > 0.0:
        values = values / peak
    return TPAGrid(
        values=values,
        signal_grid=grid,
        idler_grid=grid,
        peak_normalized=True,
        engine=engine,
        oracle_stats=stats,
    )


def _marginal_fwhm(angles: np.ndarray, p: np.ndarray) -> float:
    """Full width at half maximum by linear interpolation around the peak."""
    j = int(np.argmax(p))
    half = 0.5 * p[j]

    def cross(idx_range) -> float:
        prev = j
        for k in idx_range:
            if p[k] < half:
                t = (half - p[k]) / (p[prev] - p[k])
                return angles[k] + t * (angles[prev] - angles[k])
            prev = k
        return angles[idx_range[-1]] if len(idx_range) else angles[j]

    right = cross(range(j + 1, len(p)))
    left = cross(range(j - 1, -1, -1))
    return abs(right - left)


def auto_grid_spec(
    stack: CrystalStack,
    pump: PumpBeam,
    pm,
    n: int = 201,
    factor: float = 5.0,
    coarse_n: int = 41,
) -> GridSpec:
    """Choose a symmetric grid from a coarse pre-pass.

    A 41x41 probe grid sized from the sinc and pump-envelope angular scales
    locates the unconditional marginal; the final half-span is ``factor``
    times its FWHM, wide enough that sinc side lobes keep their Schmidt
    weight.
    """
    L = stack.total_length
    k = pm.k_s
    t_sinc = math.sqrt(4.0 * math.pi / (k * L))
    t_env = 2.0 * math.sqrt(2.0 * math.log(2.0)) / (pump.sigma_x * k)
    span0 = 6.0 * max(t_sinc, t_env)
    coarse = evaluate_grid(stack, pump, pm, GridSpec(-span0, span0, coarse_n))
    marginal = unconditional_distribution(coarse, axis="signal")
    width = _marginal_fwhm(marginal.angles, marginal.p)
    span = factor * width
    if not (span > 0.0):
        span = span0
    return GridSpec(-span, span, n)


def conditional_distribution(grid: TPAGrid, theta_i_fixed: float) -> AngularDistribution:
    """p(theta_s | theta_i = fixed), interpolated linearly between columns."""
    axis_i = grid.idler_angles
    if not (axis_i[0] <= theta_i_fixed <= axis_i[-1]):
        raise ValueError(
            f"theta_i_fixed = {theta_i_fixed:g} outside grid range "
            f"[{axis_i[0]:g}, {axis_i[-1]:g}]"
        )
    w = grid.intensity()
    pos = (theta_i_fixed - axis_i[0]) / grid.idler_grid.spacing
    j = min(int(math.floor(pos)), len(axis_i) - 2)
    frac = pos - j
    column = (1.0 - frac) * w[:, j] + frac * w[:, j + 1]
    return _normalized(
        grid.signal_angles, column, kind="conditional", fixed_angle=theta_i_fixed
    )


def unconditional_distribution(grid: TPAGrid, axis: str = "signal") -> AngularDistribution:
    """Single-photon marginal of |F|^2 along one axis (trapezoid weights)."""
    w = grid.intensity()
    if axis == "signal":
        p = _trapezoid(w, dx=grid.idler_grid.spacing, axis=1)
        angles = grid.signal_angles
    elif axis == "idler":
        p = _trapezoid(w, dx=grid.signal_grid.spacing, axis=0)
        angles = grid.idler_angles
    else:
        raise ValueError(f"axis must be 'signal' or 'idler', got {axis!r}")
    return _normalized(angles, p, kind="unconditional")


def _normalized(angles, p, kind, fixed_angle=None) -> AngularDistribution:
    dtheta = angles[1] - angles[0]
    norm = float(np.sum(p) * dtheta)
    if norm <= 0.0:
        raise ValueError("distribution has no weight")
    return AngularDistribution(
        angles=angles, p=p / norm, kind=kind, fixed_angle=fixed_angle
    )


def _moments(dist: AngularDistribution) -> tuple[float, float, float]:
    dtheta = dist.angles[1] - dist.angles[0]
    m1 = float(np.sum(dist.angles * dist.p) * dtheta)
    centred = dist.angles - m1
    m2 = float(np.sum(centred**2 * dist.p) * dtheta)
    m3 = float(np.sum(centred**3 * dist.p) * dtheta)
    return m1, m2, m3


def marginal_skewness(dist: AngularDistribution) -> float:
    """Third standardised moment of a 1-D distribution."""
    _, m2, m3 = _moments(dist)
    return m3 / m2**1.5


def _parabolic_peak(angles: np.ndarray, y: np.ndarray) -> float:
    j = int(np.argmax(y))
    if j == 0 or j == len(y) - 1:
        return float(angles[j])
    denom = y[j - 1] - 2.0 * y[j] + y[j + 1]
    if denom == 0.0:
        return float(angles[j])
    shift = 0.5 * (y[j - 1] - y[j + 1]) / denom
    return float(angles[j] + shift * (angles[1] - angles[0]))


def _half_max_angle(dist: AngularDistribution) -> float:
    """Positive angle where the marginal first falls to half its maximum."""
    p = dist.p
    j = int(np.argmax(p))
    half = 0.5 * p[j]
    for k in range(j + 1, len(p)):
        if p[k] < half:
            t = (half - p[k]) / (p[k - 1] - p[k])
            return float(dist.angles[k] + t * (dist.angles[k - 1] - dist.angles[k]))
    return float(dist.angles[-1])


def asymmetry_report(grid: TPAGrid) -> AsymmetryReport:
    """Swap asymmetry, marginal skewness and conditional bend offset.

    Requires a square grid on a symmetric angular range.  The bend offset
    conditions on +-t*, with t* the half-maximum angle of the idler
    marginal, and averages the signed deviations of the two conditional
    peaks from the degenerate ridge; point-symmetric amplitudes give zero.
    """
    ns, ni = grid.values.shape
    if ns != ni:
        raise ValueError("asymmetry metrics need a square grid")
    s, i = grid.signal_grid, grid.idler_grid
    span = s.theta_max - s.theta_min
    if (
        abs(s.theta_min + s.theta_max) > 1e-12 * span
        or abs(i.theta_min + i.theta_max) > 1e-12 * span
    ):
        raise ValueError("asymmetry metrics need a symmetric angular range")
    mag = np.abs(grid.values)
    swap = float(np.linalg.norm(mag - mag.T) / np.linalg.norm(mag))
    marginal = unconditional_distribution(grid, axis="signal")
    skew = marginal_skewness(marginal)
    t_star = _half_max_angle(unconditional_distribution(grid, axis="idler"))
    t_star = min(t_star, grid.idler_grid.theta_max)
    cond_pos = conditional_distribution(grid, t_star)
    cond_neg = conditional_distribution(grid, -t_star)
    peak_pos = _parabolic_peak(cond_pos.angles, cond_pos.p)
    peak_neg = _parabolic_peak(cond_neg.angles, cond_neg.p)
    bend = 0.5 * ((peak_pos - t_star) + (peak_neg + t_star))
    return AsymmetryReport(swap_asym=swap, marginal_skewness=skew, bend_offset=bend)


def schmidt_decompose(grid: TPAGrid, r: int = 8) -> SchmidtSpectrum:
    """Schmidt spectrum of the amplitude via quadrature-weighted SVD.

    Coefficients sum to one; K = 1 / sum(lambda^2) is invariant under any
    rescaling of F.  Mode columns are orthonormal under the grid quadrature
    weight (sum |u|^2 dtheta = 1).
    """
    ds = grid.signal_grid.spacing
    di = grid.idler_grid.spacing
    weighted = grid.values * math.sqrt(ds * di)
    try:
        u, s, vh = np.linalg.svd(weighted, full_matrices=False)
    except np.linalg.LinAlgError as exc:
        raise np.linalg.LinAlgError(
            f"SVD failed on {weighted.shape[0]}x{weighted.shape[1]} amplitude grid: {exc}"
        ) from exc
    total = float(np.sum(s * s))
    if total <= 0.0:
        raise ValueError("amplitude grid is identically zero")
    lambdas = (s * s) / total
    K = 1.0 / float(np.sum(lambdas * lambdas))
    r = max(1, min(r, len(s)))
    modes_s = u[:, :r] / math.sqrt(ds)
    modes_i = vh[:r].T / math.sqrt(di)
    return SchmidtSpectrum(lambdas=lambdas, K=K, modes_signal=modes_s, modes_idler=modes_i)


def double_gauss_fit(grid: TPAGrid, threshold: float = 0.01) -> DoubleGaussFit:
    """Fit |F|^2 to exp[-2a (ts+ti)^2 - 2b (ts-ti)^2] by log-linear regression.

    Only points with |F|^2 above ``threshold`` (relative to the peak) enter
    the fit; fewer than 16 such points raise :class:`FitRegionError`.
    """
    w = grid.intensity()
    peak = float(np.max(w))
    if peak <= 0.0:
        raise FitRegionError("amplitude grid is identically zero")
    w = w / peak
    mask = w > threshold
    n_pts = int(np.count_nonzero(mask))
    if n_pts < 16:
        raise FitRegionError(
            f"only {n_pts} grid points above threshold {threshold:g}, need >= 16"
        )
    ths, thi = np.meshgrid(grid.signal_angles, grid.idler_angles, indexing="ij")
    u = np.square(ths + thi)[mask]
    v = np.square(ths - thi)[mask]
    y = -np.log(w[mask])
    design = np.column_stack([u, v, np.ones_like(u)])
    coef, *_ = np.linalg.lstsq(design, y, rcond=None)
    a = 0.5 * float(coef[0])
    b = 0.5 * float(coef[1])
    model = np.exp(-(2.0 * a * u + 2.0 * b * v + coef[2]))
    data = w[mask]
    residual = float(np.linalg.norm(model - data) / np.linalg.norm(data))
    return DoubleGaussFit(a=a, b=b, residual=residual)

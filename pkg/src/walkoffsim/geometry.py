"""Pump beam and crystal-stack geometry.

Lengths are metres, angles radians.  The longitudinal coordinate ``z`` runs
from 0 at the entrance face of the first slab to the total stack length at
the exit face; the transverse coordinate ``x`` lies in the walk-off plane.
The pump centroid enters at x = 0 and drifts with slope ``sign * tan(theta)``
inside each slab, where ``theta`` is the (shared, non-negative) walk-off
magnitude and ``sign`` the slab's walk-off orientation.  The centroid is
continuous across slab boundaries, so a compensated pair (+1 then -1)
returns the pump to the axis at the exit face.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "PumpBeam",
    "CrystalSlab",
    "CrystalStack",
    "PumpPath",
    "pump_path",
    "pump_centroid",
    "make_standard_stacks",
]

_TWO_SQRT_LN2 = 2.0 * math.sqrt(math.log(2.0))


@dataclass(frozen=True)
class PumpBeam:
    """Monochromatic Gaussian pump.

    ``lambda_p`` is the vacuum wavelength (m) and ``d`` the transverse
    intensity FWHM (m).  ``sigma_x`` is the standard deviation of the
    amplitude profile, d / (2 sqrt(ln 2)).
    """

    lambda_p: float
    d: float

    def __post_init__(self) -> None:
        if not (self.lambda_p > 0.0):
            raise ValueError(f"pump wavelength must be positive, got {self.lambda_p!r}")
        if not (self.d > 0.0):
            raise ValueError(f"pump FWHM must be positive, got {self.d!r}")

    @property
    def sigma_x(self) -> float:
        return self.d / _TWO_SQRT_LN2


@dataclass(frozen=True)
class CrystalSlab:
    """One birefringent slab: physical length (m) and walk-off sign (+1/-1)."""

    length: float
    walkoff_sign: int

    def __post_init__(self) -> None:
        if not (self.length > 0.0):
            raise ValueError(f"slab length must be positive, got {self.length!r}")
        if self.walkoff_sign not in (-1, 1):
            raise ValueError(f"walk-off sign must be +1 or -1, got {self.walkoff_sign!r}")


@dataclass(frozen=True)
class CrystalStack:
    """Ordered slabs sharing one walk-off magnitude ``theta`` (rad, >= 0).

    ``theta = 0`` models the isotropic reference: the pump centroid stays on
    the axis regardless of slab signs.
    """

    slabs: tuple[CrystalSlab, ...]
    theta: float

    def __post_init__(self) -> None:
        if not self.slabs:
            raise ValueError("stack needs at least one slab")
        if not (0.0 <= self.theta < math.pi / 2.0):
            raise ValueError(f"walk-off magnitude {self.theta!r} outside [0, pi/2)")

    @property
    def total_length(self) -> float:
        return sum(slab.length for slab in self.slabs)


@dataclass(frozen=True)
class PumpPath:
    """Piecewise-linear pump centroid: slab entry points and slopes.

    ``breakpoints`` has one (z, x) pair per slab boundary including both
    faces, ``slopes`` one entry per slab.
    """

    breakpoints: tuple[tuple[float, float], ...]
    slopes: tuple[float, ...]


def pump_path(stack: CrystalStack) -> PumpPath:
    """Chain the centroid line through the stack, starting at (0, 0)."""
    tan_theta = math.tan(stack.theta)
    z = 0.0
    x = 0.0
    points = [(z, x)]
    slopes = []
    for slab in stack.slabs:
        slope = slab.walkoff_sign * tan_theta
        slopes.append(slope)
        z = z + slab.length
        x = x + slope * slab.length
        points.append((z, x))
    return PumpPath(breakpoints=tuple(points), slopes=tuple(slopes))


def pump_centroid(stack: CrystalStack, z):
    """Transverse centroid position x_c(z); ``z`` may be scalar or array.

    Raises ValueError when any z lies outside [0, total_length].
    """
    z_arr = np.asarray(z, dtype=float)
    length = stack.total_length
    if np.any(z_arr < 0.0) or np.any(z_arr > length):
        raise ValueError(f"z outside [0, {length:g}] m")
    path = pump_path(stack)
    zs = np.array([p[0] for p in path.breakpoints])
    xs = np.array([p[1] for p in path.breakpoints])
    out = np.interp(z_arr, zs, xs)
    return float(out) if np.isscalar(z) or z_arr.ndim == 0 else out


def make_standard_stacks(L_total: float, theta: float) -> dict[str, CrystalStack]:
    """The four reference configurations sharing total length ``L_total``.

    single_iso     one slab, walk-off switched off (theta = 0)
    single_aniso   one slab, walk-off on
    noncomp        two half-length slabs, same walk-off orientation
    comp           two half-length slabs, opposite orientation
    """
    if not (L_total > 0.0):
        raise ValueError(f"total length must be positive, got {L_total!r}")
    half = L_total / 2.0
    return {
        "single_iso": CrystalStack((CrystalSlab(L_total, +1),), 0.0),
        "single_aniso": CrystalStack((CrystalSlab(L_total, +1),), theta),
        "noncomp": CrystalStack((CrystalSlab(half, +1), CrystalSlab(half, +1)), theta),
        "comp": CrystalStack((CrystalSlab(half, +1), CrystalSlab(half, -1)), theta),
    }

"""Refractive indices and collinear phase matching for uniaxial crystals.

Conventions used throughout this module:

* wavelengths in micrometres (the natural unit of Sellmeier fits),
* angles in radians,
* wavenumbers in rad/m.

The index model is the three-term Sellmeier form

    n(lam)**2 = c0 + c1 / (lam**2 - c2) - c3 * lam**2

with ``lam`` in micrometres and one coefficient set per principal index.
Media are described by small text files (see :func:`load_medium`); BBO is
bundled as the default.

For an extraordinary wave whose wavevector makes an angle ``alpha`` with
the optic axis, the effective index follows the index ellipse

    1 / n_eff(alpha)**2 = cos(alpha)**2 / n_o**2 + sin(alpha)**2 / n_e**2

and the Poynting vector walks off from the wavevector by

    tan(theta) = -(1 / n_eff) * d n_eff / d alpha

which is positive on (0, pi/2) for a negative uniaxial medium (n_e < n_o):
energy flows away from the optic axis.

Collinear frequency-degenerate type-I phase matching puts the pump on the
extraordinary index surface and both down-converted photons on the ordinary
one, so the matching condition reads

    n_eff(lambda_p, alpha) = n_o(2 * lambda_p).
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

__all__ = [
    "DispersionRangeError",
    "MediumFileError",
    "PhaseMatchingError",
    "UniaxialMedium",
    "PhaseMatchingSolution",
    "index_ordinary",
    "index_extraordinary_principal",
    "index_extraordinary_effective",
    "walk_off_angle",
    "phase_matching_angle",
    "phase_matching_solution",
    "load_medium",
    "parse_medium_text",
    "bbo",
]

_ALPHA_LO = math.radians(1.0)
_ALPHA_HI = math.radians(89.0)


class DispersionRangeError(ValueError):
    """Wavelength outside the validity range of a medium's Sellmeier fit."""


class PhaseMatchingError(ValueError):
    """No collinear degenerate type-I solution inside the search bracket."""


class MediumFileError(ValueError):
    """Malformed medium data file."""


@dataclass(frozen=True)
class UniaxialMedium:
    """Sellmeier description of a uniaxial crystal.

    ``sellmeier_o`` and ``sellmeier_e`` hold the coefficients (c0, c1, c2, c3)
    of the ordinary and principal extraordinary index; ``valid_range`` is the
    wavelength interval (micrometres) over which the fit may be evaluated.
    """

    name: str
    sellmeier_o: tuple[float, float, float, float]
    sellmeier_e: tuple[float, float, float, float]
    valid_range: tuple[float, float]


@dataclass(frozen=True)
class PhaseMatchingSolution:
    """Solved collinear degenerate type-I geometry for one pump wavelength.

    ``alpha`` is the angle between pump wavevector and optic axis,
    ``theta_walkoff`` the pump walk-off angle, and ``k_p``, ``k_s``, ``k_i``
    the collinear wavenumbers (rad/m) of pump, signal and idler.  Signal and
    idler are degenerate at twice the pump wavelength, so ``k_s == k_i``.
    """

    alpha: float
    theta_walkoff: float
    k_p: float
    k_s: float
    k_i: float
    lambda_p_um: float


def _sellmeier_index(coeff: tuple[float, float, float, float], lam_um: float) -> float:
    c0, c1, c2, c3 = coeff
    lam2 = lam_um * lam_um
    n2 = c0 + c1 / (lam2 - c2) - c3 * lam2
    if n2 <= 0.0:
        raise DispersionRangeError(f"Sellmeier form non-physical at {lam_um:g} um")
    return math.sqrt(n2)


def _check_wavelength(medium: UniaxialMedium, lam_um: float) -> None:
    lo, hi = medium.valid_range
    if not (lo <= lam_um <= hi):
        raise DispersionRangeError(
            f"wavelength {lam_um:g} um outside {medium.name} validity range "
            f"[{lo:g}, {hi:g}] um"
        )


def _check_alpha(alpha: float) -> None:
    if not (0.0 <= alpha <= math.pi / 2.0):
        raise ValueError(f"alpha = {alpha:g} rad outside [0, pi/2]")


def index_ordinary(medium: UniaxialMedium, lam_um: float) -> float:
    """Ordinary refractive index n_o at ``lam_um`` micrometres."""
    _check_wavelength(medium, lam_um)
    return _sellmeier_index(medium.sellmeier_o, lam_um)


def index_extraordinary_principal(medium: UniaxialMedium, lam_um: float) -> float:
    """Principal extraordinary index n_e (propagation normal to the axis)."""
    _check_wavelength(medium, lam_um)
    return _sellmeier_index(medium.sellmeier_e, lam_um)


def index_extraordinary_effective(
    medium: UniaxialMedium, lam_um: float, alpha: float
) -> float:
    """Effective extraordinary index at angle ``alpha`` to the optic axis.

    Follows the index ellipse between n_o (alpha = 0) and the principal n_e
    (alpha = pi/2); monotone in between.
    """
    _check_wavelength(medium, lam_um)
    _check_alpha(alpha)
    n_o = _sellmeier_index(medium.sellmeier_o, lam_um)
    n_e = _sellmeier_index(medium.sellmeier_e, lam_um)
    cos_a = math.cos(alpha)
    sin_a = math.sin(alpha)
    inv_n2 = (cos_a * cos_a) / (n_o * n_o) + (sin_a * sin_a) / (n_e * n_e)
    return 1.0 / math.sqrt(inv_n2)


def walk_off_angle(medium: UniaxialMedium, lam_um: float, alpha: float) -> float:
    """Walk-off angle theta of an extraordinary wave at angle ``alpha``.

    Analytic derivative of the index ellipse:

        tan(theta) = -(1 / n_eff) * d n_eff / d alpha
                   = 0.5 * n_eff**2 * sin(2 alpha) * (1/n_e**2 - 1/n_o**2)

    Zero at alpha = 0 and pi/2; positive in between for negative uniaxial
    media.
    """
    _check_wavelength(medium, lam_um)
    _check_alpha(alpha)
    n_o = _sellmeier_index(medium.sellmeier_o, lam_um)
    n_e = _sellmeier_index(medium.sellmeier_e, lam_um)
    n_eff = index_extraordinary_effective(medium, lam_um, alpha)
    tan_theta = (
        0.5 * n_eff * n_eff * math.sin(2.0 * alpha) * (1.0 / (n_e * n_e) - 1.0 / (n_o * n_o))
    )
    return math.atan(tan_theta)


def phase_matching_angle(
    medium: UniaxialMedium,
    lambda_p_um: float,
    f_tol: float = 1e-14,
    max_iter: int = 200,
) -> float:
    """Optic-axis angle alpha solving n_eff(lambda_p, alpha) = n_o(2 lambda_p).

    Bisection on the fixed bracket (1 deg, 89 deg).  The index mismatch
    f(alpha) is driven below ``f_tol`` (index units); the residual wavenumber
    mismatch is then below roughly ``2 pi f_tol / lambda_p``.  Raises
    :class:`PhaseMatchingError` when the bracket does not straddle a root.
    """
    _check_wavelength(medium, lambda_p_um)
    n_target = index_ordinary(medium, 2.0 * lambda_p_um)

    def f(alpha: float) -> float:
        return index_extraordinary_effective(medium, lambda_p_um, alpha) - n_target

    a, b = _ALPHA_LO, _ALPHA_HI
    fa, fb = f(a), f(b)
    if fa == 0.0:
        return a
    if fb == 0.0:
        return b
    if fa * fb > 0.0:
        raise PhaseMatchingError(
            f"{medium.name}: no type-I degenerate solution for pump "
            f"{lambda_p_um:g} um in (1 deg, 89 deg)"
        )
    mid = 0.5 * (a + b)
    for _ in range(max_iter):
        mid = 0.5 * (a + b)
        fm = f(mid)
        if abs(fm) <= f_tol or mid == a or mid == b:
            return mid
        if fa * fm < 0.0:
            b, fb = mid, fm
        else:
            a, fa = mid, fm
    return mid


def phase_matching_solution(
    medium: UniaxialMedium, lambda_p_um: float
) -> PhaseMatchingSolution:
    """Solve the collinear degenerate type-I geometry for one pump line.

    Packs the matching angle, the pump walk-off angle and the collinear
    wavenumbers (rad/m) of pump and twin photons.
    """
    alpha = phase_matching_angle(medium, lambda_p_um)
    theta = walk_off_angle(medium, lambda_p_um, alpha)
    lambda_s_um = 2.0 * lambda_p_um
    n_p = index_extraordinary_effective(medium, lambda_p_um, alpha)
    n_s = index_ordinary(medium, lambda_s_um)
    k_p = 2.0 * math.pi * n_p / (lambda_p_um * 1e-6)
    k_s = 2.0 * math.pi * n_s / (lambda_s_um * 1e-6)
    return PhaseMatchingSolution(
        alpha=alpha,
        theta_walkoff=theta,
        k_p=k_p,
        k_s=k_s,
        k_i=k_s,
        lambda_p_um=lambda_p_um,
    )


def parse_medium_text(text: str, source: str = "<string>") -> UniaxialMedium:
    """Parse the key = value medium format documented in the bundled file.

    Recognised keys: ``name``, ``sellmeier_o`` (4 floats), ``sellmeier_e``
    (4 floats), ``range_um`` (2 floats).  ``#`` starts a comment.  Unknown or
    repeated keys and malformed values raise :class:`MediumFileError` with
    the offending line number.
    """
    fields: dict[str, object] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise MediumFileError(f"{source}:{lineno}: expected 'key = value'")
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if key in fields:
            raise MediumFileError(f"{source}:{lineno}: repeated key '{key}'")
        if key == "name":
            fields[key] = value
        elif key in ("sellmeier_o", "sellmeier_e", "range_um"):
            want = 2 if key == "range_um" else 4
            try:
                numbers = tuple(float(tok) for tok in value.split())
            except ValueError as exc:
                raise MediumFileError(f"{source}:{lineno}: {exc}") from None
            if len(numbers) != want:
                raise MediumFileError(
                    f"{source}:{lineno}: '{key}' needs {want} numbers, got {len(numbers)}"
                )
            fields[key] = numbers
        else:
            raise MediumFileError(f"{source}:{lineno}: unknown key '{key}'")
    missing = {"name", "sellmeier_o", "sellmeier_e", "range_um"} - fields.keys()
    if missing:
        raise MediumFileError(f"{source}: missing keys: {', '.join(sorted(missing))}")
    lo, hi = fields["range_um"]  # type: ignore[misc]
    if not (0.0 < lo < hi):
        raise MediumFileError(f"{source}: invalid range_um {lo:g} {hi:g}")
    medium = UniaxialMedium(
        name=fields["name"],  # type: ignore[arg-type]
        sellmeier_o=fields["sellmeier_o"],  # type: ignore[arg-type]
        sellmeier_e=fields["sellmeier_e"],  # type: ignore[arg-type]
        valid_range=(lo, hi),
    )
    _validate_negative_uniaxial(medium, source)
    return medium


def _validate_negative_uniaxial(medium: UniaxialMedium, source: str) -> None:
    # Sampled invariant: n_o > n_e principal and both physical over the range.
    lo, hi = medium.valid_range
    for i in range(65):
        lam = lo + (hi - lo) * i / 64.0
        n_o = _sellmeier_index(medium.sellmeier_o, lam)
        n_e = _sellmeier_index(medium.sellmeier_e, lam)
        if not (n_o > n_e > 1.0):
            raise MediumFileError(
                f"{source}: not negative uniaxial at {lam:g} um "
                f"(n_o = {n_o:.6f}, n_e = {n_e:.6f})"
            )


def load_medium(path: str | Path) -> UniaxialMedium:
    """Load a medium description from a data file."""
    p = Path(path)
    return parse_medium_text(p.read_text(encoding="utf-8"), source=str(p))


@functools.lru_cache(maxsize=1)
def bbo() -> UniaxialMedium:
    """The bundled BBO medium."""
    text = resources.files("walkoffsim").joinpath("data/bbo.txt").read_text("utf-8")
    return parse_medium_text(text, source="data/bbo.txt")

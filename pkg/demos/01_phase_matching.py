"""Where does type-I phase matching happen in BBO, and what does it cost?

Walks through the dispersion layer: ordinary and extraordinary index
curves, the effective index of the tilted pump, the optic-axis angle that
matches a 354.7 nm extraordinary pump to ordinary photons at 709.4 nm,
and the transverse walk-off that the tilt buys us.

Saves two figures into demos/out/ when matplotlib is around; prints the
numbers either way.
"""

import math
import os

import numpy as np

import walkoffsim as ws

try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except ImportError:  # pragma: no cover - plotting is optional sugar
    plt = None

OUT = os.path.join(os.path.dirname(os.path.abspath(__file__)), "out")

LAMBDA_P = 0.3547  # pump wavelength, micrometres
LAMBDA_S = 2.0 * LAMBDA_P


def main():
    os.makedirs(OUT, exist_ok=True)
    medium = ws.bbo()

    n_o_p = ws.index_ordinary(medium, LAMBDA_P)
    n_e_p = ws.index_extraordinary_principal(medium, LAMBDA_P)
    n_o_s = ws.index_ordinary(medium, LAMBDA_S)

    print("BBO indices")
    print(f"  pump   {LAMBDA_P:.4f} um   n_o = {n_o_p:.9f}   n_e = {n_e_p:.9f}")
    print(f"  signal {LAMBDA_S:.4f} um   n_o = {n_o_s:.9f}")
    print()

    # A collinear extraordinary pump sees an angle-dependent index that
    # slides from n_o (axis along propagation) down to n_e (axis across).
    # Type-I matching asks for n_eff(pump) == n_o(signal), which sits
    # somewhere on that slide because n_o_s lands between the two.
    pm = ws.phase_matching_solution(medium, LAMBDA_P)
    print("phase matching")
    print(f"  optic axis angle alpha = {pm.alpha:.9f} rad = {math.degrees(pm.alpha):.4f} deg")
    print(f"  pump walk-off    theta = {pm.theta_walkoff:.9f} rad = {math.degrees(pm.theta_walkoff):.4f} deg")
    print(f"  k_p = {pm.k_p:.6e} rad/m")
    print(f"  k_s = {pm.k_s:.6e} rad/m  (k_p - 2 k_s = {pm.k_p - 2.0 * pm.k_s:.3e})")
    print()

    # Sanity: the residual of the matching condition itself.
    n_eff = ws.index_extraordinary_effective(medium, LAMBDA_P, pm.alpha)
    print(f"  n_eff(alpha) - n_o(2 lambda_p) = {n_eff - n_o_s:+.3e}")
    print()

    # Over a 6 mm crystal the walk-off displaces the pump centroid by
    # roughly half a millimetre, which is enormous next to a 70 um beam.
    L = 6e-3
    print(f"  transverse displacement over {L * 1e3:.0f} mm: "
          f"{math.tan(pm.theta_walkoff) * L * 1e6:.1f} um")

    if plt is None:
        print("matplotlib not installed, skipping figures")
        return

    lam = np.linspace(0.25, 1.2, 400)
    n_o = np.array([ws.index_ordinary(medium, x) for x in lam])
    n_e = np.array([ws.index_extraordinary_principal(medium, x) for x in lam])

    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    ax.plot(lam, n_o, label="n_o")
    ax.plot(lam, n_e, label="n_e")
    ax.axhline(n_o_s, color="gray", lw=0.8, ls=":")
    ax.plot([LAMBDA_P], [n_eff], "ko", ms=5,
            label=f"pump n_eff at alpha = {math.degrees(pm.alpha):.1f} deg")
    ax.plot([LAMBDA_S], [n_o_s], "ks", ms=5, label="signal n_o")
    ax.set_xlabel("wavelength (um)")
    ax.set_ylabel("refractive index")
    ax.set_title("BBO dispersion and the type-I matching point")
    ax.legend(fontsize=8)
    fig.tight_layout()
    path = os.path.join(OUT, "01_indices.png")
    fig.savefig(path, dpi=130)
    print(f"wrote {path}")

    alphas = np.linspace(0.05, 1.52, 300)
    neffs = np.array([ws.index_extraordinary_effective(medium, LAMBDA_P, a) for a in alphas])
    walks = np.array([ws.walk_off_angle(medium, LAMBDA_P, a) for a in alphas])

    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(9.0, 3.6))
    ax1.plot(alphas, neffs)
    ax1.axhline(n_o_s, color="gray", lw=0.8, ls=":")
    ax1.axvline(pm.alpha, color="C3", lw=0.8)
    ax1.set_xlabel("optic axis angle (rad)")
    ax1.set_ylabel("pump n_eff")
    ax1.set_title("effective index vs tilt")
    ax2.plot(alphas, 1e3 * walks)
    ax2.axvline(pm.alpha, color="C3", lw=0.8)
    ax2.set_xlabel("optic axis angle (rad)")
    ax2.set_ylabel("walk-off (mrad)")
    ax2.set_title("walk-off vs tilt")
    fig.tight_layout()
    path = os.path.join(OUT, "01_walkoff.png")
    fig.savefig(path, dpi=130)
    print(f"wrote {path}")


if __name__ == "__main__":
    main()

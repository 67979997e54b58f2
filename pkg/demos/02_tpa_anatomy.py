"""Anatomy of the two-photon amplitude of one crystal slab.

Two ingredients shape |F(theta_s, theta_i)|: a Gaussian factor from the
pump width, which pins the amplitude to the theta_s = theta_i diagonal
(signal and idler exit on opposite sides, so equal labelled angles mean
opposite-side emission with balanced transverse momenta), and a sinc
factor from the crystal length, which chirps along that ridge. Without
walk-off the sinc argument is even in the angles and the amplitude is
real and symmetric. Walk-off tilts the sinc argument, which shears the
ridge pattern to one side.

Run it to get side-by-side maps and the numbers behind them.
"""

import os

import numpy as np

import walkoffsim as ws

try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except ImportError:
    plt = None

OUT = os.path.join(os.path.dirname(os.path.abspath(__file__)), "out")


def describe(name, grid):
    rep = ws.asymmetry_report(grid)
    print(f"{name:12s} swap_asym = {rep.swap_asym:.4f}   "
          f"skewness = {rep.marginal_skewness:+.4f}   "
          f"bend = {rep.bend_offset * 1e3:+.4f} mrad")


def main():
    os.makedirs(OUT, exist_ok=True)
    medium = ws.bbo()
    pm = ws.phase_matching_solution(medium, 0.3547)
    pump = ws.PumpBeam(lambda_p=0.3547e-6, d=70e-6)
    stacks = ws.make_standard_stacks(6e-3, pm.theta_walkoff)

    # Same optical length, with and without the pump walking sideways.
    iso = stacks["single_iso"]
    aniso = stacks["single_aniso"]

    spec = ws.auto_grid_spec(aniso, pump, pm, n=161)
    print(f"grid: +/- {spec.theta_max * 1e3:.2f} mrad, {spec.n} points per axis")
    g_iso = ws.evaluate_grid(iso, pump, pm, spec)
    g_aniso = ws.evaluate_grid(aniso, pump, pm, spec)

    # The walk-off-free amplitude is real, and stays put under swapping
    # the photons. The sheared one does neither.
    print(f"iso:   max |Im F| / max |F| = "
          f"{np.abs(g_iso.values.imag).max() / np.abs(g_iso.values).max():.2e}")
    print(f"aniso: max |Im F| / max |F| = "
          f"{np.abs(g_aniso.values.imag).max() / np.abs(g_aniso.values).max():.2e}")
    describe("isotropic", g_iso)
    describe("walk-off", g_aniso)

    # Mismatch parity is what the swap metric rests on: the longitudinal
    # mismatch is even under (s,i) exchange, the transverse one is odd.
    m1 = ws.mismatches(0.011, -0.004, pm)
    m2 = ws.mismatches(-0.004, 0.011, pm)
    print(f"mismatch parity check: d_par {m1.d_par:+.6e} vs {m2.d_par:+.6e}, "
          f"d_perp {m1.d_perp:+.6e} vs {m2.d_perp:+.6e}")

    if plt is None:
        print("matplotlib not installed, skipping figures")
        return

    extent = [spec.theta_min * 1e3, spec.theta_max * 1e3] * 2
    fig, axes = plt.subplots(1, 2, figsize=(9.2, 4.2), sharey=True)
    for ax, g, title in ((axes[0], g_iso, "no walk-off"),
                         (axes[1], g_aniso, "with walk-off")):
        ax.imshow(np.abs(g.values).T, origin="lower", extent=extent,
                  cmap="inferno", aspect="equal")
        ax.set_xlabel("signal angle (mrad)")
        ax.set_title(title)
    axes[0].set_ylabel("idler angle (mrad)")
    fig.suptitle("|F| of a single 6 mm slab")
    fig.tight_layout()
    path = os.path.join(OUT, "02_single_slab.png")
    fig.savefig(path, dpi=130)
    print(f"wrote {path}")

    # Two cuts tell the whole story. Along the ridge (theta_s = theta_i)
    # the transverse mismatch is exactly zero and the walk-off term rides
    # on that mismatch, so the tilted slab only picks up the constant
    # geometric projection 1/cos(theta): the ridge profile is the chirped
    # sinc and nothing else. Across the ridge, at fixed idler angle,
    # walk-off drags the conditional peak sideways.
    t = g_aniso.signal_angles
    ridge_iso = np.abs([ws.tpa_stack(x, x, pump, iso, pm) for x in t])
    ridge_aniso = np.abs([ws.tpa_stack(x, x, pump, aniso, pm) for x in t])
    cos_t = np.cos(pm.theta_walkoff)
    print(f"ridge profiles, scaled by cos(theta) = {cos_t:.5f}: "
          f"max |difference| = {np.abs(ridge_iso - cos_t * ridge_aniso).max():.2e} "
          f"(peak {ridge_iso.max():.2e})")

    cond_iso = ws.conditional_distribution(g_iso, 0.010)
    cond_aniso = ws.conditional_distribution(g_aniso, 0.010)

    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(9.2, 3.8))
    ax1.plot(t * 1e3, ridge_iso / ridge_iso.max(), label="no walk-off")
    ax1.plot(t * 1e3, ridge_aniso / ridge_aniso.max(), "--", label="with walk-off")
    ax1.set_xlabel("theta_s = theta_i (mrad)")
    ax1.set_ylabel("|F| on the ridge")
    ax1.legend(fontsize=8)
    ax2.plot(cond_iso.angles * 1e3, cond_iso.p, label="no walk-off")
    ax2.plot(cond_aniso.angles * 1e3, cond_aniso.p, label="with walk-off")
    ax2.axvline(10.0, color="gray", lw=0.8, ls=":")
    ax2.set_xlabel("signal angle (mrad)")
    ax2.set_ylabel("p(theta_s | theta_i = 10 mrad)")
    ax2.legend(fontsize=8)
    fig.tight_layout()
    path = os.path.join(OUT, "02_cuts.png")
    fig.savefig(path, dpi=130)
    print(f"wrote {path}")


if __name__ == "__main__":
    main()

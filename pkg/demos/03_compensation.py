"""The two-crystal walk-off compensation scheme, end to end.

Compares four stacks of equal total length: one slab without walk-off,
one slab with it, two co-oriented slabs (which must reproduce the single
slab exactly), and two slabs with opposite walk-off. Flipping the second
slab retraces the pump back to the axis, and the two-photon amplitude
regains the exchange symmetry the single crystal lost.

Usage:
    python3 demos/03_compensation.py [--n 161] [--fwhm-um 70] [--length-mm 6]
"""

import argparse
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
ORDER = ("single_iso", "single_aniso", "noncomp", "comp")


def half_max_angle(dist):
    """Largest angle at which the marginal still reaches half its peak."""
    p = dist.p
    t = dist.angles
    half = 0.5 * p.max()
    above = np.nonzero(p >= half)[0]
    j = above[-1]
    if j + 1 >= t.size:
        return t[-1]
    # linear interpolation between the last sample above and the first below
    frac = (p[j] - half) / (p[j] - p[j + 1])
    return t[j] + frac * (t[j + 1] - t[j])


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=161, help="grid points per axis")
    ap.add_argument("--fwhm-um", type=float, default=70.0, help="pump intensity FWHM")
    ap.add_argument("--length-mm", type=float, default=6.0, help="total crystal length")
    args = ap.parse_args()

    os.makedirs(OUT, exist_ok=True)
    medium = ws.bbo()
    pm = ws.phase_matching_solution(medium, 0.3547)
    pump = ws.PumpBeam(lambda_p=0.3547e-6, d=args.fwhm_um * 1e-6)
    stacks = ws.make_standard_stacks(args.length_mm * 1e-3, pm.theta_walkoff)

    spec = ws.auto_grid_spec(stacks["single_aniso"], pump, pm, n=args.n)
    grids = {name: ws.evaluate_grid(stacks[name], pump, pm, spec) for name in ORDER}

    print(f"{'stack':14s} {'swap_asym':>10s} {'skewness':>10s} {'bend (mrad)':>12s}")
    for name in ORDER:
        rep = ws.asymmetry_report(grids[name])
        print(f"{name:14s} {rep.swap_asym:10.4f} {rep.marginal_skewness:+10.4f} "
              f"{rep.bend_offset * 1e3:+12.5f}")
    print()

    # noncomp is the single anisotropic crystal cut in half and reassembled,
    # so the amplitudes have to agree to numerical noise.
    delta = np.abs(grids["noncomp"].values - grids["single_aniso"].values).max()
    print(f"noncomp vs single_aniso: max |difference| = {delta:.2e} (normalised units)")

    # Where the pump actually goes.
    for name in ("single_aniso", "comp"):
        path = ws.pump_path(stacks[name])
        pts = ", ".join(f"({z * 1e3:.1f} mm, {x * 1e6:+.1f} um)"
                        for z, x in path.breakpoints)
        print(f"pump centroid through {name}: {pts}")

    if plt is None:
        print("matplotlib not installed, skipping figures")
        return

    extent = [spec.theta_min * 1e3, spec.theta_max * 1e3] * 2
    fig, axes = plt.subplots(2, 2, figsize=(8.6, 8.0), sharex=True, sharey=True)
    for ax, name in zip(axes.flat, ORDER):
        ax.imshow(np.abs(grids[name].values).T, origin="lower", extent=extent,
                  cmap="inferno", aspect="equal")
        ax.plot(extent[:2], extent[:2], color="w", lw=0.4, alpha=0.4)
        ax.set_title(name, fontsize=10)
    for ax in axes[1]:
        ax.set_xlabel("signal angle (mrad)")
    for ax in axes[:, 0]:
        ax.set_ylabel("idler angle (mrad)")
    fig.suptitle("|F| for the four standard stacks")
    fig.tight_layout()
    path = os.path.join(OUT, "03_stacks.png")
    fig.savefig(path, dpi=130)
    print(f"wrote {path}")

    # Marginals: walk-off skews the single-crystal distribution, the
    # compensated pair hands back an even one.
    fig, ax = plt.subplots(figsize=(6.4, 3.8))
    for name in ("single_iso", "single_aniso", "comp"):
        d = ws.unconditional_distribution(grids[name], axis="idler")
        ax.plot(d.angles * 1e3, d.p, label=name)
    ax.set_xlabel("idler angle (mrad)")
    ax.set_ylabel("marginal density (1/rad)")
    ax.legend(fontsize=8)
    fig.tight_layout()
    path = os.path.join(OUT, "03_marginals.png")
    fig.savefig(path, dpi=130)
    print(f"wrote {path}")

    # Conditional slices at -t*, 0, +t*, with t* the half-maximum angle of
    # the idler marginal. The single crystal bends: the conditional peak at
    # +t* overshoots and the one at -t* undershoots. Compensation removes
    # the bend but keeps the conditional width.
    t_star = half_max_angle(ws.unconditional_distribution(grids["single_aniso"], axis="idler"))
    print(f"t* = {t_star * 1e3:.3f} mrad")
    fig, axes = plt.subplots(1, 2, figsize=(9.2, 3.8), sharey=True)
    for ax, name in ((axes[0], "single_aniso"), (axes[1], "comp")):
        for ti, style in ((-t_star, "C0-"), (0.0, "C1-"), (t_star, "C2-")):
            c = ws.conditional_distribution(grids[name], ti)
            ax.plot(c.angles * 1e3, c.p, style, label=f"theta_i = {ti * 1e3:+.1f} mrad")
            ax.axvline(ti * 1e3, color="gray", lw=0.5, ls=":")
        ax.set_title(name, fontsize=10)
        ax.set_xlabel("signal angle (mrad)")
    axes[0].set_ylabel("conditional density (1/rad)")
    axes[0].legend(fontsize=7)
    fig.tight_layout()
    path = os.path.join(OUT, "03_conditionals.png")
    fig.savefig(path, dpi=130)
    print(f"wrote {path}")


if __name__ == "__main__":
    main()

"""Closed-form amplitudes against frozen values, identities and the oracle."""

import math

import numpy as np
import pytest

import walkoffsim as ws

import fixtures as fx


def _scale(pump, L, theta=0.0):
    # absolute magnitude of the integral prefactor, for relative comparisons
    return math.sqrt(2.0 * math.pi) * pump.sigma_x * L / math.cos(theta)


def test_mismatches_frozen_values(pm):
    m = ws.mismatches(0.02, 0.01, pm)
    assert m.d_par == pytest.approx(fx.D_PAR_EXAMPLE, rel=1e-12)
    assert m.d_perp == pytest.approx(fx.D_PERP_EXAMPLE, rel=1e-12)


def test_mismatch_parity_under_swap(pm):
    rng = np.random.default_rng(3)
    for _ in range(10):
        a, b = rng.uniform(-0.04, 0.04, size=2)
        m_ab = ws.mismatches(a, b, pm)
        m_ba = ws.mismatches(b, a, pm)
        assert m_ab.d_par == m_ba.d_par
        assert m_ab.d_perp == -m_ba.d_perp


def test_mismatch_at_origin_is_phase_matched(pm):
    m = ws.mismatches(0.0, 0.0, pm)
    assert m.d_perp == 0.0
    assert abs(m.d_par) < 1e-6  # rad/m; residual of the matching solve


def test_sinc_basics():
    assert ws.sinc(0.0) == 1.0
    assert abs(ws.sinc(math.pi)) < 1e-15
    x = np.linspace(-30.0, 30.0, 301)
    np.testing.assert_allclose(ws.sinc(x), np.sinc(x / np.pi), rtol=1e-13, atol=1e-16)
    # series branch for small arguments
    assert ws.sinc(1e-9) == pytest.approx(1.0, abs=1e-17)


def test_xi_effective_sign_split(pm):
    m = ws.mismatches(0.012, -0.004, pm)
    plus = ws.xi_effective(m, 0.074, sign=1)
    minus = ws.xi_effective(m, 0.074, sign=-1)
    assert plus + minus == pytest.approx(2.0 * m.d_par, rel=1e-14)
    assert minus - plus == pytest.approx(
        2.0 * math.tan(0.074) * m.d_perp, rel=1e-14
    )


def test_closed_form_probe_values(pump, pm, stacks):
    probes = {
        "single_iso": fx.F_PROBE_SINGLE_ISO,
        "single_aniso": fx.F_PROBE_SINGLE_ANISO,
        "noncomp": fx.F_PROBE_NONCOMP,
        "comp": fx.F_PROBE_COMP,
    }
    for name, expected in probes.items():
        f = ws.tpa_stack(0.015, 0.013, pump, stacks[name], pm)
        assert f.real == pytest.approx(expected.real, rel=1e-12)
        assert f.imag == pytest.approx(expected.imag, rel=1e-12, abs=1e-22)


def test_isotropic_single_is_real(pump, pm):
    rng = np.random.default_rng(11)
    for _ in range(8):
        a, b = rng.uniform(-0.03, 0.03, size=2)
        f = ws.tpa_isotropic_single(a, b, pump, fx.L_TOTAL_M, pm)
        assert f.imag == 0.0


def test_stack_reduces_to_isotropic_bitwise(pump, pm, stacks):
    ts = np.linspace(-0.03, 0.03, 17)
    grid_s, grid_i = ts[:, None], ts[None, :]
    via_stack = ws.tpa_stack(grid_s, grid_i, pump, stacks["single_iso"], pm)
    direct = ws.tpa_isotropic_single(grid_s, grid_i, pump, fx.L_TOTAL_M, pm)
    assert np.array_equal(via_stack, direct)


def test_two_uncompensated_halves_equal_one_crystal(pump, pm, stacks):
    # sinc(w) cos(w) = sinc(2w) makes the split exact, not approximate
    rng = np.random.default_rng(5)
    scale = _scale(pump, fx.L_TOTAL_M, stacks["single_aniso"].theta)
    for _ in range(12):
        a, b = rng.uniform(-0.04, 0.04, size=2)
        f1 = ws.tpa_stack(a, b, pump, stacks["single_aniso"], pm)
        f2 = ws.tpa_stack(a, b, pump, stacks["noncomp"], pm)
        assert abs(f1 - f2) < 1e-12 * scale


def test_compensated_magnitude_symmetries(pump, pm, stacks):
    rng = np.random.default_rng(17)
    scale = _scale(pump, fx.L_TOTAL_M, stacks["comp"].theta)
    for _ in range(12):
        a, b = rng.uniform(-0.04, 0.04, size=2)
        f = ws.tpa_stack(a, b, pump, stacks["comp"], pm)
        f_swap = ws.tpa_stack(b, a, pump, stacks["comp"], pm)
        f_flip = ws.tpa_stack(-a, -b, pump, stacks["comp"], pm)
        assert abs(abs(f) - abs(f_swap)) < 1e-13 * scale
        assert abs(abs(f) - abs(f_flip)) < 1e-13 * scale


def test_single_crystal_is_not_swap_symmetric(pump, pm, stacks):
    # the walk-off asymmetry the compensation scheme removes must exist first;
    # the grid has to resolve the narrow anti-diagonal band to see it
    ts = np.linspace(-0.03, 0.03, 81)
    F = np.abs(ws.tpa_stack(ts[:, None], ts[None, :], pump, stacks["single_aniso"], pm))
    assert np.linalg.norm(F - F.T) > 0.5 * np.linalg.norm(F)


def test_same_side_pairs_are_suppressed(pump, pm, stacks):
    scale = _scale(pump, fx.L_TOTAL_M, stacks["single_aniso"].theta)
    f = ws.tpa_stack(0.015, -0.015, pump, stacks["single_aniso"], pm)
    assert abs(f) < 1e-40 * scale


def test_array_broadcasting_shapes(pump, pm, stacks):
    ts = np.linspace(-0.02, 0.02, 7)
    ti = np.linspace(-0.02, 0.02, 5)
    out = ws.tpa_stack(ts[:, None], ti[None, :], pump, stacks["comp"], pm)
    assert out.shape == (7, 5)
    assert np.all(np.isfinite(out.real)) and np.all(np.isfinite(out.imag))


def test_scalar_inputs_return_python_complex(pump, pm, stacks):
    f = ws.tpa_stack(0.01, 0.01, pump, stacks["comp"], pm)
    assert isinstance(f, complex)


def test_oracle_matches_closed_form_at_random_points(pump, pm, stacks):
    rng = np.random.default_rng(29)
    pts_s = rng.uniform(-0.03, 0.03, size=6)
    pts_i = rng.uniform(-0.03, 0.03, size=6)
    for name in ("single_aniso", "comp"):
        stack = stacks[name]
        scale = _scale(pump, fx.L_TOTAL_M, stack.theta)
        closed = ws.tpa_stack(pts_s, pts_i, pump, stack, pm)
        oracle = ws.tpa_quadrature_oracle(pts_s, pts_i, pump, stack, pm)
        assert np.max(np.abs(closed - oracle)) < 1e-7 * scale


def test_oracle_single_slab_with_offsets(pump, pm):
    # entrance anchored at a nonzero entry point, negative walk-off sign
    slab = ws.CrystalSlab(2e-3, -1)
    theta = 0.074
    scale = _scale(pump, slab.length, theta)
    closed = ws.tpa_slab(0.011, 0.008, pump, slab, 1e-3, 2e-5, pm, theta)
    oracle = ws.oracle_slab_integral(0.011, 0.008, pump, slab, 1e-3, 2e-5, pm, theta)
    assert abs(closed - oracle) < 1e-7 * scale


def test_oracle_reports_stats(pump, pm, stacks):
    values, stats = ws.quadrature_oracle_with_stats(
        0.01, 0.009, pump, stacks["comp"], pm
    )
    assert stats.z_panels >= 2
    assert stats.x_nodes >= 8
    assert stats.refinements >= 0
    assert stats.max_delta <= stats.tol_abs


def test_oracle_convergence_failure_raises(pump, pm, stacks):
    quad = ws.QuadratureSpec(z_panels=8, x_nodes=64, tol=1e-18, max_refinements=0)
    with pytest.raises(ws.OracleConvergenceError) as err:
        ws.tpa_quadrature_oracle(0.01, 0.005, pump, stacks["single_aniso"], pm, quad)
    assert err.value.max_delta > err.value.tol_abs

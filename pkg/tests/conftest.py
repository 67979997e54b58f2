"""Shared session fixtures: the reference configuration used throughout."""

import pytest

import walkoffsim as ws

import fixtures as fx


@pytest.fixture(scope="session")
def medium():
    return ws.bbo()


@pytest.fixture(scope="session")
def pm(medium):
    return ws.phase_matching_solution(medium, fx.LAMBDA_P_UM)


@pytest.fixture(scope="session")
def pump():
    return ws.PumpBeam(lambda_p=fx.LAMBDA_P_UM * 1e-6, d=fx.PUMP_FWHM_M)


@pytest.fixture(scope="session")
def stacks(pm):
    return ws.make_standard_stacks(fx.L_TOTAL_M, pm.theta_walkoff)


@pytest.fixture(scope="session")
def ref_spec():
    return ws.GridSpec(-fx.GRID_HALF_SPAN, fx.GRID_HALF_SPAN, fx.GRID_N)


@pytest.fixture(scope="session")
def ref_grids(stacks, pump, pm, ref_spec):
    return {
        name: ws.evaluate_grid(stack, pump, pm, ref_spec)
        for name, stack in stacks.items()
    }

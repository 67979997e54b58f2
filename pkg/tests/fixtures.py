"""Frozen expected values for the regression and acceptance tests.

Every number below was computed once with the package itself at the
reference configuration (bundled BBO data, 354.7 nm pump, 70 um beam
FWHM, 6 mm total crystal length) and then pinned.  Grid-dependent
metrics were measured on the reference grid stated below; tests must
rebuild exactly that grid before comparing.  None of these numbers were
typed in by hand from anywhere else: changing the physics or the grid
conventions is supposed to break the comparisons loudly.
"""

# -- reference configuration ----------------------------------------------
LAMBDA_P_UM = 0.3547
PUMP_FWHM_M = 70e-6
L_TOTAL_M = 6e-3

# -- dispersion -------------------------------------------------------------
N_O_354_7 = 1.705504222171979
N_E_354_7 = 1.5765595687557479
N_O_709_4 = 1.6636722641806627
N_EFF_AT_0_3 = 1.6929636872032274
WALKOFF_AT_0_3 = 0.04733020211242407
ALPHA_PM = 0.5786200366290993
THETA_WALKOFF = 0.07404348989346594
K_P = 29470428.88712202
K_S = 14735214.443560945

# -- mismatches at (theta_s, theta_i) = (0.02, 0.01) ------------------------
D_PAR_EXAMPLE = 3683.6992379166186
D_PERP_EXAMPLE = 147334.95373274796

# -- raw closed-form amplitudes at (theta_s, theta_i) = (0.015, 0.013) ------
F_PROBE_SINGLE_ISO = complex(2.2134978017956654e-08, 0.0)
F_PROBE_SINGLE_ANISO = complex(1.0973067607907174e-07, -3.0894098404787e-08)
F_PROBE_NONCOMP = complex(1.0973067607907159e-07, -3.089409840478685e-08)
F_PROBE_COMP = complex(3.51854004024482e-08, -1.0049792080736677e-07)

# -- reference grid (frozen output of auto_grid_spec, n = 201) --------------
GRID_HALF_SPAN = 0.05396877779878771
GRID_N = 201

# -- distortion metrics on the reference grid -------------------------------
SWAP_SINGLE_ISO = 0.0
SKEW_SINGLE_ISO = -2.207629737716422e-16
BEND_SINGLE_ISO = -3.469446951953614e-18
SWAP_SINGLE_ANISO = 0.8794716891925388
SKEW_SINGLE_ANISO = 0.10961931158397017
BEND_SINGLE_ANISO = 0.0012568349041585701
SWAP_NONCOMP = 0.8794716891925388
SKEW_NONCOMP = 0.10961931158396988
BEND_NONCOMP = 0.0012568349041585701
SWAP_COMP = 8.611436716798056e-17
SKEW_COMP = 1.3359488010222006e-16
BEND_COMP = 1.734723475976807e-18

# half-max angle of the idler marginal (single anisotropic crystal)
T_STAR_ANISO = 0.00998685455708285

# -- Schmidt numbers on the reference grid ----------------------------------
K_SINGLE_ISO = 3.417690445989468
K_SINGLE_ANISO = 25.8709633458548
K_NONCOMP = 25.870963345854786
K_COMP = 10.227317331253357
LAMBDAS_COMP_TOP3 = (
    0.16139531275873553,
    0.14796202782225634,
    0.12895943645375924,
)

# -- double-Gaussian fits (a, b, relative L2 residual) on the reference grid
DG_SINGLE_ISO = (3949.2490297785107, 185992.5611365161, 0.1660590211285739)
DG_SINGLE_ANISO = (845.7082551459262, 42765.19702568315, 0.8230753496410257)
DG_COMP = (509.7665350929417, 184762.88539221647, 0.7099920037676885)

# -- single-crystal swap asymmetry trends (auto grid per point, n = 201) ----
SWAP_VS_PUMP_FWHM_UM = (
    (70.0, 0.8794716891925388),
    (150.0, 0.6725991672938663),
    (300.0, 0.35635452303875387),
)
SWAP_VS_L_TOTAL_MM = (
    (3.0, 0.7045996232863704),
    (6.0, 0.8794716891925388),
)

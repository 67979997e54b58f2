"""Spatial two-photon amplitudes in birefringent crystal stacks.

Simulates the angular amplitude of collinear frequency-degenerate type-I
parametric down-conversion in stacks of uniaxial crystal slabs, including
the transverse walk-off of the extraordinary pump, and quantifies how a
second, walk-off-inverted slab symmetrises the amplitude.
"""

from .dispersion import (
    DispersionRangeError,
    MediumFileError,
    PhaseMatchingError,
    PhaseMatchingSolution,
    UniaxialMedium,
    bbo,
    index_extraordinary_effective,
    index_extraordinary_principal,
    index_ordinary,
    load_medium,
    parse_medium_text,
    phase_matching_angle,
    phase_matching_solution,
    walk_off_angle,
)
from .geometry import (
    CrystalSlab,
    CrystalStack,
    PumpBeam,
    PumpPath,
    make_standard_stacks,
    pump_centroid,
    pump_path,
)
from .tpa import (
    Mismatch,
    OracleConvergenceError,
    OracleStats,
    QuadratureSpec,
    mismatches,
    oracle_slab_integral,
    quadrature_oracle_with_stats,
    sinc,
    tpa_isotropic_single,
    tpa_quadrature_oracle,
    tpa_slab,
    tpa_stack,
    xi_effective,
)
from .analysis import (
    AngularDistribution,
    AsymmetryReport,
    DoubleGaussFit,
    FitRegionError,
    GridSpec,
    SchmidtSpectrum,
    TPAGrid,
    asymmetry_report,
    auto_grid_spec,
    conditional_distribution,
    double_gauss_fit,
    evaluate_grid,
    marginal_skewness,
    schmidt_decompose,
    unconditional_distribution,
)

__version__ = "0.1.0"

__all__ = [
    "DispersionRangeError",
    "MediumFileError",
    "PhaseMatchingError",
    "PhaseMatchingSolution",
    "UniaxialMedium",
    "bbo",
    "index_extraordinary_effective",
    "index_extraordinary_principal",
    "index_ordinary",
    "load_medium",
    "parse_medium_text",
    "phase_matching_angle",
    "phase_matching_solution",
    "walk_off_angle",
    "CrystalSlab",
    "CrystalStack",
    "PumpBeam",
    "PumpPath",
    "make_standard_stacks",
    "pump_centroid",
    "pump_path",
    "Mismatch",
    "OracleConvergenceError",
    "OracleStats",
    "QuadratureSpec",
    "mismatches",
    "oracle_slab_integral",
    "quadrature_oracle_with_stats",
    "sinc",
    "tpa_isotropic_single",
    "tpa_quadrature_oracle",
    "tpa_slab",
    "tpa_stack",
    "xi_effective",
    "AngularDistribution",
    "AsymmetryReport",
    "DoubleGaussFit",
    "FitRegionError",
    "GridSpec",
    "SchmidtSpectrum",
    "TPAGrid",
    "asymmetry_report",
    "marginal_skewness",
    "auto_grid_spec",
    "conditional_distribution",
    "double_gauss_fit",
    "evaluate_grid",
    "schmidt_decompose",
    "unconditional_distribution",
    "__version__",
]

"""
Data models for uzu: grids, sampled fields, reports and run configuration.
"""

from uzu.models.fields import (
    MagnetizationField,
    PolarField,
    RadialFunction,
    TangentField2D,
    UnitVec3,
    unit_vec3,
)
from uzu.models.grids import Grid2D, PolarGrid, RadialGrid
from uzu.models.reports import (
    CheckResult,
    EnergyBreakdown,
    FactorizationSides,
    ModeReport,
    ResidualReport,
    StripEnergyReport,
    SubstitutionSides,
    ThresholdEstimate,
    UnstableDirection,
    WitnessSearch,
)
from uzu.models.run_config import RunConfig

__all__ = [
    "CheckResult",
    "EnergyBreakdown",
    "FactorizationSides",
    "Grid2D",
    "MagnetizationField",
    "ModeReport",
    "PolarField",
    "PolarGrid",
    "RadialFunction",
    "RadialGrid",
    "ResidualReport",
    "RunConfig",
    "StripEnergyReport",
    "SubstitutionSides",
    "TangentField2D",
    "ThresholdEstimate",
    "UnitVec3",
    "UnstableDirection",
    "WitnessSearch",
    "unit_vec3",
]

"""Exact GIT stability, chambers, wall crossings and local models for
weighted points in the projective plane."""

from .core import (
    IncidenceProfile,
    InputError,
    InvariantError,
    PointConfiguration,
    Polarization,
    ProjectivePoint,
    bracket,
    build_profile,
    gamma_line,
    gamma_point,
    incidence_profile,
)
from .stability import Status, StabilityVerdict, classify_configuration, classify_incidence, generic_stability

__all__ = [
    "IncidenceProfile", "InputError", "InvariantError", "PointConfiguration", "Polarization",
    "ProjectivePoint", "bracket", "build_profile", "gamma_line", "gamma_point",
    "incidence_profile", "Status", "StabilityVerdict", "classify_configuration",
    "classify_incidence", "generic_stability",
]

"""Numerical criterion for (semi)stability of weighted configurations in the
plane.

A configuration is semistable for ``m`` iff no point of the plane carries
more than ``|m|/3`` of the weight and no line carries more than ``2|m|/3``;
stable iff both bounds hold strictly.  Only actual point locations and lines
through two distinct locations can attain the maxima, so the check runs over
the blocks and lines of an :class:`~gitq.core.IncidenceProfile`.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction

from .core import (
    IncidenceProfile,
    InputError,
    PointConfiguration,
    Polarization,
    external,
    gamma_line,
    gamma_point,
    generic_profile,
    incidence_profile,
)


class Status(str, enum.Enum):
    STABLE = "Stable"
    STRICTLY_SEMISTABLE = "StrictlySemistable"
    UNSTABLE = "Unstable"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class StabilityVerdict:
    status: Status
    point_witnesses: tuple[tuple[frozenset[int], Fraction], ...] = ()
    line_witnesses: tuple[tuple[frozenset[int], Fraction], ...] = ()

    @property
    def stable(self) -> bool:
        return self.status is Status.STABLE

    @property
    def semistable(self) -> bool:
        return self.status is not Status.UNSTABLE

    @property
    def equalities(self) -> dict[str, list[frozenset[int]]]:
        return {
            "point": [K for K, g in self.point_witnesses if g == 0],
            "line": [J for J, g in self.line_witnesses if g == 0],
        }

    def to_json(self) -> dict:
        eq = self.equalities
        return {
            "status": self.status.value,
            "point_witnesses": [{"K": external(K), "gamma": str(g)}
                                for K, g in self.point_witnesses],
            "line_witnesses": [{"J": external(J), "gamma": str(g)}
                               for J, g in self.line_witnesses],
            "equalities": {"point": [external(K) for K in eq["point"]],
                           "line": [external(J) for J in eq["line"]]},
        }


def classify_incidence(profile: IncidenceProfile, m: Polarization) -> StabilityVerdict:
    if profile.n != m.n:
        raise InputError(f"profile has {profile.n} points but m has {m.n} weights")
    points = []
    for B in profile.blocks:
        g = gamma_point(m, B)
        if g <= 0:
            points.append((B, g))
    lines = []
    for L in profile.lines:
        J = profile.line_indices(L)
        g = gamma_line(m, J)
        if g <= 0:
            lines.append((J, g))
    slack = [g for _, g in points + lines]
    if any(g < 0 for g in slack):
        status = Status.UNSTABLE
    elif slack:
        status = Status.STRICTLY_SEMISTABLE
    else:
        status = Status.STABLE
    key = lambda w: (sorted(w[0]), w[1])
    return StabilityVerdict(status, tuple(sorted(points, key=key)),
                            tuple(sorted(lines, key=key)))


def classify_configuration(cfg: PointConfiguration, m: Polarization) -> StabilityVerdict:
    if cfg.n != m.n:
        raise InputError(f"configuration has {cfg.n} points but m has {m.n} weights")
    return classify_incidence(incidence_profile(cfg), m)


@dataclass(frozen=True)
class GenericReport:
    """Outcome of the criterion on configurations in general position.

    ``dimension`` is the dimension of the quotient when stable points exist;
    ``empty`` records that no point at all is semistable.
    """

    m: Polarization
    verdict: StabilityVerdict
    dimension: int | None = None
    empty: bool = False
    notes: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "m": list(self.m.weights),
            "verdict": self.verdict.to_json(),
            "dimension": self.dimension,
            "semistable_locus_empty": self.empty,
            "notes": list(self.notes),
        }


def generic_stability(m: Polarization) -> GenericReport:
    v = classify_incidence(generic_profile(m.n), m)
    if v.status is Status.STABLE:
        return GenericReport(m, v, dimension=2 * (m.n - 4))
    if v.status is Status.STRICTLY_SEMISTABLE:
        return GenericReport(m, v, notes=["no stable points"])
    return GenericReport(m, v, empty=True, notes=["semistable locus is empty"])

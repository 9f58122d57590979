"""Quotients of six weighted points: singular strata, and what happens to
them under an elementary transformation ``m_hat -> m``.

Strata of a categorical quotient come from minimal closed strictly
semistable orbits: a pair ``{i,j}`` with ``m_i + m_j = |m|/3`` gives a curve,
a perfect matching into three such pairs gives a special point on three of
those curves, and a triple with weight ``|m|/3`` gives a smooth point.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from itertools import combinations

from .core import (
    InputError,
    InvariantError,
    Polarization,
    build_profile,
    external,
    gamma_line,
    gamma_point,
    join_profiles,
    label,
)
from .stability import GenericReport, Status, classify_incidence, generic_stability


class Kind(str, enum.Enum):
    GEOMETRIC = "Geometric"
    GEOMETRIC_DIVISIBLE = "GeometricDivisible"
    LOWER_DIM_P1POW5 = "LowerDim_P1pow5"
    LOWER_DIM_P1 = "LowerDim_P1"
    CATEGORICAL = "Categorical"


QUADRIC_CONE = "QuadricCone4"
TRIPLE_CONE = "TripleCone4"
SMOOTH = "Smooth4"


def curve_name(K) -> str:
    return f"C_{label(K)}"


def triple_point_name(matching) -> str:
    return "O_" + ",".join(label(p) for p in matching)


def smooth_point_name(K) -> str:
    return f"O_{label(K)}"


@dataclass(frozen=True)
class QuotientReport:
    m: Polarization
    kind: Kind
    curves: tuple[frozenset[int], ...] = ()
    triple_points: tuple[tuple[frozenset[int], ...], ...] = ()
    smooth_points: tuple[frozenset[int], ...] = ()
    local_models: dict = field(default_factory=dict)
    reduced: Polarization | None = None

    def to_json(self) -> dict:
        d = {
            "m": list(self.m.weights),
            "kind": self.kind.value,
            "curves": [external(K) for K in self.curves],
            "triple_points": [[external(p) for p in M] for M in self.triple_points],
            "smooth_points": [external(K) for K in self.smooth_points],
            "local_models": dict(self.local_models),
        }
        if self.reduced is not None:
            d["reduced"] = list(self.reduced.weights)
        return d


def _matchings(items: tuple[int, ...]):
    if not items:
        yield ()
        return
    a = items[0]
    for b in items[1:]:
        rest = tuple(x for x in items if x not in (a, b))
        for M in _matchings(rest):
            yield (frozenset((a, b)),) + M


def classify_quotient_n6(m: Polarization) -> QuotientReport | GenericReport:
    """Case split for the quotient of six weighted points.  Returns the
    generic-position report instead when the semistable locus is empty."""
    if m.n != 6:
        raise InputError("classify_quotient_n6 needs six weights")
    t = m.total
    if any(3 * x > t for x in m.weights):
        return generic_stability(m)
    heavy = [i for i in range(6) if 3 * m.weights[i] == t]
    if len(heavy) == 1:
        red = Polarization(tuple(x for i, x in enumerate(m.weights) if i not in heavy))
        return QuotientReport(m, Kind.LOWER_DIM_P1POW5, reduced=red)
    if len(heavy) == 2:
        red = Polarization(tuple(x for i, x in enumerate(m.weights) if i not in heavy))
        return QuotientReport(m, Kind.LOWER_DIM_P1, reduced=red)
    if t % 3:
        return QuotientReport(m, Kind.GEOMETRIC)
    third = t // 3
    curves = tuple(frozenset(K) for K in combinations(range(6), 2)
                   if m.weights[K[0]] + m.weights[K[1]] == third)
    smooth = tuple(frozenset(K) for K in combinations(range(6), 3)
                   if sum(m.weights[k] for k in K) == third)
    wall = set(curves)
    triples = tuple(M for M in _matchings(tuple(range(6))) if all(p in wall for p in M))
    if not curves and not smooth:
        return QuotientReport(m, Kind.GEOMETRIC_DIVISIBLE)
    models = {}
    for K in curves:
        models[curve_name(K)] = QUADRIC_CONE
    for M in triples:
        models[triple_point_name(M)] = TRIPLE_CONE
    for K in smooth:
        models[smooth_point_name(K)] = SMOOTH
    return QuotientReport(m, Kind.CATEGORICAL, curves, triples, smooth, models)


def fiber_dimension(n: int, J_size: int, i_in_J: bool, direction: int) -> int:
    """Dimension of the fibre of the contraction over a point whose closed
    orbit has ``J_size`` coincident points and the rest collinear.

    ``direction`` is +1 when ``m = m_hat + e_i`` and -1 when
    ``m = m_hat - e_i``.
    """
    if direction not in (1, -1):
        raise InputError("direction must be +1 or -1")
    if not 2 <= J_size <= n - 3:
        raise InputError(f"need 2 <= |J| <= n-3, got |J|={J_size}, n={n}")
    coincident_side = i_in_J if direction == 1 else not i_in_J
    if coincident_side:
        return n - J_size - 3
    return 2 * (n - (n - J_size) - 1) - 1


@dataclass(frozen=True)
class Fiber:
    stratum: str
    kind: str
    dimension: int
    fiber_type: str
    families: tuple[dict, ...] = ()

    def to_json(self) -> dict:
        return {"stratum": self.stratum, "kind": self.kind, "dimension": self.dimension,
                "type": self.fiber_type, "families": list(self.families)}


@dataclass(frozen=True)
class WallCrossingReport:
    m_hat: Polarization
    m: Polarization
    index: int
    direction: int
    removed_from_semistable: tuple[tuple[str, frozenset[int]], ...]
    fibers: tuple[Fiber, ...]
    quotient: QuotientReport | None = None

    def fiber(self, stratum: str) -> Fiber:
        for f in self.fibers:
            if f.stratum == stratum:
                return f
        raise KeyError(stratum)

    def to_json(self) -> dict:
        d = self.quotient.to_json() if self.quotient is not None else {"m": list(self.m.weights)}
        d.update({
            "m_hat": list(self.m_hat.weights),
            "index": self.index + 1,
            "direction": self.direction,
            "removed_from_semistable": [{"type": t, "set": external(S)}
                                        for t, S in self.removed_from_semistable],
            "fibers": [f.to_json() for f in self.fibers],
        })
        return d


def _family(name: str, profile, m_hat: Polarization, **sets) -> dict:
    v = classify_incidence(profile, m_hat)
    d = {"family": name}
    d.update({k: external(S) for k, S in sets.items()})
    d["status"] = v.status.value
    d["_profile"] = profile
    return d


def _public(families) -> tuple[dict, ...]:
    return tuple({k: v for k, v in f.items() if k != "_profile"} for f in families)


def _two_sided(J: frozenset[int], m_hat: Polarization, i: int, direction: int, n: int):
    """Coincidence family on ``J`` versus collinear family on its complement."""
    Jc = frozenset(range(n)) - J
    fams = [
        _family("coincident", build_profile(n, coincident=[J]), m_hat, K=J),
        _family("collinear", build_profile(n, collinear=[Jc]), m_hat, J=Jc),
    ]
    alive = [f for f in fams if f["status"] == Status.STABLE.value]
    if len(alive) != 1:
        raise InvariantError(f"expected exactly one surviving side over J={external(J)}")
    d = fiber_dimension(n, len(J), i in J, direction)
    expect = "coincident" if (i in J) == (direction == 1) else "collinear"
    if alive[0]["family"] != expect:
        raise InvariantError("surviving side disagrees with the fibre formula")
    return fams, alive[0], d


def wall_crossing_report(m_hat: Polarization, m: Polarization) -> WallCrossingReport:
    if m_hat.n != m.n:
        raise InputError("polarizations have different lengths")
    n = m.n
    if n != 6:
        raise InputError("wall crossing reports are computed for six points")
    diff = [(k, m.weights[k] - m_hat.weights[k]) for k in range(n)
            if m.weights[k] != m_hat.weights[k]]
    if len(diff) != 1 or abs(diff[0][1]) != 1:
        raise InputError("m_hat and m must differ by one in exactly one coordinate")
    i, direction = diff[0]
    if m.total % 3:
        raise InputError("|m| must be divisible by 3")
    if m_hat.total % 3 == 0:
        raise InputError("|m_hat| must not be divisible by 3")
    if not generic_stability(m_hat).verdict.stable:
        raise InputError("m_hat has no stable points")

    removed = []
    for r in range(1, n):
        for J in combinations(range(n), r):
            J = frozenset(J)
            if (i in J) != (direction == -1):
                continue
            if gamma_point(m, J) == 0:
                removed.append(("C", J))
            if gamma_line(m, J) == 0:
                removed.append(("L", J))

    q = classify_quotient_n6(m)
    if not isinstance(q, QuotientReport) or q.kind is not Kind.CATEGORICAL:
        return WallCrossingReport(m_hat, m, i, direction, tuple(removed), (),
                                  q if isinstance(q, QuotientReport) else None)

    fibers = []
    for K in q.curves:
        fams, alive, d = _two_sided(K, m_hat, i, direction, n)
        ftype = "P1" if d == 1 else f"Other({d})"
        fibers.append(Fiber(curve_name(K), "curve", d, ftype, _public(fams)))

    for M in q.triple_points:
        fams = []
        for p in M:
            for qpair in M:
                if qpair == p:
                    continue
                prof = build_profile(n, coincident=[p], collinear=[p | qpair])
                fams.append(_family(f"{len(fams) + 1}", prof, m_hat, K=p, J=p | qpair))
        alive = [f for f in fams if f["status"] == Status.STABLE.value]
        if len(alive) == 2:
            common = join_profiles(alive[0]["_profile"], alive[1]["_profile"])
            if classify_incidence(common, m_hat).stable:
                ftype, d = "P1_union_P1_common_point", 1
            else:
                ftype, d = "Other(1)", 1
        elif len(alive) == 1:
            ftype, d = "P1", 1
        elif alive:
            ftype, d = "Other(1)", 1
        else:
            ftype, d = "Point", 0
        fibers.append(Fiber(triple_point_name(M), "triple_point", d, ftype, _public(fams)))

    for K in q.smooth_points:
        fams, alive, d = _two_sided(K, m_hat, i, direction, n)
        if alive["family"] == "collinear" and d == 3:
            ftype = "P3"
        elif d == 0:
            ftype = "Point"
        else:
            ftype = f"Other({d})"
        fibers.append(Fiber(smooth_point_name(K), "smooth_point", d, ftype, _public(fams)))

    return WallCrossingReport(m_hat, m, i, direction, tuple(removed), tuple(fibers), q)

from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from gitq.core import InputError, Polarization, build_profile, internal
from gitq.stability import GenericReport, Status, classify_incidence, generic_stability
from gitq.walls import (
    Kind,
    QuotientReport,
    classify_quotient_n6,
    fiber_dimension,
    wall_crossing_report,
)

from oracles import fiber_dimension_reference

M = Polarization.of(2, 2, 2, 1, 1, 1)


def _brute_counts(w):
    t = sum(w)
    pairs = [K for K in combinations(range(6), 2) if 3 * sum(w[k] for k in K) == t]
    triples = [K for K in combinations(range(6), 3) if 3 * sum(w[k] for k in K) == t]
    ps = {frozenset(p) for p in pairs}
    matchings = 0
    for a in combinations(ps, 3):
        if len(frozenset().union(*a)) == 6:
            matchings += 1
    return len(pairs), matchings, len(triples)


def test_222111_strata():
    q = classify_quotient_n6(M)
    assert q.kind is Kind.CATEGORICAL
    assert (len(q.curves), len(q.triple_points), len(q.smooth_points)) == (9, 6, 1)
    assert (len(q.curves), len(q.triple_points), len(q.smooth_points)) == _brute_counts(M.weights)
    assert q.smooth_points == (frozenset({3, 4, 5}),)
    assert q.local_models["C_14"] == "QuadricCone4"
    assert q.local_models["O_14,25,36"] == "TripleCone4"
    assert q.local_models["O_456"] == "Smooth4"


@pytest.mark.parametrize("w,kind", [
    ((2, 2, 1, 1, 1, 1), Kind.GEOMETRIC),
    ((3, 2, 1, 1, 1, 1), Kind.LOWER_DIM_P1POW5),
    ((3, 3, 1, 1, 1, 1), Kind.GEOMETRIC),
    ((4, 4, 4, 4, 4, 1), Kind.GEOMETRIC_DIVISIBLE),
    ((2, 2, 1, 1, 1, 2), Kind.CATEGORICAL),
])
def test_case_split(w, kind):
    assert classify_quotient_n6(Polarization(w)).kind is kind


def test_reduced_polarizations():
    q = classify_quotient_n6(Polarization.of(3, 2, 1, 1, 1, 1))
    assert q.reduced.weights == (2, 1, 1, 1, 1)
    q = classify_quotient_n6(Polarization.of(4, 4, 1, 1, 1, 1))
    assert q.kind is Kind.LOWER_DIM_P1 and q.reduced.weights == (1, 1, 1, 1)


def test_divisible_without_walls():
    # |m| = 21 but no pair or triple weighs 7
    assert _brute_counts((4, 4, 4, 4, 4, 1)) == (0, 0, 0)
    q = classify_quotient_n6(Polarization.of(4, 4, 4, 4, 4, 1))
    assert not q.curves and not q.smooth_points


def test_empty_locus_gives_generic_report():
    r = classify_quotient_n6(Polarization.of(9, 1, 1, 1, 1, 1))
    assert isinstance(r, GenericReport) and r.empty
    with pytest.raises(InputError):
        classify_quotient_n6(Polarization.of(1, 1, 1, 1, 1))


@settings(max_examples=200, deadline=None)
@given(st.lists(st.integers(1, 12), min_size=6, max_size=6))
def test_quotient_report_invariants(w):
    q = classify_quotient_n6(Polarization(tuple(w)))
    if not isinstance(q, QuotientReport):
        return
    wall = set(q.curves)
    for Mt in q.triple_points:
        assert all(p in wall for p in Mt)
    if q.kind is Kind.CATEGORICAL:
        assert q.curves or q.smooth_points
        assert len(q.local_models) == len(q.curves) + len(q.triple_points) + len(q.smooth_points)
        assert (len(q.curves), len(q.triple_points), len(q.smooth_points)) == _brute_counts(w)


def test_fiber_dimension_examples():
    assert fiber_dimension(6, 3, False, 1) == 3
    assert fiber_dimension(6, 2, True, 1) == 1
    assert fiber_dimension(6, 2, False, 1) == 1
    with pytest.raises(InputError):
        fiber_dimension(6, 4, True, 1)
    with pytest.raises(InputError):
        fiber_dimension(6, 2, True, 0)


@pytest.mark.parametrize("n", [5, 6, 7, 8])
def test_fiber_dimension_all_cases(n):
    for j in range(2, n - 2):
        for inside in (True, False):
            for d in (1, -1):
                assert fiber_dimension(n, j, inside, d) == fiber_dimension_reference(n, j, inside, d)
            assert fiber_dimension(n, j, True, -1) == fiber_dimension(n, j, False, 1)
            assert fiber_dimension(n, j, False, -1) == fiber_dimension(n, j, True, 1)


def test_crossing_from_221111():
    r = wall_crossing_report(Polarization.of(2, 2, 1, 1, 1, 1), M)
    assert r.index == 2 and r.direction == 1
    for name in ("C_14", "C_36"):
        f = r.fiber(name)
        assert (f.dimension, f.fiber_type) == (1, "P1")
    # at C_36 the coincidence x_3 = x_6 survives; at C_14 the collinearity does
    alive36 = [x["family"] for x in r.fiber("C_36").families if x["status"] == "Stable"]
    alive14 = [x["family"] for x in r.fiber("C_14").families if x["status"] == "Stable"]
    assert alive36 == ["coincident"] and alive14 == ["collinear"]
    t = r.fiber("O_14,25,36")
    assert t.fiber_type == "P1_union_P1_common_point" and t.dimension == 1
    assert [x["status"] for x in t.families] == ["Unstable"] * 4 + ["Stable"] * 2
    s = r.fiber("O_456")
    assert (s.dimension, s.fiber_type) == (3, "P3")


def test_crossing_removed_sets():
    r = wall_crossing_report(Polarization.of(2, 2, 1, 1, 1, 1), M)
    removed = set(r.removed_from_semistable)
    assert ("C", internal([1, 4])) in removed
    assert ("L", internal([1, 2, 4, 5])) in removed
    assert ("C", internal([3, 6])) not in removed
    assert all(2 not in J for _, J in removed)


def test_crossing_from_the_other_side():
    r = wall_crossing_report(Polarization.of(2, 2, 3, 1, 1, 1), M)
    assert r.direction == -1
    assert r.fiber("O_456").fiber_type == "Point"
    assert all(f.dimension == 1 for f in r.fibers if f.kind == "curve")


@pytest.mark.parametrize("m_hat,m", [
    ((2, 2, 1, 1, 1, 1), (2, 2, 1, 1, 1, 1)),
    ((2, 2, 1, 1, 1, 1), (2, 2, 3, 1, 1, 1)),
    ((2, 2, 1, 1, 1, 1), (2, 3, 2, 1, 1, 1)),
    ((2, 2, 2, 1, 1, 1), (2, 2, 2, 1, 1, 2)),
    ((4, 2, 1, 1, 1, 1), (3, 2, 1, 1, 1, 1)),
    ((2, 2, 2, 1, 1), (2, 2, 2, 1, 2)),
])
def test_crossing_preconditions(m_hat, m):
    with pytest.raises(InputError):
        wall_crossing_report(Polarization(m_hat), Polarization(m))


def _crossings():
    out = []
    for i in range(6):
        for d in (1, -1):
            try:
                m_hat = M.bump(i, -d)
            except InputError:
                continue
            if generic_stability(m_hat).verdict.stable:
                out.append(m_hat)
    return out


def test_every_crossing_has_one_survivor_per_side():
    hats = _crossings()
    assert len(hats) >= 6
    for m_hat in hats:
        r = wall_crossing_report(m_hat, M)
        for f in r.fibers:
            if f.kind != "triple_point":
                assert sum(x["status"] == "Stable" for x in f.families) == 1


subsets = st.lists(st.sets(st.integers(0, 5), min_size=2, max_size=4), max_size=3)
ORDER = [Status.STABLE, Status.STRICTLY_SEMISTABLE, Status.UNSTABLE]


@settings(max_examples=300, deadline=None)
@given(subsets, subsets, st.sampled_from(_crossings()))
def test_stable_loci_nest(coinc, coll, m_hat):
    p = build_profile(6, coinc, [L for L in coll if len(L) >= 3])
    on_wall = classify_incidence(p, M).status
    off_wall = classify_incidence(p, m_hat).status
    if on_wall is Status.STABLE:
        assert off_wall is Status.STABLE
    if off_wall is Status.STABLE:
        assert on_wall is not Status.UNSTABLE

from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, strategies as st

from gitq.core import (
    InputError,
    PointConfiguration,
    Polarization,
    ProjectivePoint,
    bracket,
    build_profile,
    det3,
    external,
    gamma_line,
    gamma_point,
    generic_profile,
    incidence_profile,
    internal,
    join_profiles,
    label,
    parse_points,
    parse_rational,
    parse_weights,
)

weights = st.lists(st.integers(1, 30), min_size=3, max_size=7).map(lambda w: Polarization(tuple(w)))
small = st.integers(-2, 2)
points = st.tuples(small, small, small).filter(any).map(lambda c: ProjectivePoint(*c))


def test_index_translation_round_trip():
    assert internal([1, 4]) == frozenset({0, 3})
    assert external(frozenset({3, 0})) == [1, 4]
    assert label({0, 3}) == "14"
    with pytest.raises(InputError):
        internal([0])


def test_polarization_validation():
    with pytest.raises(InputError):
        Polarization((1, 0, 2))
    with pytest.raises(InputError):
        Polarization(())
    m = Polarization.from_rationals([Fraction(1, 4), Fraction(1, 4), Fraction(1, 4), Fraction(2, 9), Fraction(1, 36)])
    assert m.weights == (9, 9, 9, 8, 1)
    assert Polarization.of(4, 4, 4, 2, 2).ray_equivalent(Polarization.of(2, 2, 2, 1, 1))
    assert str(Polarization.of(2, 2, 2, 1, 1, 1)) == "(222111)"


def test_gamma_values():
    m = Polarization.of(2, 2, 2, 1, 1, 1)
    assert gamma_point(m, {0}) == 3
    assert gamma_point(m, {0, 3}) == 0
    assert gamma_line(m, {3, 4, 5}) == 9
    assert gamma_line(m, {0, 1, 2}) == 0
    with pytest.raises(InputError):
        gamma_point(m, {6})


@given(weights)
def test_point_line_duality(m):
    full = frozenset(range(m.n))
    for r in range(1, m.n):
        for J in combinations(range(m.n), r):
            J = frozenset(J)
            assert gamma_point(m, J) == -gamma_line(m, full - J)


def test_points_reject_floats_and_zero():
    with pytest.raises(InputError):
        ProjectivePoint(1.0, 0, 0)
    with pytest.raises(InputError):
        ProjectivePoint(0, 0, 0)
    assert ProjectivePoint(1, 2, 3) == ProjectivePoint(-2, -4, -6)
    assert len({ProjectivePoint(1, 2, 3), ProjectivePoint(Fraction(1, 3), Fraction(2, 3), 1)}) == 1


def test_bracket_is_determinant():
    a, b, c = ProjectivePoint(1, 0, 0), ProjectivePoint(0, 1, 0), ProjectivePoint(0, 0, 1)
    assert bracket(a, b, c) == 1
    M = [[1, 2, 3], [4, 5, 6], [7, 8, 10]]
    cols = [ProjectivePoint(*[M[r][j] for r in range(3)]) for j in range(3)]
    assert bracket(*cols) == det3(M) == -3


@given(points, points, points)
def test_bracket_alternates(a, b, c):
    v = bracket(a, b, c)
    assert bracket(b, a, c) == -v
    assert bracket(a, c, b) == -v
    assert bracket(b, c, a) == v
    assert bracket(a, a, c) == 0


def test_profile_of_collinear_and_coincident():
    cfg = PointConfiguration.of((1, 0, 0), (1, 0, 0), (0, 1, 0), (1, 1, 0), (0, 0, 1))
    p = incidence_profile(cfg).check()
    assert p.blocks[0] == {0, 1}
    assert frozenset({0, 1, 2, 3}) in p.index_lines()
    assert p == build_profile(5, coincident=[{0, 1}], collinear=[{0, 2, 3}])


def test_generic_profile_has_all_pairs():
    p = generic_profile(5).check()
    assert len(p.blocks) == 5 and len(p.lines) == 10


def test_join_keeps_both_degenerations():
    p = build_profile(6, coincident=[{0, 3}])
    q = build_profile(6, collinear=[{0, 3, 1, 4}])
    j = join_profiles(p, q).check()
    assert frozenset({0, 3}) in j.blocks
    assert frozenset({0, 1, 3, 4}) in j.index_lines()


@given(st.lists(points, min_size=3, max_size=6), st.sampled_from([
    [[1, 2, 0], [0, 1, 0], [3, 0, 1]],
    [[0, 1, 0], [-1, 0, 0], [0, 0, 1]],
    [[2, 1, 1], [1, 1, 0], [0, 0, 1]],
]))
def test_profile_invariant_under_linear_maps(pts, M):
    assert det3(M) != 0
    cfg = PointConfiguration(tuple(pts))
    assert incidence_profile(cfg.transformed(M)) == incidence_profile(cfg)


def test_parsers():
    assert parse_rational("-3/4") == Fraction(-3, 4)
    assert parse_rational("7") == 7
    for bad in ("1.5", "1e3", "a/b", "1/", ""):
        with pytest.raises(InputError):
            parse_rational(bad)
    assert parse_weights("1/4,1/4,1/4,2/9,1/36").weights == (9, 9, 9, 8, 1)
    cfg = parse_points("1 0 0\n# comment\n0 1/2 0\n\n0 0 -1\n")
    assert cfg.n == 3
    with pytest.raises(InputError):
        parse_points("1 0\n")

"""Exact primitives: polarizations, points of the projective plane, brackets
and the incidence combinatorics of a point configuration.

All index sets handled by the library are 0-based frozensets.  The CLI and
every JSON document use 1-based indices; :func:`external` and
:func:`internal` are the only places that translate between the two.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from itertools import combinations
from math import gcd, lcm
from typing import Iterable, Sequence


class InputError(ValueError):
    """Malformed or out-of-range input to a public operation."""


class InvariantError(RuntimeError):
    """An internal consistency check failed."""


def internal(indices: Iterable[int]) -> frozenset[int]:
    """Convert 1-based indices (as written in I/O) to a 0-based frozenset."""
    out = []
    for i in indices:
        i = int(i)
        if i < 1:
            raise InputError(f"indices are 1-based, got {i}")
        out.append(i - 1)
    return frozenset(out)


def external(indices: Iterable[int]) -> list[int]:
    """Convert a 0-based index set to the sorted 1-based list used in I/O."""
    return sorted(i + 1 for i in indices)


def label(indices: Iterable[int]) -> str:
    """Compact 1-based label such as ``"45"`` or ``"456"`` (n <= 9)."""
    return "".join(str(i) for i in external(indices))


# ---------------------------------------------------------------------------
# polarizations


@dataclass(frozen=True)
class Polarization:
    weights: tuple[int, ...]

    def __post_init__(self):
        w = tuple(self.weights)
        if not w:
            raise InputError("a polarization needs at least one weight")
        for x in w:
            if isinstance(x, bool) or int(x) != x:
                raise InputError(f"weights must be integers, got {x!r}")
            if x < 1:
                raise InputError(f"weights must be positive, got {x}")
        object.__setattr__(self, "weights", tuple(int(x) for x in w))

    @classmethod
    def of(cls, *weights) -> "Polarization":
        if len(weights) == 1 and not isinstance(weights[0], int):
            weights = tuple(weights[0])
        return cls(tuple(weights))

    @classmethod
    def from_rationals(cls, values: Sequence) -> "Polarization":
        """Clear denominators of a positive rational vector to the primitive
        integer vector on the same ray."""
        fr = [Fraction(v) for v in values]
        if any(v <= 0 for v in fr):
            raise InputError("rational weights must be positive")
        den = reduce(lcm, (v.denominator for v in fr), 1)
        ints = [int(v * den) for v in fr]
        g = reduce(gcd, ints)
        return cls(tuple(x // g for x in ints))

    @property
    def n(self) -> int:
        return len(self.weights)

    @property
    def total(self) -> int:
        return sum(self.weights)

    def __len__(self):
        return len(self.weights)

    def __getitem__(self, i):
        return self.weights[i]

    def __iter__(self):
        return iter(self.weights)

    def normalized(self) -> tuple[Fraction, ...]:
        t = self.total
        return tuple(Fraction(x, t) for x in self.weights)

    def ray_equivalent(self, other: "Polarization") -> bool:
        return self.normalized() == other.normalized()

    def weight(self, K: Iterable[int]) -> int:
        K = check_indices(K, self.n)
        return sum(self.weights[k] for k in K)

    def bump(self, i: int, delta: int) -> "Polarization":
        w = list(self.weights)
        w[i] += delta
        return Polarization(tuple(w))

    def __str__(self):
        if all(x < 10 for x in self.weights):
            return "(" + "".join(map(str, self.weights)) + ")"
        return "(" + ",".join(map(str, self.weights)) + ")"


def check_indices(K: Iterable[int], n: int, *, nonempty: bool = True) -> frozenset[int]:
    K = frozenset(K)
    if nonempty and not K:
        raise InputError("index set must be nonempty")
    for k in K:
        if not 0 <= k < n:
            raise InputError(f"index {k + 1} out of range 1..{n}")
    return K


def gamma_point(m: Polarization, K: Iterable[int]) -> Fraction:
    """Slack of the point test for the points indexed by ``K`` coinciding:
    ``|m| - 3 * sum_K m_k``.  Positive means the coincidence is allowed."""
    return Fraction(m.total - 3 * m.weight(K))


def gamma_line(m: Polarization, J: Iterable[int]) -> Fraction:
    """Slack of the line test for the points indexed by ``J`` being
    collinear: ``2|m| - 3 * sum_J m_j``."""
    return Fraction(2 * m.total - 3 * m.weight(J))


# ---------------------------------------------------------------------------
# points and brackets


def _frac(x) -> Fraction:
    if isinstance(x, float):
        raise InputError("floating point coordinates are not accepted")
    return Fraction(x)


class ProjectivePoint:
    """A point of the projective plane with exact rational coordinates.

    Equality and hashing are projective: representatives that differ by a
    nonzero scalar compare equal.
    """

    __slots__ = ("coords", "_key")

    def __init__(self, *coords):
        if len(coords) == 1:
            coords = tuple(coords[0])
        if len(coords) != 3:
            raise InputError(f"a point of the plane has 3 coordinates, got {len(coords)}")
        c = tuple(_frac(x) for x in coords)
        if not any(c):
            raise InputError("homogeneous coordinates cannot all vanish")
        self.coords = c
        lead = next(x for x in c if x != 0)
        self._key = tuple(x / lead for x in c)

    def __eq__(self, other):
        if not isinstance(other, ProjectivePoint):
            return NotImplemented
        return self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __iter__(self):
        return iter(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    def scaled(self, s) -> "ProjectivePoint":
        s = _frac(s)
        if s == 0:
            raise InputError("cannot rescale by zero")
        return ProjectivePoint(tuple(s * x for x in self.coords))

    def transformed(self, M) -> "ProjectivePoint":
        return ProjectivePoint(tuple(sum(_frac(M[r][c]) * self.coords[c] for c in range(3))
                                     for r in range(3)))

    def __repr__(self):
        return "ProjectivePoint(" + ", ".join(str(x) for x in self.coords) + ")"


def bracket(a: ProjectivePoint, b: ProjectivePoint, c: ProjectivePoint) -> Fraction:
    """Determinant of the 3x3 matrix with columns ``a, b, c``."""
    a0, a1, a2 = a.coords
    b0, b1, b2 = b.coords
    c0, c1, c2 = c.coords
    return (a0 * (b1 * c2 - b2 * c1)
            - b0 * (a1 * c2 - a2 * c1)
            + c0 * (a1 * b2 - a2 * b1))


@dataclass(frozen=True)
class PointConfiguration:
    points: tuple[ProjectivePoint, ...]

    def __post_init__(self):
        pts = tuple(p if isinstance(p, ProjectivePoint) else ProjectivePoint(p)
                    for p in self.points)
        object.__setattr__(self, "points", pts)

    @classmethod
    def of(cls, *points) -> "PointConfiguration":
        return cls(tuple(points))

    @property
    def n(self) -> int:
        return len(self.points)

    def __len__(self):
        return len(self.points)

    def __getitem__(self, i):
        return self.points[i]

    def transformed(self, M) -> "PointConfiguration":
        return PointConfiguration(tuple(p.transformed(M) for p in self.points))


def det3(M) -> Fraction:
    (a, b, c), (d, e, f), (g, h, i) = [[_frac(x) for x in row] for row in M]
    return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)


# ---------------------------------------------------------------------------
# incidence profiles


@dataclass(frozen=True)
class IncidenceProfile:
    """Combinatorial type of a configuration.

    ``blocks`` partitions ``range(n)`` into coincidence classes, sorted by
    their smallest index.  Each entry of ``lines`` is the set of block
    positions lying on one line; only lines through at least two blocks are
    kept, and every pair of blocks lies on exactly one of them.
    """

    n: int
    blocks: tuple[frozenset[int], ...]
    lines: tuple[frozenset[int], ...]

    def line_indices(self, line: frozenset[int]) -> frozenset[int]:
        return frozenset().union(*(self.blocks[b] for b in line))

    def index_lines(self) -> list[frozenset[int]]:
        return [self.line_indices(L) for L in self.lines]

    def block_of(self, i: int) -> int:
        for pos, B in enumerate(self.blocks):
            if i in B:
                return pos
        raise InputError(f"index {i + 1} not in profile")

    def check(self):
        seen = set()
        for B in self.blocks:
            if not B or seen & B:
                raise InvariantError("blocks must be disjoint and nonempty")
            seen |= B
        if seen != set(range(self.n)):
            raise InvariantError("blocks must cover all indices")
        for a, b in combinations(range(len(self.blocks)), 2):
            hits = sum(1 for L in self.lines if a in L and b in L)
            if hits != 1:
                raise InvariantError(f"block pair {a},{b} lies on {hits} lines")
        return self


def _canonical(n: int, blocks: Iterable[Iterable[int]],
               lines: Iterable[Iterable[int]]) -> IncidenceProfile:
    """Normalize raw block/line data (lines given as raw index sets)."""
    blocks = sorted((frozenset(B) for B in blocks), key=min)
    where = {i: pos for pos, B in enumerate(blocks) for i in B}
    merged: list[set[int]] = []
    for L in lines:
        s = {where[i] for i in L}
        if len(s) >= 2:
            merged.append(s)
    # two blocks span a single line: lines sharing two blocks are one line
    changed = True
    while changed:
        changed = False
        for a, b in combinations(range(len(merged)), 2):
            if len(merged[a] & merged[b]) >= 2:
                merged[a] |= merged.pop(b)
                changed = True
                break
    covered = {frozenset(p) for L in merged for p in combinations(sorted(L), 2)}
    for p in combinations(range(len(blocks)), 2):
        if frozenset(p) not in covered:
            merged.append(set(p))
    out = sorted((frozenset(L) for L in merged), key=lambda L: tuple(sorted(L)))
    return IncidenceProfile(n, tuple(blocks), tuple(out))


def build_profile(n: int, coincident: Iterable[Iterable[int]] = (),
                  collinear: Iterable[Iterable[int]] = ()) -> IncidenceProfile:
    """Profile of a configuration that is general apart from the listed
    coincidences and collinearities (0-based raw index sets)."""
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for S in coincident:
        S = sorted(check_indices(S, n))
        for j in S[1:]:
            parent[find(j)] = find(S[0])
    groups: dict[int, set[int]] = {}
    for i in range(n):
        groups.setdefault(find(i), set()).add(i)
    collinear = [check_indices(J, n) for J in collinear]
    return _canonical(n, groups.values(), collinear)


def generic_profile(n: int) -> IncidenceProfile:
    return build_profile(n)


def join_profiles(p: IncidenceProfile, q: IncidenceProfile) -> IncidenceProfile:
    """Smallest common degeneration of two profiles: every coincidence and
    every collinearity of either one."""
    if p.n != q.n:
        raise InputError("profiles have different sizes")
    return build_profile(p.n, list(p.blocks) + list(q.blocks),
                         p.index_lines() + q.index_lines())


def merge_blocks(p: IncidenceProfile, a: int, b: int) -> IncidenceProfile:
    """Profile obtained by letting blocks ``a`` and ``b`` coincide."""
    return build_profile(p.n, list(p.blocks) + [p.blocks[a] | p.blocks[b]],
                         p.index_lines())


def incidence_profile(cfg: PointConfiguration) -> IncidenceProfile:
    pts = cfg.points
    reps: list[ProjectivePoint] = []
    blocks: list[set[int]] = []
    pos: dict[ProjectivePoint, int] = {}
    for i, p in enumerate(pts):
        if p in pos:
            blocks[pos[p]].add(i)
        else:
            pos[p] = len(reps)
            reps.append(p)
            blocks.append({i})
    lines = []
    covered = set()
    for a, b in combinations(range(len(reps)), 2):
        if (a, b) in covered:
            continue
        L = [c for c in range(len(reps))
             if c in (a, b) or bracket(reps[a], reps[b], reps[c]) == 0]
        covered.update(combinations(L, 2))
        lines.append(frozenset().union(*(blocks[c] for c in L)))
    return _canonical(len(pts), blocks, lines)


def rank(rows) -> int:
    """Rank of an integer/rational matrix by exact elimination."""
    M = [[Fraction(x) for x in r] for r in rows]
    if not M:
        return 0
    r = 0
    ncols = len(M[0])
    for c in range(ncols):
        piv = next((i for i in range(r, len(M)) if M[i][c] != 0), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        for i in range(len(M)):
            if i != r and M[i][c] != 0:
                f = M[i][c] / M[r][c]
                M[i] = [x - f * y for x, y in zip(M[i], M[r])]
        r += 1
        if r == len(M):
            break
    return r


_RATIONAL = re.compile(r"[+-]?\d+(/\d+)?")


def parse_rational(text: str) -> Fraction:
    """Integer or ``a/b``; decimals and exponents are rejected."""
    s = text.strip()
    if not _RATIONAL.fullmatch(s):
        raise InputError(f"malformed rational {text!r} (use an integer or a/b)")
    return Fraction(s)


def parse_weights(text: str) -> Polarization:
    """``"2,2,2,1,1,1"``; rational entries are cleared to a primitive vector."""
    parts = [p for p in text.replace(" ", "").split(",") if p]
    if not parts:
        raise InputError("empty weight vector")
    return Polarization.from_rationals([parse_rational(p) for p in parts])


def parse_points(text: str) -> PointConfiguration:
    """One point per line, three integers or ``a/b`` rationals; ``#`` starts a comment."""
    pts = []
    for ln, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 3:
            raise InputError(f"line {ln}: expected three coordinates, got {len(parts)}")
        pts.append(ProjectivePoint(*(parse_rational(p) for p in parts)))
    if not pts:
        raise InputError("no points given")
    return PointConfiguration(tuple(pts))

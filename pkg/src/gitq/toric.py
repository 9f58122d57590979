"""Toric local models of quotient singularities.

A torus acting diagonally on a slice ``C^d`` with integer weights has an
invariant ring spanned by the monomials in the kernel of the weight matrix.
Everything here is exact integer arithmetic on exponent vectors: generators
are found by bounded enumeration of that kernel semigroup, relations by
comparing sums of generators, and cones by exact null-space computations.
"""

from __future__ import annotations

import enum
import warnings as _warnings
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from itertools import combinations, combinations_with_replacement
from math import gcd, lcm
from typing import Iterable, Sequence

from .core import InputError, external, internal, rank

Vector = tuple[int, ...]


class StratumKind(str, enum.Enum):
    PAIR_PLUS_FOUR_LINE = "PairPlusFourLine"
    TRIPLE_PAIR_MATCHING = "TriplePairMatching"
    TRIPLE_PLUS_LINE = "TriplePlusLine"

    @classmethod
    def parse(cls, s) -> "StratumKind":
        if isinstance(s, cls):
            return s
        alias = {"pair": cls.PAIR_PLUS_FOUR_LINE, "matching": cls.TRIPLE_PAIR_MATCHING,
                 "triple": cls.TRIPLE_PLUS_LINE}
        if s in alias:
            return alias[s]
        try:
            return cls(s)
        except ValueError:
            raise InputError(f"unknown stratum kind {s!r}") from None


class ConeError(InputError):
    def __init__(self, defect: str, message: str):
        super().__init__(message)
        self.defect = defect


@dataclass(frozen=True)
class TorusAction:
    weights: tuple[Vector, ...]
    inverted: frozenset[int] = frozenset()

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in r) for r in self.weights)
        if not rows or len({len(r) for r in rows}) != 1:
            raise InputError("weights must be a nonempty rectangular integer matrix")
        object.__setattr__(self, "weights", rows)
        inv = frozenset(self.inverted)
        if any(not 0 <= i < len(rows[0]) for i in inv):
            raise InputError("inverted coordinate out of range")
        object.__setattr__(self, "inverted", inv)

    @property
    def rank(self) -> int:
        return len(self.weights)

    @property
    def dim(self) -> int:
        return len(self.weights[0])

    def with_inverted(self, inverted: Iterable[int]) -> "TorusAction":
        return TorusAction(self.weights, frozenset(inverted))

    def weight_of(self, e: Sequence[int]) -> Vector:
        return tuple(sum(w * x for w, x in zip(row, e)) for row in self.weights)

    def to_json(self) -> dict:
        return {"weights": [list(r) for r in self.weights], "inverted": external(self.inverted)}


SLICE_WEIGHTS = {
    StratumKind.PAIR_PLUS_FOUR_LINE: ((3, 3, -3, -3, 0),),
    StratumKind.TRIPLE_PAIR_MATCHING: ((-1, -2, 1, -1, 2, 1), (1, -1, -1, -2, 1, 2)),
    StratumKind.TRIPLE_PLUS_LINE: ((3, 3, 3, 3, -3),),
}


def local_model_weights(kind) -> TorusAction:
    return TorusAction(SLICE_WEIGHTS[StratumKind.parse(kind)])


# ---------------------------------------------------------------------------
# invariant monomials


def _l1(e) -> int:
    return sum(abs(x) for x in e)


def _lex_desc(vs):
    return sorted(vs, reverse=True)


def kernel_vectors(a: TorusAction, bound: int) -> list[Vector]:
    """All nonzero invariant exponent vectors with ``sum |e_i| <= bound``;
    entries are nonnegative except on inverted coordinates."""
    d = a.dim
    out = []
    e = [0] * d

    def rec(pos, budget):
        if pos == d:
            if any(e) and not any(a.weight_of(e)):
                out.append(tuple(e))
            return
        rng = range(-budget, budget + 1) if pos in a.inverted else range(0, budget + 1)
        for x in rng:
            e[pos] = x
            rec(pos + 1, budget - abs(x))
        e[pos] = 0

    rec(0, bound)
    return out


def _add(u, v):
    return tuple(x + y for x, y in zip(u, v))


def _sub(u, v):
    return tuple(x - y for x, y in zip(u, v))


def _generated(targets, gens, cap) -> set:
    """Members of ``targets`` reachable as nonnegative integer combinations of
    ``gens`` through partial sums of size at most ``cap``."""
    seen = {tuple([0] * len(gens[0]))} if gens else set()
    frontier = list(seen)
    while frontier:
        nxt = []
        for v in frontier:
            for g in gens:
                w = _add(v, g)
                if w not in seen and _l1(w) <= cap:
                    seen.add(w)
                    nxt.append(w)
        frontier = nxt
    return {t for t in targets if t in seen}


@dataclass
class ToricModel:
    action: TorusAction
    generators: list[Vector]
    relations: list[tuple[Vector, Vector]] = field(default_factory=list)
    smooth: bool | None = None
    cone_rays: list[Vector] | None = None
    polytope_vertices: list[tuple[Fraction, ...]] | None = None
    saturated: bool | None = None
    warnings: list[str] = field(default_factory=list)

    @property
    def dimension(self) -> int:
        return rank(self.generators) if self.generators else 0

    def monomial(self, g: Vector) -> str:
        parts = []
        for i, x in enumerate(g):
            if x == 1:
                parts.append(f"z{i + 1}")
            elif x:
                parts.append(f"z{i + 1}^{x}")
        return "*".join(parts) or "1"

    def relation_strings(self) -> list[str]:
        def side(c):
            return "*".join(f"T{k + 1}" + (f"^{x}" if x > 1 else "")
                            for k, x in enumerate(c) if x) or "1"
        return [f"{side(a)} = {side(b)}" for a, b in self.relations]

    def to_json(self) -> dict:
        d = self.action.to_json()
        d.update({
            "generators": [list(g) for g in self.generators],
            "monomials": [self.monomial(g) for g in self.generators],
            "relations": [[list(a), list(b)] for a, b in self.relations],
            "relation_strings": self.relation_strings(),
            "smooth": self.smooth,
            "dimension": self.dimension,
            "saturated": self.saturated,
            "rays": [list(r) for r in self.cone_rays] if self.cone_rays is not None else None,
            "vertices": ([[str(x) for x in v] for v in self.polytope_vertices]
                         if self.polytope_vertices is not None else None),
            "warnings": list(self.warnings),
        })
        return d


def torus_invariant_basis(a: TorusAction, degree_bound: int = 6) -> ToricModel:
    """Minimal generators of the invariant monomials up to ``degree_bound``
    (sum of absolute exponents), with a saturation check two degrees up."""
    if degree_bound < 1:
        raise InputError("degree_bound must be at least 1")
    # reducibility is tested against a larger window: with inverted
    # coordinates a summand can have larger size than the sum
    big = kernel_vectors(a, 2 * degree_bound)
    big_set = set(big)
    small = [v for v in big if _l1(v) <= degree_bound]
    gens = [v for v in small if not any(_sub(v, u) in big_set for u in big if u != v)]
    gens = _lex_desc(gens)
    model = ToricModel(a, gens)
    if not gens:
        if small:
            model.warnings.append("invariant semigroup contains units; no minimal generators")
        else:
            model.warnings.append(f"no invariant monomial of size <= {degree_bound}")
        model.saturated = False
        return model
    check = [v for v in big if _l1(v) <= degree_bound + 2]
    reached = _generated(check, gens, 2 * (degree_bound + 2))
    model.saturated = len(reached) == len(check)
    if not model.saturated:
        msg = (f"generators of size <= {degree_bound} miss "
               f"{len(check) - len(reached)} invariants of size <= {degree_bound + 2}")
        model.warnings.append(msg)
        _warnings.warn(msg)
    return model


# ---------------------------------------------------------------------------
# relations


def _components(nodes, adjacent) -> list[list]:
    comps, left = [], list(nodes)
    while left:
        stack, comp = [left.pop(0)], []
        while stack:
            x = stack.pop()
            comp.append(x)
            for y in [y for y in left if adjacent(x, y)]:
                left.remove(y)
                stack.append(y)
        comps.append(sorted(comp, reverse=True))
    return sorted(comps, key=lambda c: c[0], reverse=True)


def minimal_binomials(generators: Sequence[Vector], degree_bound: int) -> list[tuple[Vector, Vector]]:
    """Minimal binomial relations among exponent vectors, as pairs of
    multiplicity vectors over the generator list.

    Products of at most ``2 * degree_bound`` generators are grouped by their
    exponent sum.  Within one group, products sharing a generator are joined;
    each extra connected component needs one new minimal relation.
    """
    k = len(generators)
    if not k:
        return []
    fibers: dict = {}
    for size in range(1, 2 * degree_bound + 1):
        for combo in combinations_with_replacement(range(k), size):
            c = [0] * k
            for j in combo:
                c[j] += 1
            e = reduce(_add, (generators[j] for j in combo))
            fibers.setdefault(e, []).append(tuple(c))
    rels = []
    for e, members in fibers.items():
        if len(members) < 2:
            continue
        comps = _components(members, lambda x, y: any(a and b for a, b in zip(x, y)))
        if len(comps) < 2:
            continue
        head = comps[0][0]
        for comp in comps[1:]:
            other = comp[0]
            if sum(head) <= degree_bound and sum(other) <= degree_bound:
                rels.append((head, other))
    rels.sort(key=lambda r: (sum(r[0]) + sum(r[1]), r), reverse=False)
    return rels


def binomial_relations(model: ToricModel, relation_degree_bound: int = 4) -> ToricModel:
    """Fill ``model.relations`` and ``model.smooth``.

    A generator equal to a product of others is eliminated before judging
    smoothness; the model is smooth when the remaining generators satisfy no
    relation and their number equals the dimension of the quotient.
    """
    model.relations = minimal_binomials(model.generators, relation_degree_bound)
    essential = essential_generators(model.generators)
    free = rank(essential) == len(essential) if essential else True
    model.smooth = free and len(essential) == model.action.dim - rank(model.action.weights)
    return model


def essential_generators(gens: Sequence[Vector]) -> list[Vector]:
    """Drop generators that are nonnegative combinations of the others."""
    out = list(gens)
    for g in list(gens):
        rest = [h for h in out if h != g]
        if rest and _generated([g], rest, 2 * _l1(g) + 2 * max(_l1(h) for h in rest)):
            out = rest
    return out


def chart_presentation(a: TorusAction, inverted: Iterable[int], degree_bound: int = 6,
                       relation_degree_bound: int = 4) -> ToricModel:
    """Invariant ring on the chart where ``inverted`` coordinates are units,
    presented by its minimal generators together with the lowest-degree
    global invariants (the coordinates along the singular lines)."""
    glob = torus_invariant_basis(a, degree_bound)
    chart = torus_invariant_basis(a.with_inverted(inverted), degree_bound)
    if not chart.generators:
        return chart
    low = min(_l1(g) for g in glob.generators)
    extra = [g for g in glob.generators if _l1(g) == low and g not in chart.generators]
    model = ToricModel(chart.action, _lex_desc(chart.generators + extra),
                       saturated=chart.saturated, warnings=chart.warnings)
    return binomial_relations(model, relation_degree_bound)


# ---------------------------------------------------------------------------
# cones


def _nullspace(rows: Sequence[Sequence[int]], dim: int) -> list[list[Fraction]]:
    M = [[Fraction(x) for x in r] for r in rows]
    pivots = []
    r = 0
    for c in range(dim):
        piv = next((i for i in range(r, len(M)) if M[i][c] != 0), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        M[r] = [x / M[r][c] for x in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [x - f * y for x, y in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(dim) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * dim
        v[f] = Fraction(1)
        for i, c in enumerate(pivots):
            v[c] = -M[i][f]
        basis.append(v)
    return basis


def primitive(v: Sequence) -> Vector:
    fr = [Fraction(x) for x in v]
    den = reduce(lcm, (x.denominator for x in fr), 1)
    ints = [int(x * den) for x in fr]
    g = reduce(gcd, ints)
    if g == 0:
        raise InputError("zero vector has no primitive multiple")
    return tuple(x // g for x in ints)


def dual_cone_rays(generators: Sequence[Sequence[int]]) -> list[Vector]:
    """Primitive rays of ``{y : <y, w> >= 0 for every input w}``."""
    gens = [tuple(int(x) for x in w) for w in generators]
    if not gens:
        raise ConeError("empty", "no generators given")
    dim = len(gens[0])
    if rank(gens) < dim:
        raise ConeError("not_pointed", "generators do not span the lattice; the dual cone contains a line")
    rays = set()
    for sub in combinations(gens, dim - 1):
        if rank(sub) != dim - 1:
            continue
        (v,) = _nullspace(sub, dim)
        for s in (1, -1):
            y = primitive([s * x for x in v])
            if all(sum(a * b for a, b in zip(y, w)) >= 0 for w in gens):
                rays.add(y)
    if not rays or rank(list(rays)) < dim:
        raise ConeError("not_full_dimensional",
                        "the generated cone contains a line; its dual is not full-dimensional")
    return sorted(rays)


def polytope_section(rays: Sequence[Sequence[int]], functional: Sequence, level,
                     drop: int | None = None) -> list[tuple[Fraction, ...]]:
    """Points where the rays meet the hyperplane ``<functional, y> = level``,
    optionally dropping one coordinate to land in the hyperplane's chart."""
    level = Fraction(level)
    out = []
    for r in rays:
        p = sum(Fraction(a) * b for a, b in zip(functional, r))
        if p == 0:
            raise ConeError("parallel", f"ray {list(r)} is parallel to the hyperplane")
        if p * level < 0:
            raise ConeError("wrong_side", f"ray {list(r)} does not meet the hyperplane")
        t = level / p
        pt = tuple(t * x for x in r)
        if drop is not None:
            pt = pt[:drop] + pt[drop + 1:]
        out.append(pt)
    return sorted(out)


def _det(M) -> Fraction:
    M = [[Fraction(x) for x in r] for r in M]
    n = len(M)
    det = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if M[i][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            M[c], M[piv] = M[piv], M[c]
            det = -det
        det *= M[c][c]
        for i in range(c + 1, n):
            f = M[i][c] / M[c][c]
            M[i] = [x - f * y for x, y in zip(M[i], M[c])]
    return det


def cone_smoothness(rays: Sequence[Sequence[int]]) -> str:
    rays = [tuple(int(x) for x in r) for r in rays]
    r = rank(rays)
    if r < len(rays):
        return "non-simplicial"
    dim = len(rays[0])
    g = 0
    for cols in combinations(range(dim), r):
        g = gcd(g, int(_det([[row[c] for c in cols] for row in rays])))
    return "smooth" if g == 1 else "simplicial-singular"


def lattice_coordinates(gens: Sequence[Vector]) -> list[Vector] | None:
    """Coordinates of the generators in the basis formed by the first
    linearly independent ones, when that basis spans the generated lattice."""
    basis = []
    for g in gens:
        if rank(basis + [g]) > len(basis):
            basis.append(g)
    coords = []
    for g in gens:
        # solve basis^T c = g
        rows = [[b[i] for b in basis] + [-g[i]] for i in range(len(g))]
        ns = _nullspace(rows, len(basis) + 1)
        v = next(v for v in ns if v[-1] != 0)
        c = [x / v[-1] for x in v[:-1]]
        if any(x.denominator != 1 for x in c):
            return None
        coords.append(tuple(int(x) for x in c))
    return coords


def local_model(kind, degree_bound: int = 6, inverted: Iterable[int] = (),
                relation_degree_bound: int = 4) -> ToricModel:
    """Full model for one stratum kind: generators, relations, smoothness,
    the cone dual to the invariant semigroup and its section by
    ``sum y_i = level`` (level chosen to make the vertices integral)."""
    a = local_model_weights(kind)
    inverted = frozenset(inverted)
    if inverted:
        model = chart_presentation(a, inverted, degree_bound, relation_degree_bound)
    else:
        model = binomial_relations(torus_invariant_basis(a, degree_bound), relation_degree_bound)
    coords = lattice_coordinates(essential_generators(model.generators)) if model.generators else None
    if coords is not None:
        try:
            model.cone_rays = dual_cone_rays(coords)
        except ConeError as e:
            model.warnings.append(str(e))
    if model.cone_rays:
        ones = [1] * len(model.cone_rays[0])
        pair = [sum(r) for r in model.cone_rays]
        if all(p > 0 for p in pair):
            level = reduce(lcm, pair, 1)
            model.polytope_vertices = polytope_section(model.cone_rays, ones, level,
                                                       drop=len(ones) - 1)
    return model


def parse_inverted(text: str) -> frozenset[int]:
    """``"1,4"`` -> ``{0, 3}``."""
    if not text:
        return frozenset()
    return internal(int(x) for x in text.split(","))

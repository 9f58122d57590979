"""Invariants of six points with weights (2,2,2,1,1,1).

Degree-k invariants are counted by standard tableaux, each fixed by four
integers (x, y, z, w).  The six cubic bracket monomials t_0..t_5 generate,
and the sextic standard monomial u reduces to them; both identities are
checked by exact evaluation on point configurations.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Sequence

from .core import InputError, PointConfiguration, ProjectivePoint, bracket

WEIGHTS = (2, 2, 2, 1, 1, 1)

# 1-based bracket index triples of each generator
T_BRACKETS = (
    ((1, 2, 4), (1, 3, 5), (2, 3, 6)),
    ((1, 2, 3), (1, 3, 5), (2, 4, 6)),
    ((1, 2, 3), (1, 3, 4), (2, 5, 6)),
    ((1, 2, 3), (1, 2, 5), (3, 4, 6)),
    ((1, 2, 3), (1, 2, 4), (3, 5, 6)),
    ((1, 2, 3), (1, 2, 3), (4, 5, 6)),
)
U_BRACKETS = ((1, 2, 3), (1, 2, 3), (1, 2, 3), (1, 4, 5), (2, 4, 6), (3, 5, 6))


def multidegree(brackets) -> tuple[int, ...]:
    """How often each of the six indices occurs in a bracket monomial."""
    counts = [0] * 6
    for b in brackets:
        for p in b:
            counts[p - 1] += 1
    return tuple(counts)


@dataclass(frozen=True)
class TableauPoint:
    k: int
    x: int
    y: int
    z: int
    w: int

    def admissible(self, extra: bool = True) -> bool:
        k, x, y, z, w = self.k, self.x, self.y, self.z, self.w
        ok = (0 <= x <= y <= k and 0 <= z <= w <= 2 * k and 0 <= y + z - x <= 2 * k
              and x + y <= z <= y + k and z <= w <= k + z and 0 <= w + x - z <= k
              and w >= x + k)
        # 2*beta_3 + beta_4 <= 3k + alpha_4, which the (x,y,z,w) list drops
        return ok and (not extra or z + w <= 3 * k + x)

    @property
    def alphas_betas(self) -> tuple[int, int, int, int]:
        return self.y - self.x, self.x, self.z, self.w - self.z


def _count(k: int, extra: bool) -> int:
    if k < 0:
        raise InputError("k must be nonnegative")
    total = 0
    for x in range(k + 1):
        for y in range(x, k + 1):
            for z in range(2 * k + 1):
                for w in range(z, min(2 * k, k + z) + 1):
                    if TableauPoint(k, x, y, z, w).admissible(extra):
                        total += 1
    return total


def tableau_count(k: int) -> int:
    return _count(k, True)


def printed_system_count(k: int) -> int:
    """Count under the (x, y, z, w) inequalities alone, without the bound
    ``z + w <= 3k + x``; it overcounts from k = 2 on."""
    return _count(k, False)


def alpha_beta_count(k: int) -> int:
    """Count directly in the (alpha_3, alpha_4, beta_3, beta_4) coordinates,
    with every row segment of the tableau of nonnegative length."""
    if k < 0:
        raise InputError("k must be nonnegative")
    n = 0
    r = range(2 * k + 1)
    for a3 in r:
        for a4 in r:
            for b3 in r:
                for b4 in r:
                    if (a3 + 2 * a4 <= b3 and a3 + a4 <= k and k + a4 <= b3 + b4 <= 2 * k
                            and b3 <= k + a3 + a4 and 2 * b3 + b4 <= 3 * k + a4
                            and a3 + b3 <= 2 * k and a4 + b4 <= k):
                        n += 1
    return n


def hilbert_closed_form(k: int) -> int:
    if k < 0:
        raise InputError("k must be nonnegative")
    num = k ** 4 + 6 * k ** 3 + 15 * k ** 2 + 18 * k
    if num % 8:
        raise AssertionError(f"closed form is not integral at k={k}")
    return num // 8 + 1


def series_coefficient(k: int) -> int:
    """k-th coefficient of (1 - t^3) / (1 - t)^6."""
    return comb(k + 5, 5) - (comb(k + 2, 5) if k >= 3 else 0)


def series_check(kmax: int, dims: Sequence[int] | None = None) -> bool:
    if kmax < 0:
        raise InputError("kmax must be nonnegative")
    if dims is None:
        dims = [tableau_count(k) for k in range(kmax + 1)]
    if len(dims) < kmax + 1:
        raise InputError("not enough dimensions supplied")
    return all(dims[k] == series_coefficient(k) for k in range(kmax + 1))


def hilbert_table(kmax: int) -> list[tuple[int, int, int, int]]:
    return [(k, tableau_count(k), hilbert_closed_form(k), series_coefficient(k))
            for k in range(kmax + 1)]


# ---------------------------------------------------------------------------
# bracket evaluation


@dataclass(frozen=True)
class BracketEvaluation:
    t: tuple[Fraction, ...]
    u: Fraction

    def to_json(self) -> dict:
        return {"t": [str(x) for x in self.t], "u": str(self.u)}


def _monomial(cfg: PointConfiguration, brackets) -> Fraction:
    v = Fraction(1)
    for a, b, c in brackets:
        v *= bracket(cfg.points[a - 1], cfg.points[b - 1], cfg.points[c - 1])
    return v


def evaluate_generators(cfg: PointConfiguration) -> BracketEvaluation:
    if cfg.n != 6:
        raise InputError("need six points")
    return BracketEvaluation(tuple(_monomial(cfg, b) for b in T_BRACKETS),
                             _monomial(cfg, U_BRACKETS))


def _linear(t) -> Fraction:
    return -t[0] + t[1] - t[2] - t[3] + t[4] - t[5]


def u_from_t(t) -> Fraction:
    return t[1] * t[4] - t[2] * t[3] + t[5] * _linear(t)


def cubic(t) -> Fraction:
    return _linear(t) * (t[0] * t[5] - t[1] * t[4]) - t[0] * t[2] * t[3]


def verify_relations(cfg: PointConfiguration) -> tuple[Fraction, Fraction]:
    e = evaluate_generators(cfg)
    t = e.t
    residual_u = t[2] * t[3] - t[1] * t[4] + e.u - t[5] * _linear(t)
    return residual_u, cubic(t)


# ---------------------------------------------------------------------------
# seeded random data


def random_rational(rng: random.Random, max_den: int = 1000) -> Fraction:
    return Fraction(rng.randint(-max_den, max_den), rng.randint(1, max_den))


def random_configuration(rng: random.Random, n: int = 6, max_den: int = 1000) -> PointConfiguration:
    pts = []
    while len(pts) < n:
        c = [random_rational(rng, max_den) for _ in range(3)]
        if any(c):
            pts.append(ProjectivePoint(*c))
    return PointConfiguration(tuple(pts))


def random_unimodular(rng: random.Random, max_den: int = 50) -> list[list[Fraction]]:
    """Random rational 3x3 matrix of determinant exactly 1."""
    def nz():
        while True:
            q = random_rational(rng, max_den)
            if q:
                return q
    a, b = nz(), nz()
    D = [[a, 0, 0], [0, b, 0], [0, 0, 1 / (a * b)]]
    U = [[1, random_rational(rng, max_den), random_rational(rng, max_den)],
         [0, 1, random_rational(rng, max_den)], [0, 0, 1]]
    L = [[1, 0, 0], [random_rational(rng, max_den), 1, 0],
         [random_rational(rng, max_den), random_rational(rng, max_den), 1]]

    def mul(A, B):
        return [[sum(Fraction(A[i][k]) * B[k][j] for k in range(3)) for j in range(3)]
                for i in range(3)]
    return mul(mul(L, D), U)


def relation_trials(trials: int, seed: int) -> dict:
    rng = random.Random(seed)
    bad = []
    for n in range(trials):
        cfg = random_configuration(rng)
        ru, rf = verify_relations(cfg)
        if ru or rf:
            bad.append({"trial": n, "residual_u": str(ru), "residual_F3": str(rf)})
    return {"trials": trials, "seed": seed, "nonzero": bad, "all_zero": not bad}


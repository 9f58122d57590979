"""Chambers of the ordered weight simplex for five and six points.

Inside the region ``m_1 >= ... >= m_n``, ``m_i < |m|/3`` the stable locus is
decided by the signs of the point slacks on 2- and 3-subsets (singletons are
always fine, larger coincidences always unstable), so a chamber is keyed by
the set of stable pairs and the set of stable triples.  Chambers are found by
an exhaustive integer scan; completeness is evidenced by the scan not finding
anything new over the last nine values of the bound.
"""

from __future__ import annotations

import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Iterator

from .core import InputError, Polarization, external, label

MIN_BOUND = {5: 36, 6: 31}
STABILIZATION_WINDOW = 9


@dataclass(frozen=True)
class Chamber:
    n: int
    stable_pairs: frozenset[frozenset[int]]
    stable_triples: frozenset[frozenset[int]]
    sample: Polarization
    permutation: tuple[int, ...] | None = None

    @property
    def key(self):
        return (self.stable_pairs, self.stable_triples)

    def sign_pattern(self) -> tuple[int, ...]:
        small = [frozenset(K) for r in (2, 3) for K in combinations(range(self.n), r)]
        stable = self.stable_pairs | self.stable_triples
        return tuple(1 if K in stable else 0 for K in small)

    def u_set_description(self) -> list[tuple[str, frozenset[int]]]:
        """Sets ``("C", K)`` for stable coincidences and ``("L", J)`` for the
        complementary collinearities that replace them, restricted to the
        subsets that are stable in at least one chamber."""
        full = frozenset(range(self.n))
        stable = self.stable_pairs | self.stable_triples
        out = [("C", K) for K in _sorted_sets(stable)]
        for K in _sorted_sets(realizable_sets(self.n)):
            if K not in stable:
                out.append(("L", full - K))
        return out

    def describe(self) -> list[str]:
        return [f"U^{t}_{label(S)}" for t, S in self.u_set_description()]

    def to_json(self, with_label: bool = True, strings: bool = False) -> dict:
        conv = str if strings else (lambda x: x)
        d = {
            "n": conv(self.n),
            "stable_pairs": [[conv(i) for i in external(K)] for K in _sorted_sets(self.stable_pairs)],
            "stable_triples": [[conv(i) for i in external(K)] for K in _sorted_sets(self.stable_triples)],
            "sample": [conv(x) for x in self.sample.weights],
        }
        if with_label and self.n == 5:
            d["label"] = n5_quotient_label(self)
        return d


@dataclass(frozen=True)
class WallReport:
    """``m`` lies on a wall or on the boundary of the ordered simplex."""

    m: Polarization
    boundary: tuple[int, ...]
    equalities: tuple[frozenset[int], ...]
    permutation: tuple[int, ...] | None = None

    def to_json(self) -> dict:
        return {
            "m": list(self.m.weights),
            "boundary": external(self.boundary),
            "equalities": [external(K) for K in self.equalities],
        }


def _sorted_sets(sets) -> list[frozenset[int]]:
    return sorted(sets, key=lambda K: (len(K), sorted(K)))


def _sort_desc(m: Polarization):
    perm = tuple(sorted(range(m.n), key=lambda i: -m.weights[i]))
    return Polarization(tuple(m.weights[i] for i in perm)), perm


def _signs(w: tuple[int, ...]):
    """Chamber key of a sorted weight vector, or None on a wall/boundary."""
    t = sum(w)
    n = len(w)
    if 3 * w[0] >= t:
        return None
    for r in range(1, n):
        for K in combinations(range(n), r):
            if 3 * sum(w[k] for k in K) == t:
                return None
    pairs = frozenset(frozenset(K) for K in combinations(range(n), 2)
                      if t - 3 * (w[K[0]] + w[K[1]]) > 0)
    triples = frozenset(frozenset(K) for K in combinations(range(n), 3)
                        if t - 3 * (w[K[0]] + w[K[1]] + w[K[2]]) > 0)
    return pairs, triples


def stable_sets_of(m: Polarization) -> Chamber | WallReport:
    w, perm = _sort_desc(m)
    perm_rec = None if perm == tuple(range(m.n)) else perm
    key = _signs(w.weights)
    if key is None:
        t = w.total
        boundary = tuple(i for i in range(w.n) if 3 * w.weights[i] >= t)
        eqs = tuple(frozenset(K) for r in range(1, w.n) for K in combinations(range(w.n), r)
                    if 3 * sum(w.weights[k] for k in K) == t)
        return WallReport(w, boundary, eqs, perm_rec)
    return Chamber(w.n, key[0], key[1], w, perm_rec)


def _partitions(n: int, total: int, cap: int) -> Iterator[tuple[int, ...]]:
    """Weakly decreasing positive n-tuples with the given sum, entries <= cap,
    in lexicographically decreasing order."""
    if n == 1:
        if 1 <= total <= cap:
            yield (total,)
        return
    for a in range(min(cap, total - (n - 1)), 0, -1):
        if a * n < total:
            break
        for rest in _partitions(n - 1, total - a, a):
            yield (a,) + rest


def _scan_slice(args):
    n, t = args
    found = {}
    for w in _partitions(n, t, t):
        key = _signs(w)
        if key is not None and key not in found:
            found[key] = w
    return t, found


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("GITQ_THREADS", "1")))
    except ValueError:
        return 1


@dataclass
class Atlas:
    n: int
    bound: int
    chambers: list[Chamber]
    count_at_window_start: int
    first_seen: dict = field(default_factory=dict)

    @property
    def stabilized(self) -> bool:
        return self.count_at_window_start == len(self.chambers)

    def __len__(self):
        return len(self.chambers)

    def __iter__(self):
        return iter(self.chambers)

    def find(self, pairs, triples=frozenset()) -> Chamber | None:
        key = (frozenset(map(frozenset, pairs)), frozenset(map(frozenset, triples)))
        return next((c for c in self.chambers if c.key == key), None)

    def to_json(self) -> list[dict]:
        return [c.to_json(strings=True) for c in self.chambers]

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=1)


def enumerate_chambers(n: int, bound: int, workers: int | None = None) -> Atlas:
    if n not in MIN_BOUND:
        raise InputError("chamber enumeration is supported for n = 5 and n = 6")
    if bound < MIN_BOUND[n]:
        raise InputError(f"bound must be at least {MIN_BOUND[n]} for n = {n}")
    workers = workers or _threads()
    tasks = [(n, t) for t in range(1, bound + 1)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            slices = list(ex.map(_scan_slice, tasks, chunksize=4))
    else:
        slices = [_scan_slice(a) for a in tasks]
    samples: dict = {}
    first_seen: dict = {}
    for t, found in sorted(slices, key=lambda s: s[0]):
        for key, w in found.items():
            if key not in samples:
                samples[key] = w
                first_seen[key] = t
    window = bound - STABILIZATION_WINDOW
    early = sum(1 for t in first_seen.values() if t <= window)
    chambers = [Chamber(n, k[0], k[1], Polarization(w)) for k, w in samples.items()]
    chambers.sort(key=Chamber.sign_pattern)
    return Atlas(n, bound, chambers, early, first_seen)


@lru_cache(maxsize=None)
def realizable_sets(n: int) -> frozenset[frozenset[int]]:
    """2- and 3-subsets that are stable coincidences in some chamber."""
    atlas = enumerate_chambers(n, MIN_BOUND[n], workers=1)
    out = set()
    for c in atlas:
        out |= c.stable_pairs | c.stable_triples
    return frozenset(out)


def _pairs(*labels: str) -> frozenset[frozenset[int]]:
    return frozenset(frozenset(int(ch) - 1 for ch in s) for s in labels)


N5_LABELS = {
    _pairs(): "P2_4",
    _pairs("45"): "P2_3",
    _pairs("45", "35"): "P2_2",
    _pairs("45", "35", "25"): "P2_1",
    _pairs("45", "35", "34"): "P1xP1",
    _pairs("45", "35", "25", "15"): "P2",
}


def n5_quotient_label(c: Chamber) -> str:
    if c.n != 5 or c.stable_triples or c.stable_pairs not in N5_LABELS:
        raise InputError("not one of the six chambers for five points")
    return N5_LABELS[c.stable_pairs]


def n5_label_of(m: Polarization) -> str | None:
    """Surface label for any five-point polarization with stable points or a
    categorical quotient.  On a wall, pairs with zero slack count as stable
    coincidences (the categorical quotient agrees with that geometric one).
    Returns None when some weight reaches ``|m|/3``."""
    if m.n != 5:
        raise InputError("n5_label_of needs five weights")
    w, _ = _sort_desc(m)
    t = w.total
    if 3 * w.weights[0] >= t:
        return None
    pairs = frozenset(frozenset(K) for K in combinations(range(5), 2)
                      if t - 3 * (w.weights[K[0]] + w.weights[K[1]]) >= 0)
    c = Chamber(5, pairs, frozenset(), w)
    return n5_quotient_label(c)

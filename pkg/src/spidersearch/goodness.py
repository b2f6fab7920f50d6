"""Threshold recursion and the admissible/good classification of paths and
spiders in a host graph.

Classification is strictly level-by-level: goodness at length ell needs the
complete admissible counts at ell, so each level runs two passes (flags and
counts, then goodness marks).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import product
from typing import Iterator

from .graph import Graph
from .spiders import Spider, enumerate_spiders

Path = tuple[int, ...]  # vertex sequence, canonical: first < last
Pair = tuple[int, int]

try:  # gmpy2 speeds up the huge-integer recursion when present
    from gmpy2 import mpz as _bigint
except ImportError:  # pragma: no cover
    _bigint = int


def f_value(ell: int, L: float) -> int:
    """Threshold recursion: f(1) = ceil(L),
    f(ell) = 1 + f(ell-1)^16 * (ell-1)^2 * max_i f(i) f(ell-i).

    Values explode immediately (f(3,2) has ~90 digits); everything is
    arbitrary-precision.
    """
    if ell < 1:
        raise ValueError("ell must be >= 1")
    if L < 1:
        raise ValueError("L must be >= 1")
    vals = [_bigint(math.ceil(L))]
    for m in range(2, ell + 1):
        peak = max(vals[i - 1] * vals[m - i - 1] for i in range(1, m))
        vals.append(1 + vals[m - 2] ** 16 * (m - 1) ** 2 * peak)
    return int(vals[ell - 1])


class Thresholds:
    """Pluggable threshold function: the real recursion, a constant, or a
    custom table.  Constant mode exists because the recursion's values make
    every desk-scale object good.
    """

    def __init__(self, mode: str, L: float = 1.0,
                 value: float = 0, table: dict[int, int] | None = None):
        self.mode = mode
        self.L = L
        self.value = value
        self.table = table or {}
        self._cache: dict[int, int] = {}

    @classmethod
    def paper_recursion(cls, L: float) -> "Thresholds":
        if L < 1:
            raise ValueError("L must be >= 1")
        return cls("recursion", L=L)

    @classmethod
    def constant(cls, value: float) -> "Thresholds":
        if value < 0:
            raise ValueError("constant threshold must be >= 0")
        return cls("constant", value=value)

    @classmethod
    def custom(cls, table: dict[int, int]) -> "Thresholds":
        if any(v < 0 for v in table.values()):
            raise ValueError("custom thresholds must be >= 0")
        return cls("custom", table=dict(table))

    def f(self, ell: int):
        if self.mode == "constant":
            return self.value
        if self.mode == "custom":
            try:
                return self.table[ell]
            except KeyError:
                raise ValueError(f"custom table has no value for ell={ell}") from None
        if ell not in self._cache:
            self._cache[ell] = f_value(ell, self.L)
        return self._cache[ell]

    def describe(self) -> str:
        if self.mode == "constant":
            return f"const:{self.value}"
        if self.mode == "custom":
            return "custom:" + ",".join(
                f"{k}={v}" for k, v in sorted(self.table.items())
            )
        return f"paper:L={self.L}"


def canonical_path(path: Path) -> Path:
    """A path and its reversal are the same object; keep the orientation
    whose first vertex is smaller.
    """
    return path if path[0] < path[-1] else path[::-1]


def _directed_paths(G: Graph, length: int) -> Iterator[Path]:
    """All directed simple paths with `length` edges."""
    def walk(path: list[int]) -> Iterator[Path]:
        if len(path) - 1 == length:
            yield tuple(path)
            return
        for w in G.neighbors(path[-1]):
            if w not in path:
                path.append(w)
                yield from walk(path)
                path.pop()

    for u in G.vertices():
        yield from walk([u])


def enumerate_paths(G: Graph, length: int) -> Iterator[Path]:
    """Every undirected simple path with `length` edges, once, canonically."""
    for p in _directed_paths(G, length):
        if p[0] < p[-1]:
            yield p


@dataclass
class PathLevel:
    admissible: set[Path] = field(default_factory=set)
    good: set[Path] = field(default_factory=set)
    counts: dict[Pair, int] = field(default_factory=dict)
    total: int = 0


@dataclass
class PathClassification:
    k: int
    thresholds: Thresholds
    levels: dict[int, PathLevel]

    def is_good(self, path: Path) -> bool:
        return canonical_path(path) in self.levels[len(path) - 1].good


def classify_paths(G: Graph, k: int, thresholds: Thresholds) -> PathClassification:
    """Classify every path of length 1..k.

    Length 1 is good by definition.  For ell >= 2 a path is admissible iff
    both of its (ell-1)-windows are good: those two windows cover every
    contiguous strict subpath, and good windows have good subwindows, so
    the pairwise check is equivalent to the full one.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    levels: dict[int, PathLevel] = {}

    lvl1 = PathLevel()
    for u, v in G.sorted_edges():
        p = (u, v)
        lvl1.admissible.add(p)
        lvl1.good.add(p)
        lvl1.counts[(u, v)] = lvl1.counts.get((u, v), 0) + 1
        lvl1.total += 1
    levels[1] = lvl1

    for ell in range(2, k + 1):
        lvl = PathLevel()
        prev_good = levels[ell - 1].good
        for p in enumerate_paths(G, ell):
            lvl.total += 1
            if (
                canonical_path(p[:-1]) in prev_good
                and canonical_path(p[1:]) in prev_good
            ):
                lvl.admissible.add(p)
                key = (p[0], p[-1])
                lvl.counts[key] = lvl.counts.get(key, 0) + 1
        bound = thresholds.f(ell)
        for p in lvl.admissible:
            if lvl.counts[(p[0], p[-1])] <= bound:
                lvl.good.add(p)
        levels[ell] = lvl
    return PathClassification(k=k, thresholds=thresholds, levels=levels)


@dataclass
class SpiderLevel:
    admissible: set[Spider] = field(default_factory=set)
    good: set[Spider] = field(default_factory=set)
    counts: dict[tuple[int, ...], int] = field(default_factory=dict)
    total: int = 0


@dataclass
class SpiderClassification:
    lv: tuple[int, ...]
    thresholds: Thresholds
    levels: dict[tuple[int, ...], SpiderLevel]

    def not_good_admissible(self, lv: tuple[int, ...]) -> set[Spider]:
        lvl = self.levels[lv]
        return lvl.admissible - lvl.good


def _sub_vectors(lv: tuple[int, ...]) -> list[tuple[int, ...]]:
    vecs = list(product(*(range(1, x + 1) for x in lv)))
    vecs.sort(key=lambda v: (sum(v), v))
    return vecs


def classify_spiders(
    G: Graph,
    lv: tuple[int, ...],
    thresholds: Thresholds,
    paths: PathClassification,
) -> SpiderClassification:
    """Classify spiders for lv and every componentwise-smaller vector.

    A spider is admissible iff each full leg is a good path and each
    single-leg truncation by one edge is a good spider (which recursively
    forces all deeper truncations).  Vectors are processed in increasing
    total length.
    """
    if any(x < 1 for x in lv):
        raise ValueError("length vector entries must be >= 1")
    if max(lv) > paths.k:
        raise ValueError("path tables not computed up to max leg length")
    levels: dict[tuple[int, ...], SpiderLevel] = {}

    for vec in _sub_vectors(lv):
        lvl = SpiderLevel()
        base = all(x == 1 for x in vec)
        for S in enumerate_spiders(G, vec):
            lvl.total += 1
            ok = base
            if not ok:
                ok = all(paths.is_good(S.leg_path(i)) for i in range(len(vec)))
                if ok:
                    for i, li in enumerate(vec):
                        if li == 1:
                            continue
                        shorter = vec[:i] + (li - 1,) + vec[i + 1:]
                        trunc = Spider(
                            S.centre,
                            S.legs[:i] + (S.legs[i][:-1],) + S.legs[i + 1:],
                        )
                        if trunc not in levels[shorter].good:
                            ok = False
                            break
            if ok:
                lvl.admissible.add(S)
                key = S.leaf_vector
                lvl.counts[key] = lvl.counts.get(key, 0) + 1
        bound = thresholds.f(sum(vec))
        for S in lvl.admissible:
            if lvl.counts[S.leaf_vector] <= bound:
                lvl.good.add(S)
        levels[vec] = lvl
    return SpiderClassification(lv=lv, thresholds=thresholds, levels=levels)


def not_good_ratio(
    G: Graph, lv: tuple[int, ...], spiders: SpiderClassification
) -> float:
    """(#admissible-but-not-good spiders with vector lv) / (n * delta^ell),
    delta = min degree.  +inf when delta = 0.
    """
    delta = G.min_degree()
    if delta == 0:
        return math.inf
    bad = len(spiders.not_good_admissible(lv))
    return bad / (G.n * delta ** sum(lv))

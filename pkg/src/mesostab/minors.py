"""Principal minors of Laplacians, computed directly and as forest sums.

The combinatorial route sums edge-weight products over the family of forests
in which every tree reaches exactly one vertex outside the selected set; the
direct route is plain elimination. The two must agree, which the test suite
checks against each other on random graphs.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

from .graphs import (
    EdgeSubset,
    OrientedIncidence,
    WeightedGraph,
    _vertex_subset,
    connected_components,
    is_forest,
)
from .numerics import GuardLimitError, det_bareiss, det_partial_pivot, require_square


@dataclass(frozen=True)
class ForestFamily:
    """All size-|S| edge subsets whose components each leave S.

    Every member is a forest and each of its trees contains exactly one
    vertex outside ``subset``.
    """

    subset: tuple[int, ...]
    members: tuple[EdgeSubset, ...]

    def __len__(self) -> int:
        return len(self.members)

    def weight_sum(self) -> float:
        return math.fsum(k.weight_product() for k in self.members)


def principal_minor_direct(L: np.ndarray, s: Iterable[int]) -> float:
    """det of the principal submatrix selecting rows and columns ``s`` (1-based)."""
    L = require_square(L)
    subset = _vertex_subset(s, L.shape[0], allow_empty=False)
    idx = [v - 1 for v in subset]
    return det_partial_pivot(L[np.ix_(idx, idx)])


def _forest_leaves(n: int, candidates: Sequence[tuple[int, int, int, float]],
                   special: Sequence[bool], size: int,
                   universe: Optional[Sequence[int]] = None) -> list[tuple[tuple[int, ...], float]]:
    """Backtracking enumeration of marked forests.

    Picks ``size`` edges from ``candidates`` (each (index, i, j, w), ordered
    by index) so that the chosen edges form a forest in which no component
    holds two ``special`` vertices. A leaf is kept when every component
    (every vertex of ``universe`` counting as a component when given,
    otherwise only edge-touched components) contains exactly one special
    vertex. Returns (member indices, weight product) pairs in lexicographic
    member order.
    """
    parent = list(range(n + 1))
    compsize = [1] * (n + 1)
    spec = [0] * (n + 1)
    for v in range(1, n + 1):
        if special[v]:
            spec[v] = 1

    def find(v: int) -> int:
        while parent[v] != v:
            v = parent[v]
        return v

    m = len(candidates)
    leaves: list[tuple[tuple[int, ...], float]] = []
    path: list[int] = []
    touched: list[int] = []

    def leaf_ok() -> bool:
        if universe is not None:
            roots = {find(v) for v in universe}
        else:
            roots = {find(v) for v in touched}
        return all(spec[r] == 1 for r in roots)

    def descend(pos: int, chosen: int, prod: float) -> None:
        if chosen == size:
            if leaf_ok():
                leaves.append((tuple(path), prod))
            return
        limit = m - (size - chosen) + 1
        for t in range(pos, limit):
            idx, i, j, w = candidates[t]
            ri, rj = find(i), find(j)
            if ri == rj:
                continue  # would close a cycle
            if spec[ri] + spec[rj] > 1:
                continue  # would trap two outside vertices in one tree
            if compsize[ri] < compsize[rj]:
                ri, rj = rj, ri
            parent[rj] = ri
            compsize[ri] += compsize[rj]
            spec[ri] += spec[rj]
            path.append(idx)
            touched.append(i)
            touched.append(j)
            descend(t + 1, chosen + 1, prod * w)
            touched.pop()
            touched.pop()
            path.pop()
            spec[ri] -= spec[rj]
            compsize[ri] -= compsize[rj]
            parent[rj] = rj
        return

    if size == 0:
        if leaf_ok():
            leaves.append(((), 1.0))
        return leaves
    descend(0, 0, 1.0)
    return leaves


def _family_leaves(g: WeightedGraph, subset: Sequence[int]) -> list[tuple[tuple[int, ...], float]]:
    in_s = [False] * (g.n + 1)
    for v in subset:
        in_s[v] = True
    special = [not in_s[v] for v in range(g.n + 1)]
    special[0] = False
    candidates = [(idx, i, j, w) for idx, i, j, w in g.simple_edges()]
    return _forest_leaves(g.n, candidates, special, len(subset))


def enumerate_forest_family(g: WeightedGraph, s: Iterable[int]) -> ForestFamily:
    """Exact enumeration of the forest family attached to vertex set ``s``.

    Members are returned in lexicographic edge-index order. Each member is
    re-validated: it must be a forest and each of its trees must contain
    exactly one vertex outside ``s``.
    """
    subset = _vertex_subset(s, g.n, allow_empty=False)
    if len(g.edges) > 32:
        raise GuardLimitError(f"forest enumeration is guarded at 32 edges, got {len(g.edges)}")
    members = []
    outside = set(g.vertices) - set(subset)
    for indices, _ in _family_leaves(g, subset):
        k = EdgeSubset(g, frozenset(indices))
        if not is_forest(k):
            raise AssertionError(f"enumeration produced a non-forest {indices}")
        for comp in connected_components(k):
            if len(comp & outside) != 1:
                raise AssertionError(f"component {sorted(comp)} does not leave {subset} exactly once")
        members.append(k)
    return ForestFamily(subset, tuple(members))


def principal_minor_combinatorial(g: WeightedGraph, s: Iterable[int]) -> float:
    """Forest-sum evaluation of the Laplacian principal minor for ``s``.

    An empty family gives 0, which covers both sparse graphs (fewer edges
    than |s|) and s equal to the full vertex set.
    """
    subset = _vertex_subset(s, g.n, allow_empty=False)
    if len(g.edges) > 32:
        raise GuardLimitError(f"forest enumeration is guarded at 32 edges, got {len(g.edges)}")
    return math.fsum(prod for _, prod in _family_leaves(g, subset))


def incidence_minor_magnitude(inc: OrientedIncidence, s: Iterable[int], k: EdgeSubset) -> int:
    """|det| of the incidence submatrix for rows ``s`` and the columns of ``k``.

    Computed by exact integer elimination; the result is always 0 or 1, and
    it is 1 precisely when ``k`` belongs to the forest family of ``s``.
    """
    subset = _vertex_subset(s, inc.n, allow_empty=False)
    cols = [inc.column_of(idx) for idx in k.sorted_members()]
    if len(subset) != len(cols):
        raise ValueError(f"|s|={len(subset)} and |k|={len(cols)} must match")
    rows = [v - 1 for v in subset]
    sub = inc.matrix[np.ix_(rows, cols)]
    value = abs(det_bareiss(sub.tolist()))
    if value not in (0, 1):
        raise AssertionError(f"incidence minor magnitude {value} outside {{0,1}}")
    return value


def cauchy_binet_expand(d: np.ndarray, e: np.ndarray, i: Iterable[int], j: Iterable[int]) -> float:
    """Minor of a product d@e as the sum over column/row selections.

    ``i`` selects rows of ``d`` and ``j`` columns of ``e`` (1-based). Used as
    an independent oracle for the forest-sum route, not in any hot path.
    """
    d = np.asarray(d, dtype=float)
    e = np.asarray(e, dtype=float)
    if d.ndim != 2 or e.ndim != 2 or d.shape[1] != e.shape[0]:
        raise ValueError(f"inner dimensions do not match: {d.shape} x {e.shape}")
    m = d.shape[1]
    rows = _vertex_subset(i, d.shape[0], allow_empty=False)
    cols = _vertex_subset(j, e.shape[1], allow_empty=False)
    if len(rows) != len(cols):
        raise ValueError("row and column selections must have equal size")
    if len(rows) > m:
        raise ValueError(f"selection size {len(rows)} exceeds inner dimension {m}")
    ridx = [v - 1 for v in rows]
    cidx = [v - 1 for v in cols]
    terms = []
    for chosen in itertools.combinations(range(m), len(rows)):
        left = det_partial_pivot(d[np.ix_(ridx, chosen)])
        right = det_partial_pivot(e[np.ix_(chosen, cidx)])
        terms.append(left * right)
    return math.fsum(terms)

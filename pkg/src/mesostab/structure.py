"""Meso-scale obstructions: positive spanning trees, negative cuts, the
forest-cutting decomposition with its alternating-sum identity, and the
harmonic weight bound on induced lines.

Loops are ignored by every operation here.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Optional

from .graphs import (
    EdgeSubset,
    WeightedGraph,
    _UnionFind,
    _vertex_subset,
    connected_components,
    graph_components,
    induced_lines,
    laplacian,
)
from .minors import _family_leaves, _forest_leaves, principal_minor_direct
from .numerics import REL_TOL, GuardLimitError

CUT_GUARD = 20


def _positive_spanning_forest(g: WeightedGraph, components: Optional[list[frozenset[int]]] = None
                              ) -> Optional[EdgeSubset]:
    """Spanning forest of positive edges covering each required component.

    ``components`` defaults to the components of ``g`` itself; passing a
    coarser partition demands that positive edges alone span each part.
    """
    if components is None:
        components = graph_components(g)
    uf = _UnionFind(g.vertices)
    forest = []
    for idx, i, j, w in g.simple_edges():
        if w > 0 and uf.union(i, j):
            forest.append(idx)
    for comp in components:
        roots = {uf.find(v) for v in comp}
        if len(roots) > 1:
            return None
    return EdgeSubset(g, frozenset(forest))


def positive_spanning_tree(g: WeightedGraph) -> Optional[EdgeSubset]:
    """A spanning tree using only positive edges, if one exists.

    For a connected graph this is a spanning tree; for a disconnected graph
    each component must be spanned by positive edges and the union forest is
    returned. Deterministic: edges are taken greedily in index order.
    """
    return _positive_spanning_forest(g)


def find_negative_cut(g: WeightedGraph) -> Optional[tuple[int, ...]]:
    """A vertex set whose (non-empty) boundary consists of negative edges.

    Found as a connected component of the positive-edge subgraph that fails
    to span its component of ``g``; among the candidates the smallest one is
    returned, ties broken by smallest vertex label. Returns None when every
    component has a positive spanning tree.
    """
    pos = _UnionFind(g.vertices)
    for _, i, j, w in g.simple_edges():
        if w > 0:
            pos.union(i, j)
    whole = _UnionFind(g.vertices)
    for _, i, j, _ in g.simple_edges():
        whole.union(i, j)
    groups: dict[int, set[int]] = {}
    for v in g.vertices:
        groups.setdefault(pos.find(v), set()).add(v)
    candidates = []
    for part in groups.values():
        v0 = min(part)
        comp = {v for v in g.vertices if whole.find(v) == whole.find(v0)}
        if part != comp:
            candidates.append(tuple(sorted(part)))
    if not candidates:
        return None
    v1 = min(candidates, key=lambda t: (len(t), t))
    side = set(v1)
    crossing = [(i, j, w) for _, i, j, w in g.simple_edges() if (i in side) != (j in side)]
    if not crossing or any(w >= 0 for _, _, w in crossing):
        raise AssertionError(f"negative-cut search produced an invalid witness {v1}")
    return v1


def _sigma_family(g: WeightedGraph, v1: frozenset[int], b: tuple[int, ...]) -> list[frozenset[int]]:
    """Forests of crossing edges whose side-1 endpoints are exactly ``b``.

    Each vertex of ``b`` contributes exactly one of its crossing edges, so
    the family is the product of the per-vertex choices; the empty ``b``
    yields the family holding only the empty edge set.
    """
    incident = {v: [] for v in b}
    for idx, i, j, _ in g.simple_edges():
        if (i in v1) != (j in v1):
            inside = i if i in v1 else j
            if inside in incident:
                incident[inside].append(idx)
    pools = [sorted(incident[v]) for v in b]
    if any(not pool for pool in pools):
        return []
    return [frozenset(choice) for choice in itertools.product(*pools)]


def _sigma_weight(g: WeightedGraph, v1: frozenset[int], b: tuple[int, ...]) -> float:
    members = _sigma_family(g, v1, b)
    if not members:
        return 0.0
    return math.fsum(math.prod(g.edges[e][2] for e in d) for d in members)


def _tee_family(g: WeightedGraph, v1: tuple[int, ...], b: tuple[int, ...]) -> list[frozenset[int]]:
    """Forests inside side 1 that partition it into one tree per ``b`` vertex.

    Isolated vertices count as singleton trees, so the forests have exactly
    |v1| - |b| edges and every tree contains exactly one vertex of ``b``.
    """
    v1set = set(v1)
    candidates = [(idx, i, j, w) for idx, i, j, w in g.simple_edges() if i in v1set and j in v1set]
    special = [False] * (g.n + 1)
    for v in b:
        special[v] = True
    size = len(v1) - len(b)
    if size < 0:
        return []
    leaves = _forest_leaves(g.n, candidates, special, size, universe=v1)
    return [frozenset(indices) for indices, _ in leaves]


@dataclass
class CutFamily:
    """The forest-cutting decomposition attached to one side of a cut.

    ``sigma`` maps each boundary-endpoint set B to its crossing forests and
    ``tee`` maps each marker set to the inside forests; ``union`` collects
    all pairwise unions, which reproduce the forest family of v1 minus the
    cut-off markers.
    """

    v1: tuple[int, ...]
    removed: tuple[int, ...]
    sigma: dict[tuple[int, ...], tuple[EdgeSubset, ...]]
    tee: dict[tuple[int, ...], tuple[EdgeSubset, ...]]
    union: tuple[EdgeSubset, ...]


def cut_decomposition(g: WeightedGraph, v1: Iterable[int], c: Iterable[int]) -> CutFamily:
    """Decompose the forest family of v1 minus c across the cut at v1.

    Every forest splits into its crossing part (one edge per boundary
    endpoint) and its inside part; the union over admissible boundary sets
    must reproduce the family exactly, and the function verifies that before
    returning.
    """
    side = _vertex_subset(v1, g.n, allow_empty=False)
    if len(side) >= g.n:
        raise ValueError("v1 must be a proper non-empty vertex subset")
    if len(side) > CUT_GUARD:
        raise GuardLimitError(f"cut decomposition is guarded at |v1|={CUT_GUARD}, got {len(side)}")
    removed = _vertex_subset(c, g.n)
    if not set(removed) <= set(side):
        raise ValueError("c must be a subset of v1")
    v1set = frozenset(side)
    rest = tuple(sorted(set(side) - set(removed)))

    sigma: dict[tuple[int, ...], tuple[EdgeSubset, ...]] = {}
    tee: dict[tuple[int, ...], tuple[EdgeSubset, ...]] = {}
    union: set[frozenset[int]] = set()
    for r in range(len(rest) + 1):
        for b in itertools.combinations(rest, r):
            crossing = _sigma_family(g, v1set, b)
            if not crossing:
                continue
            marker = tuple(sorted(set(removed) | set(b)))
            inside = _tee_family(g, side, marker)
            if not inside:
                continue
            sigma[b] = tuple(EdgeSubset(g, d) for d in crossing)
            tee[marker] = tuple(EdgeSubset(g, d) for d in inside)
            for a in crossing:
                for a2 in inside:
                    union.add(a | a2)

    if rest:
        expected = {frozenset(indices) for indices, _ in _family_leaves(g, rest)}
    else:
        expected = {frozenset()}
    if union != expected:
        raise AssertionError("cut decomposition does not reproduce the forest family")
    ordered = tuple(EdgeSubset(g, m) for m in sorted(union, key=sorted))
    return CutFamily(side, removed, sigma, tee, ordered)


def cut_identity_terms(g: WeightedGraph, v1: Iterable[int]) -> list[float]:
    """Terms of the alternating cut identity for ``v1``.

    Term for marker set C: (-1)^|C| times the crossing-forest weight of C
    times the Laplacian principal minor of v1 minus C, with the empty minor
    equal to 1. Markers whose crossing weight is zero are skipped; the terms
    come in subset order (sizes ascending, lexicographic within a size) and
    sum to zero in exact arithmetic.
    """
    side = _vertex_subset(v1, g.n, allow_empty=False)
    if len(side) >= g.n:
        raise ValueError("v1 must be a proper non-empty vertex subset")
    if len(side) > CUT_GUARD:
        raise GuardLimitError(f"cut identity is guarded at |v1|={CUT_GUARD}, got {len(side)}")
    v1set = frozenset(side)
    L = laplacian(g)
    terms = []
    for r in range(len(side) + 1):
        for c in itertools.combinations(side, r):
            weight = _sigma_weight(g, v1set, c)
            if weight == 0.0:
                continue
            rest = tuple(sorted(set(side) - set(c)))
            minor = principal_minor_direct(L, rest) if rest else 1.0
            terms.append((-1.0) ** r * weight * minor)
    return terms


def verify_cut_identity(g: WeightedGraph, v1: Iterable[int]) -> float:
    """Residual of the alternating cut identity; zero up to roundoff."""
    return math.fsum(cut_identity_terms(g, v1))


@dataclass(frozen=True)
class LineBoundReport:
    """Verdict for one induced line: negative-edge census and weight bound."""

    line: EdgeSubset
    negative_edges: tuple[int, ...]
    bound: Optional[float]
    violated: bool


def _require_induced_line(g: WeightedGraph, h: EdgeSubset) -> None:
    deg = g.degree_map()
    vert_set = h.touched_vertices()
    verts = sorted(vert_set)
    within = {}
    for idx, i, j, _ in g.simple_edges():
        if i in vert_set and j in vert_set:
            within[idx] = (i, j)
    if set(within) != set(h.members):
        raise ValueError("edge set is not induced: its vertices carry extra edges")
    local = {v: 0 for v in verts}
    for i, j in within.values():
        local[i] += 1
        local[j] += 1
    ends = [v for v in verts if local[v] == 1]
    connected = len(connected_components(h)) == 1
    if len(h.members) < 2 or len(ends) != 2 or not connected \
            or any(local[v] != 2 for v in verts if v not in ends):
        raise ValueError("edge set is not a simple path with two endpoints")
    if any(deg[v] != 2 for v in verts if v not in ends):
        raise ValueError("an interior vertex has degree other than 2 in the host graph")


def line_weight_bound(g: WeightedGraph, h: EdgeSubset, e: int) -> float:
    """Harmonic upper bound on |weight| of the unique negative edge of a line.

    The bound is the reciprocal of the summed reciprocals of the other
    weights; exceeding it forces a negative interior principal minor.
    """
    _require_induced_line(g, h)
    if e not in h.members:
        raise ValueError(f"edge index {e} is not part of the line")
    negatives = [idx for idx in h.sorted_members() if g.edges[idx][2] < 0]
    if negatives != [e]:
        raise ValueError(
            f"line must have exactly the one negative edge {e}; found negatives {negatives}"
        )
    return 1.0 / math.fsum(1.0 / g.edges[idx][2] for idx in h.sorted_members() if idx != e)


def line_obstruction_scan(g: WeightedGraph, rel: float = REL_TOL) -> list[LineBoundReport]:
    """Check every maximal induced line for negative-edge obstructions.

    Two or more negative edges violate unconditionally; a single negative
    edge violates when its magnitude exceeds the harmonic bound of the
    remaining weights. Reports come in lexicographic line order.
    """
    reports = []
    for line in induced_lines(g):
        negatives = tuple(idx for idx in line.sorted_members() if g.edges[idx][2] < 0)
        if len(negatives) == 0:
            reports.append(LineBoundReport(line, negatives, None, False))
        elif len(negatives) >= 2:
            reports.append(LineBoundReport(line, negatives, None, True))
        else:
            bound = line_weight_bound(g, line, negatives[0])
            magnitude = abs(g.edges[negatives[0]][2])
            tol = rel * max(1.0, bound, magnitude)
            reports.append(LineBoundReport(line, negatives, bound, magnitude > bound + tol))
    return reports

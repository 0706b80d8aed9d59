"""Combinatorial isomorphism of face lattices.

Two polytopes are combinatorially equivalent iff some vertex bijection carries
one facet family onto the other. We search for such a bijection on the
bipartite vertex/facet incidence graph: colour refinement run jointly on both
graphs (so colour ids mean the same thing on each side), then individualize a
vertex and recurse.
"""
from __future__ import annotations

from collections import Counter
from typing import Optional

from .lattice import FaceLattice, LatticeError, direct_sum_simplices, members


class NotOfThisForm(LatticeError):
    pass


class _Incidence:
    __slots__ = ("n", "facets", "vertex_facets")

    def __init__(self, P: FaceLattice):
        self.n = P.num_vertices
        self.facets = P.facets
        self.vertex_facets = [
            [j for j, G in enumerate(self.facets) if G >> v & 1] for v in range(self.n)
        ]


def _relabel(sig_a: list, sig_b: list) -> Optional[tuple[list[int], list[int]]]:
    if Counter(sig_a) != Counter(sig_b):
        return None
    ids = {s: i for i, s in enumerate(sorted(set(sig_a)))}
    return [ids[s] for s in sig_a], [ids[s] for s in sig_b]


def _refine(A: _Incidence, B: _Incidence, va: list[int], vb: list[int]):
    """Refine vertex colours to a joint equitable partition, or None on mismatch."""
    fa = [0] * len(A.facets)
    fb = [0] * len(B.facets)
    ncolours = -1
    while True:
        sfa = [(fa[j], tuple(sorted(va[v] for v in members(G)))) for j, G in enumerate(A.facets)]
        sfb = [(fb[j], tuple(sorted(vb[v] for v in members(G)))) for j, G in enumerate(B.facets)]
        res = _relabel(sfa, sfb)
        if res is None:
            return None
        fa, fb = res
        sva = [(va[v], tuple(sorted(fa[j] for j in A.vertex_facets[v]))) for v in range(A.n)]
        svb = [(vb[v], tuple(sorted(fb[j] for j in B.vertex_facets[v]))) for v in range(B.n)]
        res = _relabel(sva, svb)
        if res is None:
            return None
        va, vb = res
        count = len(set(va)) + len(set(fa))
        if count == ncolours:
            return va, vb
        ncolours = count


def _search(A: _Incidence, B: _Incidence, va: list[int], vb: list[int], target: frozenset[int]):
    refined = _refine(A, B, va, vb)
    if refined is None:
        return None
    va, vb = refined
    cells: dict[int, list[int]] = {}
    for v, c in enumerate(va):
        cells.setdefault(c, []).append(v)
    open_cells = [c for c, vs in cells.items() if len(vs) > 1]
    if not open_cells:
        where = {c: w for w, c in enumerate(vb)}
        mapping = [where[c] for c in va]
        image = frozenset(sum(1 << mapping[v] for v in members(G)) for G in A.facets)
        return mapping if image == target else None
    colour = min(open_cells, key=lambda c: (len(cells[c]), c))
    v = cells[colour][0]
    fresh = max(va) + 1
    for w in (w for w, c in enumerate(vb) if c == colour):
        va2 = list(va)
        vb2 = list(vb)
        va2[v] = fresh
        vb2[w] = fresh
        found = _search(A, B, va2, vb2, target)
        if found is not None:
            return found
    return None


def find_isomorphism(P: FaceLattice, Q: FaceLattice) -> Optional[list[int]]:
    """Return ``mapping`` with P-vertex ``v`` -> Q-vertex ``mapping[v]``, or None."""
    if P.dim != Q.dim or P.num_vertices != Q.num_vertices:
        return None
    if P.f_vector() != Q.f_vector():
        return None
    A, B = _Incidence(P), _Incidence(Q)
    return _search(A, B, [0] * A.n, [0] * B.n, frozenset(B.facets))


def is_isomorphic(P: FaceLattice, Q: FaceLattice) -> bool:
    return find_isomorphism(P, Q) is not None


def classify_simplicial_d2(P: FaceLattice) -> int:
    """Return the m in 1..d//2 with P combinatorially equal to T^d_m."""
    d = P.dim
    if P.num_vertices != d + 2:
        raise NotOfThisForm(f"expected {d + 2} vertices, got {P.num_vertices}")
    if not P.is_simplicial():
        raise NotOfThisForm("polytope is not simplicial")
    for m in range(1, d // 2 + 1):
        # facet counts (m+1)(d-m+1) are distinct for m <= d/2
        if len(P.facets) == (m + 1) * (d - m + 1) and is_isomorphic(P, direct_sum_simplices(m, d - m)):
            return m
    raise NotOfThisForm("no T^d_m matches")

"""Combinatorial polytopes as graded face lattices over vertex subsets.

Faces are stored as Python ints used as bitmasks over ``range(num_vertices)``.
Every lattice is rebuilt from its facet family by intersection closure, so all
constructors below only have to produce facets.
"""
from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

SCHEMA_VERSION = 1
DEFAULT_MAX_N = 64


class LatticeError(ValueError):
    """Input does not describe the face lattice of a polytope."""


class NotGraded(LatticeError):
    pass


class AntichainViolation(LatticeError):
    pass


class RankMismatch(LatticeError):
    pass


class VertexLimitExceeded(LatticeError):
    pass


def max_vertices() -> int:
    raw = os.environ.get("FACELAT_MAX_N")
    return int(raw) if raw else DEFAULT_MAX_N


def bits(indices: Iterable[int]) -> int:
    mask = 0
    for i in indices:
        mask |= 1 << i
    return mask


def members(mask: int) -> tuple[int, ...]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def _popcount(mask: int) -> int:
    return bin(mask).count("1")


@dataclass(frozen=True)
class VertexFacetIncidence:
    n: int
    facet_sets: tuple[frozenset[int], ...]

    @classmethod
    def from_lists(cls, n: int, facets: Iterable[Iterable[int]]) -> "VertexFacetIncidence":
        return cls(n, tuple(frozenset(f) for f in facets))

    def masks(self) -> list[int]:
        return [bits(f) for f in self.facet_sets]


@dataclass(frozen=True)
class FaceLattice:
    """Face lattice of a ``dim``-polytope on vertices ``0..num_vertices-1``.

    ``ranks[k + 1]`` holds the faces of rank ``k`` as sorted bitmasks, for
    ``k = -1 .. dim``. Build instances with :func:`build_from_incidence` or
    one of the constructors; the raw constructor does not validate.
    """

    dim: int
    num_vertices: int
    ranks: tuple[tuple[int, ...], ...] = field(repr=False)

    def faces(self, k: int) -> tuple[int, ...]:
        if k < -1 or k > self.dim:
            return ()
        return self.ranks[k + 1]

    def face_sets(self, k: int) -> list[frozenset[int]]:
        return [frozenset(members(f)) for f in self.faces(k)]

    @property
    def top(self) -> int:
        return (1 << self.num_vertices) - 1

    @property
    def facets(self) -> tuple[int, ...]:
        return self.faces(self.dim - 1)

    @cached_property
    def rank_of(self) -> dict[int, int]:
        return {f: k - 1 for k, level in enumerate(self.ranks) for f in level}

    def all_faces(self) -> list[int]:
        return [f for level in self.ranks for f in level]

    def f_vector(self) -> tuple[int, ...]:
        return tuple(len(self.faces(k)) for k in range(self.dim))

    def incidence(self) -> VertexFacetIncidence:
        return VertexFacetIncidence(self.num_vertices, tuple(frozenset(members(f)) for f in self.facets))

    def is_simplicial(self) -> bool:
        return all(_popcount(f) == self.dim for f in self.facets)

    def __str__(self) -> str:
        return f"FaceLattice(dim={self.dim}, n={self.num_vertices}, f={self.f_vector()})"


def f_vector(P: FaceLattice) -> tuple[int, ...]:
    return P.f_vector()


def _point() -> FaceLattice:
    return FaceLattice(0, 1, ((0,), (1,)))


def _maximal(cands: set[int]) -> list[int]:
    return [c for c in cands if not any(c != o and c & o == c for o in cands)]


def build_from_incidence(inc: VertexFacetIncidence | Sequence[Iterable[int]], d: int, n: int | None = None) -> FaceLattice:
    """Rebuild the full face lattice from a vertex-facet incidence.

    Faces are all intersections of facets, plus the empty face and the full
    vertex set. Ranks come from walking lower covers downward from the top;
    any face reached at two different depths means the family is not graded.
    """
    if not isinstance(inc, VertexFacetIncidence):
        if n is None:
            raise TypeError("n is required when passing raw facet lists")
        inc = VertexFacetIncidence.from_lists(n, inc)
    n = inc.n
    if d < 1:
        raise ValueError(f"build_from_incidence needs d >= 1, got {d}")
    if n > max_vertices():
        raise VertexLimitExceeded(f"{n} vertices exceeds limit {max_vertices()} (set FACELAT_MAX_N)")
    facets = inc.masks()
    top = (1 << n) - 1
    for f in inc.facet_sets:
        if any(v < 0 or v >= n for v in f):
            raise LatticeError(f"facet {sorted(f)} has vertices outside 0..{n - 1}")
    for a, b in combinations(range(len(facets)), 2):
        fa, fb = facets[a], facets[b]
        if fa & fb == fa or fa & fb == fb:
            raise AntichainViolation(
                f"facet {members(fa)} and facet {members(fb)} are nested or equal"
            )
    if n < d + 1:
        raise LatticeError(f"a {d}-polytope needs at least {d + 1} vertices, got {n}")
    union = 0
    for f in facets:
        union |= f
    if union != top:
        raise LatticeError(f"vertices {members(top & ~union)} lie in no facet")
    if top in facets:
        raise AntichainViolation("a facet equals the full vertex set")

    depth = {top: 0}
    current = [top]
    while current:
        nxt: list[int] = []
        for G in current:
            if G == 0:
                continue
            cands = {G & h for h in facets}
            cands.discard(G)
            if not cands:
                cands = {0}
            for c in _maximal(cands):
                want = depth[G] + 1
                seen = depth.get(c)
                if seen is None:
                    depth[c] = want
                    nxt.append(c)
                elif seen != want:
                    raise NotGraded(f"face {members(c)} sits at depths {seen} and {want}")
        current = nxt

    top_rank = depth[0] - 1
    if top_rank != d:
        raise RankMismatch(f"computed dimension {top_rank}, expected {d}")
    levels: list[list[int]] = [[] for _ in range(d + 2)]
    for face, dep in depth.items():
        levels[d - dep + 1].append(face)
    atoms = sorted(levels[1])
    if atoms != [1 << v for v in range(n)]:
        raise LatticeError("rank-0 faces are not exactly the vertex singletons")
    return FaceLattice(d, n, tuple(tuple(sorted(level)) for level in levels))


# constructors


def simplex(s: int) -> FaceLattice:
    if s < 0:
        raise ValueError(f"simplex dimension must be >= 0, got {s}")
    if s == 0:
        return _point()
    full = (1 << (s + 1)) - 1
    return build_from_incidence(VertexFacetIncidence(s + 1, tuple(frozenset(members(full & ~(1 << v))) for v in range(s + 1))), s)


def pyramid(P: FaceLattice) -> FaceLattice:
    apex = 1 << P.num_vertices
    facets = [P.top] + [F | apex for F in P.faces(P.dim - 1)]
    return build_from_incidence([members(f) for f in facets], P.dim + 1, P.num_vertices + 1)


def k_fold_pyramid(P: FaceLattice, r: int) -> FaceLattice:
    if r < 0:
        raise ValueError(f"pyramid fold count must be >= 0, got {r}")
    for _ in range(r):
        P = pyramid(P)
    return P


def bipyramid(P: FaceLattice) -> FaceLattice:
    if P.dim < 1:
        raise ValueError("bipyramid needs a polytope of dimension >= 1")
    plus, minus = 1 << P.num_vertices, 1 << (P.num_vertices + 1)
    facets = [G | apex for G in P.facets for apex in (plus, minus)]
    return build_from_incidence([members(f) for f in facets], P.dim + 1, P.num_vertices + 2)


def direct_sum(P: FaceLattice, Q: FaceLattice) -> FaceLattice:
    """Free sum with vertex order: P's vertices, then Q's shifted up."""
    if P.dim < 1 or Q.dim < 1:
        raise ValueError("direct sum summands need dimension >= 1")
    shift = P.num_vertices
    facets = [F | (G << shift) for F in P.facets for G in Q.facets]
    return build_from_incidence([members(f) for f in facets], P.dim + Q.dim, P.num_vertices + Q.num_vertices)


def direct_sum_simplices(m: int, r: int) -> FaceLattice:
    if m < 1 or r < 1:
        raise ValueError(f"direct sum of simplices needs m, r >= 1, got ({m}, {r})")
    return direct_sum(simplex(m), simplex(r))


def t_dsm(d: int, s: int, m: int) -> FaceLattice:
    """(d - s)-fold pyramid over the free sum of an m-simplex and an (s - m)-simplex."""
    if not (2 <= s <= d) or not (1 <= m <= s - 1):
        raise ValueError(f"t_dsm needs 2 <= s <= d and 1 <= m <= s-1, got d={d}, s={s}, m={m}")
    return k_fold_pyramid(direct_sum_simplices(m, s - m), d - s)


def dual(P: FaceLattice) -> FaceLattice:
    # vertex j of the dual is facet j of P; vertex v of P becomes the dual facet {j : v in G_j}
    if P.dim == 0:
        return _point()
    facets = P.facets
    dual_facets = [[j for j, G in enumerate(facets) if G >> v & 1] for v in range(P.num_vertices)]
    return build_from_incidence(dual_facets, P.dim, len(facets))


def vertex_figure(P: FaceLattice, v: int) -> FaceLattice:
    if not 0 <= v < P.num_vertices:
        raise ValueError(f"vertex {v} out of range 0..{P.num_vertices - 1}")
    if P.dim < 1:
        raise ValueError("a point has no vertex figure")
    if P.dim == 1:
        return _point()
    bit = 1 << v
    edges = [e for e in P.faces(1) if e & bit]
    facets = [[j for j, e in enumerate(edges) if e & G == e] for G in P.facets if G & bit]
    return build_from_incidence(facets, P.dim - 1, len(edges))


# serialization


def to_json_dict(P: FaceLattice) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "dim": P.dim,
        "num_vertices": P.num_vertices,
        "facets": [list(members(f)) for f in P.facets],
    }


def from_json_dict(doc: dict) -> FaceLattice:
    version = doc.get("schema_version")
    if version != SCHEMA_VERSION:
        raise ValueError(f"unsupported lattice schema_version {version!r}")
    d, n = int(doc["dim"]), int(doc["num_vertices"])
    if d == 0:
        if n != 1:
            raise LatticeError("a 0-polytope has exactly one vertex")
        return _point()
    return build_from_incidence(doc["facets"], d, n)


def dumps(P: FaceLattice) -> str:
    return json.dumps(to_json_dict(P))


def loads(text: str) -> FaceLattice:
    return from_json_dict(json.loads(text))

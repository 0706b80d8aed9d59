"""Exact rational brute-force geometry, used as an independent check on the
combinatorial constructors.

Facets are found by trying every d-subset of points as a candidate supporting
hyperplane. Coordinates are scaled to integers up front so every sign test is
an integer computation.
"""
from __future__ import annotations

import json
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import gcd, lcm
from typing import Iterable, Sequence

from . import construction as cs
from .lattice import FaceLattice, VertexFacetIncidence, _point, build_from_incidence

SCHEMA_VERSION = 1
COORD_BOX = 8
MAX_ATTEMPTS = 10_000


class OracleError(ValueError):
    pass


class NotFullDimensional(OracleError):
    pass


class FewerThanDPlus1Points(OracleError):
    pass


class DualNotRealizable(OracleError):
    pass


class SamplingExhausted(RuntimeError):
    pass


@dataclass(frozen=True)
class PointConfig:
    ambient_dim: int
    points: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        pts = tuple(tuple(Fraction(x) for x in p) for p in self.points)
        object.__setattr__(self, "points", pts)
        for p in pts:
            if len(p) != self.ambient_dim:
                raise OracleError(f"point {p} does not have {self.ambient_dim} coordinates")
        if len(set(pts)) != len(pts):
            raise OracleError("duplicate points")

    @classmethod
    def of(cls, points: Iterable[Sequence]) -> "PointConfig":
        pts = [tuple(Fraction(x) for x in p) for p in points]
        if not pts:
            raise OracleError("empty point configuration")
        return cls(len(pts[0]), tuple(pts))

    def permuted(self, order: Sequence[int]) -> "PointConfig":
        return PointConfig(self.ambient_dim, tuple(self.points[i] for i in order))

    def to_json_dict(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "dim": self.ambient_dim,
            "points": [[str(x) for x in p] for p in self.points],
        }

    @classmethod
    def from_json_dict(cls, doc: dict) -> "PointConfig":
        if doc.get("schema_version") != SCHEMA_VERSION:
            raise OracleError(f"unsupported point schema_version {doc.get('schema_version')!r}")
        return cls(int(doc["dim"]), tuple(tuple(Fraction(x) for x in p) for p in doc["points"]))

    def dumps(self) -> str:
        return json.dumps(self.to_json_dict())


@dataclass(frozen=True)
class Hyperplane:
    """Oriented hyperplane ``normal . x = offset``, integer and content-reduced,
    first nonzero normal entry positive."""

    normal: tuple[int, ...]
    offset: int

    @classmethod
    def canonical(cls, normal: Sequence[int], offset: int) -> "Hyperplane":
        if not any(normal):
            raise OracleError("hyperplane normal must be nonzero")
        g = 0
        for x in normal:
            g = gcd(g, x)
        g = gcd(g, offset)
        lead = next(x for x in normal if x)
        if lead < 0:
            g = -g
        return cls(tuple(x // g for x in normal), offset // g)

    def evaluate(self, p: Sequence) -> Fraction:
        return sum((a * x for a, x in zip(self.normal, p)), Fraction(0)) - self.offset


def _integer_rows(points: Sequence[Sequence[Fraction]]) -> tuple[list[list[int]], int]:
    scale = 1
    for p in points:
        for x in p:
            scale = lcm(scale, x.denominator)
    return [[int(x * scale) for x in p] for p in points], scale


def _rank(rows: list[list[int]]) -> int:
    """Rank by fraction-free (Bareiss) elimination."""
    a = [list(r) for r in rows]
    if not a:
        return 0
    nrows, ncols = len(a), len(a[0])
    rank, prev = 0, 1
    for col in range(ncols):
        pivot = next((r for r in range(rank, nrows) if a[r][col]), None)
        if pivot is None:
            continue
        a[rank], a[pivot] = a[pivot], a[rank]
        p = a[rank][col]
        for r in range(rank + 1, nrows):
            for c in range(col + 1, ncols):
                a[r][c] = (p * a[r][c] - a[r][col] * a[rank][c]) // prev
            a[r][col] = 0
        prev = p
        rank += 1
        if rank == nrows:
            break
    return rank


def _det(m: list[list[int]]) -> int:
    n = len(m)
    if n == 0:
        return 1
    a = [list(r) for r in m]
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((r for r in range(k + 1, n) if a[r][k]), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def affine_dim(pc: PointConfig) -> int:
    if not pc.points:
        raise OracleError("empty point configuration")
    rows, _ = _integer_rows(pc.points)
    base = rows[0]
    return _rank([[x - b for x, b in zip(r, base)] for r in rows[1:]])


def _normal(rows: list[list[int]], d: int) -> list[int]:
    # generalized cross product of d-1 vectors in Z^d
    return [
        (-1) ** c * _det([r[:c] + r[c + 1:] for r in rows])
        for c in range(d)
    ]


@lru_cache(maxsize=4096)
def _enumerate(pc: PointConfig) -> tuple[tuple[int, ...], tuple[frozenset[int], ...], tuple[Hyperplane, ...]]:
    """(hull vertex indices, facet point-index sets, facet hyperplanes)."""
    d, N = pc.ambient_dim, len(pc.points)
    if d < 1:
        raise NotFullDimensional("ambient dimension must be >= 1")
    if N < d + 1:
        raise FewerThanDPlus1Points(f"{N} points cannot span {d} dimensions")
    if affine_dim(pc) != d:
        raise NotFullDimensional(f"affine dimension {affine_dim(pc)} < ambient {d}")
    P, scale = _integer_rows(pc.points)
    seen: set[tuple[tuple[int, ...], int]] = set()
    facet_sets, planes = [], []
    for subset in combinations(range(N), d):
        base = P[subset[0]]
        rows = [[x - b for x, b in zip(P[i], base)] for i in subset[1:]]
        normal = _normal(rows, d)
        if not any(normal):
            continue
        offset = sum(a * b for a, b in zip(normal, base))
        g = 0
        for x in normal:
            g = gcd(g, x)
        g = gcd(g, offset)
        lead = next(x for x in normal if x)
        g = -g if lead < 0 else g
        key = (tuple(x // g for x in normal), offset // g)
        if key in seen:
            continue
        seen.add(key)
        vals = [sum(a * x for a, x in zip(key[0], p)) - key[1] for p in P]
        if all(v >= 0 for v in vals) or all(v <= 0 for v in vals):
            facet_sets.append(frozenset(i for i, v in enumerate(vals) if v == 0))
            planes.append(Hyperplane.canonical([x * scale for x in key[0]], key[1]))
    vertices = []
    for i in range(N):
        meet = frozenset(range(N))
        for F in facet_sets:
            if i in F:
                meet &= F
        if meet == {i}:
            vertices.append(i)
    return tuple(vertices), tuple(facet_sets), tuple(planes)


def hull_vertex_indices(pc: PointConfig) -> tuple[int, ...]:
    return _enumerate(pc)[0]


def supporting_hyperplanes(pc: PointConfig) -> tuple[Hyperplane, ...]:
    return _enumerate(pc)[2]


def facet_enumeration(pc: PointConfig) -> VertexFacetIncidence:
    """Facets of conv(pc) as sets of hull-vertex indices, reindexed 0..n-1 in input order."""
    vertices, facet_sets, _ = _enumerate(pc)
    index = {p: j for j, p in enumerate(vertices)}
    return VertexFacetIncidence(
        len(vertices),
        tuple(frozenset(index[i] for i in F if i in index) for F in facet_sets),
    )


def lattice_from_points(pc: PointConfig) -> FaceLattice:
    if pc.ambient_dim == 0:
        if len(pc.points) != 1:
            raise OracleError("a 0-dimensional configuration has a single point")
        return _point()
    return build_from_incidence(facet_enumeration(pc), pc.ambient_dim)


# realization of construction specs


def _barycenter(points: Sequence[tuple[Fraction, ...]]) -> tuple[Fraction, ...]:
    n = len(points)
    return tuple(sum(c, Fraction(0)) / n for c in zip(*points))


def _pyramid_points(pc: PointConfig) -> PointConfig:
    lifted = [p + (Fraction(0),) for p in pc.points]
    apex = _barycenter(pc.points) + (Fraction(1),)
    return PointConfig(pc.ambient_dim + 1, tuple(lifted + [apex]))


def realize(spec: cs.ConstructionSpec) -> PointConfig:
    """Exact coordinates for a Dual-free construction, vertices in the same
    order the combinatorial constructor uses."""
    if isinstance(spec, cs.Simplex):
        s = spec.s
        origin = tuple(Fraction(0) for _ in range(s))
        units = [tuple(Fraction(int(i == j)) for j in range(s)) for i in range(s)]
        return PointConfig(s, (origin, *units))
    if isinstance(spec, cs.Pyramid):
        return _pyramid_points(realize(spec.child))
    if isinstance(spec, cs.KFoldPyramid):
        pc = realize(spec.child)
        for _ in range(spec.r):
            pc = _pyramid_points(pc)
        return pc
    if isinstance(spec, cs.Bipyramid):
        pc = realize(spec.child)
        if pc.ambient_dim < 1:
            raise OracleError("bipyramid needs a polytope of dimension >= 1")
        c = _barycenter(pc.points)
        lifted = [p + (Fraction(0),) for p in pc.points]
        return PointConfig(pc.ambient_dim + 1, tuple(lifted + [c + (Fraction(1),), c + (Fraction(-1),)]))
    if isinstance(spec, cs.DirectSum):
        a, b = realize(spec.left), realize(spec.right)
        ca, cb = _barycenter(a.points), _barycenter(b.points)
        za = tuple(Fraction(0) for _ in range(a.ambient_dim))
        zb = tuple(Fraction(0) for _ in range(b.ambient_dim))
        left = [tuple(x - c for x, c in zip(p, ca)) + zb for p in a.points]
        right = [za + tuple(x - c for x, c in zip(p, cb)) for p in b.points]
        return PointConfig(a.ambient_dim + b.ambient_dim, tuple(left + right))
    if isinstance(spec, cs.TDSM):
        return realize(spec.expand())
    if isinstance(spec, cs.Dual):
        raise DualNotRealizable("duals are combinatorial only; no polar realization")
    raise TypeError(f"not a construction spec: {spec!r}")


def random_polytope(d: int, n: int, seed: int) -> PointConfig:
    """n integer points in [-8, 8]^d in convex position, full-dimensional.

    Deterministic in ``seed``. Raises SamplingExhausted after 10,000 rejected draws.
    """
    if d < 2:
        raise ValueError(f"random_polytope needs d >= 2, got {d}")
    if not d + 1 <= n <= 2 * d:
        raise ValueError(f"random_polytope needs {d + 1} <= n <= {2 * d}, got {n}")
    if (2 * COORD_BOX + 1) ** d < n:
        raise SamplingExhausted(f"box [-{COORD_BOX}, {COORD_BOX}]^{d} has fewer than {n} lattice points")
    rng = random.Random(seed)
    for _ in range(MAX_ATTEMPTS):
        pts: list[tuple[int, ...]] = []
        while len(pts) < n:
            p = tuple(rng.randint(-COORD_BOX, COORD_BOX) for _ in range(d))
            if p not in pts:
                pts.append(p)
        pc = PointConfig(d, tuple(tuple(Fraction(x) for x in p) for p in pts))
        if affine_dim(pc) != d:
            continue
        if len(hull_vertex_indices(pc)) == n:
            return pc
    raise SamplingExhausted(f"no {n}-vertex {d}-polytope after {MAX_ATTEMPTS} draws (seed={seed})")

"""Face-count lower bounds for d-polytopes with at most 2d vertices.

All arithmetic is exact integer arithmetic.
"""
from __future__ import annotations

import csv
import enum
import io
import logging
from dataclasses import dataclass, field
from functools import lru_cache
from math import comb
from typing import Optional, Sequence

from .isomorphism import is_isomorphic
from .lattice import FaceLattice, dual, members, t_dsm

log = logging.getLogger(__name__)

CSV_HEADER = ("d", "s", "k", "f_k", "phi_k", "slack")


class BoundDomainError(ValueError):
    """Vertex count outside d+1 <= n <= 2d, where the bound is not asserted."""


class PreconditionError(ValueError):
    pass


def binomial(n: int, k: int) -> int:
    if n < 0:
        raise ValueError(f"binomial needs n >= 0, got {n}")
    if k < 0 or k > n:
        return 0
    return comb(n, k)


def _phi_unchecked(k: int, n: int, d: int) -> int:
    s = n - d
    return binomial(d + 1, k + 1) + binomial(d, k + 1) - binomial(d + 1 - s, k + 1)


def phi(k: int, n: int, d: int) -> int:
    """Minimum number of k-faces of a d-polytope with n vertices, d+1 <= n <= 2d."""
    if d < 1:
        raise BoundDomainError(f"need d >= 1, got {d}")
    if not d + 1 <= n <= 2 * d:
        raise BoundDomainError(f"n={n} outside [{d + 1}, {2 * d}] for d={d}")
    if not 0 <= k <= d - 1:
        raise BoundDomainError(f"k={k} outside [0, {d - 1}]")
    return _phi_unchecked(k, n, d)


def closed_fk_tdsm(k: int, d: int, a: int, m: int) -> int:
    """Number of k-faces of the (d-a)-fold pyramid over T^a_m, in closed form."""
    if not (2 <= a <= d) or not (1 <= m <= a - 1) or not (0 <= k <= d - 1):
        raise ValueError(f"closed_fk_tdsm out of range: k={k}, d={d}, a={a}, m={m}")
    j = d - k + 1
    return (
        binomial(d + 2, j)
        - binomial(d - a + m + 1, j)
        - binomial(d - m + 1, j)
        + binomial(d - a + 1, j)
    )


def count_kfaces_containing(P: FaceLattice, S, k: int) -> int:
    """Number of k-faces of P meeting the vertex set S (iterable of indices or a bitmask)."""
    mask = S if isinstance(S, int) else sum(1 << v for v in set(S))
    if mask == 0:
        raise ValueError("S must be nonempty")
    if mask >> P.num_vertices:
        raise ValueError("S contains indices that are not vertices")
    if not 0 <= k <= P.dim:
        raise ValueError(f"k={k} outside [0, {P.dim}]")
    return sum(1 for F in P.faces(k) if F & mask)


def prop_lower_sum(d: int, m: int, k: int) -> int:
    return sum(binomial(d - i + 1, k) for i in range(1, m + 1))


@dataclass(frozen=True)
class WitnessSequence:
    vertices: tuple[int, ...]
    faces: tuple[int, ...]

    def face_sets(self) -> list[tuple[int, ...]]:
        return [members(F) for F in self.faces]

    def violations(self, P: FaceLattice) -> list[str]:
        out = []
        for i, (v, F) in enumerate(zip(self.vertices, self.faces), start=1):
            rank = P.rank_of.get(F)
            if rank != P.dim - i + 1:
                out.append(f"F_{i} has rank {rank}, expected {P.dim - i + 1}")
            if not F >> v & 1:
                out.append(f"F_{i} misses v_{i}={v}")
            for j, u in enumerate(self.vertices[: i - 1], start=1):
                if F >> u & 1:
                    out.append(f"F_{i} contains v_{j}={u}")
        return out


def _facets_of_face(P: FaceLattice, F: int) -> list[int]:
    rank = P.rank_of[F]
    return [G for G in P.faces(rank - 1) if G & F == G]


def witness_sequence(P: FaceLattice, verts: Sequence[int]) -> WitnessSequence:
    """Faces F_1..F_m with dim F_i = d-i+1, v_i in F_i, and v_j not in F_i for j < i.

    Follows the inductive construction: F_m is a facet of the last face built
    for (v_1..v_{m-2}, v_m) that keeps v_m and drops v_{m-1}. Ties go to the
    lexicographically smallest vertex set.
    """
    verts = tuple(verts)
    m = len(verts)
    if m == 0:
        raise ValueError("need at least one vertex")
    if m > P.dim:
        raise ValueError(f"m={m} exceeds d={P.dim}")
    if len(set(verts)) != m:
        raise ValueError("vertices must be distinct")
    if any(not 0 <= v < P.num_vertices for v in verts):
        raise ValueError("vertex index out of range")

    @lru_cache(maxsize=None)
    def build(vs: tuple[int, ...]) -> tuple[int, ...]:
        if len(vs) == 1:
            return (P.top,)
        head = build(vs[:-1])
        F = build(vs[:-2] + vs[-1:])[-1]
        keep, drop = 1 << vs[-1], 1 << vs[-2]
        options = [G for G in _facets_of_face(P, F) if G & keep and not G & drop]
        if not options:
            raise RuntimeError(f"no facet of {members(F)} keeps {vs[-1]} and avoids {vs[-2]}")
        return head + (min(options, key=members),)

    return WitnessSequence(verts, build(verts))


class EqualityClass(enum.Enum):
    NOT_TIGHT = "NotTight"
    TIGHT_ISOMORPHIC = "TightAndIsomorphicToDual_T1"
    TIGHT_NOT_ISOMORPHIC = "TightButNotIsomorphic"


@dataclass(frozen=True)
class KRow:
    k: int
    f_k: int
    phi_k: int

    @property
    def slack(self) -> int:
        return self.f_k - self.phi_k


@dataclass
class BoundReport:
    """Per-k comparison of f_k(P) against the lower bound.

    ``per_k`` runs over k = 0..d-1 (the k = 0 row is always tight since f_0 = n).
    ``equality_class`` and ``facet_profile`` are None when s = 1.
    """

    d: int
    s: int
    per_k: list[KRow]
    equality_class: Optional[EqualityClass] = None
    facet_profile: Optional[bool] = None
    diagnostics: list[str] = field(default_factory=list)

    @property
    def equality_ks(self) -> set[int]:
        return {r.k for r in self.per_k if 1 <= r.k <= self.d - 2 and r.slack == 0}

    @property
    def violation_at(self) -> Optional[int]:
        for r in self.per_k:
            if r.k >= 1 and r.slack < 0:
                return r.k
        return None

    @property
    def verdict(self) -> str:
        k = self.violation_at
        return "Holds" if k is None else f"ViolationAt({k})"

    @property
    def ok(self) -> bool:
        return (
            self.violation_at is None
            and self.equality_class is not EqualityClass.TIGHT_NOT_ISOMORPHIC
            and self.facet_profile is not False
        )

    def slacks(self) -> tuple[int, ...]:
        return tuple(r.slack for r in self.per_k)

    def to_dict(self) -> dict:
        return {
            "d": self.d,
            "s": self.s,
            "per_k": [{"k": r.k, "f_k": r.f_k, "phi_k": r.phi_k, "slack": r.slack} for r in self.per_k],
            "equality_ks": sorted(self.equality_ks),
            "verdict": self.verdict,
            "equality_class": self.equality_class.value if self.equality_class else None,
            "facet_profile": self.facet_profile,
            "diagnostics": list(self.diagnostics),
        }

    def csv_rows(self) -> list[tuple[int, ...]]:
        return [(self.d, self.s, r.k, r.f_k, r.phi_k, r.slack) for r in self.per_k]

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_HEADER)
        w.writerows(self.csv_rows())
        return buf.getvalue()


def _excess(P: FaceLattice) -> int:
    d, n = P.dim, P.num_vertices
    if d < 2:
        raise BoundDomainError(f"bound checks need d >= 2, got {d}")
    if not d + 1 <= n <= 2 * d:
        raise BoundDomainError(
            f"n={n} vertices is outside [{d + 1}, {2 * d}] for d={d}; the bound is not asserted there"
        )
    return n - d


def _per_k(P: FaceLattice) -> list[KRow]:
    f = P.f_vector()
    return [KRow(k, f[k], phi(k, P.num_vertices, P.dim)) for k in range(P.dim)]


@lru_cache(maxsize=128)
def extremal(d: int, s: int) -> FaceLattice:
    """The dual of the (d-s)-fold pyramid over T^s_1."""
    return dual(t_dsm(d, s, 1))


def classify_equality(P: FaceLattice) -> EqualityClass:
    s = _excess(P)
    if s < 2:
        raise BoundDomainError("equality classification needs s >= 2")
    rows = _per_k(P)
    if not any(r.slack == 0 for r in rows if 1 <= r.k <= P.dim - 2):
        return EqualityClass.NOT_TIGHT
    if is_isomorphic(P, extremal(P.dim, s)):
        return EqualityClass.TIGHT_ISOMORPHIC
    log.error("tight polytope %s is not the extremal dual; this contradicts the equality theorem", P)
    return EqualityClass.TIGHT_NOT_ISOMORPHIC


def facet_profile_check(P: FaceLattice, cls: Optional[EqualityClass] = None) -> bool:
    """Facet sizes lie in {d, d+s-2, d+s-1} and there are exactly d+2 facets."""
    if cls is None:
        cls = classify_equality(P)
    if cls is EqualityClass.NOT_TIGHT:
        raise PreconditionError("facet profile is only defined for tight polytopes")
    d, s = P.dim, P.num_vertices - P.dim
    allowed = {d, d + s - 2, d + s - 1}
    sizes = [len(members(G)) for G in P.facets]
    return all(x in allowed for x in sizes) and len(sizes) == d + 2


def check_lower_bound(P: FaceLattice) -> BoundReport:
    s = _excess(P)
    report = BoundReport(P.dim, s, _per_k(P))
    if report.violation_at is not None:
        msg = f"f_{report.violation_at} below the lower bound for {P}"
        log.error(msg)
        report.diagnostics.append(msg)
    if s >= 2:
        report.equality_class = classify_equality(P)
        if report.equality_class is EqualityClass.TIGHT_NOT_ISOMORPHIC:
            report.diagnostics.append("tight but not isomorphic to the extremal dual")
        if report.equality_class is not EqualityClass.NOT_TIGHT:
            report.facet_profile = facet_profile_check(P, report.equality_class)
            if not report.facet_profile:
                msg = "tight polytope fails the facet profile"
                log.error(msg)
                report.diagnostics.append(msg)
    return report


def phi_table(d_max: int) -> list[tuple[int, int, int, int]]:
    if d_max > 16:
        raise ValueError("phi-table is limited to d_max <= 16")
    return [
        (d, s, k, phi(k, d + s, d))
        for d in range(1, d_max + 1)
        for s in range(1, d + 1)
        for k in range(d)
    ]

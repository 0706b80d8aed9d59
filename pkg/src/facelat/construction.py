"""Expression trees for polytopes built from the library's constructors.

Grammar (whitespace ignored)::

    expr := simplex(INT) | pyr(expr) | kpyr(expr, INT) | bipyr(expr)
          | dsum(INT, INT) | tdsm(INT, INT, INT) | dual(expr)
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Union

from . import lattice as lat
from .lattice import FaceLattice


class SpecError(ValueError):
    pass


@dataclass(frozen=True)
class Simplex:
    s: int

    def __post_init__(self):
        if self.s < 0:
            raise SpecError(f"simplex dimension must be >= 0, got {self.s}")


@dataclass(frozen=True)
class Pyramid:
    child: "ConstructionSpec"


@dataclass(frozen=True)
class KFoldPyramid:
    child: "ConstructionSpec"
    r: int

    def __post_init__(self):
        if self.r < 0:
            raise SpecError(f"pyramid fold count must be >= 0, got {self.r}")


@dataclass(frozen=True)
class Bipyramid:
    child: "ConstructionSpec"


@dataclass(frozen=True)
class DirectSum:
    left: "ConstructionSpec"
    right: "ConstructionSpec"

    def __post_init__(self):
        if dimension(self.left) < 1 or dimension(self.right) < 1:
            raise SpecError("direct sum summands need dimension >= 1")


@dataclass(frozen=True)
class TDSM:
    d: int
    s: int
    m: int

    def __post_init__(self):
        if not (2 <= self.s <= self.d) or not (1 <= self.m <= self.s - 1):
            raise SpecError(
                f"tdsm needs 2 <= s <= d and 1 <= m <= s-1, got ({self.d}, {self.s}, {self.m})"
            )

    def expand(self) -> KFoldPyramid:
        return KFoldPyramid(DirectSum(Simplex(self.m), Simplex(self.s - self.m)), self.d - self.s)


@dataclass(frozen=True)
class Dual:
    child: "ConstructionSpec"


ConstructionSpec = Union[Simplex, Pyramid, KFoldPyramid, Bipyramid, DirectSum, TDSM, Dual]


def dimension(spec: ConstructionSpec) -> int:
    if isinstance(spec, Simplex):
        return spec.s
    if isinstance(spec, Pyramid):
        return dimension(spec.child) + 1
    if isinstance(spec, KFoldPyramid):
        return dimension(spec.child) + spec.r
    if isinstance(spec, Bipyramid):
        return dimension(spec.child) + 1
    if isinstance(spec, DirectSum):
        return dimension(spec.left) + dimension(spec.right)
    if isinstance(spec, TDSM):
        return spec.d
    if isinstance(spec, Dual):
        return dimension(spec.child)
    raise TypeError(f"not a construction spec: {spec!r}")


def build(spec: ConstructionSpec) -> FaceLattice:
    if isinstance(spec, Simplex):
        return lat.simplex(spec.s)
    if isinstance(spec, Pyramid):
        return lat.pyramid(build(spec.child))
    if isinstance(spec, KFoldPyramid):
        return lat.k_fold_pyramid(build(spec.child), spec.r)
    if isinstance(spec, Bipyramid):
        return lat.bipyramid(build(spec.child))
    if isinstance(spec, DirectSum):
        return lat.direct_sum(build(spec.left), build(spec.right))
    if isinstance(spec, TDSM):
        return lat.t_dsm(spec.d, spec.s, spec.m)
    if isinstance(spec, Dual):
        return lat.dual(build(spec.child))
    raise TypeError(f"not a construction spec: {spec!r}")


def contains_dual(spec: ConstructionSpec) -> bool:
    if isinstance(spec, Dual):
        return True
    if isinstance(spec, (Pyramid, KFoldPyramid, Bipyramid)):
        return contains_dual(spec.child)
    if isinstance(spec, DirectSum):
        return contains_dual(spec.left) or contains_dual(spec.right)
    return False


def to_expr(spec: ConstructionSpec) -> str:
    if isinstance(spec, Simplex):
        return f"simplex({spec.s})"
    if isinstance(spec, Pyramid):
        return f"pyr({to_expr(spec.child)})"
    if isinstance(spec, KFoldPyramid):
        return f"kpyr({to_expr(spec.child)},{spec.r})"
    if isinstance(spec, Bipyramid):
        return f"bipyr({to_expr(spec.child)})"
    if isinstance(spec, DirectSum):
        if isinstance(spec.left, Simplex) and isinstance(spec.right, Simplex):
            return f"dsum({spec.left.s},{spec.right.s})"
        raise SpecError("the expression grammar only covers sums of two simplices")
    if isinstance(spec, TDSM):
        return f"tdsm({spec.d},{spec.s},{spec.m})"
    if isinstance(spec, Dual):
        return f"dual({to_expr(spec.child)})"
    raise TypeError(f"not a construction spec: {spec!r}")


_TOKEN = re.compile(r"\s*(?:(?P<int>-?\d+)|(?P<name>[a-z]+)|(?P<punct>[(),]))")


def _tokenize(text: str) -> list[tuple[str, str]]:
    pos, out = 0, []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise SpecError(f"unexpected character at {pos}: {text[pos:pos + 10]!r}")
        kind = m.lastgroup
        out.append((kind, m.group(kind)))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0

    def _next(self, kind: str, value: str | None = None) -> str:
        if self.i >= len(self.toks):
            raise SpecError(f"unexpected end of input, expected {value or kind}")
        k, v = self.toks[self.i]
        if k != kind or (value is not None and v != value):
            raise SpecError(f"expected {value or kind}, got {v!r}")
        self.i += 1
        return v

    def _int(self) -> int:
        return int(self._next("int"))

    def expr(self) -> ConstructionSpec:
        name = self._next("name")
        self._next("punct", "(")
        if name == "simplex":
            node = Simplex(self._int())
        elif name == "pyr":
            node = Pyramid(self.expr())
        elif name == "kpyr":
            child = self.expr()
            self._next("punct", ",")
            node = KFoldPyramid(child, self._int())
        elif name == "bipyr":
            node = Bipyramid(self.expr())
        elif name == "dsum":
            m = self._int()
            self._next("punct", ",")
            node = DirectSum(Simplex(m), Simplex(self._int()))
        elif name == "tdsm":
            d = self._int()
            self._next("punct", ",")
            s = self._int()
            self._next("punct", ",")
            node = TDSM(d, s, self._int())
        elif name == "dual":
            node = Dual(self.expr())
        else:
            raise SpecError(f"unknown constructor {name!r}")
        self._next("punct", ")")
        return node


def parse(text: str) -> ConstructionSpec:
    p = _Parser(text)
    node = p.expr()
    if p.i != len(p.toks):
        raise SpecError(f"trailing input after expression: {p.toks[p.i][1]!r}")
    return node

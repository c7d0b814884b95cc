"""Convex generators and their exact combinatorial invariants.

A convex generator is stored as a map from a primitive direction ``(a, b)``
to ``(multiplicity, has_h)``.  The edge ``e_{a,b}^m`` has displacement
``(m*a, -m*b)``; ``e_{a,b}^{m-1} h_{a,b}`` is stored as multiplicity ``m``
with ``has_h = True``.  The drawn path is recovered by sorting directions
from shallowest (``(1, 0)``) to steepest (``(0, 1)``), starting at
``(0, y)`` and ending at ``(x, 0)``.

Everything here is integer arithmetic; areas are kept doubled.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import gcd
from typing import Iterable, Mapping

from .errors import InvalidGenerator, ParseError, SharedHyperbolicOrbit

__all__ = [
    "Edge",
    "ConvexGenerator",
    "GeneratorStats",
    "LatticeCount",
    "ONE",
    "e",
    "h",
    "stats",
    "lattice_count",
    "product",
    "product_index_formula",
    "self_product_doubled_area",
    "parse_generator",
    "format_generator",
    "steepness",
]


def steepness(a: int, b: int):
    """Sort key for a direction: larger means steeper (smaller slope -b/a)."""
    if a == 0:
        return (1, Fraction(0))
    return (0, Fraction(b, a))


@dataclass(frozen=True)
class Edge:
    dir_x: int
    dir_y: int
    multiplicity: int = 1
    hyperbolic: bool = False

    def __post_init__(self):
        a, b, m = self.dir_x, self.dir_y, self.multiplicity
        if a < 0 or b < 0 or (a == 0 and b == 0):
            raise InvalidGenerator(f"bad direction ({a}, {b})")
        if gcd(a, b) != 1:
            raise InvalidGenerator(f"direction ({a}, {b}) is not primitive")
        if m < 1:
            raise InvalidGenerator(f"multiplicity must be positive, got {m}")
        if self.hyperbolic and (a == 0 or b == 0):
            raise InvalidGenerator("horizontal and vertical edges can only be labelled e")

    @property
    def label(self) -> str:
        return "H" if self.hyperbolic else "E"

    @property
    def nu_x(self) -> int:
        return self.multiplicity * self.dir_x

    @property
    def nu_y(self) -> int:
        return -self.multiplicity * self.dir_y

    @property
    def slope(self):
        """``nu_y / nu_x``; ``None`` for a vertical edge (slope -infinity)."""
        if self.dir_x == 0:
            return None
        return Fraction(-self.dir_y, self.dir_x)

    @property
    def elliptic_multiplicity(self) -> int:
        return self.multiplicity - (1 if self.hyperbolic else 0)


@dataclass(frozen=True)
class GeneratorStats:
    x: int
    y: int
    m: int
    h: int
    L: int
    b: int
    doubled_area: int
    index: int


@dataclass(frozen=True)
class LatticeCount:
    interior: int
    boundary: int

    @property
    def L(self) -> int:
        return self.interior + self.boundary


class ConvexGenerator:
    """Immutable convex generator; ``items`` is in path order."""

    def __init__(self, edges: Mapping | Iterable[Edge] | None = None):
        if edges is None:
            edges = ()
        if isinstance(edges, Mapping):
            edge_list = []
            for (a, b), val in edges.items():
                if isinstance(val, tuple):
                    mult, has_h = val
                else:
                    mult, has_h = val, False
                edge_list.append(Edge(a, b, mult, bool(has_h)))
        else:
            edge_list = list(edges)
        seen = set()
        for ed in edge_list:
            if (ed.dir_x, ed.dir_y) in seen:
                raise InvalidGenerator(f"direction ({ed.dir_x}, {ed.dir_y}) given twice")
            seen.add((ed.dir_x, ed.dir_y))
        edge_list.sort(key=lambda ed: steepness(ed.dir_x, ed.dir_y))
        object.__setattr__(
            self,
            "items",
            tuple((ed.dir_x, ed.dir_y, ed.multiplicity, ed.hyperbolic) for ed in edge_list),
        )

    @classmethod
    def _from_items(cls, items) -> "ConvexGenerator":
        # trusted constructor for the search code: items already sorted and valid
        g = object.__new__(cls)
        object.__setattr__(g, "items", tuple(items))
        return g

    def __setattr__(self, name, value):
        raise AttributeError("ConvexGenerator is immutable")

    def __eq__(self, other):
        if not isinstance(other, ConvexGenerator):
            return NotImplemented
        return self.items == other.items

    def __hash__(self):
        return hash(self.items)

    @property
    def edges(self) -> tuple[Edge, ...]:
        return tuple(Edge(a, b, m, hh) for a, b, m, hh in self.items)

    def as_dict(self) -> dict:
        return {(a, b): (m, hh) for a, b, m, hh in self.items}

    def __bool__(self):
        return bool(self.items)

    def __len__(self):
        return len(self.items)

    @cached_property
    def x(self) -> int:
        return sum(m * a for a, b, m, _ in self.items)

    @cached_property
    def y(self) -> int:
        return sum(m * b for a, b, m, _ in self.items)

    @cached_property
    def m(self) -> int:
        return sum(m for _, _, m, _ in self.items)

    @cached_property
    def h(self) -> int:
        return sum(1 for *_, hh in self.items if hh)

    @property
    def all_e(self) -> bool:
        return self.h == 0

    def vertices(self) -> list[tuple[int, int]]:
        """Lattice vertices of the path from ``(0, y)`` to ``(x, 0)``."""
        px, py = 0, self.y
        out = [(px, py)]
        for a, b, m, _ in self.items:
            px += m * a
            py -= m * b
            out.append((px, py))
        return out

    def elliptic_directions(self) -> frozenset:
        return frozenset((a, b) for a, b, m, hh in self.items if m - hh > 0)

    def hyperbolic_directions(self) -> frozenset:
        return frozenset((a, b) for a, b, _, hh in self.items if hh)

    def reflect(self) -> "ConvexGenerator":
        """Reflection across the diagonal ``y = x``."""
        return ConvexGenerator([Edge(b, a, m, hh) for a, b, m, hh in self.items])

    @cached_property
    def stats(self) -> GeneratorStats:
        return stats(self)

    @property
    def index(self) -> int:
        return self.stats.index

    def __mul__(self, other):
        if not isinstance(other, ConvexGenerator):
            return NotImplemented
        return product(self, other)

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        out = ONE
        for _ in range(n):
            out = product(out, self)
        return out

    def __lt__(self, other):
        if not isinstance(other, ConvexGenerator):
            return NotImplemented
        return str(self) < str(other)

    def __str__(self):
        return format_generator(self)

    def __repr__(self):
        return f"ConvexGenerator('{format_generator(self)}')"


ONE = ConvexGenerator()


def e(a: int, b: int, m: int = 1) -> ConvexGenerator:
    return ConvexGenerator([Edge(a, b, m, False)])


def h(a: int, b: int) -> ConvexGenerator:
    return ConvexGenerator([Edge(a, b, 1, True)])


def _shoelace2(points) -> int:
    s = 0
    n = len(points)
    for i in range(n):
        x0, y0 = points[i]
        x1, y1 = points[(i + 1) % n]
        s += x0 * y1 - x1 * y0
    return abs(s)


def stats(g: ConvexGenerator) -> GeneratorStats:
    x, y, m, hh = g.x, g.y, g.m, g.h
    poly = [(0, 0)] + g.vertices() + [(x, 0)]
    doubled = _shoelace2(poly)
    b = x + y + m
    if x == 0 or y == 0:
        # the path lies on one axis: Pick does not apply
        L = m + 1
    else:
        L = (doubled + b) // 2 + 1
    return GeneratorStats(x=x, y=y, m=m, h=hh, L=L, b=b, doubled_area=doubled, index=doubled + b - hh)


def lattice_count(g: ConvexGenerator) -> LatticeCount:
    """Count lattice points of the region under ``g`` by scanning its bounding box.

    The region is cut out by ``i >= 0``, ``j >= 0`` and one half-plane per
    edge line; a point is on the boundary when it lies on an axis or on one
    of those lines, or when the region has empty interior.
    """
    X, Y = g.x, g.y
    lines = []
    for (px, py), (a, b, _, _) in zip(g.vertices(), g.items):
        lines.append((b, a, b * px + a * py))
    degenerate = X == 0 or Y == 0
    interior = boundary = 0
    for i in range(X + 1):
        for j in range(Y + 1):
            on_line = False
            inside = True
            for u, v, w in lines:
                s = u * i + v * j
                if s > w:
                    inside = False
                    break
                if s == w:
                    on_line = True
            if not inside:
                continue
            if degenerate or on_line or i == 0 or j == 0:
                boundary += 1
            else:
                interior += 1
    return LatticeCount(interior, boundary)


def _check_no_shared_h(g1: ConvexGenerator, g2: ConvexGenerator) -> None:
    shared = g1.hyperbolic_directions() & g2.hyperbolic_directions()
    if shared:
        a, b = min(shared)
        raise SharedHyperbolicOrbit(f"both factors contain h_{{{a},{b}}}")


def product(g1: ConvexGenerator, g2: ConvexGenerator) -> ConvexGenerator:
    _check_no_shared_h(g1, g2)
    merged = g1.as_dict()
    for (a, b), (m, hh) in g2.as_dict().items():
        if (a, b) in merged:
            m0, h0 = merged[(a, b)]
            merged[(a, b)] = (m0 + m, h0 or hh)
        else:
            merged[(a, b)] = (m, hh)
    return ConvexGenerator(merged)


def product_index_formula(g1: ConvexGenerator, g2: ConvexGenerator) -> int:
    """Index of ``g1 * g2`` from the two factors and the rectangle sum.

    Edges of ``g1`` sit to the left of equal-slope edges of ``g2``, hence the
    non-strict comparison in the first sum and the strict one in the second.
    """
    _check_no_shared_h(g1, g2)
    r = 0
    for a, b, m, _ in g1.items:
        key = steepness(a, b)
        for c, d, n, _ in g2.items:
            if steepness(c, d) >= key:
                r += (m * a) * (n * d)
    for a, b, m, _ in g2.items:
        key = steepness(a, b)
        for c, d, n, _ in g1.items:
            if steepness(c, d) > key:
                r += (m * a) * (n * d)
    return g1.index + g2.index + 2 * r


def self_product_doubled_area(g: ConvexGenerator) -> int:
    sq = product(g, g)
    area = sq.stats.doubled_area
    assert area == 4 * g.stats.doubled_area
    return area


_FACTOR = re.compile(r"([eh])_\{\s*(\d+)\s*,\s*(\d+)\s*\}(?:\^(?:\{\s*(\d+)\s*\}|(\d+)))?")


def parse_generator(text: str) -> ConvexGenerator:
    """Parse a formal product such as ``"e_{1,0}^3 * e_{2,1} h_{1,3}"``."""
    s = text.strip()
    if s in ("1", ""):
        return ONE
    pos = 0
    acc: dict = {}
    while pos < len(s):
        if s[pos].isspace() or s[pos] == "*":
            pos += 1
            continue
        mt = _FACTOR.match(s, pos)
        if not mt:
            raise ParseError(f"cannot parse factor at {s[pos:]!r}")
        kind, a, b = mt.group(1), int(mt.group(2)), int(mt.group(3))
        exp = mt.group(4) or mt.group(5)
        k = int(exp) if exp is not None else 1
        if k < 1:
            raise ParseError("exponent must be positive")
        if kind == "h" and k > 1:
            raise ParseError(f"h_{{{a},{b}}} cannot be repeated")
        m0, h0 = acc.get((a, b), (0, False))
        if kind == "h" and h0:
            raise ParseError(f"h_{{{a},{b}}} appears twice")
        acc[(a, b)] = (m0 + k, h0 or kind == "h")
        pos = mt.end()
    try:
        return ConvexGenerator(acc)
    except InvalidGenerator as exc:
        raise ParseError(str(exc)) from exc


def _power(k: int) -> str:
    return "" if k == 1 else f"^{k}"


def format_generator(g: ConvexGenerator) -> str:
    if not g.items:
        return "1"
    parts = []
    for a, b, m, hh in g.items:
        ne = m - 1 if hh else m
        if ne:
            parts.append(f"e_{{{a},{b}}}{_power(ne)}")
        if hh:
            parts.append(f"h_{{{a},{b}}}")
    return " ".join(parts)


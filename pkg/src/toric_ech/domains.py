"""Convex toric domains and the symplectic action of a generator.

Rationals are ``fractions.Fraction`` throughout.  The action of a single
edge with displacement ``nu`` is the support value ``max_{p in Omega} nu x p``;
for an edge in direction ``(a, b)`` that is ``m * max(b*p_x + a*p_y)``.
The action is therefore additive over edges.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import InvalidDomain, ParseError
from .generators import ConvexGenerator

Rational = Fraction
Number = Union[int, Fraction]

__all__ = [
    "Rational",
    "ToricDomain",
    "Polydisk",
    "Ellipsoid",
    "Ball",
    "ConvexPolygon",
    "action",
    "support",
    "compare_a_to_sqrt7_threshold",
    "parse_rational",
    "parse_domain",
    "format_rational",
]


def _positive(name, v) -> Fraction:
    if isinstance(v, float):
        raise InvalidDomain(f"{name}: floats are not accepted, use p/q")
    v = Fraction(v)
    if v <= 0:
        raise InvalidDomain(f"{name} must be positive, got {v}")
    return v


class ToricDomain:
    """Base class: subclasses provide ``corners()``, the vertices of Omega."""

    def corners(self) -> list[tuple[Fraction, Fraction]]:
        raise NotImplementedError

    def support(self, a: int, b: int) -> Fraction:
        """Action of the primitive edge ``e_{a,b}``."""
        return max(b * px + a * py for px, py in self.corners())

    def action(self, g: ConvexGenerator) -> Fraction:
        return sum((m * self.support(a, b) for a, b, m, _ in g.items), Fraction(0))

    def as_polygon(self) -> "ConvexPolygon":
        """The same region given by its upper boundary."""
        raise NotImplementedError


@dataclass(frozen=True)
class Polydisk(ToricDomain):
    a: Fraction
    b: Fraction

    def __post_init__(self):
        object.__setattr__(self, "a", _positive("a", self.a))
        object.__setattr__(self, "b", _positive("b", self.b))

    def corners(self):
        z = Fraction(0)
        return [(z, z), (z, self.b), (self.a, self.b), (self.a, z)]

    def support(self, a, b):
        return self.b * a + self.a * b

    def action(self, g):
        return self.b * g.x + self.a * g.y

    def as_polygon(self):
        return ConvexPolygon([(0, self.b), (self.a, self.b)])

    def __str__(self):
        return f"P({format_rational(self.a)},{format_rational(self.b)})"


@dataclass(frozen=True)
class Ellipsoid(ToricDomain):
    a: Fraction
    b: Fraction

    def __post_init__(self):
        object.__setattr__(self, "a", _positive("a", self.a))
        object.__setattr__(self, "b", _positive("b", self.b))

    def corners(self):
        z = Fraction(0)
        return [(z, z), (z, self.b), (self.a, z)]

    def support(self, a, b):
        return max(self.b * a, self.a * b)

    def action(self, g):
        # level of the line b*x + a*y = c tangent to the path
        if not g.items:
            return Fraction(0)
        return max(self.b * px + self.a * py for px, py in g.vertices())

    def as_polygon(self):
        return ConvexPolygon([(0, self.b), (self.a, 0)])

    def __str__(self):
        return f"E({format_rational(self.a)},{format_rational(self.b)})"


class Ball(Ellipsoid):
    def __init__(self, c):
        super().__init__(c, c)

    @property
    def c(self) -> Fraction:
        return self.a

    def __repr__(self):
        return f"Ball(c={self.c!r})"

    def __str__(self):
        return f"B({format_rational(self.c)})"


class ConvexPolygon(ToricDomain):
    """Region under a concave nonincreasing polygonal graph.

    ``vertices`` runs from ``(0, f(0))`` to ``(A, f(A))``; the region is
    closed up along the axes.
    """

    def __init__(self, vertices):
        pts = []
        for p in vertices:
            if any(isinstance(t, float) for t in p):
                raise InvalidDomain("floats are not accepted, use p/q")
            pts.append((Fraction(p[0]), Fraction(p[1])))
        if not pts:
            raise InvalidDomain("empty polygon")
        if pts[0][0] != 0:
            raise InvalidDomain("first vertex must lie on the y-axis")
        for px, py in pts:
            if px < 0 or py < 0:
                raise InvalidDomain("vertices must lie in the first quadrant")
        slopes = []
        for (x0, y0), (x1, y1) in zip(pts, pts[1:]):
            if x1 <= x0:
                raise InvalidDomain("x-coordinates must strictly increase")
            slopes.append((y1 - y0) / (x1 - x0))
        if slopes and slopes[0] > 0:
            raise InvalidDomain("boundary must be nonincreasing")
        for s0, s1 in zip(slopes, slopes[1:]):
            if not s1 < s0:
                raise InvalidDomain("consecutive slopes must strictly decrease")
        A = pts[-1][0]
        if A <= 0 or pts[0][1] <= 0:
            raise InvalidDomain("polygon must have positive width and height")
        self.vertices = tuple(pts)

    def corners(self):
        z = Fraction(0)
        return [(z, z)] + list(self.vertices) + [(self.vertices[-1][0], z)]

    def as_polygon(self):
        return self

    def __eq__(self, other):
        return isinstance(other, ConvexPolygon) and self.vertices == other.vertices

    def __hash__(self):
        return hash(self.vertices)

    def __repr__(self):
        return f"ConvexPolygon({list(self.vertices)!r})"

    def __str__(self):
        inner = ",".join(f"({format_rational(x)},{format_rational(y)})" for x, y in self.vertices)
        return f"poly[{inner}]"


def action(dom: ToricDomain, g: ConvexGenerator) -> Fraction:
    return dom.action(g)


def support(dom: ToricDomain, a: int, b: int) -> Fraction:
    return dom.support(a, b)


def compare_a_to_sqrt7_threshold(a: Number) -> int:
    """Sign of ``a - (5 + sqrt 7)/3``, decided exactly.

    Never 0 for rational input since the threshold is irrational.
    """
    if isinstance(a, float):
        raise TypeError("pass an exact rational")
    t = 3 * Fraction(a) - 5
    if t < 0:
        return -1
    sq = t * t
    if sq < 7:
        return -1
    if sq > 7:
        return 1
    return 0


_RAT = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$")


def parse_rational(text) -> Fraction:
    if isinstance(text, Fraction):
        return text
    if isinstance(text, int):
        return Fraction(text)
    mt = _RAT.match(str(text))
    if not mt:
        raise ParseError(f"not an exact rational: {text!r} (use an integer or p/q)")
    den = int(mt.group(2)) if mt.group(2) else 1
    if den == 0:
        raise ParseError("zero denominator")
    return Fraction(int(mt.group(1)), den)


def format_rational(q: Fraction) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


_NUM = r"[+-]?\d+(?:\s*/\s*\d+)?"
_DOM2 = re.compile(rf"^\s*([PE])\s*\(\s*({_NUM})\s*,\s*({_NUM})\s*\)\s*$")
_BALL = re.compile(rf"^\s*B\s*\(\s*({_NUM})\s*\)\s*$")
_POLY = re.compile(r"^\s*poly\s*\[(.*)\]\s*$")
_PT = re.compile(rf"\(\s*({_NUM})\s*,\s*({_NUM})\s*\)")


def parse_domain(text: str) -> ToricDomain:
    """Parse ``P(a,b)``, ``E(a,b)``, ``B(c)`` or ``poly[(x1,y1),...]``."""
    try:
        mt = _DOM2.match(text)
        if mt:
            cls = Polydisk if mt.group(1) == "P" else Ellipsoid
            return cls(parse_rational(mt.group(2)), parse_rational(mt.group(3)))
        mt = _BALL.match(text)
        if mt:
            return Ball(parse_rational(mt.group(1)))
        mt = _POLY.match(text)
        if mt:
            body = mt.group(1)
            pts = [(parse_rational(u), parse_rational(v)) for u, v in _PT.findall(body)]
            if _PT.sub("", body).replace(",", "").strip():
                raise ParseError(f"malformed polygon: {text!r}")
            return ConvexPolygon(pts)
    except InvalidDomain as exc:
        raise ParseError(str(exc)) from exc
    raise ParseError(f"unknown domain literal {text!r}")

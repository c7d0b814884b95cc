"""Exhaustive enumeration of convex generators, ECH capacities and minimal generators.

The search adds edge groups in path order (shallowest direction first).  If
``G`` is the generator built so far and every later edge is steeper, then

    I(G * Gamma) = I(G) + I(Gamma) + 2 x(G) y(Gamma),

so the index can be maintained incrementally and bounded from both sides.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Callable, Iterator, Optional

from .domains import ToricDomain
from .errors import DeltaOutOfRange
from .generators import ONE, ConvexGenerator, Edge, e, steepness

__all__ = [
    "EnumBounds",
    "directions",
    "enumerate_generators",
    "iter_exact",
    "count_concave_paths",
    "capacity_search_box",
    "capacity_table",
    "capacity",
    "capacities",
    "minimal_generators",
    "is_minimal",
    "construct_Y_sequence",
    "y_sequence",
    "floor_sum",
    "max_lattice_points",
]


@dataclass(frozen=True)
class EnumBounds:
    max_x: int
    max_y: int
    target_index: Optional[int] = None
    max_action: Optional[tuple] = None  # (ToricDomain, Fraction)
    allow_h: bool = False

    def __post_init__(self):
        if self.max_x < 0 or self.max_y < 0:
            raise ValueError("box bounds must be nonnegative")


@lru_cache(maxsize=256)
def directions(max_x: int, max_y: int) -> tuple:
    """Primitive directions fitting in the box, in path order."""
    out = [(a, b) for a in range(max_x + 1) for b in range(max_y + 1) if (a or b) and gcd(a, b) == 1]
    out.sort(key=lambda d: steepness(*d))
    return tuple(out)


def floor_sum(n: int, m: int, a: int, b: int) -> int:
    """Sum of ``(a*i + b) // m`` for ``0 <= i < n`` with ``a, b >= 0``."""
    total = 0
    while True:
        if a >= m:
            total += (n - 1) * n // 2 * (a // m)
            a %= m
        if b >= m:
            total += n * (b // m)
            b %= m
        y_max = a * n + b
        if y_max < m:
            return total
        n, b = divmod(y_max, m)
        m, a = a, m


def max_lattice_points(rx: int, ry: int, a: int, b: int) -> int:
    """Lattice points of ``[0,rx] x [0,ry]`` on or below the line through
    ``(0, ry)`` with direction ``(a, -b)``."""
    if b == 0:
        return (rx + 1) * (ry + 1)
    if a == 0:
        return ry + 1
    imax = min(rx, (a * ry) // b)
    n = imax + 1
    return n + floor_sum(n, a, b, a * ry - b * imax)


def _edge_index(a, b, k, x):
    # I(e_{a,b}^k) plus the rectangle under the existing prefix
    return k * k * a * b + k * (a + b + 1) + 2 * x * k * b


def _walk_free(dirs, max_x, max_y, allow_h, index_cap, supports, action_cap, visit):
    items = []
    nd = len(dirs)

    def rec(pos, x, y, idx, act):
        visit(items, idx, act)
        for j in range(pos, nd):
            a, b = dirs[j]
            if x + a > max_x or y + b > max_y:
                continue
            s = supports[j] if supports is not None else 0
            can_h = allow_h and a > 0 and b > 0
            k = 1
            while x + k * a <= max_x and y + k * b <= max_y:
                nact = act + k * s if supports is not None else act
                if action_cap is not None and nact > action_cap:
                    break
                ni = idx + _edge_index(a, b, k, x)
                if index_cap is not None and ni - can_h > index_cap:
                    break
                if index_cap is None or ni <= index_cap:
                    items.append((a, b, k, False))
                    rec(j + 1, x + k * a, y + k * b, ni, nact)
                    items.pop()
                if can_h:
                    items.append((a, b, k, True))
                    rec(j + 1, x + k * a, y + k * b, ni - 1, nact)
                    items.pop()
                k += 1

    rec(0, 0, 0, 0, Fraction(0) if supports is not None else 0)


def _walk_exact(X, Y, dirs, target, allow_h, supports, action_cap, visit):
    """Generators with ``x == X``, ``y == Y`` and index exactly ``target``."""
    items = []
    nd = len(dirs)

    def rec(pos, x, y, idx, act):
        rx, ry = X - x, Y - y
        if rx == 0 and ry == 0:
            if idx == target:
                visit(items, idx, act)
            return
        # the rest lies above its chord, so it costs at least the chord's
        # index, less one if it may carry h edges
        low = rx * ry + rx + ry + gcd(rx, ry)
        if allow_h and rx and ry:
            low -= 1
        if idx + 2 * x * ry + low > target:
            return
        base = idx + 2 * x * ry - 2
        for j in range(pos, nd):
            a, b = dirs[j]
            if a > rx or b > ry:
                continue
            if base + 2 * max_lattice_points(rx, ry, a, b) < target:
                break
            s = supports[j] if supports is not None else 0
            can_h = allow_h and a > 0 and b > 0
            k = 1
            while k * a <= rx and k * b <= ry:
                nact = act + k * s if supports is not None else act
                if action_cap is not None and nact > action_cap:
                    break
                ni = idx + _edge_index(a, b, k, x)
                if ni - can_h > target:
                    break
                items.append((a, b, k, False))
                rec(j + 1, x + k * a, y + k * b, ni, nact)
                items.pop()
                if can_h:
                    items.append((a, b, k, True))
                    rec(j + 1, x + k * a, y + k * b, ni - 1, nact)
                    items.pop()
                k += 1

    rec(0, 0, 0, 0, Fraction(0) if supports is not None else 0)


def _supports(dom, dirs):
    if dom is None:
        return None
    return [dom.support(a, b) for a, b in dirs]


def iter_exact(
    X: int,
    Y: int,
    target_index: int,
    allow_h: bool = False,
    dom: Optional[ToricDomain] = None,
    max_action=None,
) -> Iterator[ConvexGenerator]:
    """Every generator ending at ``(X, 0)``, starting at ``(0, Y)``, of the given index."""
    dirs = directions(X, Y)
    sup = _supports(dom, dirs)
    out = []
    _walk_exact(
        X, Y, dirs, target_index, allow_h, sup, max_action,
        lambda items, idx, act: out.append(ConvexGenerator._from_items(items)),
    )
    return iter(out)


def _raw_enumerate(bounds: EnumBounds) -> list:
    dom, cap = bounds.max_action if bounds.max_action is not None else (None, None)
    found = []

    def keep(items, idx, act):
        found.append(ConvexGenerator._from_items(items))

    if bounds.target_index is None:
        dirs = directions(bounds.max_x, bounds.max_y)
        _walk_free(dirs, bounds.max_x, bounds.max_y, bounds.allow_h, None, _supports(dom, dirs), cap, keep)
        return found
    t = bounds.target_index
    for X in range(bounds.max_x + 1):
        for Y in range(bounds.max_y + 1):
            if 2 * (X + 1) * (Y + 1) - 2 < t:
                continue
            if (2 if not bounds.allow_h else 1) * (X + Y) > t:
                continue
            dirs = directions(X, Y)
            _walk_exact(X, Y, dirs, t, bounds.allow_h, _supports(dom, dirs), cap, keep)
    return found


def enumerate_generators(bounds: EnumBounds) -> Iterator[ConvexGenerator]:
    """All generators within the bounds, each once, ordered by printed form."""
    found = _raw_enumerate(bounds)
    found.sort(key=str)
    return iter(found)


def count_concave_paths(max_x: int, max_y: int) -> int:
    """Number of all-e generators in the box, by a knapsack over slopes.

    Independent of the search above: each primitive direction is an
    unbounded item with weight ``(a, b)``.
    """
    ways = [[0] * (max_y + 1) for _ in range(max_x + 1)]
    ways[0][0] = 1
    for a in range(max_x + 1):
        for b in range(max_y + 1):
            if (a == 0 and b == 0) or gcd(a, b) != 1:
                continue
            for i in range(a, max_x + 1):
                for j in range(b, max_y + 1):
                    ways[i][j] += ways[i - a][j - b]
    return sum(sum(row) for row in ways)


def capacity_search_box(k: int) -> int:
    """Bound on ``x + y`` for any all-e generator of index ``2k``.

    Such a generator has ``k + 1`` lattice points, and the two axis segments
    alone contribute ``x + y + 1`` of them.
    """
    return k


@lru_cache(maxsize=64)
def capacity_table(dom: ToricDomain, k_max: int):
    """``(capacities, minimizers)`` for ``0 <= k <= k_max``.

    Searches all-e generators with action at most ``T``; any index reached
    within the cap has its exact minimum found, so ``T`` is grown until
    every index ``0, 2, ..., 2*k_max`` is reached.
    """
    if k_max < 0:
        raise ValueError("k must be nonnegative")
    box = capacity_search_box(k_max)
    dirs = directions(box, box)
    sup = _supports(dom, dirs)
    s10, s01 = dom.support(1, 0), dom.support(0, 1)
    ceiling = k_max * min(s10, s01)
    T = max(s10, s01)
    while True:
        T = min(T, ceiling) if ceiling > 0 else T
        best = [None] * (k_max + 1)
        ties = [[] for _ in range(k_max + 1)]

        def visit(items, idx, act):
            k = idx // 2
            cur = best[k]
            if cur is None or act < cur:
                best[k] = act
                ties[k] = [items[:]]
            elif act == cur:
                ties[k].append(items[:])

        live = [i for i, s in enumerate(sup) if s <= T]
        _walk_free(
            [dirs[i] for i in live], box, box, False, 2 * k_max,
            [sup[i] for i in live], T, visit,
        )
        if all(v is not None for v in best):
            caps = tuple(Fraction(v) for v in best)
            mins = tuple(
                tuple(sorted((ConvexGenerator._from_items(t) for t in tl), key=str)) for tl in ties
            )
            return caps, mins
        if T >= ceiling:
            raise RuntimeError("capacity search failed to reach every index")
        T = T * 3 / 2


def capacities(dom: ToricDomain, k_max: int) -> list:
    return list(capacity_table(dom, k_max)[0])


def capacity(dom: ToricDomain, k: int) -> Fraction:
    if k == 0:
        return Fraction(0)
    return capacity_table(dom, k)[0][k]


def minimal_generators(dom: ToricDomain, k: int) -> list:
    """All all-e generators of index ``2k`` attaining ``capacity(dom, k)``."""
    if k == 0:
        return [ONE]
    return list(capacity_table(dom, k)[1][k])


def is_minimal(dom: ToricDomain, g: ConvexGenerator) -> bool:
    if not g.all_e:
        return False
    return minimal_generators(dom, g.index // 2) == [g]


def _next_y(Y: ConvexGenerator, d: int) -> ConvexGenerator:
    parts = Y.as_dict()
    A = parts.pop((1, 0), (0, False))[0]
    M = parts.pop((1, 1), (0, False))[0]
    if not parts and A >= 1 and M >= 1:
        out = {(2, 1): (1, False)}
        if A > 1:
            out[(1, 0)] = (A - 1, False)
        if M > 1:
            out[(1, 1)] = (M - 1, False)
        return ConvexGenerator(out)
    if len(parts) == 1:
        (a, b), (mult, _) = next(iter(parts.items()))
        if b == 1 and mult == 1 and a >= 2:
            if A >= 1:
                out = {(a + 1, 1): (1, False)}
                if A > 1:
                    out[(1, 0)] = (A - 1, False)
            else:
                out = {(1, 0): (d - M, False)}
            if M:
                out[(1, 1)] = (M, False)
            return ConvexGenerator(out)
    raise DeltaOutOfRange(f"no rewrite rule applies to {Y}")


def y_sequence(d: int, length: Optional[int] = None) -> list:
    """``[Y_1, ..., Y_length]`` (default ``length = d``)."""
    if d < 1:
        raise DeltaOutOfRange("d must be at least 1")
    n = d if length is None else length
    seq = [e(1, 0) * e(1, 1, d - 1) if d > 1 else e(1, 0)]
    while len(seq) < n:
        seq.append(_next_y(seq[-1], d))
    return seq[:n]


def construct_Y_sequence(d: int, delta: int):
    """``(Y_delta, X_delta)``: two action minimizers for balls of index
    ``d(d+3) - 2*delta``; ``X_delta`` is the mirror image of ``Y_delta``."""
    if d < 1 or not 1 <= delta <= d:
        raise DeltaOutOfRange(f"delta must lie in [1, {d}] for d = {d}, got {delta}")
    Y = y_sequence(d, delta)[-1]
    return Y, Y.reflect()

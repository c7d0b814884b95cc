"""Self-checks that compare fast formulas against slow direct computations.

Each suite returns a ``SuiteResult``; the CLI ``verify`` command and the
test-suite both run them.
"""

from __future__ import annotations

import itertools
import random
from collections import defaultdict
from dataclasses import dataclass, field

from .enumeration import EnumBounds, directions, enumerate_generators
from .generators import ConvexGenerator, lattice_count, product, product_index_formula

__all__ = [
    "SuiteResult",
    "random_generator",
    "pick_suite",
    "product_formula_suite",
    "subset_corollary_suite",
    "run_all",
]


@dataclass
class SuiteResult:
    name: str
    checked: int = 0
    failures: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        return {
            "suite": self.name,
            "checked": self.checked,
            "failed": len(self.failures),
            "examples": [str(f) for f in self.failures[:5]],
        }


def random_generator(rng: random.Random, max_x: int, max_y: int, allow_h: bool = True) -> ConvexGenerator:
    """A generator drawn by spending a random ``(x, y)`` budget on random directions."""
    rx, ry = rng.randint(0, max_x), rng.randint(0, max_y)
    dirs = list(directions(max_x, max_y))
    rng.shuffle(dirs)
    edges = {}
    for a, b in dirs:
        if a > rx or b > ry or rng.random() < 0.6:
            continue
        top = min(rx // a if a else ry // b, ry // b if b else rx // a)
        k = rng.randint(1, top)
        rx -= k * a
        ry -= k * b
        edges[(a, b)] = (k, allow_h and a > 0 and b > 0 and rng.random() < 0.3)
    return ConvexGenerator(edges)


def pick_suite(max_x: int, max_y: int) -> SuiteResult:
    """``2(L - 1) - h`` from a point count against the shoelace index."""
    res = SuiteResult(f"pick {max_x}x{max_y}")
    for g in enumerate_generators(EnumBounds(max_x, max_y, allow_h=True)):
        res.checked += 1
        if 2 * (lattice_count(g).L - 1) - g.h != g.index:
            res.failures.append(g)
    return res


def _compatible(g1: ConvexGenerator, g2: ConvexGenerator) -> bool:
    return not (g1.hyperbolic_directions() & g2.hyperbolic_directions())


def product_formula_suite(box: int, random_pairs: int, random_box: int, seed: int = 0) -> SuiteResult:
    """The rectangle-sum formula against the index of the merged path."""
    res = SuiteResult(f"product formula {box}x{box} + {random_pairs} random in {random_box}x{random_box}")
    gens = list(enumerate_generators(EnumBounds(box, box, allow_h=True)))

    def check(g1, g2):
        res.checked += 1
        if product_index_formula(g1, g2) != product(g1, g2).index:
            res.failures.append((g1, g2))

    for g1, g2 in itertools.product(gens, repeat=2):
        if _compatible(g1, g2):
            check(g1, g2)
    rng = random.Random(seed)
    done = 0
    while done < random_pairs:
        g1 = random_generator(rng, random_box, random_box)
        g2 = random_generator(rng, random_box, random_box)
        if _compatible(g1, g2):
            check(g1, g2)
            done += 1
    return res


def subset_corollary_suite(box: int, max_n: int) -> SuiteResult:
    """Pairwise index agreement forces agreement on every sub-product.

    Families are multisets of columns ``(g, g')`` with ``I(g) == I(g')``,
    drawn from the box, such that every two columns (a column may pair with
    itself) have defined products with ``I(g_i g_j) == I(g'_i g'_j)``.
    Every sub-family of such a family is again one, so checking the full
    product of every family of size ``<= max_n`` covers all subsets.

    Products are merged edge multisets; each generator is packed into one
    integer so a product is an addition, and the index of each distinct
    merged path is computed once by the shoelace formula.
    """
    res = SuiteResult(f"subset corollary n<={max_n} from {box}x{box}")
    gens = list(enumerate_generators(EnumBounds(box, box, allow_h=True)))
    dirs = list(directions(box * max_n, box * max_n))
    slot = {d: i for i, d in enumerate(dirs)}
    width = (max_n * box + 1).bit_length() + 1

    def pack(g):
        key = 0
        for a, b, m, hh in g.items:
            i = 2 * slot[(a, b)]
            key += m << (width * i)
            key += int(hh) << (width * (i + 1))
        return key

    mask = (1 << width) - 1
    index_of: dict[int, int] = {}

    def index(key):
        val = index_of.get(key)
        if val is None:
            edges = {}
            for i, d in enumerate(dirs):
                m = (key >> (width * 2 * i)) & mask
                if m:
                    edges[d] = (m, bool((key >> (width * (2 * i + 1))) & mask))
            val = index_of[key] = ConvexGenerator(edges).index
        return val

    by_index = defaultdict(list)
    for g in gens:
        by_index[g.index].append(g)
    cols = [(g, gp) for i in sorted(by_index) for g in by_index[i] for gp in by_index[i]]
    P = [pack(g) for g, _ in cols]
    Q = [pack(gp) for _, gp in cols]
    n = len(cols)

    adj = [0] * n
    for i in range(n):
        gi, gpi = cols[i]
        for j in range(i, n):
            gj, gpj = cols[j]
            if not (_compatible(gi, gj) and _compatible(gpi, gpj)):
                continue
            if product(gi, gj).index == product(gpi, gpj).index:
                adj[i] |= 1 << j
                adj[j] |= 1 << i

    def bits(m):
        while m:
            low = m & -m
            yield low.bit_length() - 1
            m ^= low

    def rec(start, cand, p, q, depth):
        # cand holds columns >= start compatible with everything chosen
        for j in bits(cand >> start << start):
            pj, qj = p + P[j], q + Q[j]
            res.checked += 1
            if index(pj) != index(qj):
                res.failures.append((depth + 1, j))
            if depth + 1 < max_n:
                rec(j, cand & adj[j], pj, qj, depth + 1)

    rec(0, (1 << n) - 1, 0, 0, 0)
    return res


def run_all(quick: bool = True, seed: int = 0) -> list[SuiteResult]:
    if quick:
        return [
            pick_suite(4, 4),
            product_formula_suite(3, 1000, 10, seed),
            subset_corollary_suite(2, 3),
        ]
    return [
        pick_suite(6, 6),
        product_formula_suite(4, 10_000, 10, seed),
        subset_corollary_suite(3, 4),
    ]

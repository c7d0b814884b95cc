"""The <= relation between generators and the pairwise embedding criterion.

``run_criterion`` searches for factorizations ``target = L'_1 ... L'_n`` and
``L = L_1 ... L_n`` satisfying

  (i)   ``L_i <= L'_i`` for every i,
  (ii)  distinct pairs ``(L'_i, L_i)`` share no elliptic orbit,
  (iii) ``I(L_i L_j) == I(L'_i L'_j)`` for every i != j.

If no such factorization exists for a minimal target, the embedding is
obstructed.  Only the O(n^2) pairwise condition is checked; the subset form
is kept in ``subset_oracle`` for testing.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional

from .domains import ToricDomain
from .enumeration import directions, _walk_exact, is_minimal
from .errors import (
    HypothesisViolated,
    InvalidGenerator,
    SharedHyperbolicOrbit,
    TargetNotMinimal,
    UnsupportedCriterion,
)
from .generators import ONE, ConvexGenerator, product, product_index_formula

__all__ = [
    "LeqWitness",
    "CriterionConfig",
    "ObstructionReport",
    "leq",
    "candidates",
    "run_criterion",
    "verify_witness",
    "subset_oracle",
    "OBSTRUCTED",
    "WITNESS_FOUND",
]

OBSTRUCTED = "Obstructed"
WITNESS_FOUND = "WitnessFound"


@dataclass(frozen=True)
class LeqWitness:
    lhs: ConvexGenerator
    rhs: ConvexGenerator
    index_ok: bool
    action_ok: bool
    genus_ok: bool

    @property
    def holds(self) -> bool:
        return self.index_ok and self.action_ok and self.genus_ok

    def __bool__(self):
        return self.holds


def _genus_lhs2(g: ConvexGenerator) -> int:
    return 2 * (g.x + g.y) - g.h


def _genus_rhs2(g: ConvexGenerator) -> int:
    return 2 * (g.x + g.y + g.m - 1)


def leq(dom_from: ToricDomain, dom_to: ToricDomain, lhs: ConvexGenerator, rhs: ConvexGenerator) -> LeqWitness:
    return LeqWitness(
        lhs=lhs,
        rhs=rhs,
        index_ok=lhs.index == rhs.index,
        action_ok=dom_from.action(lhs) <= dom_to.action(rhs),
        genus_ok=_genus_lhs2(lhs) >= _genus_rhs2(rhs),
    )


@lru_cache(maxsize=4096)
def candidates(dom_from: ToricDomain, dom_to: ToricDomain, rhs: ConvexGenerator) -> tuple:
    """Every ``lhs`` with ``lhs <= rhs``, ordered by action then printed form.

    The action cap bounds the endpoints: ``x(lhs) <= T / f(0)`` and
    ``y(lhs) <= T / A`` since every primitive edge costs at least that much.
    """
    if not rhs:
        return (ONE,)
    T = dom_to.action(rhs)
    target = rhs.index
    genus = _genus_rhs2(rhs)
    s10, s01 = dom_from.support(1, 0), dom_from.support(0, 1)
    max_x = int(T // s10)
    max_y = int(T // s01)
    found = []

    def keep(items, idx, act):
        g = ConvexGenerator._from_items(items)
        if _genus_lhs2(g) >= genus and act <= T:
            found.append(g)

    for X in range(max_x + 1):
        for Y in range(max_y + 1):
            if 2 * (X + Y) < genus or X + Y > target:
                continue
            if 2 * (X + 1) * (Y + 1) - 2 < target:
                continue
            if dom_from.support(X, Y) > T:
                # action is subadditive, so the chord is the cheapest path
                continue
            dirs = directions(X, Y)
            sup = [dom_from.support(a, b) for a, b in dirs]
            _walk_exact(X, Y, dirs, target, True, sup, T, keep)
    found.sort(key=lambda g: (dom_from.action(g), str(g)))
    return tuple(found)


@dataclass
class CriterionConfig:
    domain_from: ToricDomain
    domain_to: ToricDomain
    target: ConvexGenerator
    max_parts: Optional[int] = None
    forbid_repeats: bool = False
    known_candidates: Optional[dict] = None
    known_only: bool = False  # parts absent from known_candidates have none
    check_minimal: bool = True
    nonminimal_target: bool = False


@dataclass
class ObstructionReport:
    outcome: str
    witness: Optional[list] = None  # list of (part, lhs) pairs
    nodes_explored: int = 0
    candidates_per_part: dict = field(default_factory=dict)

    @property
    def obstructed(self) -> bool:
        return self.outcome == OBSTRUCTED

    def to_dict(self) -> dict:
        return {
            "outcome": self.outcome,
            "witness": None
            if self.witness is None
            else [{"target_part": str(p), "lhs": str(g)} for p, g in self.witness],
            "nodes_explored": self.nodes_explored,
            "candidates_per_part": dict(self.candidates_per_part),
        }


def _sub_order(s):
    return (-sum(s), tuple(-t for t in s))


def _sub_vectors(vec):
    ranges = [range(v + 1) for v in vec]
    subs = [s for s in itertools.product(*ranges) if any(s)]
    subs.sort(key=_sub_order)
    return subs


def _part_vector(tdirs, tvec):
    """Map a generator to its multiplicity vector inside the target, or None."""

    def conv(g):
        if not g.all_e:
            return None
        mults = {(a, b): m for a, b, m, _ in g.items}
        if not set(mults) <= set(tdirs):
            return None
        v = tuple(mults.get(d, 0) for d in tdirs)
        if any(s > t for s, t in zip(v, tvec)) or not any(v):
            return None
        return v

    return conv


def _pair_ok(p, q) -> bool:
    """Conditions (ii), (iii) and definedness for two chosen pairs."""
    part_p, lam_p = p
    part_q, lam_q = q
    if lam_p.hyperbolic_directions() & lam_q.hyperbolic_directions():
        return False
    if p != q and lam_p.elliptic_directions() & lam_q.elliptic_directions():
        return False
    return product_index_formula(lam_p, lam_q) == product_index_formula(part_p, part_q)


def run_criterion(cfg: CriterionConfig) -> ObstructionReport:
    target = cfg.target
    if cfg.nonminimal_target:
        raise UnsupportedCriterion("the criterion for non-minimal all-e targets is not implemented")
    if not target.all_e:
        raise InvalidGenerator("target must have all edges labelled e")
    if cfg.check_minimal and target and not is_minimal(cfg.domain_to, target):
        raise TargetNotMinimal(f"{target} is not minimal for {cfg.domain_to}")

    tdirs = [(a, b) for a, b, _, _ in target.items]
    tvec = tuple(m for _, _, m, _ in target.items)

    def to_gen(vec):
        return ConvexGenerator({d: k for d, k in zip(tdirs, vec) if k})

    if cfg.known_only:
        subs = [v for v in map(_part_vector(tdirs, tvec), cfg.known_candidates or ()) if v]
        subs.sort(key=_sub_order)
    else:
        subs = _sub_vectors(tvec)

    pairs = []
    per_part = {}
    for sv in subs:
        part = to_gen(sv)
        if cfg.known_candidates is not None and part in cfg.known_candidates:
            cands = tuple(cfg.known_candidates[part])
        else:
            cands = candidates(cfg.domain_from, cfg.domain_to, part)
        per_part[str(part)] = len(cands)
        for lam in cands:
            pairs.append((sv, (part, lam)))

    n = len(pairs)
    dim = len(tvec)
    suffix = [[0] * dim for _ in range(n + 1)]
    for i in range(n - 1, -1, -1):
        for c in range(dim):
            suffix[i][c] = suffix[i + 1][c] + pairs[i][0][c]

    compat = {}

    def ok(i, j):
        key = (i, j) if i <= j else (j, i)
        if key not in compat:
            compat[key] = _pair_ok(pairs[key[0]][1], pairs[key[1]][1])
        return compat[key]

    nodes = 0
    chosen: list[int] = []
    max_parts = cfg.max_parts

    def rec(start, remaining):
        nonlocal nodes
        nodes += 1
        if not any(remaining):
            return True
        if max_parts is not None and len(chosen) >= max_parts:
            return False
        if cfg.forbid_repeats and any(r > s for r, s in zip(remaining, suffix[start])):
            return False
        for p in range(start, n):
            sv = pairs[p][0]
            if any(s > r for s, r in zip(sv, remaining)):
                continue
            if cfg.forbid_repeats and p in chosen:
                continue
            if not all(ok(p, q) for q in chosen):
                continue
            chosen.append(p)
            if rec(p + 1 if cfg.forbid_repeats else p, tuple(r - s for r, s in zip(remaining, sv))):
                return True
            chosen.pop()
        return False

    found = rec(0, tvec)
    if found:
        witness = [pairs[i][1] for i in chosen]
        assert verify_witness(cfg.domain_from, cfg.domain_to, target, witness)
        return ObstructionReport(WITNESS_FOUND, witness, nodes, per_part)
    return ObstructionReport(OBSTRUCTED, None, nodes, per_part)


def verify_witness(dom_from, dom_to, target, witness) -> bool:
    """Re-check conditions (i)-(iii) and the two factorizations from scratch."""
    prod_parts = ONE
    prod_lhs = ONE
    try:
        for part, lam in witness:
            prod_parts = product(prod_parts, part)
            prod_lhs = product(prod_lhs, lam)
    except SharedHyperbolicOrbit:
        return False
    if prod_parts != target:
        return False
    for part, lam in witness:
        if not leq(dom_from, dom_to, lam, part).holds:
            return False
    for (i, (pi, li)), (j, (pj, lj)) in itertools.combinations(enumerate(witness), 2):
        if (pi, li) != (pj, lj) and li.elliptic_directions() & lj.elliptic_directions():
            return False
        if product(li, lj).index != product(pi, pj).index:
            return False
    return True


def subset_oracle(gs, gs_prime) -> bool:
    """Compare indices of all ``2^n`` subset products of two families.

    Raises ``HypothesisViolated`` unless the pairwise premises hold.
    """
    gs, gs_prime = list(gs), list(gs_prime)
    n = len(gs)
    if len(gs_prime) != n:
        raise HypothesisViolated("families must have the same length")
    for fam in (gs, gs_prime):
        for i, j in itertools.combinations(range(n), 2):
            if fam[i].hyperbolic_directions() & fam[j].hyperbolic_directions():
                raise HypothesisViolated("a family shares a hyperbolic orbit")
    for i in range(n):
        if gs[i].index != gs_prime[i].index:
            raise HypothesisViolated(f"I differs at position {i}")
    for i, j in itertools.combinations(range(n), 2):
        if product(gs[i], gs[j]).index != product(gs_prime[i], gs_prime[j]).index:
            raise HypothesisViolated(f"pair ({i}, {j}) index differs")
    for mask in range(1 << n):
        p, q = ONE, ONE
        for i in range(n):
            if mask >> i & 1:
                p = product(p, gs[i])
                q = product(q, gs_prime[i])
        if p.index != q.index:
            return False
    return True

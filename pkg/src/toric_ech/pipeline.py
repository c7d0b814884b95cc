"""Decision procedure for ``P(a,1) -> B(c)`` obstructions and sharpness witnesses.

For ``2 <= a < (5 + sqrt 7)/3`` and ``c < 2 + a/2`` the procedure

1. bounds the endpoints of every ``L <= e_{1,1}^d``,
2. finds ``d_a`` beyond which no such ``L`` exists,
3. counts ``N_d`` exhaustively for ``d <= d_a``,
4. rules out repeated factor pairs,
5. runs the criterion on ``e_{1,1}^D`` with ``D = N + 1``.

``large_d_witness`` and ``sharpness_witness`` go the other way: above the
threshold they exhibit ``L <= e_{1,1}^d`` for a ``c`` just under
``2 + a/2``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .criterion import OBSTRUCTED, CriterionConfig, candidates, leq, run_criterion
from .domains import Ball, Polydisk, compare_a_to_sqrt7_threshold, format_rational
from .enumeration import is_minimal
from .errors import (
    AboveThreshold,
    BelowThreshold,
    DomainTooSmall,
    NotBelowVolumeBound,
    ParamOutOfRange,
    SearchCeiling,
)
from .generators import ConvexGenerator, e, product

__all__ = [
    "xy_upper_bounds",
    "x_upper",
    "d_bounds",
    "compute_d_a",
    "repeat_candidates",
    "no_repeats_check",
    "PipelineParams",
    "PipelineReport",
    "obstruction_pipeline",
    "large_d_witness",
    "sharpness_witness",
    "critical_a",
    "ENDPOINT_NOTE",
    "EMBEDDING_OBSTRUCTED",
    "INCONCLUSIVE",
]

EMBEDDING_OBSTRUCTED = "EmbeddingObstructed"
INCONCLUSIVE = "Inconclusive"

#: Largest ``D`` for which minimality of ``e_{1,1}^D`` is re-verified by search.
MINIMALITY_CHECK_LIMIT = 12

ENDPOINT_NOTE = (
    "a = (5+sqrt 7)/3 is irrational, so it cannot be passed to the pipeline.\n"
    "The obstruction there follows by a limit: every rational a below the\n"
    "threshold forces c >= 2 + a/2 for P(a,1) -> B(c).  If P(a0,1) embedded\n"
    "into B(c) with a0 the threshold, so would P(a,1) for every a < a0, hence\n"
    "c >= 2 + a/2 for all such a, and letting a increase to a0 gives\n"
    "c >= 2 + a0/2."
)


def _frac(v) -> Fraction:
    if isinstance(v, float):
        raise TypeError("pass an exact rational")
    return Fraction(v)


def _check_volume(a: Fraction, c: Fraction) -> None:
    if c >= 2 + a / 2:
        raise NotBelowVolumeBound(
            f"c = {format_rational(c)} is not below 2 + a/2 = {format_rational(2 + a / 2)}"
        )


def xy_upper_bounds(a, c, d: int) -> tuple[Fraction, Fraction]:
    """Strict bounds ``(x_bound, y_bound)`` for any ``L <= e_{1,1}^d``.

    ``x_bound`` is the bound at ``y = 0``; use ``x_upper`` for a given ``y``.
    """
    a, c = _frac(a), _frac(c)
    if a <= 1:
        raise ParamOutOfRange("need a > 1")
    if d < 1:
        raise ParamOutOfRange("need d >= 1")
    _check_volume(a, c)
    return x_upper(a, d, 0), Fraction(d * (a - 2) + 2, 2 * (a - 1))


def x_upper(a, d: int, y: int) -> Fraction:
    """Strict upper bound on ``x`` given ``y``: ``(2 + a/2) d - a y``."""
    a = _frac(a)
    return (2 + a / 2) * d - a * y


def d_bounds(a) -> tuple[int, int]:
    """``(d_1, d_2)``: past ``d_1`` the y-derivative bound is negative, past
    ``d_2`` the quadratic in ``d`` is positive."""
    a = _frac(a)
    if a < 2:
        raise ParamOutOfRange("need a >= 2")
    if compare_a_to_sqrt7_threshold(a) >= 0:
        raise AboveThreshold(f"a = {format_rational(a)} is not below (5+sqrt 7)/3")

    # d(a^2 - 7a + 4) + 2(a^2 + 1) < 0; the slope is negative on this range
    slope = a * a - 7 * a + 4
    root = 2 * (a * a + 1) / -slope
    d1 = max(0, math.floor(root))

    qa = -3 * a * a + 10 * a - 6
    qb = -2 * (2 * a * a + a - 1)
    qc = 4 * (a * a - a + 1)

    def q(t):
        return (qa * t + qb) * t + qc

    # clear denominators so the larger root can be isolated with isqrt
    den = math.lcm(qa.denominator, qb.denominator, qc.denominator)
    A, B, C = (int(v * den) for v in (qa, qb, qc))
    disc = B * B - 4 * A * C
    if disc < 0:
        d2 = 0
    else:
        f = (-B + math.isqrt(disc)) // (2 * A)
        while q(f + 1) <= 0:
            f += 1
        while q(f) > 0 and 2 * A * f + B > 0:
            f -= 1
        d2 = max(0, f) if q(f) <= 0 else 0
    return d1, d2


def compute_d_a(a) -> int:
    """Past this ``d`` no generator is ``<= e_{1,1}^d`` for any ``c < 2 + a/2``."""
    d1, d2 = d_bounds(a)
    return max(1, d1, d2)


def _target(d: int) -> ConvexGenerator:
    return e(1, 1, d)


def repeat_candidates(a, c, d: int) -> list[ConvexGenerator]:
    """Every ``L <= e_{1,1}^d`` with ``I(L L) == I(e_{1,1}^{2d})``, from the closed form.

    A repeat forces ``L`` to be a single segment with displacement ``(x, y)``,
    ``x = (3d - 1 +- s)/2``, ``s^2 = 5d^2 - 6d + 1`` and ``x y = d^2``.
    """
    a, c = _frac(a), _frac(c)
    if not (2 <= a <= 3):
        raise ParamOutOfRange("need 2 <= a <= 3")
    if d < 1:
        raise ParamOutOfRange("need d >= 1")
    _check_volume(a, c)
    disc = 5 * d * d - 6 * d + 1
    s = math.isqrt(disc)
    if s * s != disc:
        return []
    src, dst, target = Polydisk(a, 1), Ball(c), _target(d)
    goal = _target(2 * d).index
    found = []
    for num in {3 * d - 1 + s, 3 * d - 1 - s}:
        if num <= 0 or num % 2:
            continue
        x = num // 2
        if (d * d) % x:
            continue
        y = d * d // x
        g = math.gcd(x, y)
        lam = e(x // g, y // g, g)
        if leq(src, dst, lam, target).holds and product(lam, lam).index == goal:
            found.append(lam)
    return sorted(found, key=str)


def no_repeats_check(a, c, d: int) -> bool:
    """True when no ``L <= e_{1,1}^d`` can appear twice in a factorization."""
    return not repeat_candidates(a, c, d)


@dataclass
class PipelineParams:
    a: Fraction
    c: Fraction
    d_max: int = 10**7

    def __post_init__(self):
        self.a = _frac(self.a)
        self.c = _frac(self.c)
        if self.c <= 0:
            raise ParamOutOfRange("need c > 0")


@dataclass
class PipelineReport:
    a: Fraction
    c: Fraction
    d_a: int
    N_d: dict
    N: int
    D: int
    verdict: str
    trace: list = field(default_factory=list)
    d_1: int = 0
    d_2: int = 0
    largest_nonempty_d: int = 0

    def to_dict(self) -> dict:
        return {
            "schema": 1,
            "a": format_rational(self.a),
            "c": format_rational(self.c),
            "d_1": self.d_1,
            "d_2": self.d_2,
            "d_a": self.d_a,
            "largest_nonempty_d": self.largest_nonempty_d,
            "N_d": {str(k): v for k, v in sorted(self.N_d.items())},
            "N": self.N,
            "D": self.D,
            "verdict": self.verdict,
            "trace": [dict(step) for step in self.trace],
        }

    def markdown(self) -> str:
        lines = [
            f"# P({format_rational(self.a)},1) -> B({format_rational(self.c)})",
            "",
            "| step | check | result |",
            "|---|---|---|",
        ]
        for i, step in enumerate(self.trace, 1):
            lines.append(f"| {i} | {step['check']} | {step['result']} |")
        lines += ["", f"**verdict:** {self.verdict}"]
        return "\n".join(lines)


def obstruction_pipeline(params: PipelineParams) -> PipelineReport:
    """Decide whether the criterion obstructs ``P(a,1) -> B(c)``.

    The verdict is ``EmbeddingObstructed`` only when every step below is
    verified by computation; otherwise ``Inconclusive`` with the reason in
    the trace.
    """
    a, c = params.a, params.c
    if a < 2:
        raise ParamOutOfRange("need a >= 2")
    if compare_a_to_sqrt7_threshold(a) >= 0:
        raise AboveThreshold(
            f"a = {format_rational(a)} is not below (5+sqrt 7)/3; "
            "the large-d elimination needs a positive d^2 coefficient"
        )
    _check_volume(a, c)

    trace: list[dict] = []

    def log(check, result, **extra):
        trace.append({"check": check, "result": result, **extra})

    src, dst = Polydisk(a, 1), Ball(c)
    log("gates", f"2 <= a < (5+sqrt 7)/3 and c < {format_rational(2 + a / 2)}")

    d1, d2 = d_bounds(a)
    d_a = max(1, d1, d2)
    log("large-d elimination", f"d_1 = {d1}, d_2 = {d2}, d_a = {d_a}", d_1=d1, d_2=d2, d_a=d_a)

    x0, y_bound = xy_upper_bounds(a, c, 1)
    N_d: dict[int, int] = {}
    known: dict[ConvexGenerator, tuple] = {}
    bounds_ok = True
    for d in range(1, d_a + 1):
        cands = candidates(src, dst, _target(d))
        _, yb = xy_upper_bounds(a, c, d)
        for lam in cands:
            if not (lam.y < yb and lam.x < x_upper(a, d, lam.y)):
                bounds_ok = False
        N_d[d] = len(cands)
        if cands:
            known[_target(d)] = cands
    nonempty = [d for d, n in N_d.items() if n]
    largest = max(nonempty, default=0)
    log(
        "endpoint bounds",
        "every candidate satisfies the x/y bounds" if bounds_ok else "a candidate violates the x/y bounds",
        ok=bounds_ok,
    )
    log(
        "candidate counts",
        f"nonzero N_d at d = {nonempty}",
        N_d={str(d): n for d, n in N_d.items() if n},
    )

    beyond = {d: len(candidates(src, dst, _target(d))) for d in range(d_a + 1, d_a + 4)}
    beyond_ok = not any(beyond.values())
    log(
        "cross-check past d_a",
        f"d = {d_a + 1}..{d_a + 3}: " + ("no candidates" if beyond_ok else f"found {beyond}"),
        ok=beyond_ok,
    )
    if largest < d_a:
        log(
            "exhaustive d_a",
            f"no candidates for {largest} < d <= {d_a}; search certifies d_a = {max(largest, 1)}",
        )

    repeats = {d: [str(g) for g in repeat_candidates(a, c, d)] for d in nonempty}
    repeats_ok = not any(repeats.values())
    log(
        "repeat elimination",
        "no candidate can repeat" if repeats_ok else f"repeatable candidates: {repeats}",
        ok=repeats_ok,
    )

    N = sum(d * n for d, n in N_d.items())
    D = N + 1
    log("index count", f"N = {N}, D = {D}; N(N+3) = {N * (N + 3)} < D(D+3) = {D * (D + 3)}", N=N, D=D)
    if D > params.d_max:
        raise SearchCeiling(f"D = {D} exceeds d_max = {params.d_max}")

    target = _target(D)
    if D <= MINIMALITY_CHECK_LIMIT:
        minimal = is_minimal(dst, target)
        log("target minimality", f"{target} minimal for {dst}: {minimal} (checked by search)", ok=minimal)
    else:
        minimal = True
        log("target minimality", f"{target} is minimal for every ball; search skipped for D > {MINIMALITY_CHECK_LIMIT}")

    report = run_criterion(
        CriterionConfig(
            src,
            dst,
            target,
            forbid_repeats=repeats_ok,
            known_candidates=known,
            known_only=True,
            check_minimal=False,
        )
    )
    log("criterion", f"{report.outcome} after {report.nodes_explored} nodes", outcome=report.outcome)

    verified = bounds_ok and beyond_ok and minimal and report.outcome == OBSTRUCTED
    verdict = EMBEDDING_OBSTRUCTED if verified else INCONCLUSIVE
    return PipelineReport(
        a=a,
        c=c,
        d_a=d_a,
        N_d=N_d,
        N=N,
        D=D,
        verdict=verdict,
        trace=trace,
        d_1=d1,
        d_2=d2,
        largest_nonempty_d=largest,
    )


def large_d_witness(d: int) -> ConvexGenerator:
    """``e_{1,0}^F e_{m,1} e_{0,1}^V`` with ``x + y = 3d - 1`` and index ``d(d+3)``."""
    if d < 9:
        raise DomainTooSmall(f"need d >= 9, got {d}")
    k = math.isqrt(7 * d * d)
    if k * k == 7 * d * d:
        k -= 1
    C = 7 * d * d - k * k
    if C % 4 == 3:
        F2 = 3 * d - (C - 1) // 2 + k
        assert F2 % 2 == 0
        F, s = F2 // 2, k + 1
    elif C % 4 in (0, 2):
        assert (6 * d - C) % 4 == 0
        F, s = (6 * d - C) // 4, k
    else:
        raise AssertionError("7d^2 - k^2 cannot be 1 mod 4")
    assert s * s == 7 * d * d - 6 * d + 4 * F
    # 0 <= F <= (3d - 1 + sqrt(7d^2 - 3))/2
    assert F >= 0 and (2 * F - 3 * d + 1 <= 0 or (2 * F - 3 * d + 1) ** 2 <= 7 * d * d - 3)
    V2, m2 = 3 * d - 2 - s, 3 * d - 2 + s - 2 * F
    assert V2 % 2 == 0 and m2 % 2 == 0
    V, m = V2 // 2, m2 // 2
    assert V >= 0 and m >= 0
    parts = {(1, 0): F, (m, 1): 1}
    parts[(0, 1)] = parts.get((0, 1), 0) + V
    g = ConvexGenerator({k_: v for k_, v in parts.items() if v})
    assert g.x + g.y == 3 * d - 1 and g.index == d * (d + 3)
    return g


def _formula_witness(d: int) -> ConvexGenerator:
    if d == 1:
        return e(1, 0, 2)
    if d == 2:
        return e(1, 0, 5)
    if d <= 8:
        F = (d * d - 3 * d + 2) // 2
        m = (-d * d + 9 * d - 6) // 2
        return e(1, 0, F) * e(m, 1)
    return large_d_witness(d)


def critical_a(witness: ConvexGenerator, d: int) -> Optional[Fraction]:
    """Least ``a`` above which ``witness`` beats ``(2 + a/2) d`` in ``P(a,1)``.

    ``None`` when ``y >= d/2``, where no ``a`` works.
    """
    denom = Fraction(d, 2) - witness.y
    if denom <= 0:
        return None
    return (witness.x - 2 * d) / denom


def sharpness_witness(a, d: int) -> tuple[Fraction, ConvexGenerator]:
    """``(eps, L)`` with ``L <= e_{1,1}^d`` from ``P(a,1)`` into ``B(2 + a/2 - eps)``."""
    a = _frac(a)
    if a <= 0:
        raise ParamOutOfRange("need a > 0")
    if d < 1:
        raise ParamOutOfRange("need d >= 1")
    lam = _formula_witness(d)
    src = Polydisk(a, 1)
    eps = 2 + a / 2 - src.action(lam) / d
    if eps <= 0:
        raise BelowThreshold(
            f"no witness for a = {format_rational(a)}, d = {d}: the construction needs eps > 0, got {format_rational(eps)}"
        )
    c = 2 + a / 2 - eps
    if not leq(src, Ball(c), lam, _target(d)).holds:
        raise BelowThreshold(f"witness {lam} fails the <= relation at d = {d}")
    return eps, lam

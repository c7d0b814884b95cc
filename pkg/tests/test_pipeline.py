import math
from fractions import Fraction

import pytest

from toric_ech.criterion import candidates, leq
from toric_ech.domains import Ball, Polydisk
from toric_ech.errors import (
    AboveThreshold,
    BelowThreshold,
    DomainTooSmall,
    NotBelowVolumeBound,
    ParamOutOfRange,
    SearchCeiling,
)
from toric_ech.generators import e, product
from toric_ech.pipeline import (
    EMBEDDING_OBSTRUCTED,
    PipelineParams,
    compute_d_a,
    large_d_witness,
    critical_a,
    d_bounds,
    no_repeats_check,
    repeat_candidates,
    sharpness_witness,
    obstruction_pipeline,
    x_upper,
    xy_upper_bounds,
)

C29 = Fraction(29, 10)


def test_y_bound_at_two():
    for d in range(1, 10):
        assert xy_upper_bounds(2, C29, d)[1] == 1


def test_x_bound_d1():
    assert xy_upper_bounds(2, C29, 1)[0] == 3


def test_bounds_preconditions():
    with pytest.raises(ParamOutOfRange):
        xy_upper_bounds(2, C29, 0)
    with pytest.raises(NotBelowVolumeBound):
        xy_upper_bounds(2, 3, 1)


@pytest.mark.parametrize("a", [2, Fraction(9, 4), Fraction(5, 2)])
def test_candidates_respect_bounds(a):
    a = Fraction(a)
    c = 2 + a / 2 - Fraction(1, 100)
    src, dst = Polydisk(a, 1), Ball(c)
    for d in range(1, min(compute_d_a(a), 8) + 1):
        _, yb = xy_upper_bounds(a, c, d)
        for lam in candidates(src, dst, e(1, 1, d)):
            assert lam.y < yb and lam.x < x_upper(a, d, lam.y)


def test_d_bounds_at_two():
    assert d_bounds(2) == (1, 8)
    assert compute_d_a(2) == 8
    # 2d^2 - 18d + 12 is positive past 8 and not at 8
    assert 2 * 81 - 18 * 9 + 12 > 0 >= 2 * 64 - 18 * 8 + 12


def test_d_bounds_generic():
    def quad(a, d):
        return (-3 * a * a + 10 * a - 6) * d * d - 2 * (2 * a * a + a - 1) * d + 4 * (a * a - a + 1)

    for a in [2, Fraction(9, 4), Fraction(5, 2), Fraction(254, 100)]:
        d1, d2 = d_bounds(a)
        for d in range(d2 + 1, d2 + 50):
            assert quad(a, d) > 0
        assert d2 == 0 or quad(a, d2) <= 0
        for d in range(d1 + 1, d1 + 50):
            assert d * (a * a - 7 * a + 4) + 2 * (a * a + 1) < 0


def test_d_a_near_threshold_is_large():
    assert compute_d_a(Fraction(2548, 1000)) > 5_000


def test_d_a_above_threshold():
    with pytest.raises(AboveThreshold):
        compute_d_a(3)


@pytest.mark.parametrize("a", [2, Fraction(5, 2)])
def test_no_candidates_just_past_d_a(a):
    a = Fraction(a)
    c = 2 + a / 2 - Fraction(1, 100)
    d_a = compute_d_a(a)
    for d in range(d_a + 1, d_a + 4):
        assert not candidates(Polydisk(a, 1), Ball(c), e(1, 1, d))


def test_diagonal_shape():
    for d in range(1, 8):
        g = e(1, 1, d)
        assert g.stats.doubled_area == d * d and g.stats.b == 3 * d


def test_no_repeats_closed_form_vs_search():
    for a, c in [(2, C29), (Fraction(5, 2), Fraction(159, 50))]:
        for d in range(1, 7):
            goal = e(1, 1, 2 * d).index
            search = [
                lam
                for lam in candidates(Polydisk(a, 1), Ball(c), e(1, 1, d))
                if not lam.hyperbolic_directions() and product(lam, lam).index == goal
            ]
            assert repeat_candidates(a, c, d) == search == []


def test_repeat_closed_form_without_action_bound():
    # at d = 2 the square 5d^2 - 6d + 1 = 9 gives x = 4 or 1, y = 1 or 4;
    # e_{4,1} has the right index and genus but too much action below 2 + a/2
    assert 5 * 4 - 12 + 1 == 9
    assert product(e(4, 1), e(4, 1)).index == e(1, 1, 4).index
    assert not leq(Polydisk(2, 1), Ball(C29), e(4, 1), e(1, 1, 2)).action_ok


def test_no_repeats_vacuous():
    assert math.isqrt(5 * 9 - 18 + 1) ** 2 != 28
    assert no_repeats_check(2, C29, 3)


def test_pipeline_two():
    rep = obstruction_pipeline(PipelineParams(2, C29))
    assert rep.verdict == EMBEDDING_OBSTRUCTED
    assert (rep.d_a, rep.N, rep.D) == (8, 3, 4)
    assert rep.N_d[1] == 1 and rep.N_d[2] == 1
    assert rep.N == sum(d * n for d, n in rep.N_d.items())
    assert rep.to_dict()["schema"] == 1
    assert "verdict" in rep.markdown()


def test_pipeline_gates():
    with pytest.raises(NotBelowVolumeBound):
        obstruction_pipeline(PipelineParams(2, 3))
    with pytest.raises(AboveThreshold):
        obstruction_pipeline(PipelineParams(Fraction(13, 5), 3))
    with pytest.raises(ParamOutOfRange):
        obstruction_pipeline(PipelineParams(Fraction(3, 2), 2))
    with pytest.raises(SearchCeiling):
        obstruction_pipeline(PipelineParams(2, C29, d_max=3))


def test_pipeline_stable_in_d_max():
    a = obstruction_pipeline(PipelineParams(2, C29, d_max=4)).to_dict()
    b = obstruction_pipeline(PipelineParams(2, C29, d_max=10**6)).to_dict()
    assert a == b


@pytest.mark.slow
def test_pipeline_five_halves():
    rep = obstruction_pipeline(PipelineParams(Fraction(5, 2), Fraction(324, 100)))
    assert rep.verdict == EMBEDDING_OBSTRUCTED
    assert rep.d_a == 111


def test_large_d_witness_d9():
    g = large_d_witness(9)
    assert g == e(1, 0, 4) * e(20, 1) * e(0, 1)
    F = 4
    s = math.isqrt(7 * 81 - 54 + 4 * F)
    assert s * s == 7 * 81 - 54 + 4 * F
    assert g.stats.index == 108


@pytest.mark.parametrize("d", range(9, 60))
def test_large_d_witness_properties(d):
    g = large_d_witness(d)
    assert g.x + g.y == 3 * d - 1
    assert g.index == d * d + 3 * d


def test_large_d_witness_too_small():
    with pytest.raises(DomainTooSmall):
        large_d_witness(8)


def test_sharpness_examples():
    a = Fraction(13, 5)
    eps, lam = sharpness_witness(a, 5)
    assert lam == e(1, 0, 6) * e(7, 1)
    eps1, lam1 = sharpness_witness(a, 1)
    assert lam1 == e(1, 0, 2) and eps1 == 2 + a / 2 - 2
    eps12, lam12 = sharpness_witness(a, 12)
    assert lam12 == large_d_witness(12)
    assert critical_a(lam12, 12) < a


def test_sharpness_below_threshold_fails_eventually():
    with pytest.raises(BelowThreshold):
        sharpness_witness(Fraction(5, 2), 20)
    # small d still works below the threshold
    assert sharpness_witness(Fraction(5, 2), 1)[1] == e(1, 0, 2)
    assert sharpness_witness(Fraction(5, 2), 12)[1] == large_d_witness(12)

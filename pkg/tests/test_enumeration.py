import heapq
import itertools
from fractions import Fraction

import pytest

from toric_ech.domains import Ball, Ellipsoid, Polydisk
from toric_ech.enumeration import (
    EnumBounds,
    capacities,
    capacity,
    construct_Y_sequence,
    count_concave_paths,
    enumerate_generators,
    floor_sum,
    is_minimal,
    max_lattice_points,
    minimal_generators,
    y_sequence,
)
from toric_ech.errors import DeltaOutOfRange
from toric_ech.generators import ONE, e, h, lattice_count, parse_generator


def ball_oracle(n):
    """First ``n`` entries of the sorted multiset ``{m + n}``."""
    return heapq.nsmallest(n, (p + q for p in range(n) for q in range(n)))


def test_index_four_in_small_box():
    found = set(enumerate_generators(EnumBounds(2, 2, target_index=4)))
    assert found == {e(1, 1), e(1, 0, 2), e(0, 1, 2)}


def test_empty_box():
    assert list(enumerate_generators(EnumBounds(0, 0))) == [ONE]


def test_h_generator_in_unit_box():
    found = list(enumerate_generators(EnumBounds(1, 1, allow_h=True)))
    assert h(1, 1) in found
    assert h(1, 1).index == 2 * (lattice_count(h(1, 1)).L - 1) - 1 == 3


@pytest.mark.parametrize("n", range(6))
def test_box_counts_match_knapsack(n):
    assert len(list(enumerate_generators(EnumBounds(n, n)))) == count_concave_paths(n, n)


def test_exact_index_matches_filter():
    every = list(enumerate_generators(EnumBounds(4, 3, allow_h=True)))
    for t in range(0, 25):
        exact = set(enumerate_generators(EnumBounds(4, 3, target_index=t, allow_h=True)))
        assert exact == {g for g in every if g.index == t}


def test_enumeration_is_sorted_and_unique():
    gens = list(enumerate_generators(EnumBounds(3, 3, allow_h=True)))
    assert gens == sorted(set(gens), key=str)


def test_floor_sum_brute():
    for n, m, a, b in itertools.product(range(6), range(1, 5), range(5), range(5)):
        assert floor_sum(n, m, a, b) == sum((a * i + b) // m for i in range(n))


def test_max_lattice_points_bounds_real_paths():
    for g in enumerate_generators(EnumBounds(4, 4)):
        if not g.items:
            continue
        a, b, _, _ = g.items[0]
        assert lattice_count(g).L <= max_lattice_points(g.x, g.y, a, b)


def test_ball_capacities_small():
    assert capacities(Ball(1), 30) == [Fraction(v) for v in ball_oracle(31)]


def test_capacity_zero():
    assert capacity(Polydisk(2, 1), 0) == 0
    assert minimal_generators(Ball(1), 0) == [ONE]


def test_polydisk_first_capacity():
    index_two = [g for g in enumerate_generators(EnumBounds(2, 2, target_index=2))]
    assert capacity(Polydisk(2, 1), 1) == min(Polydisk(2, 1).action(g) for g in index_two)


def test_ellipsoid_capacities_are_sorted_combinations():
    a, b = 1, 2
    oracle = heapq.nsmallest(21, (a * p + b * q for p in range(21) for q in range(21)))
    assert capacities(Ellipsoid(a, b), 20) == [Fraction(v) for v in oracle]


@pytest.mark.parametrize("d", range(1, 7))
def test_diagonal_is_minimal_for_balls(d):
    assert is_minimal(Ball(Fraction(29, 10)), e(1, 1, d))


def test_non_diagonal_index_has_several_minimizers():
    assert len(minimal_generators(Ball(1), 3)) >= 2


def test_y_sequence_d3():
    assert y_sequence(3) == [
        parse_generator("e_{1,0} e_{1,1}^2"),
        parse_generator("e_{2,1} e_{1,1}"),
        parse_generator("e_{1,0}^2 e_{1,1}"),
    ]


def test_reflection_of_first_y():
    y1, x1 = construct_Y_sequence(3, 1)
    assert x1 == parse_generator("e_{0,1} e_{1,1}^2")


@pytest.mark.parametrize("d", range(1, 9))
def test_y_sequence_indices(d):
    for i, y in enumerate(y_sequence(d), 1):
        assert y.index == d * (d + 3) - 2 * i


@pytest.mark.parametrize("d, delta", [(3, 0), (3, 4), (0, 1)])
def test_delta_range(d, delta):
    with pytest.raises(DeltaOutOfRange):
        construct_Y_sequence(d, delta)

"""Dominance predicates, nondominated filtering, and the Pareto transform."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from instancegen import int_vector, pointed_weights
from ordcone.cone import ConeHRep, NotPointed, classify_weights, facet_matrix
from ordcone.dominance import (
    DominanceError,
    EmptyPointSet,
    PointSet,
    RankDeficient,
    dominates,
    filter_nondominated,
    pareto_cone,
    pareto_transform,
    weakly_dominates,
)
from ordcone.exactnum import mat, vec

F = Fraction


def _ordinal(k: int) -> ConeHRep:
    return facet_matrix(classify_weights(k, [1] * (k - 1), [0] * (k - 1)))


def test_weak_dominance_examples():
    cone = _ordinal(2)
    assert weakly_dominates(cone, [1, 1], [0, 2])
    assert not weakly_dominates(cone, [2, 0], [0, 1])
    assert weakly_dominates(cone, [1, 1], [1, 1])

    wide = facet_matrix(classify_weights(2, [10], [0]))
    narrow = facet_matrix(classify_weights(2, [8], [0]))
    # trading 9 units of the better category for 1 of the worse needs omega >= 9
    assert weakly_dominates(wide, [9, 1], [0, 2])
    assert not weakly_dominates(narrow, [9, 1], [0, 2])


def test_strict_dominance_requires_distinct_vectors():
    cone = _ordinal(2)
    assert dominates(cone, [1, 1], [0, 2])
    assert not dominates(cone, [1, 1], [1, 1])
    assert not dominates(cone, [0, 2], [1, 1])


def test_strict_dominance_requires_pointed_cone():
    halfspace = ConeHRep(k=2, rows=mat([[1, 1]]), selections=None, matrix_rank=1)
    # the weak relation still works and is symmetric across the ridge
    assert weakly_dominates(halfspace, [0, 1], [1, 0])
    assert weakly_dominates(halfspace, [1, 0], [0, 1])
    with pytest.raises(NotPointed):
        dominates(halfspace, [0, 1], [1, 0])
    with pytest.raises(NotPointed):
        filter_nondominated(halfspace, PointSet.from_vectors([[0, 1]]))


def test_point_set_ids():
    ps = PointSet.from_vectors([[1, 2], [3, 4]])
    assert ps.ids == ("0", "1")
    named = PointSet.from_vectors([[1, 2]], ids=["route-a"])
    assert named.ids == ("route-a",)
    with pytest.raises(DominanceError):
        PointSet(points=(vec([1, 2]),), ids=("a", "b"))


def test_filter_nondominated_example():
    cone = _ordinal(2)
    points = PointSet.from_vectors([[1, 1], [0, 2], [2, 0], [0, 1]])
    kept = filter_nondominated(cone, points)
    assert kept.points == ((2, 0), (0, 1))
    assert kept.ids == ("2", "3")


def test_filter_keeps_duplicate_efficient_vectors():
    cone = _ordinal(2)
    points = PointSet.from_vectors([[1, 1], [1, 1], [0, 2]])
    kept = filter_nondominated(cone, points)
    assert kept.points == ((1, 1), (1, 1))
    assert kept.ids == ("0", "1")


def test_filter_rejects_empty_input():
    with pytest.raises(EmptyPointSet):
        filter_nondominated(_ordinal(2), PointSet(points=(), ids=()))


def test_pareto_cone_is_componentwise():
    cone = pareto_cone(3)
    assert cone.pointed
    assert weakly_dominates(cone, [1, 1, 1], [1, 2, 1])
    assert not weakly_dominates(cone, [1, 2, 1], [1, 1, 2])


def test_pareto_transform_example():
    cone = _ordinal(2)
    ps = PointSet.from_vectors([[1, 1], [0, 2]], ids=["a", "b"])
    out = pareto_transform(cone.rows, ps)
    assert out.points == ((2, 1), (2, 2))
    assert out.ids == ("a", "b")
    with pytest.raises(RankDeficient):
        pareto_transform(mat([[1, 1], [2, 2]]), ps)
    with pytest.raises(EmptyPointSet):
        pareto_transform(cone.rows, PointSet(points=(), ids=()))


def test_transform_commutes_with_filtering():
    rng = random.Random(11)
    for _ in range(25):
        k = rng.randint(2, 4)
        hrep = facet_matrix(pointed_weights(rng, k))
        points = PointSet.from_vectors(
            [int_vector(rng, k, hi=4) for _ in range(rng.randint(1, 12))]
        )
        kept = filter_nondominated(hrep, points)
        image_of_kept = pareto_transform(hrep.rows, kept)
        image = pareto_transform(hrep.rows, points)
        kept_in_image = filter_nondominated(pareto_cone(len(hrep.rows)), image)
        assert sorted(image_of_kept.ids) == sorted(kept_in_image.ids)
        assert sorted(image_of_kept.points) == sorted(kept_in_image.points)


_CONE_POOL = (
    _ordinal(2),
    facet_matrix(classify_weights(3, ["1.5", "0.5"], ["0.5", "0"])),
    facet_matrix(classify_weights(3, [0, 0], [0, 0])),
)


@given(st.data())
def test_dominance_partial_order_laws(data):
    cone = data.draw(st.sampled_from(_CONE_POOL))
    coord = st.integers(min_value=0, max_value=5)
    point = st.tuples(*[coord] * cone.k)
    y1 = vec(data.draw(point))
    y2 = vec(data.draw(point))
    y3 = vec(data.draw(point))
    shift = vec(data.draw(point))

    assert weakly_dominates(cone, y1, y1)
    assert not dominates(cone, y1, y1)
    if weakly_dominates(cone, y1, y2) and weakly_dominates(cone, y2, y3):
        assert weakly_dominates(cone, y1, y3)
    if weakly_dominates(cone, y1, y2) and weakly_dominates(cone, y2, y1):
        # mutual weak dominance collapses to equality in a pointed cone
        assert y1 == y2
    shifted = weakly_dominates(
        cone,
        tuple(a + b for a, b in zip(y1, shift)),
        tuple(a + b for a, b in zip(y2, shift)),
    )
    assert shifted == weakly_dominates(cone, y1, y2)
    assert weakly_dominates(
        cone, tuple(3 * a for a in y1), tuple(3 * a for a in y2)
    ) == weakly_dominates(cone, y1, y2)

"""Certificate-producing membership, double description, path enumeration."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from instancegen import int_vector, load_fixture, pointed_weights
from ordcone.cone import classify_weights, facet_matrix, spanning_rays
from ordcone.exactnum import normalize_ray, vec
from ordcone.oracle import (
    MembershipCertificate,
    NonPointedInput,
    OracleError,
    double_description,
    enumerate_simple_paths,
    ray_membership,
    sampled_dual_check,
)
from ordcone.pathsolve import PathCapExceeded, UnknownNode

F = Fraction


def test_ray_membership_feasible_with_coefficients():
    rays = [vec([-1, 1]), vec([1, 0])]
    cert = ray_membership(rays, vec([1, 1]))
    assert cert.feasible
    assert cert.coefficients == (1, 2)
    assert cert.witness is None
    assert cert.verify(rays, vec([1, 1]))


def test_ray_membership_infeasible_with_witness():
    rays = [vec([-1, 1]), vec([1, 0])]
    target = vec([-1, -1])
    cert = ray_membership(rays, target)
    assert not cert.feasible
    assert cert.coefficients is None
    assert cert.witness is not None
    assert cert.verify(rays, target)


def test_ray_membership_edge_cases():
    assert ray_membership([], vec([0, 0])).feasible
    empty_miss = ray_membership([], vec([1, 0]))
    assert not empty_miss.feasible
    assert empty_miss.verify([], vec([1, 0]))
    # zero target is always the empty combination
    zero = ray_membership([vec([1, 2])], vec([0, 0]))
    assert zero.feasible
    assert zero.verify([vec([1, 2])], vec([0, 0]))


def test_ray_membership_target_outside_span():
    rays = [vec([1, 0]), vec([2, 0])]
    target = vec([0, 1])
    cert = ray_membership(rays, target)
    assert not cert.feasible
    assert cert.verify(rays, target)


def test_ray_membership_accepts_vrep():
    w = classify_weights(3, ["1.2", "1"], ["0.5", "0"])
    rays = spanning_rays(w)
    cert = ray_membership(rays, vec([0, 1, 0]))
    assert cert.feasible
    assert cert.verify(rays.columns, vec([0, 1, 0]))


def test_certificate_rejects_tampering():
    rays = [vec([-1, 1]), vec([1, 0])]
    good = ray_membership(rays, vec([1, 1]))
    bad_count = MembershipCertificate(True, (F(1),), None)
    assert not bad_count.verify(rays, vec([1, 1]))
    negative = MembershipCertificate(True, (F(-1), F(0)), None)
    assert not negative.verify(rays, vec([1, 1]))
    off_target = MembershipCertificate(True, good.coefficients, None)
    assert not off_target.verify(rays, vec([1, 2]))
    fake_witness = MembershipCertificate(False, None, vec([1, 1]))
    assert not fake_witness.verify(rays, vec([1, 1]))
    missing_witness = MembershipCertificate(False, None, None)
    assert not missing_witness.verify(rays, vec([1, 1]))


def test_ray_membership_random_certificates_always_verify():
    rng = random.Random(13)
    feasible_seen = infeasible_seen = 0
    for _ in range(120):
        k = rng.randint(2, 5)
        rays = spanning_rays(pointed_weights(rng, k))
        target = tuple(F(rng.randint(-4, 4)) for _ in range(k))
        cert = ray_membership(rays, target)
        assert cert.verify(rays.columns, target)
        if cert.feasible:
            feasible_seen += 1
        else:
            infeasible_seen += 1
    assert feasible_seen and infeasible_seen


def test_double_description_known_cones():
    ordinal = classify_weights(2, [1], [0])
    assert double_description(spanning_rays(ordinal)) == frozenset(
        {(F(1), F(1)), (F(0), F(1))}
    )
    pareto = classify_weights(3, [0, 0], [0, 0])
    assert double_description(spanning_rays(pareto)) == frozenset(
        {(F(1), F(0), F(0)), (F(0), F(1), F(0)), (F(0), F(0), F(1))}
    )


def test_double_description_matches_facets_random():
    rng = random.Random(19)
    for _ in range(20):
        k = rng.randint(2, 5)
        w = pointed_weights(rng, k)
        primary = frozenset(normalize_ray(row) for row in facet_matrix(w).rows)
        assert double_description(spanning_rays(w)) == primary


def test_double_description_rejects_bad_input():
    degenerate = classify_weights(2, [2], ["0.5"])
    with pytest.raises(NonPointedInput):
        double_description(spanning_rays(degenerate))
    with pytest.raises(OracleError):
        double_description([vec([1, 0]), vec([2, 0])])
    with pytest.raises(OracleError):
        double_description([])


def test_enumerate_simple_paths_fixture():
    graph = load_fixture("loop_detour.json")
    paths = enumerate_simple_paths(graph, "s", "t")
    assert paths == [(0, 1, 2, 3, 4, 5, 6, 7, 8), (9,)]
    assert enumerate_simple_paths(graph, "s", "s") == [()]
    with pytest.raises(PathCapExceeded):
        enumerate_simple_paths(graph, "s", "t", cap=1)
    with pytest.raises(UnknownNode):
        enumerate_simple_paths(graph, "s", "nowhere")


def test_sampled_dual_check_examples():
    ordinal = classify_weights(2, [1], [0])
    assert not sampled_dual_check(ordinal, [0, 2], [1, 1])
    assert sampled_dual_check(ordinal, [0, 1], [1, 1])
    # deterministic in the seed
    w = classify_weights(3, [2, 3], ["0.25", "0.2"])
    first = sampled_dual_check(w, [1, 2, 3], [2, 2, 3], samples=8, seed=42)
    second = sampled_dual_check(w, [1, 2, 3], [2, 2, 3], samples=8, seed=42)
    assert first == second


def test_sampled_dual_check_never_contradicts_facets():
    from ordcone.dominance import weakly_dominates

    rng = random.Random(23)
    for _ in range(60):
        k = rng.randint(2, 4)
        w = pointed_weights(rng, k)
        hrep = facet_matrix(w)
        y1 = int_vector(rng, k, hi=5)
        y2 = int_vector(rng, k, hi=5)
        if weakly_dominates(hrep, y1, y2):
            assert sampled_dual_check(w, y1, y2, samples=10, seed=rng.randint(0, 10**6))

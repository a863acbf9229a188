"""Graph model and the label-setting efficient-path solver."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from instancegen import load_fixture, pointed_weights, random_graph
from ordcone.cone import NotPointed, classify_weights, facet_matrix
from ordcone.dominance import PointSet, filter_nondominated
from ordcone.oracle import enumerate_simple_paths
from ordcone.pathsolve import (
    BadEdge,
    CategoryGraph,
    Edge,
    GraphError,
    PathCapExceeded,
    UnknownNode,
    counting_vector,
    efficient_paths,
    weight_sweep,
)

F = Fraction

ORDINAL2 = classify_weights(2, [1], [0])


def _tie_graph() -> CategoryGraph:
    return CategoryGraph(
        k=2,
        nodes=["s", "a", "b", "t"],
        edges=[
            Edge("s", "a", 1, F(1)),
            Edge("a", "t", 1, F(1)),
            Edge("s", "b", 1, F(1)),
            Edge("b", "t", 1, F(1)),
        ],
    )


def test_graph_validation():
    with pytest.raises(GraphError):
        CategoryGraph(k=0, nodes=["a"], edges=[])
    with pytest.raises(GraphError):
        CategoryGraph(k=1, nodes=["a", "a"], edges=[])
    with pytest.raises(UnknownNode):
        CategoryGraph(k=1, nodes=["a"], edges=[Edge("a", "b", 1, F(1))])
    with pytest.raises(BadEdge):
        CategoryGraph(k=1, nodes=["a", "b"], edges=[Edge("a", "b", 2, F(1))])
    with pytest.raises(BadEdge):
        CategoryGraph(k=1, nodes=["a", "b"], edges=[Edge("a", "b", 1, F(0))])
    with pytest.raises(UnknownNode):
        CategoryGraph(k=1, nodes=["a"], edges=[], coords={"b": (0.0, 0.0)})


def test_from_dict_round_trip_and_rejections():
    doc = {
        "K": 2,
        "nodes": [{"id": "s", "lat": 1.0, "lon": 2.0}, {"id": "t"}],
        "edges": [
            {"from": "s", "to": "t", "category": 1, "length": "1.5"},
            {"from": "s", "to": "t", "category": 2, "length": 2},
        ],
    }
    graph = CategoryGraph.from_dict(doc)
    assert graph.k == 2
    assert graph.nodes == ("s", "t")
    assert graph.coords == {"s": (1.0, 2.0)}
    assert graph.edges[0].length == F(3, 2)
    assert graph.edges[1].length == F(2)

    def rejects(mutate):
        bad = {
            "K": 2,
            "nodes": [{"id": "s"}, {"id": "t"}],
            "edges": [{"from": "s", "to": "t", "category": 1, "length": "1"}],
        }
        mutate(bad)
        with pytest.raises(GraphError):
            CategoryGraph.from_dict(bad)

    rejects(lambda d: d.pop("K"))
    rejects(lambda d: d.update(K="2"))
    rejects(lambda d: d["nodes"].append({"lat": 0}))
    rejects(lambda d: d["nodes"].append({"id": 7}))
    rejects(lambda d: d["edges"][0].pop("from"))
    rejects(lambda d: d["edges"][0].update(length=1.5))
    rejects(lambda d: d["edges"][0].update(length="-1"))
    rejects(lambda d: d["edges"][0].update(category="1"))
    rejects(lambda d: d["edges"][0].update(category=3))


def test_adjacency_is_sorted_and_deterministic():
    graph = CategoryGraph(
        k=2,
        nodes=["s", "b", "a"],
        edges=[
            Edge("s", "b", 1, F(1)),
            Edge("s", "a", 2, F(1)),
            Edge("s", "a", 1, F(2)),
            Edge("s", "a", 1, F(1)),
        ],
    )
    # destination id first, then category, then length, then declaration order
    assert graph.adjacency["s"] == (3, 2, 1, 0)
    assert graph.adjacency["a"] == ()


def test_counting_vector_and_path_nodes():
    graph = load_fixture("loop_detour.json")
    chain = tuple(range(9))
    assert counting_vector(graph, chain) == (9, 0)
    assert counting_vector(graph, (9,)) == (0, 1)
    assert counting_vector(graph, ()) == (0, 0)
    assert graph.path_nodes((9,)) == ("s", "t")
    assert graph.path_nodes(()) == ()
    with pytest.raises(GraphError):
        counting_vector(graph, (0, 9))
    with pytest.raises(GraphError):
        graph.path_nodes((0, 9))


def test_efficient_paths_argument_errors():
    graph = _tie_graph()
    with pytest.raises(GraphError):
        efficient_paths(graph, "s", "t", ORDINAL2, mode="fastest")
    with pytest.raises(UnknownNode):
        efficient_paths(graph, "nope", "t", ORDINAL2)
    with pytest.raises(UnknownNode):
        efficient_paths(graph, "s", "nope", ORDINAL2)
    with pytest.raises(GraphError):
        efficient_paths(graph, "s", "t", classify_weights(3, [1, 1], [0, 0]))
    with pytest.raises(NotPointed):
        efficient_paths(graph, "s", "t", classify_weights(2, [2], ["0.5"]))


def test_efficient_paths_trivial_cases():
    graph = _tie_graph()
    assert efficient_paths(graph, "s", "s", ORDINAL2) == [((), (0, 0))]
    lonely = CategoryGraph(k=2, nodes=["s", "t"], edges=[Edge("t", "s", 1, F(1))])
    assert efficient_paths(lonely, "s", "t", ORDINAL2) == []


def test_efficient_paths_loop_detour():
    graph = load_fixture("loop_detour.json")
    ordinal = efficient_paths(graph, "s", "t", ORDINAL2)
    assert ordinal == [((9,), (0, 1)), (tuple(range(9)), (9, 0))]
    for gamma in ("0.125", [F(1, 9)]):
        w = (
            classify_weights(2, [1], gamma)
            if isinstance(gamma, list)
            else classify_weights(2, [1], [gamma])
        )
        assert efficient_paths(graph, "s", "t", w) == [((9,), (0, 1))]


def test_efficient_paths_twin_corridor():
    graph = load_fixture("twin_corridor.json")
    ordinal = efficient_paths(graph, "s", "t", ORDINAL2)
    assert ordinal == [((6, 7, 8, 9), (0, 4)), ((0, 1, 2, 3, 4, 5), (6, 0))]
    steep = classify_weights(2, [2], [0])
    assert efficient_paths(graph, "s", "t", steep) == [((0, 1, 2, 3, 4, 5), (6, 0))]


def test_single_category_routing_is_shortest_path():
    graph = CategoryGraph(
        k=1,
        nodes=["s", "a", "t"],
        edges=[
            Edge("s", "a", 1, F(2)),
            Edge("a", "t", 1, F(3)),
            Edge("s", "t", 1, F(6)),
        ],
    )
    w = classify_weights(1, [], [])
    assert efficient_paths(graph, "s", "t", w) == [((0, 1), (5,))]


def test_modes_on_tied_vectors():
    graph = _tie_graph()
    one = efficient_paths(graph, "s", "t", ORDINAL2, mode="one_per_vector")
    assert one == [((0, 1), (2, 0))]
    both = efficient_paths(graph, "s", "t", ORDINAL2, mode="all_paths")
    assert both == [((0, 1), (2, 0)), ((2, 3), (2, 0))]
    with pytest.raises(PathCapExceeded):
        efficient_paths(graph, "s", "t", ORDINAL2, mode="all_paths", cap=1)


def test_results_are_deterministic():
    graph = load_fixture("twin_corridor.json")
    first = efficient_paths(graph, "s", "t", ORDINAL2, mode="all_paths")
    second = efficient_paths(graph, "s", "t", ORDINAL2, mode="all_paths")
    assert first == second


def test_solver_matches_enumeration_small_random():
    rng = random.Random(17)
    checked = 0
    while checked < 12:
        k = rng.randint(2, 3)
        graph, source, target = random_graph(rng, k, max_nodes=8, max_edges=14)
        w = pointed_weights(rng, k)
        try:
            paths = enumerate_simple_paths(graph, source, target, cap=3000)
        except PathCapExceeded:
            continue
        solved = efficient_paths(graph, source, target, w, mode="all_paths")
        one = efficient_paths(graph, source, target, w, mode="one_per_vector")
        if not paths:
            assert solved == [] and one == []
            continue
        outcomes = [counting_vector(graph, p) for p in paths]
        kept = filter_nondominated(facet_matrix(w), PointSet.from_vectors(outcomes))
        efficient_vectors = set(kept.points)
        expected_paths = {
            p for p, o in zip(paths, outcomes) if o in efficient_vectors
        }
        assert {p for p, _ in solved} == expected_paths
        assert {v for _, v in solved} == efficient_vectors
        assert {v for _, v in one} == efficient_vectors
        assert len(one) == len(efficient_vectors)
        for path, counts in solved:
            assert counts == counting_vector(graph, path)
            nodes = graph.path_nodes(path)
            assert len(set(nodes)) == len(nodes)
        checked += 1


def test_weight_sweep_records_errors_per_row():
    graph = _tie_graph()
    grid = [
        ORDINAL2,
        classify_weights(2, [2], ["0.5"]),
        classify_weights(2, [2], [0]),
    ]
    rows = weight_sweep(graph, "s", "t", grid)
    assert rows[0].vector_count == 1
    assert rows[0].path_count == 1
    assert rows[0].error is None
    assert rows[1].vector_count is None
    assert rows[1].error is not None
    assert "pointed" in rows[1].error
    assert rows[2].vector_count == 1
    assert all(r.runtime_ms >= 0 for r in rows)


def test_weight_sweep_records_cap_overflow():
    graph = _tie_graph()
    rows = weight_sweep(graph, "s", "t", [ORDINAL2], mode="all_paths", cap=1)
    assert rows[0].error is not None
    assert "cap" in rows[0].error

"""Efficient paths in graphs whose edges carry a quality category and a length.

Each edge contributes its length to one of K ordered categories, so a path's
outcome is a K-vector of per-category totals.  Paths are compared with a
weighted ordinal ordering cone: the facet matrix of a pointed cone turns cone
dominance into componentwise comparison of transformed costs, and every
transformed edge cost is nonnegative.  That makes a label-setting search
correct: cycles can only add nonnegative transformed cost, so only simple
paths matter, and a label whose transformed cost is strictly dominated at a
node can never complete into an efficient path.

Two result modes exist.  `one_per_vector` returns one representative path
per efficient outcome vector; `all_paths` returns every efficient path,
bounded by an explicit cap because ties can multiply paths combinatorially.
"""

from __future__ import annotations

import heapq
import itertools
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from ordcone.cone import NotPointed, Weights, facet_matrix
from ordcone.exactnum import Vec, rational, transpose, vec_add, zeros

Path = tuple[int, ...]

MODES = ("one_per_vector", "all_paths")


class GraphError(ValueError):
    """Base class for graph construction and query errors."""


class UnknownNode(GraphError):
    """A node id was referenced but never declared."""

    def __init__(self, node_id: str) -> None:
        self.node_id = node_id
        super().__init__(f"unknown node id: {node_id!r}")


class BadEdge(GraphError):
    """An edge has an invalid category or a nonpositive length."""


class PathCapExceeded(RuntimeError):
    """More paths were found than the configured cap allows."""


@dataclass(frozen=True)
class Edge:
    src: str
    dst: str
    category: int
    length: Fraction


class CategoryGraph:
    """Directed graph with category-labeled, positively weighted edges.

    Nodes are referenced by string ids; coordinates are optional display
    metadata (latitude, longitude) and never enter any computation.
    Adjacency lists are sorted by destination id so every traversal in this
    package is deterministic.
    """

    def __init__(
        self,
        k: int,
        nodes: Sequence[str],
        edges: Sequence[Edge],
        coords: Mapping[str, tuple[float, float]] | None = None,
    ) -> None:
        if k < 1:
            raise GraphError(f"category count must be at least 1, got {k}")
        if len(set(nodes)) != len(nodes):
            raise GraphError("node ids must be unique")
        self.k = k
        self.nodes: tuple[str, ...] = tuple(nodes)
        self.coords: dict[str, tuple[float, float]] = dict(coords or {})
        known = set(self.nodes)
        for name in self.coords:
            if name not in known:
                raise UnknownNode(name)
        for edge in edges:
            if edge.src not in known:
                raise UnknownNode(edge.src)
            if edge.dst not in known:
                raise UnknownNode(edge.dst)
            if not 1 <= edge.category <= k:
                raise BadEdge(
                    f"edge {edge.src}->{edge.dst}: category {edge.category} outside 1..{k}"
                )
            if edge.length <= 0:
                raise BadEdge(
                    f"edge {edge.src}->{edge.dst}: length {edge.length} is not positive"
                )
        self.edges: tuple[Edge, ...] = tuple(edges)
        adjacency: dict[str, list[int]] = {name: [] for name in self.nodes}
        order = sorted(
            range(len(self.edges)),
            key=lambda i: (
                self.edges[i].dst,
                self.edges[i].category,
                self.edges[i].length,
                i,
            ),
        )
        for index in order:
            adjacency[self.edges[index].src].append(index)
        self.adjacency: dict[str, tuple[int, ...]] = {
            name: tuple(indices) for name, indices in adjacency.items()
        }

    @classmethod
    def from_dict(cls, data: Mapping) -> "CategoryGraph":
        """Build a graph from the canonical JSON layout.

        Expected shape: {"K": int, "nodes": [{"id": str, "lat"?, "lon"?}],
        "edges": [{"from": str, "to": str, "category": int,
        "length": decimal string}]}.  Lengths must be decimal strings or
        integers; floats are rejected to keep the arithmetic exact.
        """
        try:
            k = data["K"]
            node_entries = data["nodes"]
            edge_entries = data["edges"]
        except (KeyError, TypeError) as exc:
            raise GraphError(f"graph document is missing required key: {exc}") from exc
        if not isinstance(k, int):
            raise GraphError(f'"K" must be an integer, got {k!r}')
        nodes: list[str] = []
        coords: dict[str, tuple[float, float]] = {}
        for entry in node_entries:
            try:
                node_id = entry["id"]
            except (KeyError, TypeError) as exc:
                raise GraphError(f"node entry {entry!r} lacks an id") from exc
            if not isinstance(node_id, str):
                raise GraphError(f"node id must be a string, got {node_id!r}")
            nodes.append(node_id)
            if "lat" in entry and "lon" in entry:
                coords[node_id] = (float(entry["lat"]), float(entry["lon"]))
        edges: list[Edge] = []
        for entry in edge_entries:
            try:
                src = entry["from"]
                dst = entry["to"]
                category = entry["category"]
                raw_length = entry["length"]
            except (KeyError, TypeError) as exc:
                raise GraphError(f"edge entry {entry!r} lacks a field: {exc}") from exc
            if isinstance(raw_length, float):
                raise GraphError(
                    f"edge {src}->{dst}: length must be a decimal string, not a float"
                )
            if not isinstance(category, int):
                raise GraphError(f"edge {src}->{dst}: category must be an integer")
            try:
                length = rational(raw_length)
            except ValueError as exc:
                raise GraphError(f"edge {src}->{dst}: bad length: {exc}") from exc
            edges.append(Edge(src=src, dst=dst, category=category, length=length))
        return cls(k=k, nodes=nodes, edges=edges, coords=coords)

    def path_nodes(self, path: Path) -> tuple[str, ...]:
        """Node sequence visited by an edge-index path (requires nonempty path)."""
        if not path:
            return ()
        sequence = [self.edges[path[0]].src]
        for index in path:
            edge = self.edges[index]
            if edge.src != sequence[-1]:
                raise GraphError("edge indices do not form a connected walk")
            sequence.append(edge.dst)
        return tuple(sequence)


def counting_vector(graph: CategoryGraph, path: Path) -> Vec:
    """Per-category totals of edge lengths along a connected edge sequence."""
    totals = [Fraction(0)] * graph.k
    previous_end: str | None = None
    for index in path:
        edge = graph.edges[index]
        if previous_end is not None and edge.src != previous_end:
            raise GraphError("edge indices do not form a connected walk")
        previous_end = edge.dst
        totals[edge.category - 1] += edge.length
    return tuple(totals)


class _Label:
    __slots__ = ("node", "tcost", "raw", "visited", "pred", "edge")

    def __init__(self, node, tcost, raw, visited, pred, edge) -> None:
        self.node = node
        self.tcost = tcost
        self.raw = raw
        self.visited = visited
        self.pred = pred
        self.edge = edge


def _strictly_dominated(tcost: Vec, permanent: list[Vec], merge_equal: bool) -> bool:
    for other in permanent:
        if all(a <= b for a, b in zip(other, tcost)):
            if other != tcost or merge_equal:
                return True
    return False


def _path_of(label: _Label) -> Path:
    edges: list[int] = []
    while label.pred is not None:
        edges.append(label.edge)
        label = label.pred
    edges.reverse()
    return tuple(edges)


def efficient_paths(
    graph: CategoryGraph,
    source: str,
    target: str,
    weights: Weights,
    mode: str = "one_per_vector",
    cap: int | None = None,
) -> list[tuple[Path, Vec]]:
    """All efficient simple source-target paths under the weighted cone order.

    Returns (edge-index path, counting vector) pairs, ordered
    lexicographically by transformed cost and, among ties, by discovery
    order (which follows node-id-sorted adjacency).  An unreachable target
    yields an empty list; source == target yields the empty path.  The
    weights must be pointed; degenerate weights have no strict dominance to
    prune with (merge them first, see cone.merge_degenerate).
    """
    if mode not in MODES:
        raise GraphError(f"unknown mode {mode!r}; expected one of {MODES}")
    if source not in graph.adjacency:
        raise UnknownNode(source)
    if target not in graph.adjacency:
        raise UnknownNode(target)
    if weights.k != graph.k:
        raise GraphError(
            f"weights are for {weights.k} categories, graph has {graph.k}"
        )
    if not weights.pointed:
        raise NotPointed(
            f"routing requires a pointed cone; degenerate pairs {weights.degenerate}"
        )
    if source == target:
        return [((), zeros(graph.k))]

    hrep = facet_matrix(weights)
    columns = transpose(hrep.rows)
    cost_of_edge: list[Vec] = [
        tuple(edge.length * c for c in columns[edge.category - 1])
        for edge in graph.edges
    ]
    merge_equal = mode == "one_per_vector"
    rows = len(hrep.rows)

    counter = itertools.count()
    start = _Label(
        node=source,
        tcost=zeros(rows),
        raw=zeros(graph.k),
        visited=frozenset((source,)),
        pred=None,
        edge=None,
    )
    heap: list[tuple[Vec, str, int, _Label]] = [
        (start.tcost, source, next(counter), start)
    ]
    permanent: dict[str, list[Vec]] = {name: [] for name in graph.nodes}
    finished: list[_Label] = []
    while heap:
        _, _, _, label = heapq.heappop(heap)
        if _strictly_dominated(label.tcost, permanent[label.node], merge_equal):
            continue
        permanent[label.node].append(label.tcost)
        if label.node == target:
            finished.append(label)
            if cap is not None and len(finished) > cap:
                raise PathCapExceeded(
                    f"more than {cap} efficient paths; raise the cap to continue"
                )
            # A simple path never leaves and re-enters its endpoint, so
            # labels at the target need no extension.
            continue
        for edge_index in graph.adjacency[label.node]:
            edge = graph.edges[edge_index]
            if edge.dst in label.visited:
                continue
            tcost = vec_add(label.tcost, cost_of_edge[edge_index])
            if _strictly_dominated(tcost, permanent[edge.dst], merge_equal):
                continue
            raw = list(label.raw)
            raw[edge.category - 1] += edge.length
            heapq.heappush(
                heap,
                (
                    tcost,
                    edge.dst,
                    next(counter),
                    _Label(
                        node=edge.dst,
                        tcost=tcost,
                        raw=tuple(raw),
                        visited=label.visited | {edge.dst},
                        pred=label,
                        edge=edge_index,
                    ),
                ),
            )
    return [(_path_of(label), label.raw) for label in finished]


@dataclass(frozen=True)
class SweepRow:
    """Result of one grid cell in a weight sweep."""

    weights: Weights
    vector_count: int | None
    path_count: int | None
    error: str | None
    runtime_ms: float


def weight_sweep(
    graph: CategoryGraph,
    source: str,
    target: str,
    grid: Iterable[Weights],
    mode: str = "one_per_vector",
    cap: int | None = None,
) -> list[SweepRow]:
    """Run efficient_paths for every weight set in the grid.

    Failures (degenerate weights, cap overflow) are recorded per row so one
    bad cell never aborts the sweep.
    """
    rows: list[SweepRow] = []
    for weights in grid:
        started = time.perf_counter()
        try:
            results = efficient_paths(graph, source, target, weights, mode, cap)
        except (NotPointed, PathCapExceeded, GraphError) as exc:
            elapsed = (time.perf_counter() - started) * 1000.0
            rows.append(
                SweepRow(
                    weights=weights,
                    vector_count=None,
                    path_count=None,
                    error=str(exc),
                    runtime_ms=elapsed,
                )
            )
            continue
        elapsed = (time.perf_counter() - started) * 1000.0
        distinct = len({counts for _, counts in results})
        rows.append(
            SweepRow(
                weights=weights,
                vector_count=distinct,
                path_count=len(results),
                error=None,
                runtime_ms=elapsed,
            )
        )
    return rows

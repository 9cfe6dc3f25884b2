from __future__ import annotations

import math
from collections.abc import Iterable
from itertools import combinations
from typing import NamedTuple

import networkx as nx

from ._constructions import standard_simplex
from ._simplicial import SimplexRef, SimplicialMap, SimplicialSet
from ._subdivision import subdivided_boundary, subdivided_simplex, subdivision_carriers

Distance = float  # an integer number of edges, or math.inf when disconnected


class DistanceViolation(NamedTuple):
    """A pair of vertices whose distances disagree with what a check expected."""

    x: int
    y: int
    source_distance: Distance
    target_distance: Distance


def skeleton_graph(space: SimplicialSet) -> nx.MultiGraph:
    """
    Return the 1-skeleton as an undirected multigraph: one node per vertex and one
    edge per non-degenerate 1-simplex (loops included), keyed by the simplex id.
    """
    cached = space._memo.get("skeleton")
    if cached is not None:
        return cached

    graph = nx.MultiGraph()
    for vertex in range(space.size(0)):
        graph.add_node(vertex, label=space.label(SimplexRef(0, vertex)))

    for ref in space.simplices(1):
        tail, head = space.vertices(ref)
        graph.add_edge(tail, head, key=ref.id)

    space._memo["skeleton"] = graph
    return graph


def _vertex_id(vertex: int | SimplexRef) -> int:
    if isinstance(vertex, SimplexRef):
        if vertex.dim != 0:
            raise ValueError(f"{vertex} is not a vertex")

        return vertex.id

    return vertex


def edge_distance(
    space: SimplicialSet, x: int | SimplexRef, y: int | SimplexRef
) -> Distance:
    """
    Return the edge-path distance between two vertices of the 1-skeleton (edge
    orientation ignored), or ``math.inf`` if they lie in different components.
    """
    graph = skeleton_graph(space)
    try:
        return nx.shortest_path_length(graph, _vertex_id(x), _vertex_id(y))
    except nx.NetworkXNoPath:
        return math.inf


def all_distances(space: SimplicialSet) -> dict[int, dict[int, int]]:
    """Return the edge-path distances between all pairs of connected vertices."""
    return dict(nx.all_pairs_shortest_path_length(skeleton_graph(space)))


def _lookup(distances: dict[int, dict[int, int]], x: int, y: int) -> Distance:
    return distances.get(x, {}).get(y, math.inf)


def distance_nonincreasing_check(
    f: SimplicialMap, pairs: Iterable[tuple[int, int]] | None = None
) -> list[DistanceViolation]:
    """
    Check that ``d(f(x), f(y)) <= d(x, y)`` for the given vertex pairs (all pairs by
    default).

    :return: the pairs whose distance grew

    """
    source = all_distances(f.source)
    target = all_distances(f.target)
    if pairs is None:
        pairs = combinations(range(f.source.size(0)), 2)

    report = []
    for x, y in pairs:
        before = _lookup(source, x, y)
        after = _lookup(target, f.vertex_image(x), f.vertex_image(y))
        if after > before:
            report.append(DistanceViolation(x, y, before, after))

    return report


def lemma2d_check(n: int) -> Distance:
    """
    Return the least distance, in ``Sd^n Δ_2`` with the vertex ``A`` deleted, between a
    vertex on the side ``AB`` and a vertex on the side ``AC``. It is always at least
    ``2^n``.
    """
    space = subdivided_simplex(2, n)
    carriers = subdivision_carriers(standard_simplex(2), n)
    apex = carriers.index(frozenset((0,)))
    graph = nx.Graph(skeleton_graph(space))
    graph.remove_node(apex)
    sources = [
        v for v, carrier in enumerate(carriers) if v != apex and carrier <= {0, 1}
    ]
    targets = [
        v for v, carrier in enumerate(carriers) if v != apex and carrier <= {0, 2}
    ]
    lengths = nx.multi_source_dijkstra_path_length(graph, sources)
    reachable = [lengths[v] for v in targets if v in lengths]
    return min(reachable) if reachable else math.inf


def lemma3d_check(k: int, n: int) -> list[DistanceViolation]:
    """
    Compare distances in ``Sd^n ∂Δ_k`` with distances in ``Sd^n Δ_k``: whenever two
    boundary vertices are closer than ``2^n`` inside the simplex, both distances must
    agree.

    :return: the disagreeing pairs (``source_distance`` is measured in the boundary)

    """
    source, target, inclusion = subdivided_boundary(k, n)
    inner = all_distances(source)
    outer = all_distances(target)
    threshold = 2**n
    report = []
    for x, y in combinations(range(source.size(0)), 2):
        across = _lookup(outer, inclusion.vertex_image(x), inclusion.vertex_image(y))
        if across < threshold:
            along = _lookup(inner, x, y)
            if along != across:
                report.append(DistanceViolation(x, y, along, across))

    return report

from __future__ import annotations

import colorsys
import math
import xml.etree.ElementTree as ET
from collections import defaultdict
from itertools import combinations
from dataclasses import dataclass
from typing import Any, NamedTuple

import networkx as nx

from ._constructions import standard_simplex
from ._exceptions import BudgetExceededError
from ._metric import Distance, skeleton_graph
from ._simplicial import SimplexRef, SimplicialSet
from ._subdivision import face_poset, sd_tower, subdivision_carriers

#: Deepest subdivision for which rays are built
MAX_RAY_DEPTH = 6

FAN = "fan"
#: a triangle whose marked edge borders the next ray and whose marked vertex touches
#: the previous one
TOWARD_NEXT = "a"
#: the mirror image: marked edge borders the previous ray, marked vertex the next one
TOWARD_PREVIOUS = "b"


class RayTriangle(NamedTuple):
    """
    A triangle of ``Sd^n Δ_2`` together with its ray label.

    ``roles`` holds three vertex ids whose meaning depends on ``kind``:

    * ``"fan"``: ``(A, P, Q)`` where ``A`` is the apex of the whole triangle, ``P`` lies
      toward the side ``AB`` and ``Q`` toward the side ``AC``
    * ``"a"`` / ``"b"``: ``(L, R, V)`` where ``(L, R)`` is the marked edge and ``V`` the
      marked vertex
    """

    simplex: SimplexRef
    vertices: tuple[int, ...]
    ray: int
    kind: str
    roles: tuple[int, int, int]
    parent: int | None


class RayViolation(NamedTuple):
    clause: str
    where: tuple[int, ...]
    detail: str


@dataclass(eq=False)
class LabeledTriangulation:
    """
    ``Sd^n Δ_2`` with every triangle assigned to one of ``2^n`` rays emanating from the
    vertex ``A``.

    :ivar depth: the subdivision depth ``n``
    :ivar space: the simplicial set ``Sd^n Δ_2``
    :ivar carriers: original vertices each vertex lies over
    :ivar positions: planar coordinates of the vertices (presentation only)
    :ivar triangles: one entry per 2-simplex, in id order
    """

    depth: int
    space: SimplicialSet
    carriers: tuple[frozenset[int], ...]
    positions: tuple[tuple[float, float], ...]
    triangles: tuple[RayTriangle, ...]

    @property
    def ray_count(self) -> int:
        return 2**self.depth

    @property
    def apex(self) -> int:
        return self.carriers.index(frozenset((0,)))

    def rays(self) -> dict[int, list[RayTriangle]]:
        grouped: dict[int, list[RayTriangle]] = defaultdict(list)
        for triangle in self.triangles:
            grouped[triangle.ray].append(triangle)

        return dict(sorted(grouped.items()))

    def relabeled(self, index: int, ray: int) -> LabeledTriangulation:
        """Return a copy where triangle ``index`` carries a different ray label."""
        triangles = list(self.triangles)
        triangles[index] = triangles[index]._replace(ray=ray)
        return LabeledTriangulation(
            self.depth, self.space, self.carriers, self.positions, tuple(triangles)
        )

    def as_dict(self) -> dict[str, Any]:
        return {
            "depth": self.depth,
            "rays": self.ray_count,
            "triangles": [
                {
                    "id": triangle.simplex.id,
                    "chain": list(triangle.vertices),
                    "ray": triangle.ray,
                    "kind": triangle.kind,
                    "roles": list(triangle.roles),
                }
                for triangle in self.triangles
            ],
        }


def _children(
    ray: int, kind: str, roles: tuple[int, int, int], element: Any
) -> list[tuple[tuple[int, int, int], int, str, tuple[int, int, int]]]:
    """
    Split one labelled triangle into its six barycentric pieces.

    ``element`` maps a vertex id or a frozenset of vertex ids to the corresponding
    vertex of the subdivision. Each piece is returned as ``(chain, ray, kind, roles)``.
    """
    if kind == FAN:
        a, p, q = roles
        c = element(frozenset(roles))
        ap, aq, pq = (element(frozenset(pair)) for pair in ((a, p), (a, q), (p, q)))
        a, p, q = element(a), element(p), element(q)
        low, high = 2 * ray - 1, 2 * ray
        return [
            ((a, ap, c), low, FAN, (a, ap, c)),
            ((a, aq, c), high, FAN, (a, c, aq)),
            ((p, ap, c), low, TOWARD_PREVIOUS, (p, ap, c)),
            ((p, pq, c), low, TOWARD_NEXT, (pq, c, p)),
            ((q, pq, c), high, TOWARD_PREVIOUS, (pq, c, q)),
            ((q, aq, c), high, TOWARD_NEXT, (q, aq, c)),
        ]

    left, right, tip = roles
    flipped = TOWARD_PREVIOUS if kind == TOWARD_NEXT else TOWARD_NEXT
    c = element(frozenset(roles))
    tl = element(frozenset((tip, left)))
    tr = element(frozenset((tip, right)))
    lr = element(frozenset((left, right)))
    left, right, tip = element(left), element(right), element(tip)
    if kind == TOWARD_NEXT:
        tip_ray, rest_ray = 2 * ray - 1, 2 * ray
    else:
        tip_ray, rest_ray = 2 * ray, 2 * ray - 1

    return [
        ((tip, tl, c), tip_ray, kind, (tl, c, tip)),
        ((tip, tr, c), tip_ray, kind, (tr, c, tip)),
        ((left, lr, c), rest_ray, kind, (left, lr, c)),
        ((right, lr, c), rest_ray, kind, (right, lr, c)),
        ((left, tl, c), rest_ray, flipped, (tl, c, left)),
        ((right, tr, c), rest_ray, flipped, (tr, c, right)),
    ]


def build_rays(n: int) -> LabeledTriangulation:
    """
    Label every triangle of ``Sd^n Δ_2`` with one of the rays ``1, ..., 2^n``.

    The whole triangle is a single fan triangle of ray 1. Each subdivision step splits a
    triangle of ray ``i`` into pieces of rays ``2i - 1`` and ``2i``, keeping the marked
    edges and vertices on the boundaries between consecutive rays.

    :raises ~sdex.BudgetExceededError: if ``n`` exceeds :data:`MAX_RAY_DEPTH`

    """
    if n < 0:
        raise ValueError("the subdivision depth must be non-negative")

    if n > MAX_RAY_DEPTH:
        raise BudgetExceededError("ray depth", n, MAX_RAY_DEPTH)

    simplex = standard_simplex(2)
    levels = sd_tower(simplex, n)
    height = math.sqrt(3) / 2
    positions: list[tuple[float, float]] = [(0.0, 0.0), (1.0, 0.0), (0.5, height)]
    labels: dict[SimplexRef, tuple[int, str, tuple[int, int, int], int | None]] = {
        SimplexRef(2, 0): (1, FAN, (0, 1, 2), None)
    }
    for level, finer in zip(levels, levels[1:]):
        poset = face_poset(level)
        by_vertices = {frozenset(level.vertices(ref)): ref for ref in level.simplices()}
        triangles = {finer.vertices(ref): ref for ref in finer.simplices(2)}

        def element(key: int | frozenset[int]) -> int:
            if isinstance(key, int):
                return poset.index[SimplexRef(0, key)]

            return poset.index[by_vertices[key]]

        finer_labels = {}
        for ref, (ray, kind, roles, _) in labels.items():
            for chain, child_ray, child_kind, child_roles in _children(
                ray, kind, roles, element
            ):
                finer_labels[triangles[chain]] = (
                    child_ray,
                    child_kind,
                    child_roles,
                    ref.id,
                )

        positions = [
            _centroid([positions[v] for v in level.vertices(ref)])
            for ref in poset.elements
        ]
        labels = finer_labels

    space = levels[-1]
    result = []
    for ref in space.simplices(2):
        ray, kind, roles, parent = labels[ref]
        result.append(RayTriangle(ref, space.vertices(ref), ray, kind, roles, parent))

    return LabeledTriangulation(
        n, space, subdivision_carriers(simplex, n), tuple(positions), tuple(result)
    )


def _centroid(points: list[tuple[float, float]]) -> tuple[float, float]:
    return (
        sum(point[0] for point in points) / len(points),
        sum(point[1] for point in points) / len(points),
    )


def verify_rays(labeled: LabeledTriangulation) -> list[RayViolation]:
    """
    Check that the ray labels form a partition with the expected boundary structure.

    :return: every violated condition, naming the clause and the offending simplex

    """
    space = labeled.space
    count = labeled.ray_count
    carriers = labeled.carriers
    apex = labeled.apex
    report: list[RayViolation] = []

    def on_ab(vertices: tuple[int, ...]) -> bool:
        return all(carriers[v] <= {0, 1} for v in vertices)

    def on_ac(vertices: tuple[int, ...]) -> bool:
        return all(carriers[v] <= {0, 2} for v in vertices)

    if len(labeled.triangles) != space.size(2) or {
        triangle.simplex for triangle in labeled.triangles
    } != set(space.simplices(2)):
        report.append(
            RayViolation("partition", (), "labels do not cover each triangle once")
        )
        return report

    edge_rays: dict[frozenset[int], set[int]] = defaultdict(set)
    vertex_rays: dict[int, set[int]] = defaultdict(set)
    for ref in space.simplices(1):
        vertices = space.vertices(ref)
        if on_ab(vertices):
            edge_rays[frozenset(vertices)].add(0)
        if on_ac(vertices):
            edge_rays[frozenset(vertices)].add(count + 1)

    for vertex in range(space.size(0)):
        if on_ab((vertex,)):
            vertex_rays[vertex].add(0)
        if on_ac((vertex,)):
            vertex_rays[vertex].add(count + 1)

    for triangle in labeled.triangles:
        if not 1 <= triangle.ray <= count:
            report.append(
                RayViolation(
                    "label-range", triangle.vertices, f"ray {triangle.ray} out of range"
                )
            )

        for vertex in triangle.vertices:
            vertex_rays[vertex].add(triangle.ray)

        a, b, c = triangle.vertices
        for pair in ((a, b), (a, c), (b, c)):
            edge_rays[frozenset(pair)].add(triangle.ray)

    unused = set(range(1, count + 1)) - {t.ray for t in labeled.triangles}
    if unused:
        detail = f"rays {sorted(unused)} are empty"
        report.append(RayViolation("labels-unused", (), detail))

    def expect_edge(
        triangle: RayTriangle, clause: str, pair: tuple[int, int], wanted: set[int]
    ) -> None:
        found = edge_rays[frozenset(pair)]
        if found != wanted:
            report.append(
                RayViolation(
                    clause,
                    triangle.vertices,
                    f"edge {pair} borders rays {sorted(found)}, "
                    f"expected {sorted(wanted)}",
                )
            )

    for triangle in labeled.triangles:
        i = triangle.ray
        vertices = triangle.vertices
        edges = list(combinations(vertices, 2))
        if any(on_ab(edge) for edge in edges) and i != 1:
            report.append(RayViolation("side-ab", vertices, "touches AB outside ray 1"))

        if any(on_ac(edge) for edge in edges) and i != count:
            report.append(
                RayViolation("side-ac", vertices, f"touches AC outside ray {count}")
            )

        if apex in vertices and triangle.kind != FAN:
            report.append(RayViolation("fan", vertices, "contains A but is not a fan"))

        if triangle.kind == FAN:
            a, p, q = triangle.roles
            expect_edge(triangle, "fan-previous", (a, p), {i - 1, i})
            expect_edge(triangle, "fan-next", (a, q), {i, i + 1})
            expect_edge(triangle, "fan-inner", (p, q), {i})
            continue

        left, right, tip = triangle.roles
        if triangle.kind == TOWARD_NEXT:
            edge_wanted, vertex_wanted = {i, i + 1}, {i - 1, i}
        else:
            edge_wanted, vertex_wanted = {i - 1, i}, {i, i + 1}

        expect_edge(triangle, f"type-{triangle.kind}-edge", (left, right), edge_wanted)
        if not vertex_wanted <= vertex_rays[tip]:
            report.append(
                RayViolation(
                    f"type-{triangle.kind}-vertex",
                    vertices,
                    f"vertex {tip} touches rays {sorted(vertex_rays[tip])}, "
                    f"expected {sorted(vertex_wanted)}",
                )
            )

        expect_edge(triangle, f"type-{triangle.kind}-side", (tip, left), {i})
        expect_edge(triangle, f"type-{triangle.kind}-side", (tip, right), {i})

    for ref in space.simplices(1):
        x, y = space.vertices(ref)
        found = edge_rays[frozenset((x, y))]
        if len(found) == 2:
            low, high = sorted(found)
            if high != low + 1:
                report.append(
                    RayViolation(
                        "boundary-edge",
                        (x, y),
                        f"separates non-adjacent rays {sorted(found)}",
                    )
                )
        elif len(found) == 1 and apex not in (x, y):
            (i,) = found
            ends = (vertex_rays[x], vertex_rays[y])
            if not (
                (i - 1 in ends[0] and i + 1 in ends[1])
                or (i + 1 in ends[0] and i - 1 in ends[1])
            ):
                report.append(
                    RayViolation(
                        "spanning-edge", (x, y), f"inside ray {i} but does not span it"
                    )
                )
        elif len(found) > 2:
            report.append(
                RayViolation("edge-rays", (x, y), f"borders rays {sorted(found)}")
            )

    return report


class RayCrossings(NamedTuple):
    """
    Outcome of :func:`ray_crossings`.

    :ivar bound: least length of an ``A``-avoiding path from ``AB`` to ``AC`` that the
        labels force
    :ivar shortest: length of the shortest such path in the skeleton
    :ivar path: the vertices of one shortest path, starting on ``AB``
    :ivar violations: edges that step across more than one ray, and rays the shortest
        path misses
    """

    bound: int
    shortest: Distance
    path: tuple[int, ...]
    violations: list[RayViolation]


def ray_crossings(labeled: LabeledTriangulation) -> RayCrossings:
    """
    Check that every edge path from ``AB`` to ``AC`` avoiding ``A`` crosses every ray.

    Each vertex other than ``A`` gets the level ``lowest + highest`` of the rays it
    touches, with the side ``AB`` counting as ray ``0`` and the side ``AC`` as ray
    ``2^n + 1``. Vertices of ``AB`` sit at level ``1`` and vertices of ``AC`` at level
    ``2^(n+1) + 1``. If no edge changes the level by more than two, every such path
    passes through all rays and has at least ``2^n`` edges.

    """
    space = labeled.space
    count = labeled.ray_count
    apex = labeled.apex
    touched: dict[int, set[int]] = defaultdict(set)
    for vertex, carrier in enumerate(labeled.carriers):
        if carrier <= {0, 1}:
            touched[vertex].add(0)
        if carrier <= {0, 2}:
            touched[vertex].add(count + 1)

    for triangle in labeled.triangles:
        for vertex in triangle.vertices:
            touched[vertex].add(triangle.ray)

    graph = nx.Graph(skeleton_graph(space))
    graph.remove_node(apex)
    for vertex in graph:
        rays = touched[vertex]
        graph.nodes[vertex]["level"] = min(rays) + max(rays)

    report: list[RayViolation] = []
    for x, y in sorted(graph.edges):
        step = abs(graph.nodes[x]["level"] - graph.nodes[y]["level"])
        if step > 2:
            report.append(
                RayViolation("crossing-step", (x, y), f"changes level by {step}")
            )

    sources = sorted(v for v in graph if 0 in touched[v])
    targets = sorted(v for v in graph if count + 1 in touched[v])
    start = max(graph.nodes[v]["level"] for v in sources)
    finish = min(graph.nodes[v]["level"] for v in targets)
    bound = math.ceil((finish - start) / 2)
    lengths, paths = nx.multi_source_dijkstra(graph, sources)
    reachable = [v for v in targets if v in lengths]
    if not reachable:
        return RayCrossings(bound, math.inf, (), report)

    end = min(reachable, key=lambda v: (lengths[v], v))
    path = tuple(paths[end])
    missed = set(range(1, count + 1)) - set().union(*(touched[v] for v in path))
    if missed:
        report.append(
            RayViolation("crossing-rays", path, f"misses rays {sorted(missed)}")
        )

    return RayCrossings(bound, lengths[end], path, report)


def _color(ray: int, count: int) -> str:
    hue = 0.85 * (ray - 1) / max(count - 1, 1)
    red, green, blue = colorsys.hls_to_rgb(hue, 0.6, 0.55)
    return f"#{round(red * 255):02x}{round(green * 255):02x}{round(blue * 255):02x}"


def render_svg(labeled: LabeledTriangulation, size: int = 600) -> str:
    """
    Render the labelled triangulation as SVG: one polygon per triangle, coloured by ray,
    with the corners ``A``, ``B``, ``C`` annotated. The output is deterministic.
    """
    margin = 30
    height = math.sqrt(3) / 2
    width = size + 2 * margin
    total_height = round(size * height) + 2 * margin

    def point(vertex: int) -> str:
        x, y = labeled.positions[vertex]
        return f"{margin + x * size:.3f},{margin + (height - y) * size:.3f}"

    root = ET.Element(
        "svg",
        {
            "xmlns": "http://www.w3.org/2000/svg",
            "width": str(width),
            "height": str(total_height),
            "viewBox": f"0 0 {width} {total_height}",
        },
    )
    for triangle in labeled.triangles:
        ET.SubElement(
            root,
            "polygon",
            {
                "points": " ".join(point(v) for v in triangle.vertices),
                "fill": _color(triangle.ray, labeled.ray_count),
                "stroke": "#333333",
                "stroke-width": "0.5",
                "data-ray": str(triangle.ray),
            },
        )

    for name, carrier in (("A", 0), ("B", 1), ("C", 2)):
        vertex = labeled.carriers.index(frozenset((carrier,)))
        x, y = labeled.positions[vertex]
        dx = -18 if carrier == 0 else 6
        dy = -6 if carrier == 2 else 16
        label = ET.SubElement(
            root,
            "text",
            {
                "x": f"{margin + x * size + dx:.3f}",
                "y": f"{margin + (height - y) * size + dy:.3f}",
                "font-family": "sans-serif",
                "font-size": "16",
            },
        )
        label.text = name

    return ET.tostring(root, encoding="unicode") + "\n"

from __future__ import annotations

import logging
from collections import deque
from collections.abc import Iterator, Mapping
from dataclasses import dataclass
from itertools import islice

from ._constructions import horn, standard_simplex
from ._exceptions import BudgetExceededError, NotMonomorphismError
from ._ordinal import OrdinalMap
from ._simplicial import (
    FaceRecord,
    SimplexRef,
    SimplicialMap,
    SimplicialSet,
)
from ._subdivision import subdivided_horn

#: Most maps out of a single horn that one lifting check enumerates
MAX_HORN_MAPS = 250_000

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class _Step:
    simplex: SimplexRef
    # faces as (target simplex, operator or None when the operator is an identity)
    faces: tuple[tuple[SimplexRef, OrdinalMap | None], ...] = ()
    # for vertices: earlier neighbours as (vertex, True if the edge points here)
    neighbours: tuple[tuple[int, bool], ...] = ()


def _search_plan(
    source: SimplicialSet, fixed: Mapping[SimplexRef, FaceRecord]
) -> list[_Step]:
    """
    Order the simplices of ``source`` so that every simplex comes right after the last
    of its faces. Vertices are visited breadth first through the 1-skeleton, starting
    from the fixed ones, so each new vertex is constrained by an already placed
    neighbour whenever possible.
    """
    face_targets: dict[SimplexRef, set[SimplexRef]] = {}
    cofaces: dict[SimplexRef, list[SimplexRef]] = {
        ref: [] for ref in source.simplices()
    }
    neighbours: dict[int, list[int]] = {v: [] for v in range(source.size(0))}
    edges: list[tuple[int, int]] = []
    for ref in source.simplices():
        if ref.dim == 0:
            continue

        targets = {record.target for record in source.faces[ref]}
        face_targets[ref] = targets
        for target in sorted(targets):
            cofaces[target].append(ref)

        if ref.dim == 1:
            tail, head = source.vertices(ref)
            if tail != head:
                edges.append((tail, head))
                neighbours[tail].append(head)
                neighbours[head].append(tail)

    placed: set[SimplexRef] = set()
    order: list[SimplexRef] = []

    def close(start: SimplexRef) -> None:
        stack = [start]
        while stack:
            current = stack.pop()
            if current in placed:
                continue

            placed.add(current)
            order.append(current)
            ready = [
                coface
                for coface in cofaces[current]
                if coface not in placed and face_targets[coface] <= placed
            ]
            stack.extend(reversed(ready))

    seen: set[int] = set()
    queue: deque[int] = deque()

    def visit(vertex: int) -> None:
        seen.add(vertex)
        close(SimplexRef(0, vertex))
        queue.append(vertex)

    def spread() -> None:
        while queue:
            current = queue.popleft()
            for other in sorted(neighbours[current]):
                if other not in seen:
                    visit(other)

    for vertex in sorted(ref.id for ref in fixed if ref.dim == 0):
        visit(vertex)

    spread()
    for vertex in range(source.size(0)):
        if vertex not in seen:
            visit(vertex)
            spread()

    position = {ref.id: index for index, ref in enumerate(order) if ref.dim == 0}
    steps = []
    for ref in order:
        if ref.dim == 0:
            constraints = []
            for tail, head in edges:
                if head == ref.id and position[tail] < position[ref.id]:
                    constraints.append((tail, True))
                elif tail == ref.id and position[head] < position[ref.id]:
                    constraints.append((head, False))

            steps.append(_Step(ref, neighbours=tuple(constraints)))
        else:
            faces = tuple(
                (record.target, None if not record.is_degenerate else record.epi)
                for record in source.faces[ref]
            )
            steps.append(_Step(ref, faces=faces))

    return steps


def _adjacency(
    target: SimplicialSet,
) -> tuple[dict[int, list[int]], dict[int, list[int]]]:
    cached = target._memo.get("adjacency")
    if cached is None:
        outgoing: dict[int, set[int]] = {v: {v} for v in range(target.size(0))}
        incoming: dict[int, set[int]] = {v: {v} for v in range(target.size(0))}
        for ref in target.simplices(1):
            tail, head = target.vertices(ref)
            outgoing[tail].add(head)
            incoming[head].add(tail)

        cached = (
            {v: sorted(values) for v, values in outgoing.items()},
            {v: sorted(values) for v, values in incoming.items()},
        )
        target._memo["adjacency"] = cached

    return cached


def iter_maps(
    source: SimplicialSet,
    target: SimplicialSet,
    fixed: Mapping[SimplexRef, FaceRecord] | None = None,
    over: tuple[SimplicialMap, Mapping[SimplexRef, FaceRecord]] | None = None,
) -> Iterator[dict[SimplexRef, FaceRecord]]:
    """
    Enumerate the simplicial maps ``source -> target`` by backtracking, as image
    dictionaries.

    :param fixed: images that are prescribed in advance (they must be consistent)
    :param over: a pair ``(p, g)`` requiring ``p ∘ result = g`` where ``g`` is given by
        its image dictionary
    :raises ~sdex.TruncationError: if ``target`` is truncated below the dimension of
        ``source``

    """
    fixed = fixed or {}
    target.require_dim(source.top_dim)
    steps = _search_plan(source, fixed)
    if not steps:
        yield {}
        return

    outgoing, incoming = _adjacency(target)
    vertices = [target.vertex_record(v) for v in range(target.size(0))]
    projection, required = over if over is not None else (None, None)
    images: dict[SimplexRef, FaceRecord] = {}
    apply = target.apply

    def candidates(step: _Step) -> list[FaceRecord] | tuple[FaceRecord, ...]:
        ref = step.simplex
        prescribed = fixed.get(ref)
        if prescribed is not None:
            return (prescribed,)

        if ref.dim == 0:
            if step.neighbours:
                allowed: set[int] | None = None
                for other, points_here in step.neighbours:
                    image = images[SimplexRef(0, other)].target.id
                    reachable = outgoing[image] if points_here else incoming[image]
                    allowed = (
                        set(reachable) if allowed is None else allowed & set(reachable)
                    )

                found: list[FaceRecord] = [vertices[v] for v in sorted(allowed or ())]
            else:
                found = list(vertices)
        else:
            expected = tuple(
                images[face] if operator is None else apply(operator, images[face])
                for face, operator in step.faces
            )
            found = list(target.simplices_with_faces(ref.dim, expected))

        if projection is not None and required is not None:
            wanted = required[ref]
            found = [record for record in found if projection.image(record) == wanted]

        return found

    count = len(steps)
    options: list[list[FaceRecord] | tuple[FaceRecord, ...]] = [()] * count
    cursor = [0] * count
    level = 0
    options[0] = candidates(steps[0])
    while level >= 0:
        if cursor[level] < len(options[level]):
            images[steps[level].simplex] = options[level][cursor[level]]
            cursor[level] += 1
            if level == count - 1:
                yield dict(images)
            else:
                level += 1
                options[level] = candidates(steps[level])
                cursor[level] = 0
        else:
            images.pop(steps[level].simplex, None)
            level -= 1


def enumerate_maps(source: SimplicialSet, target: SimplicialSet) -> list[SimplicialMap]:
    """
    Return every simplicial map ``source -> target`` in canonical backtracking order.

    :raises ~sdex.TruncationError: if ``target`` is truncated below the dimension of
        ``source``

    """
    return [
        SimplicialMap(source, target, images) for images in iter_maps(source, target)
    ]


def count_maps(source: SimplicialSet, target: SimplicialSet) -> int:
    return sum(1 for _ in iter_maps(source, target))


def extend(f: SimplicialMap, inclusion: SimplicialMap) -> SimplicialMap | None:
    """
    Extend ``f: A -> X`` along a monomorphism ``i: A -> B``.

    :return: a map ``g: B -> X`` with ``g ∘ i = f``, or ``None`` if there is none
    :raises ~sdex.NotMonomorphismError: if ``inclusion`` is not a monomorphism

    """
    if not inclusion.is_mono():
        raise NotMonomorphismError("extensions are only searched along monomorphisms")

    fixed = {
        inclusion.images[ref].target: record for ref, record in f.images.items()
    }
    for images in iter_maps(inclusion.target, f.target, fixed):
        return SimplicialMap(inclusion.target, f.target, images)

    return None


@dataclass(eq=False)
class LiftProblem:
    """
    A commutative square ``p ∘ f = g ∘ i``::

        A --f--> X
        |        |
        i        p
        v        v
        B --g--> Y

    When ``p`` is omitted, ``Y`` is the terminal simplicial set and the problem is an
    extension problem.
    """

    inclusion: SimplicialMap
    top: SimplicialMap
    projection: SimplicialMap | None = None
    bottom: SimplicialMap | None = None

    def __post_init__(self) -> None:
        if (self.projection is None) != (self.bottom is None):
            raise ValueError("the projection and the bottom map must be given together")

        if self.projection is not None and self.bottom is not None:
            left = self.projection.compose(self.top)
            right = self.bottom.compose(self.inclusion)
            if left != right:
                raise ValueError("the lifting square does not commute")

    def solutions(self) -> Iterator[SimplicialMap]:
        """Iterate over the diagonal fillers ``h: B -> X`` of the square."""
        fixed = {
            self.inclusion.images[ref].target: record
            for ref, record in self.top.images.items()
        }
        over = None
        if self.projection is not None and self.bottom is not None:
            over = (self.projection, self.bottom.images)

        space = self.inclusion.target
        for images in iter_maps(space, self.top.target, fixed, over):
            yield SimplicialMap(space, self.top.target, images)

    def solve(self) -> SimplicialMap | None:
        return next(self.solutions(), None)


@dataclass(eq=False)
class LiftingVerdict:
    """
    Outcome of a lifting property check. It is truthy exactly when the property holds.

    :ivar holds: whether every lifting problem was solvable
    :ivar bound: the truncation bound ``K`` the verdict is relative to
    :ivar horn: ``(k, i)`` of the first failing horn, if any
    :ivar counterexample: the first unsolvable lifting problem, if any
    """

    holds: bool
    bound: int
    horn: tuple[int, int] | None = None
    counterexample: LiftProblem | None = None

    def __bool__(self) -> bool:
        return self.holds

    def describe(self) -> str:
        if self.holds:
            return f"holds for all horns up to dimension {self.bound}"

        assert self.counterexample is not None
        problem = self.counterexample
        source, target = problem.inclusion.source, problem.top.target
        images = ", ".join(
            f"{source.label(ref)}->{target.label(problem.top.images[ref].target)}"
            for ref in source.simplices(0)
        )
        where = f" at horn Λ^{self.horn[1]}_{self.horn[0]}" if self.horn else ""
        return f"fails{where} (up to dimension {self.bound}): vertices {images}"


def _check_map_budget(
    source: SimplicialSet, target: SimplicialSet, budget: int
) -> None:
    """Count the maps ``source -> target`` up to ``budget`` and raise beyond it."""
    maps = iter_maps(source, target)
    if sum(1 for _ in islice(maps, budget + 1)) > budget:
        raise BudgetExceededError("number of maps out of the horn", budget + 1, budget)


def has_rlp(
    projection: SimplicialMap,
    inclusion: SimplicialMap,
    bound: int,
    *,
    max_maps: int = MAX_HORN_MAPS,
) -> LiftingVerdict:
    """
    Decide whether ``p: X -> Y`` has the right lifting property against ``i: A -> B``.

    Every square is enumerated: first the bottom map ``g: B -> Y``, then every top map
    ``f: A -> X`` over ``g ∘ i``, and a diagonal filler is searched for each.

    :param max_maps: the most squares that are examined
    :raises ~sdex.TruncationError: if ``X`` or ``Y`` is truncated below the dimension
        of ``B`` or below ``bound``
    :raises ~sdex.BudgetExceededError: if there are more than ``max_maps`` squares and
        none of the first ``max_maps`` is a counterexample

    """
    space = inclusion.target
    projection.source.require_dim(max(bound, space.top_dim))
    projection.target.require_dim(max(bound, space.top_dim))
    examined = 0
    for bottom_images in iter_maps(space, projection.target):
        bottom = SimplicialMap(space, projection.target, bottom_images)
        restricted = bottom.compose(inclusion)
        for top_images in iter_maps(
            inclusion.source, projection.source, over=(projection, restricted.images)
        ):
            examined += 1
            if examined > max_maps:
                raise BudgetExceededError(
                    "number of lifting squares", examined, max_maps
                )

            top = SimplicialMap(inclusion.source, projection.source, top_images)
            problem = LiftProblem(inclusion, top, projection, bottom)
            if problem.solve() is None:
                return LiftingVerdict(False, bound, counterexample=problem)

    return LiftingVerdict(True, bound)


def _object_verdict(
    space: SimplicialSet, inclusion: SimplicialMap, bound: int, max_maps: int
) -> LiftingVerdict:
    _check_map_budget(inclusion.source, space, max_maps)
    for top_images in iter_maps(inclusion.source, space):
        top = SimplicialMap(inclusion.source, space, top_images)
        if extend(top, inclusion) is None:
            problem = LiftProblem(inclusion, top)
            return LiftingVerdict(False, bound, counterexample=problem)

    return LiftingVerdict(True, bound)


def horn_verdict(
    target: SimplicialSet | SimplicialMap,
    n: int,
    k: int,
    i: int,
    bound: int,
    max_maps: int = MAX_HORN_MAPS,
) -> LiftingVerdict:
    """
    Check the lifting property against the single horn inclusion ``Sd^n Λ^i_k -> Sd^n
    Δ_k``.

    :raises ~sdex.BudgetExceededError: if more than ``max_maps`` maps (or squares) out
        of the horn would have to be examined

    """
    if n == 0:
        _, inclusion = horn(k, i)
    else:
        inclusion = subdivided_horn(k, i, n)[2]

    if isinstance(target, SimplicialSet):
        target.require_dim(bound)
        verdict = _object_verdict(target, inclusion, bound, max_maps)
    else:
        verdict = has_rlp(target, inclusion, bound, max_maps=max_maps)

    if not verdict:
        verdict.horn = (k, i)
        logger.info("lifting fails against horn (%d, %d) at depth %d", k, i, n)

    return verdict


def horns_up_to(bound: int) -> list[tuple[int, int]]:
    return [(k, i) for k in range(1, bound + 1) for i in range(k + 1)]


def is_kan_up_to(space: SimplicialSet, bound: int) -> LiftingVerdict:
    """
    Decide the Kan extension condition for every horn ``Λ^i_k`` with ``k <= bound``.

    :raises ~sdex.TruncationError: if ``space`` is truncated below ``bound``

    """
    return is_fib_n(space, 0, bound)


def is_fib_n(
    target: SimplicialSet | SimplicialMap,
    n: int,
    bound: int,
    *,
    max_maps: int = MAX_HORN_MAPS,
) -> LiftingVerdict:
    """
    Decide the right lifting property against ``Sd^n`` of every horn inclusion
    ``Λ^i_k -> Δ_k`` with ``k <= bound``; for ``n = 1`` this is fibrancy of ``Ex``.

    :param target: a map ``p``, or a simplicial set standing for its map to the point
    :param n: the subdivision depth
    :param bound: the truncation bound ``K`` (also the largest horn dimension)
    :param max_maps: the most maps (or squares) examined per horn
    :raises ~sdex.TruncationError: if the simplicial sets are truncated below ``bound``
    :raises ~sdex.BudgetExceededError: if a horn admits more than ``max_maps`` maps

    """
    if n < 0:
        raise ValueError("the subdivision depth must be non-negative")

    for k, i in horns_up_to(bound):
        verdict = horn_verdict(target, n, k, i, bound, max_maps)
        if not verdict:
            return verdict

    return LiftingVerdict(True, bound)


def terminal_map(space: SimplicialSet) -> SimplicialMap:
    """Return the unique map from ``space`` to the point Δ_0."""
    images = {
        ref: FaceRecord(OrdinalMap((0,) * (ref.dim + 1), 1), SimplexRef(0, 0))
        for ref in space.simplices()
    }

    return SimplicialMap(space, standard_simplex(0), images)

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import lru_cache
from math import factorial

from ._constructions import (
    boundary_inclusion,
    complex_from_vertex_tuples,
    horn,
    map_from_vertex_assignment,
    standard_simplex,
)
from ._exceptions import BudgetExceededError, NotVertexDeterminedError
from ._simplicial import SimplexRef, SimplicialMap, SimplicialSet

#: Deepest iterated subdivision that is attempted
MAX_SUBDIVISION_DEPTH = 8
#: Upper bound on the (estimated) number of top-dimensional simplices produced by
#: iterated subdivision
MAX_TOP_CELLS = 200_000

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class FacePoset:
    """
    The poset of non-degenerate simplices of a vertex-determined simplicial set, ordered
    by the face relation.

    Element ``j`` is the ``j``-th simplex in ``(dim, id)`` order, which is a linear
    extension of the order.

    :ivar elements: the simplex behind each element
    :ivar below: the (reflexive) down-set of each element
    :ivar covers: the elements covered by each element (its codimension one faces)
    """

    elements: tuple[SimplexRef, ...]
    below: tuple[frozenset[int], ...]
    covers: tuple[tuple[int, ...], ...]
    index: dict[SimplexRef, int] = field(repr=False)

    def __len__(self) -> int:
        return len(self.elements)

    def leq(self, a: int, b: int) -> bool:
        return a in self.below[b]

    def order_table(self) -> list[list[bool]]:
        """Return the order relation as a boolean matrix (``table[a][b]`` iff a ≤ b)."""
        size = len(self.elements)
        return [[a in self.below[b] for b in range(size)] for a in range(size)]


def face_poset(space: SimplicialSet) -> FacePoset:
    """
    Return the face poset of a vertex-determined simplicial set.

    :raises ~sdex.NotVertexDeterminedError: if ``space`` is not vertex-determined

    """
    cached = space._memo.get("face_poset")
    if cached is not None:
        return cached

    elements = tuple(space.simplices())
    index = {ref: position for position, ref in enumerate(elements)}
    seen: dict[frozenset[int], SimplexRef] = {}
    below: list[frozenset[int]] = []
    covers: list[tuple[int, ...]] = []
    for position, ref in enumerate(elements):
        vertex_set = frozenset(space.vertices(ref))
        if len(vertex_set) != ref.dim + 1:
            raise NotVertexDeterminedError(ref, "it has a repeated vertex")

        if vertex_set in seen:
            raise NotVertexDeterminedError(
                ref, f"it has the same vertices as {seen[vertex_set].dim}:"
                f"{seen[vertex_set].id}"
            )

        seen[vertex_set] = ref
        if ref.dim == 0:
            below.append(frozenset((position,)))
            covers.append(())
            continue

        lower = []
        for record in space.faces[ref]:
            if record.is_degenerate:
                raise NotVertexDeterminedError(ref, "it has a degenerate face")

            lower.append(index[record.target])

        down = {position}
        for face in lower:
            down.update(below[face])

        below.append(frozenset(down))
        covers.append(tuple(sorted(lower)))

    result = FacePoset(elements, tuple(below), tuple(covers), index)
    space._memo["face_poset"] = result
    return result


def _element_label(space: SimplicialSet, ref: SimplexRef) -> str:
    names = [space.label(SimplexRef(0, v)) for v in space.vertices(ref)]
    return "[" + ",".join(names) + "]"


def sd(space: SimplicialSet) -> SimplicialSet:
    """
    Return the barycentric subdivision of a vertex-determined simplicial set: the nerve
    of its face poset.

    Vertex ``j`` of the result is the barycenter of the ``j``-th simplex of ``space``
    (in ``(dim, id)`` order), labelled with that simplex's vertex list.

    :raises ~sdex.NotVertexDeterminedError: if ``space`` is not vertex-determined

    """
    cached = space._memo.get("sd")
    if cached is not None:
        return cached

    poset = face_poset(space)
    chains: list[tuple[int, ...]] = []
    ending: list[list[tuple[int, ...]]] = []
    for element in range(len(poset)):
        mine = [(element,)]
        for lower in sorted(poset.below[element]):
            if lower != element:
                mine.extend(chain + (element,) for chain in ending[lower])

        ending.append(mine)
        chains.extend(mine)

    labels = {
        position: _element_label(space, ref)
        for position, ref in enumerate(poset.elements)
    }
    result, _ = complex_from_vertex_tuples(chains, labels)
    space._memo["sd"] = result
    logger.debug("subdivided %s into %s", space.f_vector, result.f_vector)
    return result


def sd_map(f: SimplicialMap) -> SimplicialMap:
    """
    Return the subdivision ``Sd f: Sd X -> Sd Y`` of a map between vertex-determined
    simplicial sets: the nerve of the induced map of face posets.

    :raises ~sdex.NotVertexDeterminedError: if the source or target is not
        vertex-determined

    """
    source_poset = face_poset(f.source)
    target_poset = face_poset(f.target)
    assignment = [
        target_poset.index[f.images[ref].target] for ref in source_poset.elements
    ]
    return map_from_vertex_assignment(sd(f.source), sd(f.target), assignment)


def _check_budget(space: SimplicialSet, n: int) -> None:
    if n > MAX_SUBDIVISION_DEPTH:
        raise BudgetExceededError("subdivision depth", n, MAX_SUBDIVISION_DEPTH)

    top = space.top_dim
    if top < 0 or n <= 0:
        return

    estimate = space.size(top) * factorial(top + 1) ** n
    if estimate > MAX_TOP_CELLS:
        raise BudgetExceededError(
            "estimated number of top cells", estimate, MAX_TOP_CELLS
        )


def sd_iter(space: SimplicialSet, n: int) -> SimplicialSet:
    """
    Return the ``n``-fold barycentric subdivision ``Sd^n X``.

    :raises ~sdex.BudgetExceededError: if the result would have more than
        :data:`MAX_TOP_CELLS` top-dimensional simplices

    """
    if n < 0:
        raise ValueError("the subdivision depth must be non-negative")

    _check_budget(space, n)
    for _ in range(n):
        space = sd(space)

    return space


def sd_iter_map(f: SimplicialMap, n: int) -> SimplicialMap:
    """Return ``Sd^n f``."""
    if n < 0:
        raise ValueError("the subdivision depth must be non-negative")

    _check_budget(f.target, n)
    for _ in range(n):
        f = sd_map(f)

    return f


def sd_tower(space: SimplicialSet, n: int) -> list[SimplicialSet]:
    """Return the list ``[X, Sd X, ..., Sd^n X]``."""
    _check_budget(space, n)
    levels = [space]
    for _ in range(n):
        levels.append(sd(levels[-1]))

    return levels


def subdivision_carriers(space: SimplicialSet, n: int) -> tuple[frozenset[int], ...]:
    """
    Return, for every vertex of ``Sd^n X``, the vertex set of the smallest simplex of
    ``X`` whose subdivision contains it.
    """
    levels = sd_tower(space, n)
    carriers = tuple(frozenset((v,)) for v in range(space.size(0)))
    for level in levels[:-1]:
        poset = face_poset(level)
        carriers = tuple(
            frozenset().union(*(carriers[v] for v in level.vertices(ref)))
            for ref in poset.elements
        )

    return carriers


def last_vertex_map(m: int) -> SimplicialMap:
    """Return the last vertex map ``Sd Δ_m -> Δ_m``; a face goes to its last vertex."""
    simplex = standard_simplex(m)
    poset = face_poset(simplex)
    assignment = [max(simplex.vertices(ref)) for ref in poset.elements]
    return map_from_vertex_assignment(sd(simplex), simplex, assignment)


@lru_cache(maxsize=None)
def subdivided_simplex(k: int, n: int) -> SimplicialSet:
    """Return ``Sd^n Δ_k`` (cached)."""
    return sd_iter(standard_simplex(k), n)


@lru_cache(maxsize=None)
def subdivided_horn(
    k: int, i: int, n: int
) -> tuple[SimplicialSet, SimplicialSet, SimplicialMap]:
    """
    Return ``(Sd^n Λ^i_k, Sd^n Δ_k, Sd^n(inclusion))`` (cached).
    """
    _, inclusion = horn(k, i)
    subdivided = sd_iter_map(inclusion, n)
    return subdivided.source, subdivided.target, subdivided


@lru_cache(maxsize=None)
def subdivided_boundary(
    k: int, n: int
) -> tuple[SimplicialSet, SimplicialSet, SimplicialMap]:
    """Return ``(Sd^n ∂Δ_k, Sd^n Δ_k, Sd^n(inclusion))`` (cached)."""
    _, inclusion = boundary_inclusion(k)
    subdivided = sd_iter_map(inclusion, n)
    return subdivided.source, subdivided.target, subdivided

from __future__ import annotations

from collections.abc import Iterable, Mapping, Sequence
from functools import lru_cache
from itertools import combinations

from ._exceptions import (
    IndexOutOfRangeError,
    NotMonomorphismError,
    NotSimplicialError,
)
from ._ordinal import OrdinalMap
from ._simplicial import (
    FaceRecord,
    SimplexRef,
    SimplicialMap,
    SimplicialSet,
    SimplicialSetBuilder,
)

VertexTuple = tuple[int, ...]


def complex_from_vertex_tuples(
    tuples: Iterable[VertexTuple],
    vertex_labels: Mapping[int, str] | None = None,
    simplex_labels: Mapping[VertexTuple, str] | None = None,
) -> tuple[SimplicialSet, dict[VertexTuple, SimplexRef]]:
    """
    Build a vertex-determined simplicial set from a face-closed family of strictly
    increasing vertex tuples.

    Simplices are numbered in ``(length, tuple)`` order, so the vertex ids follow the
    order of the original vertex names.

    :return: the simplicial set and the lookup from vertex tuples to simplices
    :raises ValueError: if the family is not closed under taking faces

    """
    ordered = sorted(set(tuples), key=lambda t: (len(t), t))
    builder = SimplicialSetBuilder()
    lookup: dict[VertexTuple, SimplexRef] = {}
    for simplex in ordered:
        dim = len(simplex) - 1
        label = None
        if simplex_labels is not None:
            label = simplex_labels.get(simplex)

        if dim == 0:
            if label is None:
                label = (
                    vertex_labels[simplex[0]]
                    if vertex_labels is not None
                    else str(simplex[0])
                )

            lookup[simplex] = builder.add_vertex(label)
            continue

        identity = OrdinalMap.identity(dim)
        faces = []
        for i in range(dim + 1):
            face = simplex[:i] + simplex[i + 1 :]
            try:
                faces.append(FaceRecord(identity, lookup[face]))
            except KeyError:
                raise ValueError(
                    f"the face {face} of {simplex} is missing from the family"
                ) from None

        lookup[simplex] = builder.add_simplex(dim, faces, label)

    return builder.build(), lookup


@lru_cache(maxsize=None)
def _standard(k: int) -> tuple[SimplicialSet, dict[VertexTuple, SimplexRef]]:
    tuples = [
        face for size in range(1, k + 2) for face in combinations(range(k + 1), size)
    ]
    return complex_from_vertex_tuples(tuples)


def standard_simplex(k: int) -> SimplicialSet:
    """
    Return the standard ``k``-simplex Δ_k.

    Its non-degenerate ``d``-simplices are the ``(d+1)``-subsets of ``{0, ..., k}``,
    numbered in lexicographic order.
    """
    if k < 0:
        raise IndexOutOfRangeError(f"there is no standard simplex of dimension {k}")

    return _standard(k)[0]


def boundary(k: int) -> SimplicialSet:
    """Return the boundary ∂Δ_k: every proper face of Δ_k."""
    if k < 0:
        raise IndexOutOfRangeError(f"there is no boundary of dimension {k}")

    return _boundary(k)[0]


def horn(k: int, i: int) -> tuple[SimplicialSet, SimplicialMap]:
    """
    Return the horn Λ^i_k together with its inclusion into Δ_k.

    The horn consists of every face of Δ_k except the top simplex and its ``i``-th
    face.

    :raises ~sdex.IndexOutOfRangeError: unless ``k >= 1`` and ``0 <= i <= k``

    """
    if k < 1 or not 0 <= i <= k:
        raise IndexOutOfRangeError(f"there is no horn Λ^{i}_{k}")

    return _horn(k, i)


def boundary_inclusion(k: int) -> tuple[SimplicialSet, SimplicialMap]:
    """Return ∂Δ_k together with its inclusion into Δ_k."""
    if k < 0:
        raise IndexOutOfRangeError(f"there is no boundary of dimension {k}")

    space, lookup = _boundary(k)
    return space, _inclusion(space, lookup, k)


@lru_cache(maxsize=None)
def _boundary(k: int) -> tuple[SimplicialSet, dict[VertexTuple, SimplexRef]]:
    tuples = [
        face for size in range(1, k + 1) for face in combinations(range(k + 1), size)
    ]
    return complex_from_vertex_tuples(tuples)


@lru_cache(maxsize=None)
def _horn(k: int, i: int) -> tuple[SimplicialSet, SimplicialMap]:
    missing = tuple(v for v in range(k + 1) if v != i)
    tuples = [
        face
        for size in range(1, k + 1)
        for face in combinations(range(k + 1), size)
        if face != missing
    ]
    space, lookup = complex_from_vertex_tuples(tuples)
    return space, _inclusion(space, lookup, k)


def _inclusion(
    space: SimplicialSet, lookup: dict[VertexTuple, SimplexRef], k: int
) -> SimplicialMap:
    simplex_lookup = _standard(k)[1]
    images = {ref: FaceRecord.of(simplex_lookup[face]) for face, ref in lookup.items()}
    return SimplicialMap(space, standard_simplex(k), images)


def map_from_vertex_assignment(
    source: SimplicialSet, target: SimplicialSet, vertices: Sequence[int]
) -> SimplicialMap:
    """
    Build the simplicial map that sends vertex ``v`` of ``source`` to vertex
    ``vertices[v]`` of ``target``.

    Every simplex of the source must be sent to a sequence of vertices that, after
    collapsing consecutive repeats, spans exactly one non-degenerate simplex of the
    target. This is always the case for maps between vertex-determined simplicial sets
    that come from a map of posets or ordered complexes.

    :raises ~sdex.NotSimplicialError: if some simplex has no (or no unique) image

    """
    if len(vertices) != source.size(0):
        raise NotSimplicialError(
            f"expected {source.size(0)} vertex images, got {len(vertices)}"
        )

    index = _vertex_index(target)
    images: dict[SimplexRef, FaceRecord] = {}
    for ref in source.simplices():
        image = [vertices[v] for v in source.vertices(ref)]
        runs = [image[0]]
        epi = [0]
        for value in image[1:]:
            if value != runs[-1]:
                runs.append(value)

            epi.append(len(runs) - 1)

        candidates = index.get(tuple(runs), ())
        if len(candidates) != 1:
            reason = "no" if not candidates else "more than one"
            raise NotSimplicialError(
                f"{reason} simplex of the target spans the vertices {runs} "
                f"(image of simplex {ref.dim}:{ref.id})"
            )

        images[ref] = FaceRecord(OrdinalMap(tuple(epi), len(runs)), candidates[0])

    return SimplicialMap(source, target, images)


def _vertex_index(space: SimplicialSet) -> dict[VertexTuple, list[SimplexRef]]:
    index: dict[VertexTuple, list[SimplexRef]] = {}
    for ref in space.simplices():
        index.setdefault(space.vertices(ref), []).append(ref)

    return index


def map_from_vertex_function(
    k: int, values: Sequence[int], m: int | None = None
) -> SimplicialMap:
    """
    Return the map ``Δ_k -> Δ_m`` induced by a weakly monotone vertex function.

    :param k: dimension of the source simplex
    :param values: the image of each vertex ``0, ..., k``
    :param m: dimension of the target simplex (defaults to ``max(values)``)
    :raises ~sdex.NonMonotoneError: if ``values`` is not weakly increasing

    """
    if len(values) != k + 1:
        raise IndexOutOfRangeError(
            f"Δ_{k} has {k + 1} vertices, got {len(values)} values"
        )

    operator = OrdinalMap.of(values, None if m is None else m + 1)
    return map_from_vertex_assignment(
        standard_simplex(k), standard_simplex(operator.codomain_size - 1), values
    )


class Gluing:
    """
    Grows a simplicial set by attaching copies of ``B`` along maps ``A -> X`` for
    monomorphisms ``A -> B``.

    Simplices of the original set keep their ids; new simplices are appended in the
    canonical order of each attached ``B``.
    """

    def __init__(self, base: SimplicialSet) -> None:
        self._builder = SimplicialSetBuilder(base)
        self.space = self._builder.space
        self.attached = 0

    def attach(
        self, inclusion: SimplicialMap, attaching: SimplicialMap
    ) -> SimplicialMap:
        """
        Attach one copy of ``inclusion.target`` along ``attaching``.

        :return: the map from ``inclusion.target`` into the grown simplicial set

        """
        if not inclusion.is_mono():
            raise NotMonomorphismError("pushouts are only formed along monomorphisms")

        preimage = {record.target: ref for ref, record in inclusion.images.items()}
        cell = inclusion.target
        space = self.space
        images: dict[SimplexRef, FaceRecord] = {}
        for ref in cell.simplices():
            source = preimage.get(ref)
            if source is not None:
                images[ref] = attaching.images[source]
                continue

            faces = []
            if ref.dim:
                for face in cell.faces[ref]:
                    lowered = images[face.target]
                    faces.append(space.apply(face.epi, lowered))

            images[ref] = FaceRecord.of(
                self._builder.add_simplex(ref.dim, faces, cell.labels.get(ref))
            )

        self.attached += 1
        return SimplicialMap(cell, space, images)

    def build(self) -> SimplicialSet:
        return self._builder.build()


def pushout(
    inclusion: SimplicialMap, attaching: SimplicialMap
) -> tuple[SimplicialSet, SimplicialMap, SimplicialMap]:
    """
    Form the pushout of ``B <- A -> X`` along a monomorphism ``A -> B``.

    :param inclusion: the monomorphism ``i: A -> B``
    :param attaching: the map ``f: A -> X``
    :return: the pushout ``P`` and the maps ``X -> P`` and ``B -> P``
    :raises ~sdex.NotMonomorphismError: if ``inclusion`` is not a monomorphism

    """
    if inclusion.source != attaching.source:
        raise ValueError("the two maps do not share their source")

    base = attaching.target
    gluing = Gluing(base)
    from_cell = gluing.attach(inclusion, attaching)
    result = gluing.build()
    from_base = SimplicialMap(
        base, result, {ref: FaceRecord.of(ref) for ref in base.simplices()}
    )
    return result, from_base, from_cell

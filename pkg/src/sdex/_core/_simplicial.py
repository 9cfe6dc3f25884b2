from __future__ import annotations

import sys
from collections.abc import Iterator, Sequence
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, NamedTuple

from ._exceptions import (
    IndexOutOfRangeError,
    SimplicialIdentityError,
    TruncationError,
)
from ._ordinal import OrdinalMap, surjections

if sys.version_info < (3, 11):
    from exceptiongroup import ExceptionGroup


class SimplexRef(NamedTuple):
    """Reference to a non-degenerate simplex by dimension and id within it."""

    dim: int
    id: int


class FaceRecord(NamedTuple):
    """
    A possibly degenerate simplex in Eilenberg–Zilber normal form.

    The simplex denoted is ``X(epi)(target)``: the degeneracy of the non-degenerate
    simplex ``target`` along the surjection ``epi``. The denoted simplex has dimension
    ``epi.domain_size - 1``.
    """

    epi: OrdinalMap
    target: SimplexRef

    @property
    def dim(self) -> int:
        return len(self.epi.values) - 1

    @property
    def is_degenerate(self) -> bool:
        return len(self.epi.values) != self.epi.codomain_size

    @classmethod
    def of(cls, target: SimplexRef) -> FaceRecord:
        """Return the non-degenerate record of ``target``."""
        return cls(OrdinalMap.identity(target.dim + 1), target)


class Violation(NamedTuple):
    """
    One entry of a validation report.

    :ivar simplex: the simplex at which the problem was detected
    :ivar clause: short machine-friendly name of the violated condition
    :ivar detail: human readable explanation
    """

    simplex: SimplexRef
    clause: str
    detail: str


@dataclass(eq=False)
class SimplicialSet:
    """
    A finite, possibly truncated, simplicial set stored as its non-degenerate
    simplices.

    Each non-degenerate simplex of dimension ``d >= 1`` has ``d + 1`` face records, one
    per face index; vertices have none. Degenerate simplices are never stored; they are
    represented by :class:`FaceRecord` values whose ``epi`` is not an identity.

    Instances are built with :class:`SimplicialSetBuilder` or one of the constructors
    and must be treated as immutable once built.

    :ivar sizes: number of non-degenerate simplices per dimension
    :ivar faces: face records of each non-degenerate simplex of positive dimension
    :ivar labels: optional display labels
    :ivar dim_bound: the highest dimension described
    :ivar truncated: ``True`` if simplices above ``dim_bound`` may exist but are unknown
    """

    sizes: list[int]
    faces: dict[SimplexRef, tuple[FaceRecord, ...]]
    labels: dict[SimplexRef, str] = field(default_factory=dict)
    dim_bound: int = -1
    truncated: bool = False
    _restrictions: dict[tuple[SimplexRef, tuple[int, ...]], FaceRecord] = field(
        init=False, repr=False, default_factory=dict
    )
    _vertices: dict[SimplexRef, tuple[int, ...]] = field(
        init=False, repr=False, default_factory=dict
    )
    _all: dict[int, tuple[FaceRecord, ...]] = field(
        init=False, repr=False, default_factory=dict
    )
    _by_faces: dict[int, dict[tuple[FaceRecord, ...], list[FaceRecord]]] = field(
        init=False, repr=False, default_factory=dict
    )
    _faces_of: dict[FaceRecord, tuple[FaceRecord, ...]] = field(
        init=False, repr=False, default_factory=dict
    )
    _memo: dict[str, Any] = field(init=False, repr=False, default_factory=dict)

    def __post_init__(self) -> None:
        if self.dim_bound < self.top_dim:
            self.dim_bound = self.top_dim

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SimplicialSet):
            return NotImplemented

        return (
            self.sizes[: self.top_dim + 1] == other.sizes[: other.top_dim + 1]
            and self.faces == other.faces
            and self.dim_bound == other.dim_bound
            and self.truncated == other.truncated
        )

    __hash__ = None  # type: ignore[assignment]

    @property
    def top_dim(self) -> int:
        """The highest dimension with a non-degenerate simplex (``-1`` if empty)."""
        for dim in range(len(self.sizes) - 1, -1, -1):
            if self.sizes[dim]:
                return dim

        return -1

    def size(self, dim: int) -> int:
        return self.sizes[dim] if 0 <= dim < len(self.sizes) else 0

    @property
    def f_vector(self) -> tuple[int, ...]:
        return tuple(self.sizes[: self.top_dim + 1])

    def simplices(self, dim: int | None = None) -> Iterator[SimplexRef]:
        """Iterate over the non-degenerate simplices in ``(dim, id)`` order."""
        dims = range(len(self.sizes)) if dim is None else (dim,)
        for d in dims:
            for id_ in range(self.size(d)):
                yield SimplexRef(d, id_)

    def __contains__(self, ref: object) -> bool:
        return (
            isinstance(ref, tuple)
            and len(ref) == 2
            and 0 <= ref[0] < len(self.sizes)
            and 0 <= ref[1] < self.sizes[ref[0]]
        )

    def __len__(self) -> int:
        return sum(self.sizes)

    def label(self, ref: SimplexRef) -> str:
        try:
            return self.labels[ref]
        except KeyError:
            return str(ref.id) if ref.dim == 0 else f"{ref.dim}:{ref.id}"

    def require_dim(self, needed: int) -> None:
        """
        Make sure every simplex of dimension ``needed`` is known.

        :raises ~sdex.TruncationError: if the set is truncated below ``needed``

        """
        if self.truncated and needed > self.dim_bound:
            raise TruncationError(needed, self.dim_bound)

    def face(self, ref: SimplexRef, i: int) -> FaceRecord:
        """
        Return the ``i``-th face of a non-degenerate simplex.

        :raises ~sdex.IndexOutOfRangeError: if ``ref`` is a vertex or ``i`` is out of
            range

        """
        if ref.dim == 0 or not 0 <= i <= ref.dim:
            raise IndexOutOfRangeError(f"simplex {ref} has no face {i}")

        return self.faces[ref][i]

    def apply(self, operator: OrdinalMap, record: FaceRecord) -> FaceRecord:
        """
        Apply the simplicial operator ``X(operator)`` to a simplex given in normal form.

        ``operator`` must be an ordinal map ``[p] -> [m]`` where ``m`` is the dimension
        of ``record``; the result is a ``p``-simplex, again in normal form.
        """
        combined = record.epi.compose(operator)
        epi, mono = combined.factor()
        if len(mono.values) == mono.codomain_size:
            return FaceRecord(epi, record.target)

        restricted = self.restrict(record.target, mono)
        if len(restricted.epi.values) == restricted.epi.codomain_size:
            return FaceRecord(epi, restricted.target)

        return FaceRecord(restricted.epi.compose(epi), restricted.target)

    def restrict(self, ref: SimplexRef, mono: OrdinalMap) -> FaceRecord:
        """
        Return ``X(mono)(ref)`` for an injective operator ``mono`` into ``[ref.dim]``.

        The face is reached one coface at a time, always dropping the largest vertex
        that is missing from the image of ``mono``.
        """
        if len(mono.values) == mono.codomain_size:
            return FaceRecord(mono, ref)

        key = (ref, mono.values)
        try:
            return self._restrictions[key]
        except KeyError:
            pass

        image = set(mono.values)
        j = max(k for k in range(ref.dim + 1) if k not in image)
        rest = OrdinalMap(tuple(v if v < j else v - 1 for v in mono.values), ref.dim)
        result = self.apply(rest, self.faces[ref][j])
        self._restrictions[key] = result
        return result

    def face_of(self, record: FaceRecord, i: int) -> FaceRecord:
        """Return the ``i``-th face of a possibly degenerate simplex."""
        return self.apply(OrdinalMap.coface(record.dim, i), record)

    def faces_of(self, record: FaceRecord) -> tuple[FaceRecord, ...]:
        """Return all faces of a possibly degenerate simplex of positive dimension."""
        try:
            return self._faces_of[record]
        except KeyError:
            pass

        if record.is_degenerate:
            result = tuple(self.face_of(record, i) for i in range(record.dim + 1))
        else:
            result = self.faces[record.target]

        self._faces_of[record] = result
        return result

    def vertices(self, ref: SimplexRef) -> tuple[int, ...]:
        """Return the vertex ids of a non-degenerate simplex, in order."""
        try:
            return self._vertices[ref]
        except KeyError:
            pass

        if ref.dim == 0:
            result: tuple[int, ...] = (ref.id,)
        else:
            last = self.faces[ref][0]
            head = self.faces[ref][ref.dim]
            result = self.record_vertices(head) + self.record_vertices(last)[-1:]

        self._vertices[ref] = result
        return result

    def record_vertices(self, record: FaceRecord) -> tuple[int, ...]:
        """Return the vertex ids of a possibly degenerate simplex."""
        base = self.vertices(record.target)
        return tuple(base[v] for v in record.epi.values)

    def all_simplices(self, dim: int) -> tuple[FaceRecord, ...]:
        """
        Return every ``dim``-simplex, degenerate ones included, in canonical order:
        by dimension of the underlying non-degenerate simplex, then by operator, then by
        id.

        :raises ~sdex.TruncationError: if ``dim`` lies above a truncation bound

        """
        try:
            return self._all[dim]
        except KeyError:
            pass

        self.require_dim(dim)
        found = []
        for d in range(min(dim, len(self.sizes) - 1) + 1):
            for epi in surjections(dim + 1, d + 1):
                found.extend(
                    FaceRecord(epi, SimplexRef(d, id_)) for id_ in range(self.size(d))
                )

        result = self._all[dim] = tuple(found)
        return result

    def simplices_with_faces(
        self, dim: int, faces: tuple[FaceRecord, ...]
    ) -> Sequence[FaceRecord]:
        """
        Return every ``dim``-simplex (``dim >= 1``) whose faces are exactly ``faces``,
        in canonical order.
        """
        try:
            index = self._by_faces[dim]
        except KeyError:
            index = {}
            for record in self.all_simplices(dim):
                index.setdefault(self.faces_of(record), []).append(record)

            self._by_faces[dim] = index

        return index.get(faces, ())

    def vertex_record(self, vertex: int) -> FaceRecord:
        return FaceRecord(OrdinalMap.identity(1), SimplexRef(0, vertex))

    def representing_map(self, record: FaceRecord) -> SimplicialMap:
        """
        Return the map ``Δ_m -> X`` classifying the given ``m``-simplex.
        """
        from ._constructions import standard_simplex

        simplex = standard_simplex(record.dim)
        images = {}
        for ref in simplex.simplices():
            mono = OrdinalMap(simplex.vertices(ref), record.dim + 1)
            images[ref] = self.apply(mono, record)

        return SimplicialMap(simplex, self, images)

    def is_vertex_determined(self) -> bool:
        seen: set[frozenset[int]] = set()
        for ref in self.simplices():
            if ref.dim and any(record.is_degenerate for record in self.faces[ref]):
                return False

            vertex_set = frozenset(self.vertices(ref))
            if len(vertex_set) != ref.dim + 1 or vertex_set in seen:
                return False

            seen.add(vertex_set)

        return True

    def validate(self) -> list[Violation]:
        """
        Check the face records and the simplicial identities
        ``d_i d_j = d_{j-1} d_i`` for ``i < j``.

        :return: the violations found (empty if the simplicial set is well formed)

        """
        report = self._structural_violations()
        if report:
            return report

        for ref in self.simplices():
            if ref.dim < 2:
                continue

            records = self.faces[ref]
            for j in range(1, ref.dim + 1):
                for i in range(j):
                    left = self.face_of(records[j], i)
                    right = self.face_of(records[i], j - 1)
                    if left != right:
                        report.append(
                            Violation(
                                ref,
                                "identity",
                                f"d_{i} d_{j} = {_show(left)} but "
                                f"d_{j - 1} d_{i} = {_show(right)}",
                            )
                        )

        return report

    def check(self) -> None:
        """
        Raise an exception group of :exc:`~sdex.SimplicialIdentityError` if
        :meth:`validate` finds any violation.
        """
        report = self.validate()
        if report:
            raise ExceptionGroup(
                "the simplicial set is malformed",
                [
                    SimplicialIdentityError(
                        f"{v.simplex.dim}:{v.simplex.id}: {v.clause}: {v.detail}"
                    )
                    for v in report
                ],
            )

    def _structural_violations(self) -> list[Violation]:
        report = []
        for ref in self.simplices():
            if ref.dim == 0:
                continue

            records = self.faces.get(ref)
            if records is None or len(records) != ref.dim + 1:
                report.append(
                    Violation(ref, "face-count", f"expected {ref.dim + 1} face records")
                )
                continue

            for i, record in enumerate(records):
                problem = None
                if record.target not in self or record.target.dim >= ref.dim:
                    problem = f"face {i} points to a missing simplex {record.target}"
                elif record.epi.domain_size != ref.dim:
                    problem = f"face {i} has dimension {record.epi.domain_size - 1}"
                elif record.epi.codomain_size != record.target.dim + 1:
                    problem = f"face {i} has an operator of the wrong size"
                elif not record.epi.is_surjective or any(
                    a > b for a, b in zip(record.epi.values, record.epi.values[1:])
                ):
                    problem = f"face {i} is not in normal form"

                if problem:
                    report.append(Violation(ref, "face-record", problem))

        return report


def _show(record: FaceRecord) -> str:
    if record.is_degenerate:
        return f"s{list(record.epi.values)}({record.target.dim}:{record.target.id})"

    return f"{record.target.dim}:{record.target.id}"


class SimplicialSetBuilder:
    """
    Incremental builder for :class:`SimplicialSet`.

    Simplices must be added after all of their faces. The simplicial set returned by
    :meth:`build` shares its storage with the builder; further additions remain
    visible in it, which is how pushouts grow a target in place.
    """

    def __init__(self, base: SimplicialSet | None = None) -> None:
        if base is None:
            self.space = SimplicialSet([], {})
        else:
            self.space = SimplicialSet(
                list(base.sizes), dict(base.faces), dict(base.labels), base.dim_bound
            )

    def add_vertex(self, label: str | None = None) -> SimplexRef:
        return self.add_simplex(0, (), label)

    def add_simplex(
        self, dim: int, faces: Sequence[FaceRecord], label: str | None = None
    ) -> SimplexRef:
        space = self.space
        if dim and len(faces) != dim + 1:
            raise IndexOutOfRangeError(
                f"a {dim}-simplex needs {dim + 1} faces, got {len(faces)}"
            )

        while len(space.sizes) <= dim:
            space.sizes.append(0)

        ref = SimplexRef(dim, space.sizes[dim])
        space.sizes[dim] += 1
        if dim:
            space.faces[ref] = tuple(faces)

        if label is not None:
            space.labels[ref] = label

        if dim > space.dim_bound:
            space.dim_bound = dim

        space._all.clear()
        space._by_faces.clear()
        space._memo.clear()
        return ref

    def build(
        self, dim_bound: int | None = None, truncated: bool = False
    ) -> SimplicialSet:
        space = self.space
        if dim_bound is not None:
            space.dim_bound = max(dim_bound, space.top_dim)

        space.truncated = truncated
        return space


@dataclass(eq=False)
class SimplicialMap:
    """
    A simplicial map, stored as the image (in normal form) of every non-degenerate
    simplex of the source.
    """

    source: SimplicialSet
    target: SimplicialSet
    images: dict[SimplexRef, FaceRecord]

    def __call__(self, ref: SimplexRef) -> FaceRecord:
        return self.images[ref]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SimplicialMap):
            return NotImplemented

        return self.images == other.images

    def __hash__(self) -> int:
        return hash(self.key)

    @cached_property
    def key(self) -> tuple[FaceRecord, ...]:
        """The images listed in the canonical order of the source simplices."""
        return tuple(self.images[ref] for ref in self.source.simplices())

    def image(self, record: FaceRecord) -> FaceRecord:
        """Return the image of a possibly degenerate simplex of the source."""
        return self.target.apply(record.epi, self.images[record.target])

    def vertex_image(self, vertex: int) -> int:
        return self.images[SimplexRef(0, vertex)].target.id

    def compose(self, inner: SimplicialMap) -> SimplicialMap:
        """Return ``self ∘ inner``."""
        return SimplicialMap(
            inner.source,
            self.target,
            {ref: self.image(record) for ref, record in inner.images.items()},
        )

    def is_mono(self) -> bool:
        """Return ``True`` if the map is injective on all simplices."""
        seen: set[SimplexRef] = set()
        for record in self.images.values():
            if record.is_degenerate or record.target in seen:
                return False

            seen.add(record.target)

        return True

    def naturality_violations(self) -> list[Violation]:
        """Check that the map commutes with every face operator."""
        report = []
        for ref in self.source.simplices():
            record = self.images.get(ref)
            if record is None:
                report.append(Violation(ref, "missing", "simplex has no image"))
                continue

            if record.dim != ref.dim:
                detail = "image has the wrong dimension"
                report.append(Violation(ref, "dimension", detail))
                continue

            if ref.dim == 0:
                continue

            for i, face in enumerate(self.source.faces[ref]):
                if self.image(face) != self.target.face_of(record, i):
                    report.append(
                        Violation(ref, "naturality", f"face {i} is not preserved")
                    )

        return report


def identity_map(space: SimplicialSet) -> SimplicialMap:
    return SimplicialMap(
        space, space, {ref: FaceRecord.of(ref) for ref in space.simplices()}
    )


def validate(space: SimplicialSet) -> list[Violation]:
    """
    Validate a simplicial set.

    :return: a list of violations; empty if the simplicial identities hold

    """
    return space.validate()


def compose_maps(outer: SimplicialMap, inner: SimplicialMap) -> SimplicialMap:
    return outer.compose(inner)


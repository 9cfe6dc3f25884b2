from __future__ import annotations

import json
from collections.abc import Mapping
from typing import Any

from ._categories import Arrow, FiniteCategory
from ._exceptions import (
    CategoryAxiomError,
    IndexOutOfRangeError,
    MalformedInputError,
    NonMonotoneError,
)
from ._lifting import LiftingVerdict
from ._ordinal import OrdinalMap
from ._simplicial import (
    FaceRecord,
    SimplexRef,
    SimplicialMap,
    SimplicialSet,
    SimplicialSetBuilder,
)


def dumps(data: Any) -> str:
    """Serialize to JSON with a stable key order, so equal inputs give equal bytes."""
    return json.dumps(data, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def loads(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedInputError(f"invalid JSON: {exc}") from None


def _ref_to_dict(ref: SimplexRef) -> dict[str, int]:
    return {"dim": ref.dim, "id": ref.id}


def _record_to_dict(record: FaceRecord) -> dict[str, Any]:
    return {"epi": list(record.epi.values), "target": _ref_to_dict(record.target)}


def space_to_dict(space: SimplicialSet) -> dict[str, Any]:
    simplices = []
    for ref in space.simplices():
        entry: dict[str, Any] = _ref_to_dict(ref)
        if ref in space.labels:
            entry["label"] = space.labels[ref]

        records = space.faces.get(ref, ())
        entry["faces"] = [_record_to_dict(record) for record in records]
        simplices.append(entry)

    return {
        "dim_bound": space.dim_bound,
        "truncated": space.truncated,
        "simplices": simplices,
    }


def _field(data: Any, key: str, kind: type | tuple[type, ...], where: str) -> Any:
    if not isinstance(data, Mapping):
        raise MalformedInputError(f"{where}: expected an object")

    try:
        value = data[key]
    except KeyError:
        raise MalformedInputError(f"{where}: missing field {key!r}") from None

    if not isinstance(value, kind) or isinstance(value, bool) and kind is int:
        raise MalformedInputError(f"{where}: field {key!r} has the wrong type")

    return value


def _ref_from_dict(data: Any, where: str) -> SimplexRef:
    dim = _field(data, "dim", int, where)
    id_ = _field(data, "id", int, where)
    if dim < 0 or id_ < 0:
        raise MalformedInputError(f"{where}: negative dimension or id")

    return SimplexRef(dim, id_)


def _record_from_dict(
    data: Any, dim: int, space: SimplicialSet, where: str
) -> FaceRecord:
    target = _ref_from_dict(_field(data, "target", dict, where), where)
    if target not in space:
        raise MalformedInputError(f"{where}: unknown simplex {target.dim}:{target.id}")

    values = _field(data, "epi", list, where)
    if len(values) != dim + 1 or not all(
        isinstance(value, int) and not isinstance(value, bool) for value in values
    ):
        raise MalformedInputError(f"{where}: the operator must have {dim + 1} entries")

    try:
        epi = OrdinalMap.of(values, target.dim + 1)
    except (NonMonotoneError, IndexOutOfRangeError) as exc:
        raise MalformedInputError(f"{where}: {exc}") from None

    if not epi.is_surjective:
        raise MalformedInputError(f"{where}: the operator {values} is not surjective")

    return FaceRecord(epi, target)


def space_from_dict(data: Any) -> SimplicialSet:
    """
    Read a simplicial set from its JSON form.

    Simplices must be listed so that every face refers to an earlier entry, with ids
    numbered consecutively from 0 in every dimension. Only the format is checked here;
    use :meth:`~sdex.SimplicialSet.validate` for the simplicial identities.

    :raises ~sdex.MalformedInputError: if the data does not follow the format

    """
    entries = _field(data, "simplices", list, "simplicial set")
    dim_bound = data.get("dim_bound")
    truncated = data.get("truncated", False)
    if dim_bound is not None and (not isinstance(dim_bound, int) or dim_bound < -1):
        raise MalformedInputError("simplicial set: invalid dim_bound")

    if not isinstance(truncated, bool):
        raise MalformedInputError("simplicial set: invalid truncated flag")

    builder = SimplicialSetBuilder()
    space = builder.space
    for position, entry in enumerate(entries):
        where = f"simplex #{position}"
        ref = _ref_from_dict(entry, where)
        if ref.id != space.size(ref.dim):
            raise MalformedInputError(
                f"{where}: expected id {space.size(ref.dim)} in dimension {ref.dim}"
            )

        label = entry.get("label")
        if label is not None and not isinstance(label, str):
            raise MalformedInputError(f"{where}: the label must be a string")

        faces = entry.get("faces", [])
        if not isinstance(faces, list) or len(faces) != (ref.dim + 1 if ref.dim else 0):
            raise MalformedInputError(
                f"{where}: a {ref.dim}-simplex needs "
                f"{ref.dim + 1 if ref.dim else 0} faces"
            )

        records = [
            _record_from_dict(face, ref.dim - 1, space, f"{where}, face {i}")
            for i, face in enumerate(faces)
        ]
        builder.add_simplex(ref.dim, records, label)

    return builder.build(dim_bound, truncated)


def map_to_dict(f: SimplicialMap) -> dict[str, Any]:
    return {
        "source": space_to_dict(f.source),
        "target": space_to_dict(f.target),
        "images": [
            {**_ref_to_dict(ref), **_record_to_dict(f.images[ref])}
            for ref in f.source.simplices()
        ],
    }


def map_from_dict(data: Any) -> SimplicialMap:
    """
    Read a simplicial map from its JSON form.

    :raises ~sdex.MalformedInputError: if the data does not follow the format or some
        simplex of the source has no image

    """
    source = space_from_dict(_field(data, "source", dict, "map"))
    target = space_from_dict(_field(data, "target", dict, "map"))
    images: dict[SimplexRef, FaceRecord] = {}
    for position, entry in enumerate(_field(data, "images", list, "map")):
        where = f"image #{position}"
        ref = _ref_from_dict(entry, where)
        if ref not in source:
            raise MalformedInputError(f"{where}: unknown simplex {ref.dim}:{ref.id}")

        images[ref] = _record_from_dict(entry, ref.dim, target, where)

    missing = [ref for ref in source.simplices() if ref not in images]
    if missing:
        raise MalformedInputError(
            f"map: no image for simplex {missing[0].dim}:{missing[0].id}"
        )

    return SimplicialMap(source, target, images)


def _identity_name(category: FiniteCategory, obj: int) -> str:
    return f"1_{category.objects[obj]}"


def category_to_dict(category: FiniteCategory) -> dict[str, Any]:
    """
    Write a category in the object form: identities are implicit and named
    ``1_<object>``, and only composites of non-identity arrows are listed.
    """

    def name(arrow: int) -> str:
        if category.is_identity(arrow):
            return _identity_name(category, category.arrows[arrow].source)

        return category.arrows[arrow].name

    proper = [a for a in range(len(category.arrows)) if not category.is_identity(a)]
    return {
        "name": category.name,
        "objects": list(category.objects),
        "arrows": [
            {
                "id": category.arrows[a].name,
                "src": category.objects[category.arrows[a].source],
                "dst": category.objects[category.arrows[a].target],
            }
            for a in proper
        ],
        "compose": [
            [name(g), name(f), name(category.compose(g, f))]
            for g, f in category.composable_pairs()
            if g in proper and f in proper
        ],
    }


def _monoid_from_dict(data: Mapping[str, Any], name: str) -> FiniteCategory:
    elements = [str(element) for element in _field(data, "elements", list, "monoid")]
    index = {element: position for position, element in enumerate(elements)}
    if len(index) != len(elements):
        raise MalformedInputError("monoid: element names must be unique")

    table = []
    for row in _field(data, "table", list, "monoid"):
        if not isinstance(row, list):
            raise MalformedInputError("monoid: every table row must be a list")

        entries = []
        for value in row:
            if isinstance(value, str) and value in index:
                entries.append(index[value])
            elif isinstance(value, int) and not isinstance(value, bool):
                entries.append(value)
            else:
                raise MalformedInputError(f"monoid: unknown table entry {value!r}")

        table.append(entries)

    try:
        return FiniteCategory.from_monoid(elements, table, name=name)
    except CategoryAxiomError as exc:
        raise MalformedInputError(f"monoid: {exc}") from None


def category_from_dict(data: Any) -> FiniteCategory:
    """
    Read a finite category, either in the object form written by
    :func:`category_to_dict` or in the monoid shorthand
    ``{"elements": [...], "table": [[...], ...]}``.

    :raises ~sdex.MalformedInputError: if the data does not follow either format or
        does not describe a category

    """
    if not isinstance(data, Mapping):
        raise MalformedInputError("category: expected an object")

    name = data.get("name", "")
    if not isinstance(name, str):
        raise MalformedInputError("category: the name must be a string")

    if "elements" in data:
        return _monoid_from_dict(data, name)

    objects = [str(obj) for obj in _field(data, "objects", list, "category")]
    object_index = {obj: position for position, obj in enumerate(objects)}
    if len(object_index) != len(objects):
        raise MalformedInputError("category: object names must be unique")

    arrows = [
        Arrow(f"1_{obj}", position, position) for position, obj in enumerate(objects)
    ]
    identities = tuple(range(len(objects)))
    arrow_index = {arrow.name: position for position, arrow in enumerate(arrows)}
    for position, entry in enumerate(_field(data, "arrows", list, "category")):
        where = f"arrow #{position}"
        arrow_id = str(_field(entry, "id", (str, int), where))
        source = object_index.get(str(_field(entry, "src", (str, int), where)))
        target = object_index.get(str(_field(entry, "dst", (str, int), where)))
        if source is None or target is None:
            raise MalformedInputError(f"{where}: unknown object")

        if arrow_id in arrow_index:
            raise MalformedInputError(f"{where}: duplicate arrow id {arrow_id!r}")

        arrow_index[arrow_id] = len(arrows)
        arrows.append(Arrow(arrow_id, source, target))

    composition: dict[tuple[int, int], int] = {}
    for position, entry in enumerate(_field(data, "compose", list, "category")):
        if not isinstance(entry, list) or len(entry) != 3:
            raise MalformedInputError(f"composite #{position}: expected [g, f, gf]")

        try:
            g, f, gf = (arrow_index[str(name_)] for name_ in entry)
        except KeyError as exc:
            raise MalformedInputError(
                f"composite #{position}: unknown arrow {exc.args[0]!r}"
            ) from None

        composition[(g, f)] = gf

    for position, arrow in enumerate(arrows):
        source_identity = identities[arrow.source]
        target_identity = identities[arrow.target]
        composition[(position, source_identity)] = position
        composition[(target_identity, position)] = position

    try:
        return FiniteCategory(
            tuple(objects), tuple(arrows), identities, composition, name
        )
    except CategoryAxiomError as exc:
        raise MalformedInputError(f"category: {exc}") from None


def verdict_to_dict(verdict: LiftingVerdict) -> dict[str, Any]:
    """Write a lifting verdict; a failure carries its unsolvable square."""
    data: dict[str, Any] = {"holds": verdict.holds, "bound": verdict.bound}
    if verdict.horn is not None:
        data["horn"] = {"k": verdict.horn[0], "i": verdict.horn[1]}

    problem = verdict.counterexample
    if problem is not None:
        square: dict[str, Any] = {
            "inclusion": map_to_dict(problem.inclusion),
            "top": map_to_dict(problem.top),
        }
        if problem.projection is not None and problem.bottom is not None:
            square["projection"] = map_to_dict(problem.projection)
            square["bottom"] = map_to_dict(problem.bottom)

        data["counterexample"] = square

    return data


def to_dot(space: SimplicialSet, name: str = "skeleton") -> str:
    """
    Return the 1-skeleton in Graphviz DOT format, one directed edge per
    non-degenerate 1-simplex.
    """
    lines = [f"digraph {json.dumps(name)} {{"]
    for vertex in space.simplices(0):
        lines.append(f"  v{vertex.id} [label={json.dumps(space.label(vertex))}];")

    for edge in space.simplices(1):
        tail, head = space.vertices(edge)
        lines.append(f"  v{tail} -> v{head} [label={json.dumps(space.label(edge))}];")

    lines.append("}")
    return "\n".join(lines) + "\n"

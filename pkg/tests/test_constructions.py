from __future__ import annotations

import pytest

from sdex import (
    FaceRecord,
    Gluing,
    IndexOutOfRangeError,
    NonMonotoneError,
    NotMonomorphismError,
    NotSimplicialError,
    OrdinalMap,
    SimplexRef,
    boundary,
    boundary_inclusion,
    complex_from_vertex_tuples,
    horn,
    map_from_vertex_assignment,
    map_from_vertex_function,
    pushout,
    standard_simplex,
    validate,
)


class TestShapes:
    def test_boundary(self) -> None:
        assert boundary(3).f_vector == (4, 6, 4)
        assert boundary(1).f_vector == (2,)

    @pytest.mark.parametrize("i", range(3))
    def test_horn(self, i: int) -> None:
        space, inclusion = horn(2, i)
        assert space.f_vector == (3, 2)
        assert inclusion.is_mono()
        assert inclusion.target == standard_simplex(2)

    def test_horn_missing_face(self) -> None:
        space, inclusion = horn(2, 0)
        images = {
            inclusion.target.vertices(record.target)
            for record in inclusion.images.values()
        }
        assert (1, 2) not in images
        assert {(0, 1), (0, 2)} <= images
        assert validate(space) == []

    def test_horn_3(self) -> None:
        assert horn(3, 1)[0].f_vector == (4, 6, 3)

    @pytest.mark.parametrize("k, i", [(0, 0), (2, 3), (2, -1)])
    def test_invalid_horn(self, k: int, i: int) -> None:
        with pytest.raises(IndexOutOfRangeError):
            horn(k, i)

    def test_negative_simplex(self) -> None:
        with pytest.raises(IndexOutOfRangeError):
            standard_simplex(-1)

    def test_boundary_inclusion(self) -> None:
        space, inclusion = boundary_inclusion(2)
        assert space == boundary(2)
        assert inclusion.is_mono()
        assert inclusion.naturality_violations() == []


class TestVertexTuples:
    def test_lookup(self) -> None:
        space, lookup = complex_from_vertex_tuples([(0,), (1,), (2,), (0, 2)])
        assert space.f_vector == (3, 1)
        assert space.vertices(lookup[(0, 2)]) == (0, 2)

    def test_labels(self) -> None:
        space, lookup = complex_from_vertex_tuples(
            [(0,), (1,), (0, 1)], {0: "a", 1: "b"}, {(0, 1): "ab"}
        )
        assert space.label(lookup[(0,)]) == "a"
        assert space.label(lookup[(0, 1)]) == "ab"

    def test_not_face_closed(self) -> None:
        with pytest.raises(ValueError, match="missing"):
            complex_from_vertex_tuples([(0,), (0, 1)])


class TestMaps:
    def test_degeneracy(self) -> None:
        f = map_from_vertex_function(2, (0, 0, 1))
        assert f.target == standard_simplex(1)
        assert f.images[SimplexRef(2, 0)] == FaceRecord(
            OrdinalMap((0, 0, 1), 2), SimplexRef(1, 0)
        )
        assert f.naturality_violations() == []

    def test_collapse(self) -> None:
        collapse = map_from_vertex_function(3, (0, 1, 1, 2))
        assert collapse.target == standard_simplex(2)
        assert collapse.naturality_violations() == []
        assert not collapse.is_mono()

    def test_non_monotone(self) -> None:
        with pytest.raises(NonMonotoneError):
            map_from_vertex_function(1, (1, 0))

    def test_wrong_value_count(self) -> None:
        with pytest.raises(IndexOutOfRangeError):
            map_from_vertex_function(2, (0, 1))

    def test_assignment_into_horn(self) -> None:
        space, _ = horn(2, 0)
        f = map_from_vertex_assignment(standard_simplex(1), space, [0, 2])
        assert f.is_mono()
        assert f.naturality_violations() == []

    def test_assignment_onto_missing_edge(self) -> None:
        space, _ = horn(2, 0)
        with pytest.raises(NotSimplicialError):
            map_from_vertex_assignment(standard_simplex(1), space, [1, 2])

    def test_assignment_length(self) -> None:
        with pytest.raises(NotSimplicialError):
            map_from_vertex_assignment(standard_simplex(1), standard_simplex(1), [0])


class TestPushout:
    def test_glue_two_edges(self) -> None:
        head = map_from_vertex_function(0, (1,), 1)
        tail = map_from_vertex_function(0, (0,), 1)
        space, from_base, from_cell = pushout(head, tail)
        assert space.f_vector == (3, 2)
        assert validate(space) == []
        assert from_base.is_mono()
        assert from_cell.naturality_violations() == []
        # the shared vertex
        assert from_cell.vertex_image(1) == from_base.vertex_image(0)

    def test_fill_horn(self) -> None:
        space, inclusion = horn(2, 0)
        identity = map_from_vertex_assignment(space, space, [0, 1, 2])
        filled, _, from_cell = pushout(inclusion, identity)
        assert filled.f_vector == (3, 3, 1)
        assert validate(filled) == []
        assert from_cell.is_mono()

    def test_not_mono(self) -> None:
        collapse = map_from_vertex_function(1, (0, 0), 0)
        with pytest.raises(NotMonomorphismError):
            pushout(collapse, collapse)

    def test_simultaneous_attachments(self) -> None:
        _, inclusion = boundary_inclusion(1)
        base = standard_simplex(0)
        attaching = map_from_vertex_assignment(inclusion.source, base, [0, 0])
        gluing = Gluing(base)
        for _ in range(3):
            gluing.attach(inclusion, attaching)

        space = gluing.build()
        assert gluing.attached == 3
        assert space.f_vector == (1, 3)
        assert validate(space) == []
        assert not space.is_vertex_determined()

from __future__ import annotations

from typing import Any

import pytest

from sdex import (
    MalformedInputError,
    category_from_dict,
    category_to_dict,
    cyclic_group,
    dumps,
    horn,
    is_groupoid,
    is_kan_up_to,
    loads,
    map_from_dict,
    map_from_vertex_function,
    map_to_dict,
    nerve,
    space_from_dict,
    space_to_dict,
    standard_simplex,
    to_dot,
    verdict_to_dict,
)


def edge_dict(**overrides: Any) -> dict[str, Any]:
    face = {"epi": [0], "target": {"dim": 0, "id": 0}}
    data: dict[str, Any] = {
        "dim_bound": 1,
        "truncated": False,
        "simplices": [
            {"dim": 0, "id": 0, "faces": []},
            {"dim": 0, "id": 1, "faces": []},
            {
                "dim": 1,
                "id": 0,
                "faces": [{"epi": [0], "target": {"dim": 0, "id": 1}}, face],
            },
        ],
    }
    data.update(overrides)
    return data


class TestJSON:
    def test_dumps_is_stable(self) -> None:
        text = dumps({"b": 1, "a": [1, 2]})
        assert text.endswith("\n")
        assert text.index('"a"') < text.index('"b"')
        assert dumps(loads(text)) == text

    def test_invalid_json(self) -> None:
        with pytest.raises(MalformedInputError, match="invalid JSON"):
            loads("{not json")


class TestSpaces:
    def test_simplex(self) -> None:
        space = standard_simplex(2)
        data = space_to_dict(space)
        assert data["dim_bound"] == 2
        assert data["truncated"] is False
        assert len(data["simplices"]) == 7
        assert space_from_dict(loads(dumps(data))) == space

    def test_truncated_nerve(self) -> None:
        space = nerve(cyclic_group(2), 2)
        restored = space_from_dict(space_to_dict(space))
        assert restored == space
        assert restored.truncated
        assert restored.face(next(restored.simplices(2)), 1).is_degenerate

    def test_labels_survive(self) -> None:
        space = nerve(cyclic_group(3), 1)
        restored = space_from_dict(space_to_dict(space))
        assert [restored.label(ref) for ref in restored.simplices(1)] == ["g1", "g2"]

    def test_edge(self) -> None:
        space = space_from_dict(edge_dict())
        assert space == standard_simplex(1)

    def test_non_surjective_operator(self) -> None:
        data = edge_dict()
        data["simplices"][2]["faces"][0]["epi"] = [1]
        with pytest.raises(MalformedInputError):
            space_from_dict(data)

    def test_non_monotone_operator(self) -> None:
        data = space_to_dict(standard_simplex(2))
        data["simplices"].append(
            {
                "dim": 2,
                "id": 1,
                "faces": [
                    {"epi": [1, 0], "target": {"dim": 1, "id": 0}},
                    {"epi": [0, 1], "target": {"dim": 1, "id": 0}},
                    {"epi": [0, 1], "target": {"dim": 1, "id": 0}},
                ],
            }
        )
        with pytest.raises(MalformedInputError, match="face 0"):
            space_from_dict(data)

    def test_unknown_face(self) -> None:
        data = edge_dict()
        data["simplices"][2]["faces"][1]["target"] = {"dim": 0, "id": 5}
        with pytest.raises(MalformedInputError, match="unknown simplex 0:5"):
            space_from_dict(data)

    def test_wrong_face_count(self) -> None:
        data = edge_dict()
        del data["simplices"][2]["faces"][1]
        with pytest.raises(MalformedInputError, match="needs 2 faces"):
            space_from_dict(data)

    def test_ids_out_of_order(self) -> None:
        data = edge_dict()
        data["simplices"][1]["id"] = 3
        with pytest.raises(MalformedInputError, match="expected id 1"):
            space_from_dict(data)

    @pytest.mark.parametrize(
        "data",
        [
            pytest.param([], id="list"),
            pytest.param({}, id="missing"),
            pytest.param({"simplices": [{"dim": True, "id": 0}]}, id="bool"),
            pytest.param(edge_dict(truncated="yes"), id="truncated"),
            pytest.param(edge_dict(dim_bound=-3), id="dim_bound"),
        ],
    )
    def test_malformed(self, data: Any) -> None:
        with pytest.raises(MalformedInputError):
            space_from_dict(data)

    def test_identities_are_not_checked(self) -> None:
        # the format is fine even though d_0 and d_1 of the edge disagree with
        # the triangle above it
        data = space_to_dict(standard_simplex(2))
        data["simplices"][-1]["faces"][0]["target"]["id"] = 0
        space = space_from_dict(data)
        assert space.validate() != []


class TestMaps:
    def test_degeneracy(self) -> None:
        f = map_from_vertex_function(2, (0, 0, 1))
        data = loads(dumps(map_to_dict(f)))
        top = data["images"][-1]
        assert top["epi"] == [0, 0, 1]
        assert map_from_dict(data) == f

    def test_missing_image(self) -> None:
        data = map_to_dict(map_from_vertex_function(1, (0, 1)))
        del data["images"][-1]
        with pytest.raises(MalformedInputError, match="no image for simplex 1:0"):
            map_from_dict(data)


class TestCategories:
    def test_object_form(self, family: dict[str, Any]) -> None:
        data = category_to_dict(family["parallel"])
        assert data["objects"] == ["a", "b"]
        assert [arrow["id"] for arrow in data["arrows"]] == ["u", "v"]
        assert data["compose"] == []
        restored = category_from_dict(loads(dumps(data)))
        assert len(restored.arrows) == 4
        assert len(restored.hom(0, 1)) == 2

    def test_group(self) -> None:
        data = category_to_dict(cyclic_group(2))
        assert data["compose"] == [["g1", "g1", "1_*"]]
        restored = category_from_dict(data)
        assert restored.name == "Z2"
        assert is_groupoid(restored) == (True, None)

    @pytest.mark.parametrize(
        "table",
        [
            pytest.param([["1", "g"], ["g", "1"]], id="names"),
            pytest.param([[0, 1], [1, 0]], id="indices"),
        ],
    )
    def test_monoid_shorthand(self, table: list[list[Any]]) -> None:
        category = category_from_dict({"elements": ["1", "g"], "table": table})
        assert len(category.arrows) == 2
        assert is_groupoid(category)[0]

    @pytest.mark.parametrize(
        "data",
        [
            pytest.param(
                {
                    "elements": ["1", "a", "b"],
                    "table": [[0, 1, 2], [1, 2, 0], [2, 2, 2]],
                },
                id="not-associative",
            ),
            pytest.param({"elements": ["1", "a"], "table": [["1", "x"]]}, id="entry"),
            pytest.param({"elements": ["1", "1"], "table": []}, id="duplicate"),
            pytest.param(
                {
                    "objects": ["x", "y", "z"],
                    "arrows": [
                        {"id": "f", "src": "x", "dst": "y"},
                        {"id": "g", "src": "y", "dst": "z"},
                    ],
                    "compose": [],
                },
                id="partial",
            ),
            pytest.param(
                {
                    "objects": ["x"],
                    "arrows": [{"id": "f", "src": "x", "dst": "w"}],
                    "compose": [],
                },
                id="endpoint",
            ),
            pytest.param(
                {"objects": ["x"], "arrows": [], "compose": [["f", "f", "f"]]},
                id="unknown-arrow",
            ),
            pytest.param("Z2", id="string"),
        ],
    )
    def test_malformed(self, data: Any) -> None:
        with pytest.raises(MalformedInputError):
            category_from_dict(data)


class TestVerdicts:
    def test_holds(self) -> None:
        data = verdict_to_dict(is_kan_up_to(standard_simplex(0), 2))
        assert data == {"holds": True, "bound": 2}

    def test_counterexample(self) -> None:
        data = verdict_to_dict(is_kan_up_to(standard_simplex(1), 2))
        assert data["holds"] is False
        assert data["bound"] == 2
        assert data["horn"] == {"k": 2, "i": 0}
        square = data["counterexample"]
        assert set(square) >= {"inclusion", "top"}
        assert len(square["inclusion"]["source"]["simplices"]) == 5
        assert loads(dumps(data)) == data


class TestDot:
    def test_triangle(self) -> None:
        text = to_dot(standard_simplex(2))
        lines = text.splitlines()
        assert lines[0] == 'digraph "skeleton" {'
        assert lines[-1] == "}"
        assert sum("->" in line for line in lines) == 3

    def test_horn(self) -> None:
        text = to_dot(horn(2, 0)[0], name="horn")
        assert text.startswith('digraph "horn" {')
        assert "v0 -> v1" in text
        assert "v0 -> v2" in text
        assert "v1 -> v2" not in text

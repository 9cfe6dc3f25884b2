from __future__ import annotations

from collections import Counter, defaultdict

import pytest

from sdex import (
    FAN,
    MAX_RAY_DEPTH,
    TOWARD_NEXT,
    TOWARD_PREVIOUS,
    BudgetExceededError,
    LabeledTriangulation,
    RayTriangle,
    build_rays,
    lemma2d_check,
    ray_crossings,
    render_svg,
    verify_rays,
)


class TestLabels:
    def test_single_triangle(self) -> None:
        labeled = build_rays(0)
        assert labeled.ray_count == 1
        assert [(t.ray, t.kind) for t in labeled.triangles] == [(1, FAN)]
        assert verify_rays(labeled) == []

    def test_first_subdivision(self) -> None:
        labeled = build_rays(1)
        assert sorted(t.ray for t in labeled.triangles) == [1, 1, 1, 2, 2, 2]
        fans = [t for t in labeled.triangles if t.kind == FAN]
        assert sorted(t.ray for t in fans) == [1, 2]
        assert all(labeled.apex in t.vertices for t in fans)

    @pytest.mark.parametrize("n", range(4))
    def test_partition(self, n: int) -> None:
        labeled = build_rays(n)
        counts = Counter(t.ray for t in labeled.triangles)
        assert sorted(counts) == list(range(1, 2**n + 1))
        assert sum(counts.values()) == 6**n

    @pytest.mark.parametrize("n", range(2, 4))
    def test_parents(self, n: int) -> None:
        labeled = build_rays(n)
        parents = Counter(t.parent for t in labeled.triangles)
        assert set(parents.values()) == {6}
        assert len(parents) == 6 ** (n - 1)

    @pytest.mark.parametrize(
        "n", [0, 1, 2, 3, 4, pytest.param(5, marks=pytest.mark.slow)]
    )
    def test_verified(self, n: int) -> None:
        assert verify_rays(build_rays(n)) == []

    def test_budget(self) -> None:
        with pytest.raises(BudgetExceededError):
            build_rays(MAX_RAY_DEPTH + 1)

    def test_negative(self) -> None:
        with pytest.raises(ValueError):
            build_rays(-1)


class TestRecursion:
    @staticmethod
    def touched_rays(labeled: LabeledTriangulation) -> dict[int, set[int]]:
        touched: dict[int, set[int]] = {
            vertex: set() for vertex in range(labeled.space.size(0))
        }
        for vertex, carrier in enumerate(labeled.carriers):
            if carrier <= {0, 1}:
                touched[vertex].add(0)
            if carrier <= {0, 2}:
                touched[vertex].add(labeled.ray_count + 1)

        for triangle in labeled.triangles:
            for vertex in triangle.vertices:
                touched[vertex].add(triangle.ray)

        return touched

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_children_split_the_parent_ray(self, n: int) -> None:
        coarse = {t.simplex.id: t for t in build_rays(n - 1).triangles}
        fine = build_rays(n)
        touched = self.touched_rays(fine)
        children: dict[int | None, list[RayTriangle]] = defaultdict(list)
        for triangle in fine.triangles:
            children[triangle.parent].append(triangle)

        expected_split = {FAN: (3, 3), TOWARD_NEXT: (2, 4), TOWARD_PREVIOUS: (4, 2)}
        for parent_id, pieces in children.items():
            parent = coarse[parent_id]
            i = parent.ray
            counts = Counter(piece.ray for piece in pieces)
            assert (counts[2 * i - 1], counts[2 * i]) == expected_split[parent.kind]
            for piece in pieces:
                # the lower half borders ray 2i - 2, the upper half ray 2i + 1
                neighbor = 2 * i - 2 if piece.ray == 2 * i - 1 else 2 * i + 1
                assert any(neighbor in touched[v] for v in piece.vertices)

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_marked_pieces_keep_their_kind(self, n: int) -> None:
        coarse = {t.simplex.id: t for t in build_rays(n - 1).triangles}
        for triangle in build_rays(n).triangles:
            parent = coarse[triangle.parent]
            if parent.kind == TOWARD_NEXT and triangle.ray == 2 * parent.ray - 1:
                assert triangle.kind == TOWARD_NEXT
            elif parent.kind == TOWARD_PREVIOUS and triangle.ray == 2 * parent.ray:
                assert triangle.kind == TOWARD_PREVIOUS


class TestCrossings:
    @pytest.mark.parametrize("n", [0, 1, 2, 3, 4])
    def test_every_path_crosses_every_ray(self, n: int) -> None:
        crossings = ray_crossings(build_rays(n))
        assert crossings.violations == []
        assert crossings.bound == 2**n
        assert crossings.shortest == lemma2d_check(n)
        assert crossings.shortest >= crossings.bound
        assert len(crossings.path) == crossings.shortest + 1

    def test_single_triangle(self) -> None:
        labeled = build_rays(0)
        crossings = ray_crossings(labeled)
        assert crossings.shortest == 1
        assert labeled.apex not in crossings.path

    def test_relabeled_shortcut_along_ab(self) -> None:
        labeled = build_rays(2)
        index = next(
            index
            for index, triangle in enumerate(labeled.triangles)
            if triangle.kind != FAN
            and sum(labeled.carriers[v] <= {0, 1} for v in triangle.vertices) == 2
        )
        crossings = ray_crossings(labeled.relabeled(index, 4))
        assert "crossing-step" in {v.clause for v in crossings.violations}


class TestFaultInjection:
    @staticmethod
    def fan_index(labeled: LabeledTriangulation, ray: int) -> int:
        return next(
            index
            for index, triangle in enumerate(labeled.triangles)
            if triangle.kind == FAN and triangle.ray == ray
        )

    def test_wrong_ray(self) -> None:
        labeled = build_rays(2)
        index = self.fan_index(labeled, 2)
        clauses = {v.clause for v in verify_rays(labeled.relabeled(index, 3))}
        assert {"fan-previous", "boundary-edge"} <= clauses

    def test_leaves_side_ab(self) -> None:
        labeled = build_rays(2)
        index = self.fan_index(labeled, 1)
        clauses = {v.clause for v in verify_rays(labeled.relabeled(index, 4))}
        assert "side-ab" in clauses

    def test_out_of_range(self) -> None:
        labeled = build_rays(1).relabeled(0, 3)
        clauses = {violation.clause for violation in verify_rays(labeled)}
        assert "label-range" in clauses

    def test_unused_ray(self) -> None:
        labeled = build_rays(1)
        for index, triangle in enumerate(labeled.triangles):
            if triangle.ray == 2:
                labeled = labeled.relabeled(index, 1)

        clauses = {violation.clause for violation in verify_rays(labeled)}
        assert "labels-unused" in clauses


class TestRendering:
    def test_svg(self) -> None:
        labeled = build_rays(2)
        svg = render_svg(labeled)
        assert svg.startswith("<svg")
        assert svg.count("<polygon") == 36
        assert svg.count('data-ray="4"') > 0

    def test_deterministic(self) -> None:
        assert render_svg(build_rays(1)) == render_svg(build_rays(1))

    def test_as_dict(self) -> None:
        data = build_rays(1).as_dict()
        assert data["depth"] == 1
        assert data["rays"] == 2
        assert len(data["triangles"]) == 6
        assert {entry["kind"] for entry in data["triangles"]} == {"fan", "a", "b"}
